"""Empirical box counting and local slope estimation.

The embedding line is partitioned into boxes of length r anchored at
the window's lower edge; N(r) counts boxes holding at least one level.
Counting runs in a single pass over the sorted levels, so scans over a
log-spaced r grid stay fast for 1e5+ levels.  Local slopes of ln N
against ln r (negated) estimate the local box-counting dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectra import Spectrum
from .theory import BOX_COUNTING, DimensionCurve


@dataclass(frozen=True)
class SlopeConfig:
    """Grid density and slope-window settings for the empirical curve."""

    window: int = 5
    grid_points_per_decade: int = 48
    r_min_over_sbar: float = 0.02
    r_max_over_sbar: float = 5.0

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError("window must be an odd count >= 3")
        if self.grid_points_per_decade < 1:
            raise ValueError("grid_points_per_decade must be positive")
        if not 0.0 < self.r_min_over_sbar < self.r_max_over_sbar:
            raise ValueError("need 0 < r_min_over_sbar < r_max_over_sbar")


DEFAULT_SLOPE = SlopeConfig()


def log_grid(r_min, r_max, points_per_decade):
    """Log-spaced grid of 10**(k/ppd) values inside [r_min, r_max].

    Anchored at powers of ten, so r = 1 is always a grid point when the
    range straddles it; this lets theoretical and empirical curves share
    grid points exactly.
    """
    if not 0.0 < r_min < r_max:
        raise ValueError("need 0 < r_min < r_max")
    k_lo = math.ceil(points_per_decade * math.log10(r_min) - 1e-9)
    k_hi = math.floor(points_per_decade * math.log10(r_max) + 1e-9)
    if k_hi - k_lo + 1 < 2:
        raise ValueError("degenerate grid: fewer than 2 points in range")
    return 10.0 ** (np.arange(k_lo, k_hi + 1) / points_per_decade)


@dataclass(frozen=True)
class BoxCountCurve:
    """Covering counts N(r) on an increasing r grid."""

    r: np.ndarray
    n_boxes: np.ndarray
    sbar: float
    label: str = ""

    def __post_init__(self):
        r = np.array(self.r, dtype=float, copy=True)
        n = np.array(self.n_boxes, dtype=np.int64, copy=True)
        if r.ndim != 1 or r.shape != n.shape or r.size == 0:
            raise ValueError("need matching one-dimensional r and count arrays")
        if np.any(r <= 0.0) or np.any(np.diff(r) <= 0.0):
            raise ValueError("r must be positive and strictly increasing")
        if np.any(n < 1):
            raise ValueError("box counts must be positive")
        if np.any(np.diff(n) > 0):
            raise ValueError("box counts must be non-increasing in r")
        if not self.sbar > 0.0:
            raise ValueError("sbar must be positive")
        r.flags.writeable = False
        n.flags.writeable = False
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "n_boxes", n)

    @property
    def r_over_sbar(self):
        return self.r / self.sbar

    @property
    def ln_r_over_sbar(self):
        return np.log(self.r_over_sbar)

    @property
    def ln_n(self):
        return np.log(self.n_boxes.astype(float))

    def write_csv(self, path):
        with open(path, "w") as fh:
            fh.write("r,n_boxes,r_over_sbar,ln_r_over_sbar,ln_n\n")
            for r, n, x, lx, ln in zip(
                self.r, self.n_boxes, self.r_over_sbar, self.ln_r_over_sbar, self.ln_n
            ):
                fh.write(f"{r:.17g},{n},{x:.17g},{lx:.17g},{ln:.17g}\n")


def count_boxes(spectrum: Spectrum, r):
    """Number of length-r boxes (anchored at e_min) holding a level.

    The partition covers [e_min, e_min + ceil(L/r) * r); the window's
    top endpoint folds into the last box, so the count never exceeds
    ceil(L/r).  For r > L this returns 1.
    """
    if r <= 0.0:
        raise ValueError("r must be positive")
    span = spectrum.length
    n_max = max(1, math.ceil(span / r))
    idx = np.floor((spectrum.levels - spectrum.e_min) / r)
    np.minimum(idx, n_max - 1, out=idx)
    return int(1 + np.count_nonzero(idx[1:] > idx[:-1]))


def count_curve(spectrum: Spectrum, config: SlopeConfig | None = None):
    """Scan N(r) over the configured log grid of r/sbar.

    Mesh-alignment jitter can bump the raw count up by a few boxes
    between neighboring grid points; the recorded curve is the running
    minimum, which keeps it non-increasing without moving any value by
    more than the jitter itself.
    """
    config = config or DEFAULT_SLOPE
    sbar = spectrum.mean_spacing
    grid = log_grid(config.r_min_over_sbar, config.r_max_over_sbar, config.grid_points_per_decade)
    rs = grid * sbar
    raw = np.array([count_boxes(spectrum, r) for r in rs], dtype=np.int64)
    bound = np.minimum(spectrum.n, np.ceil(spectrum.length / rs).astype(np.int64))
    if np.any(raw < 1) or np.any(raw > np.maximum(bound, 1)):
        raise AssertionError("box count outside [1, min(n, ceil(L/r))]")
    counts = np.minimum.accumulate(raw)
    return BoxCountCurve(rs, counts, sbar=sbar, label=spectrum.label)


def local_slope_curve(curve: BoxCountCurve, config: SlopeConfig | None = None):
    """Least-squares local slopes of (ln r, ln N), negated.

    Interior points use a centered window; near the ends the window is
    clamped one-sided.  A constant-count plateau yields slope 0.
    """
    config = config or DEFAULT_SLOPE
    m = curve.r.size
    if m < config.window:
        raise ValueError(f"curve has {m} points, window needs {config.window}")
    lnr = np.log(curve.r)
    lnn = curve.ln_n
    half = config.window // 2
    d_b = np.empty(m)
    for i in range(m):
        lo, hi = max(0, i - half), min(m, i + half + 1)
        x = lnr[lo:hi] - lnr[lo:hi].mean()
        y = lnn[lo:hi] - lnn[lo:hi].mean()
        d_b[i] = -(x @ y) / (x @ x)
    return DimensionCurve(
        curve.r_over_sbar, d_b, source=BOX_COUNTING, label=curve.label
    )


def empirical_gap_probability(spectrum: Spectrum, r):
    """Empirical gap probability 1 - (r/L) N(r), clamped to [0, 1]."""
    if r <= 0.0:
        raise ValueError("r must be positive")
    span = spectrum.length
    if span <= 0.0:
        raise ValueError("window has zero length")
    q = (r / span) * count_boxes(spectrum, r)
    return min(max(1.0 - q, 0.0), 1.0)
