"""Level-sequence generation, preparation, and file ingestion.

Spectra are finite, strictly increasing sequences of levels together
with an analysis window [e_min, e_max].  Sources: renewal sequences
built from i.i.d. spacings of any SpacingModel, eigenvalues of a
tridiagonal GOE-equivalent random matrix, and plain-text level files.
Preparation steps: semicircle unfolding, alternate-level decimation,
and affine rescaling to unit mean spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .nnsd import SpacingModel, check_seed


class DuplicateLevelError(ValueError):
    """Two identical levels; box counting would silently hide this."""


class LevelFileError(ValueError):
    """A level file could not be parsed; carries the offending line."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Spectrum:
    """Strictly increasing levels within a window [e_min, e_max]."""

    levels: np.ndarray
    e_min: float
    e_max: float
    label: str = ""

    def __post_init__(self):
        arr = np.array(self.levels, dtype=float, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("levels must be a nonempty one-dimensional sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("levels must be finite")
        diffs = np.diff(arr)
        if np.any(diffs == 0.0):
            where = int(np.nonzero(diffs == 0.0)[0][0])
            raise DuplicateLevelError(f"duplicate level {float(arr[where])!r}")
        if np.any(diffs < 0.0):
            raise ValueError("levels must be sorted ascending")
        if not (self.e_min <= arr[0] and arr[-1] <= self.e_max):
            raise ValueError("window must contain all levels")
        arr.flags.writeable = False
        object.__setattr__(self, "levels", arr)

    @classmethod
    def from_levels(cls, levels, e_min=None, e_max=None, label=""):
        """Build a spectrum, defaulting the window to the level range."""
        arr = np.asarray(levels, dtype=float)
        if arr.size == 0:
            raise ValueError("no levels")
        e_min = float(arr[0]) if e_min is None else float(e_min)
        e_max = float(arr[-1]) if e_max is None else float(e_max)
        return cls(arr, e_min, e_max, label)

    @property
    def n(self):
        return int(self.levels.size)

    @property
    def length(self):
        """Window length L = e_max - e_min."""
        return self.e_max - self.e_min

    @property
    def spacings(self):
        return np.diff(self.levels)

    @property
    def mean_spacing(self):
        if self.n < 2:
            raise ValueError("mean spacing needs at least 2 levels")
        return (self.levels[-1] - self.levels[0]) / (self.n - 1)


# -- generation --------------------------------------------------------


def renewal_spectrum(model: SpacingModel, n, seed, label=None):
    """Levels with i.i.d. spacings drawn from the model, starting at 0.

    The output NNSD is the model's P(s) by construction.
    """
    if n < 2:
        raise ValueError("need n >= 2 levels")
    spacings = model.sample_spacings(n - 1, seed)
    levels = np.concatenate([[0.0], np.cumsum(spacings)])
    if label is None:
        label = f"{model.kind}-renewal-n{n}-seed{seed}"
    return Spectrum.from_levels(levels, label=label)


def goe_tridiagonal(n, seed):
    """Diagonal and off-diagonal of a GOE-equivalent tridiagonal matrix.

    Householder reduction of (G + G^T)/2 with i.i.d. standard normal G
    yields N(0,1) diagonal entries and chi_{n-k}/sqrt(2) couplings; the
    eigenvalue distribution is exactly that of the dense ensemble.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = np.random.default_rng(check_seed(seed))
    diag = rng.standard_normal(n)
    off = np.sqrt(rng.chisquare(np.arange(n - 1, 0, -1))) / math.sqrt(2.0)
    return diag, off


def goe_spectrum(n, seed):
    """Sorted eigenvalues of a GOE-equivalent tridiagonal matrix."""
    diag, off = goe_tridiagonal(n, seed)
    try:
        eigs = eigvalsh_tridiagonal(diag, off, lapack_driver="sterf")
    except Exception as exc:  # LAPACK non-convergence
        raise RuntimeError(
            f"tridiagonal eigensolver failed for n={n}, seed={seed}: {exc}"
        ) from exc
    return Spectrum.from_levels(np.sort(eigs), label=f"goe-matrix-n{n}-seed{seed}")


# -- preparation -------------------------------------------------------


def unfold_by_counting(spectrum, counting, trim_fraction=0.0):
    """Map levels through a cumulative mean counting function.

    The image has unit mean density where the counting function is the
    true mean; trim_fraction of the levels is then dropped at each edge
    and the remainder rescaled to unit mean spacing.
    """
    if not 0.0 <= trim_fraction <= 0.25:
        raise ValueError("trim_fraction must lie in [0, 0.25]")
    mapped = np.asarray(counting(spectrum.levels), dtype=float)
    k = int(trim_fraction * spectrum.n)
    kept = mapped[k : spectrum.n - k]
    if kept.size < 2:
        raise ValueError("trim removed all levels")
    out = Spectrum.from_levels(kept, label=spectrum.label + "-unfolded")
    return rescale_to_unit_mean(out)


def _semicircle_cdf(x):
    """CDF of the unit-radius semicircle density (2/pi) sqrt(1 - x^2)."""
    t = np.clip(x, -1.0, 1.0)
    return 0.5 + (t * np.sqrt(1.0 - t * t) + np.arcsin(t)) / math.pi


def unfold_semicircle(spectrum, trim_fraction=0.05):
    """Unfold a goe_spectrum by the integrated semicircle level density.

    Uses the support radius sqrt(2 n) implied by the goe_tridiagonal
    scaling and centers the semicircle at the midpoint of the observed
    support, so spectra that were shifted on ingestion unfold the same
    way as freshly generated ones.  Edge eigenvalues violate bulk
    statistics; a trim of a few percent per side is recommended.
    """
    n = spectrum.n
    radius = math.sqrt(2.0 * n)
    center = 0.5 * (spectrum.levels[0] + spectrum.levels[-1])
    return unfold_by_counting(
        spectrum, lambda lv: n * _semicircle_cdf((lv - center) / radius), trim_fraction
    )


def decimate(spectrum, parity):
    """Keep every other level ('even' keeps indices 0, 2, ...)."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    if spectrum.n < 4:
        raise ValueError("need n >= 4 to decimate")
    start = 0 if parity == "even" else 1
    kept = spectrum.levels[start::2]
    return Spectrum.from_levels(kept, label=f"{spectrum.label}-{parity}")


def rescale_to_unit_mean(spectrum):
    """Affine map to first level 0 and mean spacing exactly 1.

    The endpoints of the image are known exactly (0 and n-1), so they
    are written exactly; this makes the operation idempotent.
    """
    if spectrum.n < 2:
        raise ValueError("need n >= 2 levels")
    sbar = spectrum.mean_spacing
    levels = (spectrum.levels - spectrum.levels[0]) / sbar
    levels[0] = 0.0
    levels[-1] = float(spectrum.n - 1)
    return Spectrum.from_levels(levels, label=spectrum.label + "-unit")


# -- file interchange --------------------------------------------------


def ingest_levels(path):
    """Read one level per line ('#' comment lines allowed), sort, and
    shift so the first level is 0.

    Values are parsed as decimals and the offset is subtracted before
    conversion to float, so sequences riding on huge offsets keep their
    spacing-scale precision.
    """
    path = Path(path)
    values = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            try:
                value = Decimal(text)
                if not value.is_finite():
                    raise InvalidOperation
            except InvalidOperation:
                raise LevelFileError(
                    f"{path}:{lineno}: not a number: {text!r}", line=lineno
                ) from None
            values.append(value)
    if not values:
        raise LevelFileError(f"{path}: no levels")
    values.sort()
    for a, b in zip(values, values[1:]):
        if a == b:
            raise DuplicateLevelError(f"{path}: duplicate level {a}")
    base = values[0]
    levels = np.array([float(v - base) for v in values])
    return Spectrum.from_levels(levels, label=path.stem)


def save_levels(spectrum, path):
    """Write the spectrum in the same one-level-per-line format."""
    with open(path, "w") as fh:
        if spectrum.label:
            fh.write(f"# {spectrum.label}\n")
        for level in spectrum.levels:
            fh.write(f"{float(level)!r}\n")
