"""Nearest-neighbor spacing distribution (NNSD) models.

Each model provides the spacing density P(s), its CDF, the survival
function, and a seeded sampler.  Built-in kinds cover independent
(Poisson) levels, the three Wigner surmises (GOE/GUE/GSE level
repulsion with beta = 1, 2, 4), a degenerate equal-spacing model, and
tabulated empirical distributions backed by a histogram.

All built-in formulas are written in terms of u = s / mean_spacing, so
a model with mean spacing sbar evaluated at s agrees exactly with the
unit-mean model evaluated at s / sbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf, erfc

POISSON = "poisson"
GOE = "goe"
GUE = "gue"
GSE = "gse"
EQUAL = "equal"
TABULATED = "tabulated"

BUILTIN_KINDS = (POISSON, GOE, GUE, GSE, EQUAL)
ALL_KINDS = BUILTIN_KINDS + (TABULATED,)

# Unit-mean Wigner surmises: P(u) = coeff * u**beta * exp(-decay * u**2).
_SURMISE = {
    GOE: (1, math.pi / 4.0, math.pi / 2.0),
    GUE: (2, 4.0 / math.pi, 32.0 / math.pi**2),
    GSE: (4, 64.0 / (9.0 * math.pi), 2.0**18 / (3.0**6 * math.pi**3)),
}

# E[chi_k] with k = beta + 1 degrees of freedom; the surmises are scaled
# chi distributions, so spacings sample as sbar * |z| / E[chi_k] with z
# a (beta+1)-vector of standard normals.
_CHI_MEAN = {
    beta: math.sqrt(2.0) * math.gamma((beta + 2) / 2.0) / math.gamma((beta + 1) / 2.0)
    for beta, _, _ in _SURMISE.values()
}


class PointMassError(ValueError):
    """The equal-spacing NNSD has no pointwise density."""


class TableRangeError(ValueError):
    """Tabulated density queried outside the supported range."""


def check_seed(seed):
    """Validate a 64-bit unsigned sampler seed."""
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    return int(seed)


@dataclass(frozen=True)
class SpacingModel:
    """A spacing distribution: kind tag, mean spacing, optional table.

    For ``tabulated`` models the (s, P(s)) pairs are interpreted as a
    piecewise-constant density: bin edges sit midway between adjacent s
    values (clipped at zero on the left) and the stored density values
    are renormalized to unit total mass.  The CDF is then piecewise
    linear and is inverted by interpolation when sampling.
    """

    kind: str
    mean_spacing: float = 1.0
    table_s: np.ndarray | None = None
    table_p: np.ndarray | None = None
    _edges: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)
    _density: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)
    _cdf_knots: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if not (self.mean_spacing > 0.0 and math.isfinite(self.mean_spacing)):
            raise ValueError(f"mean_spacing must be positive, got {self.mean_spacing}")
        if self.kind == TABULATED:
            self._init_table()
        elif self.table_s is not None or self.table_p is not None:
            raise ValueError("only tabulated models carry a table")

    def _init_table(self):
        s = np.array(self.table_s, dtype=float, copy=True)
        p = np.array(self.table_p, dtype=float, copy=True)
        if s.ndim != 1 or s.size < 2 or s.shape != p.shape:
            raise ValueError("table needs >= 2 matching (s, P(s)) pairs")
        if np.any(np.diff(s) <= 0.0):
            raise ValueError("table s values must be strictly ascending")
        if s[0] < 0.0 or np.any(p < 0.0):
            raise ValueError("table values must be nonnegative")
        mid = 0.5 * (s[:-1] + s[1:])
        first = max(0.0, s[0] - (s[1] - s[0]) / 2.0)
        last = s[-1] + (s[-1] - s[-2]) / 2.0
        edges = np.concatenate([[first], mid, [last]])
        widths = np.diff(edges)
        mass = float(np.sum(p * widths))
        if mass <= 0.0:
            raise ValueError("table carries no probability mass")
        density = p / mass
        knots = np.concatenate([[0.0], np.cumsum(density * widths)])
        knots[-1] = 1.0  # exact by normalization
        object.__setattr__(self, "table_s", s)
        object.__setattr__(self, "table_p", p)
        object.__setattr__(self, "_edges", edges)
        object.__setattr__(self, "_density", density)
        object.__setattr__(self, "_cdf_knots", knots)
        for name in ("table_s", "table_p", "_edges", "_density", "_cdf_knots"):
            getattr(self, name).flags.writeable = False

    # -- evaluation ----------------------------------------------------

    def density(self, s):
        """Spacing density P(s); array-capable, requires s >= 0."""
        arr = np.asarray(s, dtype=float)
        if np.any(arr < 0.0):
            raise ValueError("spacings are nonnegative")
        if self.kind == EQUAL:
            raise PointMassError("density undefined (point mass at the mean spacing)")
        if self.kind == TABULATED:
            out = self._table_density(arr)
        else:
            u = arr / self.mean_spacing
            if self.kind == POISSON:
                out = np.exp(-u) / self.mean_spacing
            else:
                beta, decay, coeff = _SURMISE[self.kind]
                out = coeff * u**beta * np.exp(-decay * u * u) / self.mean_spacing
        return float(out) if np.isscalar(s) or arr.ndim == 0 else out

    def _table_density(self, arr):
        edges, density = self._edges, self._density
        if np.any(arr < edges[0]) or np.any(arr > edges[-1]):
            raise TableRangeError(
                f"s outside tabulated range [{edges[0]:g}, {edges[-1]:g}]"
            )
        idx = np.clip(np.searchsorted(edges, arr, side="right") - 1, 0, len(density) - 1)
        return density[idx]

    def cdf(self, x):
        """Probability that the nearest-neighbor spacing is <= x."""
        arr = np.asarray(x, dtype=float)
        if np.any(arr < 0.0):
            raise ValueError("x must be nonnegative")
        u = arr / self.mean_spacing
        if self.kind == POISSON:
            out = -np.expm1(-u)
        elif self.kind == GOE:
            out = -np.expm1(-(math.pi / 4.0) * u * u)
        elif self.kind == GUE:
            out = erf(2.0 / math.sqrt(math.pi) * u) - (4.0 / math.pi) * u * np.exp(
                -(4.0 / math.pi) * u * u
            )
        elif self.kind == GSE:
            a = 64.0 / (9.0 * math.pi)
            out = erf(8.0 / (3.0 * math.sqrt(math.pi)) * u) - (
                (16.0 / (3.0 * math.pi)) * u + (2048.0 / (81.0 * math.pi**2)) * u**3
            ) * np.exp(-a * u * u)
        elif self.kind == EQUAL:
            out = np.where(u >= 1.0, 1.0, 0.0)
        else:
            out = np.interp(arr, self._edges, self._cdf_knots)
        return float(out) if np.isscalar(x) or arr.ndim == 0 else out

    def survival(self, x):
        """Probability that the spacing exceeds x; accurate in the far tail."""
        arr = np.asarray(x, dtype=float)
        if np.any(arr < 0.0):
            raise ValueError("x must be nonnegative")
        u = arr / self.mean_spacing
        if self.kind == POISSON:
            out = np.exp(-u)
        elif self.kind == GOE:
            out = np.exp(-(math.pi / 4.0) * u * u)
        elif self.kind == GUE:
            out = erfc(2.0 / math.sqrt(math.pi) * u) + (4.0 / math.pi) * u * np.exp(
                -(4.0 / math.pi) * u * u
            )
        elif self.kind == GSE:
            a = 64.0 / (9.0 * math.pi)
            out = erfc(8.0 / (3.0 * math.sqrt(math.pi)) * u) + (
                (16.0 / (3.0 * math.pi)) * u + (2048.0 / (81.0 * math.pi**2)) * u**3
            ) * np.exp(-a * u * u)
        elif self.kind == EQUAL:
            out = np.where(u >= 1.0, 0.0, 1.0)
        else:
            out = 1.0 - np.interp(arr, self._edges, self._cdf_knots)
        return float(out) if np.isscalar(x) or arr.ndim == 0 else out

    def density_mean(self):
        """First moment of the density (exact for built-ins and tables)."""
        if self.kind == TABULATED:
            e = self._edges
            return float(np.sum(self._density * (e[1:] ** 2 - e[:-1] ** 2)) / 2.0)
        return self.mean_spacing

    # -- sampling ------------------------------------------------------

    def sample_spacings(self, n, seed):
        """Draw n independent spacings; deterministic for a given seed."""
        if n < 1:
            raise ValueError("need n >= 1 samples")
        rng = np.random.default_rng(check_seed(seed))
        if self.kind == EQUAL:
            return np.full(n, self.mean_spacing)
        if self.kind == POISSON:
            # inverse CDF; 1 - U avoids log(0) since U lies in [0, 1)
            return -self.mean_spacing * np.log1p(-rng.random(n))
        if self.kind == TABULATED:
            # keep only the last knot of any flat CDF run so zero-mass
            # bins are skipped by the interpolation inverse
            knots, edges = self._cdf_knots, self._edges
            keep = np.concatenate([np.diff(knots) > 0.0, [True]])
            return np.interp(rng.random(n), knots[keep], edges[keep])
        beta, _, _ = _SURMISE[self.kind]
        z = rng.standard_normal((n, beta + 1))
        return (self.mean_spacing / _CHI_MEAN[beta]) * np.sqrt(np.einsum("ij,ij->i", z, z))


# -- constructors ------------------------------------------------------


def poisson(mean_spacing=1.0):
    """Independent levels: exponential spacings, no repulsion."""
    return SpacingModel(POISSON, mean_spacing)


def wigner_goe(mean_spacing=1.0):
    """Wigner surmise with linear level repulsion (beta = 1)."""
    return SpacingModel(GOE, mean_spacing)


def wigner_gue(mean_spacing=1.0):
    """Wigner surmise with quadratic level repulsion (beta = 2)."""
    return SpacingModel(GUE, mean_spacing)


def wigner_gse(mean_spacing=1.0):
    """Wigner surmise with quartic level repulsion (beta = 4)."""
    return SpacingModel(GSE, mean_spacing)


def equal_spacing(mean_spacing=1.0):
    """Degenerate model: every spacing equals the mean spacing."""
    return SpacingModel(EQUAL, mean_spacing)


def tabulated(s, p, mean_spacing=None):
    """Model backed by (s, P(s)) pairs; density renormalized to unit mass.

    When mean_spacing is omitted it is taken as the first moment of the
    normalized histogram.
    """
    model = SpacingModel(TABULATED, 1.0, np.asarray(s, float), np.asarray(p, float))
    if mean_spacing is None:
        mean_spacing = model.density_mean()
    return SpacingModel(TABULATED, float(mean_spacing), model.table_s, model.table_p)


def load_tabulated(path, mean_spacing=None):
    """Read a two-column ``s  P(s)`` text file ('#' comments allowed)."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns, got {data.shape[1]}")
    return tabulated(data[:, 0], data[:, 1], mean_spacing)


def from_kind(name, mean_spacing=1.0):
    """Resolve a CLI-style model name, including ``tabulated:<path>``."""
    if name.startswith("tabulated:"):
        return load_tabulated(name.split(":", 1)[1])
    if name in BUILTIN_KINDS:
        return SpacingModel(name, mean_spacing)
    raise ValueError(f"unknown model {name!r}")


def empirical_nnsd(spectrum, bins=50):
    """Histogram NNSD of a level sequence as a tabulated model.

    Accepts a Spectrum or a plain array of levels.  Bins are uniform
    over [0, max spacing]; the model's mean spacing is the sample mean.
    """
    levels = np.asarray(getattr(spectrum, "levels", spectrum), dtype=float)
    if levels.size < 2:
        raise ValueError("no spacings: need at least 2 levels")
    if bins < 4:
        raise ValueError("need bins >= 4")
    spacings = np.diff(levels)
    if np.any(spacings <= 0.0):
        raise ValueError("levels must be strictly increasing")
    edges = np.linspace(0.0, spacings.max(), bins + 1)
    counts, _ = np.histogram(spacings, bins=edges)
    width = edges[1] - edges[0]
    density = counts / (spacings.size * width)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return tabulated(centers, density, mean_spacing=float(spacings.mean()))
