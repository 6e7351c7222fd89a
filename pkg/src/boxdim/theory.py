"""Analytic theory of the local box-counting dimension of level spectra.

A countably-infinite spectrum with spacing density P(s) has covering
count N(r) = (L/r) * (1 - E(r)), where E(r) is the gap probability that
a random interval of length r contains no levels.  The local dimension
D_b(r) = -d ln N / d ln r then reduces to a transform of P alone:

    D_b(r) = 1 - r * S(r) / int_0^r S(x) dx,      S(x) = int_x^inf P(s) ds.

This module implements E(r), the transform (analytic fast path plus an
independent density-only quadrature route), closed forms for the
built-in spacing models, the crossing finder for pairs of dimension
curves, and the supporting quadrature configuration.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erf as _erf_arr, erfc as _erfc_arr

from .nnsd import EQUAL, GOE, GSE, GUE, POISSON, TABULATED, PointMassError, SpacingModel

CLOSED_FORM = "ClosedForm"
TRANSFORM = "Transform"
BOX_COUNTING = "BoxCounting"

# Below r/sbar = SMALL_R_GUARD the transform's 0/0 form loses floating
# point accuracy; series expansions take over.
SMALL_R_GUARD = 1e-4


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries the error estimate."""

    def __init__(self, message, estimate=math.nan):
        super().__init__(message)
        self.estimate = estimate


class BracketError(ValueError):
    """Root bracket does not straddle a sign change."""


class DiscontinuityWarning(UserWarning):
    """A closed form was evaluated exactly at a jump discontinuity."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation rules for the integral transform."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    tail_survival: float = 1e-16

    def __post_init__(self):
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")
        if not 0.0 < self.tail_survival < 1.0:
            raise ValueError("tail_survival must lie in (0, 1)")

    def tail_cut(self, model: SpacingModel) -> float:
        """Smallest T (up to bisection rounding) with survival(T) below
        the tail threshold; finite for every supported model."""
        if model.kind == TABULATED:
            return float(model._edges[-1])
        if model.kind == EQUAL:
            return model.mean_spacing
        hi = model.mean_spacing
        while model.survival(hi) > self.tail_survival:
            hi *= 2.0
            if hi > 1e6 * model.mean_spacing:
                raise QuadratureError("tail cutoff search did not terminate")
        lo = hi / 2.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if model.survival(mid) > self.tail_survival:
                lo = mid
            else:
                hi = mid
        return hi


DEFAULT_QUADRATURE = QuadratureConfig()


def integrate(f, a, b, config=None, points=None):
    """Adaptive Gauss-Kronrod integration of f over [a, b].

    Raises QuadratureError (with the achieved error estimate attached)
    when the requested tolerances cannot be met within the configured
    number of subdivisions.
    """
    config = config or DEFAULT_QUADRATURE
    if b <= a:
        return 0.0
    if points is not None:
        points = [p for p in points if a < p < b]
    result = quad(
        f,
        a,
        b,
        epsabs=config.abs_tol,
        epsrel=config.rel_tol,
        limit=config.max_subdivisions,
        points=points or None,
        full_output=1,
    )
    if len(result) > 3:  # (value, abserr, infodict, message[, explain])
        raise QuadratureError(
            f"quadrature did not converge on [{a:g}, {b:g}]: {result[3]}",
            estimate=result[1],
        )
    return result[0]


def erf_erfc(z):
    """Error function and complement, both to near machine accuracy."""
    if not math.isfinite(z):
        raise ValueError("z must be finite")
    return math.erf(z), math.erfc(z)


# -- gap probability ---------------------------------------------------


def _integrated_survival_unit(kind, x):
    """int_0^x S(t) dt for the unit-mean built-in models (array-capable)."""
    if kind == POISSON:
        return -np.expm1(-x)
    if kind == GOE:
        return _erf_arr(math.sqrt(math.pi) / 2.0 * x)
    if kind == GUE:
        a = 4.0 / math.pi
        return -np.expm1(-a * x * x) + x * _erfc_arr(2.0 / math.sqrt(math.pi) * x)
    if kind == GSE:
        a = 64.0 / (9.0 * math.pi)
        expo = np.exp(-a * x * x)
        return (
            -np.expm1(-a * x * x)
            - (16.0 / (9.0 * math.pi)) * x * x * expo
            + x * _erfc_arr(8.0 / (3.0 * math.sqrt(math.pi)) * x)
        )
    if kind == EQUAL:
        return np.minimum(x, 1.0)
    raise ValueError(f"no analytic antiderivative for kind {kind!r}")


def gap_probability(model, r, config=None):
    """Probability E(r) that a random length-r interval holds no level.

    E(r) = 1 - (1/sbar) * int_0^r survival(x) dx; analytic for built-in
    models, adaptive quadrature over the tabulated survival otherwise.
    """
    if r < 0.0:
        raise ValueError("r must be nonnegative")
    if model.kind == TABULATED:
        integral = integrate(model.survival, 0.0, r, config, points=model._edges)
        e = 1.0 - integral / model.mean_spacing
    else:
        e = 1.0 - _integrated_survival_unit(model.kind, r / model.mean_spacing)
    return min(max(float(e), 0.0), 1.0)


# -- closed forms ------------------------------------------------------


def _series_small_x(kind, x):
    """Leading small-scale behavior of D_b; valid for x well below 1."""
    if kind == POISSON:
        return x / 2.0 - x**2 / 12.0 + x**4 / 720.0
    if kind == GOE:
        return math.pi / 6.0 * x**2 - math.pi**2 / 90.0 * x**4
    if kind == GUE:
        return 8.0 / math.pi**2 * x**3 - 64.0 / (3.0 * math.pi**3) * x**5
    if kind == GSE:
        return (131072.0 / 2187.0) / math.pi**3 * x**5 - (
            2097152.0 / 6561.0
        ) / math.pi**4 * x**7
    raise ValueError(f"no series for kind {kind!r}")


def _guarded(kind, r, sbar, body):
    """Evaluate a closed form of x = r/sbar with the small-x series guard."""
    scalar = np.isscalar(r) or np.asarray(r).ndim == 0
    x = np.atleast_1d(np.asarray(r, dtype=float)) / sbar
    if np.any(x <= 0.0):
        raise ValueError("r must be positive")
    out = np.empty_like(x)
    small = x < SMALL_R_GUARD
    if np.any(small):
        out[small] = _series_small_x(kind, x[small])
    if np.any(~small):
        out[~small] = body(x[~small])
    return float(out[0]) if scalar else out


def closed_form_poisson(r, sbar=1.0):
    """D_b(r) = 1 - x e^-x / (1 - e^-x) with x = r/sbar."""

    def body(x):
        return 1.0 - x * np.exp(-x) / (-np.expm1(-x))

    return _guarded(POISSON, r, sbar, body)


def closed_form_goe(r, sbar=1.0):
    """D_b(r) = 1 - x exp(-pi x^2/4) / erf(sqrt(pi) x / 2)."""

    def body(x):
        return 1.0 - x * np.exp(-math.pi / 4.0 * x * x) / _erf_arr(
            math.sqrt(math.pi) / 2.0 * x
        )

    return _guarded(GOE, r, sbar, body)


def closed_form_gue(r, sbar=1.0):
    """Quadratic-repulsion closed form (erfc and Gaussian combination)."""

    def body(x):
        a = 4.0 / math.pi
        expo = np.exp(-a * x * x)
        ec = _erfc_arr(2.0 / math.sqrt(math.pi) * x)
        num = x * (ec + a * x * expo)
        den = -np.expm1(-a * x * x) + x * ec
        return 1.0 - num / den

    return _guarded(GUE, r, sbar, body)


def closed_form_gse(r, sbar=1.0):
    """Quartic-repulsion closed form (erfc and Gaussian combination)."""

    def body(x):
        a = 64.0 / (9.0 * math.pi)
        expo = np.exp(-a * x * x)
        ec = _erfc_arr(8.0 / (3.0 * math.sqrt(math.pi)) * x)
        num = x * (
            ec
            + ((16.0 / (3.0 * math.pi)) * x + (2048.0 / (81.0 * math.pi**2)) * x**3) * expo
        )
        den = -np.expm1(-a * x * x) - (16.0 / (9.0 * math.pi)) * x * x * expo + x * ec
        return 1.0 - num / den

    return _guarded(GSE, r, sbar, body)


def closed_form_equal_spacing(r, sbar=1.0):
    """Step curve of an equally spaced sequence: 0 below sbar, 1 above.

    At r exactly equal to sbar the left limit 0 is returned and a
    DiscontinuityWarning is emitted.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("r must be positive")
    if np.any(arr == sbar):
        warnings.warn(
            "D_b of an equally spaced sequence jumps at r = mean spacing; "
            "returning the left limit 0",
            DiscontinuityWarning,
            stacklevel=2,
        )
    out = np.where(arr > sbar, 1.0, 0.0)
    return float(out) if np.isscalar(r) or arr.ndim == 0 else out


_CLOSED_FORMS = {
    POISSON: closed_form_poisson,
    GOE: closed_form_goe,
    GUE: closed_form_gue,
    GSE: closed_form_gse,
    EQUAL: closed_form_equal_spacing,
}


def closed_form_db(model, r):
    """Closed-form D_b for any built-in model, dispatched on kind."""
    try:
        fn = _CLOSED_FORMS[model.kind]
    except KeyError:
        raise ValueError(f"no closed form for kind {model.kind!r}") from None
    return fn(r, model.mean_spacing)


# -- the transform -----------------------------------------------------


def dimension_transform(model, r, config=None):
    """Local box-counting dimension from the spacing distribution.

    Evaluates 1 - r S(r) / (sbar (1 - E(r))) with the analytic survival
    for built-in models and quadrature over the tabulated survival
    otherwise.  Equal spacing has a point-mass NNSD and is rejected;
    use closed_form_equal_spacing for its step curve.
    """
    if model.kind == EQUAL:
        raise PointMassError("point-mass NNSD: use closed_form_equal_spacing")
    if r <= 0.0:
        raise ValueError("r must be positive")
    sbar = model.mean_spacing
    x = r / sbar
    if x < SMALL_R_GUARD:
        if model.kind == TABULATED:
            # density is constant p0 near zero, so D_b = (p0 r/2)/(1 - p0 r/2)
            p0 = float(model._density[0]) if model._edges[0] <= 0.0 else 0.0
            half = 0.5 * p0 * r
            return half / (1.0 - half)
        return float(_series_small_x(model.kind, x))
    e = gap_probability(model, r, config)
    num = r * model.survival(r)
    den = sbar * (1.0 - e)
    return min(max(1.0 - num / den, 0.0), 1.0)


def dimension_transform_quadrature(model, r, config=None):
    """Dimension transform evaluated by quadrature of the density only.

    Independent of the analytic survival and antiderivative forms: the
    numerator integrates P over [r, T] and the denominator uses
    int_0^r S(x) dx = int_0^r s P(s) ds + r int_r^T P(s) ds, with T the
    tail cutoff.  Serves as the cross-check route for the closed forms.
    """
    if model.kind == EQUAL:
        raise PointMassError("point-mass NNSD has no density to integrate")
    if r <= 0.0:
        raise ValueError("r must be positive")
    config = config or DEFAULT_QUADRATURE
    t = config.tail_cut(model)
    # the tabulated density is only defined on its support
    lo = float(model._edges[0]) if model.kind == TABULATED else 0.0
    knots = model._edges if model.kind == TABULATED else None
    tail = integrate(model.density, max(r, lo), t, config, points=knots) if r < t else 0.0
    first_moment = integrate(
        lambda s: s * model.density(s), lo, min(r, t), config, points=knots
    )
    num = r * tail
    den = first_moment + num
    return 1.0 - num / den


# -- dimension curves --------------------------------------------------


@dataclass(frozen=True)
class DimensionCurve:
    """D_b values on a normalized scale grid r/sbar."""

    r_over_sbar: np.ndarray
    d_b: np.ndarray
    source: str
    label: str = ""

    def __post_init__(self):
        r = np.array(self.r_over_sbar, dtype=float, copy=True)
        d = np.array(self.d_b, dtype=float, copy=True)
        if r.ndim != 1 or r.shape != d.shape or r.size == 0:
            raise ValueError("need matching one-dimensional point arrays")
        if np.any(r <= 0.0) or np.any(np.diff(r) <= 0.0):
            raise ValueError("r/sbar values must be positive and strictly increasing")
        if self.source not in (CLOSED_FORM, TRANSFORM, BOX_COUNTING):
            raise ValueError(f"unknown curve source {self.source!r}")
        lo, hi = (-0.05, 1.05) if self.source == BOX_COUNTING else (0.0, 1.0)
        if np.any(d < lo) or np.any(d > hi):
            raise ValueError(f"d_b out of range [{lo}, {hi}]")
        r.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "r_over_sbar", r)
        object.__setattr__(self, "d_b", d)

    def write_csv(self, path):
        with open(path, "w") as fh:
            fh.write("r_over_sbar,d_b,source\n")
            for r, d in zip(self.r_over_sbar, self.d_b):
                fh.write(f"{r:.17g},{d:.17g},{self.source}\n")

    @classmethod
    def read_csv(cls, path):
        rs, ds, source = [], [], None
        with open(path) as fh:
            header = fh.readline().strip()
            if header != "r_over_sbar,d_b,source":
                raise ValueError(f"{path}: not a dimension-curve CSV")
            for line in fh:
                r, d, src = line.strip().split(",")
                rs.append(float(r))
                ds.append(float(d))
                source = src
        if not rs:
            raise ValueError(f"{path}: empty curve")
        label = os.path.splitext(os.path.basename(str(path)))[0]
        return cls(np.array(rs), np.array(ds), source, label=label)


def curve(model, r_values, config=None):
    """Evaluate the theoretical dimension curve of a model on a grid.

    Built-in models use their closed forms (source ClosedForm);
    tabulated models go through the transform (source Transform).
    """
    r = np.asarray(r_values, dtype=float)
    if r.size == 0:
        raise ValueError("empty r grid")
    if np.any(r <= 0.0) or np.any(np.diff(r) <= 0.0):
        raise ValueError("r grid must be positive and strictly increasing")
    if model.kind in _CLOSED_FORMS:
        db = np.atleast_1d(closed_form_db(model, r))
        source = CLOSED_FORM
    else:
        vals = []
        for ri in r:
            try:
                vals.append(dimension_transform(model, float(ri), config))
            except QuadratureError as exc:
                raise QuadratureError(
                    f"{exc} (while evaluating the curve at r={ri!r})",
                    estimate=exc.estimate,
                ) from exc
        db = np.array(vals)
        source = TRANSFORM
    return DimensionCurve(r / model.mean_spacing, db, source, label=model.kind)


def find_crossing(model_a, model_b, bracket, tol=1e-10):
    """Locate where two closed-form dimension curves intersect.

    Bisects the difference of the closed forms over the bracket to the
    requested absolute tolerance; raises BracketError when the
    difference does not change sign across the bracket.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0.0 < lo < hi:
        raise ValueError("bracket must satisfy 0 < lo < hi")

    def diff(r):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DiscontinuityWarning)
            return float(closed_form_db(model_a, r)) - float(closed_form_db(model_b, r))

    f_lo, f_hi = diff(lo), diff(hi)
    if f_lo == 0.0 and f_hi == 0.0:
        raise BracketError("curves coincide at both bracket ends (difference may be identically zero)")
    if f_lo * f_hi >= 0.0:
        raise BracketError(f"no sign change over bracket ({lo:g}, {hi:g})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = diff(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)
