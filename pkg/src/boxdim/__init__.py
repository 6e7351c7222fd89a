"""Local box-counting dimension of discrete level spectra.

The theory side turns a nearest-neighbor spacing distribution into the
scale-dependent box-counting dimension D_b(r) through a gap-probability
transform, with closed forms for Poisson, GOE, GUE, and GSE spacing
statistics.  The empirical side generates or ingests level sequences,
counts covering boxes over a log-spaced grid of scales, and estimates
D_b(r) from local slopes, so theory and measurement can be compared.
"""

from .boxcount import (
    BoxCountCurve,
    SlopeConfig,
    count_boxes,
    count_curve,
    empirical_gap_probability,
    local_slope_curve,
    log_grid,
)
from .nnsd import (
    PointMassError,
    SpacingModel,
    TableRangeError,
    empirical_nnsd,
    equal_spacing,
    from_kind,
    load_tabulated,
    poisson,
    tabulated,
    wigner_goe,
    wigner_gse,
    wigner_gue,
)
from .spectra import (
    DuplicateLevelError,
    LevelFileError,
    Spectrum,
    decimate,
    goe_spectrum,
    goe_tridiagonal,
    ingest_levels,
    renewal_spectrum,
    rescale_to_unit_mean,
    save_levels,
    unfold_by_counting,
    unfold_semicircle,
)
from .theory import (
    BracketError,
    DimensionCurve,
    DiscontinuityWarning,
    QuadratureConfig,
    QuadratureError,
    closed_form_db,
    closed_form_equal_spacing,
    closed_form_goe,
    closed_form_gse,
    closed_form_gue,
    closed_form_poisson,
    curve,
    dimension_transform,
    dimension_transform_quadrature,
    erf_erfc,
    find_crossing,
    gap_probability,
)

__version__ = "0.1.0"
