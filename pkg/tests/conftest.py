import pytest

import boxdim as bd

# Fixed seeds for the statistical reproduction runs; any fixed seed works,
# these were picked once and frozen.
SEED_POISSON = 1
SEED_GOE_RENEWAL = 1
SEED_GUE_RENEWAL = 1
SEED_GOE_MATRIX = 11


@pytest.fixture(scope="session")
def poisson_renewal_100k():
    return bd.renewal_spectrum(bd.poisson(), 100_000, SEED_POISSON)


@pytest.fixture(scope="session")
def goe_renewal_100k():
    return bd.renewal_spectrum(bd.wigner_goe(), 100_000, SEED_GOE_RENEWAL)


@pytest.fixture(scope="session")
def gue_renewal_10k():
    return bd.renewal_spectrum(bd.wigner_gue(), 10_000, SEED_GUE_RENEWAL)


@pytest.fixture(scope="session")
def goe_matrix_20k():
    return bd.goe_spectrum(20_000, SEED_GOE_MATRIX)


@pytest.fixture(scope="session")
def unfolded_goe_20k(goe_matrix_20k):
    return bd.unfold_semicircle(goe_matrix_20k, trim_fraction=0.05)


@pytest.fixture(scope="session")
def decimated_gse(unfolded_goe_20k):
    return bd.rescale_to_unit_mean(bd.decimate(unfolded_goe_20k, "even"))
