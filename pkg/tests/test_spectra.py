import math

import numpy as np
import pytest
from scipy import stats
from scipy.optimize import brentq

import boxdim as bd
from boxdim.spectra import _semicircle_cdf
from tests.test_nnsd import ks_distance_to_cdf


class TestSpectrumType:
    def test_window_defaults_to_range(self):
        sp = bd.Spectrum.from_levels([1.0, 2.0, 4.0])
        assert (sp.e_min, sp.e_max) == (1.0, 4.0)
        assert sp.n == 3
        assert sp.length == 3.0
        assert sp.mean_spacing == 1.5

    def test_duplicates_rejected(self):
        with pytest.raises(bd.DuplicateLevelError):
            bd.Spectrum.from_levels([0.0, 1.0, 1.0, 2.0])

    def test_unsorted_rejected(self):
        with pytest.raises(ValueError):
            bd.Spectrum.from_levels([0.0, 2.0, 1.0])

    def test_window_must_cover_levels(self):
        with pytest.raises(ValueError):
            bd.Spectrum([0.0, 1.0], e_min=0.5, e_max=2.0)

    def test_levels_read_only(self):
        sp = bd.Spectrum.from_levels([0.0, 1.0])
        with pytest.raises(ValueError):
            sp.levels[0] = 5.0

    def test_mean_spacing_needs_two(self):
        sp = bd.Spectrum.from_levels([3.0], e_min=0.0, e_max=4.0)
        with pytest.raises(ValueError):
            sp.mean_spacing


class TestRenewal:
    def test_equal_spacing_grid(self):
        sp = bd.renewal_spectrum(bd.equal_spacing(), 4, 0)
        assert np.array_equal(sp.levels, [0.0, 1.0, 2.0, 3.0])
        assert (sp.e_min, sp.e_max) == (0.0, 3.0)

    def test_poisson_mean_spacing(self, poisson_renewal_100k):
        assert abs(poisson_renewal_100k.mean_spacing - 1.0) < 0.02

    def test_gue_renewal_nnsd(self):
        model = bd.wigner_gue()
        sp = bd.renewal_spectrum(model, 100_000, 4)
        assert ks_distance_to_cdf(sp.spacings, model) < 0.01

    def test_renewal_ks_bound(self, gue_renewal_10k):
        # i.i.d. construction: KS below the 1% critical value 1.63/sqrt(n)
        dist = ks_distance_to_cdf(gue_renewal_10k.spacings, bd.wigner_gue())
        assert dist < 1.63 / math.sqrt(gue_renewal_10k.n - 1)

    def test_needs_two_levels(self):
        with pytest.raises(ValueError):
            bd.renewal_spectrum(bd.poisson(), 1, 0)


class TestGoeSpectrum:
    def test_trace_identity_small(self):
        diag, _ = bd.goe_tridiagonal(2, 5)
        sp = bd.goe_spectrum(2, 5)
        assert sp.levels.sum() == pytest.approx(diag.sum(), abs=1e-10)

    def test_trace_identity_large(self, goe_matrix_20k):
        from tests.conftest import SEED_GOE_MATRIX

        diag, _ = bd.goe_tridiagonal(20_000, SEED_GOE_MATRIX)
        scale = np.abs(goe_matrix_20k.levels).sum()
        assert abs(goe_matrix_20k.levels.sum() - diag.sum()) <= 1e-9 * scale

    def test_semicircle_density(self):
        n = 1000
        sp = bd.goe_spectrum(n, 3)
        radius = math.sqrt(2.0 * n)
        x = sp.levels / radius
        # equal-probability bins from semicircle quantiles
        nb = 20
        edges = np.array(
            [-1.0]
            + [brentq(lambda t, q=q: _semicircle_cdf(t) - q, -1.0, 1.0)
               for q in np.linspace(0.0, 1.0, nb + 1)[1:-1]]
            + [1.0]
        )
        counts, _ = np.histogram(np.clip(x, -1.0, 1.0), bins=edges)
        expected = n / nb
        chi2 = float(((counts - expected) ** 2 / expected).sum())
        assert stats.chi2.sf(chi2, nb - 1) > 1e-3

    def test_deterministic(self):
        a = bd.goe_spectrum(300, 11)
        b = bd.goe_spectrum(300, 11)
        assert np.array_equal(a.levels, b.levels)


class TestUnfolding:
    def test_affine_counting_is_identity(self):
        # unfolding a uniform sequence by its true (affine) counting
        # function returns it unchanged up to the affine normalization
        levels = np.arange(100, dtype=float) * 2.5 + 7.0
        sp = bd.Spectrum.from_levels(levels)
        out = bd.unfold_by_counting(sp, lambda lv: (lv - 7.0) / 2.5, trim_fraction=0.0)
        assert np.allclose(out.levels, np.arange(100, dtype=float), atol=1e-9)

    def test_unit_mean_exact(self, unfolded_goe_20k):
        assert unfolded_goe_20k.mean_spacing == 1.0
        assert unfolded_goe_20k.levels[0] == 0.0

    def test_trim_count(self, goe_matrix_20k, unfolded_goe_20k):
        assert unfolded_goe_20k.n == goe_matrix_20k.n - 2 * int(0.05 * goe_matrix_20k.n)

    def test_bulk_nnsd_matches_surmise(self, unfolded_goe_20k):
        dist = ks_distance_to_cdf(unfolded_goe_20k.spacings, bd.wigner_goe())
        assert dist < 0.015

    def test_trim_floor_keeps_small_spectra(self):
        # int(0.25 * 4) trims one level per side, leaving two
        sp = bd.Spectrum.from_levels([0.0, 1.0, 2.0, 3.0])
        out = bd.unfold_by_counting(sp, lambda lv: lv, trim_fraction=0.25)
        assert out.n == 2

    def test_bad_trim_fraction(self):
        sp = bd.Spectrum.from_levels([0.0, 1.0])
        with pytest.raises(ValueError):
            bd.unfold_by_counting(sp, lambda lv: lv, trim_fraction=0.5)


class TestDecimate:
    def test_even(self):
        sp = bd.Spectrum.from_levels([0.0, 1.0, 2.0, 3.0])
        assert np.array_equal(bd.decimate(sp, "even").levels, [0.0, 2.0])

    def test_odd(self):
        sp = bd.Spectrum.from_levels([0.0, 1.0, 2.0, 3.0])
        assert np.array_equal(bd.decimate(sp, "odd").levels, [1.0, 3.0])

    def test_window_recomputed(self):
        sp = bd.Spectrum.from_levels([0.0, 1.0, 2.0, 3.0, 4.0])
        odd = bd.decimate(sp, "odd")
        assert (odd.e_min, odd.e_max) == (1.0, 3.0)

    def test_union_reconstitutes(self):
        rng = np.random.default_rng(8)
        levels = np.cumsum(rng.exponential(1.0, 101))
        sp = bd.Spectrum.from_levels(levels)
        both = np.sort(
            np.concatenate(
                [bd.decimate(sp, "even").levels, bd.decimate(sp, "odd").levels]
            )
        )
        assert np.array_equal(both, sp.levels)

    def test_needs_four(self):
        with pytest.raises(ValueError):
            bd.decimate(bd.Spectrum.from_levels([0.0, 1.0, 2.0]), "even")

    def test_bad_parity(self):
        with pytest.raises(ValueError):
            bd.decimate(bd.Spectrum.from_levels([0.0, 1.0, 2.0, 3.0]), "third")

    def test_decimated_goe_has_gse_spacings(self, unfolded_goe_20k):
        # alternate levels of a unit-mean GOE sequence: quartic-repulsion
        # statistics with doubled mean spacing
        dec = bd.decimate(unfolded_goe_20k, "even")
        model = bd.wigner_gse(mean_spacing=float(dec.spacings.mean()))
        assert abs(model.mean_spacing - 2.0) < 0.02
        assert ks_distance_to_cdf(dec.spacings, model) < 0.02


class TestRescale:
    def test_examples(self):
        assert np.array_equal(
            bd.rescale_to_unit_mean(bd.Spectrum.from_levels([0.0, 2.0, 4.0])).levels,
            [0.0, 1.0, 2.0],
        )
        assert np.array_equal(
            bd.rescale_to_unit_mean(bd.Spectrum.from_levels([5.0, 6.0, 9.0])).levels,
            [0.0, 0.5, 2.0],
        )

    def test_idempotent(self):
        rng = np.random.default_rng(2)
        sp = bd.Spectrum.from_levels(np.cumsum(rng.exponential(2.5, 500)))
        once = bd.rescale_to_unit_mean(sp)
        twice = bd.rescale_to_unit_mean(once)
        assert np.array_equal(once.levels, twice.levels)
        assert once.mean_spacing == 1.0


class TestLevelFiles:
    def test_ingest_shifts_to_zero(self, tmp_path):
        path = tmp_path / "levels.txt"
        path.write_text("0.5\n1.5\n2.5\n")
        sp = bd.ingest_levels(path)
        assert np.array_equal(sp.levels, [0.0, 1.0, 2.0])
        assert sp.label == "levels"

    def test_comments_and_sorting(self, tmp_path):
        path = tmp_path / "levels.txt"
        path.write_text("# header\n3.0\n1.0\n\n2.0\n")
        sp = bd.ingest_levels(path)
        assert np.array_equal(sp.levels, [0.0, 1.0, 2.0])

    def test_empty_rejected(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# nothing here\n")
        with pytest.raises(bd.LevelFileError):
            bd.ingest_levels(path)

    def test_parse_error_carries_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1.0\n2.0\noops\n")
        with pytest.raises(bd.LevelFileError) as err:
            bd.ingest_levels(path)
        assert err.value.line == 3

    def test_duplicates_rejected(self, tmp_path):
        path = tmp_path / "dup.txt"
        path.write_text("1.0\n2.0\n2.00\n")
        with pytest.raises(bd.DuplicateLevelError):
            bd.ingest_levels(path)

    def test_huge_offset_preserves_spacings(self, tmp_path):
        # 21 digits of offset would eat all mantissa bits without the
        # decimal-subtraction path
        base = "1371231461255325922340"
        path = tmp_path / "zeros.txt"
        path.write_text(
            f"{base}.1\n{base}.25\n{base}.4\n{base}.75\n"
        )
        sp = bd.ingest_levels(path)
        assert np.array_equal(sp.levels, [0.0, 0.15, 0.3, 0.65])

    def test_roundtrip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(3)
        sp = bd.Spectrum.from_levels(np.cumsum(rng.exponential(1.0, 200)))
        first = tmp_path / "a.txt"
        second = tmp_path / "b.txt"
        bd.save_levels(sp, first)
        back = bd.ingest_levels(first)
        bd.save_levels(back, second)
        again = bd.ingest_levels(second)
        assert np.array_equal(back.levels, again.levels)

    def test_non_finite_rejected(self, tmp_path):
        path = tmp_path / "inf.txt"
        path.write_text("1.0\ninf\n")
        with pytest.raises(bd.LevelFileError):
            bd.ingest_levels(path)
