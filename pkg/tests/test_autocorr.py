import math

import numpy as np
import pytest

import difflat as dl
from difflat.errors import EpsilonTooLarge, ZRangeExceedsData

import oracles


class TestCoefficients:
    def test_all_ones_z1_at_zero(self, z1):
        comb = dl.generate(dl.WeightRule.constant(1.0), z1, 100.5)
        assert dl.autocorr_coefficient(comb, (0,)) == 1.0

    def test_all_ones_z1_boundary_deficit(self, z1):
        comb = dl.generate(dl.WeightRule.constant(1.0), z1, 100.5)
        assert dl.autocorr_coefficient(comb, (10,)).real == pytest.approx(191 / 201, abs=1e-12)

    def test_checkerboard_odd_separation_exactly_zero(self, z2):
        comb = dl.generate(dl.WeightRule.checkerboard(), z2, 30.0)
        assert dl.autocorr_coefficient(comb, (1, 0)) == 0j

    def test_bernoulli_lln_band(self, z2):
        # pair coefficient at a fixed nonzero separation concentrates at p^2;
        # the band is 3 sigma of the per-pair binomial model
        p = 0.5
        comb = dl.generate(dl.WeightRule.bernoulli(p, 3), z2, 200.0)
        pts = set(map(tuple, comb.ball_coords()))
        npairs = sum(1 for t in pts if (t[0] - 3, t[1] - 1) in pts)
        vol = dl.ball_volume(2, 200.0)
        sigma = math.sqrt(npairs * p**2 * (1 - p**2)) / vol
        nu = dl.autocorr_coefficient(comb, (3, 1)).real
        assert abs(nu - p * p * npairs / vol) <= 3 * sigma

    def test_matches_brute_force_both_variants(self, hexagonal):
        comb = dl.generate(dl.WeightRule.bernoulli(0.6, 17), hexagonal, 9.0)
        for z in [(0, 0), (1, 0), (-2, 1), (3, 2)]:
            for variant, oracle in (
                ("pair_in_window", oracles.nu_pair),
                ("single_window", oracles.nu_single),
            ):
                got = dl.autocorr_coefficient(comb, z, variant, window_radius=6.0)
                want = oracle(comb.weights, hexagonal.basis, 6.0, z)
                assert got == pytest.approx(want, abs=1e-12), (variant, z)

    def test_complex_weights_match_brute_force(self, z2):
        rng = np.random.default_rng(4)
        pts = [tuple(m) for m in dl.enumerate_ball(z2, 6.0)]
        table = {m: complex(rng.normal(), rng.normal()) for m in pts}
        comb = dl.make_comb(z2, 6.0, table)
        for z in [(1, 1), (0, 2), (-3, 1)]:
            got = dl.autocorr_coefficient(comb, z)
            want = oracles.nu_pair(comb.weights, z2.basis, 6.0, z)
            assert got == pytest.approx(want, abs=1e-12)

    def test_window_radius_cannot_exceed_cutoff(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 5.0)
        with pytest.raises(ValueError):
            dl.autocorr_coefficient(comb, (1, 0), window_radius=6.0)


class TestTable:
    def test_zmax_guard(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 3.0)
        with pytest.raises(ZRangeExceedsData):
            dl.autocorrelation(comb, 7.0)

    def test_closed_ball_includes_boundary(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 8.0)
        table = dl.autocorrelation(comb, 5.0)
        assert (3, 4) in table.entries  # |z| = 5 exactly
        assert (5, 0) in table.entries

    def test_hermitian_symmetry_exact(self, z2):
        rng = np.random.default_rng(12)
        pts = [tuple(m) for m in dl.enumerate_ball(z2, 7.0)]
        table = {m: complex(rng.normal(), rng.normal()) for m in pts}
        comb = dl.make_comb(z2, 7.0, table)
        tab = dl.autocorrelation(comb, 4.0)
        for z, v in tab.entries.items():
            mz = tuple(-c for c in z)
            assert tab.entries[mz] == v.conjugate()  # exact, not approximate

    def test_direct_mirror_evaluation_close(self, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.5, 6), z2, 12.0)
        for z in [(2, 1), (1, -3)]:
            a = dl.autocorr_coefficient(comb, z)
            b = dl.autocorr_coefficient(comb, tuple(-c for c in z))
            assert b == pytest.approx(a.conjugate(), abs=1e-14)

    def test_nu0_real_nonnegative(self, z2):
        rng = np.random.default_rng(13)
        pts = [tuple(m) for m in dl.enumerate_ball(z2, 6.0)]
        table = {m: complex(rng.normal(), rng.normal()) for m in pts}
        comb = dl.make_comb(z2, 6.0, table)
        nu0 = dl.autocorrelation(comb, 3.0)[(0, 0)]
        assert nu0.imag == 0.0
        assert nu0.real >= 0.0

    def test_uniform_bound(self, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.7, 21), z2, 20.0)
        bound = comb.ball_coords().shape[0] / dl.ball_volume(2, 20.0) * comb.weight_bound**2
        tab = dl.autocorrelation(comb, 10.0)
        assert max(abs(v) for v in tab.entries.values()) <= bound + 1e-12

    def test_positive_semidefinite_gram(self, z2):
        rng = np.random.default_rng(99)
        pts = [tuple(m) for m in dl.enumerate_ball(z2, 10.0)]
        table = {m: complex(rng.normal(), rng.normal()) for m in pts}
        combs = [
            dl.generate(dl.WeightRule.bernoulli(0.5, 31), z2, 15.0),
            dl.make_comb(z2, 10.0, table),
        ]
        for comb in combs:
            nu0 = dl.autocorr_coefficient(comb, (0, 0)).real
            for trial in range(10):
                zs = rng.integers(-4, 5, (int(rng.integers(2, 9)), 2))
                zs = np.unique(zs, axis=0)
                gram = dl.gram_matrix(comb, zs)
                assert np.allclose(gram, gram.conj().T, atol=1e-12)
                eigmin = float(np.linalg.eigvalsh(gram).min())
                assert eigmin >= -1e-8 * nu0


class TestVariantGap:
    def test_all_ones_exact_gap(self, z1):
        comb = dl.generate(dl.WeightRule.constant(1.0), z1, 211.0)
        gaps = dict(dl.variant_gap(comb, (10,), [100.5, 200.5]))
        assert gaps[100.5] == pytest.approx(10 / 201, abs=1e-12)
        assert gaps[200.5] == pytest.approx(10 / 401, abs=1e-12)

    def test_zero_separation_no_gap(self, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.4, 2), z2, 30.0)
        for _, gap in dl.variant_gap(comb, (0, 0), [10.0, 20.0, 29.0]):
            assert gap == 0.0

    def test_checkerboard_gap_decays(self, z2):
        comb = dl.generate(dl.WeightRule.checkerboard(), z2, 102.0)
        for r, gap in dl.variant_gap(comb, (1, 1), [25.0, 50.0, 100.0]):
            assert gap <= 1.0 / r

    def test_requires_padding(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 20.0)
        with pytest.raises(ValueError):
            dl.variant_gap(comb, (3, 0), [10.0, 19.0])


class TestConvergenceScan:
    def test_all_ones_approaches_one(self, z2):
        rows = dl.convergence_scan(dl.WeightRule.constant(1.0), z2, (1, 0), [25.0, 50.0, 100.0, 200.0])
        resids = [abs(v.real - 1.0) for _, v in rows]
        assert all(res * r <= 4.0 for (r, _), res in zip(rows, resids))
        assert resids[-1] < resids[0]

    def test_visible_density_constant(self, z2):
        rows = dl.convergence_scan(dl.WeightRule.visible_points(), z2, (0, 0), [120.0, 250.0, 500.0])
        final = rows[-1][1].real
        assert final == pytest.approx(6 / math.pi**2, rel=0.01)

    def test_bernoulli_approaches_p_squared(self, z2):
        p = 0.3
        rows = dl.convergence_scan(dl.WeightRule.bernoulli(p, 42), z2, (2, 1), [50.0, 100.0, 200.0])
        final = rows[-1][1].real
        npts = dl.enumerate_ball(z2, 200.0).shape[0]
        sigma = math.sqrt(npts * p**2 * (1 - p**2)) / dl.ball_volume(2, 200.0)
        assert abs(final - p * p) <= 3 * sigma + 2 * 2.24 * p * p / 200.0  # LLN band + boundary term

    def test_requires_increasing_radii(self, z2):
        with pytest.raises(ValueError):
            dl.convergence_scan(dl.WeightRule.constant(1.0), z2, (1, 0), [50.0, 25.0])


class TestBump:
    def test_peak_value(self, z2):
        cfg = dl.make_bump_config(z2)
        assert dl.bump_eval(cfg, [0.0, 0.0]) == pytest.approx(cfg.c0, abs=1e-15)

    def test_half_radius_value(self, z2):
        cfg = dl.make_bump_config(z2)
        want = cfg.c0 * math.exp(-1.0 / 3.0)
        assert dl.bump_eval(cfg, [cfg.epsilon / 2, 0.0]) == pytest.approx(want, rel=1e-12)

    def test_support_boundary(self, z2):
        cfg = dl.make_bump_config(z2)
        assert dl.bump_eval(cfg, [cfg.epsilon, 0.0]) == 0.0

    def test_epsilon_constraint(self, z2):
        with pytest.raises(EpsilonTooLarge):
            dl.make_bump_config(z2, epsilon=0.3)  # packing radius is 0.5

    def test_l2_normalization_against_refined_quadrature(self, z2):
        cfg = dl.make_bump_config(z2, quadrature_points=64)
        fine = dl.make_bump_config(z2, quadrature_points=160)
        # norm of the 64-point bump measured with the refined grid
        ratio = (cfg.c0 / fine.c0) ** 2
        assert abs(ratio - 1.0) <= 1e-6

    def test_pair_convolution_peak_and_support(self, z2):
        cfg = dl.make_bump_config(z2)
        assert dl.bump_pair_convolution(cfg, [0.0, 0.0]) == pytest.approx(1.0, abs=1e-12)
        assert dl.bump_pair_convolution(cfg, [2 * cfg.epsilon, 0.0]) == 0.0

    def test_1d_and_3d_configs(self, z1, z3):
        for lat in (z1, z3):
            cfg = dl.make_bump_config(lat, quadrature_points=32)
            assert dl.bump_pair_convolution(cfg, np.zeros(lat.dim)) == pytest.approx(1.0, abs=1e-10)


class TestRegularizedAutocorr:
    def test_interpolates_coefficients(self, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.5, 11), z2, 25.0)
        cfg = dl.make_bump_config(z2)
        for t in [(0, 0), (1, 0), (-2, 3), (4, 4), (0, -4)]:
            g = dl.regularized_autocorr(comb, cfg, z2.cartesian(t))
            nu = dl.autocorr_coefficient(comb, t)
            assert abs(g - nu) <= 1e-4 * max(1.0, abs(nu))

    def test_vanishes_away_from_differences(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 10.0)
        cfg = dl.make_bump_config(z2)
        assert dl.regularized_autocorr(comb, cfg, [0.5, 0.0]) == 0j
        assert dl.regularized_autocorr(comb, cfg, [0.5, 0.5]) == 0j

    def test_support_gap_between_bumps(self, z2):
        # midpoint of the shortest lattice step: both bumps are 2*eps away
        comb = dl.generate(dl.WeightRule.bernoulli(0.5, 1), z2, 10.0)
        cfg = dl.make_bump_config(z2)  # eps = packing/4 so 2*eps < packing
        mid = 0.5 * (z2.cartesian((1, 0)) + z2.cartesian((0, 0)))
        assert dl.regularized_autocorr(comb, cfg, mid) == 0j

    def test_lipschitz_proxy(self, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.5, 19), z2, 15.0)
        cfg = dl.make_bump_config(z2)
        from difflat.autocorr import pair_convolution_lipschitz

        count = comb.ball_coords().shape[0]
        lcc = pair_convolution_lipschitz(cfg)
        bound = count / dl.ball_volume(2, 15.0) * comb.weight_bound**2 * lcc * 1.10
        rng = np.random.default_rng(8)
        delta = cfg.epsilon / 10
        for _ in range(40):
            x = rng.uniform(-3, 3, 2)
            step = rng.normal(size=2)
            step *= delta / np.linalg.norm(step)
            g1 = dl.regularized_autocorr(comb, cfg, x)
            g2 = dl.regularized_autocorr(comb, cfg, x + step)
            assert abs(g1 - g2) <= bound * np.linalg.norm(step) + 1e-12

    def test_rejects_epsilon_beyond_comb_lattice(self, z2):
        # config calibrated on a coarser lattice carries an epsilon that
        # violates the support constraint on z2
        coarse = dl.make_lattice([[4.0, 0.0], [0.0, 4.0]])
        cfg = dl.make_bump_config(coarse)  # epsilon = 0.5 > packing(z2)/2
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 5.0)
        with pytest.raises(EpsilonTooLarge):
            dl.regularized_autocorr(comb, cfg, [0.0, 0.0])

    def test_rejects_dimension_mismatch(self, z1, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 5.0)
        cfg = dl.make_bump_config(z1)
        with pytest.raises(ValueError):
            dl.regularized_autocorr(comb, cfg, [0.0, 0.0])
