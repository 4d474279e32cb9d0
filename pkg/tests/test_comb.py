import math

import numpy as np
import pytest

import difflat as dl
from difflat.errors import MalformedCombFile, NotAnIndicatorComb, RuleDimensionMismatch

import oracles


class TestGenerate:
    def test_constant_nine_points(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 1.5)
        assert len(comb) == 9
        assert all(v == 1.0 for v in comb.weights.values())
        assert comb.weight_bound == 1.0

    def test_visible_points_table(self, z2):
        comb = dl.generate(dl.WeightRule.visible_points(), z2, 2.5)
        for z in [(2, 2), (0, 2), (2, 0), (-2, 2), (0, 0)]:
            assert comb.weights.get(z, 0) == 0
        for z in [(1, 2), (2, 1), (1, 0), (1, 1), (-1, 2)]:
            assert comb.weights[z] == 1.0

    def test_visible_matches_gcd_oracle(self, z2):
        comb = dl.generate(dl.WeightRule.visible_points(), z2, 20.0)
        for m in oracles.ball_points(np.eye(2), 20.0):
            assert (comb.weights.get(m, 0) == 1.0) == oracles.is_visible(m)

    def test_visible_needs_dim2(self, z1):
        with pytest.raises(RuleDimensionMismatch):
            dl.generate(dl.WeightRule.visible_points(), z1, 5.0)

    def test_kfree_zeros(self, z1):
        comb = dl.generate(dl.WeightRule.k_free(2), z1, 10.5)
        zeros = {m for m in range(-10, 11) if comb.weights.get((m,), 0) == 0}
        assert zeros == {-9, -8, -4, 4, 8, 9}
        assert comb.weights[(0,)] == 1.0  # membership convention at the origin

    def test_kfree_matches_trial_division(self, z1):
        for k in (2, 3):
            comb = dl.generate(dl.WeightRule.k_free(k), z1, 500.5)
            for m in range(-500, 501):
                assert (comb.weights.get((m,), 0) == 1.0) == oracles.is_k_free(m, k)

    def test_kfree_needs_dim1(self, z2):
        with pytest.raises(RuleDimensionMismatch):
            dl.generate(dl.WeightRule.k_free(2), z2, 5.0)

    def test_checkerboard_parity(self, z2):
        comb = dl.generate(dl.WeightRule.checkerboard(), z2, 3.5)
        for m in map(tuple, comb.ball_coords()):
            assert (comb.weights.get(m, 0) == 1.0) == (sum(m) % 2 == 0)

    def test_bernoulli_deterministic(self, z2):
        a = dl.generate(dl.WeightRule.bernoulli(0.4, 123), z2, 15.0)
        b = dl.generate(dl.WeightRule.bernoulli(0.4, 123), z2, 15.0)
        c = dl.generate(dl.WeightRule.bernoulli(0.4, 124), z2, 15.0)
        assert a == b
        assert a != c
        assert set(a.weights.values()) <= {1.0 + 0j}

    def test_bernoulli_density_band(self, z2):
        p = 0.3
        comb = dl.generate(dl.WeightRule.bernoulli(p, 2024), z2, 200.0)
        n_ball = comb.ball_coords().shape[0]
        count = len(comb)
        sigma = math.sqrt(n_ball * p * (1 - p))
        assert abs(count - p * n_ball) <= 3 * sigma

    def test_deterministic_rules_restrict_consistently(self, z2):
        small = dl.generate(dl.WeightRule.visible_points(), z2, 10.5)
        large = dl.generate(dl.WeightRule.visible_points(), z2, 20.5)
        inner = {m for m in map(tuple, small.ball_coords())}
        for m in inner:
            assert small.weights.get(m, 0) == large.weights.get(m, 0)

    def test_custom_table(self, z2):
        rule = dl.WeightRule.custom({(0, 0): 1 + 2j, (1, 0): -0.5, (5, 5): 3.0})
        comb = dl.generate(rule, z2, 2.0)  # (5,5) outside the ball is dropped
        assert comb.weights == {(0, 0): 1 + 2j, (1, 0): -0.5 + 0j}
        assert comb.weight_bound == pytest.approx(abs(1 + 2j))

    def test_weight_bound_invariant(self, z2):
        for rule in (
            dl.WeightRule.constant(0.5 - 0.5j),
            dl.WeightRule.checkerboard(),
            dl.WeightRule.bernoulli(0.6, 1),
        ):
            comb = dl.generate(rule, z2, 8.0)
            if comb.weights:
                assert max(abs(v) for v in comb.weights.values()) <= comb.weight_bound + 1e-15

    def test_keys_inside_ball_rejected_otherwise(self, z2):
        with pytest.raises(ValueError):
            dl.make_comb(z2, 1.0, {(3, 0): 1.0})


class TestComplement:
    def test_all_ones_to_empty(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 5.5)
        comp = dl.complement(comb)
        assert len(comp) == 0

    def test_checkerboard_is_shifted_parity(self, z2):
        comb = dl.generate(dl.WeightRule.checkerboard(), z2, 4.5)
        comp = dl.complement(comb)
        for m in map(tuple, comb.ball_coords()):
            assert (comp.weights.get(m, 0) == 1.0) == (sum(m) % 2 == 1)

    def test_involution(self, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.5, 3), z2, 9.0)
        assert dl.complement(dl.complement(comb)) == comb

    def test_partition(self, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.25, 8), z2, 12.0)
        comp = dl.complement(comb)
        ball = comb.ball_coords()
        for m in map(tuple, ball):
            assert comb.weights.get(m, 0) + comp.weights.get(m, 0) == 1.0
        total = dl.empirical_density(comb) + dl.empirical_density(comp)
        assert total.real == pytest.approx(ball.shape[0] / dl.ball_volume(2, 12.0), abs=1e-12)

    def test_rejects_non_indicator(self, z2):
        comb = dl.generate(dl.WeightRule.constant(0.7), z2, 3.0)
        with pytest.raises(NotAnIndicatorComb):
            dl.complement(comb)


class TestEmpiricalDensity:
    def test_all_ones_near_one(self, z2):
        comb = dl.generate(dl.WeightRule.constant(1.0), z2, 100.0)
        assert abs(dl.empirical_density(comb).real - 1.0) <= 2 / 100

    def test_checkerboard_near_half(self, z2):
        comb = dl.generate(dl.WeightRule.checkerboard(), z2, 100.0)
        assert abs(dl.empirical_density(comb).real - 0.5) <= 2 / 100

    def test_visible_points_constant(self, z2):
        comb = dl.generate(dl.WeightRule.visible_points(), z2, 500.0)
        target = 6 / math.pi**2
        assert dl.empirical_density(comb).real == pytest.approx(target, rel=0.01)


class TestSerialization:
    def test_empty_round_trip(self, tmp_path, z2):
        comb = dl.make_comb(z2, 2.0, {})
        path = tmp_path / "empty.comb"
        dl.save_comb(comb, path)
        assert dl.load_comb(path) == comb

    def test_nine_point_bit_exact(self, tmp_path, hexagonal):
        comb = dl.generate(dl.WeightRule.constant(0.1 + 0.7j), hexagonal, 1.25)
        path = tmp_path / "nine.comb"
        dl.save_comb(comb, path)
        again = dl.load_comb(path)
        assert again == comb
        assert again.lattice.basis.tobytes() == comb.lattice.basis.tobytes()

    def test_bernoulli_round_trip_and_regen(self, tmp_path, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.5, 42), z2, 20.0)
        path = tmp_path / "bern.comb"
        dl.save_comb(comb, path)
        loaded = dl.load_comb(path)
        assert loaded == comb
        assert loaded.rng_name == "pcg64"
        assert loaded.seed == 42
        regen = dl.generate(dl.WeightRule.bernoulli(0.5, loaded.seed), z2, 20.0)
        assert regen == loaded

    def test_header_records_rng(self, tmp_path, z2):
        comb = dl.generate(dl.WeightRule.bernoulli(0.5, 7), z2, 5.0)
        path = tmp_path / "hdr.comb"
        dl.save_comb(comb, path)
        text = path.read_text()
        assert "#rng pcg64 #seed 7" in text

    @pytest.mark.parametrize(
        "content,line",
        [
            ("#dim 2\n#basis 1 0 0 1\n#radius 2\n0 0 1\n", 4),
            ("#dim 2\n#basis 1 0 0\n", 2),
            ("#dim 2\n#basis 1 0 0 1\n#radius 2\n0 0 x 0\n", 4),
            ("0 0 1 0\n", 1),
            ("#dim 2\n#basis 1 0 0 1\n#radius 2\n#rng pcg64\n", 4),
        ],
    )
    def test_malformed_reports_line(self, tmp_path, content, line):
        path = tmp_path / "bad.comb"
        path.write_text(content)
        with pytest.raises(MalformedCombFile) as exc:
            dl.load_comb(path)
        assert exc.value.line == line

    def test_missing_headers(self, tmp_path):
        path = tmp_path / "empty.comb"
        path.write_text("")
        with pytest.raises(MalformedCombFile):
            dl.load_comb(path)
