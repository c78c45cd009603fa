import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wmwauc import (
    TooSmall,
    auc_bruteforce,
    auc_fast,
    kernel_summaries,
    placements,
    validate,
)
from wmwauc.kernel import kernel_summaries_bruteforce
from wmwauc.variance_eu import DiscreteDist, population_components

from .conftest import cont_values, random_pair, samples


def summaries_oracle(x, y):
    """Direct double-loop definitions, no NumPy."""
    n1, n2 = len(x), len(y)
    h = [[1.0 if a < b else 0.5 if a == b else 0.0 for b in y] for a in x]
    a_hat = sum(map(sum, h)) / (n1 * n2)
    rows = [sum(r) / n2 for r in h]
    cols = [sum(h[i][j] for i in range(n1)) / n1 for j in range(n2)]
    v = sum((h[i][j] - a_hat) ** 2 for i in range(n1) for j in range(n2)) / (n1 * n2 - 1)
    z1 = sum((r - a_hat) ** 2 for r in rows) / (n1 - 1)
    z2 = sum((c - a_hat) ** 2 for c in cols) / (n2 - 1)
    return a_hat, rows, cols, v, z1, z2


class TestAuc:
    def test_complete_separation(self):
        est = auc_bruteforce(validate([1, 2], [3, 4]))
        assert est.a_hat == 1.0 and not est.has_cross_ties

    def test_identical_samples(self):
        d = validate([1, 2, 3], [1, 2, 3])
        assert auc_bruteforce(d).a_hat == 0.5 and auc_bruteforce(d).has_cross_ties
        assert auc_fast(d).a_hat == 0.5 and auc_fast(d).has_cross_ties

    def test_enumerated_kernel(self):
        # kernel values {1, 1, 0, 1}
        assert auc_bruteforce(validate([1, 3], [2, 4])).a_hat == 0.75

    def test_rank_identity_with_tie(self):
        # mid-ranks of y are 2.5 and 4; kernel values {1, 1, 0.5, 1}
        d = validate([1, 2], [2, 3])
        assert auc_fast(d).a_hat == (2.5 + 4 - 3) / 4 == 0.875
        assert auc_bruteforce(d).a_hat == 0.875

    @settings(max_examples=300)
    @given(samples(1, 50), samples(1, 50))
    def test_fast_equals_bruteforce(self, x, y):
        d = validate(x, y)
        assert auc_fast(d) == auc_bruteforce(d)

    @given(samples(1, 20), samples(1, 20))
    def test_half_multiples_and_range(self, x, y):
        est = auc_fast(validate(x, y))
        assert 0.0 <= est.a_hat <= 1.0
        twice = 2 * est.a_hat * est.m
        assert abs(twice - round(twice)) < 1e-9

    @given(samples(1, 20), samples(1, 20))
    def test_antisymmetry(self, x, y):
        d = validate(x, y)
        assert auc_fast(d).a_hat + auc_fast(d.swapped()).a_hat == pytest.approx(1.0, abs=1e-15)


class TestPlacements:
    def test_hand_counts(self):
        p = placements(validate([1, 3], [2, 4]))
        assert p.g_at_x.tolist() == [0.0, 0.5]
        assert p.f_at_y.tolist() == [0.5, 1.0]

    def test_le_includes_equality(self):
        p = placements(validate([1], [1]))
        assert p.g_at_x.tolist() == [1.0] and p.f_at_y.tolist() == [1.0]

    def test_separation(self):
        p = placements(validate([0, 0], [5, 5]))
        assert p.g_at_x.tolist() == [0, 0] and p.f_at_y.tolist() == [1, 1]

    @given(st.lists(cont_values, min_size=1, max_size=30, unique=True).flatmap(
        lambda v: st.integers(1, len(v)).map(lambda k: (v[:k], v[k:]))
    ).filter(lambda xy: len(xy[1]) > 0))
    def test_tie_free_means(self, xy):
        d = validate(*xy)
        p = placements(d)
        a = auc_fast(d).a_hat
        assert np.mean(p.f_at_y) == pytest.approx(a, abs=1e-12)
        assert 1.0 - np.mean(p.g_at_x) == pytest.approx(a, abs=1e-12)

    @given(samples(1, 20), samples(1, 20))
    def test_grid_multiples(self, x, y):
        d = validate(x, y)
        p = placements(d)
        assert np.allclose(p.g_at_x * d.n2, np.round(p.g_at_x * d.n2))
        assert np.allclose(p.f_at_y * d.n1, np.round(p.f_at_y * d.n1))


class TestKernelSummaries:
    def test_hand_enumeration(self):
        s = kernel_summaries(validate([1, 3], [2, 4]))
        assert s.a_hat == 0.75
        assert s.row_means.tolist() == [1.0, 0.5]
        assert s.col_means.tolist() == [0.5, 1.0]
        assert s.v_hat == pytest.approx(0.25, abs=1e-15)
        assert s.zeta1_hat_sq == pytest.approx(0.125, abs=1e-15)
        assert s.zeta2_hat_sq == pytest.approx(0.125, abs=1e-15)

    def test_constant_matrix(self):
        s = kernel_summaries(validate([0, 0], [1, 1]))
        assert (s.v_hat, s.zeta1_hat_sq, s.zeta2_hat_sq) == (0.0, 0.0, 0.0)

    def test_too_small(self):
        with pytest.raises(TooSmall):
            kernel_summaries(validate([1], [2, 3]))

    @pytest.mark.parametrize("ties", [False, True])
    def test_random_5x7_against_double_loop(self, ties):
        rng = np.random.default_rng(57)
        for _ in range(20):
            x, y = random_pair(rng, 5, 7, ties)
            s = kernel_summaries(validate(x, y))
            a, rows, cols, v, z1, z2 = summaries_oracle(x.tolist(), y.tolist())
            assert s.a_hat == pytest.approx(a, abs=1e-12)
            np.testing.assert_allclose(s.row_means, rows, atol=1e-12)
            np.testing.assert_allclose(s.col_means, cols, atol=1e-12)
            assert s.v_hat == pytest.approx(v, abs=1e-12)
            assert s.zeta1_hat_sq == pytest.approx(z1, abs=1e-12)
            assert s.zeta2_hat_sq == pytest.approx(z2, abs=1e-12)

    @given(samples(2, 40), samples(2, 40))
    def test_matches_materialised_matrix(self, x, y):
        d = validate(x, y)
        s, b = kernel_summaries(d), kernel_summaries_bruteforce(d)
        assert s.a_hat == pytest.approx(b.a_hat, abs=1e-12)
        assert s.v_hat == pytest.approx(b.v_hat, abs=1e-12)
        assert s.zeta1_hat_sq == pytest.approx(b.zeta1_hat_sq, abs=1e-12)
        assert s.zeta2_hat_sq == pytest.approx(b.zeta2_hat_sq, abs=1e-12)
        assert s.n_equal == b.n_equal
        assert np.mean(s.row_means) == pytest.approx(s.a_hat, abs=1e-12)
        assert np.mean(s.col_means) == pytest.approx(s.a_hat, abs=1e-12)
        assert min(s.v_hat, s.zeta1_hat_sq, s.zeta2_hat_sq) >= 0.0

    @given(samples(2, 20, st.integers(-50, 50).map(float)),
           samples(2, 20, st.integers(-50, 50).map(float)),
           st.integers(-1000, 1000))
    def test_location_invariance(self, x, y, c):
        d = validate(x, y)
        s, t = kernel_summaries(d), kernel_summaries(d.shifted(c, c))
        assert (s.a_hat, s.v_hat, s.zeta1_hat_sq, s.zeta2_hat_sq) == (
            t.a_hat, t.v_hat, t.zeta1_hat_sq, t.zeta2_hat_sq)


class TestPopulationDecomposition:
    @pytest.mark.parametrize("dx, dy", [
        (DiscreteDist.uniform([0, 1]), DiscreteDist.uniform([0, 1])),
        (DiscreteDist((0.0, 1.0, 2.0), (0.2, 0.3, 0.5)), DiscreteDist((1.0, 2.0, 3.0), (0.6, 0.1, 0.3))),
        (DiscreteDist((-1.0, 0.5, 4.0), (0.7, 0.2, 0.1)), DiscreteDist((0.5, 4.0), (0.5, 0.5))),
    ])
    def test_variance_splits_orthogonally(self, dx, dy):
        pc = population_components(dx, dy)
        # psi enumerated directly, independent of the identity being checked
        total = 0.0
        for xv, px in zip(dx.values, dx.probs):
            for yv, py in zip(dy.values, dy.probs):
                h = 1.0 if xv < yv else 0.5 if xv == yv else 0.0
                total += px * py * (h - pc.auc) ** 2
        assert pc.v == pytest.approx(total, abs=1e-15)
        assert pc.v == pytest.approx(pc.zeta1_sq + pc.zeta2_sq + pc.var_psi, abs=1e-14)


class TestBackends:
    @given(samples(1, 40), samples(1, 40))
    def test_integer_counts_identical(self, x, y):
        from .conftest import BACKENDS
        xs, ys = np.sort(np.array(x, float)), np.sort(np.array(y, float))
        outs = [k.kernel_counts(xs, ys) for k in BACKENDS]
        for o in outs[1:]:
            assert np.array_equal(o[0], outs[0][0]) and np.array_equal(o[1], outs[0][1])
            assert o[2:] == outs[0][2:]

    def test_shift_grid_agrees_with_direct(self, backend):
        rng = np.random.default_rng(3)
        x, y = np.sort(rng.normal(size=13)), np.sort(np.round(rng.normal(size=9), 1))
        shifts = np.linspace(-2, 2, 41)
        got = backend.shift_grid(x, y, shifts)
        for g, t in enumerate(shifts):
            s = kernel_summaries(validate(x, y + t))
            expect = (s.a_hat, s.zeta1_hat_sq, s.zeta2_hat_sq, s.v_hat)
            for k in range(4):
                assert got[k][g] == pytest.approx(expect[k], abs=1e-14)
