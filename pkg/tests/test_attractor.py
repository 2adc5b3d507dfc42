import numpy as np
import pytest

from rep2d.attractor import (
    AttractorSet,
    greedy_attractor,
    is_attractor,
    is_attractor_1d,
    min_attractor_exact,
)
from rep2d.complexity import complexity_table, delta2d
from rep2d.grid import GridError, gen_identity, new_grid, rlin
from tests.util import brute_is_attractor, brute_is_attractor_1d, random_grid


def diag_plus_corner(m):
    return AttractorSet.of([(i, i) for i in range(1, m + 1)] + [(1, m)])


def test_identity_witness_accepted():
    for m in (2, 3, 5, 10):
        g = gen_identity(m)
        assert is_attractor(g, diag_plus_corner(m)).covered


def test_diagonal_alone_rejected():
    for m in (2, 4, 7):
        g = gen_identity(m)
        rep = is_attractor(g, AttractorSet.of([(i, i) for i in range(1, m + 1)]))
        assert not rep.covered
        k1, k2, contents = rep.witness
        assert set(contents) == {"0"}  # the uncovered factor is all zeros


def test_square_mode_two_positions():
    for m in (3, 4, 5, 8, 11):
        g = gen_identity(m)
        center = (m + 1) // 2
        w = AttractorSet.of([(m, 1), (center, center)])
        assert is_attractor(g, w, mode="square").covered


def test_matches_brute_oracle():
    rng = np.random.default_rng(21)
    for _ in range(40):
        g = random_grid(rng, 5, 5, 2)
        cells = [(i, j) for i in range(1, g.m + 1) for j in range(1, g.n + 1)]
        k = int(rng.integers(1, len(cells) + 1))
        pick = [cells[t] for t in rng.choice(len(cells), k, replace=False)]
        att = AttractorSet.of(pick)
        for mode in ("rect", "square"):
            assert (is_attractor(g, att, mode).covered
                    == brute_is_attractor(g, set(pick), mode))


def test_rect_acceptance_implies_square():
    rng = np.random.default_rng(22)
    for _ in range(20):
        g = random_grid(rng, 5, 5, 2)
        cells = [(i, j) for i in range(1, g.m + 1) for j in range(1, g.n + 1)]
        k = int(rng.integers(1, len(cells) + 1))
        pick = [cells[t] for t in rng.choice(len(cells), k, replace=False)]
        att = AttractorSet.of(pick)
        if is_attractor(g, att, "rect").covered:
            assert is_attractor(g, att, "square").covered


def test_out_of_bounds_position():
    with pytest.raises(GridError):
        is_attractor(gen_identity(3), AttractorSet.of([(4, 1)]))


def test_min_attractor_identity():
    # the minimum is a permutation marking: 3 for order 3, 4 for order 4
    s3 = min_attractor_exact(gen_identity(3))
    assert len(s3) == 3 and brute_is_attractor(gen_identity(3), s3.positions)
    s4 = min_attractor_exact(gen_identity(4))
    assert len(s4) == 4 and brute_is_attractor(gen_identity(4), s4.positions)


def test_min_attractor_trivial_and_cap():
    assert len(min_attractor_exact(new_grid(1, 1, "x"))) == 1
    with pytest.raises(GridError):
        min_attractor_exact(gen_identity(5))


def test_min_attractor_is_minimal():
    rng = np.random.default_rng(30)
    from itertools import combinations

    for _ in range(10):
        g = random_grid(rng, 4, 4, 2)
        if g.size > 12:
            continue
        best = min_attractor_exact(g, cap=16)
        assert brute_is_attractor(g, best.positions)
        cells = [(i, j) for i in range(1, g.m + 1) for j in range(1, g.n + 1)]
        for combo in combinations(cells, len(best) - 1):
            assert not brute_is_attractor(g, set(combo))


def test_greedy_is_valid():
    rng = np.random.default_rng(31)
    for _ in range(15):
        g = random_grid(rng, 6, 6, 2)
        att = greedy_attractor(g)
        assert is_attractor(g, att).covered
    assert len(greedy_attractor(new_grid(4, 4, "0" * 16))) == 1
    assert len(greedy_attractor(gen_identity(3))) >= 3


def test_accepted_attractor_bounds_complexity():
    # P(k1, k2) <= k1 * k2 * |attractor| for any accepted set
    rng = np.random.default_rng(32)
    for _ in range(10):
        g = random_grid(rng, 6, 6, 2)
        att = greedy_attractor(g)
        t = complexity_table(g, g.m, g.n, "exact")
        for k1 in range(1, g.m + 1):
            for k2 in range(1, g.n + 1):
                assert t.p(k1, k2) <= k1 * k2 * len(att)
        d = delta2d(g)
        assert d.num <= d.den * len(att)


def test_1d_verifier_matches_brute():
    rng = np.random.default_rng(33)
    for _ in range(60):
        length = int(rng.integers(1, 25))
        s = "".join(rng.choice(list("ab"), length))
        k = int(rng.integers(1, length + 1))
        pos = sorted(rng.choice(np.arange(1, length + 1), k, replace=False).tolist())
        assert is_attractor_1d(s, pos) == brute_is_attractor_1d(s, pos)


def test_1d_verifier_on_rlin_identity():
    for n in (3, 8, 32):
        s = rlin(gen_identity(n))
        assert is_attractor_1d(s, [1, 2, n + 1])
        assert not is_attractor_1d(s, [1, 2])


def test_rect_mode_on_rows_matches_1d():
    rng = np.random.default_rng(34)
    for _ in range(20):
        length = int(rng.integers(2, 16))
        s = "".join(rng.choice(list("ab"), length))
        g = new_grid(1, length, s)
        k = int(rng.integers(1, length + 1))
        pos = sorted(rng.choice(np.arange(1, length + 1), k, replace=False).tolist())
        att = AttractorSet.of([(1, p) for p in pos])
        assert is_attractor(g, att).covered == is_attractor_1d(s, pos)
