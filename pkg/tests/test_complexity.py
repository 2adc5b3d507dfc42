from fractions import Fraction

import numpy as np
import pytest

from rep2d.complexity import (
    Ratio,
    complexity_table,
    delta2d,
    delta_1d,
    delta_square,
    p_exact,
)
from rep2d.grid import (
    BorderOrder,
    Grid2D,
    GridError,
    gen_bordered_identity,
    gen_cm_lemma4,
    gen_identity,
    new_grid,
    rlin,
)
from tests.util import brute_distinct, random_grid


def as_frac(r: Ratio) -> Fraction:
    return Fraction(r.num, r.den)


def test_ratio_ordering_is_exact():
    assert Ratio(1, 3, 1, 3) < Ratio(2, 5, 1, 5)
    assert Ratio(2, 6, 2, 3).same_value(Ratio(1, 3, 1, 3))
    assert not Ratio(7, 3, 1, 1) < Ratio(9, 4, 1, 1)
    with pytest.raises(ValueError):
        Ratio(1, 0, 1, 1)


def test_p_exact_small():
    i3 = gen_identity(3)
    assert p_exact(i3, 1, 1) == 2
    assert p_exact(i3, 2, 2) == 3
    with pytest.raises(GridError):
        p_exact(i3, 4, 1)


def test_p_exact_identity_bound():
    for m in (2, 5, 9, 16):
        g = gen_identity(m)
        for k1 in range(1, m + 1):
            for k2 in range(1, m + 1):
                assert p_exact(g, k1, k2) <= k1 + k2


def test_tables_match_brute_oracle():
    rng = np.random.default_rng(42)
    for _ in range(60):
        g = random_grid(rng, 9, 9, sigma=3)
        te = complexity_table(g, g.m, g.n, "exact")
        tf = complexity_table(g, g.m, g.n, "fingerprint")
        assert np.array_equal(te.values, tf.values)
        for k1 in range(1, g.m + 1):
            for k2 in range(1, g.n + 1):
                assert te.p(k1, k2) == brute_distinct(g.arr, k1, k2)


def test_table_invariants():
    g = gen_identity(6)
    t = complexity_table(g, 6, 6, "exact")
    for k1 in range(1, 7):
        for k2 in range(1, 7):
            p = t.p(k1, k2)
            assert 1 <= p <= (7 - k1) * (7 - k2)
    assert complexity_table(gen_identity(2), 2, 2, "exact").p(2, 2) == 1
    z = new_grid(8, 8, "0" * 64)
    assert (complexity_table(z, 8, 8, "exact").values == 1).all()
    with pytest.raises(GridError):
        complexity_table(g, 7, 3, "exact")


def test_delta2d_identity():
    for m in (2, 3, 8, 20):
        d = delta2d(gen_identity(m))
        assert (d.num, d.den, d.k1, d.k2) == (2, 1, 1, 1)


def test_delta2d_matches_brute_max():
    rng = np.random.default_rng(5)
    for _ in range(40):
        g = random_grid(rng, 8, 8, sigma=3)
        vals = []
        for k1 in range(1, g.m + 1):
            for k2 in range(1, g.n + 1):
                vals.append((Fraction(brute_distinct(g.arr, k1, k2), k1 * k2), k1, k2))
        best = max(v for v, _, _ in vals)
        wk = min((k1, k2) for v, k1, k2 in vals if v == best)
        d = delta2d(g, "exact")
        assert as_frac(d) == best and (d.k1, d.k2) == wk
        df = delta2d(g, "fingerprint")
        assert (df.num, df.den, df.k1, df.k2) == (d.num, d.den, d.k1, d.k2)


def test_delta_square_le_delta2d():
    rng = np.random.default_rng(11)
    grids = [random_grid(rng, 10, 10, 3) for _ in range(25)]
    grids += [gen_identity(7), gen_cm_lemma4(16),
              gen_bordered_identity(9, BorderOrder.ROWS_FIRST)]
    for g in grids:
        assert as_frac(delta_square(g)) <= as_frac(delta2d(g))


def test_delta_square_row_grid():
    g = new_grid(1, 9, "aabbaabba")
    d = delta_square(g)
    assert (d.num, d.den, d.k1, d.k2) == (2, 1, 1, 1)


def test_delta_1d():
    assert (delta_1d("aaaa").num, delta_1d("aaaa").den) == (1, 1)
    with pytest.raises(ValueError):
        delta_1d("")
    rng = np.random.default_rng(8)
    for _ in range(50):
        length = int(rng.integers(1, 30))
        s = "".join(rng.choice(list("ab"), length))
        vals = [(Fraction(len({s[i:i + k] for i in range(length - k + 1)}), k), k)
                for k in range(1, length + 1)]
        best = max(v for v, _ in vals)
        wk = min(k for v, k in vals if v == best)
        d = delta_1d(s)
        assert as_frac(d) == best and d.k2 == wk


def test_delta_1d_coincides_on_thin_grids():
    rng = np.random.default_rng(13)
    for _ in range(20):
        length = int(rng.integers(2, 40))
        s = "".join(rng.choice(list("abc"), length))
        row = new_grid(1, length, s)
        col = new_grid(length, 1, s)
        d1 = delta_1d(s)
        dr = delta2d(row)
        dc = delta2d(col)
        assert as_frac(dr) == as_frac(dc) == as_frac(d1)
        assert (dr.k2, dc.k1) == (d1.k2, d1.k2)


def test_delta2d_kmax_limits():
    g = gen_identity(8)
    d = delta2d(g, kmax1=1, kmax2=1)
    assert (d.num, d.k1, d.k2) == (2, 1, 1)


def test_cm_first_row_has_growing_1d_complexity():
    for n in (16, 36, 64):
        g = gen_cm_lemma4(n)
        row = g.row(1)
        root = int(n ** 0.5)
        distinct = len({row[i:i + root] for i in range(len(row) - root + 1)})
        assert distinct >= root  # Omega(sqrt n) distinct sqrt(n)-grams in row 1


def test_rlin_blowup_bordered_identity():
    for n in (16, 32):
        g = gen_bordered_identity(n, BorderOrder.ROWS_FIRST)
        assert as_frac(delta2d(g)) <= 6
        assert as_frac(delta_1d(rlin(g))) >= Fraction(n - 3, 2)
