import numpy as np
import pytest

from rep2d.grid import (
    BorderOrder,
    GridError,
    Rect,
    from_rows,
    gen_ak,
    gen_bordered_identity,
    gen_cm_lemma4,
    gen_identity,
    hcat,
    new_grid,
    parse_grid,
    rlin,
    serialize_grid,
    subgrid,
    vcat,
)


def test_new_grid_basics():
    g = new_grid(1, 1, "a")
    assert g.m == 1 and g.n == 1 and g.cell(1, 1) == "a"
    i2 = new_grid(2, 2, "1001")
    assert i2 == gen_identity(2)
    with pytest.raises(GridError):
        new_grid(1, 0, "")
    with pytest.raises(GridError):
        new_grid(2, 2, "101")


def test_hcat_vcat():
    a = new_grid(1, 1, "a")
    b = new_grid(1, 1, "b")
    assert hcat(a, b).rows() == ["ab"]
    assert vcat(a, b).rows() == ["a", "b"]
    assert hcat(gen_identity(2), gen_identity(2)).rows() == ["1010", "0101"]
    assert vcat(new_grid(1, 2, "10"), new_grid(1, 2, "01")) == gen_identity(2)
    with pytest.raises(GridError):
        hcat(new_grid(2, 1, "ab"), new_grid(3, 1, "abc"))
    with pytest.raises(GridError):
        vcat(new_grid(1, 2, "ab"), new_grid(1, 3, "abc"))


def test_concat_associative():
    rng = np.random.default_rng(1)
    for _ in range(20):
        m = int(rng.integers(1, 5))
        widths = [int(rng.integers(1, 4)) for _ in range(3)]
        a, b, c = [new_grid(m, w, "".join(rng.choice(list("ab"), m * w)))
                   for w in widths]
        assert hcat(hcat(a, b), c) == hcat(a, hcat(b, c))


def test_subgrid():
    i3 = gen_identity(3)
    assert subgrid(i3, Rect(1, 1, 2, 2)).rows() == ["10", "01"]
    assert subgrid(i3, Rect(1, 1, 3, 3)) == i3
    with pytest.raises(GridError):
        subgrid(i3, Rect(2, 2, 4, 4))


def test_rlin():
    assert rlin(gen_identity(3)) == "100010001"
    assert rlin(gen_identity(2)) == "1001"
    row = new_grid(1, 5, "abcba")
    assert rlin(row) == "abcba"
    assert len(rlin(gen_identity(7))) == 49


def test_gen_identity():
    assert gen_identity(1).rows() == ["1"]
    assert gen_identity(3).rows() == ["100", "010", "001"]
    g = gen_identity(6)
    assert len(set(g.rows())) == 6
    cols = ["".join(g.cell(i, j) for i in range(1, 7)) for j in range(1, 7)]
    assert len(set(cols)) == 6


def test_gen_cm_lemma4():
    g = gen_cm_lemma4(16)
    assert g.row(1) == "1000000011000000"
    assert all(g.row(i) == "#" * 16 for i in range(2, 17))
    with pytest.raises(GridError):
        gen_cm_lemma4(15)
    with pytest.raises(GridError):
        gen_cm_lemma4(25)  # odd square root
    assert gen_cm_lemma4(36).row(1).count("1") == 6


def test_gen_bordered_identity():
    assert gen_bordered_identity(3, BorderOrder.ROWS_FIRST).rows() == ["101", "011", "001"]
    assert gen_bordered_identity(3, BorderOrder.COLS_FIRST).rows() == ["101", "011", "000"]
    for n in (2, 5, 9):
        a = gen_bordered_identity(n, BorderOrder.ROWS_FIRST)
        b = gen_bordered_identity(n, BorderOrder.COLS_FIRST)
        core = Rect(1, 1, n - 1, n - 1)
        assert subgrid(a, core) == subgrid(b, core) == gen_identity(n - 1)
    with pytest.raises(GridError):
        gen_bordered_identity(1)


def test_gen_ak_shape_and_ones():
    for k in (4, 5, 7):
        g = gen_ak(k)
        assert (g.m, g.n) == (2 * k * (k - 1), k * (k + 2))
        ones = int((g.arr == ord("1")).sum())
        assert ones == 2 * k * (k - 1)
    with pytest.raises(GridError):
        gen_ak(3)


def test_gen_ak_window_family():
    # the k x k windows of the payload include every grid with a 1 at (1, c)
    # and a second, later 1 in a lower row; count matches k^2(k-1)(k+1)/4
    from tests.util import brute_distinct

    for k in (4, 5):
        g = gen_ak(k)
        want = k * k * (k - 1) * (k + 1) // 4
        assert brute_distinct(g.arr, k, k) >= want


def test_parse_serialize_roundtrip():
    assert parse_grid("10\n01\n") == gen_identity(2)
    for g in (gen_identity(5), gen_cm_lemma4(16), gen_ak(4)):
        assert parse_grid(serialize_grid(g)) == g
    with pytest.raises(GridError):
        parse_grid("10\n0\n")
    with pytest.raises(GridError):
        parse_grid("")
    assert from_rows(["ab", "cd"]).rows() == ["ab", "cd"]
