"""Substring complexity of 2D strings and the derived density measures.

P(k1, k2) counts distinct k1 x k2 rectangular factors.  The headline
quantities are the maxima of P(k1, k2) / (k1 * k2) over all window shapes
(rectangular) or over square shapes only.  All comparisons are exact
integer cross-multiplications; no floats enter the ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fingerprint import GridHasher, distinct_count, exact_distinct_count
from .grid import Grid2D, GridError


@dataclass(frozen=True)
class Ratio:
    """An exact fraction num/den with the window shape that attains it."""

    num: int
    den: int
    k1: int
    k2: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")

    def value(self) -> float:
        return self.num / self.den

    def _cmp(self, other: "Ratio") -> int:
        lhs = self.num * other.den
        rhs = other.num * self.den
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def same_value(self, other: "Ratio") -> bool:
        return self._cmp(other) == 0

    def __str__(self) -> str:
        return f"{self.num}/{self.den} @ ({self.k1},{self.k2})"


@dataclass(frozen=True)
class ComplexityTable:
    m: int
    n: int
    kmax1: int
    kmax2: int
    values: np.ndarray  # (kmax1, kmax2) int64, values[k1-1, k2-1] = P(k1, k2)

    def p(self, k1: int, k2: int) -> int:
        if not (1 <= k1 <= self.kmax1 and 1 <= k2 <= self.kmax2):
            raise GridError(f"({k1},{k2}) outside table {self.kmax1}x{self.kmax2}")
        return int(self.values[k1 - 1, k2 - 1])


def p_exact(g: Grid2D, k1: int, k2: int) -> int:
    """Distinct k1 x k2 factor count by exhaustive content comparison."""
    if not (1 <= k1 <= g.m and 1 <= k2 <= g.n):
        raise GridError(f"window {k1}x{k2} does not fit in {g.m}x{g.n} grid")
    return exact_distinct_count(g.arr, k1, k2)


def complexity_table(g: Grid2D, kmax1: int, kmax2: int, mode: str = "exact") -> ComplexityTable:
    """Table of P(k1, k2) for k1 <= kmax1, k2 <= kmax2.

    ``exact`` compares window contents directly; ``fingerprint`` counts
    distinct ~128-bit rolling fingerprints (collisions vanishingly unlikely,
    and exact mode remains the oracle in the tests).
    """
    if not (1 <= kmax1 <= g.m and 1 <= kmax2 <= g.n):
        raise GridError(f"kmax {kmax1}x{kmax2} exceeds grid {g.m}x{g.n}")
    if mode not in ("exact", "fingerprint"):
        raise ValueError(f"unknown mode {mode!r}")
    vals = np.zeros((kmax1, kmax2), dtype=np.int64)
    exact = mode == "exact"
    hasher = None if exact else GridHasher(g.arr)
    for k2 in range(1, kmax2 + 1):
        ids = _row_ids(g, hasher, k2, exact)
        vals[:, k2 - 1] = _counts_by_height(ids, kmax1)
    return ComplexityTable(g.m, g.n, kmax1, kmax2, vals)


def _column_text(ids: np.ndarray) -> np.ndarray:
    """Concatenate the columns of an id matrix with unique sentinels so that
    no comparison runs across a column boundary."""
    m, w = ids.shape
    base = int(ids.max()) + 1 if ids.size else 1
    out = np.empty((w, m + 1), dtype=np.int64)
    out[:, :m] = ids.T
    out[:, m] = base + np.arange(w)
    return out.ravel()


def _suffix_ranks(text: np.ndarray) -> tuple[list[tuple[int, np.ndarray]], np.ndarray]:
    """Prefix-doubling suffix sort: per-length rank tables and final order."""
    length = len(text)
    _, rank = np.unique(text, return_inverse=True)
    rank = rank.astype(np.int64)
    levels = [(1, rank)]
    step = 1
    order = np.argsort(rank, kind="stable")
    while step < length:
        shifted = np.full(length, -1, dtype=np.int64)
        shifted[: length - step] = rank[step:]
        order = np.lexsort((shifted, rank))
        r1, r2 = rank[order], shifted[order]
        changed = np.empty(length, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new_sorted = np.cumsum(changed)
        rank = np.empty(length, dtype=np.int64)
        rank[order] = new_sorted
        step *= 2
        levels.append((step, rank.copy()))
        if new_sorted[-1] == length - 1:
            break
    return levels, order


def _adjacent_lcp(levels, order, length: int) -> np.ndarray:
    """Longest common prefixes of adjacent suffixes in sorted order."""
    a = order[:-1].astype(np.int64)
    b = order[1:].astype(np.int64)
    lcp = np.zeros(len(a), dtype=np.int64)
    for step, rank in reversed(levels):
        ia = a + lcp
        ib = b + lcp
        ok = (ia + step <= length) & (ib + step <= length)
        idxa = np.where(ok, ia, 0)
        idxb = np.where(ok, ib, 0)
        ok &= rank[idxa] == rank[idxb]
        lcp += step * ok
    return lcp


def _counts_by_height(ids: np.ndarray, kmax1: int) -> np.ndarray:
    """P(k1, k2) for every k1 at once, given per-cell row-window ids.

    Column j of ``ids`` holds the width-k2 window classes down column j of
    the grid; distinct k1 x k2 factors are distinct length-k1 substrings of
    those columns, counted from a suffix sort of their concatenation.
    """
    m, w = ids.shape
    text = _column_text(ids)
    levels, order = _suffix_ranks(text)
    lcp = _adjacent_lcp(levels, order, len(text))
    hist = np.bincount(np.minimum(lcp, m), minlength=m + 1)
    dup_ge = hist[::-1].cumsum()[::-1]  # dup_ge[v] = #pairs with lcp >= v
    k1s = np.arange(1, kmax1 + 1)
    return w * (m - k1s + 1) - dup_ge[1 : kmax1 + 1]


def _counts_1d(text: np.ndarray, kmax: int) -> np.ndarray:
    """Distinct substring counts of one string for every length 1..kmax."""
    length = len(text)
    levels, order = _suffix_ranks(text)
    lcp = _adjacent_lcp(levels, order, length)
    hist = np.bincount(np.minimum(lcp, length), minlength=length + 1)
    dup_ge = hist[::-1].cumsum()[::-1]
    ks = np.arange(1, kmax + 1)
    return (length - ks + 1) - dup_ge[1 : kmax + 1]


def _row_ids(g: Grid2D, hasher: GridHasher | None, k2: int, exact: bool) -> np.ndarray:
    if exact:
        from .fingerprint import exact_window_ids

        ids, _ = exact_window_ids(g.arr, 1, k2)
    else:
        from .fingerprint import class_ids

        ids, _ = class_ids(hasher.row_windows(k2))
    return ids.reshape(g.m, g.n - k2 + 1)


def _better_witness(cur: Ratio | None, cand: Ratio) -> Ratio:
    """Keep the larger ratio; on exact ties prefer smaller k1, then k2."""
    if cur is None:
        return cand
    c = cand._cmp(cur)
    if c > 0:
        return cand
    if c == 0 and (cand.k1, cand.k2) < (cur.k1, cur.k2):
        return cand
    return cur


def delta2d(g: Grid2D, mode: str = "fingerprint", kmax1: int | None = None,
            kmax2: int | None = None) -> Ratio:
    """max P(k1, k2) / (k1 * k2) over all window shapes, with witness.

    One suffix sort per window width covers every window height at once, so
    the full sweep costs O(n * N log N).  In exact mode even the row-window
    classes are found by content comparison; fingerprint mode hashes the
    rows first.  Ties go to the lexicographically smallest (k1, k2).
    """
    m1 = g.m if kmax1 is None else min(kmax1, g.m)
    m2 = g.n if kmax2 is None else min(kmax2, g.n)
    exact = mode == "exact"
    if mode not in ("exact", "fingerprint"):
        raise ValueError(f"unknown mode {mode!r}")
    if g.m == 1 or g.n == 1:
        text = g.arr.ravel().astype(np.int64)
        kmax = m2 if g.m == 1 else m1
        counts = _counts_1d(text, kmax)
        best = None
        for k in range(1, kmax + 1):
            shape = (1, k) if g.m == 1 else (k, 1)
            best = _better_witness(best, Ratio(int(counts[k - 1]), k, *shape))
        return best
    hasher = None if exact else GridHasher(g.arr)
    best: Ratio | None = None
    for k2 in range(1, m2 + 1):
        ids = _row_ids(g, hasher, k2, exact)
        counts = _counts_by_height(ids, m1)
        for k1 in range(1, m1 + 1):
            best = _better_witness(best, Ratio(int(counts[k1 - 1]), k1 * k2, k1, k2))
    assert best is not None
    return best


def delta_square(g: Grid2D, mode: str = "fingerprint", kmax: int | None = None) -> Ratio:
    """max P(k, k) / k^2 over square windows, smallest witness k on ties."""
    lim = min(g.m, g.n)
    if kmax is not None:
        lim = min(lim, kmax)
    hasher = None if mode == "exact" else GridHasher(g.arr)
    best: Ratio | None = None
    for k in range(1, lim + 1):
        den = k * k
        if best is not None:
            ub = (g.m - k + 1) * (g.n - k + 1)
            if ub * best.den < best.num * den:
                continue
        if mode == "exact":
            p = exact_distinct_count(g.arr, k, k)
        else:
            p = distinct_count(hasher.windows(k, k))
        best = _better_witness(best, Ratio(p, den, k, k))
    assert best is not None
    return best


def delta_1d(s: str) -> Ratio:
    """max over k of (distinct length-k substrings of s) / k, with witness."""
    if not s:
        raise ValueError("empty string")
    arr = np.frombuffer(s.encode("latin-1"), dtype=np.uint8).reshape(1, -1)
    return delta2d(Grid2D(arr))
