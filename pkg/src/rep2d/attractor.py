"""String attractors for 2D grids: verification, exact minima, greedy bounds.

An attractor is a set of cells such that every distinct rectangular factor
(or square factor, in square mode) has at least one occurrence whose
rectangle contains an attractor cell.  Verification walks every window
shape; a 2D prefix-sum over the attractor indicator makes the per-shape
crossing test O(1) per window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .fingerprint import class_ids, exact_window_ids
from .grid import Grid2D, GridError, Rect, subgrid

# Exact window comparison below this many window cells per layer; hashed above.
_EXACT_LAYER_BUDGET = 1 << 22


@dataclass(frozen=True)
class AttractorSet:
    """Set of 1-based (row, col) cells; candidate attractor."""

    positions: frozenset[tuple[int, int]]

    @staticmethod
    def of(pairs) -> "AttractorSet":
        return AttractorSet(frozenset((int(i), int(j)) for i, j in pairs))

    def __len__(self) -> int:
        return len(self.positions)

    def sorted(self) -> list[tuple[int, int]]:
        return sorted(self.positions)


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    witness: tuple[int, int, str] | None = None  # (k1, k2, factor contents)

    def __post_init__(self):
        assert self.covered == (self.witness is None)


def _check_bounds(g: Grid2D, att: AttractorSet):
    for i, j in att.positions:
        if not (1 <= i <= g.m and 1 <= j <= g.n):
            raise GridError(f"attractor cell ({i},{j}) outside {g.m}x{g.n} grid")


def _crossing_prefix(g: Grid2D, att: AttractorSet) -> np.ndarray:
    ind = np.zeros((g.m + 1, g.n + 1), dtype=np.int64)
    for i, j in att.positions:
        ind[i, j] = 1
    return ind.cumsum(axis=0).cumsum(axis=1)


def _layer_shapes(g: Grid2D, mode: str):
    if mode == "square":
        for k in range(1, min(g.m, g.n) + 1):
            yield k, k
    elif mode == "rect":
        for k1 in range(1, g.m + 1):
            for k2 in range(1, g.n + 1):
                yield k1, k2
    else:
        raise ValueError(f"unknown mode {mode!r}")


def _layer_ids(g: Grid2D, k1: int, k2: int) -> np.ndarray:
    h = g.m - k1 + 1
    w = g.n - k2 + 1
    if h * w * k1 * k2 <= _EXACT_LAYER_BUDGET:
        ids, _ = exact_window_ids(g.arr, k1, k2)
    else:
        from .fingerprint import GridHasher

        ids, _ = class_ids(GridHasher(g.arr).windows(k1, k2))
    return ids.reshape(h, w)


def is_attractor(g: Grid2D, att: AttractorSet, mode: str = "rect") -> CoverageReport:
    """Check the crossing condition for every factor class.

    Per window shape, windows are grouped into content classes and a class
    counts as covered if any of its occurrences contains an attractor cell.
    The witness of a failure is the first uncovered class in scan order.
    """
    _check_bounds(g, att)
    pref = _crossing_prefix(g, att)
    for k1, k2 in _layer_shapes(g, mode):
        ids = _layer_ids(g, k1, k2)
        h, w = ids.shape
        # cross[i, j] = attractor count inside the window with top-left (i, j)
        cross = (
            pref[k1:, k2:] - pref[:h, k2:] - pref[k1:, :w] + pref[:h, :w]
        ) > 0
        nclasses = int(ids.max()) + 1
        hit = np.zeros(nclasses, dtype=bool)
        np.logical_or.at(hit, ids.ravel(), cross.ravel())
        if not hit.all():
            bad = np.flatnonzero(~hit[ids.ravel()])[0]
            i0, j0 = divmod(int(bad), w)
            contents = "".join(
                subgrid(g, Rect(i0 + 1, j0 + 1, i0 + k1, j0 + k2)).rows()
            )
            return CoverageReport(False, (k1, k2, contents))
    return CoverageReport(True, None)


def _class_masks(g: Grid2D, mode: str) -> list[int]:
    """One bitmask per factor class: the cells whose inclusion covers it.

    Bit (i-1)*n + (j-1) is set when some occurrence of the class contains
    cell (i, j).  Masks that are supersets of another mask are dropped
    (covering the subset class covers them too).
    """
    n = g.n
    masks: set[int] = set()
    for k1, k2 in _layer_shapes(g, mode):
        ids = _layer_ids(g, k1, k2)
        h, w = ids.shape
        per_class: dict[int, int] = {}
        row_band = [
            sum(1 << (i * n + j) for j in range(j0, j0 + k2) for i in range(i0, i0 + k1))
            for i0 in range(h)
            for j0 in range(w)
        ]
        flat = ids.ravel()
        for idx, cid in enumerate(flat):
            per_class[int(cid)] = per_class.get(int(cid), 0) | row_band[idx]
        masks.update(per_class.values())
    out = sorted(masks)
    keep = []
    for mk in out:
        if not any(other != mk and (other & mk) == other for other in out):
            keep.append(mk)
    return keep


def _cells(g: Grid2D) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, g.m + 1) for j in range(1, g.n + 1)]


def min_attractor_exact(g: Grid2D, mode: str = "rect", cap: int = 20) -> AttractorSet:
    """Smallest attractor by exhaustive search; capped to tiny grids.

    Candidate sets are tried in increasing size, lexicographic within a
    size, so the result is deterministic.
    """
    if g.size > cap:
        raise GridError(f"grid has {g.size} cells, exact search capped at {cap}")
    masks = _class_masks(g, mode)
    cells = _cells(g)
    bits = {c: 1 << ((c[0] - 1) * g.n + (c[1] - 1)) for c in cells}
    for size in range(1, len(cells) + 1):
        for combo in combinations(cells, size):
            sel = 0
            for c in combo:
                sel |= bits[c]
            if all(mk & sel for mk in masks):
                return AttractorSet.of(combo)
    raise GridError("no attractor found")  # unreachable: all cells always work


def greedy_attractor(g: Grid2D, mode: str = "rect") -> AttractorSet:
    """Set-cover greedy: always add the cell hitting most uncovered classes."""
    masks = _class_masks(g, mode)
    cells = _cells(g)
    bits = {c: 1 << ((c[0] - 1) * g.n + (c[1] - 1)) for c in cells}
    chosen = []
    remaining = list(masks)
    while remaining:
        best_cell, best_gain = None, -1
        for c in cells:
            gain = sum(1 for mk in remaining if mk & bits[c])
            if gain > best_gain:
                best_cell, best_gain = c, gain
        chosen.append(best_cell)
        b = bits[best_cell]
        remaining = [mk for mk in remaining if not (mk & b)]
    return AttractorSet.of(chosen)


# ---------------------------------------------------------------------------
# 1D verification (linear time), used on long linearizations


@dataclass
class _SamState:
    len: int
    link: int
    next: dict = field(default_factory=dict)


def _suffix_automaton(s: str) -> tuple[list[_SamState], list[int]]:
    states = [_SamState(0, -1)]
    last = 0
    last_of_prefix = []
    for ch in s:
        cur = len(states)
        states.append(_SamState(states[last].len + 1, -1))
        p = last
        while p != -1 and ch not in states[p].next:
            states[p].next[ch] = cur
            p = states[p].link
        if p == -1:
            states[cur].link = 0
        else:
            q = states[p].next[ch]
            if states[p].len + 1 == states[q].len:
                states[cur].link = q
            else:
                clone = len(states)
                states.append(_SamState(states[p].len + 1, states[q].link, dict(states[q].next)))
                while p != -1 and states[p].next.get(ch) == q:
                    states[p].next[ch] = clone
                    p = states[p].link
                states[q].link = clone
                states[cur].link = clone
        last = cur
        last_of_prefix.append(last)
    return states, last_of_prefix


def is_attractor_1d(s: str, positions) -> bool:
    """Check a 1D attractor in O(|s|) via the suffix automaton.

    ``positions`` are 1-based.  A set is an attractor iff every substring
    has an occurrence [b..e] containing a position; equivalently, for every
    automaton state, the minimal gap between some end position e and the
    last attractor position <= e stays within the substring lengths the
    state represents.
    """
    pos = sorted(set(int(p) for p in positions))
    if not pos:
        return False
    if pos[0] < 1 or pos[-1] > len(s):
        raise GridError("attractor position out of range")
    states, last_of_prefix = _suffix_automaton(s)
    inf = len(s) + 2
    # d[e] = distance from end position e (1-based) back to the nearest
    # attractor position at or before e; inf when none exists yet.
    dist = np.full(len(s) + 1, inf, dtype=np.int64)
    pi = 0
    lastpos = 0
    for e in range(1, len(s) + 1):
        while pi < len(pos) and pos[pi] <= e:
            lastpos = pos[pi]
            pi += 1
        dist[e] = e - lastpos if lastpos else inf
    best = [inf] * len(states)
    for e, st in enumerate(last_of_prefix, start=1):
        best[st] = min(best[st], int(dist[e]))
    order = sorted(range(1, len(states)), key=lambda i: -states[i].len)
    for st in order:
        lk = states[st].link
        if lk >= 0:
            best[lk] = min(best[lk], best[st])
    for st in order:
        # substrings of this state have lengths (len(link)+1 .. len); some
        # occurrence ending at e covers position e - d; need d < min length
        # i.e. d <= len(link(st)) ... d counts e - lastpos, substring covers
        # [e - L + 1 .. e], position covered iff e - lastpos <= L - 1.
        if best[st] > states[states[st].link].len:
            return False
    return True
