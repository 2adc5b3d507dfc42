"""Rolling window fingerprints for rectangular factors.

Four independent polynomial fingerprints modulo primes just below 2^32 give a
combined ~128-bit fingerprint per window; all arithmetic stays inside uint64.
Row windows are hashed left-to-right, then combined by a second rolling pass
down the columns, so every (k1, k2) window of a grid gets one fingerprint
vector in O(m * n) time.
"""

from __future__ import annotations

import numpy as np

# Fixed primes < 2^32 and per-lane bases; products of two residues fit uint64.
MODS = np.array([4294967291, 4294966661, 4294966297, 4294965841], dtype=np.uint64)
ROW_BASES = np.array([2654435761, 2246822519, 3266489917, 668265263], dtype=np.uint64)
COL_BASES = np.array([374761393, 3141592653, 2718281829, 1597334677], dtype=np.uint64)

_LANES = len(MODS)


def _pow_table(bases: np.ndarray, length: int) -> np.ndarray:
    out = np.empty((_LANES, length + 1), dtype=np.uint64)
    out[:, 0] = 1
    for t in range(1, length + 1):
        out[:, t] = (out[:, t - 1] * bases) % MODS
    return out


class GridHasher:
    """Per-grid fingerprint state reused across all window shapes."""

    def __init__(self, arr: np.ndarray):
        arr = np.asarray(arr, dtype=np.uint64) + 1  # avoid the zero symbol
        m, n = arr.shape
        self.m, self.n = m, n
        self._pow_row = _pow_table(ROW_BASES, n)
        self._pow_col = _pow_table(COL_BASES, m)
        # Row prefix hashes: P[l, i, j] = hash of arr[i, :j] under lane l.
        pref = np.zeros((_LANES, m, n + 1), dtype=np.uint64)
        for j in range(n):
            for l in range(_LANES):
                pref[l, :, j + 1] = (pref[l, :, j] * ROW_BASES[l] + arr[:, j]) % MODS[l]
        self._row_pref = pref
        self._row_win_cache: tuple[int, np.ndarray] | None = None
        self._col_pref_cache: tuple[int, np.ndarray] | None = None

    def row_windows(self, k2: int) -> np.ndarray:
        """Fingerprints of all 1 x k2 windows; shape (lanes, m, n - k2 + 1)."""
        if self._row_win_cache is not None and self._row_win_cache[0] == k2:
            return self._row_win_cache[1]
        p = self._row_pref
        mods = MODS[:, None, None]
        shift = (p[:, :, : self.n - k2 + 1] * self._pow_row[:, k2, None, None]) % mods
        wins = (p[:, :, k2:] + (mods - shift)) % mods
        self._row_win_cache = (k2, wins)
        return wins

    def _col_prefix(self, k2: int) -> np.ndarray:
        if self._col_pref_cache is not None and self._col_pref_cache[0] == k2:
            return self._col_pref_cache[1]
        rw = self.row_windows(k2)
        w = rw.shape[2]
        pref = np.zeros((_LANES, self.m + 1, w), dtype=np.uint64)
        for i in range(self.m):
            for l in range(_LANES):
                pref[l, i + 1] = (pref[l, i] * COL_BASES[l] + rw[l, i]) % MODS[l]
        self._col_pref_cache = (k2, pref)
        return pref

    def windows(self, k1: int, k2: int) -> np.ndarray:
        """Fingerprints of all k1 x k2 windows; shape (lanes, H, W) where
        H = m - k1 + 1 and W = n - k2 + 1."""
        if k1 == 1:
            return self.row_windows(k2)
        p = self._col_prefix(k2)
        mods = MODS[:, None, None]
        shift = (p[:, : self.m - k1 + 1, :] * self._pow_col[:, k1, None, None]) % mods
        return (p[:, k1:, :] + (mods - shift)) % mods


def _group(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort columns of a (keys, count) array; return (order, boundary flags).

    boundary[t] is True when sorted element t differs from its predecessor
    (element 0 always counts as a boundary).
    """
    order = np.lexsort(rows)
    srt = rows[:, order]
    bound = np.empty(srt.shape[1], dtype=bool)
    bound[0] = True
    bound[1:] = (srt[:, 1:] != srt[:, :-1]).any(axis=0)
    return order, bound


def distinct_count(wins: np.ndarray) -> int:
    """Number of distinct fingerprint vectors in a (lanes, ...) array."""
    _, bound = _group(wins.reshape(_LANES, -1))
    return int(bound.sum())


def class_ids(wins: np.ndarray) -> tuple[np.ndarray, int]:
    """Dense class ids (one per window, flattened) and the class count."""
    order, bound = _group(wins.reshape(_LANES, -1))
    inv = np.empty(len(order), dtype=np.int64)
    inv[order] = np.cumsum(bound) - 1
    return inv, int(bound.sum())


def exact_window_ids(arr: np.ndarray, k1: int, k2: int) -> tuple[np.ndarray, int]:
    """Dense class ids by exact content comparison (no hashing).

    Returns (ids of shape (H * W,), class count); ids index into the sorted
    set of distinct window contents.
    """
    sw = np.lib.stride_tricks.sliding_window_view(arr, (k1, k2))
    h, w = sw.shape[0], sw.shape[1]
    flat = np.ascontiguousarray(sw.reshape(h * w, k1 * k2)).T
    order, bound = _group(flat)
    inv = np.empty(len(order), dtype=np.int64)
    inv[order] = np.cumsum(bound) - 1
    return inv, int(bound.sum())


def exact_distinct_count(arr: np.ndarray, k1: int, k2: int) -> int:
    """Exact number of distinct k1 x k2 windows of ``arr``."""
    sw = np.lib.stride_tricks.sliding_window_view(arr, (k1, k2))
    flat = np.ascontiguousarray(sw.reshape(-1, k1 * k2)).T
    _, bound = _group(flat)
    return int(bound.sum())
