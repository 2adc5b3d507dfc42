"""Shared helpers for the test suite: seeded random inputs and slow,
obviously-correct reference implementations used as oracles."""

from __future__ import annotations

import numpy as np

from rep2d.grid import Grid2D
from rep2d.grammar import HCat, HRun, Slp2D, Terminal, VCat, VRun


def random_grid(rng: np.random.Generator, max_m: int = 12, max_n: int = 12,
                sigma: int = 2) -> Grid2D:
    m = int(rng.integers(1, max_m + 1))
    n = int(rng.integers(1, max_n + 1))
    arr = rng.integers(ord("a"), ord("a") + sigma, (m, n)).astype(np.uint8)
    return Grid2D(arr)


def random_rlslp(rng: np.random.Generator, steps: int = 14,
                 max_cells: int = 4096, runs: bool = True) -> Slp2D:
    """Random valid grammar built bottom-up from compatible pieces."""
    rules: dict = {}
    dims: dict = {}

    def add(rule, d):
        vid = len(rules)
        rules[vid] = rule
        dims[vid] = d
        return vid

    for ch in "01":
        add(Terminal(ord(ch)), (1, 1))
    for _ in range(steps):
        ids = list(rules)
        for _attempt in range(20):
            op = rng.choice(["hcat", "vcat", "hrun", "vrun"] if runs
                            else ["hcat", "vcat"])
            a = int(rng.choice(ids))
            if op == "hcat":
                mates = [v for v in ids if dims[v][0] == dims[a][0]]
                b = int(rng.choice(mates))
                d = (dims[a][0], dims[a][1] + dims[b][1])
                rule = HCat(a, b)
            elif op == "vcat":
                mates = [v for v in ids if dims[v][1] == dims[a][1]]
                b = int(rng.choice(mates))
                d = (dims[a][0] + dims[b][0], dims[a][1])
                rule = VCat(a, b)
            elif op == "hrun":
                reps = int(rng.integers(2, 5))
                d = (dims[a][0], dims[a][1] * reps)
                rule = HRun(a, reps)
            else:
                reps = int(rng.integers(2, 5))
                d = (dims[a][0] * reps, dims[a][1])
                rule = VRun(a, reps)
            if d[0] * d[1] <= max_cells:
                add(rule, d)
                break
    start = max(rules, key=lambda v: (dims[v][0] * dims[v][1], v))
    g = Slp2D(rules, start)
    g.validate()
    return g


def brute_distinct(arr: np.ndarray, k1: int, k2: int) -> int:
    seen = set()
    for i in range(arr.shape[0] - k1 + 1):
        for j in range(arr.shape[1] - k2 + 1):
            seen.add(arr[i : i + k1, j : j + k2].tobytes())
    return len(seen)


def brute_is_attractor(g: Grid2D, positions, mode: str = "rect") -> bool:
    arr = g.arr
    m, n = g.m, g.n
    shapes = ([(k, k) for k in range(1, min(m, n) + 1)] if mode == "square"
              else [(k1, k2) for k1 in range(1, m + 1) for k2 in range(1, n + 1)])
    pos = set(positions)
    for k1, k2 in shapes:
        classes: dict[bytes, list] = {}
        for i in range(m - k1 + 1):
            for j in range(n - k2 + 1):
                classes.setdefault(arr[i : i + k1, j : j + k2].tobytes(), []).append((i, j))
        for occ in classes.values():
            if not any(
                any(i + 1 <= pi <= i + k1 and j + 1 <= pj <= j + k2 for pi, pj in pos)
                for i, j in occ
            ):
                return False
    return True


def brute_is_attractor_1d(s: str, positions) -> bool:
    pos = set(positions)
    n = len(s)
    for k in range(1, n + 1):
        occs: dict[str, list] = {}
        for i in range(n - k + 1):
            occs.setdefault(s[i : i + k], []).append(i + 1)
        for lst in occs.values():
            if not any(any(b <= p <= b + k - 1 for p in pos) for b in lst):
                return False
    return True
