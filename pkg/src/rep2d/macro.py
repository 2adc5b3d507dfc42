"""Copy-based factorizations of 2D strings (macro schemes).

A scheme partitions the grid into rectangular phrases.  A phrase is either
a single explicit cell or a rectangle copied from a source occurrence
elsewhere in the grid; the induced per-cell map must reach an explicit cell
in finitely many steps for the scheme to be decodable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from .grid import Grid2D, GridError, Rect
from .grammar import HCat, HRun, Slp2D, Terminal, VCat, VRun


class SchemeError(ValueError):
    """Invalid macro scheme: bad tiling, bad source, or a copy cycle."""


@dataclass(frozen=True)
class Explicit:
    i: int
    j: int
    sym: str


@dataclass(frozen=True)
class Copy:
    area: Rect
    si: int
    sj: int


Phrase = Explicit | Copy


@dataclass(frozen=True)
class MacroScheme2D:
    m: int
    n: int
    phrases: tuple[Phrase, ...]

    @property
    def size(self) -> int:
        return len(self.phrases)


def _phrase_rect(p: Phrase) -> Rect:
    if isinstance(p, Explicit):
        return Rect(p.i, p.j, p.i, p.j)
    return p.area


def _map_arrays(s: MacroScheme2D) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-cell copy pointers (0-based); -1 marks explicit cells.

    Also validates tiling, bounds, and source placement.
    """
    m, n = s.m, s.n
    src_i = np.full((m, n), -2, dtype=np.int64)
    src_j = np.full((m, n), -2, dtype=np.int64)
    syms = np.zeros((m, n), dtype=np.uint8)
    for p in s.phrases:
        r = _phrase_rect(p)
        if r.i2 > m or r.j2 > n:
            raise SchemeError(f"phrase {p} outside {m}x{n} grid")
        block = src_i[r.i1 - 1 : r.i2, r.j1 - 1 : r.j2]
        if (block != -2).any():
            raise SchemeError(f"phrase {p} overlaps an earlier phrase")
        if isinstance(p, Explicit):
            src_i[r.i1 - 1, r.j1 - 1] = -1
            src_j[r.i1 - 1, r.j1 - 1] = -1
            syms[r.i1 - 1, r.j1 - 1] = ord(p.sym)
        else:
            if (p.si, p.sj) == (r.i1, r.j1):
                raise SchemeError(f"phrase {p} copies from its own position")
            if not (
                1 <= p.si and p.si + r.height - 1 <= m
                and 1 <= p.sj and p.sj + r.width - 1 <= n
            ):
                raise SchemeError(f"source of {p} out of bounds")
            di = p.si - r.i1
            dj = p.sj - r.j1
            ii, jj = np.meshgrid(
                np.arange(r.i1 - 1, r.i2), np.arange(r.j1 - 1, r.j2), indexing="ij"
            )
            src_i[r.i1 - 1 : r.i2, r.j1 - 1 : r.j2] = ii + di
            src_j[r.i1 - 1 : r.i2, r.j1 - 1 : r.j2] = jj + dj
    if (src_i == -2).any():
        i0, j0 = np.argwhere(src_i == -2)[0]
        raise SchemeError(f"cell ({i0 + 1},{j0 + 1}) not covered by any phrase")
    return src_i, src_j, syms


def validate_scheme(s: MacroScheme2D) -> None:
    """Raise SchemeError unless the scheme tiles the grid and every copy
    chain terminates at an explicit cell."""
    src_i, src_j, _ = _map_arrays(s)
    m, n = s.m, s.n
    color = np.zeros((m, n), dtype=np.uint8)  # 0 new, 1 on current chain, 2 done
    for start in range(m * n):
        i, j = divmod(start, n)
        path = []
        hit_explicit = False
        while color[i, j] == 0:
            color[i, j] = 1
            path.append((i, j))
            ni, nj = src_i[i, j], src_j[i, j]
            if ni < 0:
                hit_explicit = True
                break
            i, j = int(ni), int(nj)
        if not hit_explicit and color[i, j] == 1:
            raise SchemeError(f"copy cycle through cell ({i + 1},{j + 1})")
        for ci, cj in path:
            color[ci, cj] = 2
    return None


def decode(s: MacroScheme2D) -> Grid2D:
    """Resolve every cell by following its copy chain to an explicit cell."""
    src_i, src_j, syms = _map_arrays(s)
    m, n = s.m, s.n
    out = np.zeros((m, n), dtype=np.uint8)
    known = src_i == -1
    out[known] = syms[known]
    for start in range(m * n):
        i, j = divmod(start, n)
        if known[i, j]:
            continue
        chain = []
        steps = 0
        while not known[i, j]:
            chain.append((i, j))
            ni, nj = src_i[i, j], src_j[i, j]
            if ni < 0:
                out[i, j] = syms[i, j]
                known[i, j] = True
                break
            i, j = int(ni), int(nj)
            steps += 1
            if steps > m * n:
                raise SchemeError("copy chain does not terminate")
        val = out[i, j]
        for ci, cj in chain:
            out[ci, cj] = val
            known[ci, cj] = True
    return Grid2D(out)


# ---------------------------------------------------------------------------
# Handcrafted schemes


def scheme_identity(n: int) -> MacroScheme2D:
    """Six phrases for the order-n identity: three explicit corner cells,
    the rest of row 1 and column 1 shifted by one, and the whole lower-right
    block copied diagonally from (1,1)."""
    if n < 3:
        raise SchemeError("construction needs n >= 3")
    phrases = (
        Explicit(1, 1, "1"),
        Explicit(1, 2, "0"),
        Explicit(2, 1, "0"),
        Copy(Rect(1, 3, 1, n), 1, 2),
        Copy(Rect(3, 1, n, 1), 2, 1),
        Copy(Rect(2, 2, n, n), 1, 1),
    )
    return MacroScheme2D(n, n, phrases)


def scheme_ak(k: int) -> MacroScheme2D:
    """Exactly 4(k+1) phrases for the two-ones-per-block family of order k.

    Twelve phrases cover the borders, the first marker band, and its two
    patterned rows; each later band adds four phrases (two zero fillers and
    one copy of each patterned row).
    """
    if k < 4:
        raise SchemeError("construction needs k >= 4")
    m = 2 * k * (k - 1)
    n = k * (k + 2)
    c1 = k + 1  # first payload column
    c2 = k * (k + 1)  # last payload column
    ph: list[Phrase] = [
        Explicit(1, 1, "0"),
        Copy(Rect(2, 1, k, 1), 1, 1),
        Copy(Rect(1, 2, k, n), 1, 1),
        Copy(Rect(k + 1, 1, m, k), 1, 1),
        Copy(Rect(k + 1, c2 + 1, m, n), 1, 1),
        Explicit(k + 1, c1, "1"),
        Copy(Rect(k + 1, k + 2, k + 1, 2 * k), 1, 1),
        Copy(Rect(k + 1, 2 * k + 1, k + 1, c2), k + 1, c1),
        Explicit(k + 2, c1, "1"),
        Copy(Rect(k + 2, k + 2, k + 2, 2 * k + 1), 1, 1),
        Copy(Rect(k + 2, 2 * k + 2, k + 2, c2), k + 2, c1),
        Copy(Rect(k + 3, c1, 2 * k, c2), 1, 1),
    ]
    for i in range(0, k - 2):
        base = 2 * k * (i + 1) + k  # row of the band's one-per-block row
        if i == 0:
            zfrom = 2 * k + 1
        else:
            zfrom = 2 * k * i + k + i + 3
        ph.append(Copy(Rect(zfrom, c1, base, c2), k + 3, c1))
        ph.append(Copy(Rect(base + 1, c1, base + 1, c2), k + 1, c1))
        ph.append(Copy(Rect(base + 2, c1, base + i + 2, c2), k + 3, c1))
        ph.append(Copy(Rect(base + i + 3, c1, base + i + 3, c2), k + 2, c1))
    assert len(ph) == 4 * (k + 1)
    return MacroScheme2D(m, n, tuple(ph))


# ---------------------------------------------------------------------------
# Grammar conversion


def rlslp_to_macro(g: Slp2D) -> MacroScheme2D:
    """Macro scheme from a grammar: walk the parse tree depth-first; the
    first occurrence of each variable expands in place, later occurrences
    become one copy phrase, and the repeated tail of a run becomes one
    overlapping copy of the body's first period."""
    g.validate()
    m, n = g.dims(g.start)
    first: dict[int, tuple[int, int]] = {}
    ph: list[Phrase] = []

    stack: list[tuple[int, int, int]] = [(g.start, 1, 1)]
    while stack:
        var, i, j = stack.pop()
        vm, vn = g.dims(var)
        if var in first:
            ph.append(Copy(Rect(i, j, i + vm - 1, j + vn - 1), *first[var]))
            continue
        first[var] = (i, j)
        rule = g.rules[var]
        if isinstance(rule, Terminal):
            ph.append(Explicit(i, j, chr(rule.sym)))
        elif isinstance(rule, HCat):
            lw = g.dims(rule.left)[1]
            stack.append((rule.right, i, j + lw))
            stack.append((rule.left, i, j))
        elif isinstance(rule, VCat):
            th = g.dims(rule.top)[0]
            stack.append((rule.bottom, i + th, j))
            stack.append((rule.top, i, j))
        elif isinstance(rule, HRun):
            bw = g.dims(rule.body)[1]
            ph.append(Copy(Rect(i, j + bw, i + vm - 1, j + vn - 1), i, j))
            stack.append((rule.body, i, j))
        else:
            bh = g.dims(rule.body)[0]
            ph.append(Copy(Rect(i + bh, j, i + vm - 1, j + vn - 1), i, j))
            stack.append((rule.body, i, j))
    return MacroScheme2D(m, n, tuple(ph))


# ---------------------------------------------------------------------------
# Exact minimum (tiny grids)


def _tilings(m: int, n: int):
    """All partitions of the m x n board into axis-aligned rectangles,
    yielded as tuples of 1-based Rects, first-free-cell canonical order."""
    full = [[False] * n for _ in range(m)]

    def rec(acc):
        pos = None
        for i in range(m):
            for j in range(n):
                if not full[i][j]:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            yield tuple(acc)
            return
        i0, j0 = pos
        maxw = 0
        while j0 + maxw < n and not full[i0][j0 + maxw]:
            maxw += 1
        for h in range(1, m - i0 + 1):
            if any(full[i0 + h - 1][j0 + w] for w in range(1)):
                break
            for w in range(1, maxw + 1):
                if any(full[i0 + h - 1][j0 + t] for t in range(w)):
                    break
                for a in range(h):
                    for b in range(w):
                        full[i0 + a][j0 + b] = True
                acc.append(Rect(i0 + 1, j0 + 1, i0 + h, j0 + w))
                yield from rec(acc)
                acc.pop()
                for a in range(h):
                    for b in range(w):
                        full[i0 + a][j0 + b] = False

    yield from rec([])


def _sources(g: Grid2D, r: Rect):
    """Lexicographic source positions whose rectangle matches the area's
    contents in the target grid."""
    h, w = r.height, r.width
    want = g.arr[r.i1 - 1 : r.i2, r.j1 - 1 : r.j2]
    for si in range(1, g.m - h + 2):
        for sj in range(1, g.n - w + 2):
            if (si, sj) == (r.i1, r.j1):
                continue
            if np.array_equal(g.arr[si - 1 : si + h - 1, sj - 1 : sj + w - 1], want):
                yield si, sj


def min_scheme_exact(g: Grid2D, cap: int = 9) -> MacroScheme2D:
    """Smallest valid scheme for a tiny grid by exhaustive search over
    rectangle tilings and source assignments."""
    if g.size > cap:
        raise GridError(f"grid has {g.size} cells, exact search capped at {cap}")
    tilings = sorted(_tilings(g.m, g.n), key=len)  # stable: generation order in ties
    for tiling in tilings:
        options = []
        for r in tiling:
            opts: list[Phrase] = []
            if r.height == 1 and r.width == 1:
                opts.append(Explicit(r.i1, r.j1, g.cell(r.i1, r.j1)))
            for si, sj in _sources(g, r):
                opts.append(Copy(r, si, sj))
            if not opts:
                break
            options.append(opts)
        if len(options) != len(tiling):
            continue
        for combo in product(*options):
            s = MacroScheme2D(g.m, g.n, combo)
            try:
                validate_scheme(s)
            except SchemeError:
                continue
            assert decode(s) == g
            return s
    raise GridError("no valid scheme found")  # unreachable: all-explicit works


# ---------------------------------------------------------------------------
# JSON interchange


def to_json(s: MacroScheme2D) -> str:
    phrases = []
    for p in s.phrases:
        if isinstance(p, Explicit):
            phrases.append({"type": "explicit", "i": p.i, "j": p.j, "sym": p.sym})
        else:
            r = p.area
            phrases.append(
                {"type": "copy", "i1": r.i1, "j1": r.j1, "i2": r.i2, "j2": r.j2,
                 "si": p.si, "sj": p.sj}
            )
    return json.dumps({"m": s.m, "n": s.n, "phrases": phrases}, indent=1)


def from_json(text: str) -> MacroScheme2D:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemeError(f"bad scheme JSON: {e}") from None
    try:
        m, n = int(obj["m"]), int(obj["n"])
        ph: list[Phrase] = []
        for entry in obj["phrases"]:
            if entry["type"] == "explicit":
                ph.append(Explicit(int(entry["i"]), int(entry["j"]), entry["sym"]))
            elif entry["type"] == "copy":
                ph.append(
                    Copy(
                        Rect(int(entry["i1"]), int(entry["j1"]),
                             int(entry["i2"]), int(entry["j2"])),
                        int(entry["si"]), int(entry["sj"]),
                    )
                )
            else:
                raise SchemeError(f"unknown phrase type {entry['type']!r}")
    except (KeyError, TypeError) as e:
        raise SchemeError(f"malformed scheme JSON: {e}") from None
    return MacroScheme2D(m, n, tuple(ph))
