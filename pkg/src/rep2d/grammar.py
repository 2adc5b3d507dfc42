"""Straight-line programs for 2D strings, with run-length rules.

A grammar is a table of variables whose rules are single terminals,
horizontal/vertical concatenations of two variables, or horizontal/vertical
runs of one variable.  Validation topologically sorts the rules, checks
dimension compatibility, and caches per-variable dimensions; those cached
dimensions drive single-descent cell access in time proportional to the
parse-tree height.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .grid import Grid2D, GridError, decode_symbol, encode_symbol


class GrammarError(ValueError):
    """Malformed or dimension-inconsistent grammar."""


@dataclass(frozen=True)
class Terminal:
    sym: int


@dataclass(frozen=True)
class HCat:
    left: int
    right: int


@dataclass(frozen=True)
class VCat:
    top: int
    bottom: int


@dataclass(frozen=True)
class HRun:
    body: int
    reps: int


@dataclass(frozen=True)
class VRun:
    body: int
    reps: int


Rule = Terminal | HCat | VCat | HRun | VRun


def _children(rule: Rule) -> tuple[int, ...]:
    if isinstance(rule, Terminal):
        return ()
    if isinstance(rule, HCat):
        return (rule.left, rule.right)
    if isinstance(rule, VCat):
        return (rule.top, rule.bottom)
    return (rule.body,)


@dataclass(frozen=True)
class GrammarStats:
    size: int
    height: int
    m: int
    n: int


class Slp2D:
    """Variable table plus start symbol; immutable once validated."""

    def __init__(self, rules: dict[int, Rule], start: int):
        self.rules = dict(rules)
        self.start = start
        self._dims: dict[int, tuple[int, int]] | None = None
        self._order: list[int] | None = None

    def dims(self, var: int) -> tuple[int, int]:
        if self._dims is None:
            self.validate()
        return self._dims[var]

    def validate(self) -> GrammarStats:
        """Topological check, dimension inference, and stats in one pass."""
        rules = self.rules
        if self.start not in rules:
            raise GrammarError(f"start variable {self.start} has no rule")
        indeg = {v: 0 for v in rules}
        for v, rule in rules.items():
            if isinstance(rule, (HRun, VRun)) and rule.reps <= 1:
                raise GrammarError(f"variable {v}: run repetition {rule.reps} <= 1")
            for c in _children(rule):
                if c not in rules:
                    raise GrammarError(f"variable {v} references undefined {c}")
                indeg[c] += 1
        # Kahn order from referrers down to terminals.
        queue = [v for v, d in indeg.items() if d == 0]
        topo = []
        indeg = dict(indeg)
        while queue:
            v = queue.pop()
            topo.append(v)
            for c in _children(rules[v]):
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        if len(topo) != len(rules):
            raise GrammarError("cycle among grammar variables")
        dims: dict[int, tuple[int, int]] = {}
        height: dict[int, int] = {}
        for v in reversed(topo):
            rule = rules[v]
            if isinstance(rule, Terminal):
                dims[v] = (1, 1)
                height[v] = 0
            elif isinstance(rule, HCat):
                (ml, nl), (mr, nr) = dims[rule.left], dims[rule.right]
                if ml != mr:
                    raise GrammarError(
                        f"variable {v}: horizontal children have {ml} and {mr} rows"
                    )
                dims[v] = (ml, nl + nr)
                height[v] = 1 + max(height[rule.left], height[rule.right])
            elif isinstance(rule, VCat):
                (mt, nt), (mb, nb) = dims[rule.top], dims[rule.bottom]
                if nt != nb:
                    raise GrammarError(
                        f"variable {v}: vertical children have {nt} and {nb} columns"
                    )
                dims[v] = (mt + mb, nt)
                height[v] = 1 + max(height[rule.top], height[rule.bottom])
            elif isinstance(rule, HRun):
                mb, nb = dims[rule.body]
                dims[v] = (mb, nb * rule.reps)
                height[v] = 1 + height[rule.body]
            else:
                mb, nb = dims[rule.body]
                dims[v] = (mb * rule.reps, nb)
                height[v] = 1 + height[rule.body]
        self._dims = dims
        self._order = topo
        m, n = dims[self.start]
        return GrammarStats(len(rules), height[self.start], m, n)


def validate(g: Slp2D) -> GrammarStats:
    return g.validate()


def stats(g: Slp2D) -> GrammarStats:
    return g.validate()


def expand(g: Slp2D, var: int | None = None, cell_budget: int = 1 << 26) -> Grid2D:
    """Materialize the 2D string a variable generates."""
    if g._dims is None:
        g.validate()
    if var is None:
        var = g.start
    m, n = g._dims[var]
    if m * n > cell_budget:
        raise GrammarError(f"expansion of {var} is {m}x{n}, over the cell budget")
    memo: dict[int, np.ndarray] = {}

    def build(v: int) -> np.ndarray:
        got = memo.get(v)
        if got is not None:
            return got
        rule = g.rules[v]
        if isinstance(rule, Terminal):
            out = np.full((1, 1), rule.sym, dtype=np.uint8)
        elif isinstance(rule, HCat):
            out = np.concatenate([build(rule.left), build(rule.right)], axis=1)
        elif isinstance(rule, VCat):
            out = np.concatenate([build(rule.top), build(rule.bottom)], axis=0)
        elif isinstance(rule, HRun):
            out = np.tile(build(rule.body), (1, rule.reps))
        else:
            out = np.tile(build(rule.body), (rule.reps, 1))
        if out.size > cell_budget:
            raise GrammarError(f"expansion of {v} exceeds the cell budget")
        memo[v] = out
        return out

    # Iterative worklist to dodge recursion limits on tall grammars.
    stack = [var]
    while stack:
        v = stack[-1]
        if v in memo:
            stack.pop()
            continue
        pending = [c for c in _children(g.rules[v]) if c not in memo]
        if pending:
            stack.extend(pending)
        else:
            build(v)
            stack.pop()
    return Grid2D(memo[var])


def access(g: Slp2D, i: int, j: int) -> str:
    """Symbol at 1-based cell (i, j) of the start expansion, one descent."""
    if g._dims is None:
        g.validate()
    m, n = g._dims[g.start]
    if not (1 <= i <= m and 1 <= j <= n):
        raise GridError(f"cell ({i},{j}) outside {m}x{n} expansion")
    var = g.start
    while True:
        rule = g.rules[var]
        if isinstance(rule, Terminal):
            return decode_symbol(rule.sym)
        if isinstance(rule, HCat):
            nb = g._dims[rule.left][1]
            if j <= nb:
                var = rule.left
            else:
                j -= nb
                var = rule.right
        elif isinstance(rule, VCat):
            mb = g._dims[rule.top][0]
            if i <= mb:
                var = rule.top
            else:
                i -= mb
                var = rule.bottom
        elif isinstance(rule, HRun):
            j = (j - 1) % g._dims[rule.body][1] + 1
            var = rule.body
        else:
            i = (i - 1) % g._dims[rule.body][0] + 1
            var = rule.body


def grammar_tree_node_count(g: Slp2D) -> int:
    """Nodes of the grammar tree: the parse tree with every non-first
    occurrence of a variable pruned to a leaf, and the repeated tail of a
    run counted as one leaf."""
    if g._dims is None:
        g.validate()
    seen: set[int] = set()
    count = 0
    stack = [g.start]
    while stack:
        v = stack.pop()
        count += 1
        if v in seen:
            continue
        seen.add(v)
        rule = g.rules[v]
        if isinstance(rule, (HRun, VRun)):
            count += 1  # the repeated remainder collapses to one leaf
            stack.append(rule.body)
        else:
            stack.extend(_children(rule))
    return count


# ---------------------------------------------------------------------------
# JSON interchange

_KINDS = {"term", "hcat", "vcat", "hrun", "vrun"}


def to_json(g: Slp2D) -> str:
    rules = []
    for v in sorted(g.rules):
        rule = g.rules[v]
        if isinstance(rule, Terminal):
            rules.append({"id": v, "kind": "term", "sym": decode_symbol(rule.sym)})
        elif isinstance(rule, HCat):
            rules.append({"id": v, "kind": "hcat", "left": rule.left, "right": rule.right})
        elif isinstance(rule, VCat):
            rules.append({"id": v, "kind": "vcat", "top": rule.top, "bottom": rule.bottom})
        elif isinstance(rule, HRun):
            rules.append({"id": v, "kind": "hrun", "body": rule.body, "reps": rule.reps})
        else:
            rules.append({"id": v, "kind": "vrun", "body": rule.body, "reps": rule.reps})
    return json.dumps({"start": g.start, "rules": rules}, indent=1)


def from_json(text: str) -> Slp2D:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GrammarError(f"bad grammar JSON: {e}") from None
    if not isinstance(obj, dict) or "start" not in obj or "rules" not in obj:
        raise GrammarError("grammar JSON needs 'start' and 'rules'")
    rules: dict[int, Rule] = {}
    for entry in obj["rules"]:
        vid = int(entry["id"])
        if vid in rules:
            raise GrammarError(f"duplicate rule id {vid}")
        kind = entry.get("kind")
        if kind == "term":
            rules[vid] = Terminal(encode_symbol(entry["sym"]))
        elif kind == "hcat":
            rules[vid] = HCat(int(entry["left"]), int(entry["right"]))
        elif kind == "vcat":
            rules[vid] = VCat(int(entry["top"]), int(entry["bottom"]))
        elif kind == "hrun":
            rules[vid] = HRun(int(entry["body"]), int(entry["reps"]))
        elif kind == "vrun":
            rules[vid] = VRun(int(entry["body"]), int(entry["reps"]))
        else:
            raise GrammarError(f"unknown rule kind {kind!r}")
    return Slp2D(rules, int(obj["start"]))


# ---------------------------------------------------------------------------
# Builders


class _Builder:
    """Hash-consing rule factory: identical rules share one variable."""

    def __init__(self):
        self.rules: dict[int, Rule] = {}
        self._memo: dict[Rule, int] = {}

    def _emit(self, rule: Rule) -> int:
        got = self._memo.get(rule)
        if got is not None:
            return got
        vid = len(self.rules)
        self.rules[vid] = rule
        self._memo[rule] = vid
        return vid

    def term(self, ch: str) -> int:
        return self._emit(Terminal(encode_symbol(ch)))

    def hcat(self, a: int, b: int) -> int:
        return self._emit(HCat(a, b))

    def vcat(self, a: int, b: int) -> int:
        return self._emit(VCat(a, b))

    def hrun(self, body: int, reps: int) -> int:
        return body if reps == 1 else self._emit(HRun(body, reps))

    def vrun(self, body: int, reps: int) -> int:
        return body if reps == 1 else self._emit(VRun(body, reps))

    def vchain(self, parts: list[int]) -> int:
        out = parts[0]
        for p in parts[1:]:
            out = self.vcat(out, p)
        return out

    def done(self, start: int) -> Slp2D:
        g = Slp2D(self.rules, start)
        g.validate()
        return g


def rlslp_zeros(m: int, n: int) -> Slp2D:
    """Constant-size grammar for the all-zeros m x n grid."""
    if m < 1 or n < 1:
        raise GrammarError("dimensions must be positive")
    b = _Builder()
    row = b.hrun(b.term("0"), n)
    return b.done(b.vrun(row, m))


def slp_bordered_identity(n: int) -> Slp2D:
    """Logarithmic grammar for the identity with a ones column then a zero
    row appended (so the bottom-right corner is 0).

    The identity of order 2k splits into four k x k quadrants, two identity
    and two zero, giving three fresh variables per doubling plus two for
    each zero square; total 5*log2(n-1) + O(1).
    """
    t = (n - 1).bit_length() - 1
    if n < 2 or (1 << t) != n - 1:
        raise GrammarError(f"n-1 = {n - 1} is not a power of two")
    b = _Builder()
    t0, t1 = b.term("0"), b.term("1")
    ident = t1  # identity of order 2^j, starting at j = 0
    zsq = t0  # zero square of order 2^j
    for j in range(1, t + 1):
        ident = b.vcat(b.hcat(ident, zsq), b.hcat(zsq, ident))
        if j < t:
            half = 1 << j
            zsq = b.vrun(b.hrun(t0, half), half)
    wide = b.hcat(ident, b.vrun(t1, n - 1))
    return b.done(b.vcat(wide, b.hrun(t0, n)))


def build_quadtree_slp(g: Grid2D) -> Slp2D:
    """Generic constructor: halve rows, then columns, sharing variables
    between sub-blocks with identical contents."""
    b = _Builder()
    cache: dict[tuple[int, int, bytes], int] = {}

    def rec(arr: np.ndarray) -> int:
        m, n = arr.shape
        key = (m, n, arr.tobytes())
        got = cache.get(key)
        if got is not None:
            return got
        if m == 1 and n == 1:
            vid = b.term(chr(arr[0, 0]))
        elif m > 1:
            h = (m + 1) // 2
            vid = b.vcat(rec(arr[:h]), rec(arr[h:]))
        else:
            w = (n + 1) // 2
            vid = b.hcat(rec(arr[:, :w]), rec(arr[:, w:]))
        cache[key] = vid
        return vid

    return b.done(rec(np.asarray(g.arr)))


def slp_ak(k: int) -> Slp2D:
    """O(k) grammar for the two-ones-per-block family of order k.

    The grid is three column bands: a k-wide zero border, the k^2-wide
    payload, and another zero border.  The payload stacks, for each marker
    row i in [2..k], a k-row zero block over k rows holding a one-per-block
    row, a one-per-block-diagonal row, and zero filler rows.
    """
    if k < 4:
        raise GrammarError("the construction needs k >= 4")
    m = 2 * k * (k - 1)
    b = _Builder()
    t0, t1 = b.term("0"), b.term("1")
    # full-width payload rows, each of width k^2
    zrow = b.hrun(t0, k * k)
    row2 = b.hrun(b.hcat(t1, b.hrun(t0, k - 1)), k)  # (1 0^{k-1})^k
    row3 = b.hcat(b.hrun(b.hcat(t1, b.hrun(t0, k)), k - 1), t1)  # (1 0^k)^{k-1} 1
    zgap = {h: b.vrun(zrow, h) for h in range(1, k + 1)}
    bands = []
    for i in range(2, k + 1):
        parts = [zgap[k], row2]
        if i > 2:
            parts.append(zgap[i - 2])
        parts.append(row3)
        if i < k:
            parts.append(zgap[k - i])
        bands.append(b.vchain(parts))
    central = b.vchain(bands)
    side = b.vrun(b.hrun(t0, k), m)
    return b.done(b.hcat(b.hcat(side, central), side))
