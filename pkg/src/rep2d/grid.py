"""Dense 2D strings (symbol matrices), factor extraction, and grid I/O.

All public coordinates are 1-based, matching the usual matrix convention:
``(i, j)`` is row ``i``, column ``j``, and rectangular factors are addressed
by inclusive corners.  Grids are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class GridError(ValueError):
    """Invalid grid construction or out-of-bounds access."""


def encode_symbol(ch: str | int) -> int:
    """Map a single printable character (or a raw byte code) to its code."""
    if isinstance(ch, (int, np.integer)):
        code = int(ch)
    else:
        if len(ch) != 1:
            raise GridError(f"expected a single character, got {ch!r}")
        code = ord(ch)
    if not 0 <= code <= 255:
        raise GridError(f"symbol code {code} does not fit in one byte")
    return code


def decode_symbol(code: int) -> str:
    if not 0 <= code <= 255:
        raise GridError(f"symbol code {code} does not fit in one byte")
    return chr(code)


@dataclass(frozen=True)
class Rect:
    """Inclusive 1-based rectangle: top-left (i1, j1), bottom-right (i2, j2)."""

    i1: int
    j1: int
    i2: int
    j2: int

    def __post_init__(self):
        if not (1 <= self.i1 <= self.i2 and 1 <= self.j1 <= self.j2):
            raise GridError(f"degenerate rectangle {self}")

    @property
    def height(self) -> int:
        return self.i2 - self.i1 + 1

    @property
    def width(self) -> int:
        return self.j2 - self.j1 + 1


class Grid2D:
    """An m-by-n matrix of byte symbols.

    Wraps a read-only ``numpy`` array of symbol codes.  Cell access is
    1-based; ``grid.cell(1, 1)`` is the top-left corner.
    """

    __slots__ = ("_arr",)

    def __init__(self, arr: np.ndarray):
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise GridError(f"grid shape {arr.shape} is not m x n with m, n >= 1")
        arr.flags.writeable = False
        self._arr = arr

    @property
    def arr(self) -> np.ndarray:
        """Read-only (m, n) uint8 array of symbol codes."""
        return self._arr

    @property
    def m(self) -> int:
        return self._arr.shape[0]

    @property
    def n(self) -> int:
        return self._arr.shape[1]

    @property
    def size(self) -> int:
        return self.m * self.n

    def cell(self, i: int, j: int) -> str:
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise GridError(f"cell ({i}, {j}) outside {self.m}x{self.n} grid")
        return chr(self._arr[i - 1, j - 1])

    def row(self, i: int) -> str:
        if not 1 <= i <= self.m:
            raise GridError(f"row {i} outside {self.m}x{self.n} grid")
        return self._arr[i - 1].tobytes().decode("latin-1")

    def rows(self) -> list[str]:
        return [self.row(i) for i in range(1, self.m + 1)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid2D):
            return NotImplemented
        return self._arr.shape == other._arr.shape and bool(
            np.array_equal(self._arr, other._arr)
        )

    def __hash__(self) -> int:
        return hash((self._arr.shape, self._arr.tobytes()))

    def __repr__(self) -> str:
        return f"Grid2D({self.m}x{self.n})"


def new_grid(m: int, n: int, cells) -> Grid2D:
    """Build a grid from a row-major sequence of symbols (chars or codes)."""
    if m < 1 or n < 1:
        raise GridError(f"grid dimensions must be positive, got {m}x{n}")
    if isinstance(cells, str):
        codes = [encode_symbol(c) for c in cells]
    else:
        codes = [encode_symbol(c) for c in cells]
    if len(codes) != m * n:
        raise GridError(f"expected {m * n} cells for a {m}x{n} grid, got {len(codes)}")
    return Grid2D(np.array(codes, dtype=np.uint8).reshape(m, n))


def from_rows(rows: list[str]) -> Grid2D:
    """Build a grid from equal-length row strings."""
    if not rows:
        raise GridError("no rows given")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise GridError("ragged rows")
    return new_grid(len(rows), n, "".join(rows))


def hcat(a: Grid2D, b: Grid2D) -> Grid2D:
    """Horizontal concatenation; partial, defined only for equal row counts."""
    if a.m != b.m:
        raise GridError(f"horizontal concat needs equal rows, got {a.m} and {b.m}")
    return Grid2D(np.concatenate([a.arr, b.arr], axis=1))


def vcat(a: Grid2D, b: Grid2D) -> Grid2D:
    """Vertical concatenation; partial, defined only for equal column counts."""
    if a.n != b.n:
        raise GridError(f"vertical concat needs equal columns, got {a.n} and {b.n}")
    return Grid2D(np.concatenate([a.arr, b.arr], axis=0))


def subgrid(g: Grid2D, r: Rect) -> Grid2D:
    """Copy of the rectangular factor of ``g`` addressed by ``r``."""
    if r.i2 > g.m or r.j2 > g.n:
        raise GridError(f"rectangle {r} outside {g.m}x{g.n} grid")
    return Grid2D(g.arr[r.i1 - 1 : r.i2, r.j1 - 1 : r.j2].copy())


def rlin(g: Grid2D) -> str:
    """Row linearization: the rows of ``g`` concatenated top to bottom."""
    return g.arr.tobytes().decode("latin-1")


# ---------------------------------------------------------------------------
# String-family generators


def gen_identity(m: int) -> Grid2D:
    """The identity matrix of order m over {0, 1}."""
    if m < 1:
        raise GridError("identity order must be >= 1")
    a = np.full((m, m), ord("0"), dtype=np.uint8)
    np.fill_diagonal(a, ord("1"))
    return Grid2D(a)


def gen_cm_lemma4(n: int) -> Grid2D:
    """n x n grid whose first row is the block string B1 B2 ... B_{sqrt(n)/2}
    with B_i = 1^i 0^(2*sqrt(n) - i), all remaining rows '#'^n.

    Requires n to be a perfect square with even square root, so the blocks
    of length 2*sqrt(n) tile the first row exactly.
    """
    if n < 4:
        raise GridError(f"n={n} too small for the block construction")
    r = int(np.sqrt(n))
    if r * r != n:
        raise GridError(f"n={n} is not a perfect square")
    if r % 2 != 0:
        raise GridError(f"sqrt({n})={r} must be even for the blocks to tile row 1")
    row1 = "".join("1" * i + "0" * (2 * r - i) for i in range(1, r // 2 + 1))
    assert len(row1) == n
    a = np.full((n, n), ord("#"), dtype=np.uint8)
    a[0] = np.frombuffer(row1.encode(), dtype=np.uint8)
    return Grid2D(a)


class BorderOrder(Enum):
    """Order in which the zero row and ones column are appended to I_{n-1}."""

    ROWS_FIRST = "rows_first"   # zero row first, then ones column: corner is 1
    COLS_FIRST = "cols_first"   # ones column first, then zero row: corner is 0


def gen_bordered_identity(n: int, order: BorderOrder = BorderOrder.ROWS_FIRST) -> Grid2D:
    """I_{n-1} bordered by a zero row at the bottom and a ones column at the
    right; ``order`` decides which border is appended first and therefore the
    value of the bottom-right corner cell."""
    if n < 2:
        raise GridError("bordered identity needs n >= 2")
    if isinstance(order, str):
        order = BorderOrder(order)
    core = gen_identity(n - 1)
    zero_row = new_grid(1, n - 1, "0" * (n - 1))
    if order is BorderOrder.ROWS_FIRST:
        tall = vcat(core, zero_row)
        ones_col = new_grid(n, 1, "1" * n)
        return hcat(tall, ones_col)
    ones_col = new_grid(n - 1, 1, "1" * (n - 1))
    wide = hcat(core, ones_col)
    bottom = new_grid(1, n, "0" * n)
    return vcat(wide, bottom)


def gen_ak(k: int) -> Grid2D:
    """The block matrix of dimensions 2k(k-1) x k(k+2) whose central band
    realizes, under a k x k sliding window, every k x k grid with two ordered
    ones in distinct rows.

    Built by explicit block assembly: for each i in [2..k], a k x k^2 zero
    block stacked over B(i,1) .. B(i,k) (each B(i,j) is k x k with ones at
    (1,1) and (i,j)), the whole band flanked by k-column zero borders.
    """
    if k < 4:
        raise GridError("the construction needs k >= 4")
    m = 2 * k * (k - 1)
    n = k * (k + 2)
    zero_block = np.full((k, k * k), ord("0"), dtype=np.uint8)
    bands = []
    for i in range(2, k + 1):
        b_band = np.full((k, k * k), ord("0"), dtype=np.uint8)
        for j in range(1, k + 1):
            col0 = (j - 1) * k  # 0-based first column of block j
            b_band[0, col0] = ord("1")
            b_band[i - 1, col0 + j - 1] = ord("1")
        bands.append(np.concatenate([zero_block, b_band], axis=0))
    central = np.concatenate(bands, axis=0)
    border = np.full((m, k), ord("0"), dtype=np.uint8)
    out = np.concatenate([border, central, border], axis=1)
    assert out.shape == (m, n)
    return Grid2D(out)


# ---------------------------------------------------------------------------
# Text I/O


def parse_grid(text: str) -> Grid2D:
    """Parse the one-line-per-row grid format."""
    lines = text.splitlines()
    if not lines or all(line == "" for line in lines):
        raise GridError("empty grid text")
    n = len(lines[0])
    if n == 0:
        raise GridError("empty first row")
    for idx, line in enumerate(lines):
        if len(line) != n:
            raise GridError(f"ragged row {idx + 1}: length {len(line)} != {n}")
    return from_rows(lines)


def serialize_grid(g: Grid2D) -> str:
    """Inverse of :func:`parse_grid`; emits m newline-terminated rows."""
    return "".join(r + "\n" for r in g.rows())
