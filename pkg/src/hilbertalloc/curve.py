"""Hilbert move strings from a rewriting grammar, and the induced cell order.

The grammar rewrites the four cup-shaped templates A=urd, B=ldr, C=rul,
D=dlu in parallel (A -> CAAB, B -> DBBA, C -> ACCD, D -> BDDC), stitching
the four children of a template together with the template's own three cup
moves; that makes each round agree with the rotate-copy recursion
y(n) = h4(y(n-1)) u y(n-1) r y(n-1) d h5(y(n-1)) at every depth.  After r-1
rounds the remaining template letters are spelled out as their cups, giving
a string of 4**r - 1 unit steps that visits every cell of the 2**r x 2**r
grid exactly once.  The exported cell order is mirrored vertically so that
index 0 sits in the upper-left corner, which is where allocation starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_LEVEL = 12     # 4**12 cells is the largest grid we agree to materialize
_MEMO_LEVEL = 8    # strings up to this level are cached; above, built on demand

_PRODUCTION = {"A": "CAAB", "B": "DBBA", "C": "ACCD", "D": "BDDC"}
_TEMPLATE_MOVES = {"A": "urd", "B": "ldr", "C": "rul", "D": "dlu"}

_DX_TABLE = np.zeros(128, dtype=np.int8)
_DY_TABLE = np.zeros(128, dtype=np.int8)
_DX_TABLE[ord("r")] = 1
_DX_TABLE[ord("l")] = -1
_DY_TABLE[ord("u")] = 1
_DY_TABLE[ord("d")] = -1


@dataclass(frozen=True)
class MoveString:
    """Moves over {u, r, d, l}; length is 4**level - 1."""

    level: int
    moves: str

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)


def _rewrite_round(symbols: str) -> str:
    out = []
    for ch in symbols:
        production = _PRODUCTION.get(ch)
        if production is None:
            out.append(ch)
        else:
            glue = _TEMPLATE_MOVES[ch]
            out.append(
                production[0] + glue[0] + production[1] + glue[1]
                + production[2] + glue[2] + production[3]
            )
    return "".join(out)


def _build_moves(level: int) -> str:
    symbols = "A"
    for _ in range(level - 1):
        symbols = _rewrite_round(symbols)
    return "".join(_TEMPLATE_MOVES.get(ch, ch) for ch in symbols)


@lru_cache(maxsize=None)
def _cached_moves(level: int) -> str:
    return _build_moves(level)


def generate_moves(level: int) -> MoveString:
    """The deterministic move string of the given refinement level."""
    if level < 1:
        raise ValueError("invalid level")
    if level > MAX_LEVEL:
        raise ValueError("level too large")
    moves = _cached_moves(level) if level <= _MEMO_LEVEL else _build_moves(level)
    return MoveString(level, moves)


@dataclass(frozen=True, eq=False)
class CurveOrder:
    """Bijection between curve indices 0..4**level-1 and grid cells.

    Index 0 is the upper-left cell (0, 2**level - 1); consecutive indices are
    edge-adjacent.  Immutable after construction and safe to share.
    """

    level: int
    xs: np.ndarray
    ys: np.ndarray
    _inverse: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        """Grid side length 2**level."""
        return 1 << self.level

    @property
    def count(self) -> int:
        """Number of cells 4**level."""
        return 1 << (2 * self.level)

    def cell(self, index: int) -> tuple[int, int]:
        if not 0 <= index < self.count:
            raise ValueError("index out of range")
        return (int(self.xs[index]), int(self.ys[index]))

    def index(self, x: int, y: int) -> int:
        if not (0 <= x < self.size and 0 <= y < self.size):
            raise ValueError("cell out of range")
        return int(self._inverse[x * self.size + y])

    def window_cells(self, start: int, end: int) -> list[tuple[int, int]]:
        """Cells of the contiguous curve window [start, end)."""
        if not (0 <= start < end <= self.count):
            raise ValueError("window overflow")
        return list(zip(self.xs[start:end].tolist(), self.ys[start:end].tolist()))


def _assemble_order(level: int) -> CurveOrder:
    side = 1 << level
    if level == 0:
        xs = np.zeros(1, dtype=np.int32)
        ys = np.zeros(1, dtype=np.int32)
    else:
        raw = np.frombuffer(generate_moves(level).moves.encode("ascii"), dtype=np.uint8)
        xs = np.zeros(raw.size + 1, dtype=np.int32)
        ys = np.zeros(raw.size + 1, dtype=np.int32)
        np.cumsum(_DX_TABLE[raw], out=xs[1:])
        np.cumsum(_DY_TABLE[raw], out=ys[1:])
        xs -= xs.min()
        ys -= ys.min()
        # Upper-left start convention: mirror the walk vertically.
        ys = (side - 1) - ys
    if min(xs.min(), ys.min()) < 0 or max(xs.max(), ys.max()) > side - 1:
        raise AssertionError("curve walk escaped the grid")
    keys = xs.astype(np.int64) * side + ys
    inverse = np.full(side * side, -1, dtype=np.int64)
    inverse[keys] = np.arange(keys.size)
    if int(inverse.min()) < 0:
        raise AssertionError("curve walk is not a bijection")
    for arr in (xs, ys, inverse):
        arr.setflags(write=False)
    return CurveOrder(level, xs, ys, inverse)


@lru_cache(maxsize=None)
def _cached_order(level: int) -> CurveOrder:
    return _assemble_order(level)


def build_order(level: int) -> CurveOrder:
    """Cell ordering of the 2**level x 2**level grid (level 0 is one cell)."""
    if level < 0:
        raise ValueError("invalid level")
    if level > MAX_LEVEL:
        raise ValueError("level too large")
    if level <= _MEMO_LEVEL:
        return _cached_order(level)
    return _assemble_order(level)


def subsquare_span(order: CurveOrder, start: int, n: int, t: int) -> int:
    """Distinct 2**t x 2**t aligned blocks touched by the window [start, start+n)."""
    if n <= 0 or start < 0 or start + n > order.count:
        raise ValueError("window overflow")
    if not 1 <= t <= order.level:
        raise ValueError("invalid level")
    bx = order.xs[start : start + n] >> t
    by = order.ys[start : start + n] >> t
    blocks = bx.astype(np.int64) * (order.size >> t) + by
    return int(np.unique(blocks).size)


def min_refinement_level(n: int) -> int:
    """Smallest level whose curve realizes every n-cell window shape."""
    if n < 1:
        raise ValueError("invalid size")
    needed = -(-n // 4) + 1
    return (needed - 1).bit_length() + 2
