"""Grid geometry: shapes, points, coordinate subsets, projections and the product action.

Coordinate subsets are stored as bitmasks over 0-based factor positions and
rendered 1-based (``{1,3}``).  Points are plain tuples of ints.  The index
codec is mixed radix with the last coordinate varying fastest, so ordering
points by index coincides with lexicographic tuple order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Point = tuple[int, ...]


class ShapeMismatch(ValueError):
    """A point, permutation or coordinate set does not fit the grid shape."""


# ---------------------------------------------------------------------------
# coordinate subsets
# ---------------------------------------------------------------------------

def coordset(positions: Iterable[int]) -> int:
    """Bitmask from 0-based factor positions."""
    mask = 0
    for i in positions:
        if i < 0:
            raise ShapeMismatch(f"negative coordinate position {i}")
        mask |= 1 << i
    return mask


def members(mask: int) -> tuple[int, ...]:
    """Ascending 0-based positions in a bitmask."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def complement(mask: int, s: int) -> int:
    return ((1 << s) - 1) & ~mask


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, the empty one included."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def render(mask: int) -> str:
    """1-based list form used in JSON keys, e.g. ``"1,3"``; empty set is ``""``."""
    return ",".join(str(i + 1) for i in members(mask))


def render_braced(mask: int) -> str:
    return "{" + render(mask) + "}"


def parse_coordset(text: str, s: int) -> int:
    """Parse ``"1,3"`` or ``"{1,3}"`` (1-based) into a bitmask."""
    body = text.strip().strip("{}").strip()
    if not body:
        return 0
    mask = 0
    for tok in body.split(","):
        pos = int(tok) - 1
        if not 0 <= pos < s:
            raise ShapeMismatch(f"coordinate {tok} outside 1..{s}")
        mask |= 1 << pos
    return mask


# ---------------------------------------------------------------------------
# shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridShape:
    """Factor sizes (e_1, ..., e_s) of the point grid; factor order is meaningful."""

    e: tuple[int, ...]
    _strides: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        e = tuple(int(x) for x in self.e)
        object.__setattr__(self, "e", e)
        if len(e) < 2:
            raise ShapeMismatch(f"need at least two factors, got {list(e)}")
        if any(x < 2 for x in e):
            raise ShapeMismatch(f"every factor must have size >= 2, got {list(e)}")
        strides = []
        acc = 1
        for x in reversed(e):
            strides.append(acc)
            acc *= x
        object.__setattr__(self, "_strides", tuple(reversed(strides)))

    @property
    def s(self) -> int:
        return len(self.e)

    @property
    def v(self) -> int:
        return math.prod(self.e)

    @property
    def full(self) -> int:
        """Bitmask of the whole index set I."""
        return (1 << self.s) - 1

    @property
    def group_order(self) -> int:
        return math.prod(math.factorial(x) for x in self.e)

    def proper_masks(self) -> list[int]:
        """Nonempty proper coordinate subsets, in increasing mask order."""
        return list(range(1, self.full))

    def check_point(self, pt: Sequence[int]) -> Point:
        pt = tuple(int(x) for x in pt)
        if len(pt) != self.s or any(not 0 <= x < n for x, n in zip(pt, self.e)):
            raise ShapeMismatch(f"point {pt} does not lie in grid {list(self.e)}")
        return pt

    def encode(self, pt: Sequence[int]) -> int:
        pt = self.check_point(pt)
        return sum(x * st for x, st in zip(pt, self._strides))

    def decode(self, index: int) -> Point:
        if not 0 <= index < self.v:
            raise IndexError(f"index {index} outside 0..{self.v - 1}")
        out = []
        for st in self._strides:
            q, index = divmod(index, st)
            out.append(q)
        return tuple(out)

    def points(self) -> Iterator[Point]:
        return itertools.product(*(range(x) for x in self.e))


def project(pt: Sequence[int], mask: int) -> tuple[int, ...]:
    """Coordinates of ``pt`` at positions in ``mask``, ascending."""
    if mask >> len(pt):
        raise ShapeMismatch(f"coordinate set {render_braced(mask)} exceeds point length {len(pt)}")
    return tuple(pt[i] for i in members(mask))


def cell_geometry(shape: GridShape, mask: int) -> tuple[int, int]:
    """(c_J, d_J): cell size and number of cells of the partition by J-coordinates."""
    if mask >> shape.s:
        raise ShapeMismatch(f"coordinate set {render_braced(mask)} exceeds s={shape.s}")
    d = math.prod(shape.e[i] for i in members(mask))
    c = math.prod(shape.e[i] for i in members(complement(mask, shape.s)))
    return c, d


def enumerate_cells(shape: GridShape, mask: int) -> Iterator[tuple[int, ...]]:
    """All J-projections in mixed-radix order (last listed coordinate fastest)."""
    return itertools.product(*(range(shape.e[i]) for i in members(mask)))


def cell_index(shape: GridShape, mask: int, cell: Sequence[int]) -> int:
    """Mixed-radix position of a J-projection among ``enumerate_cells`` output."""
    idx = 0
    for i, x in zip(members(mask), cell):
        idx = idx * shape.e[i] + x
    return idx


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermTuple:
    """One permutation per factor, each given as its image list.

    Acts on the right: ``g(pt)`` is pt^g, and ``h * g`` means h first, then g.
    """

    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        for p in perms:
            if sorted(p) != list(range(len(p))):
                raise ShapeMismatch(f"{list(p)} is not a permutation")
        object.__setattr__(self, "perms", perms)

    @classmethod
    def identity(cls, shape: GridShape) -> "PermTuple":
        return cls(tuple(tuple(range(x)) for x in shape.e))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.perms)

    def fits(self, shape: GridShape) -> bool:
        return self.degrees == shape.e

    def __call__(self, pt: Sequence[int]) -> Point:
        if len(pt) != len(self.perms):
            raise ShapeMismatch(f"point {tuple(pt)} has wrong length for {self.degrees}")
        try:
            return tuple(p[x] for p, x in zip(self.perms, pt))
        except IndexError:
            raise ShapeMismatch(f"point {tuple(pt)} out of range for degrees {self.degrees}") from None

    def on_cell(self, mask: int, cell: Sequence[int]) -> tuple[int, ...]:
        """Action of the J-components on a J-projection."""
        return tuple(self.perms[i][x] for i, x in zip(members(mask), cell))

    def __mul__(self, other: "PermTuple") -> "PermTuple":
        if self.degrees != other.degrees:
            raise ShapeMismatch(f"degree mismatch {self.degrees} vs {other.degrees}")
        return PermTuple(tuple(tuple(q[x] for x in p) for p, q in zip(self.perms, other.perms)))

    def inverse(self) -> "PermTuple":
        inv = []
        for p in self.perms:
            q = [0] * len(p)
            for i, x in enumerate(p):
                q[x] = i
            inv.append(tuple(q))
        return PermTuple(tuple(inv))

    def is_identity(self) -> bool:
        return all(p == tuple(range(len(p))) for p in self.perms)


def apply(g: PermTuple, pt: Sequence[int]) -> Point:
    return g(pt)


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """A set of distinct grid points, kept sorted in index-codec order."""

    shape: GridShape
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = [self.shape.check_point(p) for p in self.points]
        uniq = sorted(set(pts))
        if len(uniq) != len(pts):
            raise ShapeMismatch("block contains duplicate points")
        object.__setattr__(self, "points", tuple(uniq))

    @classmethod
    def of(cls, shape: Sequence[int] | GridShape, points: Iterable[Sequence[int]]) -> "Block":
        if not isinstance(shape, GridShape):
            shape = GridShape(tuple(shape))
        return cls(shape, tuple(tuple(p) for p in points))

    @property
    def k(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, pt: object) -> bool:
        return pt in set(self.points)

    def image(self, g: PermTuple) -> "Block":
        if not g.fits(self.shape):
            raise ShapeMismatch(f"permutation degrees {g.degrees} do not match {self.shape.e}")
        return Block(self.shape, tuple(g(p) for p in self.points))

    def indices(self) -> list[int]:
        return [self.shape.encode(p) for p in self.points]


def parse_digits(shape: Sequence[int] | GridShape, words: Iterable[str]) -> Block:
    """Block from digit strings like ``"013"`` (single-digit coordinates)."""
    return Block.of(shape, [tuple(int(ch) for ch in w) for w in words])
