"""Array functions of blocks: per coordinate subset J, how many block points fall in each J-cell."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .grid import Block, GridShape, PermTuple, ShapeMismatch, members, parse_coordset, render
from .matching import DEFAULT_NODE_GUARD, ArraySide, Matcher, dense_table


@dataclass(frozen=True)
class ArrayFunction:
    """Dense count tables keyed by coordinate-subset bitmask.

    Each table is an ndarray with one axis per member of J (ascending), so its
    row-major flattening follows ``enumerate_cells`` order.  The empty subset
    holds the 0-d value k.  The table for J = I is present only when
    ``includes_full`` is set; it is the block's indicator.
    """

    shape: GridShape
    k: int
    tables: dict[int, np.ndarray]

    @property
    def includes_full(self) -> bool:
        return self.shape.full in self.tables

    def __getitem__(self, mask: int) -> np.ndarray:
        return self.tables[mask]

    def counts(self, mask: int) -> list[int]:
        """Flat counts in mixed-radix cell order."""
        return [int(x) for x in np.ravel(self.tables[mask])]

    def value(self, mask: int, cell: Iterable[int]) -> int:
        cell = tuple(cell)
        return int(self.tables[mask][cell]) if cell else int(self.tables[mask])

    def proper(self) -> "ArrayFunction":
        """Drop the J = I table."""
        return ArrayFunction(self.shape, self.k, {m: t for m, t in self.tables.items() if m != self.shape.full})

    def same_values(self, other: "ArrayFunction") -> bool:
        if self.shape != other.shape or self.tables.keys() != other.tables.keys():
            return False
        return all(np.array_equal(t, other.tables[m]) for m, t in self.tables.items())

    def sum_squares(self, mask: int) -> int:
        t = self.tables[mask]
        return int(np.sum(t.astype(object) ** 2)) if t.ndim else int(t) ** 2

    def to_json(self) -> list[dict]:
        return [{"J": render(m), "counts": self.counts(m)} for m in sorted(self.tables) if m]

    @classmethod
    def from_json(cls, shape: GridShape, entries: list[dict]) -> "ArrayFunction":
        tables = {}
        k = None
        for entry in entries:
            m = parse_coordset(entry["J"], shape.s)
            dims = [shape.e[i] for i in members(m)]
            counts = np.asarray(entry["counts"], dtype=np.int64)
            if counts.size != np.prod(dims):
                raise ShapeMismatch(f"J={entry['J']} has {counts.size} counts, expected {int(np.prod(dims))}")
            tables[m] = counts.reshape(dims)
            total = int(counts.sum())
            if k is not None and total != k:
                raise ShapeMismatch("array tables disagree on block size")
            k = total
        k = k or 0
        tables[0] = np.array(k, dtype=np.int64)
        return cls(shape, k, tables)


def _coords(block: Block) -> np.ndarray:
    return np.array(block.points, dtype=np.int64).reshape(block.k, block.shape.s)


def array_of(block: Block, mask: int) -> np.ndarray:
    """Counts |B ∩ C_δ| over all J-cells δ, shaped (e_j for j in J)."""
    if mask >> block.shape.s:
        raise ShapeMismatch(f"coordinate set {mask:b} exceeds s={block.shape.s}")
    return dense_table(block.shape, mask, _coords(block))


def full_array(block: Block, include_full: bool = False) -> ArrayFunction:
    """Tables for every J ⊊ I, plus J = I when asked."""
    coords = _coords(block)
    top = block.shape.full + 1 if include_full else block.shape.full
    return ArrayFunction(block.shape, block.k, {m: dense_table(block.shape, m, coords) for m in range(top)})


def translate_array(array: ArrayFunction, g: PermTuple) -> ArrayFunction:
    """The translate: new value at δ^g equals old value at δ."""
    if not g.fits(array.shape):
        raise ShapeMismatch(f"permutation degrees {g.degrees} do not match {array.shape.e}")
    inverse = g.inverse()
    out = {}
    for m, t in array.tables.items():
        axes = members(m)
        out[m] = t[np.ix_(*(np.asarray(inverse.perms[i]) for i in axes))] if axes else t.copy()
    return ArrayFunction(array.shape, array.k, out)


def arrays_equivalent(first: ArrayFunction, second: ArrayFunction,
                      guard: int = DEFAULT_NODE_GUARD) -> PermTuple | None:
    """A permutation carrying ``first`` onto ``second``, or None if there is none."""
    if first.shape != second.shape or first.k != second.k or first.tables.keys() != second.tables.keys():
        return None
    src = ArraySide(first.shape, first.tables)
    dst = ArraySide(second.shape, second.tables)
    if src.invariant() != dst.invariant():
        return None
    return Matcher(src, dst, guard).search()


def uniform_profile(array: ArrayFunction) -> dict[int, int] | None:
    """y_J when every J-cell meeting B holds the same number of points (J ⊊ I), else None.

    y_I = 1 is included whenever the block is nonempty.
    """
    out = {}
    for m in range(array.shape.full):
        vals = set(int(x) for x in np.ravel(array.tables[m]) if x)
        if len(vals) != 1:
            return None
        out[m] = vals.pop()
    if array.k:
        out[array.shape.full] = 1
    return out
