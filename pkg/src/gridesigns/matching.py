"""Backtracking search for a grid permutation carrying one structure onto another.

A *side* describes what must be preserved: either a block, or a collection of
count tables (an array function).  The search assigns images value by value,
factor by factor in ascending e_i order, and prunes with two tests:

* fingerprints: value a of factor i may only go to values with the same
  multiset of counts over every stored coordinate subset containing i;
* slice consistency: once a -> b is chosen, every stored table over a subset
  of the already assigned factors plus i must agree on the slices at a and b
  after transport by the partial permutation.

The largest factor is never branched on.  With all other factors fixed, its
permutation is forced up to reordering values that carry identical fibres, so
it is recovered by matching fibre keys.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from typing import Hashable, Sequence

import numpy as np

from .grid import Block, GridShape, PermTuple, members, subsets

DEFAULT_NODE_GUARD = 10**7


class SearchGuardExceeded(RuntimeError):
    """The backtracking node budget ran out before the search finished."""


def factor_order(shape: GridShape) -> list[int]:
    """Factors by ascending size; the last entry is handled in closed form."""
    return sorted(range(shape.s), key=lambda i: (shape.e[i], i))


def dense_table(shape: GridShape, mask: int, coords: np.ndarray) -> np.ndarray:
    """Counts of the rows of ``coords`` per J-cell, as an ndarray with one axis per member."""
    axes = members(mask)
    dims = [shape.e[i] for i in axes]
    if not axes:
        return np.array(len(coords), dtype=np.int64)
    if len(coords) == 0:
        return np.zeros(dims, dtype=np.int64)
    flat = np.ravel_multi_index(tuple(coords[:, i] for i in axes), dims)
    return np.bincount(flat, minlength=math.prod(dims)).astype(np.int64).reshape(dims)


class _Side:
    shape: GridShape
    last: int
    tables: dict[int, np.ndarray]

    def fingerprint(self, f: int, a: int) -> Hashable:
        raise NotImplementedError

    def leaf_keys(self, inverse: Sequence[np.ndarray | None]) -> list[Hashable]:
        raise NotImplementedError

    def invariant(self) -> Hashable:
        """A G-invariant summary; different summaries rule out any match."""
        return tuple(
            tuple(sorted(Counter(self.fingerprint(f, a) for a in range(self.shape.e[f])).items(), key=repr))
            for f in range(self.shape.s)
        )


class BlockSide(_Side):
    """A block: pruning tables over subsets avoiding the last factor, fibres over it."""

    def __init__(self, block: Block, last: int | None = None):
        shape = block.shape
        self.shape = shape
        self.last = factor_order(shape)[-1] if last is None else last
        self.coords = np.array(block.points, dtype=np.int64).reshape(len(block.points), shape.s)
        rest = shape.full & ~(1 << self.last)
        self.tables = {m: dense_table(shape, m, self.coords) for m in subsets(rest) if m}
        fibres: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        for pt in block.points:
            fibres[pt[self.last]].append(pt)
        self.fibres = [fibres.get(a, []) for a in range(shape.e[self.last])]
        self._fp = self._fingerprints(block)

    def _fingerprints(self, block: Block) -> list[list[Hashable]]:
        shape = self.shape
        per = [[[] for _ in range(n)] for n in shape.e]
        for m in range(1, shape.full):
            axes = members(m)
            cnt = Counter(tuple(p[i] for i in axes) for p in block.points)
            for pos, f in enumerate(axes):
                groups: dict[int, list[int]] = defaultdict(list)
                for cell, c in cnt.items():
                    groups[cell[pos]].append(c)
                for a in range(shape.e[f]):
                    per[f][a].append((m, tuple(sorted(groups.get(a, ())))))
        return [[tuple(x) for x in row] for row in per]

    def fingerprint(self, f: int, a: int) -> Hashable:
        return self._fp[f][a]

    def leaf_keys(self, forward: Sequence[np.ndarray | None]) -> list[Hashable]:
        last = self.last
        perms = [None if i == last else forward[i] for i in range(self.shape.s)]
        keys = []
        for fib in self.fibres:
            keys.append(frozenset(
                tuple(x if p is None else int(p[x]) for i, (p, x) in enumerate(zip(perms, pt)) if i != last)
                for pt in fib
            ))
        return keys


class ArraySide(_Side):
    """Dense count tables for a family of coordinate subsets (an array function)."""

    def __init__(self, shape: GridShape, tables: dict[int, np.ndarray], last: int | None = None):
        self.shape = shape
        self.last = factor_order(shape)[-1] if last is None else last
        bit = 1 << self.last
        self.all_tables = {m: t for m, t in tables.items() if m}
        self.tables = {m: t for m, t in self.all_tables.items() if not m & bit}
        self.last_tables = {m: t for m, t in self.all_tables.items() if m & bit}
        self._fp = [[self._fingerprint(f, a) for a in range(n)] for f, n in enumerate(shape.e)]

    def _fingerprint(self, f: int, a: int) -> Hashable:
        out = []
        for m, t in sorted(self.all_tables.items()):
            if m >> f & 1:
                sl = np.take(t, a, axis=members(m).index(f))
                out.append((m, np.sort(sl, axis=None).tobytes()))
        return tuple(out)

    def fingerprint(self, f: int, a: int) -> Hashable:
        return self._fp[f][a]

    def leaf_keys(self, forward: Sequence[np.ndarray | None]) -> list[Hashable]:
        last = self.last
        inverse = [None if p is None else np.argsort(p) for p in forward]
        transported = []
        for m, t in sorted(self.last_tables.items()):
            axes = members(m)
            index = [np.arange(self.shape.e[i]) if i == last or inverse[i] is None else inverse[i]
                     for i in axes]
            transported.append((axes.index(last), t[np.ix_(*index)]))
        return [
            tuple(np.take(t, a, axis=pos).tobytes() for pos, t in transported)
            for a in range(self.shape.e[last])
        ]


class Matcher:
    """Find g with src^g = dst.  Both sides must share shape and last factor."""

    def __init__(self, src: _Side, dst: _Side, guard: int = DEFAULT_NODE_GUARD):
        if src.shape != dst.shape or src.last != dst.last:
            raise ValueError("sides describe different grids")
        self.src, self.dst = src, dst
        self.shape = src.shape
        self.guard = guard
        self.nodes = 0
        self.order = [f for f in factor_order(self.shape) if f != src.last]
        self.levels = [(f, a) for f in self.order for a in range(self.shape.e[f])]
        # candidate images by fingerprint class
        self.classes: list[dict[Hashable, list[int]]] = []
        for f in range(self.shape.s):
            cls: dict[Hashable, list[int]] = defaultdict(list)
            for b in range(self.shape.e[f]):
                cls[dst.fingerprint(f, b)].append(b)
            self.classes.append(cls)
        # tables to check when a value of factor f is placed
        self.checks: dict[int, list[tuple[int, int, tuple[int, ...]]]] = {}
        done = 0
        for f in self.order:
            lst = []
            for m in src.tables:
                if m >> f & 1 and not m & ~(done | 1 << f):
                    axes = members(m)
                    others = tuple(i for i in axes if i != f)
                    lst.append((m, axes.index(f), others))
            self.checks[f] = lst
            done |= 1 << f
        self.dst_keys = dst.leaf_keys([None] * self.shape.s)

    def candidates(self, f: int, a: int) -> list[int]:
        return self.classes[f].get(self.src.fingerprint(f, a), [])

    def _consistent(self, f: int, a: int, b: int, perm: list[np.ndarray]) -> bool:
        for m, pos, others in self.checks[f]:
            s1 = np.take(self.src.tables[m], a, axis=pos)
            s2 = np.take(self.dst.tables[m], b, axis=pos)
            if others:
                s2 = s2[np.ix_(*(perm[i] for i in others))]
            if not np.array_equal(s1, s2):
                return False
        return True

    def _leaf(self, perm: list[np.ndarray]) -> PermTuple | None:
        last = self.src.last
        forward: list[np.ndarray | None] = [None] * self.shape.s
        for f in self.order:
            forward[f] = perm[f]
        src_keys = self.src.leaf_keys(forward)
        pool: dict[Hashable, list[int]] = defaultdict(list)
        for b, key in enumerate(self.dst_keys):
            pool[key].append(b)
        image = []
        for key in src_keys:
            bucket = pool.get(key)
            if not bucket:
                return None
            image.append(bucket.pop(0))
        perms = [tuple(int(x) for x in forward[i]) if i != last else tuple(image)
                 for i in range(self.shape.s)]
        return PermTuple(tuple(perms))

    def search(self, prescribed: dict[int, int] | None = None) -> PermTuple | None:
        """First g matching src onto dst; ``prescribed`` pins level -> image."""
        prescribed = prescribed or {}
        perm = [np.full(n, -1, dtype=np.int64) for n in self.shape.e]
        used = [set() for _ in self.shape.e]
        levels = self.levels

        def dfs(t: int) -> PermTuple | None:
            if t == len(levels):
                return self._leaf(perm)
            f, a = levels[t]
            if t in prescribed:
                cands = [prescribed[t]]
            else:
                cands = self.candidates(f, a)
            for b in cands:
                if b in used[f]:
                    continue
                self.nodes += 1
                if self.nodes > self.guard:
                    raise SearchGuardExceeded(f"node budget {self.guard} exhausted")
                if self.src.fingerprint(f, a) != self.dst.fingerprint(f, b):
                    continue
                if not self._consistent(f, a, b, perm):
                    continue
                perm[f][a] = b
                used[f].add(b)
                found = dfs(t + 1)
                if found is not None:
                    return found
                used[f].discard(b)
                perm[f][a] = -1
            return None

        return dfs(0)


def transport_count(keys: Sequence[Hashable]) -> tuple[int, list[list[int]]]:
    """Number of last-factor permutations fixing a key list, and its classes."""
    groups: dict[Hashable, list[int]] = defaultdict(list)
    for a, key in enumerate(keys):
        groups[key].append(a)
    classes = [g for g in groups.values() if len(g) > 1]
    return math.prod(math.factorial(len(g)) for g in groups.values()), classes


def orbit_of(value: int, factor: int, gens: Sequence[PermTuple]) -> set[int]:
    seen = {value}
    stack = [value]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g.perms[factor][x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen

