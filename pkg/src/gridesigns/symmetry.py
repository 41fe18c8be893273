"""Setwise stabilizers, orbit membership and flag-transitivity for blocks in the product grid.

The stabilizer order is built as a product of orbit lengths along a base made
of all values of the non-largest factors (ascending e_i).  For each base point
the orbit under the already known stabilizer generators is closed first; every
remaining candidate image is then settled by one existence search that pins the
earlier base points.  Once every non-largest factor is fixed pointwise, the
remaining freedom is the reordering of equal fibres over the largest factor,
which contributes a product of factorials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from .grid import Block, GridShape, PermTuple, members
from .matching import (
    DEFAULT_NODE_GUARD,
    BlockSide,
    Matcher,
    SearchGuardExceeded,
    orbit_of,
    transport_count,
)

__all__ = [
    "LevelTrace",
    "SearchGuardExceeded",
    "StabilizerResult",
    "ft_prefilter",
    "is_flag_transitive",
    "same_orbit",
    "stabilizer",
]


@dataclass
class LevelTrace:
    factor: int
    value: int
    orbit: int
    searches: int


@dataclass
class StabilizerResult:
    order: int
    generators: list[PermTuple]
    trace: list[LevelTrace] = field(default_factory=list)
    last_factor_classes: list[list[int]] = field(default_factory=list)
    nodes: int = 0

    def to_json(self, flag_transitive: bool | None = None) -> dict:
        out = {
            "order": str(self.order),
            "generators": [[list(p) for p in g.perms] for g in self.generators],
        }
        if flag_transitive is not None:
            out["flag_transitive"] = flag_transitive
        return out


def stabilizer(block: Block, guard: int = DEFAULT_NODE_GUARD) -> StabilizerResult:
    """Order and a generating set of the setwise stabilizer of ``block`` in G."""
    shape = block.shape
    side = BlockSide(block)
    matcher = Matcher(side, side, guard)
    levels = matcher.levels
    gens: list[PermTuple] = []
    trace: list[LevelTrace] = []
    order = 1

    # last factor, with every other factor fixed pointwise
    count, classes = transport_count(matcher.dst_keys)
    last = side.last
    for cls in classes:
        for a, b in zip(cls, cls[1:]):
            perms = [tuple(range(n)) for n in shape.e]
            img = list(range(shape.e[last]))
            img[a], img[b] = b, a
            perms[last] = tuple(img)
            gens.append(PermTuple(tuple(perms)))
    order *= count

    for t in range(len(levels) - 1, -1, -1):
        f, a = levels[t]
        pinned = {u: levels[u][1] for u in range(t)}
        orbit = orbit_of(a, f, gens)
        dead: set[int] = set()
        searches = 0
        fixed_here = {levels[u][1] for u in range(t) if levels[u][0] == f}
        for b in matcher.candidates(f, a):
            if b in orbit or b in dead or b in fixed_here:
                continue
            searches += 1
            h = matcher.search({**pinned, t: b})
            if h is None:
                dead |= orbit_of(b, f, gens)
            else:
                gens.append(h)
                orbit = orbit_of(a, f, gens)
        order *= len(orbit)
        trace.append(LevelTrace(f + 1, a, len(orbit), searches))
    trace.reverse()
    return StabilizerResult(order, gens, trace, classes, matcher.nodes)


def same_orbit(first: Block, second: Block, guard: int = DEFAULT_NODE_GUARD) -> PermTuple | None:
    """Some g with first^g = second, or None."""
    if first.shape != second.shape or first.k != second.k:
        return None
    src, dst = BlockSide(first), BlockSide(second)
    if src.invariant() != dst.invariant():
        return None
    return Matcher(src, dst, guard).search()


def point_orbits(block: Block, gens: list[PermTuple]) -> list[list[tuple[int, ...]]]:
    """Orbits of the group generated by ``gens`` on the points of ``block``."""
    pts = set(block.points)
    seen: set[tuple[int, ...]] = set()
    out = []
    for start in block.points:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g(x)
                if y not in pts:
                    raise AssertionError("generator does not stabilize the block")
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
                    stack.append(y)
        out.append(sorted(orbit))
    return out


def is_flag_transitive(block: Block, stab: StabilizerResult | None = None,
                       guard: int = DEFAULT_NODE_GUARD) -> bool:
    """G is flag-transitive on the orbit design iff G_B is transitive on B."""
    if stab is None:
        stab = stabilizer(block, guard)
    return len(point_orbits(block, stab.generators)) == 1


@dataclass
class PrefilterResult:
    passed: bool
    y: dict[int, int]
    reasons: list[str]
    unit: int | None = None


def ft_prefilter(shape: GridShape, k: int) -> PrefilterResult:
    """Necessary arithmetic conditions for a flag-transitive orbit 2-design.

    (i) (v-1) divides (k-1)D with D = gcd(e_i - 1);
    (ii) y_J divides (D_J/D) c_J for every nonempty J, where
         y_J = 1 + (k-1)(c_J - 1)/(v-1) and D_J = gcd(e_j - 1 : j in J).
    """
    v = shape.v
    gcd_all = reduce(math.gcd, (x - 1 for x in shape.e))
    reasons: list[str] = []
    if k < 2 or k > v:
        return PrefilterResult(False, {}, [f"block size {k} outside 2..{v}"])
    if ((k - 1) * gcd_all) % (v - 1):
        reasons.append(f"(i) fails: v-1={v - 1} does not divide (k-1)D={(k - 1) * gcd_all} (D={gcd_all})")
        return PrefilterResult(False, {}, reasons)
    unit = (k - 1) * gcd_all // (v - 1)
    y = {}
    for m in range(shape.full + 1):
        c = math.prod(shape.e[i] for i in range(shape.s) if not m >> i & 1)
        y[m] = 1 + (k - 1) * (c - 1) // (v - 1)
        if ((k - 1) * (c - 1)) % (v - 1):
            raise AssertionError("y_J must be integral once condition (i) holds")
    _check_profile_arithmetic(shape, k, y, unit, gcd_all)
    for m in range(1, shape.full + 1):
        c = math.prod(shape.e[i] for i in range(shape.s) if not m >> i & 1)
        gcd_j = reduce(math.gcd, (shape.e[i] - 1 for i in members(m)))
        if (gcd_j // gcd_all * c) % y[m]:
            reasons.append(f"(ii) fails at J={{{','.join(str(i + 1) for i in members(m))}}}: "
                           f"y_J={y[m]} does not divide {gcd_j // gcd_all * c}")
    return PrefilterResult(not reasons, y, reasons, unit)


def _check_profile_arithmetic(shape: GridShape, k: int, y: dict[int, int], unit: int, gcd_all: int) -> None:
    """Self-checks on the y_J once (v-1) | (k-1)D: coprimality with u and the step identities."""
    v = shape.v

    def cells(m: int) -> int:
        return math.prod(shape.e[i] for i in range(shape.s) if not m >> i & 1)

    if y[0] != k or y[shape.full] != 1:
        raise AssertionError("y_∅ must be k and y_I must be 1")
    steps_divide = True
    for m in range(1, shape.full + 1):
        if math.gcd(y[m], unit) != 1:
            raise AssertionError(f"y_J={y[m]} shares a factor with u={unit}")
        for j in members(m):
            step = (k - 1) * (shape.e[j] - 1) * cells(m)
            if y[m & ~(1 << j)] - y[m] != step // (v - 1) or step % (v - 1):
                raise AssertionError("y_J step identity fails")
            steps_divide &= ((shape.e[j] - 1) * cells(m) // gcd_all) % y[m] == 0
    if not steps_divide:
        return
    for m in range(1, shape.full + 1):
        for j in members(m):
            up = y[m & ~(1 << j)]
            if up % y[m] or not 1 < up // y[m] < shape.e[j]:
                raise AssertionError("y_J ratio bounds fail")
