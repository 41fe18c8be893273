"""Design criteria for the orbit of a block under the full product group.

Three equivalent tests decide whether the orbit is a 2-design:

``arrays``       for every nonempty proper J the sum of squared J-cell counts equals
                 k + k(k-1)(c_J - 1)/(v - 1);
``pairs``        for every nonempty J the number n_J of point pairs of B that differ
                 exactly in the coordinates of J equals k(k-1)/(2(v-1)) * prod_{j in J}(e_j - 1);
``alternating``  the pairs test rewritten through inclusion-exclusion on squared counts,
                 indexed by the complementary set.

All comparisons are done on cross-multiplied integers, so no rounding is involved.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .arrays import ArrayFunction
from .grid import Block, GridShape, cell_geometry, complement, members, render, subsets

METHODS = ("arrays", "pairs", "alternating")


class InconsistentStabilizer(ValueError):
    """A claimed stabilizer order does not yield integral design parameters."""


class ReducedHypothesisError(ValueError):
    """The inputs of the reduced check violate one of its hypotheses."""


class ResourceGuardExceeded(RuntimeError):
    """A brute-force check would exceed its work budget."""


@dataclass
class DesignReport:
    is_2_design: bool
    v: int
    k: int
    method: str
    n: dict[int, int]
    failing: list[int] = field(default_factory=list)
    checked: list[int] = field(default_factory=list)
    lam: int | None = None
    b: int | None = None
    r: int | None = None
    stab_order: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "is_2_design": self.is_2_design,
            "v": self.v,
            "k": self.k,
            "method": self.method,
            "n": {render(m): c for m, c in sorted(self.n.items())},
            "lambda": None if self.lam is None else str(self.lam),
            "b": None if self.b is None else str(self.b),
            "failing_J": [render(m) for m in self.failing],
        }
        if self.stab_order is not None:
            out["stab_order"] = str(self.stab_order)
        if self.note:
            out["note"] = self.note
        return out


# ---------------------------------------------------------------------------
# squared counts and pair statistics
# ---------------------------------------------------------------------------

def square_sums(block: Block) -> dict[int, int]:
    """Sum over J-cells of the squared count, for every J ⊆ I (J = ∅ gives k², J = I gives k)."""
    shape = block.shape
    coords = np.array(block.points, dtype=np.int64).reshape(block.k, shape.s)
    out = {}
    for m in range(shape.full + 1):
        axes = members(m)
        if not axes or block.k == 0:
            out[m] = block.k * block.k
            continue
        codes = np.ravel_multi_index(tuple(coords[:, i] for i in axes), [shape.e[i] for i in axes])
        _, counts = np.unique(codes, return_counts=True)
        out[m] = int(np.dot(counts, counts))
    return out


def square_sums_from_array(array: ArrayFunction) -> dict[int, int]:
    return {m: array.sum_squares(m) for m in array.tables}


def n_direct(block: Block) -> dict[int, int]:
    """n_J by comparing every pair of block points."""
    s = block.shape.s
    out = {m: 0 for m in range(1, block.shape.full + 1)}
    for p, q in itertools.combinations(block.points, 2):
        diff = 0
        for i in range(s):
            if p[i] != q[i]:
                diff |= 1 << i
        out[diff] += 1
    return out


def n_from_square_sums(shape: GridShape, sq: dict[int, int]) -> dict[int, int]:
    """n_J = 1/2 * sum_{S ⊆ J} (-1)^{|S|} sq[J^c ∪ S]."""
    out = {}
    for m in range(1, shape.full + 1):
        rest = complement(m, shape.s)
        total = sum((-1) ** bin(sub).count("1") * sq[rest | sub] for sub in subsets(m))
        if total % 2:
            raise ValueError("odd inclusion-exclusion total; square sums are inconsistent")
        out[m] = total // 2
    return out


def n_from_arrays(array: ArrayFunction) -> dict[int, int]:
    """n_J computed from an array function that includes the J = I table."""
    if not array.includes_full:
        raise ValueError("n_J needs the J = I table; build the array with include_full=True")
    return n_from_square_sums(array.shape, square_sums_from_array(array))


# ---------------------------------------------------------------------------
# the three criteria
# ---------------------------------------------------------------------------

def _prod_minus_one(shape: GridShape, mask: int) -> int:
    return math.prod(shape.e[i] - 1 for i in members(mask))


def arrays_failures(shape: GridShape, k: int, sq: dict[int, int],
                    masks: Iterable[int] | None = None) -> list[int]:
    v = shape.v
    bad = []
    for m in (shape.proper_masks() if masks is None else masks):
        c, _ = cell_geometry(shape, m)
        if (v - 1) * sq[m] != k * (v - 1) + k * (k - 1) * (c - 1):
            bad.append(m)
    return bad


def pairs_failures(shape: GridShape, k: int, n: dict[int, int]) -> list[int]:
    v = shape.v
    return [m for m in range(1, shape.full + 1)
            if 2 * (v - 1) * n[m] != k * (k - 1) * _prod_minus_one(shape, m)]


def alternating_failures(shape: GridShape, k: int, sq: dict[int, int]) -> list[int]:
    v = shape.v
    bad = []
    for m in range(shape.full):
        rest = complement(m, shape.s)
        lhs = sum((-1) ** bin(sub).count("1") * sq[m | sub] for sub in subsets(rest))
        if (v - 1) * lhs != k * (k - 1) * _prod_minus_one(shape, rest):
            bad.append(m)
    return bad


def trivial_subsets_hold(block: Block) -> bool:
    """The arrays equation at J = ∅ and J = I holds for every block."""
    shape, k, v = block.shape, block.k, block.shape.v
    sq = square_sums(block)
    ok = True
    for m in (0, shape.full):
        c, _ = cell_geometry(shape, m)
        ok &= (v - 1) * sq[m] == k * (v - 1) + k * (k - 1) * (c - 1)
    return ok


def check_2design(block: Block, method: str = "arrays") -> DesignReport:
    """Decide whether the G-orbit of ``block`` is a 2-design, by the named criterion.

    ``method="all"`` runs every criterion and raises if their verdicts disagree.
    Failing sets are reported in each criterion's own indexing: ``alternating``
    is indexed by the complement of the corresponding ``pairs`` subset.
    """
    shape, k = block.shape, block.k
    sq = square_sums(block)
    n = n_from_square_sums(shape, sq)
    if k < 2:
        return DesignReport(False, shape.v, k, method, n, note="block size below 2")
    if method == "all":
        reports = [check_2design(block, m) for m in METHODS]
        verdicts = {r.is_2_design for r in reports}
        if len(verdicts) != 1:
            raise AssertionError(f"criteria disagree: {[(r.method, r.is_2_design) for r in reports]}")
        rep = reports[0]
        rep.method = "all"
        return rep
    if method == "arrays":
        checked = shape.proper_masks()
        bad = arrays_failures(shape, k, sq, checked)
    elif method == "pairs":
        checked = list(range(1, shape.full + 1))
        bad = pairs_failures(shape, k, n)
    elif method == "alternating":
        checked = list(range(shape.full))
        bad = alternating_failures(shape, k, sq)
    else:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS + ('all',)}")
    return DesignReport(not bad, shape.v, k, method, n, failing=bad, checked=checked)


def check_reduced(reduced: Block | Sequence[Sequence[int]], layered: Block | Sequence[Sequence[int]],
                  shape: GridShape) -> DesignReport:
    """Verdict for B = (B' x {0}) ∪ B_s using only the subsets J that avoid the last factor.

    Both hypotheses are verified: B' has the family block size and its own orbit
    is a 2-design, and B_s has exactly one point in every nonzero last-factor layer.
    """
    from .constructions import des_parameters

    s = shape.s
    p = des_parameters(shape)
    if p is None:
        raise ReducedHypothesisError(f"shape {list(shape.e)} is not a family shape")
    red_pts = [tuple(x) for x in (reduced.points if isinstance(reduced, Block) else reduced)]
    lay_pts = [tuple(x) for x in (layered.points if isinstance(layered, Block) else layered)]

    # hypothesis (a)
    if len(set(red_pts)) != p ** (2 ** (s - 2)) + 1:
        raise ReducedHypothesisError(
            f"hypothesis (a): reduced block has {len(set(red_pts))} points, expected {p ** (2 ** (s - 2)) + 1}")
    if s == 2:
        # the reduced orbit is the complete design on one factor
        if not all(len(q) == 1 and 0 <= q[0] < shape.e[0] for q in red_pts):
            raise ReducedHypothesisError("hypothesis (a): reduced block does not lie in the first factor")
    else:
        reduced_block = Block.of(shape.e[:-1], red_pts)
        if not check_2design(reduced_block).is_2_design:
            raise ReducedHypothesisError("hypothesis (a): the reduced block's orbit is not a 2-design")

    # hypothesis (b)
    layers = Counter()
    for q in lay_pts:
        shape.check_point(q)
        layers[q[-1]] += 1
    bad = [d for d in range(1, shape.e[-1]) if layers.get(d, 0) != 1]
    if bad or layers.get(0, 0):
        where = bad[0] if bad else 0
        raise ReducedHypothesisError(
            f"hypothesis (b): layer {where} holds {layers.get(where, 0)} points of the layered part")

    block = Block.of(shape, [q + (0,) for q in red_pts] + lay_pts)
    sq = square_sums(block)
    masks = [m for m in shape.proper_masks() if not m >> (s - 1) & 1]
    failing = arrays_failures(shape, block.k, sq, masks)
    n = n_from_square_sums(shape, sq)
    return DesignReport(not failing, shape.v, block.k, "reduced", n, failing=failing, checked=masks)


# ---------------------------------------------------------------------------
# parameters from the stabilizer, and brute-force t-design counts
# ---------------------------------------------------------------------------

def lambda_of(block: Block, stab_order: int) -> tuple[int, int, int]:
    """(λ, b, r) of the orbit design given |G_B|."""
    shape, k, v = block.shape, block.k, block.shape.v
    order = shape.group_order
    if stab_order <= 0 or order % stab_order:
        raise InconsistentStabilizer(f"{stab_order} does not divide |G| = {order}")
    b = order // stab_order
    num, den = k * (k - 1) * b, v * (v - 1)
    if num % den:
        raise InconsistentStabilizer(f"λ = {num}/{den} is not an integer")
    if (k * b) % v:
        raise InconsistentStabilizer(f"r = {k * b}/{v} is not an integer")
    return num // den, b, k * b // v


def t_design_counts(shape: GridShape, blocks: Sequence[Block], t: int,
                    guard: int = 10**8) -> Counter:
    """For every t-subset of points, the number of blocks containing it (zeros included)."""
    if not 1 <= t <= 4:
        raise ValueError("t must lie in 1..4")
    v = shape.v
    work = math.comb(v, t) + sum(math.comb(b.k, t) for b in blocks)
    if work > guard:
        raise ResourceGuardExceeded(f"{work} incidence tests exceed the budget {guard}")
    hits: Counter = Counter()
    for blk in blocks:
        idx = blk.indices()
        hits.update(itertools.combinations(idx, t))
    tally: Counter = Counter(hits.values())
    zero = math.comb(v, t) - len(hits)
    if zero:
        tally[0] += zero
    return tally


def t_design_bruteforce(shape: GridShape, blocks: Sequence[Block], t: int,
                        guard: int = 10**8) -> tuple[bool, int | None]:
    """(is a t-design, λ_t or None)."""
    tally = t_design_counts(shape, blocks, t, guard)
    if len(tally) == 1:
        return True, next(iter(tally))
    return False, None


def orbit_blocks(block: Block, limit: int = 10**6) -> list[Block]:
    """The full G-orbit of a block, by closure under factor transpositions."""
    shape = block.shape
    gens = []
    for i, n in enumerate(shape.e):
        for a in range(n - 1):
            perm = list(range(n))
            perm[a], perm[a + 1] = perm[a + 1], perm[a]
            gens.append((i, perm))
    seen = {block.points}
    stack = [block.points]
    while stack:
        pts = stack.pop()
        for i, perm in gens:
            img = tuple(sorted(pt[:i] + (perm[pt[i]],) + pt[i + 1:] for pt in pts))
            if img not in seen:
                seen.add(img)
                if len(seen) > limit:
                    raise ResourceGuardExceeded(f"orbit exceeds {limit} blocks")
                stack.append(img)
    return [Block(shape, pts) for pts in sorted(seen)]
