"""Independent reference computations used as test oracles.

Everything here works on plain tuples and itertools, sharing no code with the
package beyond reading ``block.points`` and ``shape.e``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter


def group_elements(e):
    """Every element of the product of symmetric groups, as tuples of image tuples."""
    return itertools.product(*(itertools.permutations(range(n)) for n in e))


def act(g, pt):
    return tuple(g[i][x] for i, x in enumerate(pt))


def brute_stabilizer_order(e, points) -> int:
    """Count g in G with B^g = B by walking all of G."""
    pts = frozenset(points)
    return sum(1 for g in group_elements(e) if frozenset(act(g, p) for p in pts) == pts)


def brute_orbit(e, points) -> set[frozenset]:
    return {frozenset(act(g, p) for p in points) for g in group_elements(e)}


def canonical(e, points) -> tuple:
    """Least sorted image of the block over all of G."""
    return min(tuple(sorted(act(g, p) for p in points)) for g in group_elements(e))


def pair_counts(e, blocks) -> Counter:
    """Number of blocks through each unordered point pair (zeros included)."""
    hits = Counter()
    for blk in blocks:
        hits.update(itertools.combinations(sorted(blk), 2))
    v = math.prod(e)
    tally = Counter(hits.values())
    zero = math.comb(v, 2) - len(hits)
    if zero:
        tally[0] += zero
    return tally


def is_orbit_2design(e, points) -> bool:
    """Enumerate the whole orbit and count pairs directly."""
    if len(points) < 2:
        return False
    return len(pair_counts(e, brute_orbit(e, points))) == 1


def disagreement_counts(e, points) -> dict[frozenset, int]:
    """n_J keyed by the 0-based set of coordinates where the two points differ."""
    out = Counter()
    for p, q in itertools.combinations(points, 2):
        out[frozenset(i for i in range(len(e)) if p[i] != q[i])] += 1
    return out


def pairs_rule(e, points) -> bool:
    """2-design test from pair disagreement counts alone."""
    k, v = len(points), math.prod(e)
    if k < 2:
        return False
    n = disagreement_counts(e, points)
    for r in range(1, len(e) + 1):
        for J in itertools.combinations(range(len(e)), r):
            if 2 * (v - 1) * n.get(frozenset(J), 0) != k * (k - 1) * math.prod(e[j] - 1 for j in J):
                return False
    return True


def search_oracle(e, k) -> list[tuple]:
    """Canonical forms of every G-orbit of origin-anchored k-blocks passing the pairs rule."""
    pts = list(itertools.product(*(range(n) for n in e)))
    origin, rest = pts[0], pts[1:]
    found = set()
    for combo in itertools.combinations(rest, k - 1):
        blk = (origin,) + combo
        if pairs_rule(e, blk):
            found.add(canonical(e, blk))
    return sorted(found)


def des3_2_stabilizer_order(block) -> int:
    """|G_B| for the three-factor p = 2 block by walking S_7 x S_3 and counting fibre matchings in S_13."""
    e = block.shape.e
    fibres = {}
    for p in block.points:
        fibres.setdefault(p[-1], []).append(p[:-1])
    target = Counter(frozenset(f) for f in fibres.values())
    empty = e[-1] - len(fibres)
    total = 0
    for g1 in itertools.permutations(range(e[0])):
        for g2 in itertools.permutations(range(e[1])):
            image = Counter(frozenset((g1[a], g2[b]) for a, b in f) for f in fibres.values())
            if image == target:
                total += math.prod(math.factorial(m) for m in target.values()) * math.factorial(empty)
    return total


def des4_2_stabilizer_order(block) -> int:
    """|G_B| for the four-factor p = 2 block.

    G_B fixes the unique 17-point last-factor layer, so it acts on the 13
    projected layers of the third factor.  Every occupied cell over the first
    three factors holds two points in consecutive last-factor layers, so the
    last factor contributes an independent swap per cell: |G_B| = 2^120 * H,
    where H counts (g1, g2, g3) in S_7 x S_3 x S_13 fixing layer 0 and
    permuting the occupied three-factor cells.
    """
    base = [p[:3] for p in block.points if p[3] == 0]
    occupied = Counter(p[:3] for p in block.points if p[3] != 0)
    if set(occupied.values()) != {2} or len(occupied) != 120:
        raise AssertionError("unexpected cell structure")
    cells = set(occupied)
    fib = {}
    for x1, x2, c in base:
        fib.setdefault(c, set()).add((x1, x2))
    H = 0
    for g1 in itertools.permutations(range(7)):
        for g2 in itertools.permutations(range(3)):
            img = {c: frozenset((g1[a], g2[b]) for a, b in f) for c, f in fib.items()}
            if img[0] != frozenset(fib[0]):
                continue
            options = []
            for c in range(1, 13):
                opts = [d for d in range(1, 13) if frozenset(fib[d]) == img[c]]
                if not opts:
                    break
                options.append(opts)
            else:
                for choice in itertools.product(*options):
                    if len(set(choice)) != 12:
                        continue
                    g3 = (0,) + choice
                    if all((g1[a], g2[b], g3[c]) in cells for a, b, c in cells):
                        H += 1
    return 2 ** 120 * H
