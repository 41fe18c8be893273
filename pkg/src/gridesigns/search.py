"""Parameter scans and exhaustive block searches for orbit 2-designs."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .catalog import CATALOG
from .criteria import DesignReport, check_2design, lambda_of
from .grid import Block, GridShape, cell_geometry, members
from .symmetry import ft_prefilter, is_flag_transitive, same_orbit, stabilizer


# ---------------------------------------------------------------------------
# parameter scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ParamTuple:
    k: int
    e: tuple[int, ...]

    @property
    def v(self) -> int:
        return math.prod(self.e)

    @property
    def trivial(self) -> bool:
        """k >= v - 1: every k-subset lies in one orbit, so the design is complete."""
        return self.k >= self.v - 1

    def to_json(self) -> dict:
        return {"e": list(self.e), "k": self.k, "v": self.v, "trivial": self.trivial}


def admissible(e: tuple[int, ...], k: int) -> bool:
    """2(v-1) divides k(k-1)(e_j - 1) for every factor j."""
    v = math.prod(e)
    if k < 2 or k > v:
        return False
    return all((k * (k - 1) * (x - 1)) % (2 * (v - 1)) == 0 for x in e)


def _ascending_shapes(s: int, v_max: int, lo: int = 2, prefix: tuple[int, ...] = ()):
    if len(prefix) == s:
        yield prefix
        return
    used = math.prod(prefix)
    left = s - len(prefix)
    x = lo
    while used * x ** left <= v_max:
        yield from _ascending_shapes(s, v_max, x, prefix + (x,))
        x += 1


def param_search(s: int, k_max: int, e_cap: int | None = None) -> list[ParamTuple]:
    """All admissible (ascending e, k) with 2 <= k <= k_max, complete.

    Admissibility at the smallest factor gives 2(v - 1) <= k(k - 1)(e_1 - 1), and
    since v >= e_1^s this bounds e_1 and then v; all shapes under that bound are tried.
    """
    if s < 2 or k_max < 2:
        raise ValueError("need s >= 2 and k_max >= 2")
    out = []
    for k in range(2, k_max + 1):
        e1 = 2
        while 2 * (e1 ** s - 1) <= k * (k - 1) * (e1 - 1):
            v_max = k * (k - 1) * (e1 - 1) // 2 + 1
            for rest in _ascending_shapes(s - 1, v_max // e1, e1):
                e = (e1,) + rest
                if e_cap is not None and max(e) > e_cap:
                    continue
                if admissible(e, k):
                    out.append(ParamTuple(k, e))
            e1 += 1
    out.sort(key=lambda t: (t.k, t.e))
    for t in out:
        if not admissible(t.e, t.k):
            raise AssertionError(f"emitted inadmissible tuple {t}")
    return out


def smallest_k(tuples: list[ParamTuple], include_trivial: bool = False) -> list[ParamTuple]:
    """For each shape, the admissible tuple with the least k."""
    best: dict[tuple[int, ...], ParamTuple] = {}
    for t in tuples:
        if t.trivial and not include_trivial:
            continue
        if t.e not in best or t.k < best[t.e].k:
            best[t.e] = t
    return sorted(best.values(), key=lambda t: (t.k, t.e))


# ---------------------------------------------------------------------------
# exhaustive block search
# ---------------------------------------------------------------------------

@dataclass
class SearchResult:
    shape: GridShape
    k: int
    representatives: list[Block]
    reports: list[DesignReport]
    survivors: int
    nodes: int
    complete: bool
    dedup: str = "same_orbit"
    note: str = ""

    def json_lines(self) -> list[dict]:
        return [
            {"shape": list(self.shape.e), "block": [list(p) for p in rep.points],
             "lambda": None if r.lam is None else str(r.lam),
             "stab_order": None if r.stab_order is None else str(r.stab_order)}
            for rep, r in zip(self.representatives, self.reports)
        ]


def square_targets(shape: GridShape, k: int) -> dict[int, int] | None:
    """Required sum of squared J-cell counts per nonempty proper J, or None if some is fractional."""
    v = shape.v
    out = {}
    for m in shape.proper_masks():
        c, _ = cell_geometry(shape, m)
        num = k * (v - 1) + k * (k - 1) * (c - 1)
        if num % (v - 1):
            return None
        out[m] = num // (v - 1)
    return out


def _cell_codes(shape: GridShape) -> tuple[list[int], np.ndarray]:
    masks = shape.proper_masks()
    pts = np.array(list(shape.points()), dtype=np.int64)
    codes = np.zeros((len(masks), len(pts)), dtype=np.int64)
    for r, m in enumerate(masks):
        axes = members(m)
        codes[r] = np.ravel_multi_index(tuple(pts[:, i] for i in axes), [shape.e[i] for i in axes])
    return masks, codes


def _search_shard(shape_e: tuple[int, ...], k: int, second: int | None, prune: bool,
                  guard: int) -> tuple[list[tuple[int, ...]], int, bool]:
    """Origin-anchored blocks with the given second-smallest index; returns (index tuples, nodes, finished)."""
    shape = GridShape(shape_e)
    v = shape.v
    masks, codes = _cell_codes(shape)
    targets = square_targets(shape, k)
    if targets is None:
        return [], 0, True
    limit = [targets[m] for m in masks]
    rows = range(len(masks))
    code_lists = [list(map(int, codes[r])) for r in rows]
    counts = [[0] * (max(code_lists[r]) + 1) for r in rows]
    sq = [0] * len(masks)
    chosen: list[int] = []
    found: list[tuple[int, ...]] = []
    nodes = 0

    def add(idx: int) -> bool:
        ok = True
        for r in rows:
            cell = code_lists[r][idx]
            x = counts[r][cell]
            counts[r][cell] = x + 1
            sq[r] += 2 * x + 1
            if prune and sq[r] + (k - len(chosen) - 1) > limit[r]:
                ok = False
        chosen.append(idx)
        return ok

    def remove() -> None:
        idx = chosen.pop()
        for r in rows:
            cell = code_lists[r][idx]
            counts[r][cell] -= 1
            sq[r] -= 2 * counts[r][cell] + 1

    def extend(start: int) -> bool:
        nonlocal nodes
        if len(chosen) == k:
            if sq == limit:
                found.append(tuple(chosen))
            return True
        need = k - len(chosen)
        for idx in range(start, v - need + 1):
            nodes += 1
            if nodes > guard:
                return False
            if add(idx):
                if not extend(idx + 1):
                    remove()
                    return False
            remove()
        return True

    add(0)
    if k == 1:
        finished = True
        if sq == limit:
            found.append((0,))
    elif second is None:
        finished = extend(1)
    else:
        nodes += 1
        finished = True
        if add(second):
            finished = extend(second + 1)
        remove()
    return found, nodes, finished


def _signature(block: Block) -> tuple:
    from .arrays import full_array

    arr = full_array(block)
    return tuple(tuple(sorted(np.ravel(arr[m]).tolist())) for m in range(1, block.shape.full))


def dedupe(blocks: list[Block]) -> list[Block]:
    """One representative per G-orbit, keeping the first block met in each orbit."""
    reps: list[Block] = []
    by_sig: dict[tuple, list[Block]] = {}
    for blk in blocks:
        sig = _signature(blk)
        bucket = by_sig.setdefault(sig, [])
        if any(same_orbit(blk, other) is not None for other in bucket):
            continue
        bucket.append(blk)
        reps.append(blk)
    return reps


@dataclass(frozen=True)
class SearchConfig:
    guard: int = 10**7          # node budget over all shards
    prune: bool = True          # cut partial blocks whose squared counts overshoot
    workers: int = 1            # processes; shards are split by second point
    with_lambda: bool = True    # stabilizer and lambda per representative


def block_search(shape: GridShape, k: int, config: SearchConfig | None = None, **overrides) -> SearchResult:
    """All G-orbits of k-subsets whose orbit is a 2-design, up to the node budget.

    Keyword overrides replace fields of ``config``.
    """
    cfg = replace(config or SearchConfig(), **overrides)
    guard, prune, workers, with_lambda = cfg.guard, cfg.prune, cfg.workers, cfg.with_lambda
    v = shape.v
    if not 1 <= k <= v:
        return SearchResult(shape, k, [], [], 0, 0, True, note="block size outside 1..v")
    if square_targets(shape, k) is None:
        return SearchResult(shape, k, [], [], 0, 0, True, note="array targets are fractional")
    shards = [None] if k == 1 else list(range(1, v - k + 2))
    args = [(shape.e, k, sec, prune, guard) for sec in shards]
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_shard, *zip(*args)))
    else:
        parts = []
        spent = 0
        for a in args:
            res = _search_shard(*a[:-1], guard - spent)
            parts.append(res)
            spent += res[1]
            if not res[2]:
                break
    found = [idx for part in parts for idx in part[0]]
    nodes = sum(part[1] for part in parts)
    complete = all(part[2] for part in parts) and len(parts) == len(shards)
    blocks = [Block(shape, tuple(shape.decode(i) for i in idx)) for idx in found]
    reps = dedupe(blocks)
    reports = []
    for rep in reps:
        rpt = check_2design(rep, "all")
        if not rpt.is_2_design:
            raise AssertionError("search emitted a block that fails the design test")
        if with_lambda:
            order = stabilizer(rep).order
            rpt.lam, rpt.b, rpt.r = lambda_of(rep, order)
            rpt.stab_order = order
        reports.append(rpt)
    return SearchResult(shape, k, reps, reports, len(blocks), nodes, complete)


# ---------------------------------------------------------------------------
# catalog check
# ---------------------------------------------------------------------------

@dataclass
class CatalogCheck:
    row: int
    shape: tuple[int, ...]
    verdicts: dict[str, bool]
    lam: int
    expected_lam: int
    stab_order: int
    flag_transitive: bool
    prefilter_passed: bool
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_json(self) -> dict:
        return {
            "row": self.row, "shape": list(self.shape), "verdicts": self.verdicts,
            "lambda": str(self.lam), "expected_lambda": str(self.expected_lam),
            "stab_order": str(self.stab_order), "flag_transitive": self.flag_transitive,
            "ft_prefilter": self.prefilter_passed, "ok": self.ok, "problems": self.problems,
        }


class CatalogMismatch(AssertionError):
    pass


def verify_catalog(strict: bool = False) -> list[CatalogCheck]:
    out = []
    for row in CATALOG:
        blk = row.block()
        verdicts = {m: check_2design(blk, m).is_2_design for m in ("arrays", "pairs", "alternating")}
        stab = stabilizer(blk)
        lam = lambda_of(blk, stab.order)[0]
        ft = is_flag_transitive(blk, stab)
        pre = ft_prefilter(blk.shape, blk.k).passed
        problems = []
        if not all(verdicts.values()):
            problems.append(f"not a 2-design by {[m for m, ok in verdicts.items() if not ok]}")
        if blk.k != row.k:
            problems.append(f"block size {blk.k}, listed {row.k}")
        if lam != row.lam:
            problems.append(f"lambda {lam}, listed {row.lam}")
        if ft:
            problems.append("flag-transitive")
        if pre:
            problems.append("flag-transitivity prefilter passes")
        check = CatalogCheck(row.row, row.shape, verdicts, lam, row.lam, stab.order, ft, pre, problems)
        if strict and problems:
            raise CatalogMismatch(f"row {row.row}: {'; '.join(problems)}")
        out.append(check)
    return out
