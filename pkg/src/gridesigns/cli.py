"""Command-line front end.

Exit codes: 0 when the verdict is true or the command succeeded, 1 when the
verdict is false, 2 on usage, input or resource errors (message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .arrays import full_array
from .constructions import ConstructionIntegrityError, construct
from .criteria import (
    InconsistentStabilizer,
    ReducedHypothesisError,
    ResourceGuardExceeded,
    check_2design,
    lambda_of,
    orbit_blocks,
    t_design_bruteforce,
)
from .grid import Block, GridShape, ShapeMismatch, parse_coordset
from .matching import DEFAULT_NODE_GUARD, SearchGuardExceeded
from .search import SearchConfig, block_search, param_search, smallest_k, verify_catalog
from .symmetry import ft_prefilter, is_flag_transitive, stabilizer


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# design files
# ---------------------------------------------------------------------------

def dump_design(block: Block, meta: dict | None = None) -> str:
    """Canonical file text: points in index order, fixed key order, compact separators."""
    doc: dict[str, Any] = {"shape": list(block.shape.e), "block": [list(p) for p in block.points]}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, separators=(",", ":")) + "\n"


def parse_design(text: str) -> tuple[Block, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or "shape" not in doc or "block" not in doc:
        raise InputError("design file needs 'shape' and 'block'")
    extra = set(doc) - {"shape", "block", "meta"}
    if extra:
        raise InputError(f"unexpected keys {sorted(extra)}")
    try:
        shape = GridShape(tuple(int(x) for x in doc["shape"]))
        block = Block.of(shape, [tuple(int(x) for x in p) for p in doc["block"]])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    return block, doc.get("meta") or {}


def load_design(path: str) -> tuple[Block, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    return parse_design(text)


def _emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_construct(args: argparse.Namespace) -> int:
    block = construct(args.family, args.p)
    text = dump_design(block, {"name": f"{args.family}(p={args.p})"})
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    block, _ = load_design(args.file)
    if args.t is not None and args.t != 2:
        blocks = orbit_blocks(block)
        ok, lam_t = t_design_bruteforce(block.shape, blocks, args.t)
        _emit({"t": args.t, "is_t_design": ok, "lambda_t": lam_t, "b": len(blocks),
               "verdict": f"{'is' if ok else 'not'} a {args.t}-design"})
        return 0 if ok else 1
    report = check_2design(block, args.method)
    if report.is_2_design and not args.no_lambda:
        try:
            order = stabilizer(block, args.guard).order
            report.lam, report.b, report.r = lambda_of(block, order)
            report.stab_order = order
        except SearchGuardExceeded:
            report.note = "stabilizer search exceeded its node budget; lambda omitted"
    _emit(report.to_json())
    return 0 if report.is_2_design else 1


def cmd_arrays(args: argparse.Namespace) -> int:
    block, _ = load_design(args.file)
    arr = full_array(block, include_full=args.full)
    entries = arr.to_json()
    if args.J is not None:
        want = parse_coordset(args.J, block.shape.s)
        if want not in arr.tables:
            raise InputError(f"J={args.J} is not stored (use --full for J = I)")
        entries = [e for e in entries if parse_coordset(e["J"], block.shape.s) == want]
    _emit(entries)
    return 0


def cmd_stab(args: argparse.Namespace) -> int:
    block, _ = load_design(args.file)
    st = stabilizer(block, args.guard)
    _emit(st.to_json(is_flag_transitive(block, st)))
    return 0


def cmd_lambda(args: argparse.Namespace) -> int:
    block, _ = load_design(args.file)
    order = stabilizer(block, args.guard).order
    lam, b, r = lambda_of(block, order)
    _emit({"lambda": str(lam), "b": str(b), "r": str(r), "stab_order": str(order)})
    return 0


def cmd_ft(args: argparse.Namespace) -> int:
    block, _ = load_design(args.file)
    pre = ft_prefilter(block.shape, block.k)
    st = stabilizer(block, args.guard)
    ft = is_flag_transitive(block, st)
    _emit({"flag_transitive": ft, "prefilter_passed": pre.passed,
           "y": {str(m): y for m, y in pre.y.items()}, "reasons": pre.reasons})
    return 0 if ft else 1


def cmd_search_params(args: argparse.Namespace) -> int:
    tuples = param_search(args.s, args.max_k, args.e_cap)
    if args.smallest:
        tuples = smallest_k(tuples)
    for t in tuples:
        _emit(t.to_json())
    return 0


def cmd_search_blocks(args: argparse.Namespace) -> int:
    try:
        shape = GridShape(tuple(int(x) for x in args.shape.split(",")))
    except ValueError as exc:
        raise InputError(f"bad --shape: {exc}") from None
    res = block_search(shape, args.k, SearchConfig(guard=args.guard, workers=args.threads))
    for line in res.json_lines():
        _emit(line)
    print(json.dumps({"orbits": len(res.representatives), "survivors": res.survivors,
                      "nodes": res.nodes, "complete": res.complete}), file=sys.stderr)
    return 0


def cmd_catalog_verify(args: argparse.Namespace) -> int:
    checks = verify_catalog()
    for c in checks:
        _emit(c.to_json())
    return 0 if all(c.ok for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gridesigns", description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=1, help="worker processes for block searches")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a family block")
    p.add_argument("--family", choices=["des2", "des3", "des4"], required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="2-design test (or brute-force t-design test)")
    p.add_argument("file")
    p.add_argument("--method", choices=["arrays", "pairs", "alternating", "all"], default="all")
    p.add_argument("--t", type=int, choices=[2, 3, 4])
    p.add_argument("--guard", type=int, default=DEFAULT_NODE_GUARD)
    p.add_argument("--no-lambda", action="store_true", help="skip the stabilizer computation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("arrays", help="array function of the block")
    p.add_argument("file")
    p.add_argument("--J", help="only this coordinate set, e.g. 1,3")
    p.add_argument("--full", action="store_true", help="include J = I")
    p.set_defaults(func=cmd_arrays)

    for name, func, text in (("stab", cmd_stab, "setwise stabilizer"),
                             ("lambda", cmd_lambda, "lambda, b and r from the stabilizer"),
                             ("ft", cmd_ft, "flag-transitivity")):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--guard", type=int, default=DEFAULT_NODE_GUARD)
        p.set_defaults(func=func)

    p = sub.add_parser("search-params", help="admissible (shape, k) tuples")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--e-cap", type=int)
    p.add_argument("--smallest", action="store_true", help="least nontrivial k per shape")
    p.set_defaults(func=cmd_search_params)

    p = sub.add_parser("search-blocks", help="exhaustive orbit search")
    p.add_argument("--shape", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--guard", type=int, default=10**7)
    p.set_defaults(func=cmd_search_blocks)

    p = sub.add_parser("catalog-verify", help="recheck the catalog of small designs")
    p.set_defaults(func=cmd_catalog_verify)
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ShapeMismatch, ConstructionIntegrityError, ReducedHypothesisError,
            InconsistentStabilizer, SearchGuardExceeded, ResourceGuardExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
