"""Exhaustive orbit search for 2-design blocks on a small grid, with lambda per orbit."""

import argparse
import time

from gridesigns.arrays import arrays_equivalent, full_array
from gridesigns.catalog import CATALOG
from gridesigns.grid import GridShape
from gridesigns.search import block_search
from gridesigns.symmetry import same_orbit


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shape", default="2,2,4")
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--guard", type=int, default=10**7)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    shape = GridShape(tuple(int(x) for x in args.shape.split(",")))
    t0 = time.perf_counter()
    res = block_search(shape, args.k, guard=args.guard, workers=args.workers)
    listed = [row for row in CATALOG if row.shape == shape.e and row.k == args.k]
    print(f"shape {list(shape.e)} k={args.k}: {len(res.representatives)} orbits from {res.survivors} "
          f"anchored survivors, {res.nodes} nodes, complete={res.complete}")
    for rep, rpt in zip(res.representatives, res.reports):
        orbit_row = next((row.row for row in listed if same_orbit(row.block(), rep) is not None), None)
        array_row = next((row.row for row in listed
                          if arrays_equivalent(full_array(row.block()), full_array(rep)) is not None), None)
        digits = ["".join(map(str, p)) for p in rep.points]
        print(f"  lambda={rpt.lam:<4} |G_B|={rpt.stab_order:<3} {' '.join(digits)}  "
              f"catalog orbit: {orbit_row}  array-equivalent row: {array_row}")
    print(f"{time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
