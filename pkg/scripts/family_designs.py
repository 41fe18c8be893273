"""Verdicts, sizes and stabilizer-derived lambda for the layered family blocks."""

import argparse
import time

from gridesigns.constructions import des2, des3, lambda_des2_closed_form
from gridesigns.criteria import check_2design, lambda_of
from gridesigns.matching import SearchGuardExceeded
from gridesigns.symmetry import stabilizer


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-p2", type=int, default=10)
    ap.add_argument("--max-p3", type=int, default=7)
    ap.add_argument("--lambda-up-to", type=int, default=3, help="largest p for stabilizer-derived lambda")
    args = ap.parse_args()
    for family, build, top in (("s=2", des2, args.max_p2), ("s=3", des3, args.max_p3)):
        for p in range(2, top + 1):
            t0 = time.perf_counter()
            blk = build(p)
            ok = check_2design(blk, "all").is_2_design
            line = f"{family} p={p:<2} v={blk.shape.v:<8} k={blk.k:<5} 2-design={ok}"
            if p <= args.lambda_up_to:
                try:
                    order = stabilizer(blk).order
                    lam = lambda_of(blk, order)[0]
                    line += f" |G_B|={order} lambda digits={len(str(lam))}"
                    if build is des2:
                        line += f" closed form agrees={lam == lambda_des2_closed_form(p)}"
                except SearchGuardExceeded:
                    line += " stabilizer search exceeded its budget"
            print(f"{line} ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
