"""Recheck every catalog row: verdicts, stabilizer order, lambda and flag-transitivity."""

import argparse
import json
import time

from gridesigns.search import verify_catalog


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="emit JSON lines instead of a table")
    args = ap.parse_args()
    t0 = time.perf_counter()
    checks = verify_catalog()
    if args.json:
        for c in checks:
            print(json.dumps(c.to_json()))
        return
    print(f"{'row':>3}  {'shape':<10} {'|G_B|':>5} {'lambda':>7} {'listed':>7}  ft    ok")
    for c in checks:
        print(f"{c.row:>3}  {str(list(c.shape)):<10} {c.stab_order:>5} {c.lam:>7} {c.expected_lam:>7}  "
              f"{str(c.flag_transitive):<5} {c.ok}")
    print(f"{sum(c.ok for c in checks)}/{len(checks)} rows agree ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
