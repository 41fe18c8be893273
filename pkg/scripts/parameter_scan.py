"""Admissible (shape, k) tuples for s factors and block size up to k_max."""

import argparse

from gridesigns.search import param_search, smallest_k


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=12)
    ap.add_argument("--e-cap", type=int)
    args = ap.parse_args()
    tuples = param_search(args.s, args.max_k, args.e_cap)
    least = set(smallest_k(tuples))
    for t in tuples:
        tags = []
        if t.trivial:
            tags.append("complete design")
        if t in least:
            tags.append("least k for shape")
        print(f"k={t.k:>3}  e={list(t.e)}  v={t.v}  {', '.join(tags)}")
    print(f"{len(tuples)} admissible tuples")


if __name__ == "__main__":
    main()
