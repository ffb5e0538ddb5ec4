"""Tabulate presheaf counts (raw and up to isomorphism) per corpus category.

Useful for sizing budgets: the raw count grows much faster than the
isomorphism-class count once value sets reach 3.
"""

import argparse
import time

from flatcauchy.corpus import curated_categories
from flatcauchy.enumeration import count_presheaves, enumerate_presheaves
from flatcauchy.presheaf import is_flat_elements


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--raw", action="store_true", help="also count without iso reduction (slow)")
    args = ap.parse_args()

    header = f"{'category':14s} {'objs':>4s} {'mors':>4s} {'iso':>7s} {'flat':>5s}"
    print(header + (f" {'raw':>9s}" if args.raw else "") + f" {'time':>7s}")
    for C in curated_categories():
        start = time.perf_counter()
        reps = list(enumerate_presheaves(C, args.max_size))
        flat = sum(is_flat_elements(M) for M in reps)
        row = f"{C.name:14s} {len(C.objects):4d} {len(C.morphisms):4d} {len(reps):7d} {flat:5d}"
        if args.raw:
            row += f" {count_presheaves(C, args.max_size, up_to_iso=False):9d}"
        print(row + f" {time.perf_counter() - start:6.2f}s")


if __name__ == "__main__":
    main()
