"""Sweep the flat value-set bound beyond the default corpus.

For every curated category with at most --max-morphisms morphisms, take all
presheaves with value sets up to --max-size and report, for the flat ones,
how tight |M(c)| <= max_d |Hom(c, d)| is. Exits 1 on any violation.
"""

import argparse
import sys
from collections import Counter

from flatcauchy.corpus import curated_categories
from flatcauchy.enumeration import enumerate_presheaves
from flatcauchy.presheaf import flat_value_bound, is_flat_elements


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--max-morphisms", type=int, default=6)
    args = ap.parse_args()

    violations = 0
    for C in curated_categories():
        if not C.objects or len(C.morphisms) > args.max_morphisms:
            continue
        slack = Counter()
        flat = 0
        for M in enumerate_presheaves(C, args.max_size):
            if not is_flat_elements(M):
                continue
            flat += 1
            if not flat_value_bound(M):
                violations += 1
                print(f"violation: {M.name} sizes={list(M.sizes())}")
            for c in C.objects:
                cap = max(len(C.hom(c, d)) for d in C.objects)
                slack[cap - len(M.sets[c])] += 1
        print(f"{C.name:14s} flat={flat:4d} slack histogram={dict(sorted(slack.items()))}")
    print(f"violations: {violations}")
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
