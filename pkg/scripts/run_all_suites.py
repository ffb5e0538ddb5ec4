"""Run every verification suite over a corpus and write one JSON report.

    python3 scripts/run_all_suites.py --config data/small_config.json --out results.json
"""

import argparse
import json
import sys

from flatcauchy.corpus import CorpusConfig, build_corpus
from flatcauchy.suites import SUITE_NAMES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--config", help="JSON corpus config (defaults to the built-in budgets)")
    ap.add_argument("--suite", action="append", choices=SUITE_NAMES, help="repeatable; default all")
    ap.add_argument("--out", help="write the combined report here instead of stdout")
    args = ap.parse_args()

    config = CorpusConfig.from_json(args.config) if args.config else CorpusConfig()
    corpus = build_corpus(config)
    reports = []
    for name in args.suite or SUITE_NAMES:
        r = run_suite(name, corpus)
        print(f"{name:24s} {r.passed:6d}/{r.attempted:<6d} {r.wall_time:7.2f}s", file=sys.stderr)
        reports.append(r.to_dict())
    payload = json.dumps({"corpus": corpus.summary(), "reports": reports}, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0 if all(not r["counterexamples"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
