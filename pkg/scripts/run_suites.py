#!/usr/bin/env python3
"""Run the property suites and print a one-line summary per suite.

    python3 scripts/run_suites.py                 # every suite, default sizes
    python3 scripts/run_suites.py inertia clique  # a selection
    python3 scripts/run_suites.py --seed 3 --out reports.json
"""

import argparse
import json
import sys
import time

from lif.suites import SUITES


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("suites", nargs="*", metavar="SUITE", help=f"any of: {', '.join(sorted(SUITES))}")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="write the full JSON reports here")
    args = ap.parse_args(argv)

    unknown = sorted(set(args.suites) - set(SUITES))
    if unknown:
        ap.error(f"unknown suite(s): {', '.join(unknown)}")
    names = args.suites or list(SUITES)
    reports, failed = [], False
    for name in names:
        t0 = time.perf_counter()
        rep = SUITES[name](seed=args.seed)
        dt = time.perf_counter() - t0
        failed |= not rep.ok
        status = "ok" if rep.ok else "FAIL"
        print(f"{name:20s} {status:4s} cases={rep.cases:<6d} checks={rep.checks:<7d} "
              f"violations={rep.violations:<3d} {dt:6.1f}s")
        reports.append(rep.to_json())

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"seed": args.seed, "suites": reports}, fh, indent=2, sort_keys=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
