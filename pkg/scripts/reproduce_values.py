"""Recompute every golden value and print the comparison table.

Usage: python3 scripts/reproduce_values.py [--grid N] [--no-search] [--json]
"""
import argparse
import json
import sys
import time

from torricelli.verification import all_passed, format_table, verify_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=4096)
    ap.add_argument("--no-search", action="store_true", help="skip the orientation searches")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    t0 = time.perf_counter()
    rows = verify_suite(grid=args.grid, search=not args.no_search)
    if args.json:
        print(json.dumps([r.to_dict() for r in rows], indent=2))
    else:
        print(format_table(rows))
        print(f"\n{sum(r.passed for r in rows)}/{len(rows)} passed in {time.perf_counter() - t0:.1f} s")
    return 0 if all_passed(rows) else 1


if __name__ == "__main__":
    sys.exit(main())
