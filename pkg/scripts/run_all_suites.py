#!/usr/bin/env python3
"""Run every randomized property suite and print each summary.

Exits nonzero if any suite reports a failing claim.
"""

import argparse

from infopay.suites import SUITE_NAMES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--mode", choices=("rational", "float"), default="rational")
    args = ap.parse_args()
    failures = 0
    for name in SUITE_NAMES:
        result = run_suite(
            name, trials=args.trials, seed=args.seed, mode=args.mode
        )
        print(result.render())
        print()
        failures += not result.ok
    print(f"{len(SUITE_NAMES) - failures}/{len(SUITE_NAMES)} suites passed")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
