#!/usr/bin/env python3
"""Run every named worked example with its default parameters."""

from infopay.examples import EXAMPLE_NAMES, run_example


def main() -> int:
    failures = 0
    for name in EXAMPLE_NAMES:
        report = run_example(name)
        print(report.render())
        print()
        failures += not report.ok
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
