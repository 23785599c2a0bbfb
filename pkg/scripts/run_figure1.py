#!/usr/bin/env python3
"""Emit the default accuracy-sweep CSV (exact fractions, 1/520 grid).

Usage: python3 scripts/run_figure1.py [out.csv]
Writes figure1.csv in the current directory when no path is given.
"""

import sys

from infopay.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "figure1.csv"
    code = main(["sweep-figure1", "--out", out])
    if code == 0:
        print(f"wrote {out}")
    raise SystemExit(code)
