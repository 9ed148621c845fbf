#!/usr/bin/env python3
"""Regenerate the bundled zero-ordinate table.

Computes the first N nontrivial zero ordinates with mpmath at 30 digits,
writes them at 15 significant digits, and re-verifies every entry with the
in-repo verifier before replacing the data file.

Usage: python tools/regenerate_zero_table.py [N]
"""

import sys
from pathlib import Path

import mpmath as mp

from zetalab.zeros import verify_zero

OUT = Path(__file__).resolve().parent.parent / "src" / "zetalab" / "data" / "zeros100.txt"


def main(count: int = 100) -> int:
    mp.mp.dps = 30
    lines = []
    for n in range(1, count + 1):
        gamma = float(mp.zetazero(n).imag)
        if not verify_zero(gamma, tol=1e-6):
            print(f"ordinate {n} failed verification: {gamma}", file=sys.stderr)
            return 1
        lines.append(mp.nstr(mp.zetazero(n).imag, 15, strip_zeros=False))
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {count} verified ordinates to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main(int(sys.argv[1]) if len(sys.argv) > 1 else 100))
