#!/usr/bin/env python3
"""Print the Hom^0 matrix over the spanning rectangle, before and after psi.

The two matrices agree entry by entry; the script exists to eyeball the
preserved dimensions and how fast they grow with n.

Usage: python scripts/hom_matrix.py [--n N]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from flopcalc.flop import SpanningClass, apply_psi, enumerate_spanning_class  # noqa: E402
from flopcalc.pbundle import hom_dims  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2)
    args = parser.parse_args()

    classes = enumerate_spanning_class(args.n, SpanningClass.OMEGA_PRIME)
    labels = [f"({c.j},{c.k})" for c in classes]
    width = max(len(s) for s in labels) + 1

    def render(pairs_fn):
        print(" " * width + "".join(s.rjust(width) for s in labels))
        for a, label in zip(classes, labels):
            row = [str(pairs_fn(a, b).get(0)).rjust(width) for b in classes]
            print(label.rjust(width) + "".join(row))

    print(f"hom^0 on the source (n={args.n}):")
    render(hom_dims)
    print()
    print("hom^0 of the psi images:")
    render(lambda a, b: hom_dims(apply_psi(a), apply_psi(b)))

    mismatches = sum(
        1
        for a in classes
        for b in classes
        if hom_dims(a, b) != hom_dims(apply_psi(a), apply_psi(b))
    )
    print(f"\nmismatched pairs: {mismatches} of {len(classes) ** 2}")
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
