#!/usr/bin/env python3
"""Run every verification suite and print the markdown report.

Usage: python scripts/run_verification.py [--max-n N] [--out report.md]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from flopcalc.cli import _render_verify_markdown  # noqa: E402
from flopcalc.verify import exit_code, run_all  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=4)
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    results = run_all(args.max_n)
    report = _render_verify_markdown(results)
    if args.out:
        args.out.write_text(report)
        print(f"wrote {args.out} ({len(results)} checks)")
    else:
        print(report)
    return exit_code(results)


if __name__ == "__main__":
    sys.exit(main())
