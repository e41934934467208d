"""Print the consequence-relation property matrix with its discrepancy report.

Usage: python3 scripts/reproduce_matrix.py [--trials N] [--json PATH]
"""

import argparse
import time
from pathlib import Path

from aol.metatheory import AuditConfig, property_matrix
from aol.metatheory.matrix import DEFAULT_TRIALS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the full matrix as JSON")
    args = ap.parse_args()
    start = time.perf_counter()
    mat = property_matrix(AuditConfig(seed=args.seed, trials=args.trials, frame_class="order"))
    print(mat.to_table())
    print(f"\n{time.perf_counter() - start:.1f}s")
    if args.json:
        Path(args.json).write_text(mat.to_json() + "\n")


if __name__ == "__main__":
    main()
