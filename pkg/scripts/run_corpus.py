#!/usr/bin/env python3
"""Run the certification suites over every corpus file and print a table.

Sample counts are reduced for the rational member (Fraction arithmetic is
exact but slower); pass --samples to override everywhere.
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from catres.certify import CertConfig, certify_resolution, exit_code_for
from catres.io_json import parse_algebra_or_quiver

CORPUS = Path(__file__).resolve().parents[1] / "corpus"
SLOW_FIELDS = {"rational"}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    worst = 0
    for path in sorted(CORPUS.glob("*.json")):
        obj = json.loads(path.read_text())
        alg = parse_algebra_or_quiver(obj)
        samples = args.samples
        if samples is None:
            samples = 10 if alg.field.kind in SLOW_FIELDS else 30
        t0 = time.time()
        report = certify_resolution(alg, CertConfig(seed=args.seed, samples=samples))
        dt = time.time() - t0
        code = exit_code_for(report)
        worst = max(worst, code)
        conds = " ".join(
            f"{k}={'ok' if v['passed'] else 'FAIL'}"
            for k, v in report["conditions"].items()
            if not v.get("inapplicable")
        )
        print(
            f"{path.name:28s} verdict={report['verdict']:10s} exit={code} "
            f"samples={samples:3d} {dt:6.1f}s  {conds}"
        )
    return 1 if worst == 1 else 0


if __name__ == "__main__":
    sys.exit(main())
