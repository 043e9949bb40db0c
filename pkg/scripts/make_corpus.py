#!/usr/bin/env python3
"""Regenerate corpus/*.json from the library builders.

The truncated polynomial algebras ship as structure-constant files; the
quiver-presented members ship as quiver files so the CLI exercises the
frontend.  Committed files must match the output byte for byte (tested).
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from catres.corpus import truncated_poly_algebra
from catres.io_json import QUIVER_FORMAT, algebra_to_json
from catres.linalg import FieldSpec

OUT = Path(__file__).resolve().parents[1] / "corpus"


def quiver_json(field, vertices, arrows, relations, length_bound):
    return {
        "format": QUIVER_FORMAT,
        "field": field,
        "vertices": vertices,
        "arrows": [{"name": n, "from": s, "to": t} for (n, s, t) in arrows],
        "relations": [
            {"terms": [{"coeff": c, "path": p} for (c, p) in rel]} for rel in relations
        ],
        "length_bound": length_bound,
    }


def main():
    OUT.mkdir(exist_ok=True)
    files = {
        "x2_f2.json": algebra_to_json(truncated_poly_algebra(FieldSpec("prime", 2), 2)),
        "x2_f5.json": algebra_to_json(truncated_poly_algebra(FieldSpec("prime", 5), 2)),
        "x3_f3.json": algebra_to_json(truncated_poly_algebra(FieldSpec("prime", 3), 3)),
        "x3_f7.json": algebra_to_json(truncated_poly_algebra(FieldSpec("prime", 7), 3)),
        "x3_q.json": algebra_to_json(truncated_poly_algebra(FieldSpec("rational"), 3)),
        "gentle_two_cycle_f2.json": quiver_json(
            {"type": "prime", "p": 2},
            ["1", "2"],
            [("a", "1", "2"), ("b", "2", "1")],
            [[(1, ["a", "b"])], [(1, ["b", "a"])]],
            3,
        ),
        "t2_f3.json": quiver_json(
            {"type": "prime", "p": 3}, ["1", "2"], [("a", "1", "2")], [], 2
        ),
        "kxk_f5.json": quiver_json({"type": "prime", "p": 5}, ["1", "2"], [], [], 1),
    }
    for name, obj in files.items():
        path = OUT / name
        path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
