"""Strict JSON schemas for algebras, quivers, modules, and complexes.

Formats are versioned; unknown keys are rejected; every parse error names
a JSON-pointer-like path and the failing invariant.  Mathematical data is
never defaulted (only search budgets are).  Rational scalars round-trip as
ints or "p/q" strings; prime-field scalars as ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebra import Algebra, AlgebraError, QuiverSpec, from_quiver
from .auslander import AuslanderData, build_auslander
from .complexes import BComplex
from .linalg import FieldSpec, Mat
from .modules import ModHom, Repn

ALGEBRA_FORMAT = "catres-algebra-v1"
QUIVER_FORMAT = "catres-quiver-v1"
MODULE_FORMAT = "catres-module-v1"
COMPLEX_FORMAT = "catres-complex-v1"


class ParseError(ValueError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"at {path}: {reason}")


def _require_keys(obj: dict, path: str, required: set, optional: set = frozenset()):
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    missing = required - set(obj)
    if missing:
        raise ParseError(path, f"missing required field(s) {sorted(missing)}")
    unknown = set(obj) - required - optional
    if unknown:
        raise ParseError(path, f"unknown field(s) {sorted(unknown)}")


def _parse_scalar(x, field: FieldSpec, path: str):
    try:
        if field.kind == "prime":
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError("prime-field scalars must be integers")
            return field.coerce(x)
        if isinstance(x, bool):
            raise ValueError("booleans are not scalars")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise ValueError(f"cannot read {x!r} as a rational scalar")
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(path, str(exc)) from None


def _parse_vector(v, field: FieldSpec, dim: int, path: str) -> Mat:
    if not isinstance(v, list) or len(v) != dim:
        raise ParseError(path, f"expected a list of {dim} scalars")
    return Mat.from_rows(field, [[_parse_scalar(x, field, f"{path}[{i}]") for i, x in enumerate(v)]])


def _parse_matrix(m, field: FieldSpec, rows: int, cols: int, path: str) -> Mat:
    if not isinstance(m, list) or len(m) != rows:
        raise ParseError(path, f"expected {rows} rows")
    out = []
    for i, row in enumerate(m):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{path}[{i}]", f"expected {cols} entries")
        out.append([_parse_scalar(x, field, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    if rows == 0:
        return Mat.zeros(field, 0, cols)
    return Mat.from_rows(field, out)


def _parse_field(obj, path: str) -> FieldSpec:
    try:
        return FieldSpec.from_json(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise ParseError(path, str(exc)) from None


def parse_algebra(obj: dict, path: str = "$") -> Algebra:
    _require_keys(
        obj, path, {"format", "field", "dim", "basis", "unit", "mult"}, {"radical"}
    )
    if obj["format"] != ALGEBRA_FORMAT:
        raise ParseError(f"{path}.format", f"unsupported format {obj['format']!r}")
    field = _parse_field(obj["field"], f"{path}.field")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ParseError(f"{path}.dim", "dim must be a non-negative integer")
    basis = obj["basis"]
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise ParseError(f"{path}.basis", f"expected {dim} string labels")
    unit = _parse_vector(obj["unit"], field, dim, f"{path}.unit")
    mult = obj["mult"]
    if not isinstance(mult, list) or len(mult) != dim:
        raise ParseError(f"{path}.mult", f"expected {dim} rows of products")
    table = (
        np.zeros((dim, dim, dim), dtype=np.int64)
        if field.kind == "prime"
        else np.empty((dim, dim, dim), dtype=object)
    )
    for i, row in enumerate(mult):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{path}.mult[{i}]", f"expected {dim} product vectors")
        for j, vec in enumerate(row):
            v = _parse_vector(vec, field, dim, f"{path}.mult[{i}][{j}]")
            table[i, j] = v.a[0]
    radical = None
    if "radical" in obj:
        rad = obj["radical"]
        if not isinstance(rad, list):
            raise ParseError(f"{path}.radical", "expected a list of coordinate vectors")
        radical = _parse_matrix(rad, field, len(rad), dim, f"{path}.radical")
    alg = Algebra(field, basis, unit, table, radical_hint=radical, provenance="table")
    rep = alg.validate()
    if not rep.ok:
        raise ParseError(path, f"algebra invariant violated: {rep.violations[0]}")
    return alg


def parse_quiver(obj: dict, path: str = "$") -> Algebra:
    _require_keys(
        obj, path, {"format", "field", "vertices", "arrows", "relations", "length_bound"}
    )
    if obj["format"] != QUIVER_FORMAT:
        raise ParseError(f"{path}.format", f"unsupported format {obj['format']!r}")
    field = _parse_field(obj["field"], f"{path}.field")
    vertices = obj["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError(f"{path}.vertices", "expected a list of vertex names")
    arrows = []
    for k, arr in enumerate(obj["arrows"]):
        _require_keys(arr, f"{path}.arrows[{k}]", {"name", "from", "to"})
        arrows.append((arr["name"], arr["from"], arr["to"]))
    relations = []
    for k, rel in enumerate(obj["relations"]):
        _require_keys(rel, f"{path}.relations[{k}]", {"terms"})
        terms = []
        for t, term in enumerate(rel["terms"]):
            _require_keys(term, f"{path}.relations[{k}].terms[{t}]", {"coeff", "path"})
            coeff = _parse_scalar(term["coeff"], field, f"{path}.relations[{k}].terms[{t}].coeff")
            p = term["path"]
            if not isinstance(p, list) or not all(isinstance(a, str) for a in p):
                raise ParseError(
                    f"{path}.relations[{k}].terms[{t}].path", "expected a list of arrow names"
                )
            terms.append((coeff, p))
        relations.append(terms)
    lb = obj["length_bound"]
    if not isinstance(lb, int):
        raise ParseError(f"{path}.length_bound", "length_bound must be an integer")
    try:
        spec = QuiverSpec(field, vertices, arrows, relations, lb)
        return from_quiver(spec)
    except AlgebraError as exc:
        raise ParseError(path, str(exc)) from None


@dataclass
class ParsedModule:
    module: Repn
    base: Algebra  # the algebra the module is over
    auslander: Optional[AuslanderData]  # set when "algebra" was auslander_of


def parse_module(obj: dict, path: str = "$", algebra: Optional[Algebra] = None) -> ParsedModule:
    _require_keys(obj, path, {"format", "algebra", "dim", "action"})
    if obj["format"] != MODULE_FORMAT:
        raise ParseError(f"{path}.format", f"unsupported format {obj['format']!r}")
    data = None
    if algebra is not None:
        base = algebra
    else:
        aspec = obj["algebra"]
        if isinstance(aspec, dict) and set(aspec) == {"auslander_of"}:
            lam = parse_algebra_or_quiver(aspec["auslander_of"], f"{path}.algebra.auslander_of")
            data = build_auslander(lam)
            base = data.tilde
        else:
            base = parse_algebra_or_quiver(aspec, f"{path}.algebra")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ParseError(f"{path}.dim", "dim must be a non-negative integer")
    action_obj = obj["action"]
    if not isinstance(action_obj, list) or len(action_obj) != base.dim:
        raise ParseError(f"{path}.action", f"expected {base.dim} action matrices")
    field = base.field
    action = (
        np.zeros((base.dim, dim, dim), dtype=np.int64)
        if field.kind == "prime"
        else np.empty((base.dim, dim, dim), dtype=object)
    )
    for i, mat in enumerate(action_obj):
        m = _parse_matrix(mat, field, dim, dim, f"{path}.action[{i}]")
        action[i] = m.a
    module = Repn(base, dim, action)
    if not module.validate():
        raise ParseError(path, "module invariant violated: action does not respect the table")
    return ParsedModule(module=module, base=base, auslander=data)


def parse_algebra_or_quiver(obj: dict, path: str = "$") -> Algebra:
    if not isinstance(obj, dict) or "format" not in obj:
        raise ParseError(path, "expected an object with a 'format' field")
    if obj["format"] == ALGEBRA_FORMAT:
        return parse_algebra(obj, path)
    if obj["format"] == QUIVER_FORMAT:
        return parse_quiver(obj, path)
    raise ParseError(f"{path}.format", f"unsupported format {obj['format']!r}")


def parse_complex(obj: dict, path: str = "$") -> BComplex:
    _require_keys(obj, path, {"format", "algebra", "lo", "hi", "terms", "differentials"})
    if obj["format"] != COMPLEX_FORMAT:
        raise ParseError(f"{path}.format", f"unsupported format {obj['format']!r}")
    base = parse_algebra_or_quiver(obj["algebra"], f"{path}.algebra")
    lo, hi = obj["lo"], obj["hi"]
    if not (isinstance(lo, int) and isinstance(hi, int) and lo <= hi):
        raise ParseError(f"{path}.lo", "need integers lo <= hi")
    count = hi - lo + 1
    if len(obj["terms"]) != count:
        raise ParseError(f"{path}.terms", f"expected {count} terms")
    if len(obj["differentials"]) != max(0, count - 1):
        raise ParseError(f"{path}.differentials", f"expected {count - 1} differentials")
    terms = []
    for k, t in enumerate(obj["terms"]):
        pm = parse_module(t, f"{path}.terms[{k}]", algebra=base)
        terms.append(pm.module)
    diffs = []
    for k, d in enumerate(obj["differentials"]):
        m = _parse_matrix(
            d, base.field, terms[k].dim, terms[k + 1].dim, f"{path}.differentials[{k}]"
        )
        h = ModHom(terms[k], terms[k + 1], m)
        if terms[k].dim and terms[k + 1].dim and not h.validate():
            raise ParseError(
                f"{path}.differentials[{k}]", "differential is not a module homomorphism"
            )
        diffs.append(h)
    cx = BComplex(base, lo, terms, diffs)
    issues = cx.validate()
    if issues:
        raise ParseError(path, f"complex invariant violated: {issues[0]}")
    return cx


# -- emission -------------------------------------------------------------------


def algebra_to_json(a: Algebra) -> dict:
    f = a.field
    mult = [
        [[f.scalar_to_json(x) for x in a.table[i, j].tolist()] for j in range(a.dim)]
        for i in range(a.dim)
    ]
    out = {
        "format": ALGEBRA_FORMAT,
        "field": f.to_json(),
        "dim": a.dim,
        "basis": list(a.basis_labels),
        "unit": [f.scalar_to_json(x) for x in a.unit.a[0].tolist()],
        "mult": mult,
    }
    if a.radical_hint is not None:
        out["radical"] = a.radical_hint.to_json()
    return out


def module_to_json(m: Repn, algebra_obj: Optional[dict] = None) -> dict:
    f = m.field
    if algebra_obj is None:
        algebra_obj = algebra_to_json(m.algebra)
    return {
        "format": MODULE_FORMAT,
        "algebra": algebra_obj,
        "dim": m.dim,
        "action": [
            [[f.scalar_to_json(x) for x in row] for row in m.action[i].tolist()]
            for i in range(m.algebra.dim)
        ],
    }


def complex_to_json(c: BComplex, algebra_obj: Optional[dict] = None) -> dict:
    if algebra_obj is None:
        algebra_obj = algebra_to_json(c.algebra)
    f = c.algebra.field
    return {
        "format": COMPLEX_FORMAT,
        "algebra": algebra_obj,
        "lo": c.lo,
        "hi": c.hi,
        "terms": [module_to_json(t, algebra_obj=algebra_obj) for t in c.terms],
        "differentials": [d.mat.to_json() for d in c.diffs],
    }
