import json
import subprocess
import sys
from pathlib import Path

import pytest

from catres import modules as mod
from catres.auslander import build_auslander
from catres.corpus import truncated_poly_algebra
from catres.functors import theta_rho
from catres.io_json import (
    ParseError,
    algebra_to_json,
    complex_to_json,
    module_to_json,
    parse_algebra,
    parse_algebra_or_quiver,
    parse_complex,
    parse_module,
)
from catres.linalg import FieldSpec

F2 = FieldSpec("prime", 2)
F5 = FieldSpec("prime", 5)
QQ = FieldSpec("rational")

REPO = Path(__file__).resolve().parents[1]
CORPUS = REPO / "corpus"


def run_cli(*argv, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "catres.cli", *argv],
        capture_output=True,
        text=True,
        cwd=REPO,
    )
    assert proc.returncode == expect, (proc.returncode, proc.stderr, proc.stdout)
    return proc


# -- parsing -----------------------------------------------------------------


def test_roundtrip_algebra_json():
    a = truncated_poly_algebra(F5, 2)
    obj = algebra_to_json(a)
    b = parse_algebra(obj)
    assert algebra_to_json(b) == obj


def test_roundtrip_rational_algebra():
    a = truncated_poly_algebra(QQ, 3)
    obj = algebra_to_json(a)
    b = parse_algebra(obj)
    assert algebra_to_json(b) == obj
    assert b.field.kind == "rational"


def test_roundtrip_corpus_files_normalize():
    for path in CORPUS.glob("*.json"):
        obj = json.loads(path.read_text())
        alg = parse_algebra_or_quiver(obj)
        if obj["format"] == "catres-algebra-v1":
            emitted = algebra_to_json(alg)
            again = algebra_to_json(parse_algebra(emitted))
            assert emitted == again


def test_rejects_unknown_fields():
    obj = algebra_to_json(truncated_poly_algebra(F5, 2))
    obj["extra"] = 1
    with pytest.raises(ParseError) as exc:
        parse_algebra(obj)
    assert "extra" in str(exc.value)


def test_rejects_wrong_mult_arity():
    obj = algebra_to_json(truncated_poly_algebra(F5, 2))
    obj["mult"][1] = [[0, 1]]  # one product vector missing
    with pytest.raises(ParseError) as exc:
        parse_algebra(obj)
    assert "mult[1]" in str(exc.value)


def test_rejects_missing_length_bound():
    quiver = json.loads((CORPUS / "t2_f3.json").read_text())
    del quiver["length_bound"]
    with pytest.raises(ParseError) as exc:
        parse_algebra_or_quiver(quiver)
    assert "length_bound" in str(exc.value)


def test_rejects_invariant_violation():
    obj = algebra_to_json(truncated_poly_algebra(F5, 2))
    obj["unit"] = [0, 1]  # x is not a unit
    with pytest.raises(ParseError) as exc:
        parse_algebra(obj)
    assert "invariant" in str(exc.value)


def test_rejects_nonint_scalar_in_prime_field():
    obj = algebra_to_json(truncated_poly_algebra(F5, 2))
    obj["unit"] = ["1/2", 0]
    with pytest.raises(ParseError):
        parse_algebra(obj)


def test_module_roundtrip_and_validation():
    a = truncated_poly_algebra(F5, 2)
    ctx = mod.context(a)
    obj = module_to_json(ctx.regular)
    pm = parse_module(obj)
    assert pm.module.dim == 2 and pm.module.validate()
    obj_bad = json.loads(json.dumps(obj))
    obj_bad["action"][1][0][0] = 3  # breaks the unit/action compatibility
    with pytest.raises(ParseError):
        parse_module(obj_bad)


def test_module_auslander_of():
    a = truncated_poly_algebra(F2, 2)
    data = build_auslander(a)
    tr = theta_rho(mod.context(a).simples[0], data)
    obj = module_to_json(tr, algebra_obj={"auslander_of": algebra_to_json(a)})
    pm = parse_module(obj)
    assert pm.auslander is not None
    assert pm.module.dim == 2
    assert pm.base.dim == data.tilde.dim


def test_complex_roundtrip():
    from catres import complexes as cx

    a = truncated_poly_algebra(F5, 2)
    reg = mod.context(a).regular
    c = cx.BComplex(a, 0, [reg, reg], [mod.ModHom(reg, reg, reg.action_mat(1))])
    obj = complex_to_json(c)
    c2 = parse_complex(obj)
    assert c2.lo == 0 and c2.hi == 1
    assert complex_to_json(c2) == obj
    obj_bad = json.loads(json.dumps(obj))
    obj_bad["differentials"][0][0][0] = 1  # no longer a module map
    with pytest.raises(ParseError):
        parse_complex(obj_bad)


def test_rational_scalars_roundtrip_as_strings():
    a = truncated_poly_algebra(QQ, 2)
    obj = algebra_to_json(a)
    s = json.dumps(obj)
    assert '"1/2"' not in s  # integral table stays integral
    from fractions import Fraction

    from catres.io_json import _parse_scalar

    assert _parse_scalar("2/3", QQ, "$") == Fraction(2, 3)
    assert QQ.scalar_to_json(Fraction(2, 3)) == "2/3"
    assert QQ.scalar_to_json(Fraction(4, 2)) == 2


# -- CLI ------------------------------------------------------------------------


def test_cli_analyze_text_and_json():
    out = run_cli("analyze", "corpus/x2_f5.json").stdout
    assert "dimension 2" in out
    out = run_cli("analyze", "corpus/x2_f5.json", "--format", "json").stdout
    obj = json.loads(out)
    assert obj["dim"] == 2 and obj["nilpotency_index"] == 2


def test_cli_gldim_fixture():
    out = run_cli("gldim", "corpus/x2_f2.json", "--format", "json").stdout
    obj = json.loads(out)
    assert obj["kind"] == "infinite"
    # the Auslander algebra of k[x]/x^2 has gldim 2: build its JSON on the fly
    lam = truncated_poly_algebra(F2, 2)
    tilde = build_auslander(lam).tilde
    p = REPO / "tests" / "_tmp_tilde.json"
    p.write_text(json.dumps(algebra_to_json(tilde)))
    try:
        out = run_cli("gldim", str(p), "--format", "json").stdout
        assert json.loads(out) == {"kind": "finite", "value": 2}
    finally:
        p.unlink()


def test_cli_certify_exit_codes_and_determinism(tmp_path):
    out1 = run_cli("certify", "corpus/x2_f2.json", "--samples", "4", "--seed", "7")
    out2 = run_cli("certify", "corpus/x2_f2.json", "--samples", "4", "--seed", "7")
    assert out1.stdout == out2.stdout
    rep = json.loads(out1.stdout)
    assert rep["verdict"] == "pass"
    run_cli("certify", "corpus/kxk_f5.json", "--samples", "3", expect=2)


def test_cli_certify_thread_env(tmp_path):
    import os

    proc1 = subprocess.run(
        [sys.executable, "-m", "catres.cli", "certify", "corpus/x2_f2.json", "--samples", "4"],
        capture_output=True,
        text=True,
        cwd=REPO,
        env={**os.environ, "CATRES_THREADS": "3"},
    )
    proc2 = run_cli("certify", "corpus/x2_f2.json", "--samples", "4")
    assert proc1.stdout == proc2.stdout


def test_cli_parse_error_paths():
    bad = REPO / "tests" / "_tmp_bad.json"
    obj = algebra_to_json(truncated_poly_algebra(F5, 2))
    obj["mult"][1] = [[0, 1]]
    bad.write_text(json.dumps(obj))
    try:
        proc = run_cli("analyze", str(bad), expect=1)
        assert "mult[1]" in proc.stderr
    finally:
        bad.unlink()


def test_cli_hom_and_functor(tmp_path):
    a = truncated_poly_algebra(F2, 2)
    ctx = mod.context(a)
    aj = algebra_to_json(a)
    m1 = tmp_path / "reg.json"
    m2 = tmp_path / "s.json"
    m1.write_text(json.dumps(module_to_json(ctx.regular, algebra_obj=aj)))
    m2.write_text(json.dumps(module_to_json(ctx.simples[0], algebra_obj=aj)))
    out = run_cli("hom", str(m1), str(m2), "--format", "json").stdout
    assert json.loads(out)["dim"] == 1
    out = run_cli("functor", "theta-rho", str(m2)).stdout
    assert json.loads(out)["dim"] == 2
    out = run_cli("functor", "theta-lambda", str(m2)).stdout
    assert json.loads(out)["dim"] == 2
    # theta on the lifted module round-trips through auslander_of
    lifted = tmp_path / "lifted.json"
    lifted.write_text(out)
    back = run_cli("functor", "theta", str(lifted)).stdout
    assert json.loads(back)["dim"] == 1


def test_cli_auslander_summary():
    out = run_cli("auslander", "corpus/x2_f5.json").stdout
    obj = json.loads(out)
    assert obj["dim_tilde"] == 5 and obj["gldim_tilde"] == {"kind": "finite", "value": 2}
    assert obj["e_coords"] == [0, 0, 0, 0, 1]


def test_corpus_files_match_generator():
    before = {p.name: p.read_text() for p in CORPUS.glob("*.json")}
    proc = subprocess.run(
        [sys.executable, "scripts/make_corpus.py"],
        capture_output=True,
        text=True,
        cwd=REPO,
    )
    assert proc.returncode == 0
    after = {p.name: p.read_text() for p in CORPUS.glob("*.json")}
    assert before == after, "shipped corpus files drifted from the generator"
