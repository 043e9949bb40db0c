"""Top-level certification of the categorical-resolution conditions.

Runs, in order: the Auslander construction and its verification (the
regularity side), then per-condition sampled suites at complex level:

* unit_iso        : the unit on bounded projective complexes is the
                    identity through the counit, naturally;
* adjunction      : the lift is left adjoint to the restriction on
                    homotopy classes, by an explicit bijection;
* four_term       : the exact sequence with both ends killed by e;
* density_witness : the cone of the unit map evaluates acyclically at
                    the corner;
* kernel_char     : corner-acyclicity coincides with acyclicity of the
                    restricted complex, and vanishing of the restriction
                    is exactly corner-kill;
* weakly_crepant  : for self-injective inputs, the right-adjunction side
                    (injectivity of Hom-lifts of injectives, the mod0
                    vanishing, the explicit inverse bijection).

Quotient-category statements are certified only through these proof
surrogates; the report says so in its ``scope`` field.  Reports are
deterministic functions of (input, config): fixed sample streams keyed by
(seed, suite, index), stable key order, no timestamps.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .algebra import Algebra
from .auslander import AuslanderData, build_auslander, verify_auslander
from .complexes import (
    cone,
    db_theta,
    homotopy_functor_images,
    is_acyclic,
    is_lambda_acyclic,
    kb_hom,
    kb_theta_lambda_data,
    module_complex,
    prop31_sequence,
    quotient_bijective,
    step_iv_adjunction,
    step_v_naturality,
    step_v_unit,
)
from .functors import in_mod0, theta, theta_rho, theta_rho_hom
from .homology import distinct_simples, ext_dim, global_dimension, is_self_injective
from .modules import ModHom, context
from .samples import ModulePool, rng_for


REPORT_FORMAT = "catres-certify-report-v1"
SCOPE_NOTE = (
    "condition (i) on the quotient category is certified through its proof "
    "ingredients only: degreewise four-term exactness with corner-killed ends, "
    "corner-acyclicity of the cone of the unit map, and the acyclicity "
    "transfer; no computable model of the quotient category is constructed"
)


@dataclass
class CertConfig:
    seed: int = 0
    samples: int = 50
    max_degree_window: int = 4
    max_term_dim: int = 12
    max_resolution_depth: Optional[int] = None
    threads: int = 1

    def __post_init__(self):
        if self.samples < 1 or self.max_degree_window < 1 or self.max_term_dim < 1:
            raise ValueError("certification config values must be positive")
        if self.threads < 1:
            raise ValueError("threads must be positive")

    @staticmethod
    def from_env_threads() -> int:
        raw = os.environ.get("CATRES_THREADS", "1")
        try:
            return max(1, int(raw))
        except ValueError:
            return 1

    def to_json(self):
        return {
            "seed": self.seed,
            "samples": self.samples,
            "max_degree_window": self.max_degree_window,
            "max_term_dim": self.max_term_dim,
            "max_resolution_depth": self.max_resolution_depth,
        }


def _run_samples(n: int, fn, threads: int):
    """Evaluate fn(0..n-1), order-stable regardless of thread count."""
    if threads <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, range(n)))


def _suite(results):
    failures = [
        {"index": i, "detail": detail} for i, (ok, detail) in enumerate(results) if not ok
    ]
    return {
        "passed": not failures,
        "samples": len(results),
        "failures": failures[:5],
        "failure_count": len(failures),
    }


def certify_resolution(lam: Algebra, cfg: CertConfig) -> dict:
    data = build_auslander(lam)
    depth = cfg.max_resolution_depth
    if depth is None:
        depth = max(10, data.chain.nilpotency_index + 2)
    regularity = verify_auslander(data)
    gl_lambda = global_dimension(lam, depth)
    degenerate = gl_lambda.kind != "infinite"

    pool = ModulePool(data)
    # warm the per-algebra caches before any thread fan-out
    context(lam)
    context(data.tilde)

    def unit_sample(i):
        rng = rng_for(cfg.seed, "unit_iso", i)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        sv = step_v_unit(P, data)
        return sv.ok, sv.detail

    def naturality_sample(i):
        rng = rng_for(cfg.seed, "unit_naturality", i)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        Q = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        u = pool.random_chain_map(rng, P, Q)
        return step_v_naturality(u, data), "naturality square broke"

    def adjunction_sample(i):
        rng = rng_for(cfg.seed, "adjunction", i)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        r = step_iv_adjunction(P, F, data)
        return r["ok"], str({k: v for k, v in r.items() if k != "ok"}) if not r["ok"] else ""

    def four_term_sample(i):
        rng = rng_for(cfg.seed, "four_term", i)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        try:
            p31 = prop31_sequence(F, data)
        except AssertionError as exc:
            return False, f"assembly failed: {exc}"
        for d in F.degrees():
            s = p31.degreewise[d]
            if s.F0.dim - s.F.dim + s.middle.dim - s.F1.dim != 0:
                return False, f"dimension count fails at degree {d}"
            if not (s.f0_incl.mat @ s.alpha.mat).is_zero():
                return False, f"kernel does not compose to zero at degree {d}"
            if not (s.alpha.mat @ s.f1_proj.mat).is_zero():
                return False, f"image does not die in the cokernel at degree {d}"
            if not (in_mod0(s.F0, data) and in_mod0(s.F1, data)):
                return False, f"ends not killed by the corner at degree {d}"
        for cxp in (p31.F0, p31.middle, p31.F1):
            if cxp.validate():
                return False, "assembled complex invalid"
        if not p31.alpha.validate():
            return False, "unit map is not a chain map"
        return True, ""

    def density_sample(i):
        rng = rng_for(cfg.seed, "four_term", i)  # same stream: same complexes
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        p31 = prop31_sequence(F, data)
        cn, _, _ = cone(p31.alpha)
        return is_lambda_acyclic(cn, data), "cone of the unit map is not corner-acyclic"

    def kernel_sample(i):
        rng = rng_for(cfg.seed, "kernel_char", i)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        lhs = is_lambda_acyclic(F, data)
        rhs = is_acyclic(db_theta(F, data))
        if lhs != rhs:
            return False, "corner-acyclic and restricted-acyclic disagree"
        m = pool.random_tilde_module(rng, cfg.max_term_dim)
        kills = in_mod0(m, data)
        restr = theta(m, data).dim == 0
        if kills != restr:
            return False, "corner-kill and zero restriction disagree"
        return True, ""

    n = cfg.samples
    report_conditions = {
        "unit_iso": _suite(_run_samples(n, unit_sample, cfg.threads)),
        "unit_naturality": _suite(
            _run_samples(max(1, n // 5), naturality_sample, cfg.threads)
        ),
        "adjunction": _suite(_run_samples(n, adjunction_sample, cfg.threads)),
        "four_term": _suite(_run_samples(n, four_term_sample, cfg.threads)),
        "density_witness": _suite(_run_samples(n, density_sample, cfg.threads)),
        "kernel_char": _suite(_run_samples(n, kernel_sample, cfg.threads)),
    }
    wc = weakly_crepant_check(lam, data, cfg, pool)
    report_conditions["weakly_crepant"] = wc

    applicable = [v for k, v in report_conditions.items() if not v.get("inapplicable")]
    all_pass = all(v["passed"] for v in applicable)
    verdict = "fail" if not all_pass else ("degenerate" if degenerate else "pass")
    report = {
        "format": REPORT_FORMAT,
        "version": __version__,
        "algebra": {
            "dim": lam.dim,
            "field": lam.field.to_json(),
            "basis": lam.basis_labels,
        },
        "config": cfg.to_json(),
        "hypothesis": {
            "gldim_lambda": gl_lambda.to_json(),
            "infinite_gldim_hypothesis_met": not degenerate,
            "degenerate": degenerate,
        },
        "regularity": regularity,
        "conditions": report_conditions,
        "scope": SCOPE_NOTE,
        "verdict": verdict,
    }
    return report


def right_adjoint_sample(F, P, data: AuslanderData) -> dict:
    """Theorem-level right adjunction: Hom(db_theta F, P) = Hom(F, (-,P))
    through g -> (unit map, then Hom(M,-) of g), bijective on homotopy
    classes."""
    lifted = kb_theta_lambda_data(P, data)
    thetaF = db_theta(F, data)
    B = kb_hom(thetaF, P)
    A = kb_hom(F, lifted.complex)
    p31 = prop31_sequence(F, data)

    def convert(g):
        comps = {}
        for i in F.degrees():
            trd_target = lifted.term_data.get(i)
            if trd_target is None or lifted.complex.term(i).dim == 0 or F.term(i).dim == 0:
                continue
            s = p31.degreewise[i]
            tr_g = theta_rho_hom(g.comp(i), data, s.middle_data, trd_target)
            comps[i] = ModHom(F.term(i), lifted.complex.term(i), s.alpha.mat @ tr_g.mat)
        from .complexes import ChainMap

        return ChainMap(F, lifted.complex, comps)

    img_chain, img_htp = homotopy_functor_images(B, A, convert)
    res = quotient_bijective(B, A, img_chain, img_htp)
    res["dims"] = (B.dim, A.dim)
    return res


def weakly_crepant_check(lam: Algebra, data: AuslanderData, cfg: CertConfig, pool=None) -> dict:
    """Theorem-level check that the lift is also a right adjoint when the
    base algebra is self-injective; inapplicable otherwise."""
    if pool is None:
        pool = ModulePool(data)
    if not is_self_injective(lam):
        return {
            "inapplicable": True,
            "passed": True,
            "reason": "base algebra is not self-injective",
            "samples": 0,
        }
    # injective indecomposables = projective indecomposables here
    ctx_l = context(lam)
    simples_t = distinct_simples(data.tilde)
    lemma_injective = []
    seen_dims = set()
    for p in ctx_l.projectives:
        if p.dim == 0:
            continue
        key = p.dim
        lift = theta_rho(p, data)
        ok = all(ext_dim(s, lift, 1) == 0 for s in simples_t)
        lemma_injective.append({"indecomposable_dim": p.dim, "injective_lift": ok})
        seen_dims.add(key)
    lemma42_ok = all(item["injective_lift"] for item in lemma_injective)

    def lemma44_sample(i):
        rng = rng_for(cfg.seed, "wc_lemma44", i)
        G = pool.random_mod0_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        N = pool.random_lam_module(rng, cfg.max_term_dim // 2 + 1)
        target = module_complex(
            theta_rho(N, data), rng.randrange(cfg.max_degree_window)
        )
        kb = kb_hom(G, target)
        return kb.dim == 0, f"nonzero Hom from a corner-killed complex (dim {kb.dim})"

    def right_adjoint_sample_i(i):
        rng = rng_for(cfg.seed, "wc_right_adjoint", i)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        r = right_adjoint_sample(F, P, data)
        return r["bijective"], str(r) if not r["bijective"] else ""

    n44 = max(1, (cfg.samples * 3) // 5)
    lemma44 = _suite(_run_samples(n44, lemma44_sample, cfg.threads))
    right_adj = _suite(_run_samples(cfg.samples, right_adjoint_sample_i, cfg.threads))
    passed = lemma42_ok and lemma44["passed"] and right_adj["passed"]
    return {
        "inapplicable": False,
        "passed": passed,
        "lemma_injective_lifts": lemma_injective,
        "lemma42_passed": lemma42_ok,
        "mod0_vanishing": lemma44,
        "right_adjoint": right_adj,
        "samples": cfg.samples,
    }


def replay_sample(lam: Algebra, cfg: CertConfig, suite: str, index: int):
    """Re-execute a single sampled check in isolation.

    The per-sample RNG streams are keyed by (seed, suite, index) only, so a
    counterexample recorded in a report reproduces here exactly.
    Returns (ok, detail)."""
    data = build_auslander(lam)
    pool = ModulePool(data)

    if suite == "unit_iso":
        rng = rng_for(cfg.seed, "unit_iso", index)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        sv = step_v_unit(P, data)
        return sv.ok, sv.detail
    if suite == "unit_naturality":
        rng = rng_for(cfg.seed, "unit_naturality", index)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        Q = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        u = pool.random_chain_map(rng, P, Q)
        return step_v_naturality(u, data), ""
    if suite == "adjunction":
        rng = rng_for(cfg.seed, "adjunction", index)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        r = step_iv_adjunction(P, F, data)
        return r["ok"], ""
    if suite in ("four_term", "density_witness"):
        rng = rng_for(cfg.seed, "four_term", index)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        p31 = prop31_sequence(F, data)
        if suite == "density_witness":
            cn, _, _ = cone(p31.alpha)
            return is_lambda_acyclic(cn, data), ""
        ok = all(
            in_mod0(p31.degreewise[d].F0, data) and in_mod0(p31.degreewise[d].F1, data)
            for d in F.degrees()
        )
        return ok, ""
    if suite == "kernel_char":
        rng = rng_for(cfg.seed, "kernel_char", index)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        return is_lambda_acyclic(F, data) == is_acyclic(db_theta(F, data)), ""
    if suite == "wc_lemma44":
        rng = rng_for(cfg.seed, "wc_lemma44", index)
        G = pool.random_mod0_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        N = pool.random_lam_module(rng, cfg.max_term_dim // 2 + 1)
        target = module_complex(theta_rho(N, data), rng.randrange(cfg.max_degree_window))
        return kb_hom(G, target).dim == 0, ""
    if suite == "wc_right_adjoint":
        rng = rng_for(cfg.seed, "wc_right_adjoint", index)
        F = pool.random_tilde_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        P = pool.random_projective_lam_complex(rng, cfg.max_degree_window, cfg.max_term_dim)
        return right_adjoint_sample(F, P, data)["bijective"], ""
    raise ValueError(f"unknown suite {suite!r}")


def report_to_json_str(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def exit_code_for(report: dict) -> int:
    if report["verdict"] == "fail":
        return 1
    if report["verdict"] == "degenerate":
        return 2
    return 0
