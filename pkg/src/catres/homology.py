"""Projective resolutions, Ext, global dimension, injectivity.

Resolutions are minimal (iterated projective covers).  Infinite projective
dimension is certified by syzygy periodicity: once some syzygy is
isomorphic to an earlier one, the minimal resolution can never terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Algebra
from .linalg import Mat, left_nullspace, rank, solve_left
from .modules import (
    IsoInconclusive,
    ModHom,
    Repn,
    context,
    hom_space,
    is_isomorphic,
    projective_cover,
    sub_repn,
    zero_module,
)


@dataclass
class ResStatus:
    kind: str  # "complete" | "truncated" | "periodic"
    length: Optional[int] = None
    depth: Optional[int] = None
    period: Optional[int] = None
    offset: Optional[int] = None
    note: str = ""


@dataclass
class ProjResolution:
    module: Repn
    modules: list  # P_0 .. P_d
    differentials: list  # d_i : P_i -> P_(i-1), entries for i = 1..d
    augmentation: ModHom  # P_0 -> M
    syzygies: list  # Omega^1, Omega^2, ... as Repn
    status: ResStatus

    def term(self, i: int) -> Repn:
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return zero_module(self.module.algebra)

    def differential(self, i: int) -> Optional[ModHom]:
        """d_i: P_i -> P_(i-1) when both exist."""
        if 1 <= i < len(self.modules):
            return self.differentials[i - 1]
        return None


def projective_resolution(M: Repn, max_depth: int, halt_on_periodic: bool = True) -> ProjResolution:
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    aug = projective_cover(M)
    modules = [aug.source]
    diffs = []
    syzygies = []
    omegas = [M]
    periodic: Optional[tuple] = None
    inconclusive = False
    ker_rows = left_nullspace(aug.mat)
    depth = 0
    while True:
        if ker_rows.rows == 0:
            if periodic is not None:
                raise AssertionError("resolution terminated despite a periodicity certificate")
            status = ResStatus(kind="complete", length=depth)
            break
        if depth == max_depth:
            if periodic is not None:
                status = ResStatus(kind="periodic", period=periodic[1], offset=periodic[0])
            else:
                note = "isomorphism search inconclusive" if inconclusive else ""
                status = ResStatus(kind="truncated", depth=depth, note=note)
            break
        omega, incl = sub_repn(modules[-1], ker_rows)
        syzygies.append(omega)
        if periodic is None:
            for j, prev in enumerate(omegas):
                try:
                    if prev.dim == omega.dim and is_isomorphic(omega, prev) is not None:
                        periodic = (j, len(omegas) - j)
                        break
                except IsoInconclusive:
                    inconclusive = True
        omegas.append(omega)
        if periodic is not None and halt_on_periodic:
            status = ResStatus(kind="periodic", period=periodic[1], offset=periodic[0])
            break
        cov = projective_cover(omega)
        diffs.append(cov.then(incl))
        modules.append(cov.source)
        ker_rows = left_nullspace(cov.mat)
        depth += 1
    return ProjResolution(
        module=M,
        modules=modules,
        differentials=diffs,
        augmentation=aug,
        syzygies=syzygies,
        status=status,
    )


@dataclass
class PdResult:
    kind: str  # "finite" | "infinite" | "unknown"
    value: Optional[int] = None
    period: Optional[int] = None
    offset: Optional[int] = None
    bound: Optional[int] = None


def projective_dimension(M: Repn, max_depth: int) -> PdResult:
    res = projective_resolution(M, max_depth)
    if res.status.kind == "complete":
        return PdResult(kind="finite", value=res.status.length)
    if res.status.kind == "periodic":
        return PdResult(kind="infinite", period=res.status.period, offset=res.status.offset)
    return PdResult(kind="unknown", bound=max_depth)


def _hom_precompose_matrix(d: ModHom, src_homs: list, tgt_homs: list) -> Mat:
    """Matrix of Hom(P_i, N) -> Hom(P_(i+1), N), f -> d then f, in hom bases."""
    field = d.field
    if not src_homs or not tgt_homs:
        return Mat.zeros(field, len(src_homs), len(tgt_homs))
    flat_tgt = Mat.stack_rows(field, [h.mat.flatten_row() for h in tgt_homs])
    rows = []
    for h in src_homs:
        comp = d.mat @ h.mat
        c = solve_left(flat_tgt, comp.flatten_row())
        assert c is not None, "composite escaped the hom space"
        rows.append(c)
    return Mat.stack_rows(field, rows)


def ext_dim(M: Repn, N: Repn, i: int, resolution: Optional[ProjResolution] = None) -> int:
    """dim Ext^i(M, N) from a minimal (or any) projective resolution of M."""
    if i < 0:
        raise ValueError("ext degree must be >= 0")
    res = resolution
    if res is None:
        res = projective_resolution(M, max_depth=i + 1, halt_on_periodic=False)
    if res.status.kind == "truncated" and len(res.modules) < i + 2:
        raise ValueError(f"resolution truncated before depth {i + 1}")
    homs = {}
    for j in (i - 1, i, i + 1):
        if j >= 0:
            pj = res.term(j)
            homs[j] = hom_space(pj, N) if pj.dim and N.dim else []
    d_in = (
        _hom_precompose_matrix(res.differential(i), homs[i - 1], homs[i])
        if i >= 1 and res.differential(i) is not None
        else Mat.zeros(M.field, len(homs.get(i - 1, [])), len(homs[i]))
    )
    d_out = (
        _hom_precompose_matrix(res.differential(i + 1), homs[i], homs[i + 1])
        if res.differential(i + 1) is not None
        else Mat.zeros(M.field, len(homs[i]), len(homs[i + 1]))
    )
    return len(homs[i]) - rank(d_out) - rank(d_in)


@dataclass
class GldimResult:
    kind: str  # "finite" | "infinite" | "unknown"
    value: Optional[int] = None
    witness: Optional[int] = None  # index into the deduplicated simple list
    period: Optional[int] = None
    offset: Optional[int] = None
    bound: Optional[int] = None
    per_simple: Optional[list] = None

    def to_json(self):
        out = {"kind": self.kind}
        for k in ("value", "witness", "period", "offset", "bound"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out


def distinct_simples(A: Algebra) -> list:
    """Simple modules up to isomorphism (idempotents can repeat blocks)."""
    ctx = context(A)
    reps = []
    for s in ctx.simples:
        if any(s.dim == t.dim and is_isomorphic(s, t) is not None for t in reps):
            continue
        reps.append(s)
    return reps


def default_max_depth(A: Algebra) -> int:
    return A.radical_chain().nilpotency_index + 2


def global_dimension(A: Algebra, max_depth: Optional[int] = None) -> GldimResult:
    """gldim as max projective dimension of the simples; tri-state."""
    if max_depth is None:
        max_depth = default_max_depth(A)
    per = []
    worst_unknown = None
    for idx, s in enumerate(distinct_simples(A)):
        pd = projective_dimension(s, max_depth)
        per.append(pd)
        if pd.kind == "infinite":
            return GldimResult(
                kind="infinite", witness=idx, period=pd.period, offset=pd.offset, per_simple=per
            )
        if pd.kind == "unknown":
            worst_unknown = pd
    if worst_unknown is not None:
        return GldimResult(kind="unknown", bound=max_depth, per_simple=per)
    value = max((pd.value for pd in per), default=0)
    return GldimResult(kind="finite", value=value, per_simple=per)


def is_injective(A: Algebra, M: Repn) -> bool:
    """Injectivity via Ext^1 vanishing against every simple.

    Valid for finite-dimensional algebras: a module with Ext^1(S, M) = 0
    for all simples S has no proper essential extension, by induction on
    the length of the cokernel.
    """
    if M.dim == 0:
        return True
    for s in distinct_simples(A):
        if ext_dim(s, M, 1) != 0:
            return False
    return True


def is_self_injective(A: Algebra) -> bool:
    from .modules import regular_module

    return is_injective(A, regular_module(A))


@dataclass
class InjectivityTests:
    """Bundled injectivity interface for one algebra."""

    algebra: Algebra
    is_self_injective: bool

    def is_injective(self, M: Repn) -> bool:
        return is_injective(self.algebra, M)


def injectivity_tests(A: Algebra) -> InjectivityTests:
    return InjectivityTests(algebra=A, is_self_injective=is_self_injective(A))
