"""Module-level restriction and lifting functors between mod-tilde and mod-Lambda.

Fix the Auslander data (M, tilde = End(M), e, corner iso).  Then:

* ``theta``      : F -> F.e with Lambda acting through the corner transport
                   (restriction to the corner; exact, presentation-free);
* ``theta_rho``  : N -> Hom(M, N) with the right tilde-action f.phi = f o phi
                   (right adjoint of theta);
* ``theta_lambda``: N -> coker(Hom(M,P1) -> Hom(M,P0)) over a projective
                   presentation P1 -> P0 -> N -> 0 (left adjoint; agrees with
                   theta_rho on projectives on the nose);
* the unit alpha: F -> theta_rho(theta(F)) with its four-term exact sequence
  0 -> F0 -> F -> theta_rho(theta F) -> F1 -> 0, both ends killed by e.

``theta_via_presentation`` recomputes theta from a projective presentation
over tilde with no corner restriction anywhere; it is the independent oracle
for the corner-restriction route.
"""

from __future__ import annotations

from dataclasses import dataclass

from .auslander import AuslanderData
from .linalg import Mat, coords_in_rows, left_nullspace, rank, row_basis, solve
from .modules import (
    ModHom,
    Repn,
    direct_sum,
    hom_flat_basis,
    hom_space,
    projective_cover,
    projective_cover_with_parts,
    quotient_repn,
    sub_repn,
    zero_hom,
    zero_module,
)

import numpy as np


# -- theta: corner restriction ------------------------------------------------


def corner_rows(F: Repn, data: AuslanderData) -> Mat:
    """Canonical basis (rref rows) of F.e inside F."""
    E = F.rho(data.e.coords)
    return row_basis(E)


def theta(F: Repn, data: AuslanderData) -> Repn:
    """F.e as a right module over Lambda, acting through the corner."""
    lam = data.lam
    rows = corner_rows(F, data)
    k = rows.rows
    act = (
        np.zeros((lam.dim, k, k), dtype=np.int64)
        if lam.field.kind == "prime"
        else np.empty((lam.dim, k, k), dtype=object)
    )
    for t in range(lam.dim):
        zeta = data.lambda_to_tilde.row_at(t)
        moved = rows @ F.rho(zeta)
        act[t] = coords_in_rows(rows, moved).a
    return Repn(lam, k, act)


def theta_hom(f: ModHom, data: AuslanderData, thetaF: Repn = None, thetaG: Repn = None) -> ModHom:
    """theta on morphisms: restriction of the matrix to the corner subspaces."""
    rows_src = corner_rows(f.source, data)
    rows_tgt = corner_rows(f.target, data)
    if thetaF is None:
        thetaF = theta(f.source, data)
    if thetaG is None:
        thetaG = theta(f.target, data)
    if rows_src.rows == 0 or rows_tgt.rows == 0:
        return zero_hom(thetaF, thetaG)
    mat = coords_in_rows(rows_tgt, rows_src @ f.mat)
    return ModHom(thetaF, thetaG, mat)


def in_mod0(F: Repn, data: AuslanderData) -> bool:
    """Membership in the kernel of theta: F.e = 0."""
    return F.rho(data.e.coords).is_zero()


# -- theta_rho: Hom(M, -) ------------------------------------------------------


@dataclass
class ThetaRho:
    module: Repn  # over tilde
    homs: list  # basis of Hom(M, N) as ModHom M -> N
    flat: Mat  # flattened basis rows
    target: Repn  # N


def theta_rho_data(N: Repn, data: AuslanderData) -> ThetaRho:
    tilde = data.tilde
    homs = hom_space(data.M, N)
    k = len(homs)
    flat = hom_flat_basis(homs, data.M.dim, N.dim, N.field)
    act = (
        np.zeros((tilde.dim, k, k), dtype=np.int64)
        if N.field.kind == "prime"
        else np.empty((tilde.dim, k, k), dtype=object)
    )
    for j in range(tilde.dim):
        phi = data.end_mats[j]
        for t in range(k):
            moved = (phi @ homs[t].mat).flatten_row()  # f.phi applies phi first
            act[j][t] = coords_in_rows(flat, moved).a[0]
    return ThetaRho(module=Repn(tilde, k, act), homs=homs, flat=flat, target=N)


def theta_rho(N: Repn, data: AuslanderData) -> Repn:
    return theta_rho_data(N, data).module


def theta_rho_hom(g: ModHom, data: AuslanderData, src: ThetaRho = None, tgt: ThetaRho = None) -> ModHom:
    """theta_rho on morphisms: postcomposition Hom(M,N) -> Hom(M,N')."""
    if src is None:
        src = theta_rho_data(g.source, data)
    if tgt is None:
        tgt = theta_rho_data(g.target, data)
    if not src.homs or not tgt.homs:
        return zero_hom(src.module, tgt.module)
    rows = []
    for h in src.homs:
        rows.append(coords_in_rows(tgt.flat, (h.mat @ g.mat).flatten_row()))
    return ModHom(src.module, tgt.module, Mat.stack_rows(g.field, rows))


def counit(N: Repn, data: AuslanderData, trd: ThetaRho = None):
    """The natural isomorphism theta(theta_rho(N)) -> N, by evaluation at
    the image of the unit in the Lambda-summand."""
    if trd is None:
        trd = theta_rho_data(N, data)
    F = trd.module
    rows = corner_rows(F, data)
    thetaF = theta(F, data)
    u = data.lam.unit @ data.iota  # the element iota(1) of M
    out_rows = []
    for r in range(rows.rows):
        hmat = _hom_from_coords(trd, rows.row_at(r))
        out_rows.append(u @ hmat)
    mat = (
        Mat.stack_rows(N.field, out_rows)
        if out_rows
        else Mat.zeros(N.field, 0, N.dim)
    )
    return ModHom(thetaF, N, mat), trd


def _hom_from_coords(trd: ThetaRho, coords: Mat) -> Mat:
    acc = Mat.zeros(trd.flat.field, trd.homs[0].mat.rows, trd.homs[0].mat.cols) if trd.homs else Mat.zeros(trd.flat.field, 0, 0)
    for t, h in enumerate(trd.homs):
        c = coords.a[0, t]
        if c:
            acc = acc + h.mat.scale(c)
    return acc


# -- theta_lambda: presentation cokernel ----------------------------------------


@dataclass
class ThetaLambda:
    module: Repn  # over tilde
    proj_from: Repn  # theta_rho(P0)
    quotient: ModHom  # theta_rho(P0) -> module
    cover: ModHom  # P0 -> N over Lambda
    p0_data: ThetaRho


def theta_lambda_data(N: Repn, data: AuslanderData) -> ThetaLambda:
    cover = projective_cover(N)
    p0 = cover.source
    ker_rows = left_nullspace(cover.mat)
    trd0 = theta_rho_data(p0, data)
    if ker_rows.rows == 0:
        # N projective: theta_lambda(N) = theta_rho(N) on the nose
        trdN = theta_rho_data(N, data)
        quotient = theta_rho_hom(cover, data, trd0, trdN)
        return ThetaLambda(
            module=trdN.module,
            proj_from=trd0.module,
            quotient=quotient,
            cover=cover,
            p0_data=trd0,
        )
    omega, incl = sub_repn(p0, ker_rows)
    cover1 = projective_cover(omega)
    d = cover1.then(incl)  # P1 -> P0
    trd1 = theta_rho_data(cover1.source, data)
    lifted = theta_rho_hom(d, data, trd1, trd0)
    img = row_basis(lifted.mat)
    Q, proj = quotient_repn(trd0.module, img)
    return ThetaLambda(module=Q, proj_from=trd0.module, quotient=proj, cover=cover, p0_data=trd0)


def theta_lambda(N: Repn, data: AuslanderData) -> Repn:
    return theta_lambda_data(N, data).module


def unit_on_module(N: Repn, data: AuslanderData, tld: ThetaLambda = None):
    """The unit N -> theta(theta_lambda(N)) of the left adjunction.

    Built by factoring theta(quotient) o counit^(-1): P0 -> theta(theta_lambda N)
    through the cover P0 -> N; existence and uniqueness are theorems, and the
    construction solves the factorization exactly.
    """
    if tld is None:
        tld = theta_lambda_data(N, data)
    c0, _ = counit(tld.cover.source, data, tld.p0_data)
    # theta applied to the quotient map theta_rho(P0) -> theta_lambda(N)
    tq = theta_hom(tld.quotient, data)
    # c0 is invertible; route P0 -> theta(theta_rho P0) via its inverse
    inv = solve(c0.mat, Mat.identity(N.field, c0.mat.rows))
    assert inv is not None and c0.mat.rows == tld.cover.source.dim
    u0 = inv @ tq.mat  # P0 -> theta(theta_lambda N)
    sol = solve(tld.cover.mat, u0)
    assert sol is not None, "unit factorization failed"
    return ModHom(N, tq.target, sol), tld


# -- four-term sequence -----------------------------------------------------------


@dataclass
class FourTermSeq:
    F: Repn
    F0: Repn
    f0_incl: ModHom
    alpha: ModHom  # F -> middle
    middle: Repn  # theta_rho(theta(F))
    F1: Repn
    f1_proj: ModHom
    theta_F: Repn
    middle_data: ThetaRho


def four_term_sequence(F: Repn, data: AuslanderData) -> FourTermSeq:
    """0 -> F0 -> F -> theta_rho(theta F) -> F1 -> 0 with mod0 ends.

    alpha sends v to the module map M -> F.e, m -> v . (project, multiply
    by m, include); exactly the corner-adjunction unit.
    """
    lam = data.lam
    rows = corner_rows(F, data)
    thetaF = theta(F, data)
    trd = theta_rho_data(thetaF, data)
    middle = trd.module
    alpha_rows = []
    psi_cache = []
    for j in range(data.M.dim):
        # matrix of m_hat: Lambda -> M, lambda -> m_j . lambda
        mj = Mat.zeros(lam.field, 1, data.M.dim).a.copy()
        mj[0, j] = lam.field.one
        mj = Mat(lam.field, mj, _copy=False)
        m_hat = Mat.stack_rows(
            lam.field, [mj @ data.M.rho(lam.basis_element(t)) for t in range(lam.dim)]
        )
        psi = data.pi @ m_hat  # M -> M, "project then multiply"
        psi_cache.append(coords_in_rows(data.end_flat, psi.flatten_row()))
    for k in range(F.dim):
        vk = Mat.zeros(F.field, 1, F.dim).a.copy()
        vk[0, k] = F.field.one
        vk = Mat(F.field, vk, _copy=False)
        g_rows = []
        for j in range(data.M.dim):
            moved = vk @ F.rho(psi_cache[j])
            g_rows.append(coords_in_rows(rows, moved) if rows.rows else Mat.zeros(F.field, 1, 0))
        g = Mat.stack_rows(F.field, g_rows)  # M -> theta(F)
        alpha_rows.append(
            coords_in_rows(trd.flat, g.flatten_row())
            if trd.homs
            else Mat.zeros(F.field, 1, 0)
        )
    alpha_mat = (
        Mat.stack_rows(F.field, alpha_rows) if alpha_rows else Mat.zeros(F.field, 0, middle.dim)
    )
    alpha = ModHom(F, middle, alpha_mat)
    F0, f0_incl = sub_repn(F, left_nullspace(alpha_mat))
    F1, f1_proj = quotient_repn(middle, row_basis(alpha_mat))
    return FourTermSeq(
        F=F,
        F0=F0,
        f0_incl=f0_incl,
        alpha=alpha,
        middle=middle,
        F1=F1,
        f1_proj=f1_proj,
        theta_F=thetaF,
        middle_data=trd,
    )


# -- adjunction checks ---------------------------------------------------------------


def _hom_coords_matrix(source_homs: list, map_of_homs, target_homs: list, field) -> Mat:
    """Matrix (in hom bases) of a linear map defined on hom generators."""
    if not source_homs:
        return Mat.zeros(field, 0, len(target_homs))
    tgt_flat = (
        Mat.stack_rows(field, [h.mat.flatten_row() for h in target_homs])
        if target_homs
        else None
    )
    rows = []
    for h in source_homs:
        image = map_of_homs(h)
        if tgt_flat is None:
            rows.append(Mat.zeros(field, 1, 0))
        else:
            rows.append(coords_in_rows(tgt_flat, image.flatten_row()))
    return Mat.stack_rows(field, rows)


def adjunction_check(F: Repn, N: Repn, data: AuslanderData) -> dict:
    """Both module-level adjunctions with their explicit bijections.

    Right: Hom_tilde(F, theta_rho N) = Hom_Lambda(theta F, N) via
    g -> counit o theta(g).  Left: Hom_tilde(theta_lambda N, F) =
    Hom_Lambda(N, theta F) via h -> theta(h) o unit.
    """
    trdN = theta_rho_data(N, data)
    thetaF = theta(F, data)
    c, _ = counit(N, data, trdN)

    left_homs = hom_space(F, trdN.module)
    right_homs = hom_space(thetaF, N)

    def right_map(g: ModHom) -> Mat:
        tg = theta_hom(g, data, thetaF, None)
        return tg.mat @ c.mat

    phi = _hom_coords_matrix(left_homs, right_map, right_homs, F.field)
    right_ok = (
        len(left_homs) == len(right_homs)
        and rank(phi) == len(left_homs)
    )

    tld = theta_lambda_data(N, data)
    unit, _ = unit_on_module(N, data, tld)
    lam_homs = hom_space(N, thetaF)
    tilde_homs = hom_space(tld.module, F)

    def left_map(h: ModHom) -> Mat:
        th = theta_hom(h, data, None, thetaF)
        return unit.mat @ th.mat

    psi = _hom_coords_matrix(tilde_homs, left_map, lam_homs, F.field)
    left_ok = len(tilde_homs) == len(lam_homs) and rank(psi) == len(tilde_homs)

    return {
        "right_dims": (len(left_homs), len(right_homs)),
        "right_bijective": right_ok,
        "left_dims": (len(tilde_homs), len(lam_homs)),
        "left_bijective": left_ok,
        "ok": right_ok and left_ok,
    }


# -- independent oracle: theta via a projective presentation over tilde ---------------


def theta_via_presentation(F: Repn, data: AuslanderData) -> Repn:
    """theta(F) computed with no corner restriction: choose a projective
    presentation Q1 -> Q0 -> F -> 0 over tilde, read off the underlying map
    of add-M summands through the Yoneda correspondence, and take its
    cokernel in mod-Lambda."""
    from .modules import context

    if F.dim == 0:
        return zero_module(data.lam)
    ctx = context(data.tilde)
    summands = []
    for eps in ctx.idempotents:
        psi = data.end_matrix(eps.coords)
        summands.append(sub_repn(data.M, row_basis(psi)))

    q0, parts0 = projective_cover_with_parts(F)
    ker_rows = left_nullspace(q0.mat)
    if ker_rows.rows == 0:
        x0_parts = [summands[i][0] for i in parts0]
        if not x0_parts:
            return zero_module(data.lam)
        X0, _, _ = direct_sum(x0_parts)
        return X0
    omega, incl = sub_repn(q0.source, ker_rows)
    q1, parts1 = projective_cover_with_parts(omega)
    d = q1.then(incl)  # Q1 -> Q0 over tilde

    x0_parts = [summands[i][0] for i in parts0]
    x1_parts = [summands[i][0] for i in parts1]
    X0, _, _ = direct_sum(x0_parts) if x0_parts else (zero_module(data.lam), [], [])
    X1, _, _ = direct_sum(x1_parts) if x1_parts else (zero_module(data.lam), [], [])

    # block offsets in Q1, Q0 and X1, X0
    def offsets(mods):
        offs, o = [], 0
        for m in mods:
            offs.append(o)
            o += m.dim
        return offs

    q1_blocks = [ctx.projectives[i] for i in parts1]
    q0_blocks = [ctx.projectives[i] for i in parts0]
    q1_off = offsets(q1_blocks)
    q0_off = offsets(q0_blocks)
    x1_off = offsets(x1_parts)
    x0_off = offsets(x0_parts)

    dmat = Mat.zeros(data.lam.field, X1.dim, X0.dim).a.copy()
    for s, i1 in enumerate(parts1):
        pj = ctx.projectives[i1]
        gen = coords_in_rows(
            _projective_rows(ctx, i1), ctx.idempotents[i1].coords
        )  # coords of e_j inside its projective
        gen_in_q1 = Mat.zeros(data.lam.field, 1, d.source.dim).a.copy()
        gen_in_q1[0, q1_off[s] : q1_off[s] + pj.dim] = gen.a[0]
        image = Mat(data.lam.field, gen_in_q1, _copy=False) @ d.mat
        for t, i0 in enumerate(parts0):
            pk = ctx.projectives[i0]
            block = Mat(
                data.lam.field, image.a[:, q0_off[t] : q0_off[t] + pk.dim]
            )
            # back to tilde coordinates: w in e_k tilde e_j
            w = block @ _projective_rows(ctx, i0)
            W = data.end_matrix(w)
            nj_rows = summands[i1][1].mat
            nk_rows = summands[i0][1].mat
            core = coords_in_rows(nk_rows, nj_rows @ W)
            dmat[
                x1_off[s] : x1_off[s] + core.rows, x0_off[t] : x0_off[t] + core.cols
            ] = core.a
    dmod = ModHom(X1, X0, Mat(data.lam.field, dmat, _copy=False))
    assert dmod.validate(), "presentation differential is not Lambda-linear"
    Q, _ = quotient_repn(X0, row_basis(dmod.mat))
    return Q


def _projective_rows(ctx, idx) -> Mat:
    """Row basis of the idx-th indecomposable projective inside the regular
    module of tilde (rebuilt deterministically)."""
    A = ctx.algebra
    e = ctx.idempotents[idx]
    rows = [A.multiply(e.coords, A.basis_element(k)) for k in range(A.dim)]
    return row_basis(Mat.stack_rows(A.field, rows))
