"""The category of finite-dimensional right modules over an Algebra.

A module is a tuple of action matrices, one per algebra basis element,
acting on row vectors from the right: v . a := v @ rho(a).  A morphism
is a matrix F with rho_src(b) @ F = F @ rho_tgt(b) for every basis b.
Composition "f then g" is matrix product F @ G, and the composition
convention (fg)(m) = f(g(m)) makes Hom(M, N) a right End(M)-module with
no opposite-algebra twist anywhere in the code.
"""

from __future__ import annotations

import itertools
import random
import weakref
from fractions import Fraction

import numpy as np

from .algebra import Algebra, AlgebraError, primitive_idempotents
from .linalg import (
    FieldSpec,
    Mat,
    coords_in_rows,
    left_nullspace,
    nullspace,
    row_basis,
    row_span_contains,
    rref,
    solve_left,
)


class IsoInconclusive(Exception):
    """Isomorphism search exhausted its budget without a certificate either way."""


class Repn:
    """A right module: ``action[i]`` is the matrix of the i-th basis element."""

    def __init__(self, algebra: Algebra, dim: int, action: np.ndarray):
        self.algebra = algebra
        self.dim = dim
        self.action = action  # (algebra.dim, dim, dim)
        assert action.shape == (algebra.dim, dim, dim)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def action_mat(self, i: int) -> Mat:
        return Mat(self.field, self.action[i])

    def action_list(self, i: int) -> list:
        return [list(r) for r in self.action[i].tolist()]

    def rho(self, coords: Mat) -> Mat:
        """Matrix of the action of the element with the given coordinates."""
        if self.field.kind == "prime":
            a = np.tensordot(coords.a[0], self.action, axes=(0, 0)) % self.field.p
            return Mat(self.field, a, _copy=False)
        # object dtype: coordinate rows are usually sparse
        a = np.empty((self.dim, self.dim), dtype=object)
        a[...] = Fraction(0)
        for i in range(self.algebra.dim):
            c = coords.a[0, i]
            if c:
                a = a + self.action[i] * c
        return Mat(self.field, a, _copy=False)

    def act(self, v: Mat, coords: Mat) -> Mat:
        return v @ self.rho(coords)

    def validate(self) -> bool:
        A = self.algebra
        if self.dim == 0:
            return True
        if self.rho(A.unit) != Mat.identity(self.field, self.dim):
            return False
        for i in range(A.dim):
            mi = self.action_mat(i)
            for j in range(A.dim):
                lhs = mi @ self.action_mat(j)
                rhs = self.rho(Mat(self.field, A.table[i, j].reshape(1, -1)))
                if lhs != rhs:
                    return False
        return True

    def __repr__(self):
        return f"Repn(dim={self.dim})"


class ModHom:
    def __init__(self, source: Repn, target: Repn, mat: Mat):
        assert mat.rows == source.dim and mat.cols == target.dim
        self.source = source
        self.target = target
        self.mat = mat

    @property
    def field(self):
        return self.source.field

    def validate(self) -> bool:
        for i in range(self.source.algebra.dim):
            if self.source.action_mat(i) @ self.mat != self.mat @ self.target.action_mat(i):
                return False
        return True

    def then(self, g: "ModHom") -> "ModHom":
        """self followed by g (apply self first)."""
        assert self.target is g.source or self.target.dim == g.source.dim
        return ModHom(self.source, g.target, self.mat @ g.mat)

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def __repr__(self):
        return f"ModHom({self.source.dim}->{self.target.dim})"


def zero_module(A: Algebra) -> Repn:
    action = (
        np.zeros((A.dim, 0, 0), dtype=np.int64)
        if A.field.kind == "prime"
        else np.empty((A.dim, 0, 0), dtype=object)
    )
    return Repn(A, 0, action)


def zero_hom(M: Repn, N: Repn) -> ModHom:
    return ModHom(M, N, Mat.zeros(M.field, M.dim, N.dim))


def identity_hom(M: Repn) -> ModHom:
    return ModHom(M, M, Mat.identity(M.field, M.dim))


def regular_module(A: Algebra) -> Repn:
    """A as a right module over itself: action of b_i = right multiplication."""
    act = A.table.transpose(1, 0, 2)  # act[i][k, :] = coords of b_k * b_i
    return Repn(A, A.dim, np.ascontiguousarray(act))


def _action_on_rows(M: Repn, rows: Mat) -> np.ndarray:
    """Induced action matrices on an action-stable row subspace."""
    A = M.algebra
    k = rows.rows
    out = (
        np.zeros((A.dim, k, k), dtype=np.int64)
        if M.field.kind == "prime"
        else np.empty((A.dim, k, k), dtype=object)
    )
    for i in range(A.dim):
        moved = rows @ M.action_mat(i)
        c = solve_left(rows, moved)
        if c is None:
            raise ValueError("subspace is not action-stable")
        out[i] = c.a
    return out


def sub_repn(M: Repn, rows: Mat):
    """Submodule on an action-stable row subspace.  Returns (S, inclusion)."""
    rows = row_basis(rows)
    S = Repn(M.algebra, rows.rows, _action_on_rows(M, rows))
    return S, ModHom(S, M, rows)


def quotient_repn(M: Repn, rows: Mat):
    """Quotient by an action-stable row subspace.  Returns (Q, projection)."""
    f = M.field
    rows = row_basis(rows)
    r, pivots, _ = rref(rows) if rows.rows else (rows, [], 0)
    nonpiv = [c for c in range(M.dim) if c not in pivots]
    proj = Mat.zeros(f, M.dim, len(nonpiv)).a.copy()
    for jq, c in enumerate(nonpiv):
        proj[c, jq] = f.one
    for i, pc in enumerate(pivots):
        for jq, c in enumerate(nonpiv):
            val = -r.a[i, c]
            proj[pc, jq] = val % f.p if f.kind == "prime" else val
    proj = Mat(f, proj, _copy=False)
    section = Mat.zeros(f, len(nonpiv), M.dim).a.copy()
    for jq, c in enumerate(nonpiv):
        section[jq, c] = f.one
    section = Mat(f, section, _copy=False)
    k = len(nonpiv)
    act = (
        np.zeros((M.algebra.dim, k, k), dtype=np.int64)
        if f.kind == "prime"
        else np.empty((M.algebra.dim, k, k), dtype=object)
    )
    for i in range(M.algebra.dim):
        act[i] = (section @ M.action_mat(i) @ proj).a
    Q = Repn(M.algebra, k, act)
    return Q, ModHom(M, Q, proj)


def direct_sum(parts: list):
    """Block-diagonal sum.  Returns (sum, injections, projections)."""
    if not parts:
        raise ValueError("direct_sum of no parts needs an algebra; use zero_module")
    A = parts[0].algebra
    f = A.field
    total = sum(p.dim for p in parts)
    act = (
        np.zeros((A.dim, total, total), dtype=np.int64)
        if f.kind == "prime"
        else np.empty((A.dim, total, total), dtype=object)
    )
    if f.kind == "rational":
        act[...] = Fraction(0)
    offs = []
    o = 0
    for p in parts:
        offs.append(o)
        for i in range(A.dim):
            act[i][o : o + p.dim, o : o + p.dim] = p.action[i]
        o += p.dim
    S = Repn(A, total, act)
    injections, projections = [], []
    for p, o in zip(parts, offs):
        inj = Mat.zeros(f, p.dim, total).a.copy()
        prj = Mat.zeros(f, total, p.dim).a.copy()
        for t in range(p.dim):
            inj[t, o + t] = f.one
            prj[o + t, t] = f.one
        injections.append(ModHom(p, S, Mat(f, inj, _copy=False)))
        projections.append(ModHom(S, p, Mat(f, prj, _copy=False)))
    return S, injections, projections


# -- Hom spaces -----------------------------------------------------------


def hom_space(M: Repn, N: Repn) -> list:
    """Basis of Hom(M, N) as a list of ModHom.

    Solves the intertwining equations for a generating set of the algebra
    (performance), then verifies each basis vector against every basis
    element (soundness).
    """
    if M.algebra is not N.algebra:
        raise ValueError("hom_space: modules over different algebras")
    f = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    gens = M.algebra.generating_indices()
    if not gens:
        # algebra spanned by the unit: every matrix intertwines
        basis = []
        for a in range(m):
            for b in range(n):
                mat = Mat.zeros(f, m, n).a.copy()
                mat[a, b] = f.one
                basis.append(ModHom(M, N, Mat(f, mat, _copy=False)))
        return basis
    rows = []
    for g in gens:
        rows.append(_intertwine_block(f, M.action[g], N.action[g]))
    big = Mat(f, np.vstack(rows), _copy=False)
    ker = nullspace(big)  # columns = flattened hom matrices
    basis = []
    for c in range(ker.cols):
        mat = Mat(f, ker.a[:, c].reshape(m, n))
        h = ModHom(M, N, mat)
        if not h.validate():
            raise AssertionError("generator-reduced hom failed full intertwining check")
        basis.append(h)
    return basis


def _intertwine_block(field, act_m: np.ndarray, act_n: np.ndarray) -> np.ndarray:
    """kron(act_m, I_n) - kron(I_m, act_n.T) without dense object kron."""
    m = act_m.shape[0]
    n = act_n.shape[0]
    if field.kind == "prime":
        return np.kron(act_m, np.eye(n, dtype=np.int64)) - np.kron(
            np.eye(m, dtype=np.int64), act_n.T
        )
    block = np.empty((m * n, m * n), dtype=object)
    block[...] = Fraction(0)
    for i in range(m):
        for a in range(m):
            v = act_m[i, a]
            if v:
                for b in range(n):
                    block[i * n + b, a * n + b] += v
    for c in range(n):
        for b in range(n):
            v = act_n[c, b]
            if v:
                for i in range(m):
                    block[i * n + b, i * n + c] -= v
    return block


def hom_flat_basis(homs: list, m: int, n: int, field: FieldSpec) -> Mat:
    """Hom basis flattened to rows (k x m*n), for coordinate computations."""
    if not homs:
        return Mat.zeros(field, 0, m * n)
    return Mat.stack_rows(field, [h.mat.flatten_row() for h in homs])


def hom_factorization(fh: ModHom):
    """Kernel, image, cokernel of a morphism.

    Returns ((K, incl), (I, incl), (C, proj)); rank-nullity and the
    exactness of 0 -> K -> source -> I -> 0 hold by construction and are
    asserted in tests.
    """
    ker_rows = left_nullspace(fh.mat)
    K, k_incl = sub_repn(fh.source, ker_rows)
    im_rows = row_basis(fh.mat)
    I, i_incl = sub_repn(fh.target, im_rows)
    C, c_proj = quotient_repn(fh.target, im_rows)
    return (K, k_incl), (I, i_incl), (C, c_proj)


# -- per-algebra derived data ----------------------------------------------


class ModuleContext:
    """Memoized per-algebra data: radical, idempotents, simples, projectives."""

    def __init__(self, A: Algebra):
        self.algebra = A
        self.regular = regular_module(A)
        self.chain = A.radical_chain()
        self._idempotents = None
        self._simples_projs = None

    @property
    def idempotents(self):
        if self._idempotents is None:
            self._idempotents = primitive_idempotents(self.algebra, self.chain)
        return self._idempotents

    @property
    def projectives(self):
        return self._simples_and_projectives()[1]

    @property
    def simples(self):
        return self._simples_and_projectives()[0]

    def _simples_and_projectives(self):
        if self._simples_projs is None:
            self._simples_projs = simple_and_projective_modules(self.algebra, self.idempotents)
        return self._simples_projs

    def radical_rows(self, M: Repn) -> Mat:
        """Row span of M . J inside M."""
        j = self.chain.radical
        if j.rows == 0 or M.dim == 0:
            return Mat.zeros(M.field, 0, M.dim)
        mats = [M.rho(j.row_at(t)) for t in range(j.rows)]
        return row_basis(Mat.stack_rows(M.field, [m for m in mats]))

    def top(self, M: Repn):
        return quotient_repn(M, self.radical_rows(M))


_contexts: "weakref.WeakKeyDictionary[Algebra, ModuleContext]" = weakref.WeakKeyDictionary()


def context(A: Algebra) -> ModuleContext:
    ctx = _contexts.get(A)
    if ctx is None:
        ctx = ModuleContext(A)
        _contexts[A] = ctx
    return ctx


def simple_and_projective_modules(A: Algebra, idempotents: list):
    """P_i = e_i A as a submodule of the regular module; S_i = P_i / P_i J."""
    ctx_reg = regular_module(A)
    chain = A.radical_chain()
    simples, projs = [], []
    for e in idempotents:
        rows = [A.multiply(e.coords, A.basis_element(k)) for k in range(A.dim)]
        span = row_basis(Mat.stack_rows(A.field, rows))
        P, _ = sub_repn(ctx_reg, span)
        j = chain.radical
        if j.rows and P.dim:
            rad = row_basis(
                Mat.stack_rows(A.field, [P.rho(j.row_at(t)) for t in range(j.rows)])
            )
        else:
            rad = Mat.zeros(A.field, 0, P.dim)
        S, _ = quotient_repn(P, rad)
        projs.append(P)
        simples.append(S)
    return simples, projs


def projective_cover(M: Repn) -> ModHom:
    """Minimal projective cover P -> M (epi with superfluous kernel)."""
    return projective_cover_with_parts(M)[0]


def projective_cover_with_parts(M: Repn):
    """Projective cover plus the indices (into context(A).projectives) of its
    indecomposable summands, in block order."""
    ctx = context(M.algebra)
    f = M.field
    if M.dim == 0:
        return zero_hom(zero_module(M.algebra), M), []
    T, piT = ctx.top(M)
    chosen = []
    part_indices = []
    # greedy: keep a hom iff its composite to the top is independent of the
    # composites already chosen.  Pool the span per source dimension: copies
    # of isomorphic projectives (repeated summands) must not double-cover,
    # while homs from non-isomorphic sources can never mix linearly (a
    # flattened vector in both spans would intertwine both actions).
    spans = {}
    for pi_idx, P in enumerate(ctx.projectives):
        if P.dim == 0:
            continue
        for h in hom_space(P, M):
            comp = (h.mat @ piT.mat).flatten_row()
            if comp.is_zero():
                continue
            span = spans.get(P.dim)
            if span is not None and row_span_contains(span, comp):
                continue
            spans[P.dim] = comp if span is None else row_basis(span.vstack(comp))
            chosen.append(h)
            part_indices.append(pi_idx)
    if not chosen:
        raise AlgebraError("projective cover: no covering maps found (nonzero M with zero top?)")
    parts = [h.source for h in chosen]
    P, injections, _ = direct_sum(parts)
    q = ModHom(P, M, Mat.stack_rows(f, [h.mat for h in chosen]))
    # epi + kernel inside P.J; fails only for non-split simples, which the
    # idempotent machinery would have rejected earlier
    if rref(q.mat)[2] != M.dim:
        raise AlgebraError("projective cover construction is not surjective")
    ker_rows = left_nullspace(q.mat)
    prad = ctx.radical_rows(P)
    for t in range(ker_rows.rows):
        if not row_span_contains(prad, ker_rows.row_at(t)):
            raise AlgebraError("projective cover kernel is not superfluous")
    return q, part_indices


def is_projective(M: Repn) -> bool:
    return projective_cover(M).source.dim == M.dim


# -- isomorphism search -----------------------------------------------------

EXHAUSTIVE_BUDGET = 1 << 16
RANDOM_TRIALS = 64


def _is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rref(m)[2] == m.rows


def is_isomorphic(M: Repn, N: Repn):
    """An invertible intertwiner M -> N, None if certified non-isomorphic.

    Raises IsoInconclusive when neither a certificate of isomorphism nor an
    exhaustive refutation fits in the search budget.
    """
    if M.algebra is not N.algebra:
        raise ValueError("is_isomorphic: different algebras")
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return zero_hom(M, N)
    homs = hom_space(M, N)
    if not homs:
        return None
    for h in homs:
        if _is_invertible(h.mat):
            return h
    f = M.field
    k = len(homs)
    rng = random.Random(f"catres-iso:{M.dim}:{k}")
    for _ in range(RANDOM_TRIALS):
        if f.kind == "prime":
            coeffs = [rng.randrange(f.p) for _ in range(k)]
        else:
            coeffs = [rng.randint(-3, 3) for _ in range(k)]
        cand = _combine(homs, coeffs)
        if _is_invertible(cand.mat):
            return cand
    # deterministic exhaustive fallback
    if f.kind == "prime":
        if f.p**k <= EXHAUSTIVE_BUDGET:
            for coeffs in itertools.product(range(f.p), repeat=k):
                cand = _combine(homs, coeffs)
                if _is_invertible(cand.mat):
                    return cand
            return None
    else:
        # det of a combination has degree <= dim in each coefficient, so
        # vanishing on the grid {0..dim}^k certifies no isomorphism exists
        grid = M.dim + 1
        if grid**k <= EXHAUSTIVE_BUDGET:
            for coeffs in itertools.product(range(grid), repeat=k):
                cand = _combine(homs, coeffs)
                if _is_invertible(cand.mat):
                    return cand
            return None
    raise IsoInconclusive(f"hom dimension {k} exceeds the exhaustive budget")


def _combine(homs: list, coeffs) -> ModHom:
    acc = Mat.zeros(homs[0].field, homs[0].mat.rows, homs[0].mat.cols)
    for h, c in zip(homs, coeffs):
        if c:
            acc = acc + h.mat.scale(c)
    return ModHom(homs[0].source, homs[0].target, acc)


# -- approximations and endomorphism algebras --------------------------------


def right_approximation(N: Repn, M: Repn) -> ModHom:
    """The right add(M)-approximation M^r -> N given by a Hom-basis."""
    homs = hom_space(M, N)
    r = len(homs)
    if r == 0:
        return zero_hom(zero_module(M.algebra), N)
    P, _, _ = direct_sum([M] * r)
    return ModHom(P, N, Mat.stack_rows(M.field, [h.mat for h in homs]))


def factors_through(f: ModHom, approx: ModHom) -> bool:
    """Does f: M -> N factor as g then approx for some module map g?"""
    homs = hom_space(f.source, approx.source)
    if not homs:
        return f.is_zero()
    stacked = Mat.stack_rows(
        f.field, [(h.mat @ approx.mat).flatten_row() for h in homs]
    )
    return solve_left(stacked, f.mat.flatten_row()) is not None


def endomorphism_algebra(M: Repn):
    """End(M) with product (fg)(m) = f(g(m)).  Returns (Algebra, end_basis).

    ``end_basis[t]`` is the matrix of the t-th basis endomorphism; the
    algebra product phi_i phi_j corresponds to mat(phi_j) @ mat(phi_i).
    """
    if M.dim == 0:
        raise ValueError("endomorphism algebra of the zero module")
    f = M.field
    homs = hom_space(M, M)
    k = len(homs)
    flat = hom_flat_basis(homs, M.dim, M.dim, f)
    table = (
        np.zeros((k, k, k), dtype=np.int64) if f.kind == "prime" else np.empty((k, k, k), dtype=object)
    )
    for i in range(k):
        for j in range(k):
            prod = homs[j].mat @ homs[i].mat
            table[i, j] = coords_in_rows(flat, prod.flatten_row()).a[0]
    unit = coords_in_rows(flat, Mat.identity(f, M.dim).flatten_row())
    labels = [f"phi{t}" for t in range(k)]
    E = Algebra(f, labels, unit, table, provenance="endomorphism")
    return E, [h.mat for h in homs]
