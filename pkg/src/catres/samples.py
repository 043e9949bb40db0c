"""Deterministic sample generation for property suites.

Every sample is derived from (seed, suite, index) through a string-seeded
RNG, so results are identical across runs, platforms, and thread counts.
Modules are drawn from a fixed pool (simples, projectives, Hom-lifts of the
filtration summands), then combined by sums, random quotients and kernels;
complexes by shifted sums, cones, and truncated resolutions.
"""

from __future__ import annotations

import random

from .auslander import AuslanderData
from .functors import in_mod0, theta_rho
from .linalg import Mat, left_nullspace, row_basis
from .modules import (
    ModHom,
    Repn,
    context,
    direct_sum,
    hom_space,
    quotient_repn,
    sub_repn,
    zero_module,
)


def rng_for(seed: int, suite: str, index: int) -> random.Random:
    return random.Random(f"catres:{seed}:{suite}:{index}")


def random_scalar(rng: random.Random, field):
    if field.kind == "prime":
        return rng.randrange(field.p)
    return rng.randint(-2, 2)


def random_hom(rng: random.Random, M: Repn, N: Repn) -> ModHom:
    homs = hom_space(M, N)
    acc = Mat.zeros(M.field, M.dim, N.dim)
    for h in homs:
        c = random_scalar(rng, M.field)
        if c:
            acc = acc + h.mat.scale(c)
    return ModHom(M, N, acc)


class ModulePool:
    """Reusable building blocks over tilde and over Lambda."""

    def __init__(self, data: AuslanderData):
        self.data = data
        lam = data.lam
        tilde = data.tilde
        ctx_l = context(lam)
        ctx_t = context(tilde)
        self.lam_pool = [ctx_l.regular] + list(ctx_l.simples) + list(data.summands)
        self.lam_projectives = [p for p in ctx_l.projectives if p.dim]
        tilde_pool = [s for s in ctx_t.simples] + [p for p in ctx_t.projectives if p.dim]
        tilde_pool += [theta_rho(n, data) for n in [ctx_l.regular] + list(ctx_l.simples)]
        self.tilde_pool = [m for m in tilde_pool if m.dim]
        self.tilde_mod0 = [m for m in self.tilde_pool if in_mod0(m, data)]

    def random_tilde_module(self, rng: random.Random, max_dim: int) -> Repn:
        """Direct sums, then optionally a random quotient or submodule."""
        parts = []
        budget = max_dim
        for _ in range(rng.randint(1, 3)):
            cand = rng.choice(self.tilde_pool)
            if cand.dim <= budget:
                parts.append(cand)
                budget -= cand.dim
        if not parts:
            parts = [min(self.tilde_pool, key=lambda m: m.dim)]
        m, _, _ = direct_sum(parts)
        move = rng.randrange(3)
        if move and m.dim > 1:
            other = rng.choice(self.tilde_pool)
            if move == 1:
                f = random_hom(rng, m, other)
                sub, _ = sub_repn(m, left_nullspace(f.mat))
                if 0 < sub.dim:
                    return sub
            else:
                f = random_hom(rng, other, m)
                q, _ = quotient_repn(m, row_basis(f.mat))
                if 0 < q.dim:
                    return q
        return m

    def random_mod0_module(self, rng: random.Random, max_dim: int) -> Repn:
        """A module killed by e: sums of mod0 pool members, then a random
        quotient (mod0 is closed under sums, subs and quotients)."""
        if not self.tilde_mod0:
            return zero_module(self.data.tilde)
        parts = []
        budget = max_dim
        for _ in range(rng.randint(1, 3)):
            cand = rng.choice(self.tilde_mod0)
            if cand.dim <= budget:
                parts.append(cand)
                budget -= cand.dim
        if not parts:
            parts = [self.tilde_mod0[0]]
        m, _, _ = direct_sum(parts)
        if rng.randrange(2) and len(self.tilde_mod0) > 0:
            f = random_hom(rng, rng.choice(self.tilde_mod0), m)
            q, _ = quotient_repn(m, row_basis(f.mat))
            if q.dim:
                return q
        return m

    def random_lam_module(self, rng: random.Random, max_dim: int) -> Repn:
        parts = []
        budget = max_dim
        for _ in range(rng.randint(1, 2)):
            cand = rng.choice(self.lam_pool)
            if cand.dim <= budget:
                parts.append(cand)
                budget -= cand.dim
        if not parts:
            parts = [min(self.lam_pool, key=lambda m: m.dim)]
        m, _, _ = direct_sum(parts)
        return m

    def random_projective_lam_module(self, rng: random.Random, max_dim: int) -> Repn:
        parts = []
        budget = max_dim
        for _ in range(rng.randint(1, 3)):
            cand = rng.choice(self.lam_projectives)
            if cand.dim <= budget:
                parts.append(cand)
                budget -= cand.dim
        if not parts:
            parts = [min(self.lam_projectives, key=lambda m: m.dim)]
        m, _, _ = direct_sum(parts)
        return m

    # -- complexes ------------------------------------------------------

    def _sum_of_shifts(self, rng, window: int, max_term_dim: int, module_picker):
        from .complexes import BComplex, direct_sum_complexes, module_complex, zero_complex

        algebra = None
        parts = []
        for _ in range(rng.randint(1, 3)):
            m = module_picker(rng, max_term_dim)
            algebra = m.algebra
            deg = rng.randrange(window)
            parts.append(module_complex(m, deg))
        if not parts:
            return zero_complex(algebra)
        return direct_sum_complexes(parts)

    def random_chain_map(self, rng, C, D):
        from .complexes import ChainMap, kb_hom

        kb = kb_hom(C, D)
        if kb.chain_rows.rows == 0:
            return ChainMap(C, D, {})
        coords = Mat.zeros(C.algebra.field, 1, kb.total).a.copy()
        for r in range(kb.chain_rows.rows):
            c = random_scalar(rng, C.algebra.field)
            if c:
                row = kb.chain_rows.row_at(r).scale(c)
                coords = (Mat(C.algebra.field, coords, _copy=False) + row).a
        return kb.coords_to_chainmap(Mat(C.algebra.field, coords))

    def _random_complex(self, rng, window, max_term_dim, module_picker, resolution_pool):
        """Shifted sums, cones of random chain maps, truncated resolutions."""
        from .complexes import cone

        kind = rng.randrange(4)
        if kind == 0:
            return self._sum_of_shifts(rng, window, max_term_dim, module_picker)
        if kind == 1:
            a = self._sum_of_shifts(rng, max(1, window - 1), max_term_dim // 2 + 1, module_picker)
            b = self._sum_of_shifts(rng, max(1, window - 1), max_term_dim // 2 + 1, module_picker)
            f = self.random_chain_map(rng, a, b)
            cn, _, _ = cone(f)
            return cn.trim() if not cn.is_zero() else cn
        if kind == 2 and resolution_pool:
            from .complexes import BComplex
            from .homology import projective_resolution

            m = rng.choice(resolution_pool)
            depth = rng.randint(1, max(1, window - 1))
            res = projective_resolution(m, max_depth=depth, halt_on_periodic=False)
            # place P_j at degree -j: ... -> P_1 -> P_0
            terms = list(reversed(res.modules))
            diffs = list(reversed(res.differentials))
            if len(terms) == 1:
                cx = BComplex(m.algebra, 0, terms, [])
            else:
                cx = BComplex(m.algebra, -(len(terms) - 1), terms, diffs)
            return cx.shift(rng.randrange(window) - window // 2)
        return self._sum_of_shifts(rng, window, max_term_dim, module_picker)

    def random_tilde_complex(self, rng, window: int, max_term_dim: int):
        return self._random_complex(
            rng, window, max_term_dim, self.random_tilde_module, self.tilde_pool
        )

    def random_mod0_complex(self, rng, window: int, max_term_dim: int):
        """All terms killed by e: sums of shifted mod0 modules and cones of
        chain maps between them (cone terms are sums of mod0 terms)."""
        kind = rng.randrange(2)
        if kind == 0:
            return self._sum_of_shifts(rng, window, max_term_dim, self.random_mod0_module)
        from .complexes import cone

        a = self._sum_of_shifts(rng, max(1, window - 1), max_term_dim // 2 + 1, self.random_mod0_module)
        b = self._sum_of_shifts(rng, max(1, window - 1), max_term_dim // 2 + 1, self.random_mod0_module)
        f = self.random_chain_map(rng, a, b)
        cn, _, _ = cone(f)
        return cn

    def random_projective_lam_complex(self, rng, window: int, max_term_dim: int):
        """Bounded complex with all terms in add(regular module)."""
        from .complexes import BComplex, cone, module_complex

        kind = rng.randrange(3)
        if kind == 0:
            return self._sum_of_shifts(
                rng, window, max_term_dim, self.random_projective_lam_module
            )
        if kind == 1:
            p = self.random_projective_lam_module(rng, max_term_dim)
            q = self.random_projective_lam_module(rng, max_term_dim)
            f = random_hom(rng, p, q)
            deg = rng.randrange(max(1, window - 1))
            return BComplex(p.algebra, deg, [p, q], [f])
        a = self._sum_of_shifts(
            rng, max(1, window - 1), max_term_dim // 2 + 1, self.random_projective_lam_module
        )
        b = self._sum_of_shifts(
            rng, max(1, window - 1), max_term_dim // 2 + 1, self.random_projective_lam_module
        )
        f = self.random_chain_map(rng, a, b)
        cn, _, _ = cone(f)
        return cn
