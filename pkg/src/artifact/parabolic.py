"""Maximal parabolic subalgebras q_j = m_j + a_j + n_j and their boundary data."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liealg import (
    bracket_residual,
    center,
    centralizer,
    generated_subalgebra,
    is_subalgebra,
)
from .numlin import (
    Subspace,
    complement_within,
    intersect,
    is_contained,
    span,
    subspace_equal,
)
from .roots import RestrictedRootDatum

CHECK_TOL = 1e-8


@dataclass(frozen=True)
class ParabolicDatum:
    datum: RestrictedRootDatum
    j: int
    Sigma_j: tuple
    a_j: Subspace
    a_upper: Subspace  # a^j = a ⊖ a_j
    n_j: Subspace
    grading: dict
    l_j: Subspace
    m_j: Subspace
    k_j: Subspace
    z_j: Subspace
    g_j: Subspace
    gtilde_j: Subspace
    b_j: Subspace
    compact_part: Subspace
    q_j: Subspace
    H_j: np.ndarray

    @property
    def g(self):
        return self.datum.g

    @property
    def split(self):
        return self.datum.split

    def level(self, label) -> int:
        return int(label[self.j - 1])

    def n1(self) -> Subspace:
        return self.grading[1]

    def boundary_root_spaces(self) -> list:
        return [l for l in self.datum.roots if l in self.Sigma_j]


def _require(cond: bool, what: str):
    if not cond:
        raise ArithmeticError(f"parabolic invariant failed: {what}")


def build_parabolic(d: RestrictedRootDatum, j: int, verify: bool = True) -> ParabolicDatum:
    """Assemble q_j for the simple root alpha_j (1-based) and verify its structure."""
    if not 1 <= j <= d.rank:
        raise ValueError("j out of range")
    g, split = d.g, d.split
    idx = j - 1
    Sigma_j = tuple(l for l in d.roots if l[idx] == 0)
    H_j = d.H_dual[idx]
    a_j = g.span([H_j]).with_label(f"a_{j}")
    a_upper = complement_within(d.a, a_j).with_label(f"a^{j}")
    levels = sorted({l[idx] for l in d.positives if l[idx] > 0})
    grading = {nu: d.sum_of([l for l in d.positives if l[idx] == nu]).with_label(f"n_{j}^{nu}")
               for nu in levels}
    n_j = span(*grading.values()).with_label(f"n_{j}")
    l_j = span(d.g0, d.sum_of(Sigma_j)).with_label(f"l_{j}")
    m_j = complement_within(l_j, a_j).with_label(f"m_{j}")
    k_j = intersect(m_j, split.k).with_label(f"k_{j}")
    z_j = center(g, m_j).with_label(f"z_{j}")
    g_j = complement_within(m_j, z_j).with_label(f"g_{j}")
    gtilde = generated_subalgebra(g, d.sum_of(Sigma_j)).with_label(f"gtilde_{j}")
    b_j = intersect(gtilde, split.p).with_label(f"b_{j}")
    zk = centralizer(g, d.k0, b_j)
    compact = complement_within(zk, z_j).with_label(f"compact_{j}")
    q_j = span(m_j, a_j, n_j).with_label(f"q_{j}")
    pd = ParabolicDatum(d, j, Sigma_j, a_j, a_upper, n_j, grading, l_j, m_j, k_j, z_j,
                        g_j, gtilde, b_j, compact, q_j, H_j)
    if verify:
        verify_parabolic(pd)
    return pd


def verify_parabolic(pd: ParabolicDatum) -> dict:
    """Check the structural invariants; raises on failure, returns residuals."""
    g, split, d = pd.g, pd.split, pd.datum
    out = {}
    out["l_j = Z_g(a_j)"] = subspace_equal(pd.l_j, centralizer(g, g.full(), pd.a_j))
    out["[l_j, n_j] in n_j"] = bracket_residual(g, pd.l_j, pd.n_j, pd.n_j) < CHECK_TOL
    levels = sorted(pd.grading)
    graded = True
    for mu in levels:
        for nu in levels:
            tgt = pd.grading.get(mu + nu, g.zero())
            graded &= bracket_residual(g, pd.grading[mu], pd.grading[nu], tgt) < CHECK_TOL
    out["grading multiplicative"] = graded
    out["q_j dims"] = pd.q_j.dim == pd.m_j.dim + pd.a_j.dim + pd.n_j.dim
    out["z_j in k0"] = is_contained(pd.z_j, d.k0)
    out["g_j = compact + gtilde"] = subspace_equal(span(pd.compact_part, pd.gtilde_j), pd.g_j) and \
        pd.compact_part.dim + pd.gtilde_j.dim == pd.g_j.dim
    out["compact ⊥ gtilde"] = (
        pd.compact_part.dim == 0 or pd.gtilde_j.dim == 0 or
        float(np.max(np.abs(pd.compact_part.basis.T @ g.metric @ pd.gtilde_j.basis))) < CHECK_TOL
    )
    out["[compact, gtilde] = 0"] = bracket_residual(g, pd.compact_part, pd.gtilde_j, g.zero()) < CHECK_TOL
    out["b_j = g_j ∩ p"] = subspace_equal(pd.b_j, intersect(pd.g_j, split.p))
    out["b_j Lie triple system"] = lie_triple_residual(g, pd.b_j) < CHECK_TOL
    out["a^j in gtilde"] = is_contained(pd.a_upper, pd.gtilde_j)
    out["m_j subalgebra"] = is_subalgebra(g, pd.m_j)
    failed = [k for k, v in out.items() if not v]
    _require(not failed, ", ".join(failed))
    return out


def lie_triple_residual(g, S: Subspace) -> float:
    """max residual of [[s1, s2], s3] off S."""
    if S.dim == 0:
        return 0.0
    T = g.bracket_table(S.basis, S.basis).reshape(-1, g.dim).T
    TT = g.bracket_table(T, S.basis).reshape(-1, g.dim).T
    R = TT - S.project(TT)
    return float(np.max(np.abs(R))) if R.size else 0.0


def grade_nilradical(pd: ParabolicDatum) -> dict:
    """n_j^nu for nu = 1 .. delta(H^j)."""
    return dict(pd.grading)


def centralizer_chain(pd: ParabolicDatum) -> list:
    """Z_{k0} and Z_{m_j} of b_j, of the sum of the g_alpha (alpha in Sigma_j), and of gtilde_j."""
    g, d = pd.g, pd.datum
    roots_sum = d.sum_of(pd.Sigma_j)
    out = []
    for amb in (d.k0, pd.m_j):
        for s in (pd.b_j, roots_sum, pd.gtilde_j):
            out.append(centralizer(g, amb, s))
    return out


def centralizer_chain_check(pd: ParabolicDatum) -> bool:
    """True iff the six centralizers coincide."""
    chain = centralizer_chain(pd)
    return all(subspace_equal(chain[0], c) for c in chain[1:])


__all__ = [
    "ParabolicDatum", "build_parabolic", "grade_nilradical", "centralizer_chain",
    "centralizer_chain_check", "verify_parabolic", "lie_triple_residual",
]
