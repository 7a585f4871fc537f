"""Subalgebra builders for cohomogeneity-one actions and the nilpotent-construction checks."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .liealg import (
    CartanSplit,
    LieAlgebra,
    cartan_split,
    is_subalgebra,
    normalizer,
)
from .numlin import (
    Subspace,
    complement_within,
    intersect,
    is_contained,
    orthonormalize,
    span,
    subspace_equal,
    unit_vector_in,
)
from .parabolic import ParabolicDatum, lie_triple_residual
from .roots import RestrictedRootDatum

PROTO_SAMPLES = 16
SLICE_SAMPLES = 8

FAMILIES = (
    "foliation_hyperplane",
    "foliation_solvable",
    "reductive_totgeod",
    "canonical_extension",
    "nilpotent_construction",
)


@functools.lru_cache(maxsize=None)
def _split_of(g: LieAlgebra) -> CartanSplit:
    return cartan_split(g)


@dataclass(frozen=True)
class ActionRecord:
    """One cohomogeneity-one action, given by its Lie subalgebra."""

    id: str
    family: str
    params: dict
    subalgebra: Subspace
    orbit_tangent: Subspace
    singular_codim: int | None
    checks: dict = field(default_factory=dict)

    @property
    def orbit_codim(self) -> int:
        return int(self.checks["orbit_codim_at_o"])


@dataclass(frozen=True)
class Verdict:
    admissible: bool
    protohomogeneous: bool
    normalizer_dim: int
    projection_dim: int
    b_dim: int
    matched_action: str | None = None
    relation: str | None = None


@dataclass(frozen=True)
class NilpotentCandidate:
    space: str
    j: int
    v: Subspace
    label: str
    case: str
    params: dict = field(default_factory=dict)


# ----------------------------------------------------------------------------
# projections and orbit data


def project_p(g: LieAlgebra, x: np.ndarray) -> np.ndarray:
    """Component of x in p along k."""
    return 0.5 * (x - g.theta @ x)


def orbit_tangent_at_o(g: LieAlgebra, h: Subspace) -> Subspace:
    """pr_p(h): the tangent space at o of the orbit through o."""
    if h.dim == 0:
        return g.zero()
    return orthonormalize(h.basis - g.theta @ h.basis, g.metric, g.tol, ambient_dim=g.dim)


def slice_is_transitive(g: LieAlgebra, h: Subspace, rng: np.random.Generator,
                        samples: int = SLICE_SAMPLES) -> bool:
    """Isotropy h ∩ k acts on the normal space at o with orbits of codim 1 in the sphere.

    This is the infinitesimal form of cohomogeneity one: the slice
    representation at o is transitive on the unit normal sphere.
    """
    split = _split_of(g)
    T = orbit_tangent_at_o(g, h)
    N = complement_within(split.p, T)
    if N.dim <= 1:
        return True
    iso = intersect(h, split.k)
    return _sphere_transitive(g, iso, N, rng, samples)


def _sphere_transitive(g: LieAlgebra, acting: Subspace, V: Subspace,
                       rng: np.random.Generator, samples: int) -> bool:
    if V.dim <= 1:
        return True
    if acting.dim < V.dim - 1:
        return False
    xs = [V.basis[:, 0]] + [unit_vector_in(V, rng) for _ in range(samples)]
    for x in xs:
        imgs = np.stack([g.br(K, x) for K in acting.basis.T], axis=1)
        rank = orthonormalize(imgs, g.metric, g.tol, ambient_dim=g.dim).dim
        if rank != V.dim - 1:
            return False
    return True


def make_record(g: LieAlgebra, id: str, family: str, params: dict, h: Subspace,
                singular_codim: int | None, rng: np.random.Generator | None = None,
                extra_checks: dict | None = None) -> ActionRecord:
    """Verify closure, orbit codimension and slice transitivity, and package a record."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family}")
    rng = np.random.default_rng(0) if rng is None else rng
    split = _split_of(g)
    closed = is_subalgebra(g, h)
    if not closed:
        raise ArithmeticError(f"{id}: subalgebra not closed under bracket")
    T = orbit_tangent_at_o(g, h)
    codim = split.p.dim - T.dim
    checks = {
        "closed": closed,
        "dim": h.dim,
        "p_dim": split.p.dim,
        "orbit_codim_at_o": codim,
        "slice_transitive": slice_is_transitive(g, h, rng),
    }
    if singular_codim is not None:
        checks["codim_matches"] = codim == singular_codim
    else:
        checks["codim_matches"] = codim == 1
    if extra_checks:
        checks.update(extra_checks)
    return ActionRecord(id, family, dict(params), h, T, singular_codim, checks)


def record_ok(r: ActionRecord) -> bool:
    return all(v for k, v in r.checks.items() if isinstance(v, bool))


# ----------------------------------------------------------------------------
# the solvable (foliation) families


def foliation_hyperplane(d: RestrictedRootDatum, ell, id: str = "h_ell") -> ActionRecord:
    """(a ⊖ ell) + n for a line ell in a."""
    g = d.g
    ell = ell if isinstance(ell, Subspace) else g.span([ell])
    if ell.dim != 1 or not is_contained(ell, d.a):
        raise ValueError("ell must be a line in a")
    h = span(complement_within(d.a, ell), d.nilradical())
    return make_record(g, id, "foliation_hyperplane", {"ell": "line in a"}, h, None)


def foliation_solvable(d: RestrictedRootDatum, i: int, id: str | None = None) -> ActionRecord:
    """a + (n ⊖ ell_i), ell_i the first basis line of g_{alpha_i}."""
    g = d.g
    root = d.simples[i - 1]
    ell = g.span([d.space(root).basis[:, 0]])
    h = span(d.a, complement_within(d.nilradical(), ell))
    return make_record(g, id or f"h_{i}", "foliation_solvable", {"i": i}, h, None)


# ----------------------------------------------------------------------------
# nilpotent construction


def admissibility_projection(pd: ParabolicDatum, v: Subspace) -> tuple[Subspace, Subspace]:
    """(N_{m_j}(v), pr_p N_{m_j}(v))."""
    g = pd.g
    N = normalizer(g, pd.m_j, v)
    return N, orbit_tangent_at_o(g, N)


def check_admissible(pd: ParabolicDatum, v: Subspace) -> tuple[bool, Subspace]:
    """Is the projection of N_{m_j}(v) to p along k all of b_j?"""
    _, proj = admissibility_projection(pd, v)
    return subspace_equal(proj, pd.b_j), proj


def check_protohomogeneous(pd: ParabolicDatum, v: Subspace, samples: int = PROTO_SAMPLES,
                           rng: np.random.Generator | None = None) -> bool:
    """N_{k_j}(v) has open orbits on the unit sphere of v (infinitesimal transitivity)."""
    rng = np.random.default_rng(0) if rng is None else rng
    if v.dim < 2:
        raise ValueError("protohomogeneity needs dim v >= 2")
    Nk = normalizer(pd.g, pd.k_j, v)
    return _sphere_transitive(pd.g, Nk, v, rng, samples)


def evaluate_candidate(pd: ParabolicDatum, v: Subspace, rng: np.random.Generator | None = None,
                       samples: int = PROTO_SAMPLES) -> Verdict:
    N, proj = admissibility_projection(pd, v)
    adm = subspace_equal(proj, pd.b_j)
    proto = check_protohomogeneous(pd, v, samples, rng)
    return Verdict(adm, proto, N.dim, proj.dim, pd.b_j.dim)


def theta_duality_holds(pd: ParabolicDatum, v: Subspace) -> bool:
    """N_{l_j}(n_j ⊖ v) = theta N_{l_j}(v)."""
    g = pd.g
    nv = complement_within(pd.n_j, v)
    lhs = normalizer(g, pd.l_j, nv)
    rhs = g.theta_image(normalizer(g, pd.l_j, v))
    return subspace_equal(lhs, rhs)


def levi_split_holds(pd: ParabolicDatum, v: Subspace) -> bool:
    """N_{l_j}(n_j ⊖ v) = N_{m_j}(n_j ⊖ v) + a_j."""
    g = pd.g
    nv = complement_within(pd.n_j, v)
    return subspace_equal(normalizer(g, pd.l_j, nv), span(normalizer(g, pd.m_j, nv), pd.a_j))


def nilpotent_subalgebra(pd: ParabolicDatum, v: Subspace) -> Subspace:
    """N_{m_j}(n_{j,v}) + a_j + n_{j,v} with n_{j,v} = n_j ⊖ v."""
    nv = complement_within(pd.n_j, v)
    return span(normalizer(pd.g, pd.m_j, nv), pd.a_j, nv)


def build_nilpotent_action(pd: ParabolicDatum, v: Subspace, id: str = "h_jv",
                           rng: np.random.Generator | None = None,
                           verdict: Verdict | None = None, params: dict | None = None) -> ActionRecord:
    """The subalgebra h_{j,v}; requires v admissible and protohomogeneous."""
    if not is_contained(v, pd.grading[1]):
        raise ValueError("v must lie in n_j^1")
    verdict = verdict or evaluate_candidate(pd, v, rng)
    if not (verdict.admissible and verdict.protohomogeneous):
        raise ValueError("v is not admissible and protohomogeneous")
    h = nilpotent_subalgebra(pd, v)
    extra = {"theta_duality": theta_duality_holds(pd, v), "levi_split": levi_split_holds(pd, v)}
    return make_record(pd.g, id, "nilpotent_construction", {"j": pd.j, **(params or {})}, h,
                       v.dim, rng, extra)


# ----------------------------------------------------------------------------
# canonical extensions


def canonical_extension_subalgebra(pd: ParabolicDatum, h: Subspace) -> Subspace:
    return span(h, pd.a_j, pd.n_j) if h.dim else span(pd.a_j, pd.n_j)


def canonical_extension(pd: ParabolicDatum, h: Subspace, id: str = "h_Lambda",
                        params: dict | None = None, singular_codim: int | None = None,
                        rng: np.random.Generator | None = None) -> ActionRecord:
    """h + a_j + n_j for a subalgebra h of m_j.

    ``singular_codim`` defaults to the codimension of the orbit through o.
    """
    g = pd.g
    if h.dim and not is_contained(h, pd.m_j):
        raise ValueError("h must lie in m_j")
    full = canonical_extension_subalgebra(pd, h)
    if singular_codim is None:
        singular_codim = _split_of(g).p.dim - orbit_tangent_at_o(g, full).dim
    return make_record(g, id, "canonical_extension", {"j": pd.j, **(params or {})}, full,
                       singular_codim, rng)


def rank_one_boundary_action(pd: ParabolicDatum, w: Subspace) -> Subspace:
    """N_{k_j}(w) + w for a subalgebra w of the boundary solvable part."""
    g = pd.g
    Nk = normalizer(g, pd.k_j, w)
    h = span(Nk, w) if w.dim else Nk
    if not is_subalgebra(g, h):
        raise ArithmeticError("N_{k_j}(w) + w is not a subalgebra")
    return h


def reductive_record(g: LieAlgebra, id: str, h: Subspace, singular_codim: int,
                     params: dict | None = None, rng=None) -> ActionRecord:
    """A theta-stable subalgebra whose orbit through o is totally geodesic."""
    T = orbit_tangent_at_o(g, h)
    extra = {
        "theta_stable": subspace_equal(g.theta_image(h), h),
        "lie_triple_system": lie_triple_residual(g, T) < 1e-8,
    }
    return make_record(g, id, "reductive_totgeod", params or {}, h, singular_codim, rng, extra)


# ----------------------------------------------------------------------------
# comparison and second fundamental form


def compare_actions(a1: ActionRecord, a2: ActionRecord) -> str:
    if subspace_equal(a1.subalgebra, a2.subalgebra):
        return "equal_subalgebra"
    if subspace_equal(a1.orbit_tangent, a2.orbit_tangent):
        return "equal_orbit_tangent"
    return "distinct"


def second_fundamental_form_probe(g: LieAlgebra, h: Subspace, X: np.ndarray, Y: np.ndarray,
                                  tol: float = 1e-8) -> np.ndarray:
    """pr_N [Z, Y - theta Y], with Z in k chosen so that X - theta X + Z lies in h."""
    split = _split_of(g)
    T = orbit_tangent_at_o(g, h)
    u = X - g.theta @ X
    w = Y - g.theta @ Y
    for vec, name in ((u, "X - theta X"), (w, "Y - theta Y")):
        if not T.contains(vec, 1e-7):
            raise ValueError(f"{name} is not tangent to the orbit at o")
    L = np.linalg.cholesky(g.metric)
    A = L.T @ np.concatenate([split.k.basis, -h.basis], axis=1)
    sol, *_ = np.linalg.lstsq(A, -(L.T @ u), rcond=None)
    res = np.linalg.norm(A @ sol + L.T @ u)
    if res > tol * max(1.0, g.norm(u)):
        raise ValueError("no Z in k with X - theta X + Z in h")
    Z = split.k.basis @ sol[: split.k.dim]
    N = complement_within(split.p, T)
    return N.project(g.br(Z, w))


__all__ = [
    "ActionRecord", "Verdict", "NilpotentCandidate", "FAMILIES", "foliation_hyperplane",
    "foliation_solvable", "check_admissible", "check_protohomogeneous", "evaluate_candidate",
    "build_nilpotent_action", "nilpotent_subalgebra", "canonical_extension",
    "canonical_extension_subalgebra", "rank_one_boundary_action", "orbit_tangent_at_o",
    "compare_actions", "second_fundamental_form_probe", "theta_duality_holds",
    "levi_split_holds", "make_record", "reductive_record", "slice_is_transitive",
    "record_ok", "project_p",
]
