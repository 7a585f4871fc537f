"""Per-space action lists and nilpotent-construction candidates.

For every space this module assembles the classification's action records
(foliations, totally geodesic reductive actions, canonical extensions) and the
named candidate subspaces of the case analysis, each tagged with its expected
verdict.  Evaluation happens in :mod:`artifact.report`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .angles import ComplexStructure
from .cohomone import (
    ActionRecord,
    NilpotentCandidate,
    canonical_extension,
    foliation_hyperplane,
    foliation_solvable,
    reductive_record,
)
from .liealg import bracket_space, is_subalgebra, normalizer
from .numlin import (
    ONE,
    QI,
    QJ,
    QK,
    Mat,
    Subspace,
    complement_within,
    intersect,
    kernel,
    matrix_unit,
    orthonormalize,
    span,
)
from .parabolic import ParabolicDatum, build_parabolic, lie_triple_residual
from .spaces import (
    BuiltSpace,
    SpaceSpec,
    an_gram,
    build_space,
    left_i_structure,
    pulled_back_complex_structure,
    right_quaternion_structure,
)

DEFAULT_PHIS = (np.pi / 6, np.pi / 4, np.pi / 3)


@dataclass(frozen=True)
class Expected:
    """Verdict stated by the case analysis; None means not asserted."""

    admissible: bool | None = None
    protohomogeneous: bool | None = None
    match: str | None = None
    relation: str | None = None
    strict: bool = False  # if False, subalgebra equality also satisfies a tangent match

    @property
    def survivor(self) -> bool:
        return bool(self.admissible and self.protohomogeneous)

    def accepts(self, match: str | None, relation: str | None) -> bool:
        if match != self.match:
            return False
        if relation == self.relation:
            return True
        return (not self.strict and self.relation == "equal_orbit_tangent"
                and relation == "equal_subalgebra")

    def as_dict(self) -> dict:
        return {"admissible": self.admissible, "protohomogeneous": self.protohomogeneous,
                "match": self.match, "relation": self.relation, "strict": self.strict}


@dataclass(frozen=True)
class CandidateCase:
    candidate: NilpotentCandidate
    expected: Expected
    transport: np.ndarray | None = None  # Ad(k) in coordinates, applied before matching
    note: str = ""

    @property
    def id(self) -> str:
        return self.candidate.label


@dataclass
class Manifest:
    spec: SpaceSpec
    space: BuiltSpace
    parabolics: dict
    actions: list = field(default_factory=list)
    candidates: list = field(default_factory=list)

    def action(self, id: str) -> ActionRecord:
        for a in self.actions:
            if a.id == id:
                return a
        raise KeyError(id)

    def candidate(self, id: str) -> CandidateCase:
        for c in self.candidates:
            if c.id == id:
                return c
        raise KeyError(id)


def phi_tag(phi: float) -> str:
    for num, den, text in ((0, 1, "0"), (1, 2, "pi/2"), (1, 3, "pi/3"), (1, 4, "pi/4"),
                           (1, 6, "pi/6")):
        if abs(phi - np.pi * num / den) < 1e-12:
            return text
    return f"{phi:.6f}"


# ----------------------------------------------------------------------------
# shared helpers


def unit(g, x: np.ndarray) -> np.ndarray:
    return x / g.norm(x)


def linear_condition_subalgebra(g, condition) -> Subspace:
    """{x in g : condition(X) = 0} for a real-linear map from matrices to arrays."""
    rows = np.stack([_real_parts(condition(g.element(e))) for e in np.eye(g.dim)], axis=1)
    return kernel(rows, g.tol, g.metric)


def _real_parts(arr) -> np.ndarray:
    arr = np.asarray(arr)
    if np.iscomplexobj(arr):
        return np.concatenate([arr.real.ravel(), arr.imag.ravel()])
    return arr.astype(float).ravel()


def adjoint_transport(g, K: np.ndarray, t: float = 1.0) -> np.ndarray:
    """Ad(exp(t K)) = exp(t ad K) in coordinates."""
    return expm(t * g.ad(K))


def half_turn(g, K: np.ndarray, on: Subspace) -> np.ndarray:
    """Ad(exp(t K)) with t = pi / (largest rotation speed of ad K on ``on``)."""
    M = on.coords(g.ad(K) @ on.basis)
    lam = float(np.max(np.abs(np.linalg.eigvals(M).imag)))
    return adjoint_transport(g, K, np.pi / lam)


def candidate(spec, j, vectors_or_space, g, label, case, expected, params=None,
              transport=None, note="") -> CandidateCase:
    v = vectors_or_space if isinstance(vectors_or_space, Subspace) else g.span(vectors_or_space)
    cand = NilpotentCandidate(str(spec), j, v.with_label(label), label, case, dict(params or {}))
    return CandidateCase(cand, expected, transport, note)


def complex_orthonormal(J: ComplexStructure, S: Subspace, count: int) -> list[np.ndarray]:
    """x_1 .. x_count in S with x_i, J x_i pairwise orthonormal (S must be J-invariant)."""
    g_metric = J.gram
    out, used = [], np.zeros((S.ambient_dim, 0))
    for col in S.basis.T:
        if len(out) == count:
            break
        x = col - (used @ (used.T @ g_metric @ col) if used.shape[1] else 0)
        nrm = np.sqrt(float(x @ g_metric @ x))
        if nrm < 1e-8:
            continue
        x = x / nrm
        out.append(x)
        used = np.concatenate([used, x[:, None], (J.J @ x)[:, None]], axis=1)
    if len(out) < count:
        raise ValueError("not enough complex directions")
    return out


def boundary_extension(pd: ParabolicDatum, w: Subspace, id: str, params: dict,
                       singular_codim: int, rng=None) -> ActionRecord:
    """Canonical extension of a boundary action built from w in a^j + n.

    Three boundary subalgebras are tried in order and the first that is closed
    and slice transitive is kept: N_{k_j}(pr_p w) + w, N_{k_j}(w) + w, and
    [V, V] + V for the Lie triple system V = pr_p(w).
    """
    g = pd.g
    rng = np.random.default_rng(0) if rng is None else rng
    V = orthonormalize(w.basis - g.theta @ w.basis, g.metric, g.tol, ambient_dim=g.dim) \
        if w.dim else g.zero()
    literal = normalizer(g, pd.k_j, w)
    projected = normalizer(g, pd.k_j, V)
    dims = {"normalizer_dim": literal.dim, "normalizer_of_projection_dim": projected.dim}
    forms = [("normalizer_of_projection", span(projected, w)), ("normalizer", span(literal, w))]
    if lie_triple_residual(g, V) < 1e-8:
        forms.append(("lie_triple", span(bracket_space(g, V, V), V)))
    rec = None
    for name, h in forms:
        if not is_subalgebra(g, h):
            continue
        rec = canonical_extension(pd, h, id, {**params, **dims, "boundary_form": name},
                                  singular_codim, rng)
        if rec.checks["slice_transitive"]:
            return rec
    if rec is None:
        raise ArithmeticError(f"{id}: no closed boundary subalgebra")
    return rec


# ----------------------------------------------------------------------------
# sl(3, H)


def _sl3c_condition(X: Mat) -> np.ndarray:
    """Vanishes exactly on complex traceless matrices inside sl(3, H)."""
    imag_trace = np.trace(X.data[..., 1])
    return np.concatenate([X.data[..., 2:].ravel(), [imag_trace]])


def _sl3h(spec: SpaceSpec, phis, rng) -> Manifest:
    sp = build_space(spec)
    g, d = sp.algebra, sp.datum
    pd1, pd2 = build_parabolic(d, 1), build_parabolic(d, 2)
    man = Manifest(spec, sp, {1: pd1, 2: pd2})

    def E(p, q, u=ONE):
        return g.coords(matrix_unit(3, p, q, "H", u))

    man.actions.append(foliation_hyperplane(d, d.a_basis[:, 0], "1"))
    man.actions.append(foliation_solvable(d, 1, "2.i=1"))
    man.actions.append(reductive_record(g, "3", pd1.l_j, 8, {"group": "L_1"}, rng))
    slc = linear_condition_subalgebra(g, _sl3c_condition)
    man.actions.append(reductive_record(g, "4", slc, 6, {"group": "SL(3,C)"}, rng))
    a1 = pd1.a_upper
    ws = {0: g.zero(), 1: a1, 2: span(a1, g.span([E(2, 3)])),
          3: span(a1, g.span([E(2, 3), E(2, 3, QI)]))}
    for k, w in ws.items():
        man.actions.append(boundary_extension(pd1, w, f"5.k={k}", {"k": k}, 5 - k, rng))

    j = 2
    add = man.candidates.append
    add(candidate(spec, j, [E(2, 3, QJ), E(2, 3, QK)], g, "case1.phi=0", "case 1",
                  Expected(True, True, "5.k=3", "equal_orbit_tangent", strict=True),
                  {"qk_angle": (0.0, np.pi / 2, np.pi / 2)}))
    add(candidate(spec, j, [E(1, 3), E(2, 3)], g, "case1.phi=pi/2", "case 1",
                  Expected(False, None), {"qk_angle": (np.pi / 2,) * 3}))
    for phi in phis:
        vecs = [E(2, 3), np.cos(phi) * E(2, 3, QI) + np.sin(phi) * E(1, 3, QI)]
        add(candidate(spec, j, vecs, g, f"case1.phi={phi_tag(phi)}", "case 1",
                      Expected(False, None), {"phi": phi, "qk_angle": (phi, np.pi / 2, np.pi / 2)}))
    add(candidate(spec, j, [E(2, 3, QI), E(2, 3, QJ), E(2, 3, QK)], g, "case2.(0,0,pi/2)",
                  "case 2", Expected(True, True, "5.k=2", "equal_orbit_tangent", strict=True),
                  {"qk_angle": (0.0, 0.0, np.pi / 2)}))
    s3 = np.sqrt(3.0)
    add(candidate(spec, j, [E(2, 3), E(2, 3, QI) + s3 * E(1, 3, QI), E(2, 3, QJ) - s3 * E(1, 3, QJ)],
                  g, "case2.(pi/3,pi/3,pi/2)", "case 2", Expected(False, None),
                  {"qk_angle": (np.pi / 3, np.pi / 3, np.pi / 2)}))
    add(candidate(spec, j, [E(2, 3, u) for u in (ONE, QI, QJ, QK)], g, "case3.(0,0,0)", "case 3",
                  Expected(True, True, "5.k=1", "equal_subalgebra"), {"qk_angle": (0.0, 0.0, 0.0)}))
    add(candidate(spec, j, [E(1, 3), E(1, 3, QI), E(2, 3), E(2, 3, QI)], g, "case3.(0,pi/2,pi/2)",
                  "case 3", Expected(False, None), {"qk_angle": (0.0, np.pi / 2, np.pi / 2)}))
    for phi in phis:
        c, s = np.cos(phi), np.sin(phi)
        vecs = [E(2, 3), E(2, 3, QI), c * E(2, 3, QJ) + s * E(1, 3, QJ),
                c * E(2, 3, QK) + s * E(1, 3, QK)]
        add(candidate(spec, j, vecs, g, f"case3.(0,{phi_tag(phi)},{phi_tag(phi)})", "case 3",
                      Expected(False, None), {"phi": phi, "qk_angle": (0.0, phi, phi)}))
    return man


def sl3h_quaternionic_structure(man: Manifest):
    """Right multiplication by i, j, k on n_2 of sl(3, H)."""
    return right_quaternion_structure(man.space.algebra, man.parabolics[2].n_j)


# ----------------------------------------------------------------------------
# so(5, C)


def _so5c(spec: SpaceSpec, phis, rng) -> Manifest:
    sp = build_space(spec)
    g, d = sp.algebra, sp.datum
    pd1, pd2 = build_parabolic(d, 1), build_parabolic(d, 2)
    man = Manifest(spec, sp, {1: pd1, 2: pd2})
    a1, a2 = d.simples

    man.actions.append(foliation_hyperplane(d, d.a_basis[:, 0], "1"))
    man.actions.append(foliation_solvable(d, 1, "2.i=1"))
    man.actions.append(foliation_solvable(d, 2, "2.i=2"))
    top = max(d.inner(l, l) for l in d.roots)
    long_roots = [l for l in d.roots if abs(d.inner(l, l) - top) < 1e-9]
    so4 = span(d.g0, d.sum_of(long_roots))
    man.actions.append(reductive_record(g, "3", so4, 4, {"group": "SO(4,C)"}, rng))
    for j, pd in ((1, pd1), (2, pd2)):
        man.actions.append(canonical_extension(pd, pd.k_j, f"4.j={j}", {"k": 0}, 3, rng))
    for j, pd in ((1, pd1), (2, pd2)):
        man.actions.append(boundary_extension(pd, pd.a_upper, f"5.j={j}", {"k": 1}, 2, rng))

    J = left_i_structure(g, pd2.n_j)
    e = unit(g, d.space(a2).basis[:, 0])
    e2 = unit(g, d.space((1, 1)).basis[:, 0])
    add = man.candidates.append
    add(candidate(spec, 2, pd2.grading[1], g, "j2.full", "j=2 full",
                  Expected(True, True, "3", "equal_orbit_tangent")))
    add(candidate(spec, 2, [e, J @ e], g, "j2.complex_line", "j=2 complex line",
                  Expected(True, True, "5.j=1", "equal_orbit_tangent")))
    add(candidate(spec, 2, [e, e2], g, "j2.phi=pi/2", "j=2 totally real",
                  Expected(False, True)))
    for phi in phis:
        add(candidate(spec, 2, [e, np.cos(phi) * (J @ e) + np.sin(phi) * (J @ e2)], g,
                      f"j2.phi={phi_tag(phi)}", "j=2 interior angle", Expected(False, True),
                      {"phi": phi}))

    # j = 1: n_1 is the alpha_2-string g_{a1} + g_{a1+a2} + g_{a1+2a2}
    J1 = left_i_structure(g, pd1.n_j)
    X = unit(g, d.space(a2).basis[:, 0])
    chain = [unit(g, d.space(a1).basis[:, 0])]
    for _ in range(2):
        chain.append(unit(g, g.br(X, chain[-1])))
    top_root = (1, 2)
    add(candidate(spec, 1, pd1.n_j, g, "j1.n1", "j=1 dim >= 3", Expected(None, False)))
    add(candidate(spec, 1, d.sum_of([a1, top_root]), g, "j1.g_a1+g_a1+2a2", "j=1 dim >= 3",
                  Expected(None, False)))
    add(candidate(spec, 1, span(d.space((1, 1)), g.span([chain[0] + chain[2]])), g,
                  "j1.g_a1+a2+line", "j=1 dim >= 3", Expected(None, False)))
    add(candidate(spec, 1, d.space((1, 1)), g, "j1.g_a1+a2", "j=1 line",
                  Expected(False, None)))
    for name, x in (("j1.C(e0+e2)", chain[0] + chain[2]), ("j1.C(e1+e2)", chain[1] + chain[2])):
        add(candidate(spec, 1, [x, J1 @ x], g, name, "j=1 line", Expected(False, None)))
    K = X + g.theta @ X
    T = half_turn(g, K, pd1.n_j)
    add(candidate(spec, 1, d.space(top_root), g, "j1.g_a1+2a2", "j=1 line",
                  Expected(True, True, "5.j=2", "equal_subalgebra"), transport=T,
                  note="transported onto g_{a1} by a half turn in k_{a2}"))
    return man


# ----------------------------------------------------------------------------
# su(n+2, 2)


def su_row_part(g, n: int, S: Subspace, row: int) -> Subspace:
    """Elements of S whose p-part is supported in the given (1-based) row of the B block."""
    p = n + 2

    def off_row(X: Mat) -> Mat:
        P = 0.5 * (X.data + X.data.conj().T)  # p-part, since theta(X) = -X*
        B = P[:p, p:].copy()
        B[row - 1, :] = 0
        return B

    rows = np.stack([_real_parts(off_row(g.element(x))) for x in S.basis.T], axis=1)
    ker = kernel(rows, g.tol)
    return orthonormalize(S.basis @ ker.basis, g.metric, g.tol, ambient_dim=g.dim)


def su_psi(g, n: int, z: np.ndarray) -> np.ndarray:
    """Identification C^{n+2} -> n_1^1, z = (v_1 .. v_{n+1}, w)."""
    N = n + 4
    z = np.asarray(z, dtype=complex)
    v, w = z[: n + 1], z[n + 1]
    X = np.zeros((N, N), dtype=complex)
    for r in range(n + 1):
        X[r, n + 1] = -v[r]
        X[r, n + 2] = v[r]
        X[n + 1, r] = np.conj(v[r])
        X[n + 2, r] = np.conj(v[r])
    X[n + 1, n + 3] = X[n + 2, n + 3] = -np.conj(w)
    X[n + 3, n + 1] = -w
    X[n + 3, n + 2] = w
    return g.coords(Mat(X, "C"))


def su_center_structure(g, pd: ParabolicDatum, S: Subspace) -> ComplexStructure:
    """Normalised ad(z_j) on S (z_j one-dimensional, acting by a single scalar i c)."""
    z = pd.z_j.basis[:, 0]
    A = g.ad(z) @ S.basis
    c = np.sqrt(np.mean(np.sum(A * (g.metric @ A), axis=0)))
    J = (g.ad(z) / c) @ S.project(np.eye(g.dim))
    return ComplexStructure(J, S)


def su_row_vectors(man: Manifest):
    """(e1 (x) f1, e1 (x) f2, e2 (x) f1, e2 (x) f2, J) in n_2^1; e2 rows need n >= 2."""
    g, d, n = man.space.algebra, man.space.datum, man.spec.n
    pd2 = man.parabolics[2]
    n21 = pd2.grading[1]
    J = su_center_structure(g, pd2, n21)
    a2 = d.simples[1]
    out = []
    for row in (1, 2) if n >= 2 else (1,):
        part = su_row_part(g, n, n21, row)
        x = unit(g, intersect(part, d.space(a2)).basis[:, 0])
        y = unit(g, intersect(part, d.space((1, 1))).basis[:, 0])
        out.extend([x, y])
    return out, J


def _su_boundary_family(man: Manifest, phis, rng) -> list:
    sp, n = man.space, man.spec.n
    g, d = sp.algebra, sp.datum
    pd1 = man.parabolics[1]
    a2 = d.simples[1]
    G = an_gram(sp)
    dom = orthonormalize(span(pd1.a_upper, d.space(a2), d.space((0, 2))).basis, G, g.tol,
                         ambient_dim=g.dim)
    J = pulled_back_complex_structure(sp, n, dom)
    ga2 = orthonormalize(d.space(a2).basis, G, g.tol, ambient_dim=g.dim)
    xs = complex_orthonormal(J, ga2, n)
    g2a2 = d.space((0, 2))

    members = []  # (id, params, w_perp)
    for k in range(2, 2 * n + 1, 2):
        vecs = [v for x in xs[: k // 2] for v in (x, J @ x)]
        members.append((f"7.phi=0.k={k}", {"phi": 0.0, "k": k}, vecs))
    members.append((f"7.phi=0.k={2 * n + 2}", {"phi": 0.0, "k": 2 * n + 2}, list(dom.basis.T)))
    for k in range(2, n + 1):
        members.append((f"7.phi=pi/2.k={k}", {"phi": np.pi / 2, "k": k}, xs[:k]))
    members.append((f"7.phi=pi/2.k={n + 1}", {"phi": np.pi / 2, "k": n + 1},
                    xs[:n] + list(g2a2.basis.T)))
    for phi in phis:
        for k in range(2, 2 * (n // 2) + 1, 2):
            vecs = []
            for p in range(k // 2):
                x, y = xs[2 * p], xs[2 * p + 1]
                vecs.extend([x, np.cos(phi) * (J @ x) + np.sin(phi) * (J @ y)])
            members.append((f"7.phi={phi_tag(phi)}.k={k}", {"phi": phi, "k": k}, vecs))

    records = []
    for id, params, vecs in members:
        wperp = orthonormalize(np.stack(vecs, axis=1), G, g.tol, ambient_dim=g.dim)
        w_G = complement_within(dom, wperp)
        w = orthonormalize(w_G.basis, g.metric, g.tol, ambient_dim=g.dim) if w_G.dim else g.zero()
        rec = boundary_extension(pd1, w, id, params, params["k"], rng)
        rec.params["w_perp_dim"] = wperp.dim
        records.append((rec, wperp))
    return records, J, xs


def _su(spec: SpaceSpec, phis, rng) -> Manifest:
    n = spec.n
    sp = build_space(spec)
    g, d = sp.algebra, sp.datum
    pd1, pd2 = build_parabolic(d, 1), build_parabolic(d, 2)
    man = Manifest(spec, sp, {1: pd1, 2: pd2})
    N = n + 4

    man.actions.append(foliation_hyperplane(d, d.a_basis[:, 0], "1"))
    man.actions.append(foliation_solvable(d, 1, "2.i=1"))
    man.actions.append(foliation_solvable(d, 2, "2.i=2"))
    su_fix1 = linear_condition_subalgebra(g, lambda X: X.data[:, 0])
    man.actions.append(reductive_record(g, "3", su_fix1, 4, {"group": f"SU({n + 1},2)"}, rng))
    su_fixl = linear_condition_subalgebra(g, lambda X: X.data[:, N - 1])
    man.actions.append(reductive_record(g, "4", su_fixl, 2 * n + 4, {"group": f"SU({n + 2},1)"}, rng))
    if n % 2 == 0:
        Om = np.zeros((N, N))
        for i in range(0, N, 2):
            Om[i, i + 1], Om[i + 1, i] = -1.0, 1.0
        spq = linear_condition_subalgebra(g, lambda X: X.data @ Om - Om @ X.data.conj())
        man.actions.append(reductive_record(g, "5", spq, 2 * n + 4,
                                            {"group": f"Sp({n // 2 + 1},1)"}, rng))
    man.actions.append(canonical_extension(pd2, pd2.k_j, "6.k=0", {"k": 0}, 3, rng))
    man.actions.append(boundary_extension(pd2, pd2.a_upper, "6.k=1", {"k": 1}, 2, rng))
    family, J7, xs = _su_boundary_family(man, phis, rng)
    man.actions.extend(rec for rec, _ in family)
    wperp_of = {rec.id: wp for rec, wp in family}

    add = man.candidates.append
    # j = 2: subspaces of g_{a2} reduce to the boundary family
    if n == 1:
        add(candidate(spec, 2, wperp_of["7.phi=0.k=2"], g, "j2.g_a2", "j=2 inside g_a2",
                      Expected(True, True, "7.phi=0.k=2", "equal_orbit_tangent")))
    else:
        add(candidate(spec, 2, wperp_of["7.phi=0.k=2"], g, "j2.g_a2.phi=0", "j=2 inside g_a2",
                      Expected(True, True, "7.phi=0.k=2", "equal_orbit_tangent")))
        add(candidate(spec, 2, wperp_of["7.phi=pi/2.k=2"], g, "j2.g_a2.phi=pi/2",
                      "j=2 inside g_a2", Expected(True, True, "7.phi=pi/2.k=2",
                                                  "equal_orbit_tangent")))
        for phi in phis:
            key = f"7.phi={phi_tag(phi)}.k=2"
            add(candidate(spec, 2, wperp_of[key], g, f"j2.g_a2.phi={phi_tag(phi)}",
                          "j=2 inside g_a2", Expected(True, True, key, "equal_orbit_tangent"),
                          {"phi": phi}))
    vecs, J2 = su_row_vectors(man)
    x, y = vecs[0], vecs[1]
    add(candidate(spec, 2, [x, J2 @ x, y, J2 @ y], g, "j2.case1.phi=0", "j=2 case 1",
                  Expected(True, True, "3", "equal_orbit_tangent")))
    add(candidate(spec, 2, [x, y], g, "j2.case2.phi=pi/2", "j=2 case 2", Expected(False, True)))
    for phi in phis:
        add(candidate(spec, 2, [x, np.cos(phi) * (J2 @ x) + np.sin(phi) * (J2 @ y)], g,
                      f"j2.case3.phi={phi_tag(phi)}", "j=2 case 3", Expected(False, True),
                      {"phi": phi}))

    # j = 1, through the identification of n_1^1 with C^{n+2}
    def e(i, c=1.0):
        z = np.zeros(n + 2, dtype=complex)
        z[i - 1] = c
        return z

    last = n + 2

    def psi_span(zs):
        vs = []
        for z in zs:
            vs.extend([su_psi(g, n, z), su_psi(g, n, 1j * z)])
        return vs

    def psi_real(zs):
        return [su_psi(g, n, z) for z in zs]

    add(candidate(spec, 1, psi_span([e(i) for i in range(1, n + 2)]), g, "j1.C^{n+1}",
                  "j=1 dim >= 3", Expected(False, None)))
    add(candidate(spec, 1, psi_span([e(1), e(last)]), g, "j1.Ce1+Ce_last", "j=1 dim >= 3",
                  Expected(None, False)))
    if n >= 1:
        for phi in phis:
            zs = [e(1) + e(last), 1j * np.cos(phi) * e(1) + 1j * np.sin(phi) * e(2) + 1j * e(last)]
            add(candidate(spec, 1, psi_real(zs), g, f"j1.phi={phi_tag(phi)}", "j=1 interior angle",
                          Expected(False, None), {"phi": phi, "a": 1.0, "b": "i"}))
        zs = [e(1) + e(last), 1j * e(2) + 1j * e(last)]
        add(candidate(spec, 1, psi_real(zs), g, "j1.phi=pi/2", "j=1 totally real projection",
                      Expected(False, None), {"phi": np.pi / 2, "a": 1.0, "b": "i"}))
    b = (1 + 1j) / np.sqrt(2)
    add(candidate(spec, 1, psi_real([e(1) + e(last), 1j * e(1) + b * e(last)]), g,
                  "j1.phi=0.b=(1+i)/sqrt2", "j=1 Re(b) != 0", Expected(False, None),
                  {"phi": 0.0, "a": 1.0, "b": "(1+i)/sqrt2"}))
    add(candidate(spec, 1, psi_real([e(1) + 2 * e(last), 1j * e(1) + 2j * e(last)]), g,
                  "j1.phi=0.a=2.b=2i", "j=1 a != 1", Expected(False, None),
                  {"phi": 0.0, "a": 2.0, "b": "2i"}))
    K = g.coords(matrix_unit(N, n + 1, 1, "C", np.pi / 2) - matrix_unit(N, 1, n + 1, "C", np.pi / 2))
    add(candidate(spec, 1, psi_span([e(1) + e(last)]), g, "j1.phi=0.a=1.b=i", "j=1 survivor",
                  Expected(True, True, "6.k=1", "equal_subalgebra"), {"phi": 0.0, "a": 1.0, "b": "i"},
                  transport=adjoint_transport(g, K),
                  note="moved onto g_{a1} by a rotation in k_1"))
    return man


# ----------------------------------------------------------------------------


def build_manifest(spec: SpaceSpec | str, phis=DEFAULT_PHIS, seed: int = 0) -> Manifest:
    spec = SpaceSpec.parse(spec) if isinstance(spec, str) else spec
    rng = np.random.default_rng(seed)
    phis = tuple(float(p) for p in phis)
    builder = {"sl3h": _sl3h, "so5c": _so5c, "su": _su}[spec.id]
    return builder(spec, phis, rng)


__all__ = [
    "Expected", "CandidateCase", "Manifest", "build_manifest", "phi_tag", "boundary_extension",
    "linear_condition_subalgebra", "adjoint_transport", "half_turn", "su_psi", "su_row_part",
    "su_row_vectors", "su_center_structure", "sl3h_quaternionic_structure", "DEFAULT_PHIS",
]
