"""Restricted roots of a symmetric pair relative to a maximal abelian a ⊆ p."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .liealg import CartanSplit, LieAlgebra, bracket_residual, centralizer
from .numlin import Subspace, orthonormalize, span, subspace_equal

CLUSTER_TOL = 1e-6
SNAP_TOL = 1e-6


@dataclass(frozen=True)
class RestrictedRootDatum:
    """Roots, root spaces and positivity data.

    Root labels are integer tuples: coefficients in the simple roots once a
    positivity has been chosen, provisional ``(index,)`` tuples before that.
    ``covectors[label]`` holds (alpha(H'_1), ..., alpha(H'_r)) for the chosen
    orthonormal a-basis H'_i.
    """

    g: LieAlgebra
    split: CartanSplit
    a: Subspace
    a_basis: np.ndarray  # dim g x r, columns orthonormal in g.metric
    roots: tuple
    covectors: dict
    root_spaces: dict
    multiplicities: dict
    g0: Subspace
    k0: Subspace
    positives: tuple = ()
    simples: tuple = ()
    H_alpha: dict = field(default_factory=dict)
    H_dual: tuple = ()
    type_label: str = "other"

    @property
    def rank(self) -> int:
        return self.a_basis.shape[1]

    def space(self, label) -> Subspace:
        return self.root_spaces[tuple(label)]

    def sum_of(self, labels) -> Subspace:
        parts = [self.root_spaces[tuple(l)] for l in labels]
        if not parts:
            return self.g.zero()
        return span(*parts)

    def a_vector(self, coeffs) -> np.ndarray:
        """Element of a with the given coordinates in the chosen a-basis."""
        return self.a_basis @ np.asarray(coeffs, dtype=float)

    def evaluate(self, label, H: np.ndarray) -> float:
        """alpha(H) for H given in g-coordinates."""
        h = self.a_basis.T @ self.g.metric @ H
        return float(self.covectors[tuple(label)] @ h)

    def nilradical(self) -> Subspace:
        return self.sum_of(self.positives)

    def negate(self, label) -> tuple:
        return tuple(-x for x in label)

    def is_root(self, label) -> bool:
        return tuple(label) in self.root_spaces

    def inner(self, l1, l2) -> float:
        return float(self.covectors[tuple(l1)] @ self.covectors[tuple(l2)])

    def label_str(self, label) -> str:
        return root_name(label)


def root_name(label) -> str:
    """Human-readable name such as 'a1+2a2' or '-a1'."""
    label = tuple(label)
    terms = []
    for i, c in enumerate(label, start=1):
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{'' if mag == 1 else mag}a{i}"))
    if not terms:
        return "0"
    out = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
    for s, t in terms[1:]:
        out += s + t
    return out


def _clusters(values: np.ndarray) -> list[np.ndarray]:
    order = np.argsort(values)
    groups, cur = [], [order[0]]
    for a, b in zip(order[:-1], order[1:]):
        if values[b] - values[a] > CLUSTER_TOL:
            groups.append(np.array(cur))
            cur = [b]
        else:
            cur.append(b)
    groups.append(np.array(cur))
    for grp in groups:
        if values[grp].max() - values[grp].min() > CLUSTER_TOL:
            raise ArithmeticError("ambiguous eigenvalue cluster in root decomposition")
    return groups


def _joint_eigenspaces(mats: list[np.ndarray], basis: np.ndarray):
    """Split the column space of ``basis`` (orthonormal) into joint eigenspaces
    of the symmetric matrices ``mats`` (already whitened)."""
    if not mats:
        return [((), basis)]
    A = basis.T @ mats[0] @ basis
    A = 0.5 * (A + A.T)
    w, U = np.linalg.eigh(A)
    out = []
    for grp in _clusters(w):
        sub = basis @ U[:, grp]
        lam = float(np.mean(w[grp]))
        for rest, piece in _joint_eigenspaces(mats[1:], sub):
            out.append(((lam,) + rest, piece))
    return out


def restricted_root_datum(g: LieAlgebra, split: CartanSplit, a: Subspace | np.ndarray) -> RestrictedRootDatum:
    """Simultaneous eigen-decomposition of ad(a) on g.

    ``a`` may be a Subspace or an array whose columns are the chosen a-basis
    (orthonormalised in order if necessary).
    """
    if isinstance(a, Subspace):
        A = a.basis
    else:
        A = np.asarray(a, dtype=float)
    # Gram-Schmidt in the given order so the chosen basis is respected.
    cols = []
    for v in A.T:
        for c in cols:
            v = v - (c @ g.metric @ v) * c
        nv = g.norm(v)
        if nv < 1e-10:
            raise ValueError("a-basis vectors are dependent")
        cols.append(v / nv)
    A = np.stack(cols, axis=1)
    a_sub = Subspace(A, g.metric, g.tol, "a")
    for v in A.T:
        if not split.p.contains(v):
            raise ValueError("a is not contained in p")
    if bracket_residual(g, a_sub, a_sub, g.zero()) > 1e-9:
        raise ValueError("a is not abelian")
    if not subspace_equal(centralizer(g, split.p, a_sub), a_sub):
        raise ValueError("a is not maximal abelian in p")

    L = np.linalg.cholesky(g.metric)
    Linv = np.linalg.inv(L)
    whitened = [L.T @ g.ad(h) @ Linv.T for h in A.T]
    pieces = _joint_eigenspaces(whitened, np.eye(g.dim))

    covectors, spaces, mults = {}, {}, {}
    g0 = None
    labels = []
    idx = 0
    for lam, piece in pieces:
        cov = np.array(lam)
        sub = orthonormalize(Linv.T @ piece, g.metric, g.tol, ambient_dim=g.dim)
        if np.linalg.norm(cov) < CLUSTER_TOL:
            g0 = sub.with_label("g0")
            continue
        lab = (idx,)
        idx += 1
        labels.append(lab)
        covectors[lab] = cov
        spaces[lab] = sub.with_label(f"g_root{lab[0]}")
        mults[lab] = sub.dim
    if g0 is None:
        raise ArithmeticError("no zero weight space found")
    k0 = centralizer(g, split.k, a_sub).with_label("k0")
    return RestrictedRootDatum(
        g=g, split=split, a=a_sub, a_basis=A, roots=tuple(labels), covectors=covectors,
        root_spaces=spaces, multiplicities=mults, g0=g0, k0=k0,
    )


def _indecomposable(positives: list, covs: dict) -> list:
    simple = []
    for p in positives:
        decomposable = False
        for q1, q2 in itertools.combinations_with_replacement(positives, 2):
            if np.linalg.norm(covs[q1] + covs[q2] - covs[p]) < SNAP_TOL:
                decomposable = True
                break
        if not decomposable:
            simple.append(p)
    return simple


def _cartan_matrix(simple_covs: list[np.ndarray]) -> np.ndarray:
    r = len(simple_covs)
    C = np.zeros((r, r), dtype=int)
    for i in range(r):
        for j in range(r):
            val = 2 * (simple_covs[i] @ simple_covs[j]) / (simple_covs[j] @ simple_covs[j])
            C[i, j] = int(round(val))
    return C


def _type_label(roots_int: list[tuple], cartan: np.ndarray) -> str:
    r = cartan.shape[0]
    if r != 2:
        return "other"
    has_double = any(tuple(2 * x for x in l) in set(roots_int) for l in roots_int)
    n = len(roots_int)
    if n == 6 and cartan[0, 1] * cartan[1, 0] == 1:
        return "A2"
    if n == 8 and cartan[0, 1] * cartan[1, 0] == 2:
        return "B2"
    if n == 12 and has_double:
        return "BC2"
    return "other"


def choose_positivity(d: RestrictedRootDatum, regular: np.ndarray, anchor: np.ndarray | None = None) -> RestrictedRootDatum:
    """Positive roots are those positive on ``regular`` (a vector in a, g-coordinates).

    Simple roots are the indecomposable positive roots, ordered by convention:
    B2 puts the long root first, BC2 puts the root whose double is a root
    second; otherwise ``anchor`` (a vector of g) selects alpha_1 as the simple
    root whose root space contains it.  Roots are relabelled by their integer
    coefficients in the simple roots.
    """
    h = d.a_basis.T @ d.g.metric @ regular
    vals = {l: float(d.covectors[l] @ h) for l in d.roots}
    if min(abs(v) for v in vals.values()) < SNAP_TOL:
        raise ValueError("positivity vector lies on a root wall")
    pos = [l for l in d.roots if vals[l] > 0]
    simp = _indecomposable(pos, d.covectors)
    if len(simp) != d.rank:
        raise ArithmeticError("could not identify simple roots")
    covs = [d.covectors[s] for s in simp]
    nroots = len(d.roots)
    if d.rank == 2:
        ratio = (covs[0] @ covs[0]) / (covs[1] @ covs[1])
        doubles = [any(np.linalg.norm(d.covectors[l] - 2 * c) < SNAP_TOL for l in d.roots) for c in covs]
        if any(doubles):
            if doubles[0]:
                simp = simp[::-1]
        elif abs(ratio - 1) > 1e-6:
            if ratio < 1:
                simp = simp[::-1]
        elif anchor is not None:
            hits = [d.root_spaces[s].contains(anchor) for s in simp]
            if hits[1] and not hits[0]:
                simp = simp[::-1]
            elif not hits[0]:
                raise ValueError("anchor not in a simple root space")
    S = np.stack([d.covectors[s] for s in simp])  # r x r
    relabel = {}
    for l in d.roots:
        c = np.linalg.solve(S.T, d.covectors[l])
        ci = np.rint(c)
        if np.max(np.abs(c - ci)) > SNAP_TOL:
            raise ArithmeticError(f"root coefficients {c} are not integral")
        relabel[l] = tuple(int(x) for x in ci)
    new_roots = tuple(sorted(relabel.values(), key=lambda t: (sum(abs(x) for x in t), [-x for x in t])))
    inv = {v: k for k, v in relabel.items()}
    covectors = {t: d.covectors[inv[t]] for t in new_roots}
    spaces = {t: d.root_spaces[inv[t]].with_label(f"g_{root_name(t)}") for t in new_roots}
    mults = {t: d.multiplicities[inv[t]] for t in new_roots}
    positives = tuple(t for t in new_roots if all(x >= 0 for x in t))
    simples = tuple(relabel[s] for s in simp)
    cartan = _cartan_matrix([covectors[s] for s in simples])
    label = _type_label(list(new_roots), cartan)
    out = replace(d, roots=new_roots, covectors=covectors, root_spaces=spaces,
                  multiplicities=mults, positives=positives, simples=simples,
                  type_label=label)
    if nroots != len(new_roots):
        raise ArithmeticError("relabelling lost roots")
    return dual_basis(out)


def dual_basis(d: RestrictedRootDatum) -> RestrictedRootDatum:
    """Install H_alpha (via B_theta) for every root and the basis H^j dual to the simples."""
    if not d.simples:
        raise ValueError("simples not chosen")
    S = np.stack([d.covectors[s] for s in d.simples])
    if abs(np.linalg.det(S)) < 1e-10:
        raise ValueError("simple roots do not span a*")
    H_alpha = {l: d.a_basis @ d.covectors[l] for l in d.roots}
    Hd = np.linalg.solve(S, np.eye(d.rank))  # columns: a-coords of H^j
    H_dual = tuple(d.a_basis @ Hd[:, j] for j in range(d.rank))
    return replace(d, H_alpha=H_alpha, H_dual=H_dual)


def dynkin_automorphisms(d: RestrictedRootDatum) -> list[tuple]:
    """Permutations of the simple roots preserving Cartan integers and multiplicities
    (of alpha_i and of 2 alpha_i)."""
    simples = d.simples
    cartan = _cartan_matrix([d.covectors[s] for s in simples])
    r = len(simples)

    def weight(i):
        s = simples[i]
        dbl = tuple(2 * x for x in s)
        return (d.multiplicities[s], d.multiplicities.get(dbl, 0))

    out = []
    for perm in itertools.permutations(range(r)):
        if all(cartan[perm[i], perm[j]] == cartan[i, j] for i in range(r) for j in range(r)) and \
                all(weight(perm[i]) == weight(i) for i in range(r)):
            out.append(perm)
    return out


def cartan_matrix(d: RestrictedRootDatum) -> np.ndarray:
    return _cartan_matrix([d.covectors[s] for s in d.simples])


def k_alpha(d: RestrictedRootDatum, label) -> Subspace:
    """{X + theta X : X in g_alpha}."""
    S = d.space(label)
    return orthonormalize(S.basis + d.g.theta @ S.basis, d.g.metric, d.g.tol, ambient_dim=d.g.dim)


def p_alpha(d: RestrictedRootDatum, label) -> Subspace:
    """{X - theta X : X in g_alpha}."""
    S = d.space(label)
    return orthonormalize(S.basis - d.g.theta @ S.basis, d.g.metric, d.g.tol, ambient_dim=d.g.dim)


__all__ = [
    "RestrictedRootDatum", "restricted_root_datum", "choose_positivity", "dual_basis",
    "dynkin_automorphisms", "cartan_matrix", "k_alpha", "p_alpha", "root_name",
]
