"""Real matrix Lie algebras with a Cartan involution.

A :class:`LieAlgebra` is given by a real basis of matrices (over R, C or H).
Elements are handled as coordinate vectors in that basis; structure constants,
ad-matrices, the Killing form and B_theta are computed once at construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .numlin import (
    DEFAULT_TOL,
    Mat,
    Subspace,
    kernel,
    orthonormalize,
    realify,
    realify_stack,
    ring_matmul,
    span,
    unrealify,
)


def bracket(X: Mat, Y: Mat) -> Mat:
    """Commutator XY - YX."""
    if X.ring != Y.ring or X.shape != Y.shape or X.rows != X.cols:
        raise ValueError("bracket needs square matrices of equal shape and ring")
    return X @ Y - Y @ X


def _re_trace_products(ring: str, P: np.ndarray) -> np.ndarray:
    """Real part of the trace of a stack of square matrices (trailing axes)."""
    if ring == "H":
        diag = np.diagonal(P[..., 0], axis1=-2, axis2=-1)
        return diag.sum(axis=-1)
    return np.real(np.trace(P, axis1=-2, axis2=-1))


class LieAlgebra:
    """Matrix Lie algebra with a fixed real basis.

    Parameters
    ----------
    basis : list of Mat
        Linearly independent, bracket-closed real basis.
    theta : callable, optional
        Cartan involution acting on matrices.
    name : str
        Label used in reports.
    """

    def __init__(self, basis: Sequence[Mat], theta: Callable[[Mat], Mat] | None = None,
                 name: str = "", tol: float = DEFAULT_TOL):
        if not basis:
            raise ValueError("empty basis")
        ring = basis[0].ring
        n = basis[0].rows
        for b in basis:
            if b.ring != ring or b.shape != (n, n):
                raise ValueError("basis matrices must share ring and square shape")
        self.name = name
        self.ring = ring
        self.n = n
        self.tol = tol
        self.basis = list(basis)
        self.dim = d = len(basis)
        stack = np.stack([b.data for b in basis])
        self._stack = stack
        R = realify_stack(ring, stack).T  # ambient_real_dim x d
        if np.linalg.matrix_rank(R) != d:
            raise ValueError("basis is linearly dependent")
        self._R = R
        self._Rpinv = np.linalg.pinv(R)

        prods = ring_matmul(ring, stack[:, None], stack[None, :])
        brackets = prods - np.swapaxes(prods, 0, 1)
        flat = realify_stack(ring, brackets.reshape((d * d,) + brackets.shape[2:]))
        C = (flat @ self._Rpinv.T).reshape(d, d, d)
        resid = np.max(np.abs(C.reshape(d * d, d) @ R.T - flat)) if d else 0.0
        if resid > 1e-9 * max(1.0, np.max(np.abs(flat))):
            raise ValueError(f"basis not closed under bracket (residual {resid:.2e})")
        self.closure_residual = float(resid)
        C.setflags(write=False)
        self.structure_constants = C
        # ad(e_a) e_b = sum_c C[a,b,c] e_c, so ad(e_a)[c, b] = C[a, b, c]
        self.ad_basis = np.ascontiguousarray(np.transpose(C, (0, 2, 1)))
        self.ad_basis.setflags(write=False)
        K = np.einsum("aec,bce->ab", C, C)
        self.killing_gram = 0.5 * (K + K.T)
        self.trace_form = _re_trace_products(ring, prods)
        tf = self.trace_form
        denom = float(np.sum(tf * tf))
        self.trace_constant = float(np.sum(self.killing_gram * tf) / denom) if denom else 0.0
        kn = np.linalg.norm(self.killing_gram)
        self.trace_residual = (
            float(np.linalg.norm(self.killing_gram - self.trace_constant * tf) / kn) if kn else 0.0
        )
        self.euclidean_gram = R.T @ R

        self._theta_fn = theta
        if theta is not None:
            Th = np.stack([self.coords(theta(b)) for b in basis], axis=1)
            self.theta = Th
            bt = -self.killing_gram @ Th
            self._btheta = 0.5 * (bt + bt.T)
        else:
            self.theta = None
            self._btheta = None
        self.metric = self._choose_metric()

    def _choose_metric(self) -> np.ndarray:
        # Normalised B_theta when available, otherwise the realified Euclidean product.
        if self._btheta is not None and self.trace_constant > 0:
            M = self._btheta / self.trace_constant
            if np.min(np.linalg.eigvalsh(M)) > 1e-10:
                self.metric_kind = "btheta"
                return M
        self.metric_kind = "euclidean"
        return self.euclidean_gram

    # coordinates ---------------------------------------------------------

    def coords(self, X: Mat, check: bool = True) -> np.ndarray:
        """Coordinates of a matrix in the algebra's basis."""
        v = realify(X)
        c = self._Rpinv @ v
        if check:
            r = np.linalg.norm(self._R @ c - v)
            if r > 1e-9 * max(1.0, np.linalg.norm(v)):
                raise ValueError(f"matrix is not in the algebra (residual {r:.2e})")
        return c

    def element(self, x: np.ndarray) -> Mat:
        """Matrix with coordinates x."""
        return unrealify(self._R @ np.asarray(x, dtype=float), self.n, self.n, self.ring)

    def span(self, items, tol: float | None = None) -> Subspace:
        """Subspace spanned by matrices or coordinate vectors."""
        vecs = [self.coords(i) if isinstance(i, Mat) else np.asarray(i, dtype=float) for i in items]
        return orthonormalize(vecs, self.metric, self.tol if tol is None else tol, ambient_dim=self.dim)

    def full(self) -> Subspace:
        return orthonormalize(np.eye(self.dim), self.metric, self.tol)

    def zero(self) -> Subspace:
        return orthonormalize([], self.metric, self.tol, ambient_dim=self.dim)

    def norm(self, x: np.ndarray) -> float:
        return float(np.sqrt(max(x @ self.metric @ x, 0.0)))

    def inner(self, x, y) -> float:
        return float(x @ self.metric @ y)

    # brackets ------------------------------------------------------------

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad(x) in coordinates."""
        return np.tensordot(np.asarray(x, dtype=float), self.ad_basis, axes=(0, 0))

    def br(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """[x, y] for coordinate vectors."""
        return self.ad(x) @ np.asarray(y, dtype=float)

    def bracket_table(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """All brackets [A_i, B_j] of columns, returned with shape (i, j, dim)."""
        T = np.tensordot(A, self.structure_constants, axes=([0], [0]))  # (i, b, c)
        return np.transpose(np.tensordot(T, B, axes=([1], [0])), (0, 2, 1))

    def apply_theta(self, x: np.ndarray) -> np.ndarray:
        if self.theta is None:
            raise ValueError("no Cartan involution installed")
        return self.theta @ x

    def theta_image(self, S: Subspace) -> Subspace:
        return orthonormalize(self.theta @ S.basis, self.metric, S.tol, ambient_dim=self.dim)

    def image(self, M: np.ndarray, S: Subspace) -> Subspace:
        return orthonormalize(M @ S.basis, self.metric, S.tol, ambient_dim=self.dim)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or '?'}, dim={self.dim}, ring={self.ring}, n={self.n})"


@dataclass(frozen=True)
class CartanSplit:
    k: Subspace
    p: Subspace

    def project_p(self, x: np.ndarray) -> np.ndarray:
        return self.p.project(x)

    def project_k(self, x: np.ndarray) -> np.ndarray:
        return self.k.project(x)


def killing_gram(g: LieAlgebra) -> np.ndarray:
    """K_ab = tr(ad e_a ad e_b)."""
    return g.killing_gram


def btheta_gram(g: LieAlgebra) -> np.ndarray:
    """Gram matrix of B_theta(X, Y) = -B(X, theta Y); raises unless positive definite."""
    if g._btheta is None:
        raise ValueError("no Cartan involution installed")
    ev = np.linalg.eigvalsh(g._btheta)
    if ev[0] <= 1e-10 * max(1.0, abs(ev[-1])):
        raise ValueError("B_theta is not positive definite")
    return g._btheta


def cartan_split(g: LieAlgebra) -> CartanSplit:
    """k and p as the +1 and -1 eigenspaces of theta."""
    if g.theta is None:
        raise ValueError("no Cartan involution installed")
    Th = g.theta
    if np.max(np.abs(Th @ Th - np.eye(g.dim))) > 1e-9:
        raise ValueError("theta is not involutive")
    k = kernel(Th - np.eye(g.dim), g.tol, g.metric)
    p = kernel(Th + np.eye(g.dim), g.tol, g.metric)
    return CartanSplit(k.with_label("k"), p.with_label("p"))


def is_subalgebra(g: LieAlgebra, S: Subspace, tol: float | None = None) -> bool:
    tol = g.tol if tol is None else tol
    if S.dim <= 1:
        return True
    T = g.bracket_table(S.basis, S.basis).reshape(-1, g.dim).T
    R = T - S.project(T)
    return float(np.max(np.abs(R))) < tol


def bracket_space(g: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """Span of [A, B]."""
    if A.dim == 0 or B.dim == 0:
        return g.zero()
    T = g.bracket_table(A.basis, B.basis).reshape(-1, g.dim).T
    return orthonormalize(T, g.metric, g.tol, ambient_dim=g.dim)


def bracket_residual(g: LieAlgebra, A: Subspace, B: Subspace, target: Subspace) -> float:
    """max over basis pairs of the component of [a, b] off ``target``."""
    if A.dim == 0 or B.dim == 0:
        return 0.0
    T = g.bracket_table(A.basis, B.basis).reshape(-1, g.dim).T
    R = T - target.project(T) if target.dim else T
    return float(np.max(np.abs(R)))


def generated_subalgebra(g: LieAlgebra, seed: Subspace) -> Subspace:
    """Smallest subalgebra containing seed: iterate S <- S + [S, S]."""
    S = seed
    for _ in range(g.dim + 1):
        nxt = span(S, bracket_space(g, S, S))
        if nxt.dim == S.dim:
            return nxt
        S = nxt
    raise RuntimeError("generated_subalgebra did not stabilise")


def _kernel_in(g: LieAlgebra, m: Subspace, rows: np.ndarray) -> Subspace:
    # rows has shape (dim m, ...) -> kernel of the linear map on m-coefficients
    L = rows.reshape(m.dim, -1).T
    K = kernel(L, g.tol)
    return orthonormalize(m.basis @ K.basis, g.metric, g.tol, ambient_dim=g.dim)


def normalizer(g: LieAlgebra, m: Subspace, v: Subspace) -> Subspace:
    """{X in m : [X, v] ⊆ v}, as the kernel of X -> (pr_{v-perp}[X, b])_b."""
    if m.dim == 0 or v.dim == 0:
        return m
    T = g.bracket_table(m.basis, v.basis)  # (i, j, c)
    flat = T.reshape(-1, g.dim).T
    resid = (flat - v.project(flat)).T.reshape(m.dim, v.dim, g.dim)
    return _kernel_in(g, m, resid)


def centralizer(g: LieAlgebra, m: Subspace, s: Subspace) -> Subspace:
    """{X in m : [X, s] = 0}."""
    if m.dim == 0 or s.dim == 0:
        return m
    return _kernel_in(g, m, g.bracket_table(m.basis, s.basis))


def center(g: LieAlgebra, S: Subspace) -> Subspace:
    return centralizer(g, S, S)


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    center_dim: int
    signature: tuple
    derived_series: tuple

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "center_dim": self.center_dim,
            "killing_signature": list(self.signature),
            "derived_series": list(self.derived_series),
        }


def restricted_killing(g: LieAlgebra, S: Subspace) -> np.ndarray:
    """Killing form of S itself (traces of ad restricted to S)."""
    if S.dim == 0:
        return np.zeros((0, 0))
    T = g.bracket_table(S.basis, S.basis)  # (i, j, c)
    ads = np.stack([S.coords(T[i].T) for i in range(S.dim)])  # ads[i][k, j]
    return np.einsum("akj,bjk->ab", ads, ads)


def fingerprint(g: LieAlgebra, S: Subspace) -> Fingerprint:
    """Dimension, center dimension, Killing signature and derived series of S."""
    if not is_subalgebra(g, S):
        raise ValueError("fingerprint needs a subalgebra")
    K = restricted_killing(g, S)
    ev = np.linalg.eigvalsh(K) if S.dim else np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(ev)))) if ev.size else 1.0
    cut = 1e-7 * scale
    sig = (int(np.sum(ev > cut)), int(np.sum(ev < -cut)), int(np.sum(np.abs(ev) <= cut)))
    series = [S.dim]
    D = S
    while D.dim > 0:
        D2 = bracket_space(g, D, D)
        series.append(D2.dim)
        if D2.dim == D.dim:
            break
        D = D2
    return Fingerprint(S.dim, center(g, S).dim, sig, tuple(series))


def jacobi_residual(g: LieAlgebra, x, y, z) -> float:
    br = g.br
    return float(np.max(np.abs(br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y)))))


def conj_transpose_theta(X: Mat) -> Mat:
    """theta(X) = -X*, the Cartan involution of the classical real forms used here."""
    return -X.star()


__all__ = [
    "LieAlgebra", "CartanSplit", "Fingerprint", "bracket", "is_subalgebra",
    "generated_subalgebra", "killing_gram", "cartan_split", "btheta_gram",
    "normalizer", "centralizer", "center", "fingerprint", "bracket_space",
    "bracket_residual", "restricted_killing", "jacobi_residual", "conj_transpose_theta",
]


def operator_from_map(g: LieAlgebra, fn: Callable[[Mat], Mat], domain: Subspace) -> np.ndarray:
    """Coordinate matrix of a linear map on matrices, restricted to ``domain``.

    The result acts as ``fn`` on ``domain`` and as zero on its orthogonal
    complement.
    """
    imgs = np.stack([g.coords(fn(g.element(b))) for b in domain.basis.T], axis=1)
    return imgs @ domain.basis.T @ g.metric
