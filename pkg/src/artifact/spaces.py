"""Matrix models of the three symmetric spaces and the Grassmannian's structures on p.

* ``sl3h``: sl(3, H) with theta(X) = -X*, a = real traceless diagonal matrices.
* ``so5c``: so(5, C) realified, theta = entrywise conjugation,
  a = span{i(E12 - E21), i(E34 - E43)}.
* ``su:n=N``: su(N+2, 2) with theta(X) = -X* and
  a = R(E_{N+2,N+3} + E_{N+3,N+2}) + R(E_{N+1,N+4} + E_{N+4,N+1}).
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .angles import ComplexStructure, QuaternionicStructure
from .liealg import (
    CartanSplit,
    LieAlgebra,
    cartan_split,
    conj_transpose_theta,
    operator_from_map,
)
from .numlin import ONE, QI, QJ, QK, Mat, Subspace, matrix_unit, orthonormalize
from .roots import RestrictedRootDatum, choose_positivity, restricted_root_datum

SQ2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SpaceSpec:
    id: str
    n: int = 0

    def __post_init__(self):
        if self.id not in ("sl3h", "so5c", "su"):
            raise ValueError(f"unknown space id {self.id!r}")
        if self.id == "su" and self.n < 1:
            raise ValueError("su needs n >= 1")
        if self.id != "su" and self.n != 0:
            raise ValueError(f"{self.id} takes no n parameter")

    @classmethod
    def parse(cls, text: str) -> "SpaceSpec":
        text = text.strip()
        m = re.fullmatch(r"su:n=(\d+)", text)
        if m:
            return cls("su", int(m.group(1)))
        return cls(text)

    def __str__(self) -> str:
        return f"su:n={self.n}" if self.id == "su" else self.id


class BuiltSpace(NamedTuple):
    algebra: LieAlgebra
    split: CartanSplit
    datum: RestrictedRootDatum


def _traceless_diagonal(N: int) -> list[np.ndarray]:
    """Orthonormal basis of the real traceless diagonals (Helmert vectors)."""
    out = []
    for k in range(1, N):
        v = np.zeros(N)
        v[:k] = 1.0
        v[k] = -k
        out.append(v / np.sqrt(k * (k + 1)))
    return out


def sl3h_basis() -> list[Mat]:
    n = 3
    basis = []
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p != q:
                basis.extend(matrix_unit(n, p, q, "H", u) for u in (ONE, QI, QJ, QK))
    for p in range(1, n + 1):
        basis.extend(matrix_unit(n, p, p, "H", u) for u in (QI, QJ, QK))
    for v in _traceless_diagonal(n):
        data = np.zeros((n, n, 4))
        data[np.arange(n), np.arange(n), 0] = v
        basis.append(Mat(data, "H"))
    return basis


def so5c_basis() -> list[Mat]:
    n = 5
    basis = []
    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            A = (matrix_unit(n, p, q, "C") - matrix_unit(n, q, p, "C")) * (1 / SQ2)
            basis.extend([A, A * 1j])
    return basis


def su_basis(p: int, q: int) -> list[Mat]:
    N = p + q
    basis = []
    for v in _traceless_diagonal(N):
        basis.append(Mat(np.diag(1j * v), "C"))
    blocks = [range(1, p + 1), range(p + 1, N + 1)]
    for blk in blocks:
        for r in blk:
            for s in blk:
                if r < s:
                    E, F = matrix_unit(N, r, s, "C"), matrix_unit(N, s, r, "C")
                    basis.append((E - F) * (1 / SQ2))
                    basis.append((E + F) * (1j / SQ2))
    for r in blocks[0]:
        for s in blocks[1]:
            E, F = matrix_unit(N, r, s, "C"), matrix_unit(N, s, r, "C")
            basis.append((E + F) * (1 / SQ2))
            basis.append((E - F) * (1j / SQ2))
    return basis


def so5c_theta(X: Mat) -> Mat:
    return X.conj()


def _sl3h(spec: SpaceSpec) -> BuiltSpace:
    g = LieAlgebra(sl3h_basis(), conj_transpose_theta, name="sl(3,H)")
    split = cartan_split(g)

    def diag(v):
        data = np.zeros((3, 3, 4))
        data[np.arange(3), np.arange(3), 0] = v
        return g.coords(Mat(data, "H"))

    a_basis = np.stack([diag(np.array([1.0, 0.0, -1.0]) / SQ2),
                        diag(np.array([1.0, -2.0, 1.0]) / np.sqrt(6))], axis=1)
    d = restricted_root_datum(g, split, a_basis)
    d = choose_positivity(d, 2 * d.a_basis[:, 0] + d.a_basis[:, 1],
                          anchor=g.coords(matrix_unit(3, 1, 2, "H")))
    return BuiltSpace(g, split, d)


def _so5c(spec: SpaceSpec) -> BuiltSpace:
    g = LieAlgebra(so5c_basis(), so5c_theta, name="so(5,C)")
    split = cartan_split(g)
    H1 = (matrix_unit(5, 1, 2, "C") - matrix_unit(5, 2, 1, "C")) * (1j / SQ2)
    H2 = (matrix_unit(5, 3, 4, "C") - matrix_unit(5, 4, 3, "C")) * (1j / SQ2)
    a_basis = np.stack([g.coords(H1), g.coords(H2)], axis=1)
    d = restricted_root_datum(g, split, a_basis)
    d = choose_positivity(d, 2 * d.a_basis[:, 0] + d.a_basis[:, 1])
    return BuiltSpace(g, split, d)


def su_a_basis(n: int) -> tuple[Mat, Mat]:
    """Normalised E_{n+2,n+3}+E_{n+3,n+2} and E_{n+1,n+4}+E_{n+4,n+1}."""
    N = n + 4
    Ha = (matrix_unit(N, n + 2, n + 3, "C") + matrix_unit(N, n + 3, n + 2, "C")) * (1 / SQ2)
    Hb = (matrix_unit(N, n + 1, n + 4, "C") + matrix_unit(N, n + 4, n + 1, "C")) * (1 / SQ2)
    return Ha, Hb


def _su(spec: SpaceSpec) -> BuiltSpace:
    n = spec.n
    g = LieAlgebra(su_basis(n + 2, 2), conj_transpose_theta, name=f"su({n + 2},2)")
    split = cartan_split(g)
    Ha, Hb = su_a_basis(n)
    a_basis = np.stack([g.coords(Ha), g.coords(Hb)], axis=1)
    d = restricted_root_datum(g, split, a_basis)
    # this chamber puts the complex line of (0, ..., 0, 1, 1) in g_{alpha_1}
    d = choose_positivity(d, 2 * d.a_basis[:, 0] - d.a_basis[:, 1])
    return BuiltSpace(g, split, d)


@functools.lru_cache(maxsize=None)
def _build_cached(spec: SpaceSpec) -> BuiltSpace:
    builder = {"sl3h": _sl3h, "so5c": _so5c, "su": _su}[spec.id]
    return builder(spec)


def build_space(spec: SpaceSpec | str) -> BuiltSpace:
    """(algebra, split, datum) for a space; results are cached and immutable."""
    if isinstance(spec, str):
        spec = SpaceSpec.parse(spec)
    return _build_cached(spec)


# ----------------------------------------------------------------------------
# complex and quaternionic structures


def right_quaternion_structure(g: LieAlgebra, domain: Subspace) -> QuaternionicStructure:
    """Right multiplication by i, j, k on a quaternionic subspace of sl(3,H).

    Right multiplication reverses products, so the third generator is -R_k to
    keep J1 J2 = J3.
    """
    J1 = operator_from_map(g, lambda X: X * QI, domain)
    J2 = operator_from_map(g, lambda X: X * QJ, domain)
    J3 = operator_from_map(g, lambda X: -(X * QK), domain)
    return QuaternionicStructure(
        ComplexStructure(J1, domain), ComplexStructure(J2, domain), ComplexStructure(J3, domain)
    )


def left_i_structure(g: LieAlgebra, domain: Subspace) -> ComplexStructure:
    """Multiplication by i on a complex-invariant subspace (so5c: the complex structure of g)."""
    return ComplexStructure(operator_from_map(g, lambda X: X * 1j, domain), domain)


@dataclass(frozen=True)
class GrassmannStructures:
    I_o: ComplexStructure
    Q_o: QuaternionicStructure


def _block_action(n: int, fn_B):
    p = n + 2

    def act(X: Mat) -> Mat:
        data = np.zeros_like(X.data)
        B = X.data[:p, p:]
        newB = fn_B(B)
        data[:p, p:] = newB
        data[p:, :p] = newB.conj().T
        return Mat(data, "C")

    return act


SU2_BASIS = (
    np.array([[1j, 0], [0, -1j]]),
    np.array([[0, -1], [1, 0]], dtype=complex),
    np.array([[0, 1j], [1j, 0]]),
)


def grassmann_structures(space: BuiltSpace, n: int) -> GrassmannStructures:
    """I_o: B -> iB and the right su(2)-block action B -> -B u on p of su(n+2, 2)."""
    g, split = space.algebra, space.split
    p = split.p
    I_o = ComplexStructure(operator_from_map(g, _block_action(n, lambda B: 1j * B), p), p)
    J1 = operator_from_map(g, _block_action(n, lambda B: -B @ SU2_BASIS[0]), p)
    J2 = operator_from_map(g, _block_action(n, lambda B: -B @ SU2_BASIS[1]), p)
    J3 = J1 @ J2
    Q = QuaternionicStructure(ComplexStructure(J1, p), ComplexStructure(J2, p), ComplexStructure(J3, p))
    return GrassmannStructures(I_o, Q)


def singular_type(s: GrassmannStructures, X: np.ndarray, tol: float = 1e-8) -> str:
    """'A' if I_o X ⊥ J X for all three generators, 'B' if I_o X lies in their span."""
    gram = s.I_o.gram
    nx2 = float(X @ gram @ X)
    if nx2 < 1e-20:
        raise ValueError("zero vector")
    IX = s.I_o.J @ X
    JX = [J.J @ X for J in s.Q_o.generators]
    if all(abs(float(IX @ gram @ v)) < tol * nx2 for v in JX):
        return "A"
    M = np.stack(JX, axis=1)
    G = M.T @ gram @ M
    coef = np.linalg.lstsq(G, M.T @ gram @ IX, rcond=None)[0]
    r = IX - M @ coef
    if np.sqrt(max(float(r @ gram @ r), 0.0)) < tol * np.sqrt(nx2) * 10:
        return "B"
    return "regular"


def iwasawa_transfer(space: BuiltSpace) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of X -> pr_p X on g and of its inverse p -> a + n."""
    g, d = space.algebra, space.datum
    to_p = 0.5 * (np.eye(g.dim) - g.theta)
    to_an = d.a.project(np.eye(g.dim)) + 2.0 * d.nilradical().project(np.eye(g.dim))
    return to_p, to_an


def pulled_back_complex_structure(space: BuiltSpace, n: int, domain: Subspace) -> ComplexStructure:
    """I_o transported to a + n along pr_p, restricted to an I_o-invariant ``domain``.

    The domain must carry the pulled-back inner product (see ``an_gram``).
    """
    to_p, to_an = iwasawa_transfer(space)
    I = grassmann_structures(space, n).I_o.J
    J = to_an @ I @ to_p
    D = domain.basis
    G = domain.gram
    J_dom = (J @ D) @ (D.T @ G)
    return ComplexStructure(J_dom, domain)


def an_gram(space: BuiltSpace) -> np.ndarray:
    """Inner product pulled back from p on a + n, extended by B_theta on its complement."""
    g = space.algebra
    to_p, _ = iwasawa_transfer(space)
    an = span_an(space)
    Pi = an.project(np.eye(g.dim))
    rest = np.eye(g.dim) - Pi
    S = to_p @ Pi
    G = S.T @ g.metric @ S + rest.T @ g.metric @ rest
    return 0.5 * (G + G.T)


def span_an(space: BuiltSpace) -> Subspace:
    d = space.datum
    return orthonormalize(np.concatenate([d.a.basis, d.nilradical().basis], axis=1),
                          space.algebra.metric, space.algebra.tol, ambient_dim=space.algebra.dim)


__all__ = [
    "SpaceSpec", "BuiltSpace", "build_space", "grassmann_structures", "singular_type",
    "GrassmannStructures", "right_quaternion_structure", "left_i_structure", "su_a_basis",
    "sl3h_basis", "so5c_basis", "su_basis", "iwasawa_transfer", "pulled_back_complex_structure",
    "an_gram", "span_an",
]
