"""Kähler angles and quaternionic Kähler angles of real subspaces.

Structures act on a coordinate space with an inner product (``gram``); they are
defined on a ``domain`` subspace and vanish off it, which lets them live
directly on Lie algebra coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numlin import Subspace, orthonormalize

ANGLE_TOL = 1e-6


def _check_close(A, B, tol, what):
    err = float(np.max(np.abs(A - B))) if A.size else 0.0
    if err > tol:
        raise ValueError(f"{what} fails (error {err:.2e})")


class ComplexStructure:
    """An orthogonal J on ``domain`` with J^2 = -1."""

    def __init__(self, J: np.ndarray, domain: Subspace | None = None, tol: float = 1e-8):
        J = np.array(J, dtype=float)
        if domain is None:
            domain = orthonormalize(np.eye(J.shape[0]), None, tol)
        self.J = J
        self.J.setflags(write=False)
        self.domain = domain
        D = domain.basis
        gram = self.gram
        img = J @ D
        _check_close(img, domain.project(img), tol, "J preserves its domain")
        _check_close(J @ img, -D, tol, "J^2 = -1")
        _check_close(img.T @ gram @ img, np.eye(domain.dim), tol, "J orthogonal")

    @property
    def gram(self) -> np.ndarray:
        return np.eye(self.J.shape[0]) if self.domain.gram is None else self.domain.gram

    def __matmul__(self, x):
        return self.J @ x

    def restricted(self) -> np.ndarray:
        """Matrix of J in the orthonormal basis of its domain."""
        return self.domain.coords(self.J @ self.domain.basis)


class QuaternionicStructure:
    """Three anticommuting complex structures with J1 J2 = J3 (and cyclic)."""

    def __init__(self, J1: ComplexStructure, J2: ComplexStructure, J3: ComplexStructure,
                 tol: float = 1e-8):
        self.generators = (J1, J2, J3)
        D = J1.domain.basis
        for A, B, C in ((J1, J2, J3), (J2, J3, J1), (J3, J1, J2)):
            _check_close(A.J @ B.J @ D, C.J @ D, tol, "quaternion relation")
            _check_close(A.J @ B.J @ D, -(B.J @ A.J @ D), tol, "anticommutation")

    @property
    def J1(self):
        return self.generators[0]

    @property
    def J2(self):
        return self.generators[1]

    @property
    def J3(self):
        return self.generators[2]

    @property
    def domain(self) -> Subspace:
        return self.generators[0].domain

    def rotated(self, U: np.ndarray) -> "QuaternionicStructure":
        """New generators J'_a = sum_b U[b, a] J_b for U in SO(3)."""
        mats = [sum(U[b, a] * self.generators[b].J for b in range(3)) for a in range(3)]
        dom = self.domain
        return QuaternionicStructure(*(ComplexStructure(M, dom) for M in mats))


@dataclass(frozen=True)
class AngleTriple:
    phi1: float
    phi2: float
    phi3: float

    def as_tuple(self) -> tuple:
        return (self.phi1, self.phi2, self.phi3)

    def isclose(self, other, tol: float = ANGLE_TOL) -> bool:
        o = other.as_tuple() if isinstance(other, AngleTriple) else tuple(other)
        return all(abs(a - b) <= tol for a, b in zip(self.as_tuple(), o))


def _angle_from_cos2(c2: float) -> float:
    return float(np.arccos(np.sqrt(np.clip(c2, 0.0, 1.0))))


def _check_in(v: Subspace, x: np.ndarray):
    if not v.contains(x, 1e-7):
        raise ValueError("vector is not in the subspace")


def _norm2(gram, x) -> float:
    return float(x @ gram @ x)


def kahler_angle(J: ComplexStructure, v: Subspace, x: np.ndarray) -> float:
    """Angle between Jx and v, for nonzero x in v."""
    x = np.asarray(x, dtype=float)
    _check_in(v, x)
    nx2 = _norm2(J.gram, x)
    if nx2 == 0:
        raise ValueError("zero vector")
    pr = v.project(J.J @ x)
    return _angle_from_cos2(_norm2(J.gram, pr) / nx2)


def kahler_operator(J: ComplexStructure, v: Subspace) -> np.ndarray:
    """P = pr_v J restricted to v, in v's orthonormal basis."""
    return v.coords(J.J @ v.basis)


def constant_kahler_angle(J: ComplexStructure, v: Subspace, tol: float = ANGLE_TOL) -> float | None:
    """The common Kähler angle if P^T P is scalar on v, else None."""
    if v.dim == 0:
        return None
    P = kahler_operator(J, v)
    ev = np.linalg.eigvalsh(P.T @ P)
    angles = [_angle_from_cos2(e) for e in ev]
    if max(angles) - min(angles) > tol:
        return None
    return float(np.median(angles))


def qk_form(Q: QuaternionicStructure, v: Subspace, x: np.ndarray) -> np.ndarray:
    """F(J, J') = <pr_v J x, pr_v J' x> on the generators."""
    prs = np.stack([v.project(J.J @ x) for J in Q.generators], axis=1)
    gram = Q.J1.gram
    F = prs.T @ gram @ prs
    return 0.5 * (F + F.T)


def qk_angle(Q: QuaternionicStructure, v: Subspace, x: np.ndarray):
    """Quaternionic Kähler angle of v at x and a canonical basis of Q.

    Returns (AngleTriple, QuaternionicStructure) with phi1 <= phi2 <= phi3;
    the canonical generators make F diagonal.
    """
    x = np.asarray(x, dtype=float)
    _check_in(v, x)
    nx2 = _norm2(Q.J1.gram, x)
    if nx2 == 0:
        raise ValueError("zero vector")
    F = qk_form(Q, v, x)
    w, U = np.linalg.eigh(F)
    order = np.argsort(-w)
    w, U = w[order], U[:, order]
    if np.linalg.det(U) < 0:
        U[:, 2] *= -1
    triple = AngleTriple(*(_angle_from_cos2(e / nx2) for e in w))
    return triple, Q.rotated(U)


def constant_qk_angle(Q: QuaternionicStructure, v: Subspace, samples: int = 32,
                      rng: np.random.Generator | None = None,
                      tol: float = ANGLE_TOL) -> AngleTriple | None:
    """Sampled test for a constant quaternionic Kähler angle."""
    rng = np.random.default_rng(0) if rng is None else rng
    xs = [v.basis[:, 0]]
    for _ in range(samples):
        c = rng.standard_normal(v.dim)
        xs.append(v.basis @ (c / np.linalg.norm(c)))
    triples = [qk_angle(Q, v, x)[0] for x in xs]
    ref = triples[0]
    if all(t.isclose(ref, tol) for t in triples[1:]):
        return ref
    return None


__all__ = [
    "ComplexStructure", "QuaternionicStructure", "AngleTriple", "kahler_angle",
    "constant_kahler_angle", "qk_angle", "constant_qk_angle", "qk_form", "kahler_operator",
    "ANGLE_TOL",
]
