"""Scalars over R, C and H, small matrices over them, and tolerant subspace algebra.

Everything downstream works with real coordinate vectors.  Matrices keep their
native entries (quaternions stay quaternions) and are flattened to real
coordinates only by :func:`realify`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

DEFAULT_TOL = 1e-8

# Hamilton product table: e_p * e_q = sum_r HAMILTON[p, q, r] e_r with e = (1, i, j, k).
HAMILTON = np.zeros((4, 4, 4))
for _p, _q, _r, _s in [
    (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1),
    (1, 0, 1, 1), (1, 1, 0, -1), (1, 2, 3, 1), (1, 3, 2, -1),
    (2, 0, 2, 1), (2, 1, 3, -1), (2, 2, 0, -1), (2, 3, 1, 1),
    (3, 0, 3, 1), (3, 1, 2, 1), (3, 2, 1, -1), (3, 3, 0, -1),
]:
    HAMILTON[_p, _q, _r] = _s
HAMILTON.setflags(write=False)


@dataclass(frozen=True)
class Quaternion:
    """The quaternion a + bi + cj + dk."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        arr = np.asarray(arr, dtype=float)
        return cls(*(float(x) for x in arr))

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def __add__(self, other):
        other = as_quaternion(other)
        return Quaternion.from_array(self.as_array() + other.as_array())

    __radd__ = __add__

    def __neg__(self):
        return Quaternion.from_array(-self.as_array())

    def __sub__(self, other):
        return self + (-as_quaternion(other))

    def __rsub__(self, other):
        return as_quaternion(other) - self

    def __mul__(self, other):
        if isinstance(other, Mat):
            return NotImplemented
        return quat_mul(self, as_quaternion(other))

    def __rmul__(self, other):
        if isinstance(other, Mat):
            return NotImplemented
        return quat_mul(as_quaternion(other), self)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.as_array(), as_quaternion(other).as_array(), atol=tol))


ONE = Quaternion(1.0)
QI = Quaternion(0.0, 1.0)
QJ = Quaternion(0.0, 0.0, 1.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


def as_quaternion(x) -> Quaternion:
    """Coerce a real number, a complex number (a + bi) or a 4-array to a Quaternion."""
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (complex, np.complexfloating)):
        return Quaternion(float(x.real), float(x.imag))
    if np.ndim(x) == 0:
        return Quaternion(float(x))
    return Quaternion.from_array(x)


def quat_mul(q1: Quaternion, q2: Quaternion) -> Quaternion:
    """Hamilton product q1 q2."""
    return Quaternion.from_array(
        np.einsum("p,q,pqr->r", q1.as_array(), q2.as_array(), HAMILTON)
    )


RINGS = ("R", "C", "H")


def _entry_shape(ring: str) -> tuple:
    return (4,) if ring == "H" else ()


def _dtype(ring: str):
    return complex if ring == "C" else float


def ring_matmul(ring: str, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product over ``ring`` with broadcasting over leading axes.

    Quaternion arrays carry the components on a trailing axis of length 4.
    """
    if ring == "H":
        return np.einsum("...ijp,...jkq,pqr->...ikr", A, B, HAMILTON)
    return A @ B


def ring_conj_transpose(ring: str, A: np.ndarray) -> np.ndarray:
    if ring == "R":
        return np.swapaxes(A, -1, -2)
    if ring == "C":
        return np.conj(np.swapaxes(A, -1, -2))
    out = np.swapaxes(A, -2, -3).copy()
    out[..., 1:] *= -1
    return out


@dataclass(frozen=True, eq=False)
class Mat:
    """A rows x cols matrix over R, C or H.

    ``data`` has shape (rows, cols) for R and C, and (rows, cols, 4) for H.
    """

    data: np.ndarray
    ring: str = "R"

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        arr = np.array(self.data, dtype=_dtype(self.ring))
        want = 3 if self.ring == "H" else 2
        if arr.ndim != want or (self.ring == "H" and arr.shape[-1] != 4):
            raise ValueError(f"bad entry array shape {arr.shape} for ring {self.ring}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, ring: str = "R") -> "Mat":
        cols = rows if cols is None else cols
        return cls(np.zeros((rows, cols) + _entry_shape(ring), dtype=_dtype(ring)), ring)

    @classmethod
    def identity(cls, n: int, ring: str = "R") -> "Mat":
        out = np.zeros((n, n) + _entry_shape(ring), dtype=_dtype(ring))
        idx = np.arange(n)
        if ring == "H":
            out[idx, idx, 0] = 1.0
        else:
            out[idx, idx] = 1.0
        return cls(out, ring)

    def entry(self, r: int, c: int):
        """Entry at 0-based position (r, c), as float, complex or Quaternion."""
        if self.ring == "H":
            return Quaternion.from_array(self.data[r, c])
        return self.data[r, c].item()

    def _check(self, other: "Mat"):
        if not isinstance(other, Mat):
            raise TypeError("expected Mat")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch {self.ring} vs {other.ring}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if other.shape != self.shape:
            raise ValueError("shape mismatch")
        return Mat(self.data + other.data, self.ring)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(-self.data, self.ring)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat(ring_matmul(self.ring, self.data, other.data), self.ring)

    def _scale(self, s, left: bool) -> "Mat":
        if isinstance(s, Quaternion):
            if self.ring != "H":
                if s.c == 0 and s.d == 0 and self.ring == "C":
                    return Mat(self.data * complex(s.a, s.b), "C")
                if s.b == s.c == s.d == 0:
                    return Mat(self.data * s.a, self.ring)
                raise ValueError("quaternion scalar on a non-quaternion matrix")
            q = s.as_array()
            spec = "p,ijq,pqr->ijr" if left else "ijp,q,pqr->ijr"
            args = (q, self.data) if left else (self.data, q)
            return Mat(np.einsum(spec, *args, HAMILTON), "H")
        if isinstance(s, (complex, np.complexfloating)) and complex(s).imag != 0:
            if self.ring == "C":
                return Mat(self.data * s, "C")
            if self.ring == "H":
                return self._scale(as_quaternion(s), left)
            raise ValueError("complex scalar on a real matrix")
        return Mat(self.data * float(np.real(s)), self.ring)

    def __mul__(self, s) -> "Mat":
        """Right scalar multiplication X s."""
        return self._scale(s, left=False)

    def __rmul__(self, s) -> "Mat":
        """Left scalar multiplication s X."""
        return self._scale(s, left=True)

    def star(self) -> "Mat":
        """Conjugate transpose."""
        return Mat(ring_conj_transpose(self.ring, self.data), self.ring)

    def conj(self) -> "Mat":
        """Entrywise conjugation."""
        if self.ring == "R":
            return self
        if self.ring == "C":
            return Mat(np.conj(self.data), "C")
        out = self.data.copy()
        out[..., 1:] *= -1
        return Mat(out, "H")

    def transpose(self) -> "Mat":
        axes = (1, 0, 2) if self.ring == "H" else (1, 0)
        return Mat(np.transpose(self.data, axes), self.ring)

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        diag = self.data[np.arange(self.rows), np.arange(self.rows)]
        t = diag.sum(axis=0)
        return Quaternion.from_array(t) if self.ring == "H" else t.item()

    def re_trace(self) -> float:
        t = self.trace()
        return t.a if isinstance(t, Quaternion) else float(np.real(t))

    def norm(self) -> float:
        return float(np.linalg.norm(realify(self)))

    def allclose(self, other: "Mat", tol: float = 1e-10) -> bool:
        self._check(other)
        return self.shape == other.shape and bool(np.allclose(self.data, other.data, atol=tol))

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols}, ring={self.ring})"


def matrix_unit(n: int, row: int, col: int, ring: str = "R", coeff=1.0, cols: int | None = None) -> Mat:
    """coeff * E_{row,col} in n x n (or n x cols) matrices.  Indices start at 1."""
    m = Mat.zeros(n, cols, ring)
    data = np.array(m.data)
    if ring == "H":
        data[row - 1, col - 1] = as_quaternion(coeff).as_array()
    else:
        data[row - 1, col - 1] = coeff
    return Mat(data, ring)


def realify(X: Mat) -> np.ndarray:
    """Real coordinates of X: entries row-major, each as (a), (a, b) or (a, b, c, d)."""
    if X.ring == "C":
        return np.stack([X.data.real, X.data.imag], axis=-1).reshape(-1)
    return np.array(X.data, dtype=float).reshape(-1)


def realify_stack(ring: str, arr: np.ndarray) -> np.ndarray:
    """Row-wise realification of a stack of entry arrays (leading axis = stack)."""
    n = arr.shape[0]
    if ring == "C":
        return np.stack([arr.real, arr.imag], axis=-1).reshape(n, -1)
    return np.asarray(arr, dtype=float).reshape(n, -1)


def unrealify(vec: np.ndarray, rows: int, cols: int, ring: str) -> Mat:
    """Inverse of :func:`realify`."""
    vec = np.asarray(vec, dtype=float)
    if ring == "C":
        pairs = vec.reshape(rows, cols, 2)
        return Mat(pairs[..., 0] + 1j * pairs[..., 1], "C")
    if ring == "H":
        return Mat(vec.reshape(rows, cols, 4), "H")
    return Mat(vec.reshape(rows, cols), "R")


# ----------------------------------------------------------------------------
# Subspaces


def _gram_chol(gram: np.ndarray | None, n: int) -> np.ndarray:
    if gram is None:
        return np.eye(n)
    return np.linalg.cholesky(gram)


def _rank_threshold(sigma: np.ndarray, tol: float) -> float:
    # Relative to the top singular value, floored at unit scale so that
    # numerically-zero inputs still give rank 0.
    top = float(sigma[0]) if sigma.size else 0.0
    return tol * max(top, 1.0)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of R^n stored by a basis orthonormal under ``gram``.

    ``basis`` has shape (ambient_dim, rank).  ``gram=None`` means the Euclidean
    inner product.  Instances are immutable.
    """

    basis: np.ndarray
    gram: np.ndarray | None = None
    tol: float = DEFAULT_TOL
    _label: str = field(default="", compare=False)

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim != 2:
            raise ValueError("basis must be a 2-d array (ambient_dim, rank)")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)
        if self.gram is not None:
            g = np.array(self.gram, dtype=float)
            g.setflags(write=False)
            object.__setattr__(self, "gram", g)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    rank = dim

    def vectors(self) -> list[np.ndarray]:
        return [self.basis[:, i].copy() for i in range(self.dim)]

    def inner(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.gram is None:
            return x.T @ y
        return x.T @ self.gram @ y

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Coefficients of the orthogonal projection of x on the basis."""
        return self.inner(self.basis, np.asarray(x, dtype=float))

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.basis @ self.coords(x)

    def contains(self, x: np.ndarray, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        x = np.asarray(x, dtype=float)
        r = x - self.project(x)
        return _norm(self.gram, r) <= tol * max(1.0, _norm(self.gram, x))

    def gram_error(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.max(np.abs(self.inner(self.basis, self.basis) - np.eye(self.dim))))

    def with_label(self, label: str) -> "Subspace":
        return Subspace(self.basis, self.gram, self.tol, label)

    @property
    def label(self) -> str:
        return self._label

    def __repr__(self) -> str:
        tag = f" {self._label}" if self._label else ""
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}{tag})"


def _norm(gram, x) -> float:
    x = np.asarray(x, dtype=float)
    if gram is None:
        return float(np.sqrt(max(x @ x, 0.0)))
    return float(np.sqrt(max(x @ gram @ x, 0.0)))


def zero_subspace(n: int, gram=None, tol: float = DEFAULT_TOL) -> Subspace:
    return Subspace(np.zeros((n, 0)), gram, tol)


def orthonormalize(vectors, inner: np.ndarray | None = None, tol: float = DEFAULT_TOL,
                   ambient_dim: int | None = None) -> Subspace:
    """Orthonormal basis of span(vectors) under the Gram matrix ``inner``.

    ``vectors`` is a sequence of vectors or an array with vectors as columns.
    Rank is the numerical rank (singular values above tol * max(sigma_1, 1)
    after whitening); the basis comes from modified Gram-Schmidt with column
    pivoting and one re-orthogonalization pass.
    """
    V = _as_columns(vectors, ambient_dim if inner is None else inner.shape[0])
    n = V.shape[0]
    if V.shape[1] == 0:
        return zero_subspace(n, inner, tol)
    L = _gram_chol(inner, n)
    W = L.T @ V  # whitened: inner products become Euclidean
    sigma = np.linalg.svd(W, compute_uv=False)
    r = int(np.sum(sigma > _rank_threshold(sigma, tol)))
    Q = np.zeros((n, r))
    R = W.copy()
    for k in range(r):
        norms = np.linalg.norm(R, axis=0)
        p = int(np.argmax(norms))
        q = R[:, p] / norms[p]
        for _ in range(2):
            # re-orthogonalize against the vectors already accepted
            q = q - Q[:, :k] @ (Q[:, :k].T @ q) if k else q
            q /= np.linalg.norm(q)
        Q[:, k] = q
        R = R - np.outer(q, q @ R)
        R[:, p] = 0.0
    basis = np.linalg.solve(L.T, Q) if inner is not None else Q
    return Subspace(basis, inner, tol)


def _as_columns(vectors, n: int | None) -> np.ndarray:
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        return np.asarray(vectors, dtype=float)
    vecs = [np.asarray(v, dtype=float).reshape(-1) for v in vectors]
    if not vecs:
        if n is None:
            raise ValueError("ambient dimension needed for an empty vector list")
        return np.zeros((n, 0))
    return np.stack(vecs, axis=1)


def project(S: Subspace, x: np.ndarray) -> np.ndarray:
    """Orthogonal projection of x onto S."""
    x = np.asarray(x, dtype=float)
    if x.shape[0] != S.ambient_dim:
        raise ValueError("dimension mismatch")
    return S.project(x)


def kernel(L: np.ndarray, tol: float = DEFAULT_TOL, inner: np.ndarray | None = None) -> Subspace:
    """Null space of the matrix L (domain = columns), via SVD."""
    L = np.atleast_2d(np.asarray(L, dtype=float))
    n = L.shape[1]
    if L.shape[0] == 0 or n == 0:
        return orthonormalize(np.eye(n), inner, tol)
    _, sigma, Vt = np.linalg.svd(L, full_matrices=True)
    r = int(np.sum(sigma > _rank_threshold(sigma, tol)))
    null = Vt[r:].T
    return orthonormalize(null, inner, tol, ambient_dim=n)


def span(*spaces: Subspace) -> Subspace:
    """Sum U + W + ... of subspaces sharing one ambient inner product."""
    if not spaces:
        raise ValueError("need at least one subspace")
    first = spaces[0]
    cols = np.concatenate([s.basis for s in spaces], axis=1)
    return orthonormalize(cols, first.gram, first.tol, ambient_dim=first.ambient_dim)


def is_contained(W: Subspace, U: Subspace, tol: float | None = None) -> bool:
    """True iff W ⊆ U."""
    tol = U.tol if tol is None else tol
    return all(U.contains(w, tol) for w in W.vectors())


def orthogonal_complement(S: Subspace) -> Subspace:
    """S^⊥ in the ambient space."""
    n = S.ambient_dim
    full = orthonormalize(np.eye(n), S.gram, S.tol)
    return complement_within(full, S)


def complement_within(U: Subspace, W: Subspace) -> Subspace:
    """U ⊖ W, the orthogonal complement of W inside U.  Requires W ⊆ U."""
    if not is_contained(W, U):
        raise ValueError("complement_within: W is not contained in U")
    resid = U.basis - W.basis @ W.coords(U.basis) if W.dim else U.basis
    out = orthonormalize(resid, U.gram, U.tol, ambient_dim=U.ambient_dim)
    if out.dim != U.dim - W.dim:
        raise ArithmeticError(f"complement rank {out.dim} != {U.dim} - {W.dim}")
    return out


def intersect(U: Subspace, W: Subspace) -> Subspace:
    """U ∩ W: kernel of a ↦ (I - P_W) Q_U a, mapped back into U."""
    if U.dim == 0 or W.dim == 0:
        return zero_subspace(U.ambient_dim, U.gram, U.tol)
    M = U.basis - W.project(U.basis)
    Lc = _gram_chol(U.gram, U.ambient_dim)
    K = kernel(Lc.T @ M, U.tol)
    return orthonormalize(U.basis @ K.basis, U.gram, U.tol, ambient_dim=U.ambient_dim)


def subspace_equal(U: Subspace, W: Subspace, tol: float | None = None) -> bool:
    """Dims agree and each basis projects into the other with small residual."""
    tol = max(U.tol, W.tol) if tol is None else tol
    if U.ambient_dim != W.ambient_dim or U.dim != W.dim:
        return False
    if U.dim == 0:
        return True
    return distance(U, W) < tol


def distance(U: Subspace, W: Subspace) -> float:
    """Largest residual of a basis vector of either space off the other."""
    res = 0.0
    for A, B in ((U, W), (W, U)):
        if A.dim == 0:
            continue
        R = A.basis - B.project(A.basis) if B.dim else A.basis
        for i in range(A.dim):
            res = max(res, _norm(A.gram, R[:, i]))
    return res


def linear_image(M: np.ndarray, S: Subspace, inner: np.ndarray | None = None,
                 tol: float | None = None) -> Subspace:
    """Image M(S) as a subspace (orthonormal under ``inner``, default S's)."""
    inner = S.gram if inner is None else inner
    tol = S.tol if tol is None else tol
    return orthonormalize(M @ S.basis, inner, tol, ambient_dim=M.shape[0])


def random_subspace(rng: np.random.Generator, n: int, k: int, inner=None,
                    tol: float = DEFAULT_TOL) -> Subspace:
    return orthonormalize(rng.standard_normal((n, k)), inner, tol, ambient_dim=n)


def unit_vector_in(S: Subspace, rng: np.random.Generator) -> np.ndarray:
    """A random unit vector of S (uniform on its unit sphere)."""
    c = rng.standard_normal(S.dim)
    c /= np.linalg.norm(c)
    return S.basis @ c


def columns(vectors: Iterable[np.ndarray]) -> np.ndarray:
    return np.stack([np.asarray(v, dtype=float) for v in vectors], axis=1)


__all__ = [
    "Quaternion", "ONE", "QI", "QJ", "QK", "quat_mul", "as_quaternion", "Mat",
    "matrix_unit", "realify", "unrealify", "Subspace", "orthonormalize", "project",
    "kernel", "complement_within", "intersect", "subspace_equal", "span",
    "is_contained", "orthogonal_complement", "zero_subspace", "distance",
    "linear_image", "random_subspace", "unit_vector_in", "DEFAULT_TOL",
]
