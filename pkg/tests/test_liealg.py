import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from artifact.liealg import (
    LieAlgebra,
    bracket,
    btheta_gram,
    centralizer,
    fingerprint,
    generated_subalgebra,
    is_subalgebra,
    jacobi_residual,
    killing_gram,
    normalizer,
)
from artifact.numlin import ONE, QI, QJ, QK, Mat, matrix_unit, realify, subspace_equal
from artifact.spaces import build_space, sl3h_basis, so5c_basis

from conftest import SPACES, parabolic

# Killing form = c * Re tr(XY). Frozen from a brute-force oracle that builds
# every ad matrix by least squares on the realified basis and takes traces.
KILLING_CONSTANTS = {"sl3h": 24.0, "so5c": 6.0, "su:n=1": 10.0, "su:n=2": 12.0}


def brute_force_killing(basis):
    R = np.stack([realify(B) for B in basis], axis=1)
    pinv = np.linalg.pinv(R)
    ads = [np.stack([pinv @ realify(X @ B - B @ X) for B in basis], axis=1) for X in basis]
    return np.array([[np.trace(a @ b) for b in ads] for a in ads])


def trace_form(basis):
    return np.array([[(X @ Y).re_trace() for Y in basis] for X in basis])


def sl_real(n):
    basis = [matrix_unit(n, r, c) for r in range(1, n + 1) for c in range(1, n + 1) if r != c]
    basis += [matrix_unit(n, k, k) - matrix_unit(n, k + 1, k + 1) for k in range(1, n)]
    return LieAlgebra(basis, lambda X: -X.transpose(), name=f"sl({n},R)")


def test_bracket_examples():
    E12, E21 = matrix_unit(3, 1, 2), matrix_unit(3, 2, 1)
    assert bracket(E12, E21).allclose(matrix_unit(3, 1, 1) - matrix_unit(3, 2, 2))
    X = Mat(np.arange(9.0).reshape(3, 3))
    assert bracket(X, X).allclose(Mat.zeros(3))
    iI, jI = matrix_unit(1, 1, 1, "H", QI), matrix_unit(1, 1, 1, "H", QJ)
    assert bracket(iI, jI).allclose(matrix_unit(1, 1, 1, "H", QK) * 2.0)


def test_is_subalgebra_examples():
    sp = build_space("sl3h")
    g, d = sp.algebra, sp.datum
    assert is_subalgebra(g, g.span([g.coords(matrix_unit(3, 1, 2, "H", QI))]))
    assert is_subalgebra(g, d.a)
    sl3 = sl_real(3)
    pair = sl3.span([sl3.coords(matrix_unit(3, 1, 2)), sl3.coords(matrix_unit(3, 2, 1))])
    assert not is_subalgebra(sl3, pair)


def test_generated_subalgebra_examples():
    sl2 = sl_real(2)
    seed_space = sl2.span([sl2.coords(matrix_unit(2, 1, 2)), sl2.coords(matrix_unit(2, 2, 1))])
    assert generated_subalgebra(sl2, seed_space).dim == 3
    sp = build_space("sl3h")
    g, d = sp.algebra, sp.datum
    # fixed point on an existing subalgebra
    assert subspace_equal(generated_subalgebra(g, d.g0), d.g0)
    gen = generated_subalgebra(g, d.sum_of([(0, 1), (0, -1)]))
    assert gen.dim == 15  # sl(2, H)


@pytest.mark.parametrize("spec", SPACES)
def test_killing_matches_frozen_constant(spec):
    g = build_space(spec).algebra
    T = trace_form(g.basis)
    c = KILLING_CONSTANTS[spec]
    K = killing_gram(g)
    assert np.linalg.norm(K - c * T) / np.linalg.norm(K) < 1e-6
    assert abs(g.trace_constant - c) < 1e-8


def test_su_killing_constant_is_2n_plus_8():
    for n in (1, 2):
        assert KILLING_CONSTANTS[f"su:n={n}"] == 2 * n + 8


@pytest.mark.parametrize("spec,basis_fn", [("sl3h", sl3h_basis), ("so5c", so5c_basis)])
def test_killing_constant_oracle(spec, basis_fn):
    basis = basis_fn()
    K, T = brute_force_killing(basis), trace_form(basis)
    c = np.sum(K * T) / np.sum(T * T)
    assert abs(c - KILLING_CONSTANTS[spec]) < 1e-9
    assert np.linalg.norm(K - c * T) / np.linalg.norm(K) < 1e-9


def test_killing_of_abelian_algebra_is_zero():
    a = LieAlgebra([matrix_unit(2, 1, 1), matrix_unit(2, 2, 2)])
    assert np.allclose(killing_gram(a), 0.0)


@pytest.mark.parametrize("spec,p_dim", [("sl3h", 14), ("so5c", 10), ("su:n=1", 12), ("su:n=2", 16)])
def test_cartan_split_dims(spec, p_dim):
    sp = build_space(spec)
    assert sp.split.p.dim == p_dim
    assert sp.split.k.dim + sp.split.p.dim == sp.algebra.dim


@pytest.mark.parametrize("spec", SPACES)
def test_btheta_blocks(spec):
    sp = build_space(spec)
    g, split = sp.algebra, sp.split
    B, Bt = killing_gram(g), btheta_gram(g)
    P, K = split.p.basis, split.k.basis
    assert np.allclose(P.T @ Bt @ P, P.T @ B @ P, atol=1e-8)
    assert np.allclose(K.T @ Bt @ K, -K.T @ B @ K, atol=1e-8)
    assert np.allclose(K.T @ Bt @ P, 0.0, atol=1e-8)
    assert np.min(np.linalg.eigvalsh(Bt)) > 0


def test_normalizer_examples_sl3h():
    sp = build_space("sl3h")
    g = sp.algebra
    pd = parabolic("sl3h", 2)
    E = lambda p, q, u=ONE: g.coords(matrix_unit(3, p, q, "H", u))
    # an ideal of m_2 is normalized by all of m_2
    assert subspace_equal(normalizer(g, pd.m_j, pd.m_j), pd.m_j)
    # C j E23: p12 = 0, p22 in C, q in R i, Re p11 + Re p22 = 0
    N = normalizer(g, pd.m_j, g.span([E(2, 3, QJ), E(2, 3, QK)]))
    assert N.dim == 10
    for x in N.basis.T:
        X = g.element(x).data
        assert np.allclose(X[0, 1], 0.0, atol=1e-9)
        assert np.allclose(X[1, 1, 2:], 0.0, atol=1e-9)
        assert np.allclose(X[2, 2, [0, 2, 3]], 0.0, atol=1e-9)
        assert abs(X[0, 0, 0] + X[1, 1, 0]) < 1e-9
    # (Im H) E23: q = Im(p22)
    N = normalizer(g, pd.m_j, g.span([E(2, 3, u) for u in (QI, QJ, QK)]))
    assert N.dim == 11
    for x in N.basis.T:
        X = g.element(x).data
        assert np.allclose(X[2, 2, 1:], X[1, 1, 1:], atol=1e-9)


@pytest.mark.parametrize("spec", SPACES)
def test_maximal_abelian_is_self_centralizing(spec):
    sp = build_space(spec)
    g, d = sp.algebra, sp.datum
    assert subspace_equal(centralizer(g, sp.split.p, d.a), d.a)
    assert subspace_equal(centralizer(g, g.full(), g.zero()), g.full())


def test_compact_ideal_of_sl3h_boundary():
    sp = build_space("sl3h")
    Z = centralizer(sp.algebra, sp.datum.k0, parabolic("sl3h", 1).b_j)
    assert Z.dim == 3


def test_fingerprints():
    ab = LieAlgebra([matrix_unit(2, 1, 1), matrix_unit(2, 2, 2)])
    assert fingerprint(ab, ab.full()).as_dict() == {
        "dim": 2, "center_dim": 2, "killing_signature": [0, 0, 2], "derived_series": [2, 0]}
    sp = build_space("sl3h")
    fp = fingerprint(sp.algebra, sp.datum.k0).as_dict()
    assert (fp["dim"], fp["center_dim"], fp["killing_signature"]) == (9, 0, [0, 9, 0])
    sp = build_space("so5c")
    fp = fingerprint(sp.algebra, sp.datum.k0).as_dict()
    assert fp["dim"] == 2 and fp["center_dim"] == 2


def _random_triple(g, s):
    r = np.random.default_rng(s)
    return [r.standard_normal(g.dim) for _ in range(3)]


seeds = st.integers(0, 2**31 - 1)


@seed(21)
@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPACES), seeds)
def test_jacobi_identity(spec, s):
    g = build_space(spec).algebra
    x, y, z = _random_triple(g, s)
    scale = g.norm(x) * g.norm(y) * g.norm(z)
    assert jacobi_residual(g, x, y, z) < 1e-10 * max(scale, 1.0)


@seed(22)
@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPACES), seeds)
def test_theta_is_an_involutive_automorphism(spec, s):
    g = build_space(spec).algebra
    x, y, _ = _random_triple(g, s)
    th = g.theta
    assert np.allclose(th @ g.br(x, y), g.br(th @ x, th @ y), atol=1e-9)
    assert np.allclose(th @ (th @ x), x, atol=1e-12)


@seed(23)
@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPACES), seeds)
def test_ad_is_skew_on_k_and_symmetric_on_p(spec, s):
    sp = build_space(spec)
    g, split = sp.algebra, sp.split
    r = np.random.default_rng(s)
    K = split.k.basis @ r.standard_normal(split.k.dim)
    P = split.p.basis @ r.standard_normal(split.p.dim)
    G = g.metric
    assert np.allclose(G @ g.ad(K), -(G @ g.ad(K)).T, atol=1e-9)
    assert np.allclose(G @ g.ad(P), (G @ g.ad(P)).T, atol=1e-9)
