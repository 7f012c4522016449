import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from harmonic_crown.clifford import (
    CliffordRep,
    anticommutator_residual,
    build_clifford_rep,
    cayley_dickson_product,
    j_map,
    min_module_dim,
    skew_residual,
)
from harmonic_crown.htype import HTypeAlgebra, NPoint, bracket, jacobi_residual, n_inverse, n_multiply

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("q,d", [(1, 2), (2, 4), (3, 4), (4, 8), (5, 8), (6, 8), (7, 8), (8, 16), (9, 32),
                                 (10, 64), (11, 64)])
def test_min_module_dim(q, d):
    assert min_module_dim(q) == d
    assert build_clifford_rep(q).p == d


@pytest.mark.parametrize("q", range(1, 12))
def test_generators_exact(q):
    J = build_clifford_rep(q).generators
    assert anticommutator_residual(J) == 0.0
    assert skew_residual(J) == 0.0
    # orthogonal
    assert np.abs(J @ J.transpose(0, 2, 1) - np.eye(J.shape[1])).max() == 0.0


def test_q1_is_complex_structure():
    J = build_clifford_rep(1).generators[0]
    np.testing.assert_array_equal(J, [[0.0, -1.0], [1.0, 0.0]])


def test_multiplicity():
    rep = build_clifford_rep(2, 2)
    assert rep.p == 8 and rep.multiplicity == 2
    assert anticommutator_residual(rep.generators) == 0.0


def test_quaternion_product():
    i, j, k = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]
    np.testing.assert_array_equal(cayley_dickson_product(i, j), k)
    np.testing.assert_array_equal(cayley_dickson_product(j, i), -k)
    np.testing.assert_array_equal(cayley_dickson_product(i, i), -np.eye(4)[0])


@pytest.mark.parametrize("bad", [0, -1])
def test_invalid_q(bad):
    with pytest.raises(ValueError):
        build_clifford_rep(bad)
    with pytest.raises(ValueError):
        min_module_dim(bad)


def test_invalid_multiplicity():
    with pytest.raises(ValueError):
        build_clifford_rep(1, 0)


def test_rep_validation():
    with pytest.raises(ValueError):
        CliffordRep(q=1, p=2, generators=np.eye(2)[None])  # not skew
    with pytest.raises(ValueError):
        CliffordRep(q=2, p=2, generators=np.zeros((1, 2, 2)))  # wrong shape


@settings(max_examples=50, deadline=None)
@given(q=st.integers(1, 9), data=st.data())
def test_jz_squares_to_minus_norm(q, data):
    rep = build_clifford_rep(q)
    Z = data.draw(arrays(np.float64, q, elements=finite))
    V = data.draw(arrays(np.float64, rep.p, elements=finite))
    lhs = j_map(rep, Z, j_map(rep, Z, V))
    np.testing.assert_allclose(lhs, -(Z @ Z) * V, atol=1e-10 * (1 + (Z @ Z) * np.abs(V).max()))


def test_j_map_broadcast_and_shape_error():
    rep = build_clifford_rep(3)
    Z = np.random.default_rng(0).standard_normal((5, 3))
    V = np.random.default_rng(1).standard_normal((5, 4))
    out = j_map(rep, Z, V)
    assert out.shape == (5, 4)
    np.testing.assert_allclose(out[2], np.tensordot(Z[2], rep.generators, 1) @ V[2])
    with pytest.raises(ValueError):
        j_map(rep, Z[:, :2], V)


def test_bracket_defining_relation(group, rng):
    alg = group.alg
    for _ in range(20):
        V, W, Z = rng.standard_normal(alg.p), rng.standard_normal(alg.p), rng.standard_normal(alg.q)
        lhs = j_map(alg.rep, Z, V) @ W
        assert abs(lhs - Z @ bracket(alg, V, W)) < 1e-12
        np.testing.assert_allclose(bracket(alg, V, W), -bracket(alg, W, V), atol=1e-14)
        np.testing.assert_allclose(bracket(alg, V, V), 0.0, atol=1e-14)


def test_structure_constants(group):
    alg = group.alg
    c = alg.structure_constants
    e = np.eye(alg.p)
    for i in range(alg.p):
        for j in range(alg.p):
            np.testing.assert_allclose(bracket(alg, e[i], e[j]), c[:, i, j], atol=0)


def test_n_group_laws(group, rng):
    alg = group.alg
    x = NPoint(rng.standard_normal(alg.p), rng.standard_normal(alg.q))
    e = NPoint(np.zeros(alg.p), np.zeros(alg.q))
    xe = n_multiply(alg, x, e)
    np.testing.assert_array_equal(xe.V, x.V)
    np.testing.assert_array_equal(xe.Z, x.Z)
    xi = n_multiply(alg, x, n_inverse(alg, x))
    np.testing.assert_allclose(np.r_[xi.V, xi.Z], 0.0, atol=1e-14)


def test_n_center(group, rng):
    # Z-only elements are central
    alg = group.alg
    c = NPoint(np.zeros(alg.p), rng.standard_normal(alg.q))
    x = NPoint(rng.standard_normal(alg.p), rng.standard_normal(alg.q))
    a, b = n_multiply(alg, c, x), n_multiply(alg, x, c)
    np.testing.assert_allclose(np.r_[a.V - b.V, a.Z - b.Z], 0.0, atol=1e-14)


def test_jacobi(group, rng):
    alg = group.alg
    X, Y, W = ((rng.standard_normal(alg.p), rng.standard_normal(alg.q)) for _ in range(3))
    assert jacobi_residual(alg, X, Y, W) == 0.0


def test_bracket_dimension_check():
    alg = HTypeAlgebra.build(1)
    with pytest.raises(ValueError):
        bracket(alg, np.zeros(3), np.zeros(2))
