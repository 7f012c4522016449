import numpy as np
import pytest

from harmonic_crown.complexify import (
    ComplexGroupPoint,
    CrownCoords,
    DegenerateDecomposition,
    c_inverse,
    c_multiply,
    mixed_compose,
    mixed_decompose,
    na_decompose,
    vsplit_condition,
)
from harmonic_crown.solvable import GroupPoint, s_multiply


def _cpt(g, rng):
    c = lambda k: rng.standard_normal(k) + 1j * rng.standard_normal(k)
    return ComplexGroupPoint(c(g.p), c(g.q), complex(*rng.standard_normal(2)))


def _coords(g, rng, n=None, ti=None):
    sh = (n,) if n else ()
    t_i = rng.uniform(-np.pi / 2 + 0.05, np.pi / 2 - 0.05, sh) if ti is None else ti
    return CrownCoords(rng.standard_normal(sh + (g.p,)), rng.standard_normal(sh + (g.q,)), rng.standard_normal(sh),
                       t_i, rng.standard_normal(sh + (g.p,)), rng.standard_normal(sh + (g.q,)))


def test_real_inputs_reproduce_s_multiply(group, rng):
    x = GroupPoint(rng.standard_normal(group.p), rng.standard_normal(group.q), rng.standard_normal())
    y = GroupPoint(rng.standard_normal(group.p), rng.standard_normal(group.q), rng.standard_normal())
    z = c_multiply(group, ComplexGroupPoint.from_real(x), ComplexGroupPoint.from_real(y))
    np.testing.assert_array_equal(z.as_array().real, s_multiply(group, x, y).as_array())
    assert np.all(z.as_array().imag == 0)


def test_associativity_inverse(group, rng):
    for _ in range(50):
        x, y, z = (_cpt(group, rng) for _ in range(3))
        l = c_multiply(group, c_multiply(group, x, y), z).as_array()
        r = c_multiply(group, x, c_multiply(group, y, z)).as_array()
        assert np.abs(l - r).max() < 1e-12 * max(1, np.abs(l).max())
        e = c_multiply(group, x, c_inverse(group, x)).as_array()
        assert np.abs(e).max() < 1e-12 * max(1, np.abs(x.as_array()).max() ** 2)


def test_conjugation_dilates(group, rng):
    zeta = complex(0.3, 1.1)
    W = _cpt(group, rng)
    n = ComplexGroupPoint.n_exp(W.Wv, W.Wz)
    a = ComplexGroupPoint.a_exp(group, zeta)
    c = c_multiply(group, c_multiply(group, a, n), c_inverse(group, a))
    np.testing.assert_allclose(c.Wv, np.exp(zeta / 2) * W.Wv, atol=1e-14)
    np.testing.assert_allclose(c.Wz, np.exp(zeta) * W.Wz, atol=1e-14)
    assert abs(c.zeta) < 1e-15


def test_4pi_i_acts_trivially(group, rng):
    W = _cpt(group, rng)
    n = ComplexGroupPoint.n_exp(W.Wv, W.Wz)
    a = ComplexGroupPoint.a_exp(group, 4j * np.pi)
    c = c_multiply(group, c_multiply(group, a, n), c_inverse(group, a))
    np.testing.assert_allclose(c.Wv, W.Wv, atol=1e-13)
    np.testing.assert_allclose(c.Wz, W.Wz, atol=1e-13)


def test_zeta_kept_on_universal_cover(heis):
    a = ComplexGroupPoint.a_exp(heis, 3j * np.pi)
    assert c_multiply(heis, a, a).zeta == 6j * np.pi


def test_na_decompose(heis, rng):
    x = GroupPoint(np.array([1.0, 2.0]), np.array([3.0]), 0.5)
    (W, zeta) = na_decompose(ComplexGroupPoint.from_real(x))
    np.testing.assert_array_equal(W[0], x.V)
    np.testing.assert_array_equal(W[1], x.Z)
    assert zeta == 0.5
    assert na_decompose(ComplexGroupPoint.a_exp(heis, 0.7j))[1] == 0.7j
    z = _cpt(heis, rng)
    (Wv, Wz), zeta = na_decompose(z)
    back = c_multiply(heis, ComplexGroupPoint.n_exp(Wv, Wz), ComplexGroupPoint.a_exp(heis, zeta))
    np.testing.assert_allclose(back.as_array(), z.as_array(), atol=1e-14)


def test_mixed_examples(heis):
    x = GroupPoint(np.array([0.2, -0.4]), np.array([0.7]), 0.3)
    c = mixed_decompose(heis, ComplexGroupPoint.from_real(x))
    np.testing.assert_allclose(c.Uv, x.V)
    np.testing.assert_allclose(c.Uz, x.Z)
    assert c.t_r == 0.3 and c.t_i == 0.0
    assert np.all(c.Yv == 0) and np.all(c.Yz == 0)
    c = mixed_decompose(heis, ComplexGroupPoint.a_exp(heis, 0.9j))
    assert c.t_i == 0.9 and np.all(c.Yv == 0) and np.all(c.Uz == 0)


def test_mixed_round_trip(group, rng):
    c = _coords(group, rng, n=500)
    d = mixed_decompose(group, mixed_compose(group, c))
    for f in ("Uv", "Uz", "t_r", "t_i", "Yv", "Yz"):
        np.testing.assert_allclose(getattr(d, f), getattr(c, f), atol=1e-10)
    z = mixed_compose(group, c)
    z2 = mixed_compose(group, mixed_decompose(group, z))
    np.testing.assert_allclose(z2.as_array(), z.as_array(), atol=1e-10)


def test_mixed_is_product_of_factors(heis, rng):
    c = _coords(heis, rng)
    n = ComplexGroupPoint.n_exp(c.Uv, c.Uz)
    a = ComplexGroupPoint.a_exp(heis, c.t_r + 1j * c.t_i)
    y = ComplexGroupPoint.n_exp(1j * c.Yv, 1j * c.Yz)
    ref = c_multiply(heis, c_multiply(heis, n, a), y)
    np.testing.assert_allclose(mixed_compose(heis, c).as_array(), ref.as_array(), atol=1e-14)


@pytest.mark.parametrize("ti", [np.pi, np.pi - 5e-4, np.pi + 5e-4, -np.pi, np.pi / 2])
def test_degenerate(heis, rng, ti):
    z = ComplexGroupPoint(np.ones(2) + 0j, np.ones(1) + 0j, 0.2 + 1j * ti)
    with pytest.raises(DegenerateDecomposition):
        mixed_decompose(heis, z)


def test_vsplit_condition_grows(heis):
    conds = [vsplit_condition(0.0, t) for t in (0.0, 2.0, 3.0, 3.1, 3.14)]
    assert all(a < b for a, b in zip(conds, conds[1:]))
    assert conds[-1] > 1e3


def test_group_mismatch(heis):
    from harmonic_crown.solvable import SolvGroup

    g3 = SolvGroup.build(3)
    with pytest.raises(ValueError):
        c_multiply(heis, ComplexGroupPoint.a_exp(g3, 0j), ComplexGroupPoint.a_exp(heis, 0j))
