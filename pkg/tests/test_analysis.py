import numpy as np
import pytest

from harmonic_crown.analysis import (
    PoissonKernel,
    ShootingError,
    SpectralParam,
    a_lambda,
    adjoint,
    boundary_probe,
    eigen_residual,
    ellipticity_margin,
    exp_map,
    geodesic_distance,
    geodesic_symmetry,
    is_elliptic,
    log_map,
    mixed_point,
    numerical_range_distance,
    quadric_margin,
    symbol_form,
    write_probe_csv,
)
from harmonic_crown.complexify import ComplexGroupPoint, c_inverse, c_multiply
from harmonic_crown.solvable import GroupPoint


def _cpt(g, rng, scale=0.5):
    c = lambda k: scale * (rng.standard_normal(k) + 1j * rng.standard_normal(k))
    return ComplexGroupPoint(c(g.p), c(g.q), complex(*(scale * rng.standard_normal(2))))


def _e(g):
    return GroupPoint(np.zeros(g.p), np.zeros(g.q), 0.0)


def test_adjoint_of_A_is_diagonal(group):
    A = adjoint(group, ComplexGroupPoint.a_exp(group, 0.4 + 0.3j))
    w = np.exp(0.4 + 0.3j)
    np.testing.assert_allclose(A, np.diag([np.sqrt(w)] * group.p + [w] * group.q + [1.0]), atol=1e-14)


def test_adjoint_H_column(heis, rng):
    Yv, Yz = rng.standard_normal(2), rng.standard_normal(1)
    A = adjoint(heis, ComplexGroupPoint.n_exp(1j * Yv, 1j * Yz))
    np.testing.assert_allclose(A[:, -1], np.concatenate([-1j * 0.5 * Yv, -1j * Yz, [1.0]]), atol=1e-14)


def test_adjoint_is_a_homomorphism(group, rng):
    for _ in range(20):
        x, y = _cpt(group, rng), _cpt(group, rng)
        np.testing.assert_allclose(adjoint(group, c_multiply(group, x, y)),
                                   adjoint(group, x) @ adjoint(group, y), atol=1e-12)
        np.testing.assert_allclose(adjoint(group, c_inverse(group, x)) @ adjoint(group, x),
                                   np.eye(group.dim), atol=1e-12)


def test_symbol_conventions(heis, rng):
    z = _cpt(heis, rng)
    A = adjoint(heis, z)
    np.testing.assert_allclose(symbol_form(heis, z), A @ A.T)
    np.testing.assert_allclose(symbol_form(heis, z, "AtA"), A.T @ A)
    with pytest.raises(ValueError):
        symbol_form(heis, z, "AA")


def test_margin_examples(group):
    assert quadric_margin(np.eye(group.dim))[0] == pytest.approx(1.0, abs=1e-12)
    m = ellipticity_margin(group, ComplexGroupPoint.a_exp(group, 1.0j))
    assert is_elliptic(m)
    # exp(i pi/2 H) sits on the boundary of the crown
    assert ellipticity_margin(group, ComplexGroupPoint.a_exp(group, 0.5j * np.pi)) < 1e-6


def test_margin_matches_numerical_range(heis, rng):
    for _ in range(15):
        z = mixed_point(heis, rng.uniform(-0.7, 0.7, 2), rng.uniform(-0.4, 0.4, 1), rng.uniform(-1.5, 1.5))
        L = symbol_form(heis, z)
        assert abs(quadric_margin(L)[0] - numerical_range_distance(L)) < 1e-8


def test_a_lambda(heis):
    x = GroupPoint(np.ones(2), np.ones(1), 0.7)
    assert a_lambda(heis, x, 2.0) == pytest.approx(np.exp(1.4))
    assert a_lambda(heis, ComplexGroupPoint.a_exp(heis, 0.3j), SpectralParam(1.0)) == pytest.approx(np.exp(0.3j))
    with pytest.raises(ValueError):
        a_lambda(heis, ComplexGroupPoint.a_exp(heis, 2.0j), 1.0)
    lam = SpectralParam(1.5)
    assert lam.positive and not SpectralParam(-1.0).positive
    assert lam.eigenvalue(heis) == pytest.approx(1.5 ** 2 - 2 * heis.rho * 1.5)


def test_a_lambda_is_eigenfunction(group, rng):
    lam = SpectralParam(0.7 + 0.2j)
    x = GroupPoint(rng.standard_normal(group.p), rng.standard_normal(group.q), 0.3)
    res = eigen_residual(group, lambda y: a_lambda(group, y, lam), x, lam.eigenvalue(group))
    assert res < 1e-8


def test_exp_along_A_and_identity(group):
    xi = np.zeros(group.dim)
    xi[-1] = 0.8
    y = exp_map(group, xi)
    np.testing.assert_allclose(y.as_array(), np.concatenate([np.zeros(group.p + group.q), [0.8]]), atol=1e-12)
    np.testing.assert_allclose(geodesic_symmetry(group, _e(group)).as_array(), 0.0, atol=1e-14)


def test_log_inverts_exp(group, rng):
    for _ in range(5):
        xi = rng.standard_normal(group.dim)
        xi *= rng.uniform(0.2, 2.0) / np.linalg.norm(xi)
        np.testing.assert_allclose(log_map(group, exp_map(group, xi)), xi, atol=1e-9)


def test_symmetry_is_involutive_isometry(heis, rng):
    x = GroupPoint(rng.standard_normal(2), rng.standard_normal(1), rng.standard_normal())
    sx = geodesic_symmetry(heis, x)
    np.testing.assert_allclose(geodesic_symmetry(heis, sx).as_array(), x.as_array(), atol=1e-8)
    assert geodesic_distance(heis, x) == pytest.approx(geodesic_distance(heis, sx), abs=1e-9)


def test_shooting_error(heis):
    far = GroupPoint(np.array([50.0, 0.0]), np.zeros(1), -20.0)
    with pytest.raises(ShootingError):
        log_map(heis, far, max_iter=2, n_continuation=1)


def test_poisson_kernel(group):
    P = PoissonKernel(group, 1.3)
    assert P(_e(group)) == pytest.approx(1.0)
    x = GroupPoint(np.zeros(group.p), np.zeros(group.q), 0.9)
    assert P(x) == pytest.approx(np.exp(-1.3 * 0.9), rel=1e-10)


def test_probe(heis, tmp_path):
    rep = boundary_probe(heis, np.zeros(2), np.zeros(1), np.pi / 2, with_margin=False)
    assert rep.membership_flip == pytest.approx(1.0, abs=1e-9)
    assert rep.degenerate_at == pytest.approx(1.0)
    assert rep.failure == pytest.approx(1.0, abs=1e-9)
    t = float(np.arccos(1 / 3))
    rep = boundary_probe(heis, np.array([1.0, 0.0]), np.zeros(1), t, n_samples=11)
    assert rep.membership_flip == pytest.approx(1.0, abs=1e-9)
    assert rep.ball_exit == pytest.approx(1.0, abs=1e-9)
    assert rep.samples[0].margin > 0.1
    inner = boundary_probe(heis, np.array([0.2, 0.0]), np.zeros(1), 0.3, with_margin=False)
    assert inner.failure is None and inner.ball_exit is None
    write_probe_csv(rep, tmp_path / "p.csv")
    lines = (tmp_path / "p.csv").read_text().splitlines()
    assert lines[0] == "s,margin,member" and len(lines) == 12
    with pytest.raises(ValueError):
        boundary_probe(heis, np.zeros(3), np.zeros(1), 0.1)
