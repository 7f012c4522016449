"""Adjoint representation on s_C and the ellipticity form L(z)."""

from __future__ import annotations

import numpy as np

from .. import _kernels
from ..complexify import ComplexGroupPoint, CrownCoords, mixed_compose
from ..solvable import SolvGroup

MARGIN_POSITIVE = 1e-8


def ad_n(g: SolvGroup, Wv, Wz) -> np.ndarray:
    """Matrix of ad(W) on s_C for W = W_v + W_z in n_C.

    ad(W) V' = [W_v, V'], ad(W) Z' = 0, ad(W) H = -(W_v / 2 + W_z).
    """
    p, q = g.p, g.q
    Wv, Wz = np.asarray(Wv, dtype=complex), np.asarray(Wz, dtype=complex)
    M = np.zeros((g.dim, g.dim), dtype=complex)
    # z-component k of [W_v, e_j] is <J_k W_v, e_j>
    M[p : p + q, :p] = np.einsum("kij,j->ki", g.alg.J, Wv)
    M[:p, -1] = -0.5 * Wv
    M[p : p + q, -1] = -Wz
    return M


def ad_a(g: SolvGroup, zeta: complex) -> np.ndarray:
    """Ad(exp(zeta H)) = diag(e^{zeta/2} on v, e^zeta on z, 1)."""
    return np.diag(np.r_[np.full(g.p, np.exp(0.5 * zeta)), np.full(g.q, np.exp(zeta)), 1.0 + 0j])


def adjoint(g: SolvGroup, z: ComplexGroupPoint) -> np.ndarray:
    """Ad(z) for z = exp(W) exp(zeta H); exp(ad W) = id + ad W since (ad W)^2 = 0."""
    return (np.eye(g.dim) + ad_n(g, z.Wv, z.Wz)) @ ad_a(g, complex(z.zeta))


def symbol_form(g: SolvGroup, z: ComplexGroupPoint, convention: str = "AAt") -> np.ndarray:
    """Complex symmetric matrix of the symbol quadric at z.

    ``"AAt"`` gives L(z) = Ad(z) Ad(z)^T (bilinear transpose), so that
    Q(xi) = sum_k (Ad(z)^T xi)_k^2 and L(sz) = Ad(s) L(z) Ad(s)^T for real s.
    ``"AtA"`` gives Ad(z)^T Ad(z), i.e. Q(xi) = sum_k (Ad(z) xi)_k^2.
    """
    A = adjoint(g, z)
    if convention == "AAt":
        return A @ A.T
    if convention == "AtA":
        return A.T @ A
    raise ValueError("convention must be 'AAt' or 'AtA'")


def mixed_point(g: SolvGroup, Yv, Yz, t) -> ComplexGroupPoint:
    """exp(i t H) exp(i Y), the representative of the crown over (Y, t)."""
    zero_v, zero_z = np.zeros(g.p), np.zeros(g.q)
    return mixed_compose(g, CrownCoords(zero_v, zero_z, 0.0, float(t), np.asarray(Yv, float), np.asarray(Yz, float)))


def _starts(R: np.ndarray, I: np.ndarray, restarts: int, rng) -> np.ndarray:
    starts = []
    for theta in np.linspace(0.0, np.pi, 8, endpoint=False):
        w, v = np.linalg.eigh(np.cos(theta) * R + np.sin(theta) * I)
        starts.append(v[:, 0])
        starts.append(v[:, -1])
    starts.extend(rng.standard_normal((restarts, R.shape[0])))
    return np.array(starts)


def quadric_margin(L: np.ndarray, restarts: int = 32, seed: int = 0, descent_iter: int = 150,
                   n_polish: int = 4) -> tuple[float, np.ndarray]:
    """min over real unit xi of |xi^T L xi|, with the minimizer.

    (Re Q)^2 + (Im Q)^2 is minimized on the sphere by projected gradient from
    eigenvector starts of cos(theta) Re L + sin(theta) Im L plus ``restarts``
    random starts; the ``n_polish`` best end points are then refined by
    Levenberg-Marquardt. Descent alone crawls when the joint numerical range
    is nearly a segment through 0 (z close to the boundary); the polish
    reaches a zero of (Re Q, Im Q) quadratically.
    """
    L = 0.5 * (L + L.T)
    R = np.ascontiguousarray(L.real)
    I = np.ascontiguousarray(L.imag)
    rng = np.random.default_rng(seed)
    X0 = np.ascontiguousarray(_starts(R, I, restarts, rng))
    F, X = _kernels.sphere_descent(R, I, X0, max_iter=descent_iter)
    fmin, xmin = np.inf, None
    for k in np.argsort(F)[:n_polish]:
        f, x = _kernels.lm_polish(R, I, X[k])
        if f < fmin:
            fmin, xmin = f, x
    return float(np.sqrt(max(fmin, 0.0))), xmin


def ellipticity_margin(g: SolvGroup, z: ComplexGroupPoint, restarts: int = 32, seed: int = 0,
                       convention: str = "AAt") -> float:
    """min over real unit xi of |Q(xi)|; positive iff the symbol at z is elliptic."""
    return quadric_margin(symbol_form(g, z, convention), restarts, seed)[0]


def is_elliptic(margin: float, threshold: float = MARGIN_POSITIVE) -> bool:
    return margin > threshold


def numerical_range_distance(L: np.ndarray, n_theta: int = 4096) -> float:
    """Distance from 0 to the joint numerical range {(xi.Re L.xi, xi.Im L.xi)}.

    For size >= 3 the range is convex, so the distance is
    max(0, max_theta lambda_min(cos theta Re L + sin theta Im L)), refined
    around the best theta by golden-section search.
    """
    L = 0.5 * (L + L.T)
    R, I = L.real, L.imag

    def h(theta):
        return np.linalg.eigvalsh(np.cos(theta) * R + np.sin(theta) * I)[0]

    thetas = np.linspace(-np.pi, np.pi, n_theta, endpoint=False)
    vals = np.array([h(th) for th in thetas])
    k = int(np.argmax(vals))
    lo, hi = thetas[k] - 2 * np.pi / n_theta, thetas[k] + 2 * np.pi / n_theta
    phi = 0.5 * (np.sqrt(5.0) - 1.0)
    for _ in range(80):
        a, b = hi - phi * (hi - lo), lo + phi * (hi - lo)
        if h(a) > h(b):
            hi = b
        else:
            lo = a
    return max(0.0, float(max(vals[k], h(0.5 * (lo + hi)))))
