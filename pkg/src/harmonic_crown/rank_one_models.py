"""Matrix models of the two basic rank-one crowns.

SL(2, R) acts on P^1 x P^1 through g -> (g(i), g(-i)); its crown is the
product of the upper and lower half planes. SU(2, 1) acts on the unit ball
in C^2 by (Az + u) / (v^t z + alpha); its crown is pairs (g(0), g^sigma(0))
in X x X, where sigma(g) = J (g^dagger)^{-1} J fixes the real form.

The second half of the module identifies the Heisenberg-based harmonic group
(p = 2, q = 1) with the NA part of SU(2, 1). The identification is a
homothety, so the ball's central symmetry w -> -w gives an exact geodesic
symmetry for that group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .solvable import GroupPoint, SolvGroup

# --------------------------------------------------------------------------
# SL(2)
# --------------------------------------------------------------------------

SL2_H = np.diag([1.0, -1.0])
SL2_E12 = np.array([[0.0, 1.0], [0.0, 0.0]])


@dataclass(frozen=True)
class Moebius2:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("Moebius2 needs a 2x2 matrix")
        if abs(np.linalg.det(m) - 1.0) > 1e-12:
            raise ValueError("determinant must be 1")
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: "Moebius2") -> "Moebius2":
        return Moebius2(self.matrix @ other.matrix)

    def act(self, z: complex) -> complex:
        (a, b), (c, d) = self.matrix
        if np.isinf(z):
            return complex(np.inf) if c == 0 else a / c
        den = c * z + d
        if den == 0:
            return complex(np.inf)
        return (a * z + b) / den


def sl2_n(x: complex) -> Moebius2:
    return Moebius2(np.array([[1.0, x], [0.0, 1.0]]))


def sl2_a(s: complex) -> Moebius2:
    """exp(s diag(1, -1))."""
    return Moebius2(np.diag([np.exp(s), np.exp(-s)]))


def sl2_element(x: float, s: float, t: float, y: float) -> Moebius2:
    """n_x a_s exp(i t H) exp(i y E12)."""
    return sl2_n(x) @ sl2_a(s) @ sl2_a(1j * t) @ sl2_n(1j * y)


def sl2_pair(x: float, s: float, t: float, y: float) -> tuple[complex, complex]:
    g = sl2_element(x, s, t, y)
    return g.act(1j), g.act(-1j)


def sl2_in_crown(pair) -> bool:
    z, w = pair
    if np.isinf(z) or np.isinf(w):
        return False
    return bool(z.imag > 0 and w.imag < 0)


def sl2_in_domain(x: float, s: float, t: float, y: float) -> bool:
    """(t, y) in Omega x Lambda for SL(2): |t| < pi/4, |y| < 1."""
    return abs(t) < np.pi / 4 and abs(y) < 1


def sl2_preimage(pair, x0=(0.0, 0.0, 0.0, 0.0)) -> np.ndarray:
    """Least-squares solve of sl2_pair(x, s, t, y) = pair."""
    target = np.array([pair[0].real, pair[0].imag, pair[1].real, pair[1].imag])

    def resid(p):
        z, w = sl2_pair(*p)
        return np.array([z.real, z.imag, w.real, w.imag]) - target

    sol = least_squares(resid, np.asarray(x0, float), xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return sol.x


def sl2_symbol(t: float, x: float) -> np.ndarray:
    """L(z) = Ad(z) Ad(z)^T on span(H, V), [H, V] = V, for z = exp(itH) exp(ixV).

    Ad(z) is computed by conjugating 2x2 matrices, H = diag(1/2, -1/2), V = E12.
    """
    H = np.diag([0.5, -0.5]).astype(complex)
    V = SL2_E12.astype(complex)
    z = np.diag([np.exp(0.5j * t), np.exp(-0.5j * t)]) @ np.array([[1.0, 1j * x], [0.0, 1.0]])
    zi = np.linalg.inv(z)
    cols = []
    for X in (H, V):
        M = z @ X @ zi
        cols.append([2.0 * M[0, 0], M[0, 1]])
    A = np.array(cols).T
    return A @ A.T


def sl2_symbol_roots(t: float, x: float) -> np.ndarray:
    """Roots r = xi_1 / xi_2 of the symbol quadric L11 r^2 + 2 L12 r + L22."""
    L = sl2_symbol(t, x)
    return np.roots([L[0, 0], 2.0 * L[0, 1], L[1, 1]])


# --------------------------------------------------------------------------
# SU(2, 1)
# --------------------------------------------------------------------------

SU21_FORM = np.diag([1.0, 1.0, -1.0])
SU21_Y = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])


def su21_a(t) -> np.ndarray:
    """a_t = exp(t Y); complex t allowed. Broadcasts over t."""
    t = np.asarray(t, dtype=complex)
    out = np.zeros(t.shape + (3, 3), dtype=complex)
    ch, sh = np.cosh(t), np.sinh(t)
    out[..., 0, 0] = ch
    out[..., 2, 2] = ch
    out[..., 0, 2] = sh
    out[..., 2, 0] = sh
    out[..., 1, 1] = 1.0
    return out


def z_ab(a, b) -> np.ndarray:
    """Z_{a,b} in the Lie algebra of N; a complex, b real. Broadcasts."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=float)
    shape = np.broadcast_shapes(a.shape, b.shape)
    a, b = np.broadcast_to(a, shape), np.broadcast_to(b, shape)
    out = np.zeros(shape + (3, 3), dtype=complex)
    ib = 1j * b
    ac = np.conj(a)
    out[..., 0, 0], out[..., 0, 1], out[..., 0, 2] = ib, a, -ib
    out[..., 1, 0], out[..., 1, 2] = -ac, ac
    out[..., 2, 0], out[..., 2, 1], out[..., 2, 2] = ib, a, -ib
    return out


def _exp_nilpotent(X: np.ndarray) -> np.ndarray:
    # X^3 = 0 on n_C
    return np.eye(3) + X + 0.5 * (X @ X)


def n_exp(a, b) -> np.ndarray:
    """exp(Z_{a,b}), an element of N."""
    return _exp_nilpotent(z_ab(a, b))


def n_ab(a, b) -> np.ndarray:
    """exp(i Z_{a,b})."""
    return _exp_nilpotent(1j * z_ab(a, b))


def m_element(theta: float) -> np.ndarray:
    """Element of M = Z_K(A); conjugation sends Z_{a,b} to Z_{e^{3 i theta} a, b}."""
    return np.diag([np.exp(1j * theta), np.exp(-2j * theta), np.exp(1j * theta)])


def real_form_conjugation(g: np.ndarray) -> np.ndarray:
    """sigma(g) = J (g^dagger)^{-1} J, the conjugation of SL(3, C) fixing SU(2, 1)."""
    gd = np.conj(np.swapaxes(g, -1, -2))
    return SU21_FORM @ np.linalg.inv(gd) @ SU21_FORM


def ball_action(g: np.ndarray, w=None) -> np.ndarray:
    """g(w) = (A w + u) / (v^t w + alpha); ``w`` defaults to the origin."""
    if w is None:
        col = g[..., :, 2]
    else:
        w = np.asarray(w, dtype=complex)
        col = np.einsum("...ij,...j->...i", g, np.concatenate([w, np.ones(w.shape[:-1] + (1,))], axis=-1))
    den = col[..., 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        return col[..., :2] / den[..., None]


def su21_element(a, b, phi) -> np.ndarray:
    """a_{i phi} n_{a,b}."""
    return su21_a(1j * np.asarray(phi)) @ n_ab(a, b)


def su21_point(a, b, phi) -> tuple[np.ndarray, np.ndarray]:
    """The pair (g(0), sigma(g)(0)) for g = a_{i phi} n_{a,b}; broadcasts.

    Raises ``ValueError`` where a denominator vanishes.
    """
    g = su21_element(a, b, phi)
    first = ball_action(g)
    second = ball_action(real_form_conjugation(g))
    if not (np.all(np.isfinite(first)) and np.all(np.isfinite(second))):
        raise ValueError("vanishing denominator: configuration on the boundary of the chart")
    return first, second


def su21_pair_in_ball(pair) -> np.ndarray | bool:
    first, second = pair
    return (np.linalg.norm(first, axis=-1) < 1.0) & (np.linalg.norm(second, axis=-1) < 1.0)


def inequality_in(a, b, phi) -> np.ndarray | bool:
    """(1 - 2b - 2a^2) cos 2phi > (1 - cos 2phi) a^2, read literally with signed b."""
    a2 = np.abs(a) ** 2
    c2 = np.cos(2.0 * np.asarray(phi))
    return (1.0 - 2.0 * np.asarray(b) - 2.0 * a2) * c2 > (1.0 - c2) * a2


def in_gap(a, b, phi) -> np.ndarray:
    """Signed gap of the pair condition, (1 - 2|a|^2 - 2|b|) cos 2phi - (1 - cos 2phi)|a|^2."""
    a2 = np.abs(a) ** 2
    c2 = np.cos(2.0 * np.asarray(phi))
    return (1.0 - 2.0 * np.abs(b) - 2.0 * a2) * c2 - (1.0 - c2) * a2


def su21_condition(a, b, phi) -> np.ndarray | bool:
    """Both points of ``su21_point`` lie in the ball.

    sigma flips the sign of b, so the literal inequality for (a, b, phi) is the
    partner's condition and the one for (a, -b, phi) is the first point's; the
    pair needs both, i.e. the inequality with |b|.
    """
    return in_gap(a, b, phi) > 0.0


def su21_lambda(a, b) -> np.ndarray | bool:
    return np.abs(a) ** 2 + np.abs(b) < 0.5


def su21_first_in_ball_phi0(a, b) -> np.ndarray | bool:
    """n_{a,b}(0) in X for real a: -2b + 2a^2 < 1."""
    return -2.0 * np.asarray(b) + 2.0 * np.asarray(a) ** 2 < 1.0


def bridge(a, b, phi) -> tuple:
    """(|V|, |Z|, t) = (2|a|, 2|b|, 2 phi) between the SU(2, 1) and harmonic-group scales."""
    return 2.0 * np.abs(a), 2.0 * np.abs(b), 2.0 * np.asarray(phi)


def bridge_inverse(absV, absZ, t) -> tuple:
    return 0.5 * np.asarray(absV), 0.5 * np.asarray(absZ), 0.5 * np.asarray(t)


def su21_preimage(pair, x0=None) -> np.ndarray:
    """Solve n_{(alpha, beta)} a_s a_{i phi} n_{a,b}(0) = pair for 8 real parameters.

    Parameters are (Re alpha, Im alpha, beta, s, phi, Re a, Im a, b) with the
    N-part exp(Z_{alpha, beta}) real and (a, b) complex/real.
    """
    first, second = pair
    target = np.concatenate([first.real, first.imag, second.real, second.imag])

    def pair_of(p):
        g = n_exp(p[0] + 1j * p[1], p[2]) @ su21_a(p[3]) @ su21_element(p[5] + 1j * p[6], p[7], p[4])
        return ball_action(g), ball_action(real_form_conjugation(g))

    def resid(p):
        u, v = pair_of(p)
        return np.concatenate([u.real, u.imag, v.real, v.imag]) - target

    start = np.zeros(8) if x0 is None else np.asarray(x0, float)
    sol = least_squares(resid, start, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return sol.x


# --------------------------------------------------------------------------
# ball model of the p = 2, q = 1 harmonic group
#
# V = (v1, v2) -> Z_{(v1 + i v2)/2, 0},  Z -> Z_{0, Z/2},  H -> Y/2.
# Brackets match ([V1, V2] = Z, [H, V] = V/2, [H, Z] = Z) and the induced
# metric is half of the harmonic one, so geodesic symmetries agree.
# --------------------------------------------------------------------------


def su21_basis() -> list[np.ndarray]:
    """Images of (V_1, V_2, Z_1, H) in su(2, 1)."""
    return [z_ab(0.5, 0.0), z_ab(0.5j, 0.0), z_ab(0.0, 0.5), 0.5 * SU21_Y.astype(complex)]


def _require_heisenberg(g: SolvGroup):
    if (g.p, g.q) != (2, 1) or not np.allclose(g.alg.J[0], [[0.0, -1.0], [1.0, 0.0]]):
        raise ValueError("the ball model is wired for the p=2, q=1 group built by build_clifford_rep(1, 1)")


def su21_group_element(g: SolvGroup, x: GroupPoint) -> np.ndarray:
    """exp(V + Z) exp(tH) as a 3x3 matrix."""
    _require_heisenberg(g)
    a = 0.5 * (x.V[0] + 1j * x.V[1])
    return n_exp(a, 0.5 * x.Z[0]) @ su21_a(0.5 * x.t)


def ball_from_group(g: SolvGroup, x: GroupPoint) -> np.ndarray:
    """Orbit map x -> x(0) in the ball, closed form."""
    _require_heisenberg(g)
    a = 0.5 * (x.V[0] + 1j * x.V[1])
    b = 0.5 * x.Z[0]
    E = np.exp(x.t)
    D = 0.5 * (E + 1.0) + 0.5 * abs(a) ** 2 - 1j * b
    return np.array([1.0 - 1.0 / D, np.conj(a) / D])


def group_from_ball(g: SolvGroup, w) -> GroupPoint:
    """Inverse of ``ball_from_group`` (horospherical coordinates at (1, 0))."""
    _require_heisenberg(g)
    w = np.asarray(w, dtype=complex)
    D = 1.0 / (1.0 - w[0])
    a = np.conj(w[1] * D)
    E = (1.0 - np.vdot(w, w).real) / abs(1.0 - w[0]) ** 2
    b = -(D - 0.5 * (E + 1.0)).imag
    return GroupPoint(np.array([2.0 * a.real, 2.0 * a.imag]), np.array([2.0 * b]), float(np.log(E)))


def ball_geodesic_symmetry(g: SolvGroup, x: GroupPoint) -> GroupPoint:
    """Geodesic symmetry at the identity transported from w -> -w on the ball."""
    return group_from_ball(g, -ball_from_group(g, x))
