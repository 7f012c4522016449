"""The complexification S_C = N_C x| A_C in a global chart.

A point is (W_v, W_z, zeta) for exp(W_v + W_z) exp(zeta H). zeta is kept in C
(the universal cover of A_C = C*), so a(z)^lambda = exp(lambda zeta) needs no
branch bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .htype import bracket
from .solvable import GroupPoint, SolvGroup


class DegenerateDecomposition(ValueError):
    """The real-linear split behind the mixed decomposition is singular."""


@dataclass(frozen=True)
class ComplexGroupPoint:
    Wv: np.ndarray
    Wz: np.ndarray
    zeta: complex | np.ndarray

    @classmethod
    def from_real(cls, x: GroupPoint) -> "ComplexGroupPoint":
        return cls(np.asarray(x.V, dtype=complex), np.asarray(x.Z, dtype=complex), np.asarray(x.t, dtype=complex))

    @classmethod
    def a_exp(cls, g: SolvGroup, zeta: complex) -> "ComplexGroupPoint":
        """exp(zeta H)."""
        return cls(np.zeros(g.p, complex), np.zeros(g.q, complex), complex(zeta))

    @classmethod
    def n_exp(cls, Wv, Wz) -> "ComplexGroupPoint":
        """exp(W_v + W_z)."""
        return cls(np.asarray(Wv, complex), np.asarray(Wz, complex), 0j)

    def as_array(self) -> np.ndarray:
        zeta = np.asarray(self.zeta)[..., None]
        return np.concatenate([self.Wv, self.Wz, zeta], axis=-1)


@dataclass(frozen=True)
class CrownCoords:
    """n a_{t_r} exp(i t_i H) exp(i (Y_v + Y_z)) with n = exp(U_v + U_z)."""

    Uv: np.ndarray
    Uz: np.ndarray
    t_r: float | np.ndarray
    t_i: float | np.ndarray
    Yv: np.ndarray
    Yz: np.ndarray


def _check(g: SolvGroup, z: ComplexGroupPoint):
    if np.shape(z.Wv)[-1] != g.p or np.shape(z.Wz)[-1] != g.q:
        raise ValueError(f"point does not belong to a group with p={g.p}, q={g.q}")


def c_multiply(g: SolvGroup, x: ComplexGroupPoint, y: ComplexGroupPoint) -> ComplexGroupPoint:
    _check(g, x)
    _check(g, y)
    zeta = np.asarray(x.zeta)[..., None]
    eh = np.exp(0.5 * zeta)
    Wv = x.Wv + eh * y.Wv
    Wz = x.Wz + np.exp(zeta) * y.Wz + 0.5 * eh * bracket(g.alg, x.Wv, y.Wv)
    return ComplexGroupPoint(Wv, Wz, np.asarray(x.zeta) + y.zeta)


def c_inverse(g: SolvGroup, x: ComplexGroupPoint) -> ComplexGroupPoint:
    _check(g, x)
    zeta = np.asarray(x.zeta)[..., None]
    return ComplexGroupPoint(-np.exp(-0.5 * zeta) * x.Wv, -np.exp(-zeta) * x.Wz, -np.asarray(x.zeta))


def na_decompose(z: ComplexGroupPoint) -> tuple[tuple[np.ndarray, np.ndarray], complex]:
    """z = n(z) a(z); returns ((W_v, W_z), log a(z)) with log a(z) = zeta H."""
    return (np.asarray(z.Wv), np.asarray(z.Wz)), z.zeta


def mixed_compose(g: SolvGroup, c: CrownCoords) -> ComplexGroupPoint:
    n = ComplexGroupPoint(np.asarray(c.Uv, complex), np.asarray(c.Uz, complex), np.zeros(np.shape(c.t_r), complex))
    a = ComplexGroupPoint(np.zeros_like(n.Wv), np.zeros_like(n.Wz), np.asarray(c.t_r) + 1j * np.asarray(c.t_i))
    y = ComplexGroupPoint(1j * np.asarray(c.Yv), 1j * np.asarray(c.Yz), np.zeros(np.shape(c.t_r), complex))
    return c_multiply(g, c_multiply(g, n, a), y)


def vsplit_matrix(t_r: float, t_i: float) -> np.ndarray:
    """Real 2x2 map (U, Y) -> (Re W, Im W) for one v-coordinate: W = U + i e^{zeta/2} Y."""
    e = np.exp(0.5 * t_r)
    return np.array([[1.0, -e * np.sin(0.5 * t_i)], [0.0, e * np.cos(0.5 * t_i)]])


def vsplit_condition(t_r: float, t_i: float) -> float:
    return float(np.linalg.cond(vsplit_matrix(t_r, t_i)))


def mixed_decompose(g: SolvGroup, z: ComplexGroupPoint, tol: float = 1e-3) -> CrownCoords:
    """Invert ``mixed_compose``.

    Solved coordinatewise: the v-part from W_v = U_v + i e^{zeta/2} Y_v, then the
    z-part with the Campbell-Hausdorff term 1/2 [U_v, i e^{zeta/2} Y_v]. Raises
    ``DegenerateDecomposition`` when |cos(t_i/2) cos(t_i)| < tol.
    """
    _check(g, z)
    zeta = np.asarray(z.zeta, dtype=complex)
    t_r, t_i = zeta.real, zeta.imag
    ch, c1 = np.cos(0.5 * t_i), np.cos(t_i)
    det = np.abs(ch * c1)
    if np.any(det < tol):
        raise DegenerateDecomposition(
            f"mixed decomposition is singular at Im zeta = {t_i} (|cos(t_i/2) cos(t_i)| = {np.min(det):.3g})"
        )
    tr_, ti_ = t_r[..., None], t_i[..., None]
    eh = np.exp(0.5 * tr_)
    e1 = np.exp(tr_)
    Wv, Wz = np.asarray(z.Wv), np.asarray(z.Wz)
    Yv = Wv.imag / (eh * np.cos(0.5 * ti_))
    Uv = Wv.real + eh * np.sin(0.5 * ti_) * Yv
    B = bracket(g.alg, Uv, Yv)
    Yz = (Wz.imag - 0.5 * eh * np.cos(0.5 * ti_) * B) / (e1 * np.cos(ti_))
    Uz = Wz.real + e1 * np.sin(ti_) * Yz + 0.5 * eh * np.sin(0.5 * ti_) * B
    return CrownCoords(Uv, Uz, t_r, t_i, Yv, Yz)
