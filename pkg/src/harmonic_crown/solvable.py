"""The harmonic extension S = N x| A, its product and the Laplace-Beltrami operator.

Points are triples (V, Z, t) standing for exp(V + Z) exp(tH). The orthonormal
basis of s is (V_1..V_p, Z_1..Z_q, H) with [H, V] = V/2 and [H, Z] = Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .htype import HTypeAlgebra, bracket


@dataclass(frozen=True)
class SolvGroup:
    alg: HTypeAlgebra

    @classmethod
    def build(cls, q: int, multiplicity: int = 1) -> "SolvGroup":
        return cls(HTypeAlgebra.build(q, multiplicity))

    @property
    def p(self) -> int:
        return self.alg.p

    @property
    def q(self) -> int:
        return self.alg.q

    @property
    def dim(self) -> int:
        return self.alg.p + self.alg.q + 1

    @property
    def rho(self) -> float:
        # half the trace of ad H on n
        return self.alg.p / 4 + self.alg.q / 2

    def ad_H(self) -> np.ndarray:
        """Matrix of ad H on s in the orthonormal basis."""
        return np.diag(np.r_[np.full(self.p, 0.5), np.ones(self.q), 0.0])

    def lie_bracket(self, X, Y) -> np.ndarray:
        """Bracket of s on coordinate vectors (V, Z, h) of length p + q + 1."""
        X, Y = np.asarray(X), np.asarray(Y)
        p, q = self.p, self.q
        out = np.zeros(np.broadcast_shapes(X.shape, Y.shape), dtype=np.result_type(X, Y))
        xv, xz, xh = X[..., :p], X[..., p : p + q], X[..., -1:]
        yv, yz, yh = Y[..., :p], Y[..., p : p + q], Y[..., -1:]
        out[..., :p] = 0.5 * (xh * yv - yh * xv)
        out[..., p : p + q] = bracket(self.alg, xv, yv) + xh * yz - yh * xz
        return out


@dataclass(frozen=True)
class GroupPoint:
    V: np.ndarray
    Z: np.ndarray
    t: float | np.ndarray

    @classmethod
    def identity(cls, g: SolvGroup) -> "GroupPoint":
        return cls(np.zeros(g.p), np.zeros(g.q), 0.0)

    def as_array(self) -> np.ndarray:
        return np.concatenate([np.asarray(self.V), np.asarray(self.Z), np.atleast_1d(self.t)], axis=-1)

    @classmethod
    def from_array(cls, g: SolvGroup, x) -> "GroupPoint":
        x = np.asarray(x)
        t = float(x[-1]) if x.ndim == 1 else x[..., -1]
        return cls(x[..., : g.p], x[..., g.p : g.p + g.q], t)


def _check(g: SolvGroup, x: GroupPoint):
    if np.shape(x.V)[-1] != g.p or np.shape(x.Z)[-1] != g.q:
        raise ValueError(f"point does not belong to a group with p={g.p}, q={g.q}")


def s_multiply(g: SolvGroup, x: GroupPoint, y: GroupPoint) -> GroupPoint:
    _check(g, x)
    _check(g, y)
    t = np.asarray(x.t)[..., None]
    eh = np.exp(0.5 * t)
    V = x.V + eh * y.V
    Z = x.Z + np.exp(t) * y.Z + 0.5 * eh * bracket(g.alg, x.V, y.V)
    return GroupPoint(V, Z, np.asarray(x.t) + y.t)


def s_inverse(g: SolvGroup, x: GroupPoint) -> GroupPoint:
    _check(g, x)
    t = np.asarray(x.t)[..., None]
    return GroupPoint(-np.exp(-0.5 * t) * x.V, -np.exp(-t) * x.Z, -np.asarray(x.t))


def basis_exp(g: SolvGroup, k: int, eps: float) -> GroupPoint:
    """exp(eps X_k) for the k-th orthonormal basis vector of s."""
    V, Z, t = np.zeros(g.p), np.zeros(g.q), 0.0
    if k < g.p:
        V[k] = eps
    elif k < g.p + g.q:
        Z[k - g.p] = eps
    else:
        t = eps
    return GroupPoint(V, Z, t)


def _laplacian_raw(g: SolvGroup, f: Callable[[GroupPoint], complex], x: GroupPoint, h: float, f0):
    second = 0.0
    first = 0.0
    for k in range(g.dim):
        fp = f(s_multiply(g, x, basis_exp(g, k, h)))
        fm = f(s_multiply(g, x, basis_exp(g, k, -h)))
        second = second + (fp - 2.0 * f0 + fm) / (h * h)
        if k == g.dim - 1:
            first = (fp - fm) / (2.0 * h)
    return second - 2.0 * g.rho * first


def apply_laplacian(g: SolvGroup, f: Callable[[GroupPoint], complex], x: GroupPoint, h: float = 1e-3,
                    richardson: bool = True):
    """(sum V_j^2 + sum Z_i^2 + H^2 - 2 rho H) f at ``x`` by central differences.

    Each left-invariant field X acts through the curve eps -> x exp(eps X).
    With ``richardson`` the step-h and step-h/2 estimates are combined to
    cancel the O(h^2) term.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    _check(g, x)
    f0 = f(x)
    if not np.all(np.isfinite(f0)):
        raise ValueError("f is not finite at x")
    coarse = _laplacian_raw(g, f, x, h, f0)
    if not np.all(np.isfinite(coarse)):
        raise ValueError("f is not finite near x")
    if not richardson:
        return coarse
    fine = _laplacian_raw(g, f, x, 0.5 * h, f0)
    return (4.0 * fine - coarse) / 3.0
