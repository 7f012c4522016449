"""H-type Lie algebras n = v + z and the group N in the exponential chart."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordRep, build_clifford_rep


@dataclass(frozen=True)
class HTypeAlgebra:
    """Two-step nilpotent algebra whose bracket is defined by <J_Z V, V'> = <Z, [V, V']>."""

    rep: CliffordRep

    @classmethod
    def build(cls, q: int, multiplicity: int = 1) -> "HTypeAlgebra":
        return cls(build_clifford_rep(q, multiplicity))

    @property
    def p(self) -> int:
        return self.rep.p

    @property
    def q(self) -> int:
        return self.rep.q

    @property
    def J(self) -> np.ndarray:
        return self.rep.generators

    @property
    def structure_constants(self) -> np.ndarray:
        """c[k, i, j] = <J_k e_i, e_j>, the Z_k-coefficient of [e_i, e_j]."""
        return self.J.transpose(0, 2, 1)


@dataclass(frozen=True)
class NPoint:
    V: np.ndarray
    Z: np.ndarray


def _check(alg: HTypeAlgebra, V, Z=None):
    if np.shape(V)[-1] != alg.p:
        raise ValueError(f"V must live in R^{alg.p}, got shape {np.shape(V)}")
    if Z is not None and np.shape(Z)[-1] != alg.q:
        raise ValueError(f"Z must live in R^{alg.q}, got shape {np.shape(Z)}")


def bracket(alg: HTypeAlgebra, V, W) -> np.ndarray:
    """[V, W] in z; component k is <J_k V, W>. Complex-bilinear for complex input."""
    V, W = np.asarray(V), np.asarray(W)
    _check(alg, V)
    _check(alg, W)
    return np.einsum("kij,...j,...i->...k", alg.J, V, W)


def n_multiply(alg: HTypeAlgebra, x: NPoint, y: NPoint) -> NPoint:
    _check(alg, x.V, x.Z)
    _check(alg, y.V, y.Z)
    return NPoint(x.V + y.V, x.Z + y.Z + 0.5 * bracket(alg, x.V, y.V))


def n_inverse(alg: HTypeAlgebra, x: NPoint) -> NPoint:
    _check(alg, x.V, x.Z)
    return NPoint(-np.asarray(x.V), -np.asarray(x.Z))


def jacobi_residual(alg: HTypeAlgebra, X, Y, W) -> float:
    """Jacobi identity residual on the full algebra n for three (V, Z) pairs."""

    def br(a, b):
        # brackets of n = v + z land in z; v-part of the result is zero
        return (np.zeros(alg.p), bracket(alg, a[0], b[0]))

    total = np.zeros(alg.q)
    for a, b, c in ((X, Y, W), (Y, W, X), (W, X, Y)):
        total = total + br(a, br(b, c))[1]
    return float(np.abs(total).max())
