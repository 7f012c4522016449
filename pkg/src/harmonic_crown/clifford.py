"""Real representations of the Clifford algebra Cl_q (generators squaring to -1).

Generators for q <= 7 are left multiplications by imaginary units in the
Cayley-Dickson algebras C, H, O. q = 8 doubles the octonion module once,
and q > 8 uses the mod-8 periodicity Cl_{q+8} = Cl_8 (x) Cl_q through the
volume element of Cl_8. Every construction is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

_MIN_DIM = {1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16}


def min_module_dim(q: int) -> int:
    """Dimension d_q of the smallest real Cl_q-module."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if q <= 8:
        return _MIN_DIM[q]
    return 16 * min_module_dim(q - 8)


def cayley_dickson_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product in the Cayley-Dickson algebra of dimension ``len(x)`` (a power of 2).

    Convention: (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
    """
    n = x.shape[0]
    if n == 1:
        return x * y
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    return np.concatenate(
        [
            cayley_dickson_product(a, c) - cayley_dickson_product(_cd_conj(d), b),
            cayley_dickson_product(d, a) + cayley_dickson_product(b, _cd_conj(c)),
        ]
    )


def _cd_conj(x: np.ndarray) -> np.ndarray:
    out = -x
    out[0] = x[0]
    return out


def _left_mult_matrix(k: int, dim: int) -> np.ndarray:
    e = np.zeros(dim)
    e[k] = 1.0
    cols = []
    for j in range(dim):
        f = np.zeros(dim)
        f[j] = 1.0
        cols.append(cayley_dickson_product(e, f))
    return np.array(cols).T


@lru_cache(maxsize=None)
def _base_generators(q: int) -> tuple[np.ndarray, ...]:
    if q <= 7:
        dim = _MIN_DIM[q]
        return tuple(_left_mult_matrix(k, dim) for k in range(1, q + 1))
    if q == 8:
        g7 = _base_generators(7)
        sz = np.diag([1.0, -1.0])
        eps = np.array([[0.0, -1.0], [1.0, 0.0]])
        return tuple(np.kron(g, sz) for g in g7) + (np.kron(np.eye(8), eps),)
    g8 = _base_generators(8)
    vol = np.linalg.multi_dot(g8)  # symmetric, squares to +1, anticommutes with each g8
    inner = _base_generators(q - 8)
    m = inner[0].shape[0]
    return tuple(np.kron(g, np.eye(m)) for g in g8) + tuple(np.kron(vol, j) for j in inner)


@dataclass(frozen=True)
class CliffordRep:
    """q real p x p matrices J_1..J_q, skew, orthogonal and pairwise anticommuting."""

    q: int
    p: int
    generators: np.ndarray = field(repr=False)

    def __post_init__(self):
        gens = np.asarray(self.generators, dtype=np.float64)
        if gens.shape != (self.q, self.p, self.p):
            raise ValueError(f"generators must have shape ({self.q}, {self.p}, {self.p}), got {gens.shape}")
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.p % 2:
            raise ValueError("p must be even")
        gens.setflags(write=False)
        object.__setattr__(self, "generators", gens)
        if anticommutator_residual(gens) > 1e-10 or skew_residual(gens) > 1e-10:
            raise ValueError("generators violate the Clifford relations")

    @property
    def multiplicity(self) -> int:
        return self.p // min_module_dim(self.q)


def anticommutator_residual(gens: np.ndarray) -> float:
    """max |J_j J_k + J_k J_j + 2 delta_jk I| over all pairs."""
    q, p = gens.shape[0], gens.shape[1]
    prod = np.einsum("jab,kbc->jkac", gens, gens)
    anti = prod + prod.transpose(1, 0, 2, 3)
    target = -2.0 * np.einsum("jk,ac->jkac", np.eye(q), np.eye(p))
    return float(np.abs(anti - target).max())


def skew_residual(gens: np.ndarray) -> float:
    return float(np.abs(gens + gens.transpose(0, 2, 1)).max())


def build_clifford_rep(q: int, multiplicity: int = 1) -> CliffordRep:
    """Cl_q-module of dimension ``multiplicity * d_q`` (block-diagonal copies)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if multiplicity < 1:
        raise ValueError("multiplicity must be >= 1")
    base = _base_generators(q)
    gens = np.array([np.kron(np.eye(multiplicity), g) for g in base])
    return CliffordRep(q=q, p=gens.shape[1], generators=gens)


def j_map(rep: CliffordRep, Z, V) -> np.ndarray:
    """J_Z V = sum_k Z_k J_k V. Broadcasts over leading axes of ``Z`` and ``V``."""
    Z = np.asarray(Z)
    V = np.asarray(V)
    if Z.shape[-1] != rep.q or V.shape[-1] != rep.p:
        raise ValueError(f"expected Z in R^{rep.q} and V in R^{rep.p}, got {Z.shape} and {V.shape}")
    return np.einsum("...k,kij,...j->...i", Z, rep.generators, V)
