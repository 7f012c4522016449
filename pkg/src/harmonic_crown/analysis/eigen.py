"""Holomorphic characters a^lambda and eigenfunction checks for the Laplacian."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..complexify import ComplexGroupPoint
from ..crown import crown_membership
from ..solvable import GroupPoint, SolvGroup, apply_laplacian


@dataclass(frozen=True)
class SpectralParam:
    """lambda = c beta with beta(H) = 1."""

    c: complex

    @property
    def positive(self) -> bool:
        return bool(np.real(self.c) > 0)

    def eigenvalue(self, g: SolvGroup) -> complex:
        """c^2 - 2 rho c, the eigenvalue of the Laplacian on a^lambda and P_lambda."""
        return complex(self.c * self.c - 2.0 * g.rho * self.c)


def _is_real(z: ComplexGroupPoint) -> bool:
    return not (np.any(np.imag(z.Wv)) or np.any(np.imag(z.Wz)) or np.imag(z.zeta))


def a_lambda(g: SolvGroup, z, lam: SpectralParam | complex) -> complex:
    """a^lambda(z) = exp(c zeta) for z = exp(W) exp(zeta H).

    Accepts a real ``GroupPoint`` or a ``ComplexGroupPoint`` that is real or
    lies in the crown; raises ``ValueError`` otherwise.
    """
    c = lam.c if isinstance(lam, SpectralParam) else complex(lam)
    if isinstance(z, GroupPoint):
        return complex(np.exp(c * z.t))
    if not _is_real(z):
        m = crown_membership(g, z)
        if not m:
            raise ValueError(f"a^lambda is only defined on the crown here: {m.reason}")
    return complex(np.exp(c * complex(z.zeta)))


def eigen_residual(g: SolvGroup, f: Callable[[GroupPoint], complex], x: GroupPoint, eigenvalue: complex,
                   h: float = 1e-3) -> float:
    """|Delta f - mu f| / (|f| max(1, |mu|)) at x, Delta by Richardson-extrapolated differences.

    The max(1, |mu|) keeps the measure meaningful for mu = 0.
    """
    Lf = apply_laplacian(g, f, x, h=h)
    fx = f(x)
    return float(abs(Lf - eigenvalue * fx) / (abs(fx) * max(1.0, abs(eigenvalue))))
