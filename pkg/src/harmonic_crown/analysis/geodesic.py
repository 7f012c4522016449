"""Riemannian exponential and logarithm at the identity, geodesic symmetry.

Geodesics of the left-invariant metric are integrated in body-velocity form
(Euler-Arnold equation xi' = ad_xi^T xi) with fixed-step RK4; see
``_kernels.geodesic_flow``. The step count is fixed per call, so exp is a
smooth map and its Jacobian (propagated alongside) is exact for the discrete
flow. The logarithm is solved by Newton shooting with continuation.

Convergence region: shooting is tested up to geodesic distance 4 from the
identity; it is used well inside that in the finite-difference checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from ..solvable import GroupPoint, SolvGroup, s_inverse, s_multiply

DEFAULT_STEPS = 256
SHOOTING_TOL = 1e-10
CONVERGENCE_RADIUS = 4.0


class ShootingError(RuntimeError):
    """Newton shooting for the logarithm did not converge."""


def exp_map(g: SolvGroup, xi, n_steps: int = DEFAULT_STEPS) -> GroupPoint:
    """Endpoint at time 1 of the geodesic from e with initial velocity xi in s."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (g.dim,):
        raise ValueError(f"xi must have shape ({g.dim},)")
    y, _ = _kernels.geodesic_flow(g.alg.J, xi, n_steps)
    return GroupPoint.from_array(g, y[: g.dim])


def _shoot(g, xi, n_steps):
    y, T = _kernels.geodesic_flow(g.alg.J, xi, n_steps)
    return y[: g.dim], T[: g.dim]


def _newton(g, target, xi, n_steps, tol, max_iter):
    pos, D = _shoot(g, xi, n_steps)
    r = pos - target
    rn = np.linalg.norm(r)
    for _ in range(max_iter):
        if rn <= tol:
            # one extra step takes the residual to rounding level
            step = np.linalg.solve(D, -r)
            pos2, D2 = _shoot(g, xi + step, n_steps)
            r2 = pos2 - target
            if np.linalg.norm(r2) <= rn:
                xi, rn = xi + step, np.linalg.norm(r2)
            return xi, rn
        try:
            step = np.linalg.solve(D, -r)
        except np.linalg.LinAlgError:
            return xi, np.inf
        lam = 1.0
        while lam > 1e-4:
            pos2, D2 = _shoot(g, xi + lam * step, n_steps)
            r2 = pos2 - target
            rn2 = np.linalg.norm(r2)
            if np.isfinite(rn2) and rn2 < (1.0 - 0.25 * lam) * rn:
                break
            lam *= 0.5
        else:
            return xi, rn
        xi, pos, D, r, rn = xi + lam * step, pos2, D2, r2, rn2
    return xi, rn


def log_map(g: SolvGroup, x: GroupPoint, n_steps: int = DEFAULT_STEPS, tol: float = SHOOTING_TOL,
            max_iter: int = 40, xi0=None, n_continuation: int = 8) -> np.ndarray:
    """Initial velocity xi with exp_map(xi) = x, by Newton shooting.

    Starts from ``xi0`` when given (warm start), otherwise from the chart
    coordinates of x. If plain Newton stalls, the target is approached along
    the coordinate ray s -> s x with ``n_continuation`` stages. Raises
    ``ShootingError`` when the residual stays above ``tol``.
    """
    target = np.asarray(x.as_array(), dtype=float)
    if target.shape != (g.dim,):
        raise ValueError("point does not belong to this group")
    if not np.all(np.isfinite(target)):
        raise ValueError("point is not finite")
    guess = target.copy() if xi0 is None else np.asarray(xi0, dtype=float)
    xi, rn = _newton(g, target, guess, n_steps, tol, max_iter)
    if rn <= tol:
        return xi
    xi = np.zeros(g.dim)
    for s in np.linspace(0.0, 1.0, n_continuation + 1)[1:]:
        xi, rn = _newton(g, s * target, xi, n_steps, tol, max_iter)
        if not rn <= tol:
            break
    if rn <= tol:
        return xi
    raise ShootingError(f"shooting did not converge (residual {rn:.3g}) at {target}")


def geodesic_symmetry(g: SolvGroup, x: GroupPoint, n_steps: int = DEFAULT_STEPS, xi0=None) -> GroupPoint:
    """sigma(x) = exp(-log x), the geodesic symmetry at the identity."""
    return exp_map(g, -log_map(g, x, n_steps, xi0=xi0), n_steps)


def geodesic_distance(g: SolvGroup, x: GroupPoint, y: GroupPoint | None = None,
                      n_steps: int = DEFAULT_STEPS) -> float:
    """d(x, y) = |log(x^{-1} y)|; d(e, x) when ``y`` is omitted."""
    w = x if y is None else s_multiply(g, s_inverse(g, x), y)
    return float(np.linalg.norm(log_map(g, w, n_steps)))


@dataclass
class PoissonKernel:
    """x -> a^lambda(sigma(x)) = exp(c t(sigma(x))), warm-started between calls.

    Consecutive evaluations at nearby points (finite-difference stencils)
    reuse the previous logarithm as the Newton start.
    """

    g: SolvGroup
    c: complex
    n_steps: int = DEFAULT_STEPS
    _last: np.ndarray | None = field(default=None, repr=False)

    def symmetric_point(self, x: GroupPoint) -> GroupPoint:
        xi = log_map(self.g, x, self.n_steps, xi0=self._last)
        self._last = xi
        return exp_map(self.g, -xi, self.n_steps)

    def __call__(self, x: GroupPoint) -> complex:
        return complex(np.exp(self.c * self.symmetric_point(x).t))


def poisson_kernel(g: SolvGroup, x: GroupPoint, c: complex, n_steps: int = DEFAULT_STEPS) -> complex:
    """P_lambda(x) = a^lambda(sigma(x)) for lambda = c beta."""
    return PoissonKernel(g, c, n_steps)(x)
