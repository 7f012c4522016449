"""Invariant suites behind ``harmonic-crown verify``.

Every check returns the worst residual over its samples and compares it with
a tolerance from the run configuration. Checks marked ``gating=False`` are
reported but do not affect the exit code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import crown
from .analysis import (
    PoissonKernel,
    SpectralParam,
    a_lambda,
    adjoint,
    eigen_residual,
    ellipticity_margin,
    geodesic_symmetry,
    mixed_point,
)
from .clifford import anticommutator_residual, skew_residual
from .complexify import ComplexGroupPoint, CrownCoords, c_inverse, c_multiply, mixed_compose, mixed_decompose
from .config import RunConfig
from .htype import NPoint, n_multiply
from .rank_one_models import in_gap, su21_condition, su21_lambda, su21_pair_in_ball, su21_point
from .solvable import GroupPoint, SolvGroup, s_inverse, s_multiply


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    gating: bool = True

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tag = "" if self.gating else " (info)"
        return f"{status} {self.name}{tag}: worst={self.worst!r} tol={self.tol!r}"


def _cmp(name, worst, tol, above=False, gating=True) -> CheckResult:
    """``above`` checks worst > tol (a lower bound) instead of worst < tol."""
    ok = bool(worst > tol) if above else bool(worst < tol)
    return CheckResult(name, ok, float(worst), float(tol), gating)


def _random_point(g, rng, scale=1.0) -> GroupPoint:
    return GroupPoint(scale * rng.standard_normal(g.p), scale * rng.standard_normal(g.q), scale * rng.standard_normal())


def _random_cpoint(g, rng) -> ComplexGroupPoint:
    c = lambda k: rng.standard_normal(k) + 1j * rng.standard_normal(k)
    return ComplexGroupPoint(c(g.p), c(g.q), complex(*rng.standard_normal(2)))


def _dist(x, y) -> float:
    return float(np.abs(x.as_array() - y.as_array()).max())


def check_clifford(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    J = g.alg.J
    worst = 0.0
    for _ in range(200):
        Z = rng.standard_normal(g.q)
        JZ = np.tensordot(Z, J, axes=1)
        worst = max(worst, float(np.abs(JZ @ JZ + (Z @ Z) * np.eye(g.p)).max()))
    tol = cfg.tol("identity")
    return [
        _cmp("J_Z^2 = -|Z|^2 id", worst, tol),
        _cmp("J_k anticommute", anticommutator_residual(J), tol),
        _cmp("J_k skew", skew_residual(J), tol),
    ]


def check_group_laws(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    tol = cfg.tol("group")
    wn = ws = wc = winv = 0.0
    for _ in range(200):
        a, b, c = (NPoint(rng.standard_normal(g.p), rng.standard_normal(g.q)) for _ in range(3))
        l, r = n_multiply(g.alg, n_multiply(g.alg, a, b), c), n_multiply(g.alg, a, n_multiply(g.alg, b, c))
        wn = max(wn, float(np.abs(l.V - r.V).max()), float(np.abs(l.Z - r.Z).max()))
        x, y, z = (_random_point(g, rng, 0.5) for _ in range(3))
        ws = max(ws, _dist(s_multiply(g, s_multiply(g, x, y), z), s_multiply(g, x, s_multiply(g, y, z))))
        winv = max(winv, _dist(s_multiply(g, x, s_inverse(g, x)), GroupPoint.identity(g)))
        u, v, w = (_random_cpoint(g, rng) for _ in range(3))
        l, r = c_multiply(g, c_multiply(g, u, v), w), c_multiply(g, u, c_multiply(g, v, w))
        wc = max(wc, float(np.abs(l.as_array() - r.as_array()).max() / max(1.0, np.abs(l.as_array()).max())))
    return [
        _cmp("N associativity", wn, tol),
        _cmp("S associativity", ws, tol),
        _cmp("S inverse", winv, tol),
        _cmp("S_C associativity (relative)", wc, tol),
    ]


def check_crown(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    n = 2000
    absV, absZ = rng.uniform(0, np.sqrt(2), n), rng.uniform(0, 1, n)
    keep = crown.in_lambda_norms(absV, absZ)
    absV, absZ = absV[keep], absZ[keep]
    t = rng.uniform(-np.pi / 2, np.pi / 2, absV.size)
    tm = crown.t_max_norms(absV, absZ)
    gap = np.abs(np.abs(t) - tm) > 1e-9
    disagree = np.sum((crown.in_D_norms(absV, absZ, t) != (np.abs(t) < tm))[gap])
    mesh = crown.boundary_mesh(32)
    V, Z, T = mesh.vertices.T
    mesh_res = float(np.abs(crown.d_gap_norms(V, Z, T)).max())
    _, count, origin = crown.connected_components(32)
    return [
        _cmp("t_max(0,0) = pi/2", abs(crown.t_max_norms(0.0, 0.0) - np.pi / 2), 1e-14),
        _cmp("in_D <=> |t| < t_max (disagreements)", float(disagree), 0.5),
        _cmp("boundary mesh residual", mesh_res, cfg.tol("mesh")),
        _cmp("parameter domain components - 1", float(count - 1 + (origin == 0)), 0.5),
    ]


def check_decomposition(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    worst = 0.0
    for _ in range(300):
        c = CrownCoords(rng.standard_normal(g.p), rng.standard_normal(g.q), rng.standard_normal(),
                        rng.uniform(-np.pi / 2 + 0.05, np.pi / 2 - 0.05), rng.standard_normal(g.p),
                        rng.standard_normal(g.q))
        d = mixed_decompose(g, mixed_compose(g, c))
        for f in ("Uv", "Uz", "t_r", "t_i", "Yv", "Yz"):
            worst = max(worst, float(np.abs(np.asarray(getattr(d, f)) - np.asarray(getattr(c, f))).max()))
    return [_cmp("mixed decomposition round trip", worst, cfg.tol("roundtrip"))]


def check_adjoint(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    wm = wi = 0.0
    for _ in range(100):
        x, y = _random_cpoint(g, rng), _random_cpoint(g, rng)
        A = adjoint(g, c_multiply(g, x, y))
        B = adjoint(g, x) @ adjoint(g, y)
        wm = max(wm, float(np.abs(A - B).max() / max(1.0, np.abs(A).max())))
        Ai = adjoint(g, c_inverse(g, x))
        wi = max(wi, float(np.abs(Ai @ adjoint(g, x) - np.eye(g.dim)).max()))
    tol = cfg.tol("adjoint")
    return [_cmp("Ad multiplicativity (relative)", wm, tol), _cmp("Ad(z^-1) Ad(z) = id", wi, tol)]


def check_ellipticity(g: SolvGroup, cfg: RunConfig, rng, n: int = 6) -> list[CheckResult]:
    """Margin on 0.9 D restricted to V = 0 (gating), on all of 0.9 D (info), and on the boundary."""
    tol = cfg.tol("margin")
    ev, ez = np.eye(g.p)[0], np.eye(g.q)[0]
    slice_min, full_min = np.inf, np.inf
    for v, z, t in crown.star_grid(n, n, n, 0.9):
        m = ellipticity_margin(g, mixed_point(g, v * ev, z * ez, t))
        full_min = min(full_min, m)
        if v == 0.0:
            slice_min = min(slice_min, m)
    bmax = 0.0
    for _ in range(20):
        u, z = rng.uniform(0, 1, 2)
        v = u * np.sqrt(2.0 * (1.0 - z))
        t = crown.t_max_norms(v, z) * rng.choice([-1.0, 1.0])
        bmax = max(bmax, ellipticity_margin(g, mixed_point(g, v * ev, z * ez, t)))
    return [
        _cmp("ellipticity margin on 0.9 D, V = 0 slice", slice_min, tol, above=True),
        _cmp("ellipticity margin on 0.9 D", full_min, tol, above=True, gating=False),
        _cmp("ellipticity margin on the boundary", bmax, 1e-4),
    ]


def check_eigen(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    out = []
    for c in (1.0, 2.0 * g.rho, 0.5 + 0.7j):
        lam = SpectralParam(c)
        mu = lam.eigenvalue(g)
        wa = max(eigen_residual(g, lambda x: a_lambda(g, x, lam), _random_point(g, rng, 0.7), mu) for _ in range(10))
        P = PoissonKernel(g, c)
        wp = max(eigen_residual(g, P, _random_point(g, rng, 0.4), mu) for _ in range(3))
        out.append(_cmp(f"Delta a^lambda, c={c}", wa, cfg.tol("eigen")))
        out.append(_cmp(f"Delta P_lambda, c={c}", wp, cfg.tol("poisson")))
    return out


def check_symmetry(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    winv = 0.0
    for _ in range(5):
        x = _random_point(g, rng, 0.5)
        winv = max(winv, _dist(geodesic_symmetry(g, geodesic_symmetry(g, x)), x))
    wline = _dist(geodesic_symmetry(g, GroupPoint(np.zeros(g.p), np.zeros(g.q), 0.8)),
                  GroupPoint(np.zeros(g.p), np.zeros(g.q), -0.8))
    return [_cmp("sigma o sigma = id", winv, cfg.tol("symmetry")), _cmp("sigma(0,0,t) = (0,0,-t)", wline, 1e-10)]


def check_su21(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    n = 20000
    a = rng.uniform(-0.71, 0.71, n) + 1j * rng.uniform(-0.71, 0.71, n)
    b, phi = rng.uniform(-0.5, 0.5, n), rng.uniform(-np.pi / 4, np.pi / 4, n)
    keep = su21_lambda(a, b)
    a, b, phi = a[keep], b[keep], phi[keep]
    keep = np.abs(in_gap(a, b, phi)) > 1e-9
    a, b, phi = a[keep], b[keep], phi[keep]
    inside = su21_pair_in_ball(su21_point(a, b, phi))
    bad = int(np.sum(inside != su21_condition(a, b, phi)))
    dbad = int(np.sum(crown.in_D_norms(2 * np.abs(a), 2 * np.abs(b), 2 * phi) != su21_condition(a, b, phi)))
    return [_cmp("SU(2,1) pair in ball <=> condition (disagreements)", float(bad), 0.5),
            _cmp("bridge to D (disagreements)", float(dbad), 0.5)]


def check_reduction(g: SolvGroup, cfg: RunConfig, rng) -> list[CheckResult]:
    Z1 = rng.standard_normal(g.q)
    Z1 /= np.linalg.norm(Z1)
    red = crown.reduce(g, Z1)
    hom = 0.0
    for _ in range(200):
        x, y = _random_point(g, rng), _random_point(g, rng)
        hom = max(hom, _dist(red.project(s_multiply(g, x, y)), s_multiply(red.target, red.project(x), red.project(y))))
    return [_cmp("reduction is a homomorphism", hom, cfg.tol("group"))]


SUITES: dict[str, Callable] = {
    "clifford": check_clifford,
    "group laws": check_group_laws,
    "crown": check_crown,
    "decomposition": check_decomposition,
    "adjoint": check_adjoint,
    "ellipticity": check_ellipticity,
    "eigenfunctions": check_eigen,
    "geodesic symmetry": check_symmetry,
    "su(2,1) model": check_su21,
    "reduction": check_reduction,
}


def run_all(cfg: RunConfig, strict: bool = False) -> tuple[list[tuple[str, CheckResult]], bool]:
    """Run every suite for the configured group. With ``strict`` info checks gate too."""
    g = SolvGroup.build(cfg.q, cfg.multiplicity)
    rng = np.random.default_rng(cfg.seed)
    results = []
    for name, suite in SUITES.items():
        for r in suite(g, cfg, rng):
            results.append((name, r))
    ok = all(r.passed for _, r in results if r.gating or strict)
    return results, ok
