"""Probing the crown boundary along rays s -> exp(i s t H) exp(i s Y)."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from ..crown import crown_membership
from ..rank_one_models import su21_pair_in_ball, su21_point
from ..solvable import SolvGroup
from .adjoint import ellipticity_margin, mixed_point

PROBE_HEADER = ("s", "margin", "member")


@dataclass(frozen=True)
class ProbeSample:
    s: float
    margin: float
    member: bool
    a_lambda: complex
    reason: str


@dataclass
class ProbeReport:
    """Samples along the ray and the located transition parameters (None if absent)."""

    samples: list[ProbeSample] = field(default_factory=list)
    membership_flip: float | None = None
    degenerate_at: float | None = None
    ball_exit: float | None = None

    @property
    def failure(self) -> float | None:
        found = [s for s in (self.membership_flip, self.degenerate_at) if s is not None]
        return min(found) if found else None


def _bisect(pred, lo: float, hi: float, tol: float) -> float:
    """Transition point of ``pred`` (true at lo, false at hi)."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return float(0.5 * (lo + hi))


def _ball_member(Yv, Yz, t, s) -> bool:
    a = 0.5 * s * (Yv[0] + 1j * Yv[1])
    b = 0.5 * s * Yz[0]
    try:
        return bool(su21_pair_in_ball(su21_point(a, b, 0.5 * s * t)))
    except ValueError:
        return False


def boundary_probe(g: SolvGroup, Yv, Yz, t: float, c: complex = 1.0, s_max: float = 1.05,
                   n_samples: int = 43, tol: float = 1e-12, with_margin: bool = True) -> ProbeReport:
    """Follow z(s) = exp(i s t H) exp(i s Y), s in [0, s_max], and locate where it leaves Cr(S).

    Each sample records the ellipticity margin, crown membership and
    a^lambda(z(s)) = exp(i c s t). The first membership change is refined by
    bisection to ``tol``; ``degenerate_at`` is the first s with cos(s t) = 0,
    where the mixed decomposition becomes singular. For the p = 2, q = 1 group
    the exit of the SU(2, 1) pair from X x X is located as well.
    """
    Yv, Yz = np.asarray(Yv, dtype=float), np.asarray(Yz, dtype=float)
    if Yv.shape != (g.p,) or Yz.shape != (g.q,):
        raise ValueError("Y does not belong to this group")

    def member(s):
        return crown_membership(g, mixed_point(g, s * Yv, s * Yz, s * t), tol=tol).member

    report = ProbeReport()
    prev_s, prev_m = None, None
    for s in np.linspace(0.0, s_max, n_samples):
        z = mixed_point(g, s * Yv, s * Yz, s * t)
        mem = crown_membership(g, z, tol=tol)
        margin = ellipticity_margin(g, z) if with_margin else float("nan")
        report.samples.append(ProbeSample(float(s), margin, mem.member, complex(np.exp(1j * c * s * t)), mem.reason))
        if report.membership_flip is None and prev_m is not None and prev_m and not mem.member:
            report.membership_flip = _bisect(member, prev_s, float(s), tol)
        prev_s, prev_m = float(s), mem.member

    if t != 0.0:
        s_deg = 0.5 * np.pi / abs(t)
        if s_deg <= s_max:
            report.degenerate_at = float(s_deg)

    if (g.p, g.q) == (2, 1):
        ss = np.linspace(0.0, s_max, n_samples)
        inside = [_ball_member(Yv, Yz, t, s) for s in ss]
        for k in range(1, len(ss)):
            if inside[k - 1] and not inside[k]:
                report.ball_exit = _bisect(lambda s: _ball_member(Yv, Yz, t, s), ss[k - 1], ss[k], tol)
                break
    return report


def write_probe_csv(report: ProbeReport, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(PROBE_HEADER)
        for smp in report.samples:
            w.writerow([repr(smp.s), repr(smp.margin), int(smp.member)])
