"""The sets Omega, Lambda, the parameter domain (V, Z, t) and the crown Cr(S) = N A D.

Membership only depends on |V|, |Z| and t. The ``*_norms`` variants take the
norms and broadcast; the plain variants take vectors (norm over the last
axis), or 0-d scalars which are read as norms.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .clifford import CliffordRep
from .complexify import ComplexGroupPoint, CrownCoords, DegenerateDecomposition, mixed_compose, mixed_decompose
from .htype import HTypeAlgebra
from .solvable import GroupPoint, SolvGroup


def _norm(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return np.abs(x)
    return np.linalg.norm(x, axis=-1)


def in_omega(t) -> np.ndarray | bool:
    return np.abs(t) < np.pi / 2


def in_lambda_norms(absV, absZ) -> np.ndarray | bool:
    return 0.5 * np.asarray(absV) ** 2 + np.asarray(absZ) < 1.0


def d_gap_norms(absV, absZ, t) -> np.ndarray:
    """cos t (1 - |V|^2/2 - |Z|) - (1 - cos t)|V|^2/4; zero on the boundary surface."""
    v2, z, ct = np.asarray(absV) ** 2, np.asarray(absZ), np.cos(t)
    return ct * (1.0 - 0.5 * v2 - z) - 0.25 * (1.0 - ct) * v2


def in_D_norms(absV, absZ, t) -> np.ndarray | bool:
    """Membership in the component of {defining inequality} containing 0.

    Taken as {|t| < pi/2} intersected with the inequality; ``connected_components``
    checks on a grid that this set is connected.
    """
    return in_omega(t) & (d_gap_norms(absV, absZ, t) > 0.0)


def t_max_norms(absV, absZ) -> np.ndarray | float:
    """Positive boundary value of t over (|V|, |Z|) in the closure of Lambda with |Z| < 1.

    t_max vanishes on the boundary of Lambda.
    """
    v, z = np.asarray(absV, dtype=float), np.asarray(absZ, dtype=float)
    if np.any(z >= 1.0) or np.any(0.5 * v**2 + z > 1.0 + 1e-12):
        raise ValueError("t_max needs (V, Z) in the closure of Lambda with |Z| < 1")
    return 2.0 * np.arctan(np.sqrt(np.clip(1.0 - v**2 / (2.0 * (1.0 - z)), 0.0, None)))


def in_lambda(V, Z) -> np.ndarray | bool:
    return in_lambda_norms(_norm(V), _norm(Z))


def in_D(V, Z, t) -> np.ndarray | bool:
    return in_D_norms(_norm(V), _norm(Z), t)


def t_max(V, Z) -> np.ndarray | float:
    return t_max_norms(_norm(V), _norm(Z))


@dataclass(frozen=True)
class Membership:
    member: bool
    reason: str
    coords: CrownCoords | None = None

    def __bool__(self):
        return self.member


MEMBERSHIP_DEGENERACY_TOL = 1e-12


def crown_membership(g: SolvGroup, z: ComplexGroupPoint, tol: float = MEMBERSHIP_DEGENERACY_TOL) -> Membership:
    """Decide z in Cr(S) via the mixed decomposition, with a diagnostic reason.

    ``tol`` is the degeneracy threshold passed to ``mixed_decompose``. It is
    much tighter than that function's default: near |t_i| = pi/2 the split is
    ill-conditioned but still accurate, and those points do lie in the crown.
    """
    try:
        c = mixed_decompose(g, z, tol=tol)
    except DegenerateDecomposition as exc:
        return Membership(False, f"degenerate: {exc}")
    if not in_omega(c.t_i):
        return Membership(False, "imaginary A-parameter outside Omega", c)
    if not in_lambda(c.Yv, c.Yz):
        return Membership(False, "imaginary N-parameter outside Lambda", c)
    if not in_D(c.Yv, c.Yz, c.t_i):
        return Membership(False, "(Y, t_i) outside D", c)
    return Membership(True, "ok", c)


def crown_contains(g: SolvGroup, z: ComplexGroupPoint, tol: float = MEMBERSHIP_DEGENERACY_TOL) -> bool:
    return crown_membership(g, z, tol).member


# --------------------------------------------------------------------------
# boundary surface
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Mesh:
    """Vertices in (|V|, |Z|, t) and triangle faces (0-based)."""

    vertices: np.ndarray
    faces: np.ndarray
    resolution: int
    sheets: int


def boundary_mesh(resolution: int, sheets: str = "both") -> Mesh:
    """Parametric mesh of the surface t = +-t_max(|V|, |Z|).

    Parameters (u, z) in [0, 1]^2 give |Z| = z, |V| = u sqrt(2(1 - z)) and
    t = 2 arctan sqrt(1 - u^2), so every vertex lies on the surface exactly.
    ``sheets`` is "upper" (t >= 0) or "both" (upper then mirrored lower grid).
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if sheets not in ("upper", "both"):
        raise ValueError("sheets must be 'upper' or 'both'")
    u = np.linspace(0.0, 1.0, resolution)
    z = np.linspace(0.0, 1.0, resolution)
    Uu, Zz = np.meshgrid(u, z, indexing="ij")
    absV = Uu * np.sqrt(2.0 * (1.0 - Zz))
    t = 2.0 * np.arctan(np.sqrt(np.clip(1.0 - Uu**2, 0.0, None)))
    upper = np.column_stack([absV.ravel(), Zz.ravel(), t.ravel()])

    idx = np.arange(resolution * resolution).reshape(resolution, resolution)
    a, b = idx[:-1, :-1].ravel(), idx[1:, :-1].ravel()
    c, d = idx[1:, 1:].ravel(), idx[:-1, 1:].ravel()
    faces = np.concatenate([np.column_stack([a, b, c]), np.column_stack([a, c, d])])
    if sheets == "upper":
        return Mesh(upper, faces, resolution, 1)
    lower = upper * np.array([1.0, 1.0, -1.0])
    off = upper.shape[0]
    lower_faces = faces[:, ::-1] + off
    return Mesh(np.vstack([upper, lower]), np.vstack([faces, lower_faces]), resolution, 2)


def write_mesh_csv(mesh: Mesh, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["absV", "absZ", "t"])
        for row in mesh.vertices:
            w.writerow([repr(float(v)) for v in row])


def write_mesh_obj(mesh: Mesh, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# boundary surface, resolution {mesh.resolution}, sheets {mesh.sheets}\n")
        for v in mesh.vertices:
            fh.write("v {!r} {!r} {!r}\n".format(*(float(x) for x in v)))
        for f in mesh.faces:
            fh.write("f {} {} {}\n".format(*(int(i) + 1 for i in f)))


def write_mesh(mesh: Mesh, path) -> None:
    suffix = Path(path).suffix.lower()
    if suffix == ".obj":
        write_mesh_obj(mesh, path)
    elif suffix == ".csv":
        write_mesh_csv(mesh, path)
    else:
        raise ValueError(f"unknown mesh format {suffix!r}; use .csv or .obj")


# --------------------------------------------------------------------------
# reduction to the Heisenberg case
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    """Quotient by the orthogonal complement of R Z1 in z."""

    source: SolvGroup
    target: SolvGroup
    Z1: np.ndarray

    def project(self, x: GroupPoint) -> GroupPoint:
        return GroupPoint(np.asarray(x.V), (np.asarray(x.Z) @ self.Z1)[..., None], x.t)

    def project_complex(self, z: ComplexGroupPoint) -> ComplexGroupPoint:
        return ComplexGroupPoint(np.asarray(z.Wv), (np.asarray(z.Wz) @ self.Z1)[..., None], z.zeta)

    def lift(self, x: GroupPoint) -> GroupPoint:
        """Preimage with vanishing components orthogonal to Z1."""
        return GroupPoint(np.asarray(x.V), np.asarray(x.Z)[..., :1] * self.Z1, x.t)

    def lift_complex(self, z: ComplexGroupPoint) -> ComplexGroupPoint:
        """Zero padding in the chart; a preimage, but in general not a crown point."""
        return ComplexGroupPoint(np.asarray(z.Wv), np.asarray(z.Wz)[..., :1] * self.Z1, z.zeta)

    def lift_crown(self, z: ComplexGroupPoint) -> ComplexGroupPoint:
        """Preimage obtained by zero padding the mixed coordinates (U_z, Y_z).

        The bracket [U_v, Y_v] of the source group has components off Z1, so
        chart padding can leave the crown; padding n, a, exp(iY) separately
        keeps |Y_z|, and the projection maps the result back to z.
        """
        c = mixed_decompose(self.target, z, tol=MEMBERSHIP_DEGENERACY_TOL)
        pad = lambda w: np.asarray(w)[..., :1] * self.Z1
        return mixed_compose(self.source, CrownCoords(c.Uv, pad(c.Uz), c.t_r, c.t_i, c.Yv, pad(c.Yz)))


def reduce(g: SolvGroup, Z1) -> Reduction:
    Z1 = np.asarray(Z1, dtype=float)
    if Z1.shape != (g.q,):
        raise ValueError(f"Z1 must be a vector in R^{g.q}")
    if abs(np.linalg.norm(Z1) - 1.0) > 1e-12:
        raise ValueError("Z1 must be a unit vector")
    J1 = np.tensordot(Z1, g.alg.J, axes=1)
    target = SolvGroup(HTypeAlgebra(CliffordRep(q=1, p=g.p, generators=J1[None])))
    return Reduction(g, target, Z1)


# --------------------------------------------------------------------------
# connectivity of the parameter domain
# --------------------------------------------------------------------------


def connected_components(resolution: int = 64, predicate: Callable = in_D_norms):
    """Label the grid cells of [0, sqrt 2] x [0, 1] x [-pi/2, pi/2] where ``predicate`` holds.

    Returns ``(labels, count, origin_label)``; 6-connectivity.
    """
    from scipy import ndimage

    v = np.linspace(0.0, np.sqrt(2.0), resolution)
    z = np.linspace(0.0, 1.0, resolution)
    t = np.linspace(-np.pi / 2, np.pi / 2, resolution)
    Vv, Zz, Tt = np.meshgrid(v, z, t, indexing="ij")
    mask = predicate(Vv, Zz, Tt)
    labels, count = ndimage.label(mask)
    origin = labels[0, 0, int(np.argmin(np.abs(t)))]
    return labels, int(count), int(origin)


def star_grid(n_u: int, n_z: int, n_t: int, scale: float = 1.0) -> np.ndarray:
    """Grid over scale * D in (|V|, |Z|, t), shape (n_u * n_z * n_t, 3).

    Boundary points B(u, z) = (u sqrt(2(1 - z)), z, t_max) for u in [0, 1],
    z in [0, 1) are combined with r in [-1, 1] as scale * (B_v, B_z, r B_t).
    With scale = 1 the rows with |r| = 1 lie on the boundary surface. Any
    zero count gives an empty grid.
    """
    if min(n_u, n_z, n_t) < 0:
        raise ValueError("grid counts must be >= 0")
    if not scale > 0:
        raise ValueError("scale must be positive")
    if min(n_u, n_z, n_t) == 0:
        return np.zeros((0, 3))
    u = np.linspace(0.0, 1.0, n_u) if n_u > 1 else np.zeros(1)
    z = np.linspace(0.0, 1.0, n_z, endpoint=False)
    r = np.linspace(-1.0, 1.0, n_t) if n_t > 1 else np.zeros(1)
    U, Zz, R = np.meshgrid(u, z, r, indexing="ij")
    absV = U * np.sqrt(2.0 * (1.0 - Zz))
    t = R * t_max_norms(absV, Zz)
    return scale * np.column_stack([absV.ravel(), Zz.ravel(), t.ravel()])
