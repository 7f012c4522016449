"""Crown domains of harmonic NA (Damek-Ricci) groups.

Modules: ``clifford`` (Clifford module generators), ``htype`` (H-type
algebras), ``solvable`` (S = N x| A and its Laplacian), ``complexify``
(S_C and the mixed decomposition), ``crown`` (the parameter domain and the
crown predicate), ``rank_one_models`` (SL(2) and SU(2, 1) matrix models)
and ``analysis`` (adjoint action, ellipticity, a^lambda, geodesic symmetry,
Poisson kernels).
"""

from .clifford import CliffordRep, build_clifford_rep, j_map, min_module_dim
from .complexify import (
    ComplexGroupPoint,
    CrownCoords,
    DegenerateDecomposition,
    c_inverse,
    c_multiply,
    mixed_compose,
    mixed_decompose,
    na_decompose,
)
from .crown import (
    Membership,
    Mesh,
    boundary_mesh,
    connected_components,
    crown_contains,
    crown_membership,
    in_D,
    in_lambda,
    in_omega,
    reduce,
    star_grid,
    t_max,
    write_mesh,
)
from .htype import HTypeAlgebra, NPoint, bracket, n_inverse, n_multiply
from .solvable import GroupPoint, SolvGroup, apply_laplacian, s_inverse, s_multiply

__version__ = "0.1.0"
