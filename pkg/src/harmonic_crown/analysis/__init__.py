"""Geometric analysis on S: adjoint action, ellipticity, a^lambda, geodesic symmetry, Poisson kernels."""

from .adjoint import (
    MARGIN_POSITIVE,
    ad_a,
    ad_n,
    adjoint,
    ellipticity_margin,
    is_elliptic,
    mixed_point,
    numerical_range_distance,
    quadric_margin,
    symbol_form,
)
from .geodesic import (
    CONVERGENCE_RADIUS,
    PoissonKernel,
    ShootingError,
    exp_map,
    geodesic_distance,
    geodesic_symmetry,
    log_map,
    poisson_kernel,
)
from .eigen import SpectralParam, a_lambda, eigen_residual
from .probe import PROBE_HEADER, ProbeReport, ProbeSample, boundary_probe, write_probe_csv
