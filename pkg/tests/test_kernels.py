import os
import subprocess
import sys

import numpy as np
import pytest

from harmonic_crown import _kernels as K
from harmonic_crown.analysis import symbol_form, mixed_point
from harmonic_crown.solvable import SolvGroup

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")


@needs_numba
def test_geodesic_flow_paths_agree(group, rng):
    xi = rng.standard_normal(group.dim)
    y1, T1 = K.geodesic_flow_numba(group.alg.J, xi, 64)
    y2, T2 = K.geodesic_flow_numpy(group.alg.J, xi, 64)
    np.testing.assert_allclose(y1, y2, atol=1e-12)
    np.testing.assert_allclose(T1, T2, atol=1e-11)


def _quadric(rng):
    g = SolvGroup.build(1)
    L = symbol_form(g, mixed_point(g, rng.uniform(-0.5, 0.5, 2), rng.uniform(-0.3, 0.3, 1), 0.9))
    return np.ascontiguousarray(L.real), np.ascontiguousarray(L.imag)


@needs_numba
def test_sphere_descent_paths_agree(rng):
    R, I = _quadric(rng)
    X0 = rng.standard_normal((6, R.shape[0]))
    X0 /= np.linalg.norm(X0, axis=1, keepdims=True)
    F1, X1 = K.sphere_descent_numba(R, I, X0, 300, 1e-13)
    F2, X2 = K.sphere_descent_numpy(R, I, X0, 300, 1e-13)
    np.testing.assert_allclose(F1, F2, atol=1e-12)
    np.testing.assert_allclose(X1, X2, atol=1e-9)


@needs_numba
def test_lm_polish_paths_agree(rng):
    R, I = _quadric(rng)
    x0 = rng.standard_normal(R.shape[0])
    x0 /= np.linalg.norm(x0)
    f1, x1 = K.lm_polish_numba(R, I, x0, 50)
    f2, x2 = K.lm_polish_numpy(R, I, x0, 50)
    assert f1 == pytest.approx(f2, abs=1e-12)
    assert abs(np.linalg.norm(x1) - 1.0) < 1e-12


def test_env_flag_disables_numba():
    code = "import harmonic_crown._kernels as k; print(k.USE_NUMBA)"
    env = dict(os.environ, HARMONIC_CROWN_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
