"""Hot numerical kernels with a numba path and a pure-numpy fallback.

Two loops dominate runtime: RK4 integration of the left-invariant geodesic
flow (with tangent propagation, for Newton shooting) and projected-gradient
minimization of ``(x.R.x)**2 + (x.I.x)**2`` on the unit sphere.

Set ``HARMONIC_CROWN_DISABLE_NUMBA=1`` to force the numpy versions. Both
versions are always importable under their explicit names so they can be
benchmarked and cross-checked against each other.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def decorator(func):
            return func

        return decorator


def _env_disabled() -> bool:
    return os.environ.get("HARMONIC_CROWN_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not _env_disabled()


# --------------------------------------------------------------------------
# geodesic flow
#
# state y = (V[p], Z[q], t, a[p], b[q], c); (a, b, c) is the body velocity.
#   V' = e^{t/2} a
#   Z' = e^t b + 1/2 e^{t/2} [V, a]
#   t' = c
#   a' = J_b a + c/2 a
#   b' = c b
#   c' = -|a|^2/2 - |b|^2
# --------------------------------------------------------------------------


@njit(cache=True)
def _rhs_nb(J, y, out):
    q, p = J.shape[0], J.shape[1]
    n = p + q + 1
    t = y[p + q]
    c = y[n + p + q]
    eh = np.exp(0.5 * t)
    e1 = np.exp(t)
    for i in range(p):
        out[i] = eh * y[n + i]
    for k in range(q):
        s = 0.0
        for i in range(p):
            jv = 0.0
            for j in range(p):
                jv += J[k, i, j] * y[j]
            s += jv * y[n + i]
        out[p + k] = e1 * y[n + p + k] + 0.5 * eh * s
    out[p + q] = c
    for i in range(p):
        s = 0.0
        for k in range(q):
            bk = y[n + p + k]
            for j in range(p):
                s += bk * J[k, i, j] * y[n + j]
        out[n + i] = s + 0.5 * c * y[n + i]
    aa = 0.0
    for i in range(p):
        aa += y[n + i] * y[n + i]
    bb = 0.0
    for k in range(q):
        out[n + p + k] = c * y[n + p + k]
        bb += y[n + p + k] * y[n + p + k]
    out[n + p + q] = -0.5 * aa - bb


@njit(cache=True)
def _jvp_nb(J, y, T, out):
    q, p = J.shape[0], J.shape[1]
    n = p + q + 1
    m = T.shape[1]
    t = y[p + q]
    c = y[n + p + q]
    eh = np.exp(0.5 * t)
    e1 = np.exp(t)
    JV = np.zeros((q, p))
    Ja = np.zeros((q, p))
    JTa = np.zeros((q, p))
    for k in range(q):
        for i in range(p):
            sv = 0.0
            sa = 0.0
            st = 0.0
            for j in range(p):
                sv += J[k, i, j] * y[j]
                sa += J[k, i, j] * y[n + j]
                st += J[k, j, i] * y[n + j]
            JV[k, i] = sv
            Ja[k, i] = sa
            JTa[k, i] = st
    br = np.zeros(q)
    for k in range(q):
        s = 0.0
        for i in range(p):
            s += JV[k, i] * y[n + i]
        br[k] = s
    for col in range(m):
        dt = T[p + q, col]
        dc = T[n + p + q, col]
        for i in range(p):
            out[i, col] = eh * (0.5 * dt * y[n + i] + T[n + i, col])
        for k in range(q):
            s1 = 0.0
            s2 = 0.0
            for i in range(p):
                s1 += JTa[k, i] * T[i, col]
                s2 += JV[k, i] * T[n + i, col]
            out[p + k, col] = e1 * (dt * y[n + p + k] + T[n + p + k, col]) + 0.5 * eh * (
                0.5 * dt * br[k] + s1 + s2
            )
        out[p + q, col] = dc
        for i in range(p):
            s = 0.0
            for k in range(q):
                s += T[n + p + k, col] * Ja[k, i]
                bk = y[n + p + k]
                for j in range(p):
                    s += bk * J[k, i, j] * T[n + j, col]
            out[n + i, col] = s + 0.5 * dc * y[n + i] + 0.5 * c * T[n + i, col]
        sa = 0.0
        for i in range(p):
            sa += y[n + i] * T[n + i, col]
        sb = 0.0
        for k in range(q):
            out[n + p + k, col] = dc * y[n + p + k] + c * T[n + p + k, col]
            sb += y[n + p + k] * T[n + p + k, col]
        out[n + p + q, col] = -sa - 2.0 * sb


@njit(cache=True)
def geodesic_flow_numba(J, xi, n_steps):
    q, p = J.shape[0], J.shape[1]
    n = p + q + 1
    y = np.zeros(2 * n)
    for i in range(n):
        y[n + i] = xi[i]
    T = np.zeros((2 * n, n))
    for i in range(n):
        T[n + i, i] = 1.0
    h = 1.0 / n_steps
    k1 = np.empty(2 * n)
    k2 = np.empty(2 * n)
    k3 = np.empty(2 * n)
    k4 = np.empty(2 * n)
    K1 = np.empty((2 * n, n))
    K2 = np.empty((2 * n, n))
    K3 = np.empty((2 * n, n))
    K4 = np.empty((2 * n, n))
    ys = np.empty(2 * n)
    Ts = np.empty((2 * n, n))
    for _ in range(n_steps):
        _rhs_nb(J, y, k1)
        _jvp_nb(J, y, T, K1)
        for i in range(2 * n):
            ys[i] = y[i] + 0.5 * h * k1[i]
            for j in range(n):
                Ts[i, j] = T[i, j] + 0.5 * h * K1[i, j]
        _rhs_nb(J, ys, k2)
        _jvp_nb(J, ys, Ts, K2)
        for i in range(2 * n):
            ys[i] = y[i] + 0.5 * h * k2[i]
            for j in range(n):
                Ts[i, j] = T[i, j] + 0.5 * h * K2[i, j]
        _rhs_nb(J, ys, k3)
        _jvp_nb(J, ys, Ts, K3)
        for i in range(2 * n):
            ys[i] = y[i] + h * k3[i]
            for j in range(n):
                Ts[i, j] = T[i, j] + h * K3[i, j]
        _rhs_nb(J, ys, k4)
        _jvp_nb(J, ys, Ts, K4)
        for i in range(2 * n):
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            for j in range(n):
                T[i, j] += h / 6.0 * (K1[i, j] + 2.0 * K2[i, j] + 2.0 * K3[i, j] + K4[i, j])
    return y, T


def _rhs_np(J, y):
    q, p = J.shape[0], J.shape[1]
    n = p + q + 1
    V, t = y[:p], y[p + q]
    a, b, c = y[n : n + p], y[n + p : n + p + q], y[2 * n - 1]
    eh, e1 = np.exp(0.5 * t), np.exp(t)
    out = np.empty_like(y)
    out[:p] = eh * a
    out[p : p + q] = e1 * b + 0.5 * eh * ((J @ V) @ a)
    out[p + q] = c
    out[n : n + p] = np.tensordot(b, J, axes=1) @ a + 0.5 * c * a
    out[n + p : n + p + q] = c * b
    out[2 * n - 1] = -0.5 * (a @ a) - b @ b
    return out


def _jvp_np(J, y, T):
    q, p = J.shape[0], J.shape[1]
    n = p + q + 1
    V, t = y[:p], y[p + q]
    a, b, c = y[n : n + p], y[n + p : n + p + q], y[2 * n - 1]
    dV, dt = T[:p], T[p + q]
    da, db, dc = T[n : n + p], T[n + p : n + p + q], T[2 * n - 1]
    eh, e1 = np.exp(0.5 * t), np.exp(t)
    JV = J @ V
    Ja = J @ a
    JTa = np.einsum("kji,j->ki", J, a)
    out = np.empty_like(T)
    out[:p] = eh * (0.5 * np.outer(a, dt) + da)
    out[p : p + q] = e1 * (np.outer(b, dt) + db) + 0.5 * eh * (
        0.5 * np.outer(JV @ a, dt) + JTa @ dV + JV @ da
    )
    out[p + q] = dc
    out[n : n + p] = Ja.T @ db + np.tensordot(b, J, axes=1) @ da + 0.5 * np.outer(a, dc) + 0.5 * c * da
    out[n + p : n + p + q] = np.outer(b, dc) + c * db
    out[2 * n - 1] = -(a @ da) - 2.0 * (b @ db)
    return out


def geodesic_flow_numpy(J, xi, n_steps):
    q, p = J.shape[0], J.shape[1]
    n = p + q + 1
    y = np.zeros(2 * n)
    y[n:] = xi
    T = np.zeros((2 * n, n))
    T[n:] = np.eye(n)
    h = 1.0 / n_steps
    for _ in range(n_steps):
        k1, K1 = _rhs_np(J, y), _jvp_np(J, y, T)
        y2, T2 = y + 0.5 * h * k1, T + 0.5 * h * K1
        k2, K2 = _rhs_np(J, y2), _jvp_np(J, y2, T2)
        y3, T3 = y + 0.5 * h * k2, T + 0.5 * h * K2
        k3, K3 = _rhs_np(J, y3), _jvp_np(J, y3, T3)
        y4, T4 = y + h * k3, T + h * K3
        k4, K4 = _rhs_np(J, y4), _jvp_np(J, y4, T4)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        T = T + h / 6.0 * (K1 + 2.0 * K2 + 2.0 * K3 + K4)
    return y, T


def geodesic_flow(J, xi, n_steps):
    """Integrate the geodesic from the identity with initial body velocity ``xi``.

    Returns ``(y, T)``: the final state (position then body velocity, shape
    ``(2n,)``) and the derivative of the final state with respect to ``xi``
    (shape ``(2n, n)``). ``T`` is the exact derivative of the discrete RK4 map.
    """
    J = np.ascontiguousarray(J, dtype=np.float64)
    xi = np.ascontiguousarray(xi, dtype=np.float64)
    if USE_NUMBA:
        return geodesic_flow_numba(J, xi, int(n_steps))
    return geodesic_flow_numpy(J, xi, int(n_steps))


# --------------------------------------------------------------------------
# sphere minimization of |x.M.x|^2 for complex symmetric M = R + iI
# --------------------------------------------------------------------------


@njit(cache=True)
def _pair_value(R, I, x, Rx, Ix):
    n = x.shape[0]
    r = 0.0
    s = 0.0
    for i in range(n):
        a = 0.0
        b = 0.0
        for j in range(n):
            a += R[i, j] * x[j]
            b += I[i, j] * x[j]
        Rx[i] = a
        Ix[i] = b
        r += x[i] * a
        s += x[i] * b
    return r, s


@njit(cache=True)
def sphere_descent_numba(R, I, X0, max_iter, gtol):
    m, n = X0.shape
    Rx = np.empty(n)
    Ix = np.empty(n)
    g = np.empty(n)
    xn = np.empty(n)
    F = np.empty(m)
    X = np.empty((m, n))
    for s in range(m):
        x = X0[s].copy()
        nrm = 0.0
        for i in range(n):
            nrm += x[i] * x[i]
        nrm = np.sqrt(nrm)
        for i in range(n):
            x[i] /= nrm
        r, im = _pair_value(R, I, x, Rx, Ix)
        f = r * r + im * im
        eta = 0.1
        for _ in range(max_iter):
            gx = 0.0
            for i in range(n):
                g[i] = 4.0 * (r * Rx[i] + im * Ix[i])
                gx += g[i] * x[i]
            gn = 0.0
            for i in range(n):
                g[i] -= gx * x[i]
                gn += g[i] * g[i]
            if gn <= gtol * gtol:
                break
            accepted = False
            eta = min(eta * 2.0, 1e6)
            for _ls in range(60):
                nrm = 0.0
                for i in range(n):
                    xn[i] = x[i] - eta * g[i]
                    nrm += xn[i] * xn[i]
                nrm = np.sqrt(nrm)
                for i in range(n):
                    xn[i] /= nrm
                r2, im2 = _pair_value(R, I, xn, Rx, Ix)
                f2 = r2 * r2 + im2 * im2
                if f2 <= f - 1e-4 * eta * gn:
                    accepted = True
                    break
                eta *= 0.5
            if not accepted:
                _pair_value(R, I, x, Rx, Ix)
                break
            for i in range(n):
                x[i] = xn[i]
            r, im, f = r2, im2, f2
        F[s] = f
        for i in range(n):
            X[s, i] = x[i]
    return F, X


def sphere_descent_numpy(R, I, X0, max_iter, gtol):
    X = X0 / np.linalg.norm(X0, axis=1, keepdims=True)
    m = X.shape[0]

    def values(X):
        RX, IX = X @ R, X @ I
        r, s = np.einsum("ij,ij->i", X, RX), np.einsum("ij,ij->i", X, IX)
        return r, s, RX, IX

    r, s, RX, IX = values(X)
    f = r * r + s * s
    eta = np.full(m, 0.1)
    active = np.ones(m, dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        G = 4.0 * (r[:, None] * RX + s[:, None] * IX)
        G -= np.einsum("ij,ij->i", G, X)[:, None] * X
        gn = np.einsum("ij,ij->i", G, G)
        active &= gn > gtol * gtol
        eta = np.where(active, np.minimum(eta * 2.0, 1e6), eta)
        pending = active.copy()
        Xn, fn = X.copy(), f.copy()
        for _ls in range(60):
            if not pending.any():
                break
            Xt = X - eta[:, None] * G
            Xt /= np.linalg.norm(Xt, axis=1, keepdims=True)
            rt, st, _, _ = values(Xt)
            ft = rt * rt + st * st
            ok = pending & (ft <= f - 1e-4 * eta * gn)
            Xn[ok], fn[ok] = Xt[ok], ft[ok]
            pending &= ~ok
            eta = np.where(pending, 0.5 * eta, eta)
        active &= ~pending
        X, f = Xn, fn
        r, s, RX, IX = values(X)
    return f, X


def sphere_descent(R, I, X0, max_iter=4000, gtol=1e-13):
    """Projected-gradient descent of ``(x.R.x)**2 + (x.I.x)**2`` on the unit sphere.

    Runs from every row of ``X0`` and returns ``(F, X)``: final values and
    final points, one row per start.
    """
    R = np.ascontiguousarray(R, dtype=np.float64)
    I = np.ascontiguousarray(I, dtype=np.float64)
    X0 = np.ascontiguousarray(X0, dtype=np.float64)
    if USE_NUMBA:
        return sphere_descent_numba(R, I, X0, int(max_iter), float(gtol))
    return sphere_descent_numpy(R, I, X0, int(max_iter), float(gtol))


def sphere_min(R, I, X0, max_iter=4000, gtol=1e-13):
    """Best ``(fmin, xmin)`` over the starts of ``sphere_descent``."""
    F, X = sphere_descent(R, I, X0, max_iter, gtol)
    k = int(np.argmin(F))
    return float(F[k]), X[k].copy()


# Levenberg-Marquardt refinement of one point: solves (x.R.x, x.I.x) = 0 in the
# tangent space of the sphere, or settles at a local minimum of the residual.


@njit(cache=True)
def _lm_step(R, I, x, mu, xn):
    n = x.shape[0]
    Rx = np.empty(n)
    Ix = np.empty(n)
    r0, r1 = _pair_value(R, I, x, Rx, Ix)
    # tangent rows 2 Rx - 2 r0 x and 2 Ix - 2 r1 x
    a = np.empty(n)
    b = np.empty(n)
    for i in range(n):
        a[i] = 2.0 * (Rx[i] - r0 * x[i])
        b[i] = 2.0 * (Ix[i] - r1 * x[i])
    aa = 0.0
    ab = 0.0
    bb = 0.0
    for i in range(n):
        aa += a[i] * a[i]
        ab += a[i] * b[i]
        bb += b[i] * b[i]
    aa += mu
    bb += mu
    det = aa * bb - ab * ab
    w0 = (bb * r0 - ab * r1) / det
    w1 = (aa * r1 - ab * r0) / det
    nrm = 0.0
    for i in range(n):
        xn[i] = x[i] - (a[i] * w0 + b[i] * w1)
        nrm += xn[i] * xn[i]
    nrm = np.sqrt(nrm)
    for i in range(n):
        xn[i] /= nrm
    s0, s1 = _pair_value(R, I, xn, Rx, Ix)
    return s0 * s0 + s1 * s1


@njit(cache=True)
def lm_polish_numba(R, I, x0, max_iter):
    n = x0.shape[0]
    x = x0 / np.sqrt(np.sum(x0 * x0))
    Rx = np.empty(n)
    Ix = np.empty(n)
    r0, r1 = _pair_value(R, I, x, Rx, Ix)
    f = r0 * r0 + r1 * r1
    xn = np.empty(n)
    mu = 1e-3
    for _ in range(max_iter):
        improved = False
        fn = f
        for _ls in range(30):
            fn = _lm_step(R, I, x, mu, xn)
            if fn < f:
                improved = True
                break
            mu *= 10.0
        if not improved:
            break
        gain = f - fn
        for i in range(n):
            x[i] = xn[i]
        f = fn
        if gain <= 1e-16 * (f + gain):
            break
        mu = max(mu / 10.0, 1e-12)
    return f, x


def lm_polish_numpy(R, I, x0, max_iter):
    x = x0 / np.linalg.norm(x0)

    def value(x):
        return (x @ R @ x) ** 2 + (x @ I @ x) ** 2

    f = value(x)
    mu = 1e-3
    for _ in range(max_iter):
        Rx, Ix = R @ x, I @ x
        r = np.array([x @ Rx, x @ Ix])
        Jr = 2.0 * (np.array([Rx, Ix]) - np.outer(r, x))
        JJ = Jr @ Jr.T
        improved = False
        for _ls in range(30):
            xn = x - Jr.T @ np.linalg.solve(JJ + mu * np.eye(2), r)
            xn /= np.linalg.norm(xn)
            fn = value(xn)
            if fn < f:
                improved = True
                break
            mu *= 10.0
        if not improved:
            break
        gain = f - fn
        x, f = xn, fn
        if gain <= 1e-16 * (f + gain):
            break
        mu = max(mu / 10.0, 1e-12)
    return f, x


def lm_polish(R, I, x0, max_iter=200):
    """Refine a sphere point toward a zero of ``(x.R.x, x.I.x)``; returns ``(f, x)``."""
    R = np.ascontiguousarray(R, dtype=np.float64)
    I = np.ascontiguousarray(I, dtype=np.float64)
    x0 = np.array(x0, dtype=np.float64)
    if USE_NUMBA:
        f, x = lm_polish_numba(R, I, x0, int(max_iter))
        return float(f), x
    f, x = lm_polish_numpy(R, I, x0, int(max_iter))
    return float(f), x
