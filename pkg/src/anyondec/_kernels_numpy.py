"""Pure-numpy kernel backend.

Implements the same primitives as the numba backend with the identical
algorithms: a globally-adaptive 15-point Gauss-Kronrod integrator over a
fixed family of integrands, plus fixed-step and embedded adaptive
Runge-Kutta drivers for the linear Bloch system.  Selected with
``ANYONDEC_BACKEND=numpy``; also the automatic fallback when numba is
unavailable.

Integrand codes (params packed in a length-4 float array p):

====  ============================================================
code  integrand of the integration variable
====  ============================================================
0     exp(-x/p1) * sin(x*p0)**2 / x
1     2/expm1(2x/p2) * exp(-x/p1) * sin(x*p0)**2 / x
2     exp(-x/p0) / x
3     2/expm1(2x/p1) * exp(-x/p0) / x
4     Re[ i e^{2i p0 p2} e^{-(p2+is)/p1} e^{-2 p0 s} / (p2+is) ]
5     Re[ i e^{2i p0 p3} 2/(e^{2(p3+is)/p2}-1) e^{-(p3+is)/p1}
         e^{-2 p0 s} / (p3+is) ]
6     p3 * x * exp(-x/p1) * cothf(x) / (p0**2 - x**2)
7     (phi(p0-u) - phi(p0+u)) / u  with
      phi(e) = p3 * e * exp(-e/p1) * cothf(e) / (p0+e)
====  ============================================================

cothf(x) = coth(x/(2*p2)) for p2 > 0 and exactly 1 at zero temperature.
Codes 4 and 5 are vertical-contour integrands used by the oscillatory
large-phase path; the variable is the height s above the rotation
abscissa (p2 resp. p3).
"""
import numpy as np

from ._gk import G7_WEIGHTS, GK15_NODES, GK15_WEIGHTS

NAME = "numpy"

_EXP_CAP = 700.0


def _eval_array(code, x, p):
    p0, p1, p2, p3 = p[0], p[1], p[2], p[3]
    if code == 0:
        return np.exp(-x / p1) * np.sin(x * p0) ** 2 / x
    if code == 1:
        u = np.minimum(2.0 * x / p2, _EXP_CAP)
        return 2.0 / np.expm1(u) * np.exp(-x / p1) * np.sin(x * p0) ** 2 / x
    if code == 2:
        return np.exp(-x / p0) / x
    if code == 3:
        u = np.minimum(2.0 * x / p1, _EXP_CAP)
        return 2.0 / np.expm1(u) * np.exp(-x / p0) / x
    if code == 4:
        z = p2 + 1j * x
        w = 1j * np.exp(2j * p0 * p2) * np.exp(-z / p1) * np.exp(-2.0 * p0 * x) / z
        return w.real
    if code == 5:
        z = p3 + 1j * x
        nb = 2.0 / np.expm1(2.0 * z / p2)
        w = 1j * np.exp(2j * p0 * p3) * nb * np.exp(-z / p1) * np.exp(-2.0 * p0 * x) / z
        return w.real
    if code == 6:
        if p2 > 0.0:
            cf = 1.0 / np.tanh(x / (2.0 * p2))
        else:
            cf = 1.0
        return p3 * x * np.exp(-x / p1) * cf / (p0 * p0 - x * x)
    if code == 7:
        lo = p0 - x
        hi = p0 + x
        if p2 > 0.0:
            cl = 1.0 / np.tanh(lo / (2.0 * p2))
            ch = 1.0 / np.tanh(hi / (2.0 * p2))
        else:
            cl = 1.0
            ch = 1.0
        phi_lo = p3 * lo * np.exp(-lo / p1) * cl / (p0 + lo)
        phi_hi = p3 * hi * np.exp(-hi / p1) * ch / (p0 + hi)
        return (phi_lo - phi_hi) / x
    raise ValueError(f"unknown integrand code {code}")


def _gk15(code, p, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    nodes = np.concatenate((c - h * GK15_NODES[:7], [c], c + h * GK15_NODES[:7]))
    fx = _eval_array(code, nodes, p)
    lo, fc, hi = fx[:7], fx[7], fx[8:]
    pair = lo + hi
    resk = fc * GK15_WEIGHTS[7] + np.dot(GK15_WEIGHTS[:7], pair)
    resg = fc * G7_WEIGHTS[3] + np.dot(G7_WEIGHTS[:3], pair[1::2])
    return resk * h, abs((resk - resg) * h)


def adaptive_gk(code, p, a, b, rel_tol, abs_tol, max_subdiv):
    """Globally-adaptive GK15 on [a, b].

    Returns (value, error_estimate, status); status 1 means the
    tolerance was not reached within max_subdiv bisections.
    """
    if a == b:
        return 0.0, 0.0, 0
    val, err = _gk15(code, p, a, b)
    segs = [(err, a, b, val)]
    total = val
    total_err = err
    for _ in range(int(max_subdiv)):
        if total_err <= max(abs_tol, rel_tol * abs(total)):
            return total, total_err, 0
        worst = max(range(len(segs)), key=lambda i: segs[i][0])
        e0, a0, b0, v0 = segs.pop(worst)
        mid = 0.5 * (a0 + b0)
        v1, e1 = _gk15(code, p, a0, mid)
        v2, e2 = _gk15(code, p, mid, b0)
        segs.append((e1, a0, mid, v1))
        segs.append((e2, mid, b0, v2))
        total += v1 + v2 - v0
        total_err += e1 + e2 - e0
    status = 0 if total_err <= max(abs_tol, rel_tol * abs(total)) else 1
    return total, total_err, status


def _bloch_rhs(y, gamma, pump, om_total, om):
    return np.array([
        -gamma * y[0] + pump,
        om_total * y[2] - gamma * y[1],
        -om * y[1],
    ])


# Dormand-Prince 5(4) coefficients.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
                   -92097 / 339200, 187 / 2100, 1 / 40])


def rk45_grid(y0, gamma, pump, shift, om, grid, rel_tol, abs_tol, max_steps):
    """Integrate the linear Bloch system through every grid time.

    Embedded Dormand-Prince 5(4) pair with PI-free standard step control;
    the fifth-order solution is propagated.  Returns (samples, status)
    where samples has shape (len(grid), 3).  Status: 0 ok, 1 step budget
    exhausted, 2 step-size underflow.
    """
    om_total = om + shift
    n = len(grid)
    out = np.empty((n, 3))
    y = np.array(y0, dtype=float)
    out[0] = y
    t = grid[0]
    scale = max(abs(gamma), abs(om_total), abs(om), 1e-300)
    h = min(1e-2 / scale, (grid[-1] - grid[0]) if n > 1 else 1e-2 / scale)
    steps = 0
    k = [np.zeros(3)] * 7
    k0 = _bloch_rhs(y, gamma, pump, om_total, om)
    for i in range(1, n):
        t_end = grid[i]
        while t < t_end:
            if steps >= max_steps:
                return out, 1
            if h < 16.0 * np.finfo(float).eps * max(abs(t), 1.0 / scale):
                return out, 2
            h_try = min(h, t_end - t)
            k[0] = k0
            for s in range(1, 7):
                ys = y + h_try * sum(_DP_A[s][j] * k[j] for j in range(s))
                k[s] = _bloch_rhs(ys, gamma, pump, om_total, om)
            y5 = y + h_try * sum(_DP_B5[j] * k[j] for j in range(7))
            y4 = y + h_try * sum(_DP_B4[j] * k[j] for j in range(7))
            e = y5 - y4
            tol = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y5))
            err = np.sqrt(np.mean((e / tol) ** 2))
            steps += 1
            if err <= 1.0:
                t += h_try
                y = y5
                k0 = k[6]  # FSAL
                grow = 0.9 * err ** -0.2 if err > 0.0 else 5.0
                h = h_try * min(5.0, max(0.2, grow))
            else:
                h = h_try * max(0.2, 0.9 * err ** -0.2)
        out[i] = y
    return out, 0


def rk4_grid(y0, gamma, pump, shift, om, grid, max_step):
    """Classical fixed-step RK4 sampled on the grid (oracle duty)."""
    om_total = om + shift
    n = len(grid)
    out = np.empty((n, 3))
    y = np.array(y0, dtype=float)
    out[0] = y
    for i in range(1, n):
        span = grid[i] - grid[i - 1]
        nsub = max(1, int(np.ceil(span / max_step)))
        h = span / nsub
        for _ in range(nsub):
            k1 = _bloch_rhs(y, gamma, pump, om_total, om)
            k2 = _bloch_rhs(y + 0.5 * h * k1, gamma, pump, om_total, om)
            k3 = _bloch_rhs(y + 0.5 * h * k2, gamma, pump, om_total, om)
            k4 = _bloch_rhs(y + h * k3, gamma, pump, om_total, om)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i] = y
    return out
