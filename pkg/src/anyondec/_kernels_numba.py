"""Numba kernel backend.

Same primitives and algorithms as ``_kernels_numpy`` (that module's
docstring documents the integrand codes); here the inner loops are
compiled with ``numba.njit``.  Compilation results are cached on disk and
the GIL is released, so sweep workers can run kernels concurrently.
"""
import math
import cmath

import numpy as np
from numba import njit

from ._gk import G7_WEIGHTS, GK15_NODES, GK15_WEIGHTS

NAME = "numba"

_EXP_CAP = 700.0


@njit(cache=True, nogil=True)
def _eval(code, x, p0, p1, p2, p3):
    if code == 0:
        return math.exp(-x / p1) * math.sin(x * p0) ** 2 / x
    elif code == 1:
        u = 2.0 * x / p2
        if u > _EXP_CAP:
            u = _EXP_CAP
        return 2.0 / math.expm1(u) * math.exp(-x / p1) * math.sin(x * p0) ** 2 / x
    elif code == 2:
        return math.exp(-x / p0) / x
    elif code == 3:
        u = 2.0 * x / p1
        if u > _EXP_CAP:
            u = _EXP_CAP
        return 2.0 / math.expm1(u) * math.exp(-x / p0) / x
    elif code == 4:
        z = complex(p2, x)
        w = 1j * cmath.exp(2j * p0 * p2) * cmath.exp(-z / p1) * math.exp(-2.0 * p0 * x) / z
        return w.real
    elif code == 5:
        z = complex(p3, x)
        nb = 2.0 / (cmath.exp(2.0 * z / p2) - 1.0)
        w = 1j * cmath.exp(2j * p0 * p3) * nb * cmath.exp(-z / p1) * math.exp(-2.0 * p0 * x) / z
        return w.real
    elif code == 6:
        if p2 > 0.0:
            cf = 1.0 / math.tanh(x / (2.0 * p2))
        else:
            cf = 1.0
        return p3 * x * math.exp(-x / p1) * cf / (p0 * p0 - x * x)
    else:
        lo = p0 - x
        hi = p0 + x
        if p2 > 0.0:
            cl = 1.0 / math.tanh(lo / (2.0 * p2))
            ch = 1.0 / math.tanh(hi / (2.0 * p2))
        else:
            cl = 1.0
            ch = 1.0
        phi_lo = p3 * lo * math.exp(-lo / p1) * cl / (p0 + lo)
        phi_hi = p3 * hi * math.exp(-hi / p1) * ch / (p0 + hi)
        return (phi_lo - phi_hi) / x


@njit(cache=True, nogil=True)
def _gk15(code, p0, p1, p2, p3, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = _eval(code, c, p0, p1, p2, p3)
    resk = fc * GK15_WEIGHTS[7]
    resg = fc * G7_WEIGHTS[3]
    for j in range(7):
        s = (_eval(code, c - h * GK15_NODES[j], p0, p1, p2, p3)
             + _eval(code, c + h * GK15_NODES[j], p0, p1, p2, p3))
        resk += GK15_WEIGHTS[j] * s
        if j % 2 == 1:
            resg += G7_WEIGHTS[j // 2] * s
    return resk * h, abs((resk - resg) * h)


@njit(cache=True, nogil=True)
def _adaptive_gk(code, p0, p1, p2, p3, a, b, rel_tol, abs_tol, max_subdiv):
    if a == b:
        return 0.0, 0.0, 0
    cap = max_subdiv + 2
    seg_a = np.empty(cap)
    seg_b = np.empty(cap)
    seg_v = np.empty(cap)
    seg_e = np.empty(cap)
    v, e = _gk15(code, p0, p1, p2, p3, a, b)
    seg_a[0] = a
    seg_b[0] = b
    seg_v[0] = v
    seg_e[0] = e
    count = 1
    total = v
    total_err = e
    for _ in range(max_subdiv):
        if total_err <= max(abs_tol, rel_tol * abs(total)):
            return total, total_err, 0
        worst = 0
        emax = seg_e[0]
        for i in range(1, count):
            if seg_e[i] > emax:
                emax = seg_e[i]
                worst = i
        a0 = seg_a[worst]
        b0 = seg_b[worst]
        v0 = seg_v[worst]
        e0 = seg_e[worst]
        mid = 0.5 * (a0 + b0)
        v1, e1 = _gk15(code, p0, p1, p2, p3, a0, mid)
        v2, e2 = _gk15(code, p0, p1, p2, p3, mid, b0)
        seg_a[worst] = a0
        seg_b[worst] = mid
        seg_v[worst] = v1
        seg_e[worst] = e1
        seg_a[count] = mid
        seg_b[count] = b0
        seg_v[count] = v2
        seg_e[count] = e2
        count += 1
        total += v1 + v2 - v0
        total_err += e1 + e2 - e0
    if total_err <= max(abs_tol, rel_tol * abs(total)):
        return total, total_err, 0
    return total, total_err, 1


def adaptive_gk(code, p, a, b, rel_tol, abs_tol, max_subdiv):
    """Globally-adaptive GK15 on [a, b]; see the numpy backend docstring."""
    return _adaptive_gk(int(code), p[0], p[1], p[2], p[3],
                        float(a), float(b), rel_tol, abs_tol, int(max_subdiv))


@njit(cache=True, nogil=True)
def _rk45_grid(x0, y0, z0, gamma, pump, shift, om, grid, rel_tol, abs_tol, max_steps):
    om_total = om + shift
    n = grid.shape[0]
    out = np.empty((n, 3))
    x = x0
    y = y0
    z = z0
    out[0, 0] = x
    out[0, 1] = y
    out[0, 2] = z
    t = grid[0]
    scale = max(abs(gamma), max(abs(om_total), abs(om)))
    if scale < 1e-300:
        scale = 1e-300
    h = 1e-2 / scale
    if n > 1 and grid[n - 1] - grid[0] < h:
        h = grid[n - 1] - grid[0]
    eps = 2.220446049250313e-16

    # Dormand-Prince 5(4); the fifth-order solution is propagated (FSAL).
    kx = np.empty(7)
    ky = np.empty(7)
    kz = np.empty(7)
    kx[0] = -gamma * x + pump
    ky[0] = om_total * z - gamma * y
    kz[0] = -om * y
    A = np.empty((7, 7))
    A[:] = 0.0
    A[1, 0] = 1.0 / 5.0
    A[2, 0] = 3.0 / 40.0
    A[2, 1] = 9.0 / 40.0
    A[3, 0] = 44.0 / 45.0
    A[3, 1] = -56.0 / 15.0
    A[3, 2] = 32.0 / 9.0
    A[4, 0] = 19372.0 / 6561.0
    A[4, 1] = -25360.0 / 2187.0
    A[4, 2] = 64448.0 / 6561.0
    A[4, 3] = -212.0 / 729.0
    A[5, 0] = 9017.0 / 3168.0
    A[5, 1] = -355.0 / 33.0
    A[5, 2] = 46732.0 / 5247.0
    A[5, 3] = 49.0 / 176.0
    A[5, 4] = -5103.0 / 18656.0
    A[6, 0] = 35.0 / 384.0
    A[6, 1] = 0.0
    A[6, 2] = 500.0 / 1113.0
    A[6, 3] = 125.0 / 192.0
    A[6, 4] = -2187.0 / 6784.0
    A[6, 5] = 11.0 / 84.0
    b5 = np.empty(7)
    b5[0] = 35.0 / 384.0
    b5[1] = 0.0
    b5[2] = 500.0 / 1113.0
    b5[3] = 125.0 / 192.0
    b5[4] = -2187.0 / 6784.0
    b5[5] = 11.0 / 84.0
    b5[6] = 0.0
    b4 = np.empty(7)
    b4[0] = 5179.0 / 57600.0
    b4[1] = 0.0
    b4[2] = 7571.0 / 16695.0
    b4[3] = 393.0 / 640.0
    b4[4] = -92097.0 / 339200.0
    b4[5] = 187.0 / 2100.0
    b4[6] = 1.0 / 40.0

    steps = 0
    for i in range(1, n):
        t_end = grid[i]
        while t < t_end:
            if steps >= max_steps:
                return out, 1
            tmag = abs(t)
            if tmag < 1.0 / scale:
                tmag = 1.0 / scale
            if h < 16.0 * eps * tmag:
                return out, 2
            h_try = h
            if t + h_try > t_end:
                h_try = t_end - t
            for s in range(1, 7):
                xs = x
                ys = y
                zs = z
                for j in range(s):
                    aij = A[s, j] * h_try
                    xs += aij * kx[j]
                    ys += aij * ky[j]
                    zs += aij * kz[j]
                kx[s] = -gamma * xs + pump
                ky[s] = om_total * zs - gamma * ys
                kz[s] = -om * ys
            x5 = x
            y5 = y
            z5 = z
            ex = 0.0
            ey = 0.0
            ez = 0.0
            for j in range(7):
                x5 += h_try * b5[j] * kx[j]
                y5 += h_try * b5[j] * ky[j]
                z5 += h_try * b5[j] * kz[j]
                d = b5[j] - b4[j]
                ex += h_try * d * kx[j]
                ey += h_try * d * ky[j]
                ez += h_try * d * kz[j]
            tx = abs_tol + rel_tol * max(abs(x), abs(x5))
            ty = abs_tol + rel_tol * max(abs(y), abs(y5))
            tz = abs_tol + rel_tol * max(abs(z), abs(z5))
            err = math.sqrt(((ex / tx) ** 2 + (ey / ty) ** 2 + (ez / tz) ** 2) / 3.0)
            steps += 1
            if err <= 1.0:
                t += h_try
                x = x5
                y = y5
                z = z5
                kx[0] = kx[6]
                ky[0] = ky[6]
                kz[0] = kz[6]
                if err > 0.0:
                    grow = 0.9 * err ** -0.2
                    if grow > 5.0:
                        grow = 5.0
                    elif grow < 0.2:
                        grow = 0.2
                else:
                    grow = 5.0
                h = h_try * grow
            else:
                shrink = 0.9 * err ** -0.2
                if shrink < 0.2:
                    shrink = 0.2
                h = h_try * shrink
        out[i, 0] = x
        out[i, 1] = y
        out[i, 2] = z
    return out, 0


def rk45_grid(y0, gamma, pump, shift, om, grid, rel_tol, abs_tol, max_steps):
    """Adaptive Bloch integration sampled on the grid; see numpy backend."""
    return _rk45_grid(float(y0[0]), float(y0[1]), float(y0[2]),
                      gamma, pump, shift, om, np.asarray(grid, dtype=np.float64),
                      rel_tol, abs_tol, int(max_steps))


@njit(cache=True, nogil=True)
def _rk4_grid(x0, y0, z0, gamma, pump, shift, om, grid, max_step):
    om_total = om + shift
    n = grid.shape[0]
    out = np.empty((n, 3))
    x = x0
    y = y0
    z = z0
    out[0, 0] = x
    out[0, 1] = y
    out[0, 2] = z
    for i in range(1, n):
        span = grid[i] - grid[i - 1]
        nsub = int(math.ceil(span / max_step))
        if nsub < 1:
            nsub = 1
        h = span / nsub
        for _ in range(nsub):
            k1x = -gamma * x + pump
            k1y = om_total * z - gamma * y
            k1z = -om * y
            x2 = x + 0.5 * h * k1x
            y2 = y + 0.5 * h * k1y
            z2 = z + 0.5 * h * k1z
            k2x = -gamma * x2 + pump
            k2y = om_total * z2 - gamma * y2
            k2z = -om * y2
            x3 = x + 0.5 * h * k2x
            y3 = y + 0.5 * h * k2y
            z3 = z + 0.5 * h * k2z
            k3x = -gamma * x3 + pump
            k3y = om_total * z3 - gamma * y3
            k3z = -om * y3
            x4 = x + h * k3x
            y4 = y + h * k3y
            z4 = z + h * k3z
            k4x = -gamma * x4 + pump
            k4y = om_total * z4 - gamma * y4
            k4z = -om * y4
            x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            z += (h / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
        out[i, 0] = x
        out[i, 1] = y
        out[i, 2] = z
    return out


def rk4_grid(y0, gamma, pump, shift, om, grid, max_step):
    """Fixed-step classical RK4 sampled on the grid (oracle duty)."""
    return _rk4_grid(float(y0[0]), float(y0[1]), float(y0[2]),
                     gamma, pump, shift, om,
                     np.asarray(grid, dtype=np.float64), float(max_step))
