"""Bloch-vector dynamics under the memoryless rate equations.

The state obeys the linear system

    dx/dt = -relaxation * x + pump
    dy/dt = (splitting + shift) * z - relaxation * y
    dz/dt = -splitting * y

solved three ways: the closed form (exact matrix exponential of the y-z
block, all eigenvalue cases), an adaptive embedded Runge-Kutta 5(4)
integrator, and a fixed-step classical RK4 kept for oracle duty.  The
purity is (1 + |r|^2)/2 and relaxes toward (1 + tanh^2)/2 where tanh is
the thermal fixed-point polarization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import get_kernels
from .bath import RateSet
from .errors import ConvergenceError
from .params import ModelParams

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class BlochState:
    """Bloch components (x, y, z) at time t, with |r|^2 <= 1 + 1e-9.

    The norm bound is the contract for user-supplied states.  States
    produced by the dynamics itself may transiently exceed the unit ball
    by order shift/splitting when the frequency shift is nonzero (the
    y-z subsystem is not contractive: d|r|^2/dt = 2*shift*y*z -
    2*relaxation*y^2 can be positive).  Such states are built internally
    without re-validation and are never clamped; see the module tests
    and the README for the measured size of the excursion.
    """

    x: float
    y: float
    z: float
    t: float = 0.0

    def __post_init__(self):
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if not (n2 <= 1.0 + _NORM_TOL) or not math.isfinite(n2):
            raise ValueError(f"Bloch vector norm^2 = {n2!r} exceeds 1 + 1e-9")
        if not math.isfinite(self.t):
            raise ValueError("t must be finite")


def _raw_state(x: float, y: float, z: float, t: float) -> BlochState:
    # dynamics-produced states skip the unit-ball check (transient
    # overshoot documented above) but must still be finite
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
        raise ConvergenceError(
            f"dynamics produced a non-finite state ({x!r}, {y!r}, {z!r})")
    s = object.__new__(BlochState)
    object.__setattr__(s, "x", x)
    object.__setattr__(s, "y", y)
    object.__setattr__(s, "z", z)
    object.__setattr__(s, "t", t)
    return s


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered Bloch states plus the coefficients that produced them."""

    states: tuple[BlochState, ...]
    rates: RateSet
    model: ModelParams

    def __post_init__(self):
        ts = [s.t for s in self.states]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("trajectory times must be strictly increasing")

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    def components(self) -> np.ndarray:
        return np.array([[s.x, s.y, s.z] for s in self.states])


@dataclass(frozen=True)
class IntegratorSettings:
    """Numerical-integration controls.

    method "rk45" is the adaptive embedded 5(4) pair (default), "rk4"
    the fixed-step classical rule with step size `step`.
    """

    method: str = "rk45"
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    step: float = float("nan")
    max_steps: int = 50_000_000

    def __post_init__(self):
        if self.method not in ("rk45", "rk4"):
            raise ValueError("method must be 'rk45' or 'rk4'")
        if self.method == "rk45" and not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.method == "rk4" and not (self.step > 0):
            raise ValueError("rk4 requires a positive step")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


def bloch_derivative(s: BlochState, r: RateSet, m: ModelParams) -> tuple[float, float, float]:
    """Right-hand side of the rate equations at the given state."""
    return (
        -r.relaxation * s.x + r.pump,
        (m.splitting + r.shift) * s.z - r.relaxation * s.y,
        -m.splitting * s.y,
    )


def evolve(s0: BlochState, r: RateSet, m: ModelParams, grid,
           cfg: IntegratorSettings = IntegratorSettings()) -> Trajectory:
    """Integrate numerically, sampling the state at every grid time.

    The grid must be strictly increasing and start at s0.t.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError("grid must be a one-dimensional time sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid times must be strictly increasing")
    if grid[0] != s0.t:
        raise ValueError("grid must start at the initial state's time")
    kern = get_kernels()
    y0 = (s0.x, s0.y, s0.z)
    if cfg.method == "rk45":
        out, status = kern.rk45_grid(y0, r.relaxation, r.pump, r.shift,
                                     m.splitting, grid, cfg.rel_tol,
                                     cfg.abs_tol, cfg.max_steps)
        if status == 1:
            raise ConvergenceError(
                f"integrator exceeded max_steps = {cfg.max_steps}")
        if status == 2:
            raise ConvergenceError(
                "integrator step size underflowed (stiffness); the system "
                "coefficients are outside the intended regime")
    else:
        out = kern.rk4_grid(y0, r.relaxation, r.pump, r.shift,
                            m.splitting, grid, cfg.step)
    states = tuple(
        _raw_state(float(row[0]), float(row[1]), float(row[2]), float(tt))
        for row, tt in zip(out, grid)
    )
    return Trajectory(states=states, rates=r, model=m)


def _yz_propagator(gamma: float, om_total: float, om: float, t: float):
    """Exact 2x2 matrix exponential of [[-gamma, om_total], [-om, 0]] * t.

    Written as a sum of decaying exponentials so no intermediate
    overflows even for strongly overdamped coefficients; handles the
    underdamped, overdamped and critically damped cases.
    """
    half = 0.5 * gamma
    disc = half * half - om * om_total      # (trace/2)^2 - det
    # B = M - s*I with s = -gamma/2
    b11, b12 = -half, om_total
    b21, b22 = -om, half
    if abs(disc) * t * t < 1e-24:
        # defective/near-defective: e^{st} (I + B t), second order in w t
        es = math.exp(-half * t)
        return (es * (1.0 + b11 * t), es * b12 * t,
                es * b21 * t, es * (1.0 + b22 * t))
    if disc > 0.0:
        w = math.sqrt(disc)
        ep = math.exp((-half + w) * t)
        em = math.exp((-half - w) * t)
        c = 0.5 * (ep + em)
        s_over_w = 0.5 * (ep - em) / w
    else:
        w = math.sqrt(-disc)
        es = math.exp(-half * t)
        c = es * math.cos(w * t)
        s_over_w = es * math.sin(w * t) / w
    return (c + s_over_w * b11, s_over_w * b12,
            s_over_w * b21, c + s_over_w * b22)


def closed_form(s0: BlochState, r: RateSet, m: ModelParams, t: float) -> BlochState:
    """Exact solution at time s0.t + t (t >= 0 is the elapsed time)."""
    if t == 0.0:
        return s0
    gamma = r.relaxation
    if gamma > 0.0:
        xinf = r.pump / gamma
        x = xinf + (s0.x - xinf) * math.exp(-gamma * t)
    else:
        x = s0.x + r.pump * t
    m11, m12, m21, m22 = _yz_propagator(gamma, m.splitting + r.shift,
                                        m.splitting, t)
    y = m11 * s0.y + m12 * s0.z
    z = m21 * s0.y + m22 * s0.z
    return _raw_state(x, y, z, s0.t + t)


def purity(s: BlochState) -> float:
    """Purity (1 + |r|^2) / 2 of the state.

    Never clamped: values above one expose either an integrator bug or
    the documented transient norm excursion of the nonzero-shift
    dynamics (order shift/splitting; see :class:`BlochState`).
    """
    return 0.5 * (1.0 + s.x * s.x + s.y * s.y + s.z * s.z)


def steady_polarization(m: ModelParams) -> float:
    """Fixed-point x component, tanh(splitting / (2 T)); 1 at T = 0."""
    if m.temperature == 0.0:
        return 1.0
    return math.tanh(m.splitting / (2.0 * m.temperature))


def steady_state(r: RateSet, m: ModelParams) -> BlochState:
    """Unique fixed point (pump/relaxation, 0, 0); requires relaxation > 0."""
    if r.relaxation <= 0.0:
        raise ValueError("no unique steady state when the relaxation rate is zero")
    return BlochState(x=r.pump / r.relaxation, y=0.0, z=0.0, t=0.0)


def purity_decay_amplitude(s0: BlochState, m: ModelParams, r: RateSet,
                           samples: int = 256) -> tuple[float, float]:
    """Least-squares amplitude of the single-exponential purity decay.

    For an initial state on the x axis the purity is exactly
    (1 + x(t)^2)/2; this fits 2*(purity - steady purity) against
    exp(-relaxation*t) over t in [0, 3/relaxation] and returns the
    fitted amplitude together with the rms residual, quantifying how
    well a single exponential describes the decay (the exact curve also
    contains a doubled-rate term).
    """
    if s0.y != 0.0 or s0.z != 0.0:
        raise ValueError("initial state must lie on the x axis (y = z = 0)")
    gamma = r.relaxation
    if gamma <= 0.0:
        raise ValueError("requires a positive relaxation rate")
    xinf = r.pump / gamma
    ts = np.linspace(0.0, 3.0 / gamma, samples)
    xs = xinf + (s0.x - xinf) * np.exp(-gamma * ts)
    target = xs * xs - xinf * xinf          # = 2*(purity - steady purity)
    basis = np.exp(-gamma * ts)
    amp = float(np.dot(target, basis) / np.dot(basis, basis))
    residual = float(np.sqrt(np.mean((target - amp * basis) ** 2)))
    return amp, residual
