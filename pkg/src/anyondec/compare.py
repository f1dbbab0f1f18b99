"""Side-by-side comparison of the two approximations on a shared grid.

Runs the whole pipeline (laboratory parameters -> rates -> exact Bloch
trajectory and early-time purity) and assembles a report carrying both
purity curves, the regime boundaries, the two long-time limits and the
first grid time at which the curves diverge beyond a threshold.  The
memoryless curve uses the exact closed-form solution; the early-time
curve is evaluated both by quadrature and by the regime asymptotics.
Assembly is deterministic for fixed inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bath, markovian, shorttime
from .bath import QuadratureSettings, RateSet
from .markovian import BlochState
from .params import ModelParams, PhysicalParams, to_model


@dataclass(frozen=True)
class GridSpec:
    """Time grid description; spacing is 'linear' or 'logarithmic'."""

    t_min: float
    t_max: float
    points: int = 400
    spacing: str = "logarithmic"

    def __post_init__(self):
        if self.spacing not in ("linear", "logarithmic"):
            raise ValueError("spacing must be 'linear' or 'logarithmic'")
        if not (self.t_min >= 0 and math.isfinite(self.t_min)):
            raise ValueError("t_min must be nonnegative and finite")
        if not (self.t_max > self.t_min and math.isfinite(self.t_max)):
            raise ValueError("t_max must exceed t_min and be finite")
        if self.spacing == "logarithmic" and self.t_min <= 0:
            raise ValueError("logarithmic spacing requires t_min > 0")
        if self.points < 2:
            raise ValueError("points must be >= 2")

    def build(self) -> np.ndarray:
        if self.spacing == "linear":
            return np.linspace(self.t_min, self.t_max, self.points)
        return np.logspace(math.log10(self.t_min), math.log10(self.t_max),
                           self.points)


@dataclass(frozen=True)
class ComparisonReport:
    """All raw numbers of one comparison run (rendering lives in the CLI)."""

    times: np.ndarray
    purity_markovian: np.ndarray
    purity_shorttime: np.ndarray
    purity_shorttime_asymptotic: np.ndarray
    regimes: tuple[str, ...]
    abs_diff: np.ndarray
    markovian_limit: float          # (1 + tanh^2)/2 steady purity
    shorttime_limit: float          # 1/2, the infinite-time floor
    boundary_times: tuple[float, float | None]
    first_divergence_time: float | None
    threshold: float
    rates: RateSet
    model: ModelParams
    initial_state: BlochState


def compare_approximations(
    phys: PhysicalParams,
    s0: BlochState = BlochState(0.0, 0.0, 1.0),
    grid: GridSpec | None = None,
    quadrature: QuadratureSettings = QuadratureSettings(),
    threshold: float = 0.01,
) -> ComparisonReport:
    """Build the comparison report for one laboratory parameter point."""
    if not (threshold > 0):
        raise ValueError("threshold must be positive")
    m = to_model(phys)
    rates = bath.rates_from_model(m, quadrature)
    if grid is None:
        scale = 1.0 / rates.relaxation if rates.relaxation > 0 else 1.0 / m.splitting
        grid = GridSpec(t_min=1e-3 * scale, t_max=1e3 * scale)
    times = grid.build()

    p_markov = np.empty(times.size)
    p_short = np.empty(times.size)
    p_asym = np.empty(times.size)
    regimes = []
    for i, t in enumerate(times):
        state = markovian.closed_form(s0, rates, m, float(t) - s0.t)
        p_markov[i] = markovian.purity(state)
        p_short[i] = shorttime.purity_exact(float(t), m, quadrature)
        point = shorttime.purity_asymptotic(float(t), m)
        p_asym[i] = point.purity
        regimes.append(point.regime.value)

    diff = np.abs(p_markov - p_short)
    over = np.nonzero(diff > threshold)[0]
    first_div = float(times[over[0]]) if over.size else None

    pol = markovian.steady_polarization(m)
    return ComparisonReport(
        times=times,
        purity_markovian=p_markov,
        purity_shorttime=p_short,
        purity_shorttime_asymptotic=p_asym,
        regimes=tuple(regimes),
        abs_diff=diff,
        markovian_limit=0.5 * (1.0 + pol * pol),
        shorttime_limit=0.5,
        boundary_times=shorttime.crossover_times(m),
        first_divergence_time=first_div,
        threshold=threshold,
        rates=rates,
        model=m,
        initial_state=s0,
    )
