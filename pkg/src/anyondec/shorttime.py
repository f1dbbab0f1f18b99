"""Early-time purity decay from the bath decoherence integral.

The decoherence exponent is amplitude * I(t) and the purity is
(1 + exp(-2 * exponent)) / 2, strictly above one half at all times.
Exact quadrature and the piecewise closed-form asymptotics are kept as
separate entry points; callers choose which to evaluate, nothing
substitutes silently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bath import (
    QuadratureSettings,
    Regime,
    classify_regime,
    decoherence_integral,
)
from .params import ModelParams

__all__ = [
    "Regime",
    "ShortTimePoint",
    "decoherence_exponent",
    "purity_exact",
    "point_exact",
    "purity_asymptotic",
    "crossover_times",
]


@dataclass(frozen=True)
class ShortTimePoint:
    """One evaluated point of the early-time purity curve.

    The purity is strictly above one half for every finite exponent;
    the boundary value 1/2 is accepted because it is the correctly
    rounded double of that strictly-greater quantity once the exponent
    exceeds the underflow threshold.
    """

    t: float
    exponent: float          # decoherence exponent, >= 0
    purity: float            # in [1/2, 1], see above
    regime: Regime
    method: str              # "exact-quadrature" | "asymptotic"

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")
        if not (0.5 <= self.purity <= 1.0):
            raise ValueError("purity must lie in [1/2, 1]")
        if self.method not in ("exact-quadrature", "asymptotic"):
            raise ValueError("method must be 'exact-quadrature' or 'asymptotic'")


def decoherence_exponent(t: float, m: ModelParams,
                         q: QuadratureSettings = QuadratureSettings()) -> float:
    """amplitude * I(t), by exact quadrature of the bath integral."""
    return m.shorttime_amplitude * decoherence_integral(t, m, q)


def _purity_from_exponent(exponent: float) -> float:
    return 0.5 * (1.0 + math.exp(-2.0 * exponent))


def purity_exact(t: float, m: ModelParams,
                 q: QuadratureSettings = QuadratureSettings()) -> float:
    """Purity (1 + exp(-2 * amplitude * I(t))) / 2 from exact quadrature."""
    return _purity_from_exponent(decoherence_exponent(t, m, q))


def point_exact(t: float, m: ModelParams,
                q: QuadratureSettings = QuadratureSettings()) -> ShortTimePoint:
    """Exact-quadrature evaluation bundled with its regime tag."""
    b2 = decoherence_exponent(t, m, q)
    return ShortTimePoint(
        t=t,
        exponent=b2,
        purity=_purity_from_exponent(b2),
        regime=classify_regime(t, m),
        method="exact-quadrature",
    )


def purity_asymptotic(t: float, m: ModelParams) -> ShortTimePoint:
    """Piecewise closed-form purity, each branch evaluated verbatim.

    Short times: exponent A*(cutoff*t)^2.  Intermediate: purity
    (1 + (cutoff*t)^(-A))/2, i.e. exponent (A/2)*ln(cutoff*t).  Long
    times: exponent A*T*t.  The long branch's exponent is deliberately
    2*A*T*t in the exponential, not A times the linear asymptote of the
    bath integral (which carries an extra factor near pi/2); both
    statements are reproduced as given, and the tests record the
    measured ratio.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    regime = classify_regime(t, m)
    a = m.shorttime_amplitude
    if regime is Regime.SHORT:
        b2 = a * (m.cutoff * t) ** 2
    elif regime is Regime.INTERMEDIATE:
        b2 = 0.5 * a * math.log(m.cutoff * t)
    else:
        b2 = a * m.temperature * t
    return ShortTimePoint(
        t=t,
        exponent=b2,
        purity=_purity_from_exponent(b2),
        regime=regime,
        method="asymptotic",
    )


def crossover_times(m: ModelParams) -> tuple[float, float | None]:
    """Regime boundaries (1/cutoff, 1/temperature); the second is None at T = 0."""
    t1 = 1.0 / m.cutoff
    t2 = None if m.temperature == 0.0 else 1.0 / m.temperature
    return t1, t2
