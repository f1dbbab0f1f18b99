"""Decoherence of a double-antidot two-level system coupled to ohmic edge modes.

Computes relaxation rates, Bloch-vector trajectories and purity decay in
the memoryless (Markovian) approximation and in the early-time
approximation, and compares the two.  See the README for the library
layout, the command-line interface and the kernel backends.
"""
from .backend import available_backends, get_kernels
from .bath import (
    QuadratureSettings,
    RateSet,
    Regime,
    SpectralCoupling,
    classify_regime,
    decoherence_integral,
    decoherence_integral_asymptotic,
    frequency_shift,
    pump_rate,
    rates_from_model,
    relaxation_rate,
    spectral_density,
)
from .compare import ComparisonReport, GridSpec, compare_approximations
from .constants import CODATA2018, Constants
from .errors import AnyondecError, ConfigError, ConvergenceError, RangeError
from .markovian import (
    BlochState,
    IntegratorSettings,
    Trajectory,
    bloch_derivative,
    closed_form,
    evolve,
    purity,
    purity_decay_amplitude,
    steady_polarization,
    steady_state,
)
from .params import (
    ModelParams,
    PhysicalParams,
    dissipation_rate_conventional,
    to_model,
)
from .shorttime import (
    ShortTimePoint,
    crossover_times,
    decoherence_exponent,
    point_exact,
    purity_asymptotic,
    purity_exact,
)

__version__ = "0.1.0"
