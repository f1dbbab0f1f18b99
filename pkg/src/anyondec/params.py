"""Laboratory parameters and their conversion to the internal unit system.

All internal quantities are angular frequencies in rad/s: energies enter
as E/hbar and temperatures as kB*T/hbar.  This removes hbar and kB from
every downstream formula.

Two different spectral decay scales coexist by design.  The closed-form
relaxation rate carries the tunnelling-window decay exp(-2*Omega*L/v),
i.e. an effective energy cutoff v/(2L), while the short-time machinery
uses the cutoff v/(4L).  The factor-of-two tension between the two is
deliberate and documented; it is not silently reconciled (see README).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CODATA2018, Constants


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory inputs in laboratory units.

    Attributes
    ----------
    dielectric_constant : float
        Relative dielectric constant of the host material.
    edge_velocity : float
        Propagation velocity of the edge modes, m/s.
    splitting : float
        Tunnelling splitting of the two-level system, expressed as a
        temperature in kelvin.
    temperature : float
        Bath temperature, kelvin.
    antidot_separation : float
        Distance between the two antidots, meters.  Zero is allowed and
        switches the coupling off entirely.
    qubit_edge_distance : float
        Distance between the qubit and the edge, meters.
    filling_denominator : int
        Positive integer m; the filling factor is 1/m and the carrier
        charge is e/m.
    bias : float
        Energy asymmetry between the two antidots, kelvin.  Only zero is
        supported by this model.
    """

    dielectric_constant: float
    edge_velocity: float
    splitting: float
    temperature: float
    antidot_separation: float
    qubit_edge_distance: float
    filling_denominator: int
    bias: float = 0.0

    def __post_init__(self):
        if not (self.dielectric_constant > 0 and math.isfinite(self.dielectric_constant)):
            raise ValueError("dielectric_constant must be positive and finite")
        if not (self.edge_velocity > 0 and math.isfinite(self.edge_velocity)):
            raise ValueError("edge_velocity must be positive and finite")
        if not (self.splitting > 0 and math.isfinite(self.splitting)):
            raise ValueError("splitting must be positive and finite")
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise ValueError("temperature must be nonnegative and finite")
        if not (self.antidot_separation >= 0 and math.isfinite(self.antidot_separation)):
            raise ValueError("antidot_separation must be nonnegative and finite")
        if not (self.qubit_edge_distance > 0 and math.isfinite(self.qubit_edge_distance)):
            raise ValueError("qubit_edge_distance must be positive and finite")
        m = self.filling_denominator
        if not (isinstance(m, int) and not isinstance(m, bool) and m >= 1):
            raise ValueError("filling_denominator must be an integer >= 1")
        if self.bias != 0.0:
            raise ValueError(
                "unsupported: nonzero bias; the model is implemented for zero bias only"
            )


@dataclass(frozen=True)
class ModelParams:
    """Internal working set, everything in angular-frequency units.

    Attributes
    ----------
    splitting : float
        Tunnelling splitting, rad/s.
    temperature : float
        Bath temperature, rad/s (kB*T/hbar).  Zero is represented
        exactly, not as a tiny positive number.
    cutoff : float
        Spectral cutoff of the ohmic coupling, rad/s (v/(4L)).
    coupling : float
        Dimensionless prefactor of the ohmic spectral density
        g(x) = coupling * x * exp(-x/cutoff).
    shorttime_amplitude : float
        Dimensionless amplitude multiplying the bath integral in the
        early-time decoherence exponent.
    """

    splitting: float
    temperature: float
    cutoff: float
    coupling: float
    shorttime_amplitude: float

    def __post_init__(self):
        if not (self.splitting > 0 and math.isfinite(self.splitting)):
            raise ValueError("splitting must be positive and finite")
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise ValueError("temperature must be nonnegative and finite")
        if not (self.cutoff > 0 and math.isfinite(self.cutoff)):
            raise ValueError("cutoff must be positive and finite")
        if not (self.coupling >= 0 and math.isfinite(self.coupling)):
            raise ValueError("coupling must be nonnegative and finite")
        if not (self.shorttime_amplitude >= 0 and math.isfinite(self.shorttime_amplitude)):
            raise ValueError("shorttime_amplitude must be nonnegative and finite")


def to_model(phys: PhysicalParams, constants: Constants = CODATA2018) -> ModelParams:
    """Convert laboratory parameters to the internal angular-frequency set.

    Pure and deterministic: equal inputs give bit-identical outputs.
    """
    c = constants
    omega = c.boltzmann * phys.splitting / c.reduced_planck
    temp = c.boltzmann * phys.temperature / c.reduced_planck
    cutoff = phys.edge_velocity / (4.0 * phys.qubit_edge_distance)

    geom = phys.antidot_separation / phys.qubit_edge_distance
    fine = c.elementary_charge**2 / (
        2.0 * phys.dielectric_constant * c.vacuum_permittivity
        * c.reduced_planck * phys.edge_velocity
    )
    m3 = float(phys.filling_denominator) ** 3
    coupling = geom**2 * fine**2 / (2.0 * math.pi * m3)
    amplitude = (2.0 / m3) * (geom * fine / math.pi) ** 2

    for name, value in (("splitting", omega), ("cutoff", cutoff),
                        ("coupling", coupling), ("shorttime_amplitude", amplitude)):
        if not math.isfinite(value):
            raise ValueError(f"conversion produced a non-finite {name}: {value!r}")
    return ModelParams(
        splitting=omega,
        temperature=temp,
        cutoff=cutoff,
        coupling=coupling,
        shorttime_amplitude=amplitude,
    )


def dissipation_rate_conventional(
    phys: PhysicalParams, constants: Constants = CODATA2018
) -> tuple[float, float]:
    """Zero-temperature relaxation rate in conventional units.

    Evaluates the closed form verbatim in SI and returns
    ``(rate_per_second, hbar*rate/splitting_energy)``.
    """
    c = constants
    energy = c.boltzmann * phys.splitting
    geom = phys.antidot_separation / phys.qubit_edge_distance
    fine = c.elementary_charge**2 / (
        2.0 * phys.dielectric_constant * c.vacuum_permittivity
        * c.reduced_planck * phys.edge_velocity
    )
    m3 = float(phys.filling_denominator) ** 3
    decay = math.exp(
        -2.0 * energy * phys.qubit_edge_distance
        / (c.reduced_planck * phys.edge_velocity)
    )
    rate = geom**2 * fine**2 * energy / (2.0 * math.pi * m3 * c.reduced_planck) * decay
    ratio = c.reduced_planck * rate / energy
    return rate, ratio
