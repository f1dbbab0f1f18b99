"""Fundamental constants, CODATA 2018 SI values.

Hard-coded (rather than imported from scipy) so the laboratory-unit
conversions are reproducible bit-for-bit regardless of the installed
scientific stack.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Constants:
    """SI values of the constants needed for unit conversion."""

    elementary_charge: float = 1.602176634e-19   # C, exact
    vacuum_permittivity: float = 8.8541878128e-12  # F/m
    reduced_planck: float = 1.054571817e-34      # J s
    boltzmann: float = 1.380649e-23              # J/K, exact


CODATA2018 = Constants()
