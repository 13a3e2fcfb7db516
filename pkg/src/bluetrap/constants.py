"""Physical constants and unit helpers shared across the package.

Convention used everywhere in this package: *internal* frequencies and
decay rates are angular (rad/s), *user-facing* numbers (CLI, config files,
reports) are ordinary frequencies in MHz.  `TWO_PI` is the single
conversion factor between the two worlds; energies are expressed in
joules internally and in h*MHz in configs and reports.
"""

import math

from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import g as G_EARTH
from scipy.constants import h as PLANCK
from scipy.constants import hbar as HBAR
from scipy.constants import k as BOLTZMANN

TWO_PI = 2.0 * math.pi

# Rb-85 atomic mass (kg); standard value, configurable in TrapConfig.
RB85_MASS = 1.4099e-25


def h_mhz(frequency_mhz: float) -> float:
    """Energy in joules of h x (frequency in MHz)."""
    return PLANCK * frequency_mhz * 1e6


def to_h_mhz(energy_j: float) -> float:
    """Energy in h*MHz units from joules."""
    return energy_j / (PLANCK * 1e6)


def angular_mhz(frequency_mhz: float) -> float:
    """Angular frequency (rad/s) from an ordinary frequency in MHz."""
    return TWO_PI * frequency_mhz * 1e6


def to_mhz(angular: float) -> float:
    """Ordinary frequency in MHz from an angular frequency (rad/s)."""
    return angular / (TWO_PI * 1e6)


__all__ = [
    "SPEED_OF_LIGHT",
    "G_EARTH",
    "PLANCK",
    "HBAR",
    "BOLTZMANN",
    "TWO_PI",
    "RB85_MASS",
    "h_mhz",
    "to_h_mhz",
    "angular_mhz",
    "to_mhz",
]
