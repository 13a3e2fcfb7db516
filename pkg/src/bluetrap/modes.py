"""Standing-wave Hermite-Gaussian cavity modes and their parity rules.

The trap is built from modes of one near-planar standing-wave cavity.  A
mode is labelled by its transverse order (0,0), (1,0) or (0,1) and by the
offset ``q`` of its longitudinal index from the probe's index ``n_p``
(i.e. the mode sits ``q`` free spectral ranges above the probe for
``q > 0``).  The longitudinal index fixes the standing-wave parity at the
cavity center z = 0:

* ``n_p`` odd         -> probe antinode at the center,
* ``n_p + q`` even    -> node at the center ("pancake" walls either side),
* ``n_p + q`` odd     -> antinode at the center.

A (0,0) mode with odd ``q`` therefore confines axially while staying dark
exactly where the probe is brightest, and the (1,0)/(0,1) pair with even
``q`` adds transverse walls whose nodal lines cross the center.  Waist
variation and Gouy phase are neglected: the Rayleigh range exceeds the
half-length by more than a factor 50, so w(z) = w0 to better than 1e-3
over the full mirror gap, and transverse-order resonance offsets are
absorbed into the nominal integer FSR offsets.

All intensities returned here are normalized so their global maximum over
the cavity volume is exactly 1; potential heights multiply them downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constants import SPEED_OF_LIGHT, TWO_PI
from .errors import InvalidGeometryError, OutsideCavityError, UnsupportedModeError

# Supported transverse orders (m, n) of TEM_mn.
TEM00 = (0, 0)
TEM10 = (1, 0)
TEM01 = (0, 1)
SUPPORTED_ORDERS = (TEM00, TEM10, TEM01)

# Peak of u^2 * exp(-2 u^2) sits at u = 1/sqrt(2) with value 1/(2e); the
# first-order transverse profiles are rescaled by 2e so their max is 1.
_E = float(np.e)


class Position(NamedTuple):
    """A single point in cavity coordinates (meters).

    x is the transverse coordinate carrying the (1,0) nodal plane, y the
    vertical atom-injection axis, z the cavity axis with origin midway
    between the mirrors.
    """

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class CavityGeometry:
    """Shared cavity geometry.

    ``length`` must equal ``probe_index * probe_wavelength / 2`` exactly so
    the probe standing wave closes on both mirrors; use :meth:`from_nominal`
    to build a geometry from a nominal mirror distance.  ``finesse`` is
    carried as metadata only.
    """

    length: float
    waist: float
    probe_wavelength: float
    probe_index: int
    finesse: float = 4.4e5

    def __post_init__(self):
        if self.length <= 0 or self.waist <= 0 or self.probe_wavelength <= 0:
            raise InvalidGeometryError("length, waist and wavelength must be positive")
        if self.probe_index < 1 or self.probe_index % 2 == 0:
            raise InvalidGeometryError(
                f"probe longitudinal index must be a positive odd integer, got {self.probe_index}"
            )
        exact = self.probe_index * self.probe_wavelength / 2.0
        if abs(self.length - exact) > 1e-12 * self.length:
            raise InvalidGeometryError(
                f"length {self.length!r} m is not probe_index*wavelength/2 = {exact!r} m; "
                "use CavityGeometry.from_nominal to round to a mode-matched length"
            )
        rayleigh = np.pi * self.waist**2 / self.probe_wavelength
        if rayleigh <= 10.0 * self.length / 2.0:
            raise InvalidGeometryError(
                f"Rayleigh range {rayleigh:.3g} m must exceed 10 x half-length "
                f"{5.0 * self.length:.3g} m for the constant-waist approximation"
            )

    @classmethod
    def from_nominal(
        cls,
        length: float,
        waist: float,
        probe_wavelength: float,
        probe_index: int | None = None,
        finesse: float = 4.4e5,
    ) -> "CavityGeometry":
        """Build a geometry from a nominal length.

        If ``probe_index`` is omitted it is set to the odd integer nearest
        2*length/wavelength; either way the stored length is redefined as
        ``probe_index * wavelength / 2`` so the boundary condition closes
        exactly.
        """
        if length <= 0:
            raise InvalidGeometryError("nominal length must be positive")
        if probe_index is None:
            ratio = 2.0 * length / probe_wavelength
            probe_index = int(2 * round((ratio - 1) / 2) + 1)  # nearest odd
        return cls(
            length=probe_index * probe_wavelength / 2.0,
            waist=waist,
            probe_wavelength=probe_wavelength,
            probe_index=probe_index,
            finesse=finesse,
        )

    def mode_wavelength(self, fsr_offset: int) -> float:
        """Wavelength of the longitudinal mode ``probe_index + fsr_offset``."""
        return 2.0 * self.length / self.longitudinal_index(fsr_offset)

    def longitudinal_index(self, fsr_offset: int) -> int:
        n = self.probe_index + fsr_offset
        if n < 1:
            raise InvalidGeometryError(f"longitudinal index n_p + q = {n} must be >= 1")
        return n


@dataclass(frozen=True)
class ModeSpec:
    """One blue trap field: transverse order, FSR offset, height, scale.

    ``barrier_height`` is the potential maximum of this mode alone in
    joules (configs quote it in h*MHz); ``amplitude_scale`` is the
    protocol-switchable fraction of that height currently applied.
    """

    order: tuple[int, int]
    fsr_offset: int
    barrier_height: float
    amplitude_scale: float = 1.0

    def __post_init__(self):
        if tuple(self.order) not in SUPPORTED_ORDERS:
            raise UnsupportedModeError(
                f"transverse order {self.order} not in {SUPPORTED_ORDERS}"
            )
        if self.barrier_height < 0:
            raise InvalidGeometryError("barrier_height must be >= 0 (blue, repulsive)")
        if not 0.0 <= self.amplitude_scale <= 1.0:
            raise InvalidGeometryError("amplitude_scale must lie in [0, 1]")


def free_spectral_range(geometry: CavityGeometry) -> float:
    """Free spectral range c/(2L) in Hz."""
    if geometry.length <= 0:
        raise InvalidGeometryError("cavity length must be positive")
    return SPEED_OF_LIGHT / (2.0 * geometry.length)


def _check_inside(geometry: CavityGeometry, z):
    if np.any(np.abs(z) > geometry.length / 2.0):
        raise OutsideCavityError(
            f"|z| exceeds L/2 = {geometry.length / 2.0:.4g} m"
        )


def _sin_reduced(u):
    """sin(pi*u) evaluated as (-1)^m sin(pi*(u-m)), m = round(u).

    The reduction makes the parity rules hold *exactly* in floating point:
    integer u gives 0.0 and half-integer u gives +-1.0, so mode nodes at
    the mirrors and at the cavity center are exact zeros rather than
    ~1e-14 residues of sin(n*pi).
    """
    u = np.asarray(u, dtype=float)
    m = np.round(u)
    r = np.sin(np.pi * (u - m))
    sign = np.where(np.mod(m, 2.0) == 0.0, 1.0, -1.0)
    return sign * r


def longitudinal_amplitude(geometry: CavityGeometry, fsr_offset: int, z):
    """Standing-wave field amplitude sin((n_p+q) pi (z/L + 1/2)) in [-1, 1].

    Vanishes exactly on both mirrors; at z = 0 it is +-1 for odd
    longitudinal index and exactly 0 for even index (the parity that makes
    an odd-q trap mode dark at the probe antinode).
    """
    _check_inside(geometry, z)
    n = geometry.longitudinal_index(fsr_offset)
    u = n * (np.asarray(z, dtype=float) / geometry.length + 0.5)
    return _sin_reduced(u)


def transverse_profile(order: tuple[int, int], waist: float, x, y):
    """Normalized transverse intensity of TEM_mn (max 1; m+n <= 1)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rho2 = x * x + y * y
    gauss = np.exp(-2.0 * rho2 / waist**2)
    order = tuple(order)
    if order == TEM00:
        return gauss
    if order == TEM10:
        return (2.0 * x * x / waist**2) * _E * gauss
    if order == TEM01:
        return (2.0 * y * y / waist**2) * _E * gauss
    raise UnsupportedModeError(f"transverse order {order} not in {SUPPORTED_ORDERS}")


def intensity_normalized(geometry: CavityGeometry, mode: ModeSpec, x, y, z):
    """Standing-wave intensity of one mode, normalized to global max 1.

    The "doughnut" is not a single mode here: it is two ModeSpec entries,
    (1,0) + (0,1), whose *intensities* add (non-degenerate eigenmodes, so
    the time-averaged pattern has no cross term).
    """
    amp = longitudinal_amplitude(geometry, mode.fsr_offset, z)
    return transverse_profile(mode.order, geometry.waist, x, y) * amp * amp


def probe_relative_intensity(geometry: CavityGeometry, x, y, z):
    """Normalized intensity of the probe mode itself (TEM00 at q = 0)."""
    amp = longitudinal_amplitude(geometry, 0, z)
    return transverse_profile(TEM00, geometry.waist, x, y) * amp * amp


def paper_geometry() -> CavityGeometry:
    """The shipped default geometry: L ~ 0.122 mm, w0 = 29 um, 780.2 nm probe.

    2L/lambda = 312.7 rounds to the odd index 313; the stored length is the
    mode-matched 313 * lambda / 2 = 0.1221013 mm.
    """
    return CavityGeometry.from_nominal(
        length=0.122e-3, waist=29e-6, probe_wavelength=780.2e-9
    )


__all__ = [
    "TEM00",
    "TEM10",
    "TEM01",
    "SUPPORTED_ORDERS",
    "Position",
    "CavityGeometry",
    "ModeSpec",
    "free_spectral_range",
    "longitudinal_amplitude",
    "transverse_profile",
    "intensity_normalized",
    "probe_relative_intensity",
    "paper_geometry",
]
