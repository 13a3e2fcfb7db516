"""Blue-trap potential landscape: energies, analytic forces, derived metrics.

The landscape is a sum of independently scaled mode intensities (all
repulsive) plus an optional gravity term m*g*y.  Because every trap field
is dark at the origin for the canonical mode choice (odd-offset axial
(0,0) mode, even-offset (1,0)/(0,1) pair), the composed potential is
*exactly* zero at the trap center, which is what keeps the transition
Stark shift negligible there.

Forces are closed-form gradients of Gaussian x polynomial x sin^2 factors;
a finite-difference oracle in the test suite pins them to <1e-6 relative.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np
from scipy.optimize import minimize_scalar

from .constants import G_EARTH, PLANCK, RB85_MASS, TWO_PI
from .errors import InvalidGeometryError, UnsupportedModeError
from .modes import (
    TEM00,
    TEM01,
    TEM10,
    CavityGeometry,
    ModeSpec,
    intensity_normalized,
    longitudinal_amplitude,
)

# Default FSR offsets of the trap fields relative to the probe: the axial
# pancake mode sits 3 FSR blue (even longitudinal index -> dark center),
# the transverse pair 2 FSR blue (odd index -> longitudinal antinode at
# the center plane where the ring must be tallest).
AXIAL_FSR_OFFSET = 3
RING_FSR_OFFSET = 2


@dataclass(frozen=True)
class TrapConfig:
    """The full potential landscape: geometry, mode list, gravity, atom.

    ``stark_coefficient`` converts a local ground-state light shift U/h into
    a transition-frequency shift; -2 is the two-level convention (excited
    state shifts equal and opposite).  ``stabilization_shift_mhz`` is an
    optional constant offset modelling a red stabilization laser.
    Instances are immutable; protocols switch fields by building a new
    config via :meth:`with_scales`.
    """

    geometry: CavityGeometry
    modes: tuple[ModeSpec, ...]
    gravity_on: bool = True
    atom_mass: float = RB85_MASS
    stark_coefficient: float = -2.0
    stabilization_shift_mhz: float = 0.0

    def __post_init__(self):
        if len(self.modes) == 0:
            raise InvalidGeometryError("a trap needs at least one mode")
        if self.atom_mass <= 0:
            raise InvalidGeometryError("atom_mass must be positive")
        object.__setattr__(self, "modes", tuple(self.modes))

    def with_scales(self, scales: Iterable[float]) -> "TrapConfig":
        """New config with amplitude_scale replaced mode-by-mode."""
        scales = tuple(scales)
        if len(scales) != len(self.modes):
            raise InvalidGeometryError(
                f"need {len(self.modes)} scales, got {len(scales)}"
            )
        new_modes = tuple(
            replace(m, amplitude_scale=s) for m, s in zip(self.modes, scales)
        )
        return replace(self, modes=new_modes)

    def with_gravity(self, on: bool) -> "TrapConfig":
        return replace(self, gravity_on=on)


@dataclass(frozen=True)
class TrapMetrics:
    """Derived trap numbers, all with gravity off.

    Barriers are in h*MHz along the three principal escape rays (+z axis,
    +y injection direction, +x funnel-wall direction); frequencies are the
    angular normal frequencies from the Hessian diagonal at the potential
    minimum.  A barrier below the resolution floor is reported as 0 and
    its direction listed in ``escape_directions`` instead of failing.
    """

    axial_barrier_hmhz: float
    radial_barrier_hmhz: float
    guiding_barrier_hmhz: float
    omega_x: float
    omega_y: float
    omega_z: float
    center_stark_shift_mhz: float
    minimum: tuple[float, float, float]
    escape_directions: tuple[str, ...]


def canonical_trap(
    geometry: CavityGeometry,
    axial_height: float,
    ring_height: float,
    *,
    guide_fraction: float = 1.0,
    closed: bool = True,
    axial_offset: int = AXIAL_FSR_OFFSET,
    ring_offset: int = RING_FSR_OFFSET,
    gravity_on: bool = True,
    atom_mass: float = RB85_MASS,
    stark_coefficient: float = -2.0,
    stabilization_shift_mhz: float = 0.0,
) -> TrapConfig:
    """Axial pancakes + transverse pair, closed (doughnut) or loading (funnel).

    Heights are joules.  Both (1,0) and (0,1) carry ``ring_height``: their
    normalized intensities add to exactly 1 on the ring, so the doughnut
    barrier equals the configured height.  With ``closed=False`` the (0,1)
    mode is scaled to zero and the (1,0) guide runs at ``guide_fraction``
    of the ring height, which is how the capture protocol loads the trap.
    """
    modes = (
        ModeSpec(TEM00, axial_offset, axial_height, 1.0),
        ModeSpec(TEM10, ring_offset, ring_height, 1.0 if closed else guide_fraction),
        ModeSpec(TEM01, ring_offset, ring_height, 1.0 if closed else 0.0),
    )
    return TrapConfig(
        geometry=geometry,
        modes=modes,
        gravity_on=gravity_on,
        atom_mass=atom_mass,
        stark_coefficient=stark_coefficient,
        stabilization_shift_mhz=stabilization_shift_mhz,
    )


def light_potential(config: TrapConfig, x, y, z):
    """Optical part of the potential (joules), no gravity."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    total = np.zeros(np.broadcast(x, y, z).shape)
    for mode in config.modes:
        h = mode.amplitude_scale * mode.barrier_height
        if h == 0.0:
            continue
        total = total + h * intensity_normalized(config.geometry, mode, x, y, z)
    return total


def potential_energy(config: TrapConfig, x, y, z):
    """Total potential energy (joules) including gravity when enabled."""
    u = light_potential(config, x, y, z)
    if config.gravity_on:
        u = u + config.atom_mass * G_EARTH * np.asarray(y, dtype=float)
    return u


def _mode_gradient(geometry: CavityGeometry, mode: ModeSpec, x, y, z):
    """Gradient of the normalized intensity of one mode."""
    w2 = geometry.waist**2
    n = geometry.longitudinal_index(mode.fsr_offset)
    L = geometry.length

    amp = longitudinal_amplitude(geometry, mode.fsr_offset, z)
    s2 = amp * amp
    # d/dz sin^2(pi*u) = (pi*n/L) * sin(2*pi*u); reduce u by its nearest
    # integer so the derivative is an exact 0 at the dark center.
    u = n * (np.asarray(z, dtype=float) / L + 0.5)
    r = u - np.round(u)
    ds2_dz = (np.pi * n / L) * np.sin(TWO_PI * r)

    rho2 = np.asarray(x, float) ** 2 + np.asarray(y, float) ** 2
    gauss = np.exp(-2.0 * rho2 / w2)
    order = tuple(mode.order)
    if order == TEM00:
        t = gauss
        dt_dx = -(4.0 * np.asarray(x, float) / w2) * t
        dt_dy = -(4.0 * np.asarray(y, float) / w2) * t
    elif order == TEM10:
        xx = np.asarray(x, float)
        t = (2.0 * xx * xx / w2) * np.e * gauss
        dt_dx = np.e * gauss * (4.0 * xx / w2) * (1.0 - 2.0 * xx * xx / w2)
        dt_dy = -(4.0 * np.asarray(y, float) / w2) * t
    elif order == TEM01:
        yy = np.asarray(y, float)
        t = (2.0 * yy * yy / w2) * np.e * gauss
        dt_dy = np.e * gauss * (4.0 * yy / w2) * (1.0 - 2.0 * yy * yy / w2)
        dt_dx = -(4.0 * np.asarray(x, float) / w2) * t
    else:
        raise UnsupportedModeError(f"transverse order {order}")

    return dt_dx * s2, dt_dy * s2, t * ds2_dz


def force(config: TrapConfig, x, y, z):
    """-grad U in newtons, stacked on the last axis as (..., 3)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    shape = np.broadcast(x, y, z).shape
    fx = np.zeros(shape)
    fy = np.zeros(shape)
    fz = np.zeros(shape)
    for mode in config.modes:
        h = mode.amplitude_scale * mode.barrier_height
        if h == 0.0:
            continue
        gx, gy, gz = _mode_gradient(config.geometry, mode, x, y, z)
        fx = fx - h * gx
        fy = fy - h * gy
        fz = fz - h * gz
    if config.gravity_on:
        fy = fy - config.atom_mass * G_EARTH
    return np.stack([fx, fy, fz], axis=-1)


def stark_shift(config: TrapConfig, x, y, z):
    """Transition-frequency shift in MHz at a point.

    stark_coefficient times the local ground-state light shift in MHz,
    plus the constant stabilization-laser offset.  Exactly the constant
    term at the dark trap center.
    """
    u_h_mhz = light_potential(config, x, y, z) / (PLANCK * 1e6)
    return config.stark_coefficient * u_h_mhz + config.stabilization_shift_mhz


def _axial_search_span(config: TrapConfig) -> float:
    """Distance along z to the first axial barrier top (antinode)."""
    spans = [
        config.geometry.mode_wavelength(m.fsr_offset) / 4.0
        for m in config.modes
        if tuple(m.order) == TEM00 and m.amplitude_scale * m.barrier_height > 0
    ]
    if spans:
        return min(spans)
    return config.geometry.mode_wavelength(0) / 4.0


def _barrier_along(config: TrapConfig, origin: np.ndarray, direction: np.ndarray,
                   t_max: float) -> float:
    """Maximum of U - U(origin) along origin + t*direction, t in (0, t_max]."""
    u0 = float(potential_energy(config, *origin))

    ts = np.linspace(0.0, t_max, 2049)[1:]
    pts = origin[None, :] + ts[:, None] * direction[None, :]
    us = potential_energy(config, pts[:, 0], pts[:, 1], pts[:, 2])
    i = int(np.argmax(us))
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, len(ts) - 1)]

    def neg_u(t):
        p = origin + t * direction
        return -float(potential_energy(config, p[0], p[1], p[2]))

    res = minimize_scalar(neg_u, bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-15})
    best = max(float(us[i]), -float(res.fun))
    return max(best - u0, 0.0)


def _find_minimum(config: TrapConfig) -> np.ndarray:
    """Locate the potential minimum near the origin (gravity off)."""
    from scipy.optimize import minimize

    w0 = config.geometry.waist

    def u(p):
        return float(potential_energy(config, p[0], p[1], p[2]))

    if u(np.zeros(3)) == 0.0:
        return np.zeros(3)  # canonical dark center, exact
    res = minimize(
        u,
        np.zeros(3),
        method="Nelder-Mead",
        options={
            "initial_simplex": np.vstack(
                [np.zeros(3), np.diag([w0 / 20, w0 / 20, 1e-8])]
            ),
            "xatol": 1e-13,
            "fatol": 1e-40,
            "maxfev": 4000,
        },
    )
    return np.asarray(res.x)


def trap_metrics(
    config: TrapConfig,
    *,
    hessian_step_axial: float = 1e-9,
    hessian_step_transverse: float = 1e-8,
) -> TrapMetrics:
    """Barriers, trap frequencies and center Stark shift.

    Computed with gravity off so the barriers match the quoted field-only
    heights.  Hessian steps default to 1e-9 m (axial) and 1e-8 m
    (transverse), small against lambda/2 and w0.
    """
    conf = config.with_gravity(False)
    r0 = _find_minimum(conf)
    w0 = conf.geometry.waist

    barrier_floor = PLANCK  # 1 h*Hz: below this a direction counts as open
    b_axial = _barrier_along(conf, r0, np.array([0.0, 0.0, 1.0]), _axial_search_span(conf))
    b_radial = _barrier_along(conf, r0, np.array([0.0, 1.0, 0.0]), 3.0 * w0)
    b_guide = _barrier_along(conf, r0, np.array([1.0, 0.0, 0.0]), 3.0 * w0)

    escapes = []
    for name, b in (("z", b_axial), ("y", b_radial), ("x", b_guide)):
        if b < barrier_floor:
            escapes.append(name)
    b_axial = 0.0 if b_axial < barrier_floor else b_axial
    b_radial = 0.0 if b_radial < barrier_floor else b_radial
    b_guide = 0.0 if b_guide < barrier_floor else b_guide

    omegas = []
    steps = (hessian_step_transverse, hessian_step_transverse, hessian_step_axial)
    u0 = float(potential_energy(conf, *r0))
    for axis, h in enumerate(steps):
        e = np.zeros(3)
        e[axis] = h
        upp = float(potential_energy(conf, *(r0 + e)))
        umm = float(potential_energy(conf, *(r0 - e)))
        curv = (upp - 2.0 * u0 + umm) / h**2
        omegas.append(np.sqrt(max(curv, 0.0) / conf.atom_mass))

    return TrapMetrics(
        axial_barrier_hmhz=b_axial / (PLANCK * 1e6),
        radial_barrier_hmhz=b_radial / (PLANCK * 1e6),
        guiding_barrier_hmhz=b_guide / (PLANCK * 1e6),
        omega_x=omegas[0],
        omega_y=omegas[1],
        omega_z=omegas[2],
        center_stark_shift_mhz=float(stark_shift(config, *r0)),
        minimum=tuple(float(v) for v in r0),
        escape_directions=tuple(escapes),
    )


def analytic_axial_frequency(config: TrapConfig) -> float:
    """k*sqrt(2*U_a/m) for the dominant axial mode (angular Hz)."""
    axial = [
        m for m in config.modes
        if tuple(m.order) == TEM00 and m.amplitude_scale * m.barrier_height > 0
    ]
    if not axial:
        return 0.0
    m = max(axial, key=lambda mm: mm.amplitude_scale * mm.barrier_height)
    k = TWO_PI / config.geometry.mode_wavelength(m.fsr_offset)
    return k * np.sqrt(2.0 * m.amplitude_scale * m.barrier_height / config.atom_mass)


def analytic_radial_frequency(config: TrapConfig) -> float:
    """sqrt(4*e*U_r/(m*w0^2)) for the doughnut ring (angular Hz)."""
    ring = [
        m for m in config.modes
        if tuple(m.order) in (TEM10, TEM01) and m.amplitude_scale * m.barrier_height > 0
    ]
    if not ring:
        return 0.0
    u_r = max(mm.amplitude_scale * mm.barrier_height for mm in ring)
    return np.sqrt(4.0 * np.e * u_r / (config.atom_mass * config.geometry.waist**2))


__all__ = [
    "AXIAL_FSR_OFFSET",
    "RING_FSR_OFFSET",
    "TrapConfig",
    "TrapMetrics",
    "canonical_trap",
    "light_potential",
    "potential_energy",
    "force",
    "stark_shift",
    "trap_metrics",
    "analytic_axial_frequency",
    "analytic_radial_frequency",
]
