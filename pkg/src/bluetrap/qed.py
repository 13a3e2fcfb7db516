"""Steady state of the driven atom-cavity system.

Sign and unit conventions (fixed here once, used everywhere):

* every rate in this module is angular (rad/s); CLI and reports divide by
  2*pi to display MHz,
* detunings: delta_c = omega_laser - omega_cavity,
  delta_ac = omega_atom - omega_cavity (so the shipped -2*pi*35 MHz means
  the atom sits *below* the cavity), and the laser-atom detuning is
  delta_a = delta_c - delta_ac,
* kappa is the cavity *field* decay, gamma the atomic *polarization*
  decay; the corresponding energy/population rates are 2*kappa and
  2*gamma, which is why a free-space scattering rate is
  2*gamma*<sigma+ sigma->  (already an ordinary events-per-second rate).

Worked example at the shipped operating point: g = 0.83 * 2*pi*16 MHz,
gamma = 2*pi*3 MHz, delta_c = 0, delta_ac = -2*pi*35 MHz gives
delta_a = +2*pi*35 MHz, so <sigma+ sigma-> / <a+ a> =
g^2/(delta_a^2 + gamma^2) = 13.28^2/(35^2+3^2) = 0.143: a cavity photon
number of 0.022 drives an atomic excitation of 3.1e-3 and a scattering
rate 2*gamma*3.1e-3 ~ 117 kHz.

The weak-excitation formulas are the analytic route used throughout; the
truncated master equation solver below is the independent oracle that
bounds their validity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .constants import TWO_PI
from .errors import InvalidParamsError, SolverError
from .modes import CavityGeometry, probe_relative_intensity

SATURATION_EXCITATION = 0.1
SATURATION_PHOTONS = 0.5
TRUNCATION_POPULATION = 1e-6


@dataclass(frozen=True)
class QedParams:
    """Coupled-system rates and detunings, all angular (rad/s)."""

    g0: float
    kappa: float
    gamma: float
    delta_c: float = 0.0
    delta_ac: float = 0.0
    drive_eta: float = 0.0
    detection_efficiency: float = 1.0

    def __post_init__(self):
        if self.kappa <= 0 or self.gamma <= 0:
            raise InvalidParamsError("kappa and gamma must be positive")
        if not 0.0 <= self.detection_efficiency <= 1.0:
            raise InvalidParamsError("detection_efficiency must lie in [0, 1]")

    @classmethod
    def from_mhz(
        cls,
        g0: float = 16.0,
        kappa: float = 1.4,
        gamma: float = 3.0,
        delta_c: float = 0.0,
        delta_ac: float = -35.0,
        drive_eta: float = 0.0,
        detection_efficiency: float = 1.0,
    ) -> "QedParams":
        """Build from ordinary frequencies in MHz (the paper's X/2pi numbers)."""
        s = TWO_PI * 1e6
        return cls(
            g0=g0 * s,
            kappa=kappa * s,
            gamma=gamma * s,
            delta_c=delta_c * s,
            delta_ac=delta_ac * s,
            drive_eta=drive_eta * s,
            detection_efficiency=detection_efficiency,
        )

    @property
    def delta_a(self) -> float:
        """Laser-atom detuning delta_c - delta_ac (rad/s)."""
        return self.delta_c - self.delta_ac

    def with_drive_for_empty_photons(self, n_empty: float) -> "QedParams":
        """Set the drive so the *empty* cavity holds ``n_empty`` photons on
        bare resonance (delta_c = 0): eta = kappa * sqrt(n)."""
        if n_empty < 0:
            raise InvalidParamsError("photon number must be >= 0")
        return replace(self, drive_eta=self.kappa * np.sqrt(n_empty))

    def with_drive_for_photons(self, n_target: float, g_eff: float) -> "QedParams":
        """Set the drive so the *coupled* system holds ``n_target`` photons
        at this params' detunings with coupling ``g_eff``."""
        if n_target < 0:
            raise InvalidParamsError("photon number must be >= 0")
        d = _denominator(self, g_eff)
        return replace(self, drive_eta=np.sqrt(n_target) * abs(d))

    def with_(self, **kwargs) -> "QedParams":
        return replace(self, **kwargs)


@dataclass
class QedResponse:
    """Steady-state observables.

    ``field_ratio`` is <a> relative to the empty resonant cavity amplitude
    eta/kappa, so |field_ratio|^2 is the relative transmission.
    ``scatter_rate`` is the free-space scattering rate 2*gamma*<s+ s->
    in events per second.
    """

    field_ratio: complex
    photon_number: float
    atomic_excitation: float
    scatter_rate: float
    saturated: bool = False
    truncation_warning: bool = False


def _denominator(params: QedParams, g_eff: float) -> complex:
    return (params.kappa - 1j * params.delta_c) + g_eff**2 / (
        params.gamma - 1j * params.delta_a
    )


def steady_state_response(params: QedParams, g_eff: float) -> QedResponse:
    """Weak-excitation (linear) steady state of the driven system.

    Solves the coupled-oscillator fixed point
    a = eta / [(kappa - i*delta_c) + g^2/(gamma - i*delta_a)] and derives
    photon number, atomic excitation and free-space scattering rate.
    Flags ``saturated`` when the linearization is no longer trustworthy.
    """
    d = _denominator(params, g_eff)
    a = params.drive_eta / d
    photon = abs(a) ** 2
    excitation = photon * g_eff**2 / (params.delta_a**2 + params.gamma**2)
    saturated = photon > SATURATION_PHOTONS or excitation > SATURATION_EXCITATION
    if saturated:
        warnings.warn(
            "drive outside the weak-excitation regime; linear steady state "
            f"unreliable (photons={photon:.3g}, excitation={excitation:.3g})",
            stacklevel=2,
        )
    return QedResponse(
        field_ratio=params.kappa / d,
        photon_number=photon,
        atomic_excitation=excitation,
        scatter_rate=2.0 * params.gamma * excitation,
        saturated=saturated,
    )


def relative_transmission(params: QedParams, g_eff: float) -> float:
    """|field_ratio|^2: 1 for the empty cavity on resonance."""
    return abs(params.kappa / _denominator(params, g_eff)) ** 2


def position_dependent_coupling(geometry: CavityGeometry, x, y, z, g0: float):
    """g(r) = g0 * sqrt(probe intensity): Gaussian envelope x |sin(k z')|."""
    return g0 * np.sqrt(probe_relative_intensity(geometry, x, y, z))


def _destroy(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = np.sqrt(n)
    return a


def _jc_operators(fock_truncation: int):
    dim_f = fock_truncation + 1
    a = np.kron(np.eye(2), _destroy(dim_f))
    sm = np.kron(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), np.eye(dim_f))
    return a, sm


def steady_state_density_matrix(
    params: QedParams, g_eff: float, fock_truncation: int = 5
) -> np.ndarray:
    """Steady-state density matrix of the driven Jaynes-Cummings Lindbladian.

    Collapse channels sqrt(2*kappa)*a and sqrt(2*gamma)*sigma-.  The
    singular Liouvillian is solved as a bordered system: its first row is
    replaced by the unit-trace constraint (deterministic, no
    eigen-decomposition).
    """
    if fock_truncation < 2:
        raise InvalidParamsError("fock_truncation must be >= 2")
    a, sm = _jc_operators(fock_truncation)
    ad, smd = a.conj().T, sm.conj().T
    dim = a.shape[0]

    h = (
        -params.delta_c * ad @ a
        - params.delta_a * smd @ sm
        + g_eff * (ad @ sm + a @ smd)
        + 1j * params.drive_eta * (ad - a)
    )
    eye = np.eye(dim)
    liou = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for rate, c in ((2.0 * params.kappa, a), (2.0 * params.gamma, sm)):
        cdc = c.conj().T @ c
        liou += rate * (
            np.kron(c.conj(), c)
            - 0.5 * np.kron(eye, cdc)
            - 0.5 * np.kron(cdc.T, eye)
        )

    trace_row = np.zeros(dim * dim, dtype=complex)
    trace_row[:: dim + 1] = 1.0
    liou[0, :] = trace_row
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[0] = 1.0
    try:
        rho_vec = np.linalg.solve(liou, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(
            f"steady-state solve failed (condition ~ {np.linalg.cond(liou):.3g})"
        ) from exc
    if not np.all(np.isfinite(rho_vec)):
        raise SolverError(
            f"steady-state solve returned non-finite entries "
            f"(condition ~ {np.linalg.cond(liou):.3g})"
        )
    # vec is column-stacked: vec(rho)[i + dim*j] = rho[i, j].
    return rho_vec.reshape((dim, dim), order="F")


def master_equation_steady_state(
    params: QedParams, g_eff: float, fock_truncation: int = 5
) -> QedResponse:
    """Independent oracle for the weak-excitation formulas.

    Solves the full truncated master equation and extracts the same
    observables as :func:`steady_state_response`.  Sets
    ``truncation_warning`` when the top Fock level holds more than 1e-6
    population (the truncated answer is then suspect).
    """
    rho = steady_state_density_matrix(params, g_eff, fock_truncation)
    a, sm = _jc_operators(fock_truncation)
    ad, smd = a.conj().T, sm.conj().T
    dim_f = fock_truncation + 1

    photon = float(np.real(np.trace(ad @ a @ rho)))
    excitation = float(np.real(np.trace(smd @ sm @ rho)))
    a_mean = complex(np.trace(a @ rho))

    pops = np.real(np.diag(rho))
    top_pop = float(pops[dim_f - 1] + pops[2 * dim_f - 1])
    truncated = top_pop > TRUNCATION_POPULATION
    if truncated:
        warnings.warn(
            f"top Fock level holds {top_pop:.2e} population; "
            "increase fock_truncation",
            stacklevel=2,
        )

    eta = params.drive_eta
    ratio = a_mean * params.kappa / eta if eta != 0.0 else 0.0j
    return QedResponse(
        field_ratio=ratio,
        photon_number=photon,
        atomic_excitation=excitation,
        scatter_rate=2.0 * params.gamma * excitation,
        saturated=photon > SATURATION_PHOTONS or excitation > SATURATION_EXCITATION,
        truncation_warning=truncated,
    )


__all__ = [
    "QedParams",
    "QedResponse",
    "steady_state_response",
    "relative_transmission",
    "position_dependent_coupling",
    "master_equation_steady_state",
    "steady_state_density_matrix",
]
