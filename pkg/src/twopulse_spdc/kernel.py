"""Biphoton spectral amplitude for a type-II crystal pumped by a pulse train.

Geometry: the pump travels along z (the crystal normal) as an extraordinary
wave.  The optic axis lies in the x-z plane at the cut angle from z, and the
signal is emitted at internal angle ``theta`` in the same plane.  Transverse
momentum conservation fixes the idler transverse wave vector, so the
transverse delta function of the amplitude is never sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dispersion import (
    C_UM_PER_FS,
    EXTRAORDINARY,
    ORDINARY,
    omega_to_wavelength,
    refractive_index,
)
from .errors import KinematicError, OracleError
from .pump import centred_envelope_time, fringe_factor, single_pulse_spectrum

#: Angular range (rad, internal) inside which the near-collinear model is used.
MAX_SIGNAL_ANGLE = 0.2


@dataclass(frozen=True)
class SignalMode:
    omega: float
    theta: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"signal frequency must be positive, got {self.omega}")
        if not abs(self.theta) < MAX_SIGNAL_ANGLE:
            raise ValueError(f"|theta| must stay below {MAX_SIGNAL_ANGLE} rad, got {self.theta}")


@dataclass(frozen=True)
class IdlerMode:
    omega: float
    kx: float
    kz: float


@dataclass(frozen=True)
class BiphotonAmplitude:
    """Factorised two-photon amplitude (arbitrary units).

    ``envelope`` is the single-pulse spectrum E0 at the summed frequency,
    ``cosine`` the two-pulse fringe factor and ``sinc`` the phase-matching
    factor.  Each may be an array when several idler frequencies are given.
    """

    envelope: np.ndarray
    cosine: np.ndarray
    sinc: np.ndarray

    @property
    def value(self):
        return (self.envelope * self.cosine * self.sinc).astype(complex)

    @property
    def intensity(self):
        return (self.envelope * self.cosine * self.sinc) ** 2


def sinc(x):
    """sin(x)/x with a series branch near zero."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 - x * x / 6.0, np.sin(safe) / safe)


def wavenumber(crystal, axis, omega, direction=0.0):
    """|k| (rad/um) of a photon of polarization ``axis`` travelling at ``direction`` from z."""
    lam = omega_to_wavelength(omega)
    medium = crystal.crystal.medium(axis)
    if axis == ORDINARY:
        n = refractive_index(medium, lam)
    elif crystal.e_index_model == "ellipsoid":
        n = refractive_index(medium, lam, crystal.cut_angle - direction)
    else:
        n = refractive_index(medium, lam, crystal.cut_angle)
    return n * omega / C_UM_PER_FS


@lru_cache(maxsize=256)
def pump_terms(crystal, pump):
    """(k_p, 1/u_p) of the extraordinary pump along z, in rad/um and fs/um."""
    k_p = wavenumber(crystal, EXTRAORDINARY, pump.omega)
    inv_up = 1.0 / crystal.group_velocity(EXTRAORDINARY, pump.wavelength)
    return float(k_p), float(inv_up)


def signal_wavevector(signal, crystal):
    """(k_sx, k_sz) of the detected photon."""
    k_s = wavenumber(crystal, crystal.signal_axis, signal.omega, signal.theta)
    return k_s * np.sin(signal.theta), k_s * np.cos(signal.theta)


def idler_transverse(signal, crystal):
    """Idler transverse wave vector -k_s sin(theta_s), rad/um."""
    return -signal_wavevector(signal, crystal)[0]


def idler_longitudinal(crystal, omega_i, kx):
    """Forward root k_iz of the idler dispersion relation at fixed k_ix.

    For an extraordinary idler with the ellipsoid model the relation
    k_par^2 / n_o^2 + k_perp^2 / n_e^2 = (w/c)^2 is solved exactly, where
    k_par and k_perp are the components along and across the optic axis.
    """
    omega_i = np.asarray(omega_i, dtype=float)
    axis = crystal.idler_axis
    if axis == ORDINARY or crystal.e_index_model == "fixed":
        k = wavenumber(crystal, axis, omega_i)
        disc = k * k - kx * kx
        if np.any(disc < 0):
            raise KinematicError("evanescent idler: |k_ix| exceeds |k_i|")
        return np.sqrt(disc)
    lam = omega_to_wavelength(omega_i)
    e = crystal.crystal.extraordinary
    e.check_range(lam)
    ne2 = e.n_squared(lam)[0]
    no2 = e.ordinary.n_squared(lam)[0]
    s, c = np.sin(crystal.cut_angle), np.cos(crystal.cut_angle)
    u = omega_i / C_UM_PER_FS
    a = c * c / no2 + s * s / ne2
    b = 2.0 * kx * s * c * (1.0 / no2 - 1.0 / ne2)
    cc = kx * kx * (s * s / no2 + c * c / ne2) - u * u
    disc = b * b - 4.0 * a * cc
    if np.any(disc < 0):
        raise KinematicError("evanescent idler: no real k_iz for the requested k_ix")
    return (-b + np.sqrt(disc)) / (2.0 * a)


def idler_mode(signal, omega_i, crystal):
    kx = idler_transverse(signal, crystal)
    return IdlerMode(float(omega_i), float(kx), float(idler_longitudinal(crystal, omega_i, kx)))


def longitudinal_mismatch(signal, omega_i, crystal, pump):
    """Delta = k_p - k_sz - k_iz + (w_s + w_i - w_p)/u_p in rad/um."""
    k_p, inv_up = pump_terms(crystal, pump)
    k_sx, k_sz = signal_wavevector(signal, crystal)
    k_iz = idler_longitudinal(crystal, omega_i, -k_sx)
    detuning = signal.omega + np.asarray(omega_i, dtype=float) - pump.omega
    return k_p - k_sz - k_iz + detuning * inv_up


def idler_kz_slope(crystal, omega_i, kx, step=1e-6):
    """dk_iz/dw_i at fixed k_ix (fs/um), by a central difference."""
    omega_i = np.asarray(omega_i, dtype=float)
    return (
        idler_longitudinal(crystal, omega_i + step, kx) - idler_longitudinal(crystal, omega_i - step, kx)
    ) / (2.0 * step)


def biphoton_amplitude(signal, omega_i, crystal, pump):
    """Two-photon amplitude E0(w_s + w_i) cos(...) sinc(Delta L / 2)."""
    omega_sum = signal.omega + np.asarray(omega_i, dtype=float)
    delta = longitudinal_mismatch(signal, omega_i, crystal, pump)
    return BiphotonAmplitude(
        envelope=single_pulse_spectrum(pump, omega_sum),
        cosine=fringe_factor(pump, omega_sum),
        sinc=sinc(0.5 * delta * crystal.length),
    )


def _oracle_level(nu, kappa, inv_up, pump, z_nodes, z_weights, t_step, t_lo, t_hi):
    t = np.arange(t_lo, t_hi + 0.5 * t_step, t_step)
    carrier = np.exp(1j * nu * t)
    total = 0.0 + 0.0j
    for z, w in zip(z_nodes, z_weights):
        inner = np.sum(centred_envelope_time(pump, t - z * inv_up) * carrier) * t_step
        total += w * inner * np.exp(1j * kappa * z)
    return total


def biphoton_amplitude_oracle(
    signal,
    omega_i,
    crystal,
    pump,
    z_start=None,
    t_step=None,
    n_z=128,
    tol=1e-3,
    target=1e-7,
    max_levels=6,
):
    """Brute-force time and depth integral of the first-order amplitude.

    Evaluates int dt' int dz E(t' - z/u_p) exp(i nu t' + i kappa z) with
    nu = w_s + w_i - w_p and kappa = k_p - k_sz - k_iz, by a trapezoid rule
    in t' and Gauss-Legendre in z, refining both until two successive levels
    agree to ``target``.  The crystal occupies [z_start, z_start + L]
    (default centred on z = 0, which makes the result real-proportional to
    :func:`biphoton_amplitude`); other placements only add the phase
    exp(i Delta z_start).  Raises :class:`OracleError` when the refinement
    never gets below ``tol``.  Test oracle only: cost grows with L / u_p.
    """
    length = crystal.length
    if z_start is None:
        z_start = -0.5 * length
    k_p, inv_up = pump_terms(crystal, pump)
    k_sx, k_sz = signal_wavevector(signal, crystal)
    kappa = k_p - k_sz - float(idler_longitudinal(crystal, omega_i, -k_sx))
    nu = signal.omega + omega_i - pump.omega

    tau = pump.fwhm
    half = 0.5 * pump.delay * (pump.n_pulses == 2) + 7.0 * tau
    t_lo = z_start * inv_up - half
    t_hi = (z_start + length) * inv_up + half
    if t_step is None:
        t_step = min(tau / 12.0, np.pi / (4.0 * max(abs(nu), 1e-12)))

    previous = None
    err = np.inf
    for _ in range(max_levels):
        x, w = np.polynomial.legendre.leggauss(n_z)
        z_nodes = z_start + 0.5 * length * (x + 1.0)
        z_weights = 0.5 * length * w
        current = _oracle_level(nu, kappa, inv_up, pump, z_nodes, z_weights, t_step, t_lo, t_hi)
        if previous is not None:
            err = abs(current - previous) / max(abs(current), 1e-300)
            if err < target:
                return current
        previous = current
        t_step *= 0.5
        n_z *= 2
    if err < tol:
        return previous
    raise OracleError(f"oracle refinement stalled at relative change {err:.3g}", achieved=err)
