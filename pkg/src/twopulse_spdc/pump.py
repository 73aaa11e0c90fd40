"""Pump pulses: Gaussian single-pulse envelope, two-pulse train, quartz delay line.

Fourier convention: ``E(nu) = int E(t) exp(i nu t) dt`` with ``nu`` the
detuning from the pump carrier.  The single-pulse envelope is normalised so
that its spectrum equals 1 at the carrier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import C_UM_PER_FS, group_velocity, load_crystal, wavelength_to_omega

FOUR_LN2 = 4.0 * np.log(2.0)


@dataclass(frozen=True)
class PumpTrain:
    """A train of one or two identical transform-limited Gaussian pulses.

    Parameters
    ----------
    wavelength : float
        Carrier vacuum wavelength, um.
    fwhm : float
        Intensity FWHM duration of a single pulse, fs.
    delay : float
        Separation T_p between the two pulses, fs.  Ignored for one pulse.
    n_pulses : int
        1 or 2.
    carrier_phase : float
        Extra carrier phase of the leading pulse, rad.  With the default 0 the
        spectral fringes are ``cos((w - w_p) T_p / 2)`` and peak at the carrier.
    """

    wavelength: float
    fwhm: float
    delay: float = 0.0
    n_pulses: int = 2
    carrier_phase: float = 0.0

    def __post_init__(self):
        if self.wavelength <= 0:
            raise ValueError("pump wavelength must be positive")
        if self.fwhm <= 0:
            raise ValueError("pulse duration must be positive")
        if self.delay < 0:
            raise ValueError("pulse delay must be non-negative")
        if self.n_pulses not in (1, 2):
            raise ValueError("n_pulses must be 1 or 2")

    @property
    def omega(self):
        return wavelength_to_omega(self.wavelength)

    @property
    def spectral_sigma(self):
        """Standard deviation (rad/fs) of the single-pulse spectral intensity |E0|^2."""
        return np.sqrt(FOUR_LN2 / 2.0) / self.fwhm

    @property
    def two_pulse(self):
        return self.n_pulses == 2 and self.delay > 0


def single_pulse_spectrum(train, omega):
    """E0(omega): exp(-(w - w_p)^2 tau^2 / (8 ln 2)), real and equal to 1 at w_p."""
    nu = np.asarray(omega) - train.omega
    return np.exp(-(nu * train.fwhm) ** 2 / (2.0 * FOUR_LN2))


def single_pulse_time(train, t):
    """E0(t), the Gaussian whose transform is :func:`single_pulse_spectrum`."""
    a = FOUR_LN2 / (2.0 * train.fwhm**2)
    return np.sqrt(a / np.pi) * np.exp(-a * np.asarray(t, dtype=float) ** 2)


def fringe_factor(train, omega):
    """cos((w - w_p) T_p / 2 + phase / 2) for a two-pulse train, 1 otherwise."""
    if train.n_pulses == 1:
        return np.ones_like(np.asarray(omega, dtype=float))
    nu = np.asarray(omega) - train.omega
    return np.cos(0.5 * (nu * train.delay + train.carrier_phase))


def envelope_spectrum(train, omega):
    """Envelope spectrum E0(w) cos((w - w_p) T_p / 2) at absolute frequency ``omega``."""
    return (single_pulse_spectrum(train, omega) * fringe_factor(train, omega)).astype(complex)


def envelope_time(train, t):
    """Time-domain envelope E0(t) + E0(t + T_p) exp(-i phase).

    The trailing pulse sits at t = 0 and the leading one at t = -T_p, so the
    transform equals ``2 exp(-i (nu T_p + phase) / 2)`` times
    :func:`envelope_spectrum`.  A single-pulse train returns E0(t).
    """
    t = np.asarray(t, dtype=float)
    first = single_pulse_time(train, t).astype(complex)
    if train.n_pulses == 1:
        return first
    return first + single_pulse_time(train, t + train.delay) * np.exp(-1j * train.carrier_phase)


def centred_envelope_time(train, t):
    """Envelope with the pulses at +-T_p/2 whose transform is exactly :func:`envelope_spectrum`."""
    t = np.asarray(t, dtype=float)
    if train.n_pulses == 1:
        return single_pulse_time(train, t).astype(complex)
    half = 0.5 * train.delay
    phase = 0.5 * train.carrier_phase
    return 0.5 * (
        single_pulse_time(train, t - half) * np.exp(1j * phase)
        + single_pulse_time(train, t + half) * np.exp(-1j * phase)
    )


@dataclass(frozen=True)
class DelayLine:
    """Birefringent quartz rods splitting one pulse into two (length in um)."""

    length: float
    crystal_name: str = "quartz"

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("quartz length must be non-negative")


def quartz_delay(line, wavelength):
    """Group delay L_q |1/u_o - 1/u_e| (fs) between the two output pulses."""
    if line.length == 0:
        return 0.0
    quartz = load_crystal(line.crystal_name)
    # propagation normal to the optic axis: the e-wave sees the principal index
    u_o = group_velocity(quartz.ordinary, wavelength)
    u_e = group_velocity(quartz.extraordinary, wavelength, np.pi / 2)
    return float(line.length * abs(1.0 / u_o - 1.0 / u_e))


def delay_per_length(wavelength, crystal_name="quartz"):
    """Quartz group-delay difference per mm (fs/mm)."""
    return quartz_delay(DelayLine(1000.0, crystal_name), wavelength)
