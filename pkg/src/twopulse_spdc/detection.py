"""Signal-arm observables: singles rate, its delta-limit, and angular scans."""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .dispersion import omega_to_wavelength, wavelength_to_omega
from .errors import (
    KinematicError,
    NoStationaryPointError,
    QuadratureError,
    SPDCError,
    WavelengthRangeError,
)
from .kernel import (
    SignalMode,
    biphoton_amplitude,
    idler_kz_slope,
    idler_transverse,
    longitudinal_mismatch,
    pump_terms,
)
from .pump import fringe_factor, single_pulse_spectrum

FILTER_SHAPES = ("gaussian", "rectangular")
_GL_NODES = 8


@dataclass(frozen=True)
class DetectorModel:
    """Lens, interference filter and scan positions of the signal detector.

    Lengths in um.  ``positions`` are detector displacements in the lens
    focal plane; ``filter_nodes`` sets the frequency quadrature across the
    filter passband.
    """

    focal_length: float
    filter_center: float
    filter_fwhm: float
    positions: tuple
    filter_shape: str = "gaussian"
    filter_nodes: int = 21

    def __post_init__(self):
        if self.focal_length <= 0:
            raise ValueError("focal length must be positive")
        if self.filter_fwhm <= 0 or self.filter_center <= 0:
            raise ValueError("filter centre and width must be positive")
        if self.filter_shape not in FILTER_SHAPES:
            raise ValueError(f"filter_shape must be one of {FILTER_SHAPES}")
        if self.filter_nodes < 15:
            raise ValueError("the filter passband needs at least 15 quadrature nodes")
        x = np.asarray(self.positions, dtype=float)
        if x.ndim != 1 or len(x) < 2 or not np.all(np.diff(x) > 0):
            raise ValueError("scan positions must be strictly increasing, at least two")

    def filter_quadrature(self):
        """Nodes (rad/fs) and weights of the filter-weighted dw_s integral."""
        lam0, fwhm = self.filter_center, self.filter_fwhm
        span = 1.5 * fwhm if self.filter_shape == "gaussian" else 0.5 * fwhm
        w_lo = wavelength_to_omega(lam0 + span)
        w_hi = wavelength_to_omega(lam0 - span)
        x, w = np.polynomial.legendre.leggauss(self.filter_nodes)
        omega = 0.5 * (w_hi - w_lo) * x + 0.5 * (w_hi + w_lo)
        weights = 0.5 * (w_hi - w_lo) * w
        if self.filter_shape == "gaussian":
            lam = omega_to_wavelength(omega)
            weights = weights * np.exp(-4.0 * np.log(2.0) * ((lam - lam0) / fwhm) ** 2)
        return omega, weights


@dataclass
class AngularSpectrum:
    """Signal rate (arbitrary units) against detector position x (um)."""

    x: np.ndarray
    theta: np.ndarray
    rate: np.ndarray
    metadata: list = field(default_factory=list)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.theta = np.asarray(self.theta, dtype=float)
        self.rate = np.asarray(self.rate, dtype=float)
        if not (len(self.x) == len(self.theta) == len(self.rate)):
            raise ValueError("x, theta and rate must have equal length")

    def normalized(self):
        return self.rate / np.max(self.rate)

    def to_csv(self, fh=None, trailer=()):
        """Write ``#``-prefixed metadata, the header and one row per point.

        Returns the text when ``fh`` is None.
        """
        out = io.StringIO() if fh is None else fh
        for line in self.metadata:
            out.write(f"# {line}\n")
        out.write("x_um,theta_s_rad,rate\n")
        for x, th, r in zip(self.x, self.theta, self.rate):
            out.write(f"{x:.12g},{th:.12g},{r:.12g}\n")
        for line in trailer:
            out.write(f"# {line}\n")
        if fh is None:
            return out.getvalue()
        return None


def solve_idler_frequency(signal, crystal, pump, start_step=0.01, max_step=1.0):
    """Idler frequency (rad/fs) that zeroes the longitudinal mismatch.

    Searches outward from w_p - w_s with a growing symmetric bracket, then
    refines with Brent's method.
    """
    centre = pump.omega - signal.omega

    def mismatch(w):
        return float(longitudinal_mismatch(signal, w, crystal, pump))

    try:
        f0 = mismatch(centre)
    except (WavelengthRangeError, KinematicError) as exc:
        raise NoStationaryPointError(f"idler at w_p - w_s is not propagating: {exc}") from exc
    if f0 == 0.0:
        return centre
    step = start_step
    while step <= max_step:
        for other in (centre + step, centre - step):
            try:
                f1 = mismatch(other)
            except (WavelengthRangeError, KinematicError):
                continue
            if np.sign(f1) != np.sign(f0):
                lo, hi = sorted((centre, other))
                return brentq(mismatch, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=200)
        step *= 2.0
    raise NoStationaryPointError(
        f"no phase-matched idler within +-{max_step} rad/fs of {centre:.6g} rad/fs"
    )


def _composite_gl(func, lo, hi, n_panels):
    x, w = np.polynomial.legendre.leggauss(_GL_NODES)
    edges = np.linspace(lo, hi, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return float(np.sum(weights * func(nodes))), nodes.size


def integrate_adaptive(func, lo, hi, panel_width, rel_tol=1e-4, max_evals=200_000):
    """Composite Gauss-Legendre with panel doubling until successive sums agree.

    Returns ``(value, achieved)`` where ``achieved`` is the last relative change.
    """
    n = max(1, int(np.ceil((hi - lo) / panel_width)))
    prev, used = _composite_gl(func, lo, hi, n)
    change = np.inf
    while True:
        n *= 2
        if used + n * _GL_NODES > max_evals:
            raise QuadratureError(
                f"integral not converged within {max_evals} evaluations "
                f"(relative change {change:.3g})",
                achieved=change,
            )
        cur, evals = _composite_gl(func, lo, hi, n)
        used += evals
        scale = abs(cur)
        change = abs(cur - prev) / scale if scale > 0 else (0.0 if prev == 0 else np.inf)
        if change <= rel_tol:
            return cur, change
        prev = cur


def idler_window(signal, crystal, pump, side_lobes=8):
    """Idler-frequency integration window and the phase-matched root.

    Covers the sinc main lobe plus ``side_lobes`` side lobes on each side,
    joined with +-7 sigma of the pump spectral intensity.  Returns
    ``(lo, hi, panel_width, omega_star)``.
    """
    omega_star = solve_idler_frequency(signal, crystal, pump)
    kx = idler_transverse(signal, crystal)
    _, inv_up = pump_terms(crystal, pump)
    slope = abs(inv_up - float(idler_kz_slope(crystal, omega_star, kx)))
    lobe = 2.0 * np.pi / (crystal.length * slope)
    sigma = pump.spectral_sigma
    base = pump.omega - signal.omega
    nu_star = omega_star - base
    lo = base + min(nu_star - (side_lobes + 1) * lobe, -7.0 * sigma)
    hi = base + max(nu_star + (side_lobes + 1) * lobe, 7.0 * sigma)
    medium = crystal.crystal.medium(crystal.idler_axis)
    lam_lo, lam_hi = medium.valid_range
    lo = max(lo, wavelength_to_omega(lam_hi))
    hi = min(hi, wavelength_to_omega(lam_lo))
    width = min(0.5 * lobe, 0.5 * sigma)
    if pump.two_pulse:
        width = min(width, 0.5 * np.pi / pump.delay)
    return lo, hi, width, omega_star


def singles_rate(signal, crystal, pump, rel_tol=1e-4, max_evals=200_000, side_lobes=8):
    """Signal counting rate: |F|^2 integrated over idler frequency.

    The measure dk_iz is rewritten as |dk_iz/dw_i| dw_i at the fixed idler
    transverse wave vector.
    """
    lo, hi, width, _ = idler_window(signal, crystal, pump, side_lobes)
    kx = idler_transverse(signal, crystal)

    def integrand(omega_i):
        amp = biphoton_amplitude(signal, omega_i, crystal, pump)
        return amp.intensity * np.abs(idler_kz_slope(crystal, omega_i, kx))

    value, _ = integrate_adaptive(integrand, lo, hi, width, rel_tol, max_evals)
    return value


def singles_rate_deltalimit(signal, crystal, pump):
    """Rate when the sinc pins the idler to its phase-matched frequency."""
    omega_sum = signal.omega + solve_idler_frequency(signal, crystal, pump)
    return float((single_pulse_spectrum(pump, omega_sum) * fringe_factor(pump, omega_sum)) ** 2)


def internal_angle(crystal, detector, x):
    """Internal signal angle for detector displacement ``x`` (small-angle refraction)."""
    n_s = crystal.index(crystal.signal_axis, detector.filter_center)
    return np.asarray(x, dtype=float) / detector.focal_length / n_s


def scan_rates(crystal, pump, detector, rel_tol=1e-4, max_evals=200_000, workers=None, deltalimit=False):
    """Filter-integrated rate at every detector position.

    Points are independent; with ``workers`` > 1 they are farmed out to a
    thread pool and the result is identical to the serial one.
    """
    x = np.asarray(detector.positions, dtype=float)
    theta = internal_angle(crystal, detector, x)
    omega_nodes, weights = detector.filter_quadrature()

    def point(args):
        xi, th = args
        total = 0.0
        try:
            for w_s, wt in zip(omega_nodes, weights):
                mode = SignalMode(float(w_s), float(th))
                if deltalimit:
                    total += wt * singles_rate_deltalimit(mode, crystal, pump)
                else:
                    total += wt * singles_rate(mode, crystal, pump, rel_tol, max_evals)
        except SPDCError as exc:
            raise type(exc)(f"scan point x = {xi:.6g} um: {exc}") from exc
        return total

    jobs = list(zip(x, theta))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rates = list(pool.map(point, jobs))
    else:
        rates = [point(job) for job in jobs]
    return x, theta, np.array(rates)


def angular_scan(config, workers=None, deltalimit=False):
    """Angular spectrum for an :class:`~twopulse_spdc.config.ExperimentConfig`."""
    crystal = config.crystal_cut()
    pump = config.pump_train()
    detector = config.detector_model()
    x, theta, rate = scan_rates(
        crystal,
        pump,
        detector,
        rel_tol=config.quadrature.rel_tol,
        max_evals=config.quadrature.max_evals,
        workers=workers,
        deltalimit=deltalimit,
    )
    return AngularSpectrum(x, theta, rate, metadata=config.to_lines())
