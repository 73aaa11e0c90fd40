"""Interference criteria, fringe visibility and predicted fringe maxima."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .detection import angular_scan, internal_angle, solve_idler_frequency
from .dispersion import C_UM_PER_FS, EXTRAORDINARY, ORDINARY, wavelength_to_omega
from .errors import NotEnoughFringesError, UndefinedCriterionError
from .kernel import SignalMode, pump_terms


def _inverse_velocity_gap(crystal, pump, idler_axis):
    axis = crystal.idler_axis if idler_axis is None else idler_axis
    _, inv_up = pump_terms(crystal, pump)
    inv_ui = 1.0 / crystal.group_velocity(axis, 2.0 * pump.wavelength)
    return abs(inv_up - inv_ui)


def idler_smear(crystal, pump, idler_axis=None):
    """Spread L |1/u_i - 1/u_p| (fs) of idler arrival times behind their pump pulse."""
    return crystal.length * _inverse_velocity_gap(crystal, pump, idler_axis)


def q_parameter(crystal, pump, idler_axis=None):
    """Q = L |1/u_p - 1/u_i| / T_p; interference needs Q well above 1."""
    if pump.n_pulses == 1 or pump.delay <= 0:
        raise UndefinedCriterionError("Q needs two pump pulses with a non-zero delay")
    return idler_smear(crystal, pump, idler_axis) / pump.delay


def filter_bandwidth(fwhm, center):
    """Angular-frequency FWHM (rad/fs) of a filter of wavelength FWHM ``fwhm`` (um)."""
    return 2.0 * math.pi * C_UM_PER_FS * fwhm / center**2


def filter_criterion(fwhm, center, delay):
    """pi / (dw_s T_p): large values mean the filter resolves the pump fringes."""
    if fwhm <= 0 or center <= 0 or delay <= 0:
        raise ValueError("filter width, centre and delay must be positive")
    return math.pi / (filter_bandwidth(fwhm, center) * delay)


def _extrema(y):
    inner = y[1:-1]
    maxima = np.flatnonzero((inner > y[:-2]) & (inner >= y[2:])) + 1
    minima = np.flatnonzero((inner < y[:-2]) & (inner <= y[2:])) + 1
    return maxima, minima


def fringe_signal(spectrum, reference=None):
    """Rate curve, divided pointwise by a single-pulse ``reference`` when given."""
    if reference is None:
        return spectrum.rate
    if not np.array_equal(spectrum.x, reference.x):
        raise ValueError("reference spectrum must share the scan positions")
    return spectrum.rate / reference.rate


def visibility(spectrum, window=None, reference=None):
    """Fringe visibility (I_max - I_min) / (I_max + I_min) inside ``window``.

    The curve is smoothed with a 3-point moving average; I_max and I_min are
    the means of the interior local maxima and minima inside the x-interval
    ``window`` (um, whole scan by default).

    With ``reference`` (the same scan pumped by a single pulse) the fringe
    signal rate / reference is analysed instead, which removes the
    pump-bandwidth envelope, and each extremum is weighted by the smoothed
    reference rate at its position.  Extrema far out in the envelope wings,
    where hardly any photons arrive, then count correspondingly little.

    Raises NotEnoughFringesError when fewer than two maxima or no minimum lie
    inside the window.
    """
    y = np.asarray(fringe_signal(spectrum, reference), dtype=float)
    x = spectrum.x
    if len(y) < 5:
        raise NotEnoughFringesError("need at least 5 scan points")
    kernel = np.ones(3) / 3.0
    smooth = np.convolve(y, kernel, mode="valid")
    xs = x[1:-1]
    maxima, minima = _extrema(smooth)
    if window is not None:
        lo, hi = window
        inside = (xs >= lo) & (xs <= hi)
        maxima = maxima[inside[maxima]]
        minima = minima[inside[minima]]
    if len(maxima) < 2 or len(minima) < 1:
        raise NotEnoughFringesError(
            f"{len(maxima)} maxima and {len(minima)} minima in the window; need >= 2 and >= 1"
        )
    if reference is None:
        weight = np.ones_like(smooth)
    else:
        weight = np.convolve(reference.rate, kernel, mode="valid")
    i_max = np.average(smooth[maxima], weights=weight[maxima])
    i_min = np.average(smooth[minima], weights=weight[minima])
    return float(min(1.0, max(0.0, (i_max - i_min) / (i_max + i_min))))


def scan_visibility(config, workers=None):
    """Scan ``config`` and measure its visibility.

    With ``analysis.normalize_envelope`` a two-pulse scan is divided by the
    matching single-pulse scan.  Returns ``(spectrum, reference, V)`` where
    ``reference`` may be None and ``V`` is None when no fringes are found.
    """
    spectrum = angular_scan(config, workers=workers)
    reference = None
    if config.analysis.normalize_envelope and config.pump.n_pulses == 2:
        reference = angular_scan(config.single_pulse(), workers=workers)
    try:
        v = visibility(spectrum, config.window_um(), reference)
    except NotEnoughFringesError:
        v = None
    return spectrum, reference, v


def sum_frequency_detuning(crystal, pump, omega_s, theta):
    """w_s + w_i*(theta) - w_p with the idler on its phase-matched root."""
    mode = SignalMode(omega_s, theta)
    return omega_s + solve_idler_frequency(mode, crystal, pump) - pump.omega


def predicted_peaks(config, samples=401):
    """Detector positions (um) where (w_s + w_i* - w_p) T_p = 2 pi m at the filter centre.

    The fringe order is tabulated on a grid over the scan; integer crossings
    are refined with Brent's method, and integer-valued turning points (the
    tangent m = 0 maximum of a symmetric geometry) are kept as well.
    """
    crystal = config.crystal_cut()
    pump = config.pump_train()
    detector = config.detector_model()
    if not pump.two_pulse:
        raise UndefinedCriterionError("fringe maxima need two pump pulses")
    omega_s = wavelength_to_omega(detector.filter_center)
    x_lo, x_hi = detector.positions[0], detector.positions[-1]

    def order(x):
        theta = float(internal_angle(crystal, detector, x))
        return sum_frequency_detuning(crystal, pump, omega_s, theta) * pump.delay / (2.0 * math.pi)

    grid = np.linspace(x_lo, x_hi, samples)
    g = np.array([order(x) for x in grid])
    peaks = []
    for a, b, ga, gb in zip(grid[:-1], grid[1:], g[:-1], g[1:]):
        for m in range(math.ceil(min(ga, gb)), math.floor(max(ga, gb)) + 1):
            if ga == m:
                peaks.append(a)
            elif gb != m:
                peaks.append(brentq(lambda x: order(x) - m, a, b, xtol=1e-9))
    if g[-1] == round(g[-1]):
        peaks.append(grid[-1])
    for i in range(1, samples - 1):
        turning = (g[i] - g[i - 1]) * (g[i + 1] - g[i]) <= 0
        if turning:
            m = round(g[i])
            if abs(g[i] - m) < 1e-9:
                peaks.append(grid[i])
    merged = []
    for p in sorted(float(p) for p in peaks):
        if not merged or p - merged[-1] > 1e-3:
            merged.append(p)
    return merged


@dataclass
class InterferenceReport:
    """Criteria and metrics of one configuration."""

    Q: float | None
    delta_t_idler: float
    T_p: float
    filter_ratio: float | None
    pi_over_bandwidth: float
    visibility: float | None
    peak_positions_x: list = field(default_factory=list)
    Q_by_polarization: dict = field(default_factory=dict)
    q_ok: bool = False
    q_high: bool = False
    filter_ok: bool = False

    FIELDS = (
        "Q",
        "delta_t_idler_fs",
        "T_p_fs",
        "filter_ratio",
        "pi_over_bandwidth_fs",
        "visibility",
        "Q_ordinary_idler",
        "Q_extraordinary_idler",
        "q_ok",
        "q_high",
        "filter_ok",
        "n_peaks",
    )

    def values(self):
        return {
            "Q": self.Q,
            "delta_t_idler_fs": self.delta_t_idler,
            "T_p_fs": self.T_p,
            "filter_ratio": self.filter_ratio,
            "pi_over_bandwidth_fs": self.pi_over_bandwidth,
            "visibility": self.visibility,
            "Q_ordinary_idler": self.Q_by_polarization.get(ORDINARY),
            "Q_extraordinary_idler": self.Q_by_polarization.get(EXTRAORDINARY),
            "q_ok": self.q_ok,
            "q_high": self.q_high,
            "filter_ok": self.filter_ok,
            "n_peaks": len(self.peak_positions_x),
        }

    def to_text(self):
        lines = [f"{key} = {_fmt(value)}" for key, value in self.values().items()]
        lines.append("peak_positions_um = " + ", ".join(f"{x:.12g}" for x in self.peak_positions_x))
        return "\n".join(lines) + "\n"

    @classmethod
    def csv_header(cls):
        return ",".join(cls.FIELDS)

    def csv_row(self):
        v = self.values()
        return ",".join(_fmt(v[k]) for k in self.FIELDS)


def _fmt(value):
    if value is None:
        return "undefined"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def build_report(config, spectrum=None, reference=None, visibility_value=None):
    """Assemble the criteria report.

    Visibility comes from ``visibility_value`` when given, else from
    ``spectrum`` (and its single-pulse ``reference``) when given, else stays
    undefined.  A single-pulse pump has no Q, filter ratio or fringe maxima.
    """
    crystal = config.crystal_cut()
    pump = config.pump_train()
    a = config.analysis
    d = config.detector
    center = d.filter_center_nm / 1000.0
    bandwidth = filter_bandwidth(d.filter_fwhm_nm / 1000.0, center)
    vis = visibility_value
    if vis is None and spectrum is not None:
        try:
            vis = visibility(spectrum, config.window_um(), reference)
        except NotEnoughFringesError:
            vis = None
    if not pump.two_pulse:
        return InterferenceReport(
            Q=None,
            delta_t_idler=idler_smear(crystal, pump),
            T_p=pump.delay,
            filter_ratio=None,
            pi_over_bandwidth=math.pi / bandwidth,
            visibility=vis,
        )
    q = q_parameter(crystal, pump)
    ratio = math.pi / (bandwidth * pump.delay)
    return InterferenceReport(
        Q=q,
        delta_t_idler=idler_smear(crystal, pump),
        T_p=pump.delay,
        filter_ratio=ratio,
        pi_over_bandwidth=math.pi / bandwidth,
        visibility=vis,
        peak_positions_x=predicted_peaks(config),
        Q_by_polarization={axis: q_parameter(crystal, pump, axis) for axis in (ORDINARY, EXTRAORDINARY)},
        q_ok=bool(q >= a.q_observable),
        q_high=bool(q >= a.q_high),
        filter_ok=bool(ratio >= a.filter_threshold),
    )
