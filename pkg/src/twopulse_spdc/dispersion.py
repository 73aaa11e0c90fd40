"""Refractive indices, group velocities and type-II phase matching.

Units used throughout the package: lengths in micrometres, times in
femtoseconds, angular frequencies in rad/fs.  Crystal data live in small
``key = value`` text files under ``twopulse_spdc/data``; each file holds one
principal axis of one crystal.

Two Sellmeier variants are understood (``lam`` in micrometres):

``pole_quadratic``
    n^2 = A + B / (lam^2 - C) - D lam^2, coefficients ``A, B, C, D``
``sellmeier``
    n^2 = A + sum_i B_i lam^2 / (lam^2 - C_i), coefficients ``A, B1, C1, B2, C2, ...``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .errors import PhaseMatchingError, WavelengthRangeError

#: Speed of light in vacuum, micrometres per femtosecond.
C_UM_PER_FS = 0.299792458

ORDINARY = "ordinary"
EXTRAORDINARY = "extraordinary"
AXES = (ORDINARY, EXTRAORDINARY)
FORMULAS = ("pole_quadratic", "sellmeier")


def omega_to_wavelength(omega):
    """Vacuum wavelength (um) of angular frequency ``omega`` (rad/fs)."""
    return 2.0 * np.pi * C_UM_PER_FS / omega


def wavelength_to_omega(wavelength):
    """Angular frequency (rad/fs) of vacuum wavelength ``wavelength`` (um)."""
    return 2.0 * np.pi * C_UM_PER_FS / wavelength


@dataclass(frozen=True)
class OpticalMedium:
    """One principal axis of a (possibly uniaxial) crystal.

    For an extraordinary axis, ``ordinary`` points to the matching ordinary
    model so that the index ellipsoid can be evaluated at any angle.
    """

    name: str
    axis: str
    formula: str
    coefficients: tuple
    valid_range: tuple
    source: str = ""
    ordinary: OpticalMedium | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.formula not in FORMULAS:
            raise ValueError(f"unknown Sellmeier formula {self.formula!r}")
        if self.formula == "pole_quadratic" and len(self.coefficients) != 4:
            raise ValueError("pole_quadratic needs exactly 4 coefficients")
        if self.formula == "sellmeier" and len(self.coefficients) % 2 != 1:
            raise ValueError("sellmeier needs A followed by (B, C) pairs")
        lo, hi = self.valid_range
        if not 0 < lo < hi:
            raise ValueError(f"bad valid range {self.valid_range}")

    def check_range(self, wavelength):
        lo, hi = self.valid_range
        lam = np.asarray(wavelength)
        if np.any(~np.isfinite(lam)) or np.any(lam < lo) or np.any(lam > hi):
            raise WavelengthRangeError(
                f"wavelength {np.min(lam):.6g}-{np.max(lam):.6g} um outside the "
                f"{self.name} {self.axis} range [{lo}, {hi}] um"
            )

    def n_squared(self, wavelength):
        """n^2 and d(n^2)/dlam from the Sellmeier formula (no range check)."""
        lam2 = np.asarray(wavelength, dtype=float) ** 2
        lam = np.sqrt(lam2)
        coef = self.coefficients
        if self.formula == "pole_quadratic":
            a, b, c, d = coef
            n2 = a + b / (lam2 - c) - d * lam2
            dn2 = -2.0 * b * lam / (lam2 - c) ** 2 - 2.0 * d * lam
        else:
            n2 = np.full_like(lam2, coef[0])
            dn2 = np.zeros_like(lam2)
            for b, c in zip(coef[1::2], coef[2::2]):
                n2 = n2 + b * lam2 / (lam2 - c)
                dn2 = dn2 - 2.0 * b * c * lam / (lam2 - c) ** 2
        return n2, dn2


@dataclass(frozen=True)
class UniaxialCrystal:
    name: str
    ordinary: OpticalMedium
    extraordinary: OpticalMedium

    def medium(self, axis):
        return self.ordinary if axis == ORDINARY else self.extraordinary


def parse_medium(text, origin="<string>"):
    """Parse one crystal data file into an :class:`OpticalMedium`.

    Parsing is locale independent: only ``.`` is accepted as decimal point.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{origin}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    required = {"name", "axis", "formula", "coefficients", "valid_range_um"}
    missing = required - values.keys()
    if missing:
        raise ValueError(f"{origin}: missing keys {sorted(missing)}")
    unknown = values.keys() - required - {"source"}
    if unknown:
        raise ValueError(f"{origin}: unknown keys {sorted(unknown)}")

    def numbers(key):
        try:
            return tuple(float(tok) for tok in values[key].split(","))
        except ValueError:
            raise ValueError(f"{origin}: {key} must be comma-separated decimals") from None

    valid = numbers("valid_range_um")
    if len(valid) != 2:
        raise ValueError(f"{origin}: valid_range_um needs two values")
    return OpticalMedium(
        name=values["name"],
        axis=values["axis"],
        formula=values["formula"],
        coefficients=numbers("coefficients"),
        valid_range=valid,
        source=values.get("source", ""),
    )


def load_medium(path):
    path = Path(path)
    return parse_medium(path.read_text(encoding="utf-8"), origin=str(path))


@lru_cache(maxsize=None)
def load_crystal(name):
    """Load a shipped uniaxial crystal by name (``"BBO"`` or ``"quartz"``)."""
    stem = name.lower()
    pkg = resources.files("twopulse_spdc") / "data"
    try:
        o = parse_medium((pkg / f"{stem}_o.dat").read_text(encoding="utf-8"), f"{stem}_o.dat")
        e = parse_medium((pkg / f"{stem}_e.dat").read_text(encoding="utf-8"), f"{stem}_e.dat")
    except FileNotFoundError:
        raise ValueError(f"no dispersion data shipped for crystal {name!r}") from None
    e = OpticalMedium(e.name, e.axis, e.formula, e.coefficients, e.valid_range, e.source, ordinary=o)
    return UniaxialCrystal(o.name, o, e)


def _index_and_slope(medium, wavelength, theta):
    """Index and dn/dlam of ``medium`` at propagation angle ``theta`` to the optic axis."""
    if medium.axis == EXTRAORDINARY and theta is None:
        raise ValueError(f"{medium.name} extraordinary index needs a propagation angle")
    medium.check_range(wavelength)
    n2, dn2 = medium.n_squared(wavelength)
    n = np.sqrt(n2)
    dn = dn2 / (2.0 * n)
    if medium.axis == ORDINARY or medium.ordinary is None:
        return n, dn
    no2, dno2 = medium.ordinary.n_squared(wavelength)
    cos2 = np.cos(theta) ** 2
    sin2 = np.sin(theta) ** 2
    inv = cos2 / no2 + sin2 / n2
    dinv = -cos2 * dno2 / no2**2 - sin2 * dn2 / n2**2
    n_theta = inv**-0.5
    return n_theta, -0.5 * n_theta**3 * dinv


def refractive_index(medium, wavelength, theta=None):
    """Phase index of ``medium`` at ``wavelength`` (um).

    ``theta`` is the angle between the wave vector and the optic axis.  It is
    required for an extraordinary axis (index ellipsoid) and ignored for an
    ordinary one.
    """
    return _index_and_slope(medium, wavelength, theta)[0]


def index_derivative(medium, wavelength, theta=None):
    """Analytic dn/dlam (per um) of the Sellmeier model."""
    return _index_and_slope(medium, wavelength, theta)[1]


def group_index(medium, wavelength, theta=None):
    n, dn = _index_and_slope(medium, wavelength, theta)
    return n - wavelength * dn


def group_velocity(medium, wavelength, theta=None):
    """Group velocity c / n_g in um/fs, with n_g = n - lam dn/dlam."""
    return C_UM_PER_FS / group_index(medium, wavelength, theta)


@dataclass(frozen=True)
class CrystalCut:
    """A slab of uniaxial crystal cut for collinear type-II down-conversion.

    ``idler_axis`` names the polarization of the (undetected) idler photon;
    the signal takes the other one.  ``e_index_model`` selects how the
    extraordinary index follows the direction of a non-collinear photon:
    ``"ellipsoid"`` evaluates the index ellipsoid in the plane that contains
    the optic axis, ``"fixed"`` freezes it at the cut angle.
    """

    crystal: UniaxialCrystal
    cut_angle: float
    length: float
    idler_axis: str = EXTRAORDINARY
    e_index_model: str = "ellipsoid"

    def __post_init__(self):
        if not 0.0 < self.cut_angle < np.pi / 2:
            raise ValueError(f"cut angle must lie in (0, pi/2), got {self.cut_angle}")
        if self.length <= 0:
            raise ValueError(f"crystal length must be positive, got {self.length}")
        if self.idler_axis not in AXES:
            raise ValueError(f"idler_axis must be one of {AXES}")
        if self.e_index_model not in ("ellipsoid", "fixed"):
            raise ValueError("e_index_model must be 'ellipsoid' or 'fixed'")

    @property
    def signal_axis(self):
        return ORDINARY if self.idler_axis == EXTRAORDINARY else EXTRAORDINARY

    def index(self, axis, wavelength):
        """Index of ``axis`` for propagation along the crystal normal."""
        return refractive_index(self.crystal.medium(axis), wavelength, self.cut_angle)

    def group_velocity(self, axis, wavelength):
        return group_velocity(self.crystal.medium(axis), wavelength, self.cut_angle)


def _collinear_mismatch(theta, crystal, pump_wavelength):
    """(k_p - k_s - k_i) / (2 pi) for degenerate collinear type-II, per um."""
    e, o = crystal.extraordinary, crystal.ordinary
    lam_s = 2.0 * pump_wavelength
    n_p = refractive_index(e, pump_wavelength, theta)
    n_sum = refractive_index(o, lam_s) + refractive_index(e, lam_s, theta)
    return n_p / pump_wavelength - n_sum / lam_s


def phase_matching_angle(crystal, pump_wavelength):
    """Cut angle (rad) for collinear frequency-degenerate type-II matching.

    The extraordinary pump at ``pump_wavelength`` splits into an ordinary
    and an extraordinary photon at twice the wavelength.
    """
    crystal.extraordinary.check_range(pump_wavelength)
    crystal.ordinary.check_range(2.0 * pump_wavelength)
    eps = 1e-9
    lo, hi = eps, np.pi / 2 - eps
    f_lo = _collinear_mismatch(lo, crystal, pump_wavelength)
    f_hi = _collinear_mismatch(hi, crystal, pump_wavelength)
    if np.sign(f_lo) == np.sign(f_hi):
        raise PhaseMatchingError(
            f"no type-II phase matching in {crystal.name} for a "
            f"{pump_wavelength} um pump: mismatch keeps its sign on (0, pi/2)"
        )
    return brentq(_collinear_mismatch, lo, hi, args=(crystal, pump_wavelength), xtol=1e-15, rtol=1e-15)
