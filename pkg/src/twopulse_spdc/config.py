"""Experiment configuration: ``key = value`` files with dotted section keys.

Example::

    # 3 mm BBO, 279 fs pulse pair, 1 nm filter
    crystal.length_mm = 3
    pump.quartz_length_mm = 7.5
    detector.filter_fwhm_nm = 1

Every key not given takes the default of the matching dataclass field.
Unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .detection import FILTER_SHAPES, DetectorModel
from .dispersion import AXES, CrystalCut, load_crystal, phase_matching_angle
from .errors import ConfigError
from .pump import DelayLine, PumpTrain, quartz_delay


def _fail(key, message):
    raise ConfigError(f"{key}: {message}")


@dataclass(frozen=True)
class CrystalConfig:
    medium: str = "BBO"
    length_mm: float = 3.0
    cut: str = "auto"
    idler_polarization: str = "extraordinary"
    e_index_model: str = "ellipsoid"

    def __post_init__(self):
        if self.length_mm <= 0:
            _fail("crystal.length_mm", "must be positive")
        if self.idler_polarization not in AXES:
            _fail("crystal.idler_polarization", f"must be one of {AXES}")
        if self.e_index_model not in ("ellipsoid", "fixed"):
            _fail("crystal.e_index_model", "must be 'ellipsoid' or 'fixed'")
        if self.cut != "auto":
            try:
                deg = float(self.cut)
            except ValueError:
                _fail("crystal.cut", "must be 'auto' or an angle in degrees")
            if not 0 < deg < 90:
                _fail("crystal.cut", "angle must lie in (0, 90) degrees")


@dataclass(frozen=True)
class PumpConfig:
    wavelength_um: float = 0.4
    fwhm_fs: float = 140.0
    n_pulses: int = 2
    delay_fs: float | None = None
    quartz_length_mm: float | None = None
    carrier_phase_rad: float = 0.0

    def __post_init__(self):
        if self.wavelength_um <= 0:
            _fail("pump.wavelength_um", "must be positive")
        if self.fwhm_fs <= 0:
            _fail("pump.fwhm_fs", "must be positive")
        if self.n_pulses not in (1, 2):
            _fail("pump.n_pulses", "must be 1 or 2")
        if self.delay_fs is not None and self.quartz_length_mm is not None:
            _fail("pump.delay_fs/pump.quartz_length_mm", "give only one of pump.delay_fs and pump.quartz_length_mm")
        if self.n_pulses == 2 and self.delay_fs is None and self.quartz_length_mm is None:
            _fail("pump.delay_fs/pump.quartz_length_mm", "a two-pulse pump needs pump.delay_fs or pump.quartz_length_mm")
        if self.delay_fs is not None and self.delay_fs < 0:
            _fail("pump.delay_fs", "must be non-negative")
        if self.quartz_length_mm is not None and self.quartz_length_mm < 0:
            _fail("pump.quartz_length_mm", "must be non-negative")


@dataclass(frozen=True)
class DetectorConfig:
    focal_length_cm: float = 20.0
    filter_center_nm: float = 800.0
    filter_fwhm_nm: float = 1.0
    filter_shape: str = "gaussian"
    filter_nodes: int = 21
    scan_min_mm: float = -6.0
    scan_max_mm: float = 6.0
    scan_points: int = 201

    def __post_init__(self):
        if self.focal_length_cm <= 0:
            _fail("detector.focal_length_cm", "must be positive")
        if self.filter_center_nm <= 0:
            _fail("detector.filter_center_nm", "must be positive")
        if self.filter_fwhm_nm <= 0:
            _fail("detector.filter_fwhm_nm", "must be positive")
        if self.filter_shape not in FILTER_SHAPES:
            _fail("detector.filter_shape", f"must be one of {FILTER_SHAPES}")
        if self.filter_nodes < 15:
            _fail("detector.filter_nodes", "must be at least 15")
        if self.scan_points < 2:
            _fail("detector.scan_points", "must be at least 2")
        if not self.scan_min_mm < self.scan_max_mm:
            _fail("detector.scan_min_mm", "must be below detector.scan_max_mm")


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-4
    max_evals: int = 200_000

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            _fail("quadrature.rel_tol", "must lie in (0, 1)")
        if self.max_evals < 100:
            _fail("quadrature.max_evals", "must be at least 100")


@dataclass(frozen=True)
class AnalysisConfig:
    window_fraction: float = 0.5
    normalize_envelope: bool = True
    q_observable: float = 2.0
    q_high: float = 5.0
    filter_threshold: float = 1.4

    def __post_init__(self):
        if not 0 < self.window_fraction <= 1:
            _fail("analysis.window_fraction", "must lie in (0, 1]")
        if self.q_observable <= 0 or self.q_high < self.q_observable:
            _fail("analysis.q_high", "thresholds must satisfy 0 < q_observable <= q_high")
        if self.filter_threshold <= 0:
            _fail("analysis.filter_threshold", "must be positive")


SECTIONS = {
    "crystal": CrystalConfig,
    "pump": PumpConfig,
    "detector": DetectorConfig,
    "quadrature": QuadratureConfig,
    "analysis": AnalysisConfig,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description plus builders for the physics objects."""

    crystal: CrystalConfig = field(default_factory=CrystalConfig)
    pump: PumpConfig = field(default_factory=lambda: PumpConfig(quartz_length_mm=7.5))
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)

    def crystal_cut(self):
        c = self.crystal
        bbo = load_crystal(c.medium)
        if c.cut == "auto":
            angle = phase_matching_angle(bbo, self.pump.wavelength_um)
        else:
            angle = np.radians(float(c.cut))
        return CrystalCut(bbo, angle, c.length_mm * 1000.0, c.idler_polarization, c.e_index_model)

    def delay_fs(self):
        p = self.pump
        if p.n_pulses == 1:
            return 0.0
        if p.delay_fs is not None:
            return float(p.delay_fs)
        return quartz_delay(DelayLine(p.quartz_length_mm * 1000.0), p.wavelength_um)

    def pump_train(self):
        p = self.pump
        return PumpTrain(p.wavelength_um, p.fwhm_fs, self.delay_fs(), p.n_pulses, p.carrier_phase_rad)

    def detector_model(self):
        d = self.detector
        positions = np.linspace(d.scan_min_mm, d.scan_max_mm, d.scan_points) * 1000.0
        return DetectorModel(
            focal_length=d.focal_length_cm * 1e4,
            filter_center=d.filter_center_nm / 1000.0,
            filter_fwhm=d.filter_fwhm_nm / 1000.0,
            positions=tuple(positions),
            filter_shape=d.filter_shape,
            filter_nodes=d.filter_nodes,
        )

    def window_um(self):
        """Central analysis window (um) as a fraction of the scan span."""
        d = self.detector
        mid = 0.5 * (d.scan_min_mm + d.scan_max_mm)
        half = 0.5 * self.analysis.window_fraction * (d.scan_max_mm - d.scan_min_mm)
        return ((mid - half) * 1000.0, (mid + half) * 1000.0)

    def single_pulse(self):
        """Same experiment pumped by one pulse (the envelope reference)."""
        return self.replace("pump.n_pulses", 1)

    def replace(self, key, value):
        """Copy with one dotted key changed; ``pump.delay_fs`` clears the quartz length."""
        section, name = _split_key(key)
        current = getattr(self, section)
        changes = {name: value}
        if key == "pump.delay_fs":
            changes["quartz_length_mm"] = None
        elif key == "pump.quartz_length_mm":
            changes["delay_fs"] = None
        return dataclasses.replace(self, **{section: dataclasses.replace(current, **changes)})

    def to_lines(self):
        lines = []
        for section in SECTIONS:
            obj = getattr(self, section)
            for f in dataclasses.fields(obj):
                value = getattr(obj, f.name)
                if value is None:
                    continue
                lines.append(f"{section}.{f.name} = {_format(value)}")
        return lines


def _format(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _split_key(key):
    if key.count(".") != 1:
        raise ConfigError(f"{key}: expected 'section.name'")
    section, name = key.split(".")
    cls = SECTIONS.get(section)
    if cls is None or name not in {f.name for f in dataclasses.fields(cls)}:
        raise ConfigError(f"{key}: unknown key")
    return section, name


def _convert(key, cls, name, text):
    ftype = {f.name: f.type for f in dataclasses.fields(cls)}[name]
    try:
        if "bool" in ftype:
            low = text.lower()
            if low not in ("true", "false", "yes", "no", "1", "0"):
                raise ValueError(text)
            return low in ("true", "yes", "1")
        if ftype == "int":
            return int(text)
        if "float" in ftype:
            return float(text)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {text!r}") from None
    return text


def parse_config(text, origin="<config>"):
    """Parse configuration text into a validated :class:`ExperimentConfig`."""
    values = {section: {} for section in SECTIONS}
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            section, name = _split_key(key)
        except ConfigError as exc:
            raise ConfigError(f"{origin}:{lineno}: {exc}") from None
        if key in seen:
            raise ConfigError(f"{origin}:{lineno}: {key} repeated (first on line {seen[key]})")
        seen[key] = lineno
        values[section][name] = _convert(key, SECTIONS[section], name, value)
    kwargs = {section: cls(**values[section]) for section, cls in SECTIONS.items()}
    return ExperimentConfig(**kwargs)


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, origin=str(path))


def reference_config(delay_fs=None, quartz_length_mm=7.5, **changes):
    """Reference set-up: 3 mm BBO, 400 nm 140 fs pump, 1 nm filter, F = 20 cm.

    ``changes`` maps dotted keys with ``__`` for the dot, e.g.
    ``detector__filter_fwhm_nm=3``.
    """
    cfg = ExperimentConfig()
    if delay_fs is not None:
        cfg = cfg.replace("pump.delay_fs", float(delay_fs))
    else:
        cfg = cfg.replace("pump.quartz_length_mm", float(quartz_length_mm))
    for key, value in changes.items():
        cfg = cfg.replace(key.replace("__", "."), value)
    return cfg
