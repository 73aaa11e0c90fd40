import dataclasses
from pathlib import Path

import pytest

from twopulse_spdc.config import ExperimentConfig, load_config, reference_config, parse_config
from twopulse_spdc.errors import ConfigError

DEMO_CONFIGS = Path(__file__).resolve().parents[1] / "demos" / "configs"


def test_defaults_describe_the_reference_setup():
    cfg = ExperimentConfig()
    assert cfg.crystal.medium == "BBO" and cfg.crystal.length_mm == 3.0
    assert cfg.pump.wavelength_um == 0.4 and cfg.pump.fwhm_fs == 140.0
    assert cfg.pump.quartz_length_mm == 7.5
    assert cfg.detector.filter_fwhm_nm == 1.0 and cfg.detector.focal_length_cm == 20.0
    assert cfg.detector.scan_points == 201


def test_reference_file_gives_279fs():
    cfg = load_config(DEMO_CONFIGS / "bbo_279fs.cfg")
    assert cfg.delay_fs() == pytest.approx(279.0, rel=0.05)
    assert cfg == reference_config()


def test_parse_values_and_comments():
    cfg = parse_config("# comment\n\npump.delay_fs = 465\ncrystal.cut = 42.5\nanalysis.normalize_envelope = no\n")
    assert cfg.delay_fs() == 465.0
    assert cfg.pump.quartz_length_mm is None
    assert cfg.analysis.normalize_envelope is False
    assert cfg.crystal_cut().cut_angle == pytest.approx(0.741765, rel=1e-5)


def test_both_delay_keys_rejected_naming_both():
    with pytest.raises(ConfigError, match="pump.delay_fs.*pump.quartz_length_mm"):
        parse_config("pump.delay_fs = 279\npump.quartz_length_mm = 7.5\n")


def test_two_pulses_need_a_delay_single_pulse_does_not():
    with pytest.raises(ConfigError, match="needs pump.delay_fs or pump.quartz_length_mm"):
        parse_config("pump.fwhm_fs = 140\n")
    single = parse_config("pump.n_pulses = 1\n")
    assert single.delay_fs() == 0.0
    with pytest.raises(ConfigError):
        dataclasses.replace(single.pump, n_pulses=2, quartz_length_mm=None)


@pytest.mark.parametrize(
    "text, key",
    [
        ("detector.scan_points = 1\n", "detector.scan_points"),
        ("detector.scan_min_mm = 3\ndetector.scan_max_mm = 2\n", "detector.scan_min_mm"),
        ("crystal.length_mm = -1\n", "crystal.length_mm"),
        ("crystal.idler_polarization = diagonal\n", "crystal.idler_polarization"),
        ("detector.filter_shape = lorentzian\n", "detector.filter_shape"),
        ("detector.filter_nodes = 5\n", "detector.filter_nodes"),
        ("quadrature.rel_tol = 0\n", "quadrature.rel_tol"),
        ("crystal.cut = 95\n", "crystal.cut"),
        ("pump.n_pulses = 3\n", "pump.n_pulses"),
    ],
)
def test_invariant_violations_name_the_key(text, key):
    with pytest.raises(ConfigError, match=key):
        parse_config("pump.delay_fs = 279\n" + text)


def test_negative_delay_rejected():
    with pytest.raises(ConfigError, match="pump.delay_fs: must be non-negative"):
        parse_config("pump.delay_fs = -1\n")


def test_unknown_key_rejected_with_line_number():
    with pytest.raises(ConfigError, match=r"<config>:2: pump.colour: unknown key"):
        parse_config("pump.fwhm_fs = 100\npump.colour = blue\n")


def test_malformed_lines():
    with pytest.raises(ConfigError, match=":1:"):
        parse_config("pump.fwhm_fs 100\n")
    with pytest.raises(ConfigError, match="repeated"):
        parse_config("pump.fwhm_fs = 100\npump.fwhm_fs = 120\n")
    with pytest.raises(ConfigError, match="cannot parse"):
        parse_config("pump.fwhm_fs = 1,5\n")
    with pytest.raises(ConfigError, match="section.name"):
        parse_config("fwhm_fs = 100\n")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.cfg")


def test_to_lines_round_trip():
    cfg = reference_config(delay_fs=465.0, detector__filter_fwhm_nm=3.0, crystal__e_index_model="fixed")
    assert parse_config("\n".join(cfg.to_lines())) == cfg


def test_replace_switches_delay_source():
    cfg = reference_config().replace("pump.delay_fs", 300.0)
    assert cfg.pump.quartz_length_mm is None and cfg.delay_fs() == 300.0
    back = cfg.replace("pump.quartz_length_mm", 20.0)
    assert back.pump.delay_fs is None and back.delay_fs() == pytest.approx(744.0, rel=0.05)


def test_window_is_central_half():
    assert ExperimentConfig().window_um() == (-3000.0, 3000.0)
