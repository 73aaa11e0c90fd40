import pytest

from twopulse_spdc import angular_scan, reference_config, visibility
from twopulse_spdc.errors import NotEnoughFringesError

_SCANS = {}


def cached_scan(config):
    """Angular scans are expensive; share them across the whole session."""
    if config not in _SCANS:
        _SCANS[config] = angular_scan(config)
    return _SCANS[config]


def measured_visibility(config):
    """Envelope-normalised visibility, None when no fringes are found."""
    reference = cached_scan(config.single_pulse()) if config.pump.n_pulses == 2 else None
    try:
        return visibility(cached_scan(config), config.window_um(), reference)
    except NotEnoughFringesError:
        return None


@pytest.fixture(scope="session")
def scan():
    return cached_scan


@pytest.fixture(scope="session")
def vis():
    return measured_visibility


@pytest.fixture
def config_279():
    return reference_config(delay_fs=279.0)


ACCEPTANCE = {}


def record_criterion(number, title, ok, detail):
    ACCEPTANCE[number] = (title, bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} | {detail}")
