import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twopulse_spdc.pump import (
    DelayLine,
    PumpTrain,
    centred_envelope_time,
    delay_per_length,
    envelope_spectrum,
    envelope_time,
    fringe_factor,
    quartz_delay,
    single_pulse_spectrum,
    single_pulse_time,
)

T = np.linspace(-3000.0, 3000.0, 60001)
DT = T[1] - T[0]


def transform(values, nu):
    """Direct quadrature of int E(t) exp(i nu t) dt."""
    return np.array([np.sum(values * np.exp(1j * n * T)) * DT for n in nu])


def test_quartz_delay_per_mm():
    assert delay_per_length(0.4) == pytest.approx(37.2, rel=0.05)


@pytest.mark.parametrize("length_mm, t_p", [(20.0, 744.0), (12.5, 465.0), (7.5, 279.0)])
def test_quartz_delay_pairs(length_mm, t_p):
    assert quartz_delay(DelayLine(length_mm * 1000.0), 0.4) == pytest.approx(t_p, rel=0.05)


def test_zero_quartz_gives_zero_delay():
    assert quartz_delay(DelayLine(0.0), 0.4) == 0.0
    with pytest.raises(ValueError):
        DelayLine(-1.0)


@given(st.floats(0.1, 40.0), st.floats(0.1, 40.0))
def test_quartz_delay_linear_in_length(a, b):
    s = quartz_delay(DelayLine((a + b) * 1000), 0.4)
    assert s == pytest.approx(quartz_delay(DelayLine(a * 1000), 0.4) + quartz_delay(DelayLine(b * 1000), 0.4))


def test_spectrum_is_one_at_carrier():
    pump = PumpTrain(0.4, 140.0, 279.0)
    assert single_pulse_spectrum(pump, pump.omega) == 1.0
    assert fringe_factor(pump, pump.omega) == 1.0


@pytest.mark.parametrize("delay", [279.0, 465.0, 744.0])
def test_fringe_zeros(delay):
    pump = PumpTrain(0.4, 140.0, delay)
    for m in range(-3, 3):
        nu = (2 * m + 1) * math.pi / delay
        assert abs(envelope_spectrum(pump, pump.omega + nu)) < 1e-12
    # maxima of the cosine every 2 pi / T_p
    for m in range(-3, 4):
        assert fringe_factor(pump, pump.omega + 2 * math.pi * m / delay) == pytest.approx((-1) ** m)


def test_single_pulse_has_no_fringes():
    pump = PumpTrain(0.4, 140.0, 279.0, n_pulses=1)
    nu = np.linspace(-0.05, 0.05, 11)
    assert np.all(fringe_factor(pump, pump.omega + nu) == 1.0)
    assert not pump.two_pulse


def test_single_pulse_transform_pair():
    pump = PumpTrain(0.4, 140.0)
    nu = np.linspace(-0.04, 0.04, 9)
    ft = transform(single_pulse_time(pump, T), nu)
    assert np.max(np.abs(ft - single_pulse_spectrum(pump, pump.omega + nu))) < 1e-6


@settings(max_examples=10, deadline=None)
@given(delay=st.floats(50.0, 800.0), phase=st.floats(-math.pi, math.pi))
def test_two_pulse_transform_consistency(delay, phase):
    pump = PumpTrain(0.4, 140.0, delay, carrier_phase=phase)
    nu = np.linspace(-0.03, 0.03, 7)
    spectrum = envelope_spectrum(pump, pump.omega + nu)
    centred = transform(centred_envelope_time(pump, T), nu)
    assert np.max(np.abs(centred - spectrum)) < 1e-6
    shifted = transform(envelope_time(pump, T), nu)
    expected = 2.0 * np.exp(-0.5j * (nu * delay + phase)) * spectrum
    assert np.max(np.abs(shifted - expected)) < 1e-6


@pytest.mark.parametrize("delay", [0.0, 279.0, 744.0])
def test_parseval(delay):
    pump = PumpTrain(0.4, 140.0, delay, n_pulses=2 if delay else 1)
    energy_t = np.sum(np.abs(envelope_time(pump, T)) ** 2) * DT
    nu = np.linspace(-0.2, 0.2, 40001)
    spec = np.abs(envelope_spectrum(pump, pump.omega + nu)) ** 2
    scale = 4.0 if pump.two_pulse else 1.0
    energy_w = scale * np.sum(spec) * (nu[1] - nu[0]) / (2 * math.pi)
    assert energy_t == pytest.approx(energy_w, rel=1e-6)


def test_spectral_sigma_matches_intensity_width():
    pump = PumpTrain(0.4, 140.0)
    s = pump.spectral_sigma
    ratio = single_pulse_spectrum(pump, pump.omega + s) ** 2
    assert ratio == pytest.approx(math.exp(-0.5), rel=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [dict(wavelength=0.0), dict(fwhm=-1.0), dict(delay=-5.0), dict(n_pulses=3)],
)
def test_invalid_trains(kwargs):
    base = dict(wavelength=0.4, fwhm=140.0, delay=279.0)
    base.update(kwargs)
    with pytest.raises(ValueError):
        PumpTrain(**base)
