import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twopulse_spdc import reference_config
from twopulse_spdc.dispersion import wavelength_to_omega
from twopulse_spdc.errors import KinematicError, OracleError
from twopulse_spdc.kernel import (
    SignalMode,
    biphoton_amplitude,
    biphoton_amplitude_oracle,
    idler_kz_slope,
    idler_longitudinal,
    idler_transverse,
    longitudinal_mismatch,
    signal_wavevector,
    sinc,
    wavenumber,
)

CFG = reference_config(delay_fs=279.0)
CRYSTAL = CFG.crystal_cut()
PUMP = CFG.pump_train()
W_S = wavelength_to_omega(0.8)


@given(st.floats(-50.0, 50.0))
def test_sinc_matches_definition(x):
    expected = 1.0 if x == 0 else math.sin(x) / x
    assert float(sinc(x)) == pytest.approx(expected, abs=1e-12)


def test_sinc_is_smooth_through_the_series_branch():
    x = np.array([9.9e-5, 1.0e-4, 1.01e-4])
    assert np.all(np.abs(sinc(x) - np.sin(x) / x) < 1e-15)


def test_collinear_degenerate_point_is_phase_matched():
    delta = longitudinal_mismatch(SignalMode(W_S, 0.0), PUMP.omega - W_S, CRYSTAL, PUMP)
    assert abs(delta) * CRYSTAL.length < 1e-9
    amp = biphoton_amplitude(SignalMode(W_S, 0.0), PUMP.omega - W_S, CRYSTAL, PUMP)
    assert amp.intensity == pytest.approx(1.0, rel=1e-12)


@given(st.floats(-0.02, 0.02))
def test_transverse_momentum_conservation(theta):
    mode = SignalMode(W_S, theta)
    k_sx, _ = signal_wavevector(mode, CRYSTAL)
    assert idler_transverse(mode, CRYSTAL) == -k_sx
    assert k_sx == pytest.approx(wavenumber(CRYSTAL, CRYSTAL.signal_axis, W_S, theta) * math.sin(theta))


@settings(max_examples=50)
@given(st.floats(-0.2, 0.2), st.floats(2.2, 2.5))
def test_idler_longitudinal_satisfies_index_ellipsoid(kx, omega):
    kz = float(idler_longitudinal(CRYSTAL, omega, kx))
    e = CRYSTAL.crystal.extraordinary
    lam = 2 * math.pi * 0.299792458 / omega
    no2, ne2 = e.ordinary.n_squared(lam)[0], e.n_squared(lam)[0]
    c, s = math.cos(CRYSTAL.cut_angle), math.sin(CRYSTAL.cut_angle)
    k_par = kz * c + kx * s
    k_perp = kx * c - kz * s
    assert k_par**2 / no2 + k_perp**2 / ne2 == pytest.approx((omega / 0.299792458) ** 2, rel=1e-12)
    assert kz > 0


def test_idler_longitudinal_models_agree_on_axis():
    fixed = reference_config(delay_fs=279.0, crystal__e_index_model="fixed").crystal_cut()
    w = PUMP.omega - W_S
    assert idler_longitudinal(CRYSTAL, w, 0.0) == pytest.approx(idler_longitudinal(fixed, w, 0.0), rel=1e-13)
    k = wavenumber(fixed, "extraordinary", w)
    assert idler_longitudinal(fixed, w, 0.3) == pytest.approx(math.sqrt(k * k - 0.09), rel=1e-14)


def test_evanescent_idler_raises():
    with pytest.raises(KinematicError):
        idler_longitudinal(CRYSTAL, 2.35, 100.0)


def test_kz_slope_is_inverse_group_velocity_on_axis():
    w = PUMP.omega - W_S
    inv_u = 1.0 / CRYSTAL.group_velocity(CRYSTAL.idler_axis, 0.8)
    assert float(idler_kz_slope(CRYSTAL, w, 0.0)) == pytest.approx(inv_u, rel=1e-6)


def test_signal_mode_validation():
    with pytest.raises(ValueError):
        SignalMode(-1.0, 0.0)
    with pytest.raises(ValueError):
        SignalMode(W_S, 0.5)


def test_amplitude_factors_multiply():
    w = np.linspace(2.33, 2.38, 7)
    amp = biphoton_amplitude(SignalMode(W_S, 0.004), w, CRYSTAL, PUMP)
    assert np.allclose(amp.value.real, amp.envelope * amp.cosine * amp.sinc)
    assert np.allclose(amp.intensity, np.abs(amp.value) ** 2)


def test_oracle_crystal_placement_only_adds_a_phase():
    mode = SignalMode(W_S, 0.003)
    w = PUMP.omega - W_S + 0.004
    centred = biphoton_amplitude_oracle(mode, w, CRYSTAL, PUMP)
    front = biphoton_amplitude_oracle(mode, w, CRYSTAL, PUMP, z_start=0.0)
    delta = float(longitudinal_mismatch(mode, w, CRYSTAL, PUMP))
    assert front == pytest.approx(centred * np.exp(0.5j * delta * CRYSTAL.length), rel=1e-6)


def test_oracle_single_pulse_equals_length_times_closed_form():
    pump = reference_config(pump__n_pulses=1).pump_train()
    mode = SignalMode(W_S, -0.002)
    w = PUMP.omega - W_S - 0.003
    oracle = biphoton_amplitude_oracle(mode, w, CRYSTAL, pump)
    closed = biphoton_amplitude(mode, w, CRYSTAL, pump).value
    assert oracle == pytest.approx(CRYSTAL.length * closed, rel=1e-6)


def test_oracle_reports_stalled_refinement():
    with pytest.raises(OracleError) as info:
        biphoton_amplitude_oracle(SignalMode(W_S, 0.0), PUMP.omega - W_S, CRYSTAL, PUMP, t_step=200.0, n_z=2, max_levels=1)
    assert math.isinf(info.value.achieved)
