"""
When the sinc becomes a delta function
======================================

Lengthening the crystal narrows the phase-matching sinc until the idler
frequency is pinned to its phase-matched value.  The full idler integral
then collapses onto the closed-form delta-limit rate.
"""

import numpy as np

from twopulse_spdc import SignalMode, reference_config, singles_rate, singles_rate_deltalimit
from twopulse_spdc.analysis import q_parameter
from twopulse_spdc.dispersion import wavelength_to_omega

w_s = wavelength_to_omega(0.8)
thetas = np.linspace(-0.012, 0.012, 61)
for length_mm in (3.0, 6.0, 12.0, 21.0, 30.0):
    cfg = reference_config(delay_fs=279.0, crystal__length_mm=length_mm)
    crystal, pump = cfg.crystal_cut(), cfg.pump_train()
    full = np.array([singles_rate(SignalMode(w_s, t), crystal, pump) for t in thetas])
    delta = np.array([singles_rate_deltalimit(SignalMode(w_s, t), crystal, pump) for t in thetas])
    dev = np.max(np.abs(full / full.max() - delta / delta.max()))
    print(f"L = {length_mm:4.0f} mm  Q = {q_parameter(crystal, pump):5.1f}  max deviation {dev:.2%}")
