"""
Two-photon amplitude: closed form against brute force
=====================================================

The closed-form amplitude (pump envelope spectrum times phase-matching sinc)
is compared with a direct integral over emission time and crystal depth.
"""

import numpy as np

from twopulse_spdc import SignalMode, biphoton_amplitude, biphoton_amplitude_oracle, reference_config
from twopulse_spdc.detection import solve_idler_frequency
from twopulse_spdc.dispersion import wavelength_to_omega

cfg = reference_config(delay_fs=279.0)
crystal, pump = cfg.crystal_cut(), cfg.pump_train()
w_s = wavelength_to_omega(0.8)

mode = SignalMode(w_s, 0.004)
w_star = solve_idler_frequency(mode, crystal, pump)
print(f"phase-matched idler at theta_s = 4 mrad: {w_star:.6f} rad/fs")

print("   d_omega      closed form      brute force / L")
for d in np.linspace(-0.012, 0.012, 7):
    closed = biphoton_amplitude(mode, w_star + d, crystal, pump).value
    brute = biphoton_amplitude_oracle(mode, w_star + d, crystal, pump) / crystal.length
    print(f"{d:+10.4f}  {closed.real:+.9f}  {brute.real:+.9f}{brute.imag:+.1e}j")
