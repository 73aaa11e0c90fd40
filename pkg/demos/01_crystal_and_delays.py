"""
Crystal optics behind the two-pulse experiment
==============================================

Phase-matching angle of the BBO crystal, group velocities of the three
waves, the quartz-rod delays and the resulting Q parameter for both
possible idler polarizations.
"""

import math

from twopulse_spdc import load_crystal, reference_config, phase_matching_angle, quartz_delay
from twopulse_spdc.analysis import idler_smear, q_parameter
from twopulse_spdc.pump import DelayLine

bbo = load_crystal("BBO")
theta = phase_matching_angle(bbo, 0.4)
print(f"type-II cut angle for a 400 nm pump: {math.degrees(theta):.3f} deg")

cfg = reference_config()
crystal = cfg.crystal_cut()
for axis, lam in (("extraordinary", 0.4), ("ordinary", 0.8), ("extraordinary", 0.8)):
    u = crystal.group_velocity(axis, lam)
    print(f"  {axis:>13} at {lam} um: n_g = {0.299792458 / u:.5f}")

# Quartz rods of three lengths split each pump pulse into two.
for rod_mm in (7.5, 12.5, 20.0):
    t_p = quartz_delay(DelayLine(rod_mm * 1000.0), 0.4)
    print(f"quartz {rod_mm:5.1f} mm -> T_p = {t_p:6.1f} fs")

# Q compares the spread of idler emission times with the pulse separation.
# Only the extraordinary idler gives Q of order 3, 2, 1 for the three rods.
for rod_mm in (7.5, 12.5, 20.0):
    pump = reference_config(quartz_length_mm=rod_mm).pump_train()
    row = ", ".join(f"{axis[0]}-idler Q = {q_parameter(crystal, pump, axis):.2f}"
                    for axis in ("ordinary", "extraordinary"))
    print(f"T_p = {pump.delay:6.1f} fs: {row}")
print(f"idler smear (e-idler, 3 mm): {idler_smear(crystal, cfg.pump_train()):.1f} fs")
