"""
Signal filter bandwidth
=======================

At the shortest delay the fringes wash out as the interference filter
widens; the filter criterion pi / (dw_s T_p) tracks the same trend.
"""

from twopulse_spdc import build_report, reference_config, scan_visibility

for nm in (1.0, 3.0, 10.0):
    cfg = reference_config(detector__filter_fwhm_nm=nm)
    _, _, v = scan_visibility(cfg)
    report = build_report(cfg, visibility_value=v)
    shown = "none" if v is None else f"{v:.3f}"
    print(f"{nm:4.0f} nm: pi/(dw T_p) = {report.filter_ratio:6.3f}  "
          f"filter_ok = {report.filter_ok!s:5}  V = {shown}")
