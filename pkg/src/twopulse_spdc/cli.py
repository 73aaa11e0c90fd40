"""Command line: ``scan``, ``criteria`` and ``sweep``.

Exit status 0 on success, 2 for configuration errors, 3 for numerical
failures, 1 when an output file cannot be written.
"""

from __future__ import annotations

import argparse
import sys
import time

from .analysis import InterferenceReport, build_report, predicted_peaks, scan_visibility
from .config import load_config
from .detection import angular_scan
from .errors import ConfigError, SPDCError

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SWEEP_KEYS = {
    "delay_fs": "pump.delay_fs",
    "filter_fwhm_nm": "detector.filter_fwhm_nm",
    "crystal_length_mm": "crystal.length_mm",
}

GNUPLOT_TEMPLATE = """\
set datafile separator ','
set datafile commentschars '#'
set xlabel 'detector position x (mm)'
set ylabel 'signal rate (arb. units)'
set key off
{arrows}plot '{csv}' using ($1/1000):3 skip 1 with lines
"""


def _gnuplot_script(csv_path, peaks):
    arrows = "".join(
        f"set arrow from first {x / 1000:.9g}, graph 0.95 to first {x / 1000:.9g}, graph 0.85\n" for x in peaks
    )
    return GNUPLOT_TEMPLATE.format(arrows=arrows, csv=csv_path)


def parse_values(text):
    """Comma-separated sweep values; an empty list is a configuration error."""
    items = [tok.strip() for tok in text.split(",") if tok.strip()]
    if not items:
        raise ConfigError("--values: empty sweep range")
    try:
        return [float(tok) for tok in items]
    except ValueError:
        raise ConfigError(f"--values: cannot parse {text!r} as comma-separated numbers") from None


def cmd_scan(args):
    config = load_config(args.config)
    spectrum = angular_scan(config, workers=args.workers)
    peaks = predicted_peaks(config) if config.pump_train().two_pulse else []
    trailer = [f"predicted_peak_x_um = {x:.12g}" for x in peaks]
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        spectrum.to_csv(fh, trailer=trailer)
    if args.gnuplot_script:
        with open(args.gnuplot_script, "w", encoding="utf-8") as fh:
            fh.write(_gnuplot_script(args.output, peaks))
    return EXIT_OK


def cmd_criteria(args):
    config = load_config(args.config)
    if args.visibility:
        _, _, v = scan_visibility(config, workers=args.workers)
        report = build_report(config, visibility_value=v)
    else:
        report = build_report(config)
    sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_sweep(args):
    values = parse_values(args.values)
    config = load_config(args.config)
    key = SWEEP_KEYS[args.param]
    # validate every point before the first scan
    configs = [config.replace(key, v) for v in values]
    header = f"{args.param}," + InterferenceReport.csv_header()
    if not args.no_runtime:
        header += ",runtime_s"
    rows = []
    for value, cfg in zip(values, configs):
        start = time.perf_counter()
        _, _, v = scan_visibility(cfg, workers=args.workers)
        row = f"{value:.12g}," + build_report(cfg, visibility_value=v).csv_row()
        if not args.no_runtime:
            row += f",{time.perf_counter() - start:.3f}"
        rows.append(row)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        for line in config.to_lines():
            fh.write(f"# {line}\n")
        fh.write(f"# sweep {key} over {', '.join(f'{v:.12g}' for v in values)}\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twopulse-spdc",
        description="Angular spectra and interference criteria for two-pulse pumped down-conversion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="write the angular spectrum as CSV")
    scan.add_argument("config")
    scan.add_argument("-o", "--output", required=True)
    scan.add_argument("--gnuplot-script", metavar="PATH", help="also write a gnuplot script for the CSV")
    scan.add_argument("--workers", type=int, default=None, help="threads for the scan points")
    scan.set_defaults(func=cmd_scan)

    crit = sub.add_parser("criteria", help="print Q, the filter criterion and predicted maxima")
    crit.add_argument("config")
    crit.add_argument("--visibility", action="store_true", help="run the scans and report the visibility")
    crit.add_argument("--workers", type=int, default=None)
    crit.set_defaults(func=cmd_criteria)

    sweep = sub.add_parser("sweep", help="visibility and criteria over one parameter")
    sweep.add_argument("config")
    sweep.add_argument("--param", required=True, choices=sorted(SWEEP_KEYS))
    sweep.add_argument("--values", required=True, help="comma-separated list, e.g. 279,465,744")
    sweep.add_argument("-o", "--output", required=True)
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--no-runtime", action="store_true", help="omit the runtime column (byte-stable output)")
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SPDCError, ValueError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
