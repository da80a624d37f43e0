"""Command-line interface.

Subcommands: absorb, echo, sweep, preset, oracle-check.  Exit codes:
0 success, 1 validation error, 2 numerical failure.  Report-style
subcommands write a rendered PNG next to each --out CSV unless --no-plot
is given.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from ..echo import run_protocol
from ..mapping import norm, transmit
from .config import ConfigError, parse_config
from .presets import PRESETS, build_preset_config, run_preset
from .sweep import run_sweep, write_csv, write_spectrum

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def _write_table(path, header, rows) -> None:
    lines = [",".join(header)]
    for r in rows:
        cells = [c if isinstance(c, str) else f"{c:.9g}" for c in r]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_config(path: str):
    try:
        return parse_config(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        print(f"error: config file not found: {path}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)
    except ConfigError as e:
        print("error: invalid configuration", file=sys.stderr)
        for v in e.violations:
            print(f"  {v}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def _maybe_plot(args, render, out) -> None:
    if out is None or args.no_plot:
        return
    png = Path(out).with_suffix(".png")
    render(png)
    print(f"figure written to {png}")


def _cmd_absorb(args) -> int:
    cfg = _load_config(args.config)
    medium = cfg.medium()
    photon = cfg.photon()
    out_spec = transmit(medium, photon)
    n_in = norm(photon.spectrum)
    n_out = norm(out_spec)
    rows = [(medium.alpha_center, medium.length, n_in, n_out,
             1.0 - n_out / n_in)]
    header = ("alpha_center_per_cm", "length_cm", "input_norm",
              "transmitted_norm", "absorbed_probability")
    if args.out:
        _write_table(args.out, header, rows)
        print(f"table written to {args.out}")
    else:
        print(",".join(header))
        print(",".join(f"{v:.9g}" for v in rows[0]))
    if args.spectrum_out:
        write_spectrum(out_spec, args.spectrum_out)
        print(f"spectrum written to {args.spectrum_out}")
    def render(png):
        from .plots import plot_spectra
        plot_spectra(png, [("input", photon.spectrum),
                           ("transmitted", out_spec)])
    _maybe_plot(args, render, args.out)
    return EXIT_OK


def _cmd_echo(args) -> int:
    cfg = _load_config(args.config)
    medium = cfg.medium()
    grid = cfg.grid()
    photon = cfg.photon(grid)
    pulses = cfg.pulses(medium, grid)
    result = run_protocol(medium, photon, pulses, cfg.schedule(),
                          bracket=cfg.bracket)
    p = result.echo.total_probability
    if not math.isfinite(p):
        print("error: echo probability is not finite", file=sys.stderr)
        return EXIT_NUMERICAL
    header = ("absorbed_probability", "echo_total_probability",
              "peak_ratio", "distortion_ratio_center", "b1_suppression_max")
    from ..echo import distortion_ratio
    u = grid.points()
    ratio0 = float(np.interp(0.0, u, result.echo.ratio_curve))
    rows = [(result.absorbed, p, ratio0,
             float(distortion_ratio(medium, 0.0)),
             float(result.b1_suppression.max()))]
    if args.out:
        _write_table(args.out, header, rows)
        print(f"table written to {args.out}")
    else:
        print(",".join(header))
        print(",".join(f"{v:.9g}" for v in rows[0]))
    if args.spectrum_out:
        write_spectrum(result.echo.spectrum, args.spectrum_out)
        print(f"echo spectrum written to {args.spectrum_out}")
    def render(png):
        from .plots import plot_spectra
        from ..echo import ideal_limit_spectrum
        ideal = ideal_limit_spectrum(photon, cfg.schedule(), medium)
        plot_spectra(png, [("input", photon.spectrum),
                           ("echo", result.echo.spectrum),
                           ("ideal mirror", ideal)])
    _maybe_plot(args, render, args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    if not cfg.axes:
        print("error: config declares no sweep axes", file=sys.stderr)
        return EXIT_VALIDATION
    result = run_sweep(cfg, workers=args.workers)
    write_csv(result, args.out)
    print(f"{result.n_rows} rows written to {args.out}")
    flagged = sum(1 for _, _, s in result.rows if s != "ok")
    if flagged:
        print(f"warning: {flagged} rows flagged non-finite")
    def render(png):
        from .plots import plot_preset
        from .presets import PresetOutput
        from .sweep import METRICS
        rows = [tuple(v) + tuple(m[k] for k in METRICS) + (s,)
                for v, m, s in result.rows]
        if len(result.axis_names) == 2:
            out = PresetOutput(name="sweep",
                               header=result.axis_names + METRICS + ("status",),
                               rows=rows)
            plot_preset(out, png)
    if len(cfg.axes) == 2:
        _maybe_plot(args, render, args.out)
    return EXIT_OK


def _cmd_preset(args) -> int:
    cfg = build_preset_config(args.name)
    if args.convention:
        cfg = cfg.replace(alpha_convention=args.convention)
    if args.bracket:
        cfg = cfg.replace(bracket=args.bracket)
    output = run_preset(args.name, cfg, workers=args.workers)
    out = args.out or f"{args.name}.csv"
    _write_table(out, output.header, output.rows)
    print(f"{len(output.rows)} rows written to {out}")
    for extra_name, (hdr, rows) in output.extras.items():
        p = Path(out).with_name(f"{Path(out).stem}_{extra_name}.csv")
        _write_table(p, hdr, rows)
        print(f"{len(rows)} rows written to {p}")
    if args.name == "fig3":
        for row in output.rows:
            print(f"  bracket={row[0]:<6s} convention={row[1]:<10s} "
                  f"total_probability={row[2]:.4f} asymmetry={row[4]:.4f}")
    def render(png):
        from .plots import plot_preset
        plot_preset(output, png)
    _maybe_plot(args, render, out)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    from ..checks import (check_absorption_stage, check_pulse_stage,
                          check_retrieval_stage)
    stages = (("pulse", "absorption", "retrieval") if args.stage == "all"
              else (args.stage,))
    ok = True
    for stage in stages:
        if stage == "pulse":
            rep = check_pulse_stage()
        elif stage == "absorption":
            rep = check_absorption_stage()
        else:
            rep = check_retrieval_stage(fast=args.fast)
        print(f"== {rep.name} stage ==")
        for line in rep.lines:
            print(f"  {line}")
        ok = ok and rep.passed
        if stage == "retrieval" and args.dump:
            from ..oracle import run_protocol_oracle
            from ..checks import _retrieval_fixture
            run_protocol_oracle(_retrieval_fixture(args.fast)).dump_trajectory(
                args.dump)
            print(f"  trajectory dump written to {args.dump}")
    print("oracle-check:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="echomem",
        description="Photon-echo quantum-memory simulator: absorption, "
                    "sech-pulse transfer, backward-retrieval echo spectra, "
                    "figure presets and oracle cross-checks.")
    sub = ap.add_subparsers(dest="command")

    def add_common(p, spectrum=True):
        p.add_argument("--out", help="output CSV path")
        if spectrum:
            p.add_argument("--spectrum-out",
                           help="two-column spectrum dump (detuning, |f|^2)")
        p.add_argument("--no-plot", action="store_true",
                       help="do not render a PNG next to --out")

    p = sub.add_parser("absorb", help="stage-1 transmission through the cell")
    p.add_argument("--config", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_absorb)

    p = sub.add_parser("echo", help="full protocol: echo spectrum and metrics")
    p.add_argument("--config", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_echo)

    p = sub.add_parser("sweep", help="parameter sweep to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("preset", help="published-figure parameter sets")
    p.add_argument("name", choices=PRESETS)
    p.add_argument("--convention", choices=("amplitude", "intensity"))
    p.add_argument("--bracket", choices=("exact", "paper"))
    p.add_argument("--workers", type=int, default=1)
    add_common(p, spectrum=False)
    p.set_defaults(func=_cmd_preset)

    p = sub.add_parser("oracle-check",
                       help="brute-force ODE oracle vs closed forms")
    p.add_argument("--stage", choices=("pulse", "absorption", "retrieval",
                                       "all"), default="all")
    p.add_argument("--fast", action="store_true",
                   help="smaller retrieval fixture")
    p.add_argument("--dump", help="write a trajectory dump (columnar text)")
    p.set_defaults(func=_cmd_oracle_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "command", None) is None:
        ap.print_help()
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except SystemExit as e:
        return int(e.code or 0)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ArithmeticError, RuntimeError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
