"""Command-line front end: ``chiralwg {spectrum,map2d,windows,nonreciprocity,verify}``."""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .regimes import NoNonreciprocityError, optimal_nonreciprocity
from .sweep import (
    Axis,
    UsageError,
    build_config,
    format_table,
    parse_number,
    parse_setting,
    read_settings,
    run_sweep,
    write_csv,
)
from .windows import find_reflection_windows, find_router_windows

DEFAULT_OBS = "T_left,R_left,T_right,R_right"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _settings(args) -> dict:
    out = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc.strerror}") from exc
        out.update(read_settings(text))
    for item in args.set or []:
        if "=" not in item:
            raise UsageError(f"--set expects KEY=VAL, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_setting(k, v)
    return out


def _obs(text: str) -> list[str]:
    return [o.strip() for o in text.split(",") if o.strip()]


def _emit(args, columns, rows) -> None:
    rows = np.asarray(rows, dtype=float).reshape(-1, len(columns))
    if args.format == "table":
        text = format_table(columns, rows)
    else:
        buf = io.StringIO()
        write_csv(buf, columns, rows)
        text = buf.getvalue()
    _write(args, text)


def _write(args, text: str) -> None:
    if args.out and args.out != "-":
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_spectrum(args) -> int:
    axis = Axis.parse(args.delta, name="delta")
    grid = run_sweep(_settings(args), axis, _obs(args.obs), relative=args.relative)
    _emit(args, grid.columns, grid.rows)
    return EXIT_OK


def cmd_map2d(args) -> int:
    fixed_delta = 0.0
    if args.axis1:
        axis1 = Axis.parse(args.axis1)
        if args.delta is not None:
            if ":" in args.delta:
                raise UsageError("--delta must be a single value when --axis1 is not delta")
            fixed_delta = parse_number(args.delta)
    else:
        axis1 = Axis.parse(args.delta or "-50:50:401", name="delta")
    axis2 = Axis.parse(args.axis2)
    grid = run_sweep(_settings(args), axis1, _obs(args.obs), axis2=axis2, delta=fixed_delta, relative=args.relative)
    _emit(args, grid.columns, grid.rows)
    return EXIT_OK


def cmd_windows(args) -> int:
    axis = Axis.parse(args.delta, name="delta")
    cfg = build_config(_settings(args))
    find = find_router_windows if args.router else find_reflection_windows
    wins = find(cfg, (axis.start, axis.stop), threshold=args.threshold, resolution=axis.count)
    rows = [[w.phase, w.center, w.width, w.min_T] for w in wins]
    _emit(args, ["phi12", "center", "width", "min_T"], rows)
    return EXIT_OK


def cmd_nonreciprocity(args) -> int:
    cfg = build_config(_settings(args))
    try:
        p = optimal_nonreciprocity(cfg)
    except NoNonreciprocityError:
        _write(args, "no nonreciprocity possible: gamma_x equals gamma_y\n")
        return EXIT_OK
    _emit(args, ["gamma_opt", "delta", "T_left", "T_right", "contrast"], [[p.gamma, p.delta, p.T_left, p.T_right, p.contrast]])
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    results = verify_mod.run_all(args.seed, args.trials, fault=args.inject_fault)
    _write(args, "".join(r.line() + "\n" for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chiralwg", description="Single-photon scattering off a chirally coupled giant atom.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, obs_default=None):
        p.add_argument("--config", metavar="PATH", help="flat key=value configuration file")
        p.add_argument("--set", action="append", metavar="KEY=VAL", help="override a setting (repeatable)")
        p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "table"), default="csv")
        if obs_default is not None:
            p.add_argument("--obs", default=obs_default, metavar="LIST", help="comma-separated observables")
            p.add_argument("--relative", action="store_true", help="measure detuning from the Lamb shift")

    p = sub.add_parser("spectrum", help="observables against detuning")
    common(p, DEFAULT_OBS)
    p.add_argument("--delta", default="-50:50:1001", metavar="START:STOP:COUNT")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("map2d", help="observables on a two-parameter grid")
    common(p, "T_left")
    p.add_argument("--axis1", metavar="KEY=START:STOP:COUNT", help="fast axis (default: delta from --delta)")
    p.add_argument("--axis2", required=True, metavar="KEY=START:STOP:COUNT")
    p.add_argument("--delta", metavar="START:STOP:COUNT|VALUE", help="detuning range, or a fixed detuning when --axis1 is given")
    p.set_defaults(func=cmd_map2d)

    p = sub.add_parser("windows", help="locate total-reflection windows")
    common(p)
    p.add_argument("--delta", default="-50:50:4001", metavar="START:STOP:COUNT")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--router", action="store_true", help="scan every phase 2 m pi / N")
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("nonreciprocity", help="optimal loss for maximal contrast")
    common(p)
    p.set_defaults(func=cmd_nonreciprocity)

    p = sub.add_parser("verify", help="randomised invariant and oracle suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = ("--delta", "--axis1", "--axis2", "--set")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Attach values such as ``-5:5:11`` to their flag; argparse would read them as options."""
    out, k = [], 0
    while k < len(argv):
        a = argv[k]
        if a in _VALUE_FLAGS and k + 1 < len(argv) and argv[k + 1].startswith("-") and len(argv[k + 1]) > 1 and (argv[k + 1][1].isdigit() or argv[k + 1][1] == "."):
            out.append(f"{a}={argv[k + 1]}")
            k += 2
        else:
            out.append(a)
            k += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"chiralwg: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
