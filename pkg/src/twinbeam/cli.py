"""Command-line front end.

Subcommands: trace (S(tau) series as CSV), events (detected deaths and
revivals as JSON), sweep (one-axis parameter scan as CSV), coeffs
(time-dependent and secular coefficient series as CSV), verify (closed forms
against the quadrature oracle). Configuration comes from defaults, an
optional JSON config file, and flags, in that order of precedence (flags
win). When an output file is requested, a JSON manifest describing the
effective configuration accompanies it as <out>.manifest.json; timestamps
and wall time live only in the manifest, so the data files themselves are
byte-stable across reruns.

Exit codes: 0 success, 1 invalid arguments or configuration, 2 numerical
failure (a quadrature that did not converge, or a verify run out of bounds).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import __version__
from .analysis import (
    compute_trace,
    detect_events,
    sweep,
    time_grid,
)
from .kernels import (
    big_gamma,
    delta_coeff,
    gamma_coeff,
    oracle_coefficient,
    pi_coeff,
)
from .numerics import ConvergenceError
from .params import (
    DIAG_MODES,
    ConfigError,
    GridConfig,
    PhysicalConfig,
    validate,
)
from .secular import SecularAccumulator

TRACE_HEADER = "tau,S,Gamma1,Gamma2,physical"
SWEEP_HEADER = "axis_value,tau_dis,n_revivals,survived"
COEFFS_HEADER = ("tau,delta,pi,gamma,Gamma,"
                 "delta_gamma,delta_co,delta_si,pi_co,pi_si")

VERIFY_TAUS = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
VERIFY_R_OSC = (0.01, 0.1, 1.0, 10.0)
VERIFY_KINDS = ("delta", "pi", "gamma")
VERIFY_BOUND = 1e-7

_DEFAULTS = {
    "r": 1.0,
    "x1": 1.0,
    "x2": 1.0,
    "alpha": 0.1,
    "temperature_ratio": 100.0,
    "tau_max": 10.0,
    "dtau": 1e-3,
    "refine_tol": 1e-8,
    "diag_mode": "equal",
}
_NUMERIC_KEYS = tuple(k for k in _DEFAULTS if k != "diag_mode")


class _UsageError(Exception):
    """Invalid command line or config file; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _add_physics_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=float, default=None,
                   help="squeezing parameter of the initial state")
    p.add_argument("--x1", type=float, default=None,
                   help="resonance parameter of oscillator 1 (cutoff/frequency)")
    p.add_argument("--x2", type=float, default=None,
                   help="resonance parameter of oscillator 2")
    p.add_argument("--alpha", type=float, default=None,
                   help="system-reservoir coupling")
    p.add_argument("--temperature-ratio", dest="temperature_ratio",
                   type=float, default=None,
                   help="bath temperature over cutoff energy")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau-max", dest="tau_max", type=float, default=None,
                   help="end of the dimensionless time window")
    p.add_argument("--dtau", type=float, default=None,
                   help="target sampling step")
    p.add_argument("--refine-tol", dest="refine_tol", type=float, default=None,
                   help="root refinement tolerance")


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, default=None,
                   help="JSON config file; flags override its values")
    p.add_argument("--out", type=Path, default=None,
                   help="output file (stdout when omitted); a manifest is "
                        "written alongside as <out>.manifest.json")
    p.add_argument("--diag-mode", dest="diag_mode", choices=DIAG_MODES,
                   default=None,
                   help="secular structure of the single-mode diagonals")


def build_parser() -> _Parser:
    parser = _Parser(prog="twinbeam",
                     description="Short-time entanglement dynamics of two "
                                 "detuned oscillators in independent hot baths")
    parser.add_argument("--version", action="version",
                        version=f"twinbeam {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="emit the S(tau) series as CSV")
    p_events = sub.add_parser("events", help="emit detected deaths/revivals as JSON")
    p_sweep = sub.add_parser("sweep", help="scan one parameter axis")
    p_coeffs = sub.add_parser("coeffs", help="emit coefficient series as CSV")
    p_verify = sub.add_parser("verify",
                              help="check closed-form coefficients against "
                                   "the quadrature oracle")

    for p in (p_trace, p_events, p_sweep, p_coeffs):
        _add_physics_flags(p)
        _add_grid_flags(p)
        _add_io_flags(p)

    p_sweep.add_argument("--axis", choices=("x1", "x2", "r"), required=True,
                         help="parameter to scan")
    p_sweep.add_argument("--values", type=float, nargs="+", required=True,
                         help="axis values, one row each")
    p_coeffs.add_argument("--oscillator", type=int, choices=(1, 2), default=1,
                          help="which oscillator's coefficients to emit")

    p_verify.add_argument("--alpha", type=float, default=None)
    p_verify.add_argument("--temperature-ratio", dest="temperature_ratio",
                          type=float, default=None)
    p_verify.add_argument("--out", type=Path, default=None)
    return parser


def _load_config_file(path: Path) -> dict:
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise _UsageError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise _UsageError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(raw) - set(_DEFAULTS))
    if unknown:
        raise _UsageError(
            f"config file {path} has unknown keys: {', '.join(unknown)}")
    for key in _NUMERIC_KEYS:
        if key in raw and not isinstance(raw[key], (int, float)):
            raise _UsageError(f"config key {key} must be a number, "
                              f"got {raw[key]!r}")
    if "diag_mode" in raw and raw["diag_mode"] not in DIAG_MODES:
        raise _UsageError(f"config key diag_mode must be one of {DIAG_MODES}, "
                          f"got {raw['diag_mode']!r}")
    return raw


def _effective_settings(args: argparse.Namespace) -> dict:
    settings = dict(_DEFAULTS)
    config_path = getattr(args, "config", None)
    if config_path is not None:
        settings.update(_load_config_file(config_path))
    for key in _DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    return settings


def _split_settings(settings: dict) -> tuple[PhysicalConfig, GridConfig, str]:
    physical = PhysicalConfig(
        r=settings["r"], x1=settings["x1"], x2=settings["x2"],
        alpha=settings["alpha"], temp_ratio=settings["temperature_ratio"])
    grid = GridConfig(tau_max=settings["tau_max"], dtau=settings["dtau"],
                      refine_tol=settings["refine_tol"])
    return physical, grid, settings["diag_mode"]


def _manifest(command: str, settings: dict, warnings: tuple[str, ...],
              wall_time: float, extra: Optional[dict] = None) -> dict:
    manifest = {
        "tool": "twinbeam",
        "version": __version__,
        "command": command,
        "config": {k: settings[k] for k in
                   ("r", "x1", "x2", "alpha", "temperature_ratio")},
        "grid": {k: settings[k] for k in ("tau_max", "dtau", "refine_tol")},
        "diag_mode": settings["diag_mode"],
        "warnings": list(warnings),
        "wall_time_s": wall_time,
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        manifest.update(extra)
    return manifest


def _emit(data: str, out: Optional[Path], manifest: dict) -> None:
    if out is None:
        sys.stdout.write(data)
        return
    out = Path(out)
    out.write_text(data)
    sidecar = out.with_name(out.name + ".manifest.json")
    sidecar.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _cmd_trace(args: argparse.Namespace) -> int:
    settings = _effective_settings(args)
    physical, grid, diag_mode = _split_settings(settings)
    config = validate(physical, grid)
    started = time.perf_counter()
    trace = compute_trace(config, grid, diag_mode=diag_mode)
    wall = time.perf_counter() - started
    lines = [TRACE_HEADER]
    for tau, s, g1, g2, ok in zip(trace.taus, trace.s_values, trace.gamma1,
                                  trace.gamma2, trace.physicality_flags):
        lines.append(f"{_fmt(tau)},{_fmt(s)},{_fmt(g1)},{_fmt(g2)},{int(ok)}")
    _emit("\n".join(lines) + "\n", args.out,
          _manifest("trace", settings, config.warnings, wall))
    return 0


def _cmd_events(args: argparse.Namespace) -> int:
    settings = _effective_settings(args)
    physical, grid, diag_mode = _split_settings(settings)
    config = validate(physical, grid)
    started = time.perf_counter()
    trace = compute_trace(config, grid, diag_mode=diag_mode)
    events = detect_events(trace)
    wall = time.perf_counter() - started
    payload = {
        "tau_dis": events.tau_dis,
        "crossings": list(events.crossings),
        "n_revivals": events.n_revivals,
        "survived": events.survived,
        "touches": list(events.touches),
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out,
          _manifest("events", settings, config.warnings, wall))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    settings = _effective_settings(args)
    physical, grid, diag_mode = _split_settings(settings)
    config = validate(physical, grid)
    started = time.perf_counter()
    rows = sweep(config, args.axis, args.values, grid, diag_mode=diag_mode)
    wall = time.perf_counter() - started
    lines = [SWEEP_HEADER]
    row_errors = []
    for row in rows:
        tau_dis = row.tau_dis if row.tau_dis is not None else float("nan")
        lines.append(f"{_fmt(row.value)},{_fmt(tau_dis)},"
                     f"{row.n_revivals},{int(row.survived)}")
        if row.error:
            row_errors.append({"value": row.value, "error": row.error})
    extra = {"axis": args.axis, "row_errors": row_errors}
    _emit("\n".join(lines) + "\n", args.out,
          _manifest("sweep", settings, config.warnings, wall, extra))
    return 0


def _cmd_coeffs(args: argparse.Namespace) -> int:
    settings = _effective_settings(args)
    physical, grid, _diag = _split_settings(settings)
    config = validate(physical, grid)
    w = config.r1 if args.oscillator == 1 else config.r2
    started = time.perf_counter()
    taus = time_grid(grid)
    acc = SecularAccumulator(taus, w, config.alpha, config.temp_ratio,
                             oscillator=args.oscillator)
    lines = [COEFFS_HEADER]
    for tau in taus:
        tau = float(tau)
        sec = acc.values_at(tau)
        lines.append(",".join([
            _fmt(tau),
            _fmt(delta_coeff(tau, w, config.alpha, config.temp_ratio)),
            _fmt(pi_coeff(tau, w, config.alpha, config.temp_ratio)),
            _fmt(gamma_coeff(tau, w, config.alpha)),
            _fmt(big_gamma(tau, w, config.alpha)),
            _fmt(sec.delta_gamma), _fmt(sec.delta_co), _fmt(sec.delta_si),
            _fmt(sec.pi_co), _fmt(sec.pi_si),
        ]))
    wall = time.perf_counter() - started
    extra = {"oscillator": args.oscillator}
    _emit("\n".join(lines) + "\n", args.out,
          _manifest("coeffs", settings, config.warnings, wall, extra))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    alpha = args.alpha if args.alpha is not None else _DEFAULTS["alpha"]
    temp = (args.temperature_ratio if args.temperature_ratio is not None
            else _DEFAULTS["temperature_ratio"])
    closed = {
        "delta": lambda tau, r: delta_coeff(tau, r, alpha, temp),
        "pi": lambda tau, r: pi_coeff(tau, r, alpha, temp),
        "gamma": lambda tau, r: gamma_coeff(tau, r, alpha),
    }
    lines = [f"{'kind':<6} {'tau':>5} {'r_osc':>6} {'closed':>18} "
             f"{'oracle':>18} {'|diff|':>10} status"]
    worst = 0.0
    failures = 0
    started = time.perf_counter()
    for kind in VERIFY_KINDS:
        for r_osc in VERIFY_R_OSC:
            for tau in VERIFY_TAUS:
                want = closed[kind](tau, r_osc)
                got = oracle_coefficient(kind, tau, r_osc, alpha, temp)
                diff = abs(want - got.value)
                worst = max(worst, diff)
                ok = diff <= VERIFY_BOUND and got.converged
                failures += 0 if ok else 1
                lines.append(
                    f"{kind:<6} {tau:>5g} {r_osc:>6g} {want:>18.12g} "
                    f"{got.value:>18.12g} {diff:>10.3g} "
                    f"{'pass' if ok else 'FAIL'}")
    wall = time.perf_counter() - started
    lines.append(f"worst |closed - oracle| = {worst:.3g} "
                 f"(bound {VERIFY_BOUND:g}); "
                 f"{len(lines) - 1 - failures}/{len(lines) - 1} pass")
    settings = dict(_DEFAULTS)
    settings["alpha"] = alpha
    settings["temperature_ratio"] = temp
    _emit("\n".join(lines) + "\n", getattr(args, "out", None),
          _manifest("verify", settings, (), wall))
    return 0 if failures == 0 else 2


_COMMANDS = {
    "trace": _cmd_trace,
    "events": _cmd_events,
    "sweep": _cmd_sweep,
    "coeffs": _cmd_coeffs,
    "verify": _cmd_verify,
}


def run(argv: Optional[list[str]] = None) -> int:
    """Parse argv, dispatch, and map failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"twinbeam: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help/--version print and exit
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (_UsageError, ConfigError) as exc:
        print(f"twinbeam: error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"twinbeam: numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"twinbeam: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"twinbeam: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
