"""Command-line surface.

Subcommands: state, channel, qfi, cfi, bulk, scan, oracle, validate.
Exit codes: 0 success, 2 config error, 3 numeric failure, 4 regime
failure.
"""

import argparse
import math
import sys

import numpy as np

from . import __version__, metrology, oracle, sweep
from .bec import initial_state, mode_frequency, thermal_spec, validate_regime
from .channel import WaveParams, channel_symplectic, resonant_frequency
from .config import load_config
from .errors import (CalibrationError, ConfigError, NumericError, RegimeError)
from .gaussian import purity, symplectic_eigenvalues


def _duration(cfg, args):
    if args.time is not None:
        return args.time
    if cfg.time_convention == "omega1_units":
        return cfg.time_value / mode_frequency(cfg.params, 1)
    return cfg.time_value


def _require_regime(cfg, duration):
    report = validate_regime(cfg.params, cfg.modes, duration)
    if report.worst == "fail":
        bad = ", ".join(c.name for c in report.checks if c.grade == "fail")
        raise RegimeError(f"regime validation failed: {bad}")


def _matrix_lines(mat):
    return "\n".join("  ".join(f"{v: .10e}" for v in row) for row in mat)


def cmd_state(cfg, args, out):
    sigma = initial_state(cfg.params, cfg.modes, cfg.r, cfg.theta)
    spec = thermal_spec(cfg.params, cfg.modes)
    print("initial covariance matrix (x1 p1 x2 p2):", file=out)
    print(_matrix_lines(sigma), file=out)
    # the seed squeezer preserves the Williamson spectrum, so the
    # symplectic eigenvalues are the thermal occupations by construction
    # (recomputing them from the double-precision matrix loses accuracy
    # once cosh(2r) is large)
    print(f"symplectic eigenvalues: {spec.nu_n:.10g}, {spec.nu_m:.10g}",
          file=out)
    print(f"purity: {1.0 / (spec.nu_n * spec.nu_m):.10g}", file=out)
    print(f"nu_n = {spec.nu_n:.10g}  nu_m = {spec.nu_m:.10g}", file=out)
    print(f"x_n = {spec.x_n:.6g}  x_m = {spec.x_m:.6g}", file=out)
    return 0


def cmd_channel(cfg, args, out):
    duration = _duration(cfg, args)
    from .channel import ChannelModel, channel_squeezing
    wave = WaveParams(epsilon=cfg.epsilon,
                      omega_gw=resonant_frequency(cfg.params, cfg.modes),
                      duration=duration)
    s = channel_squeezing(wave, cfg.channel)
    smat = channel_symplectic(wave, cfg.channel)
    print(f"resonance Omega = {wave.omega_gw:.10g} rad/s", file=out)
    print(f"channel squeezing s = eps * R * t = {s:.10g}", file=out)
    print("channel symplectic matrix:", file=out)
    print(_matrix_lines(smat), file=out)
    return 0


def cmd_qfi(cfg, args, out):
    duration = _duration(cfg, args)
    _require_regime(cfg, duration)
    res = metrology.strain_qfi(cfg.params, cfg.modes, cfg.r, cfg.theta,
                               cfg.channel.rate_per_strain_hz * duration,
                               cfg.channel.channel_phase_rad)
    bound = sweep.cramer_rao_bound(res.h_eps, cfg.probes)
    print(f"duration: {duration:.10g} s", file=out)
    print(f"strain QFI H_eps: {res.h_eps:.10g}", file=out)
    print(f"increment ladder: {res.ladder}", file=out)
    print(f"Lambda at smallest increment: {res.lambda_value:.6g}", file=out)
    print(f"delta_eps bound (M={cfg.probes}): {bound:.10g}", file=out)
    print(f"sensitivity density: "
          f"{sweep.sensitivity_density(bound, duration):.10g} Hz^-1/2",
          file=out)
    return 0


def cmd_cfi(cfg, args, out):
    duration = _duration(cfg, args)
    spec = thermal_spec(cfg.params, cfg.modes)
    rate_t = cfg.channel.rate_per_strain_hz * duration
    res = metrology.classical_fisher(cfg.r, cfg.epsilon * rate_t, rate_t,
                                     spec, variant=cfg.cfi_variant)
    print(f"duration: {duration:.10g} s", file=out)
    print(f"variant: {res.variant}", file=out)
    print(f"F_eps: {res.f_eps:.10g}", file=out)
    print(f"tail mass: {res.tail_mass:.3g}", file=out)
    return 0


def cmd_bulk(cfg, args, out):
    duration = _duration(cfg, args)
    wave = WaveParams(epsilon=cfg.epsilon,
                      omega_gw=resonant_frequency(cfg.params, cfg.modes),
                      duration=duration)
    res = metrology.bulk_qfi(cfg.params, wave, duration,
                             convention=cfg.bulk_wavenumber)
    psi = metrology.bulk_phase(cfg.params, wave, duration,
                               convention=cfg.bulk_wavenumber)
    print(f"wavenumber convention: {cfg.bulk_wavenumber}", file=out)
    print(f"bulk phase Psi(t): {psi:.10g} rad", file=out)
    print(f"bulk QFI at t: {res.value:.10g}", file=out)
    print(f"bulk QFI envelope max: {res.time_max:.10g}", file=out)
    return 0


def cmd_scan(cfg, args, out):
    table = sweep.scan(cfg)
    path = args.output or cfg.output
    if path:
        table.save(path)
        print(f"wrote {len(table.rows)} rows to {path}", file=out)
    else:
        out.write(table.to_csv())
    return 0


def cmd_oracle(cfg, args, out):
    omega1 = mode_frequency(cfg.params, 1)
    sweep_pts = [(1e-4, w1t / omega1) for w1t in (30.0, 60.0, 100.0, 150.0)]
    sweep_pts.append((5e-5, 100.0 / omega1))
    cfg_oracle = oracle.OracleConfig(
        n_modes=max(8, cfg.modes.m + 4), **cfg.oracle_options) \
        if cfg.oracle_options else None
    model = oracle.extract_rate(cfg.params, cfg.modes, sweep_pts,
                                cfg=cfg_oracle)
    print("[channel]", file=out)
    print(f"rate_per_strain_hz = {model.rate_per_strain_hz:.17g}", file=out)
    print(f"channel_phase_rad = {model.channel_phase_rad:.17g}", file=out)
    print(f"provenance_note = {model.provenance_note}", file=out)
    if args.output:
        wave = WaveParams(epsilon=1e-4,
                          omega_gw=resonant_frequency(cfg.params, cfg.modes),
                          duration=100.0 / omega1)
        run_cfg = cfg_oracle or oracle.OracleConfig(
            n_modes=max(8, cfg.modes.m + 4))
        res = oracle.simulate_moving_boundary(
            cfg.params, wave, run_cfg,
            mode_pairs=((cfg.modes.n, cfg.modes.m),))
        pair = (cfg.modes.n, cfg.modes.m)
        lines = ["t,abs_beta_nm,arg_beta_nm,identity_residual"]
        for i, t in enumerate(res.times):
            lines.append(f"{t:.17g},{res.abs_beta[pair][i]:.17g},"
                         f"{res.arg_beta[pair][i]:.17g},"
                         f"{res.residual_series[i]:.17g}")
        with open(args.output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote time series to {args.output}", file=out)
    return 0


def cmd_validate(cfg, args, out):
    duration = _duration(cfg, args)
    report = validate_regime(cfg.params, cfg.modes, duration)
    for check in report.checks:
        print(f"{check.name}: ratio {check.ratio:.4g} -> {check.grade}",
              file=out)
    worst = report.worst
    print(f"overall: {worst}", file=out)
    if worst == "fail":
        raise RegimeError("regime validation failed")
    return 0


_COMMANDS = {
    "state": cmd_state, "channel": cmd_channel, "qfi": cmd_qfi,
    "cfi": cmd_cfi, "bulk": cmd_bulk, "scan": cmd_scan,
    "oracle": cmd_oracle, "validate": cmd_validate,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="becgw",
        description="Phononic strain-sensitivity analysis for trapped "
                    "Bose-Einstein condensates")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sub = subs.add_parser(name)
        sub.add_argument("--config", required=True,
                         help="path to a run configuration file")
        sub.add_argument("--time", type=float, default=None,
                         help="override duration in seconds")
        sub.add_argument("--output", default=None,
                         help="output path (scan CSV / oracle time series)")
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return _COMMANDS[args.command](cfg, args, out)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, CalibrationError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except RegimeError as exc:
        print(f"regime failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
