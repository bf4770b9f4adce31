"""Parameter sweeps, Cramer-Rao bounds, and strain-sensitivity tables.

A sweep walks one axis (time, frequency, temperature, or squeezing),
computes the QFI-based strain bound at every grid point, and emits a
CSV table with full metadata.  Per-point numeric failures become
flagged rows; a run fails only when more than 20% of rows are flagged.
Rows are assembled in grid order, so output is deterministic for a
fixed platform regardless of the worker count.
"""

import dataclasses
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__, metrology
from .bec import mode_frequency, thermal_spec, validate_regime
from .channel import WaveParams, resonant_frequency
from .errors import NumericError, RegimeError

COLUMNS = ("axis_value", "h_eps", "delta_eps_bound",
           "sensitivity_density", "cfi", "bulk_qfi_max", "flags")

WORKERS_ENV = "BECGW_WORKERS"


def cramer_rao_bound(h_eps, probes=1):
    """Strain-estimation bound delta_eps = 1 / sqrt(M H_eps)."""
    if h_eps <= 0:
        raise NumericError(f"undefined Cramer-Rao bound for H = {h_eps}")
    if probes < 1:
        raise ValueError("probe count must be >= 1")
    return 1.0 / math.sqrt(probes * h_eps)


def sensitivity_density(delta_eps, duration):
    """Per-root-hertz sensitivity: delta_eps * sqrt(t)."""
    if duration <= 0:
        raise ValueError("duration must be positive")
    return delta_eps * math.sqrt(duration)


@dataclass(frozen=True)
class SweepTable:
    columns: tuple
    rows: tuple                 # tuples aligned with columns
    metadata: tuple             # ordered (key, value) pairs

    def to_csv(self):
        lines = [f"# {key}: {value}" for key, value in self.metadata]
        lines.append(",".join(self.columns))
        for row in self.rows:
            cells = []
            for cell in row:
                if isinstance(cell, str):
                    cells.append(cell)
                else:
                    cells.append(f"{cell:.17g}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_csv())


def _point_geometry(cfg, axis_value):
    """Resolve per-point params, probe squeezing, duration, and rate.

    The calibrated rate scales linearly with omega_1 (an oracle-checked
    invariant), so frequency sweeps rescale the configured rate by the
    frequency ratio instead of re-running the oracle per point.
    """
    params = cfg.params
    r = cfg.r
    base_omega1 = mode_frequency(params, 1)
    rate = cfg.channel.rate_per_strain_hz

    if cfg.axis == "time":
        duration = axis_value
    elif cfg.axis == "frequency":
        omega1 = axis_value
        params = dataclasses.replace(
            params, sound_speed=omega1 * params.trap_length / math.pi)
        rate = rate * omega1 / base_omega1
        duration = (cfg.time_value / omega1
                    if cfg.time_convention == "omega1_units"
                    else cfg.time_value)
    elif cfg.axis == "temperature":
        params = dataclasses.replace(params, temperature=axis_value)
        duration = (cfg.time_value / base_omega1
                    if cfg.time_convention == "omega1_units"
                    else cfg.time_value)
    elif cfg.axis == "squeezing":
        r = axis_value
        duration = (cfg.time_value / base_omega1
                    if cfg.time_convention == "omega1_units"
                    else cfg.time_value)
    else:
        raise ValueError(f"unknown sweep axis {cfg.axis!r}")
    if duration <= 0:
        raise ValueError("sweep point has non-positive duration")
    return params, r, duration, rate


def _compute_row(job):
    cfg, axis_value = job
    flags = []
    try:
        params, r, duration, rate = _point_geometry(cfg, axis_value)
        report = validate_regime(params, cfg.modes, duration)
        for check in report.checks:
            if check.grade != "pass":
                flags.append(f"{check.grade}:{check.name}")

        res = metrology.strain_qfi(params, cfg.modes, r, cfg.theta,
                                   rate * duration,
                                   cfg.channel.channel_phase_rad)
        h_eps = res.h_eps
        bound = cramer_rao_bound(h_eps, cfg.probes)
        density = sensitivity_density(bound, duration)

        cfi = float("nan")
        if cfg.with_cfi:
            spec = thermal_spec(params, cfg.modes)
            cfi_res = metrology.classical_fisher(
                r, cfg.epsilon * rate * duration, rate * duration, spec,
                variant=cfg.cfi_variant)
            cfi = cfi_res.f_eps

        bulk = float("nan")
        if cfg.with_bulk:
            wave = WaveParams(epsilon=cfg.epsilon,
                              omega_gw=resonant_frequency(params, cfg.modes),
                              duration=duration)
            bulk = metrology.bulk_qfi(params, wave, duration,
                                      convention=cfg.bulk_wavenumber).time_max

        return (axis_value, h_eps, bound, density, cfi, bulk,
                ";".join(flags) if flags else "ok")
    except (NumericError, RegimeError, ValueError) as exc:
        flags.append(f"error:{type(exc).__name__}")
        nan = float("nan")
        return (axis_value, nan, nan, nan, nan, nan, ";".join(flags))


def scan(cfg):
    """Run the configured sweep and return a SweepTable."""
    if not cfg.grid:
        raise ValueError("sweep config has no grid")
    jobs = [(cfg, value) for value in cfg.grid]

    workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_compute_row, jobs))
    else:
        rows = [_compute_row(job) for job in jobs]

    n_failed = sum(1 for row in rows if "error:" in row[-1])
    if n_failed > 0.2 * len(rows):
        raise NumericError(
            f"{n_failed}/{len(rows)} sweep points failed; aborting run")

    metadata = (
        ("becgw_version", __version__),
        ("config_sha256", cfg.config_hash()),
        ("axis", cfg.axis),
        ("probes", cfg.probes),
        ("channel_rate_per_strain_hz", f"{cfg.channel.rate_per_strain_hz:.17g}"),
        ("channel_phase_rad", f"{cfg.channel.channel_phase_rad:.17g}"),
        ("channel_provenance", cfg.channel.provenance_note),
        ("cfi_variant", cfg.cfi_variant if cfg.with_cfi else "disabled"),
        ("bulk_wavenumber", cfg.bulk_wavenumber if cfg.with_bulk
         else "disabled"),
    )
    return SweepTable(columns=COLUMNS, rows=tuple(rows), metadata=metadata)


def overlay_ingest(path):
    """Read a detector overlay curve: CSV with header
    frequency_hz, characteristic_strain; frequency strictly increasing."""
    from .errors import ConfigError

    with open(path) as fh:
        lines = fh.read().splitlines()
    lines = [ln for ln in lines if ln.strip() and not ln.startswith("#")]
    if not lines:
        return []
    header = [cell.strip() for cell in lines[0].split(",")]
    if header != ["frequency_hz", "characteristic_strain"]:
        raise ConfigError(
            f"overlay header must be frequency_hz, characteristic_strain; "
            f"got {lines[0]!r}")
    curve = []
    for i, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != 2:
            raise ConfigError(f"overlay line {i}: expected 2 columns")
        try:
            freq, strain = float(cells[0]), float(cells[1])
        except ValueError:
            raise ConfigError(
                f"overlay line {i}: non-numeric value") from None
        if curve and freq <= curve[-1][0]:
            raise ConfigError(
                f"overlay line {i}: frequency not strictly increasing")
        curve.append((freq, strain))
    return curve
