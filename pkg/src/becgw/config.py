"""Plain-text key-value configuration with sections and unit suffixes.

Unknown sections or keys are hard errors: a silently ignored typo in a
physics run is worse than a crash.  Numeric values may carry a unit
suffix (e.g. `temperature = 50 nK`, `trap_length = 1 um`); suffixes
convert to the SI base units used throughout the package.
"""

import hashlib
import math
from dataclasses import dataclass, field

from .bec import ModePair, PhysicalParams
from .channel import ChannelModel
from .errors import ConfigError

_UNIT_FACTORS = {
    # lengths -> meters
    "nm": 1e-9, "um": 1e-6, "mm": 1e-3, "m": 1.0,
    # speeds -> meters/second
    "mm_per_s": 1e-3, "m_per_s": 1.0,
    # temperatures -> kelvin
    "nK": 1e-9, "uK": 1e-6, "mK": 1e-3, "K": 1.0,
    # frequencies -> radians/second (hz converts)
    "rad_per_s": 1.0, "hz": 2.0 * math.pi,
    # times -> seconds
    "ns": 1e-9, "us": 1e-6, "ms": 1e-3, "s": 1.0,
}

_SCHEMA = {
    "physical": {"trap_length", "sound_speed", "temperature",
                 "atom_mass_kg", "chem_potential"},
    "modes": {"n", "m"},
    "probe": {"r", "theta"},
    "channel": {"rate_per_strain_hz", "channel_phase_rad",
                "provenance_note"},
    "wave": {"epsilon"},
    "sweep": {"axis", "grid", "probes", "time_value", "time_convention",
              "with_cfi", "cfi_variant", "with_bulk", "bulk_wavenumber",
              "output"},
    "oracle": {"n_modes", "rtol", "atol", "duration_w1", "half_strain",
               "n_samples"},
}


def parse_text(text):
    """Parse config text into {section: {key: raw string value}}."""
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{name}]")
            current = sections.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside any section")
        key, value = (part.strip() for part in line.split("=", 1))
        section_name = [k for k, v in sections.items() if v is current][0]
        if key not in _SCHEMA[section_name]:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r} in [{section_name}]")
        if key in current:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        current[key] = value
    return sections


def parse_quantity(raw, key="value"):
    """Parse `number [suffix]` into an SI float."""
    parts = raw.split()
    if len(parts) == 1:
        try:
            return float(parts[0])
        except ValueError:
            raise ConfigError(f"{key}: not a number: {raw!r}") from None
    if len(parts) == 2:
        number, suffix = parts
        if suffix not in _UNIT_FACTORS:
            raise ConfigError(f"{key}: unknown unit suffix {suffix!r}")
        try:
            return float(number) * _UNIT_FACTORS[suffix]
        except ValueError:
            raise ConfigError(f"{key}: not a number: {number!r}") from None
    raise ConfigError(f"{key}: malformed quantity {raw!r}")


def parse_grid(raw):
    """Grid spec: either a comma list or `start:stop:count lin|log`."""
    import numpy as np
    raw = raw.strip()
    if ":" in raw:
        parts = raw.split()
        scale = parts[1] if len(parts) > 1 else "lin"
        pieces = parts[0].split(":")
        if len(pieces) != 3:
            raise ConfigError(f"grid: expected start:stop:count, got {raw!r}")
        try:
            start, stop = float(pieces[0]), float(pieces[1])
            count = int(pieces[2])
        except ValueError:
            raise ConfigError(f"grid: malformed spec {raw!r}") from None
        if count < 1:
            raise ConfigError("grid: count must be >= 1")
        if scale == "lin":
            vals = np.linspace(start, stop, count)
        elif scale == "log":
            if start <= 0 or stop <= 0:
                raise ConfigError("grid: log scale needs positive endpoints")
            vals = np.geomspace(start, stop, count)
        else:
            raise ConfigError(f"grid: unknown scale {scale!r}")
        return tuple(float(v) for v in vals)
    try:
        vals = tuple(float(tok) for tok in raw.split(","))
    except ValueError:
        raise ConfigError(f"grid: malformed list {raw!r}") from None
    if not vals:
        raise ConfigError("grid: empty")
    return vals


def _parse_bool(raw, key):
    low = raw.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI command needs, plus the raw text for hashing."""

    params: PhysicalParams
    modes: ModePair
    r: float
    theta: float
    channel: ChannelModel
    epsilon: float
    axis: str = "time"
    grid: tuple = ()
    probes: int = 1
    time_value: float = 1.0
    time_convention: str = "seconds"       # or omega1_units
    with_cfi: bool = False
    cfi_variant: str = "geometric-approx"
    with_bulk: bool = False
    bulk_wavenumber: str = "pi_over_L"
    output: str | None = None
    oracle_options: dict = field(default_factory=dict)
    text: str = ""

    def config_hash(self):
        return hashlib.sha256(self.text.encode()).hexdigest()


def load_config(path):
    with open(path) as fh:
        text = fh.read()
    return config_from_text(text)


def config_from_text(text):
    sections = parse_text(text)

    phys = sections.get("physical", {})
    try:
        kwargs = {}
        if "trap_length" in phys:
            kwargs["trap_length"] = parse_quantity(phys["trap_length"],
                                                   "trap_length")
        if "sound_speed" in phys:
            kwargs["sound_speed"] = parse_quantity(phys["sound_speed"],
                                                   "sound_speed")
        if "temperature" in phys:
            kwargs["temperature"] = parse_quantity(phys["temperature"],
                                                   "temperature")
        if "atom_mass_kg" in phys:
            kwargs["atom_mass"] = parse_quantity(phys["atom_mass_kg"],
                                                 "atom_mass_kg")
        if "chem_potential" in phys:
            kwargs["chem_potential_over_kb"] = parse_quantity(
                phys["chem_potential"], "chem_potential")
        if "trap_length" not in kwargs or "sound_speed" not in kwargs:
            raise ConfigError(
                "[physical] must set trap_length and sound_speed")
        params = PhysicalParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"[physical]: {exc}") from exc

    mod = sections.get("modes", {})
    try:
        modes = ModePair(int(mod.get("n", 1)), int(mod.get("m", 2)))
    except ValueError as exc:
        raise ConfigError(f"[modes]: {exc}") from exc

    probe = sections.get("probe", {})
    r = parse_quantity(probe.get("r", "0"), "r")
    theta = parse_quantity(probe.get("theta", "0"), "theta")

    chan = sections.get("channel", {})
    if "rate_per_strain_hz" not in chan:
        raise ConfigError("[channel] must set rate_per_strain_hz "
                          "(run the oracle subcommand to calibrate one)")
    try:
        channel = ChannelModel(
            rate_per_strain_hz=parse_quantity(chan["rate_per_strain_hz"],
                                              "rate_per_strain_hz"),
            channel_phase_rad=parse_quantity(
                chan.get("channel_phase_rad", str(math.pi / 2)),
                "channel_phase_rad"),
            provenance_note=chan.get("provenance_note", ""))
    except ValueError as exc:
        raise ConfigError(f"[channel]: {exc}") from exc

    wave = sections.get("wave", {})
    epsilon = parse_quantity(wave.get("epsilon", "1e-21"), "epsilon")

    sweep = sections.get("sweep", {})
    axis = sweep.get("axis", "time")
    if axis not in ("time", "frequency", "temperature", "squeezing"):
        raise ConfigError(f"sweep axis must be one of time, frequency, "
                          f"temperature, squeezing; got {axis!r}")
    grid = parse_grid(sweep["grid"]) if "grid" in sweep else ()
    if grid and any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("sweep grid must be strictly increasing")
    probes = int(sweep.get("probes", "1"))
    if probes < 1:
        raise ConfigError("probes must be >= 1")
    time_convention = sweep.get("time_convention", "seconds")
    if time_convention not in ("seconds", "omega1_units"):
        raise ConfigError(f"time_convention must be seconds or "
                          f"omega1_units; got {time_convention!r}")
    cfi_variant = sweep.get("cfi_variant", "geometric-approx")
    if cfi_variant not in ("geometric-approx", "normalized-exact"):
        raise ConfigError(f"unknown cfi_variant {cfi_variant!r}")
    bulk_conv = sweep.get("bulk_wavenumber", "pi_over_L")
    if bulk_conv not in ("pi_over_L", "2pi_over_L"):
        raise ConfigError(f"unknown bulk_wavenumber {bulk_conv!r}")

    oracle_raw = sections.get("oracle", {})
    oracle_options = {}
    for key in ("n_modes", "n_samples"):
        if key in oracle_raw:
            oracle_options[key] = int(oracle_raw[key])
    for key in ("rtol", "atol", "duration_w1"):
        if key in oracle_raw:
            oracle_options[key] = parse_quantity(oracle_raw[key], key)
    if "half_strain" in oracle_raw:
        oracle_options["half_strain"] = _parse_bool(
            oracle_raw["half_strain"], "half_strain")

    return RunConfig(
        params=params, modes=modes, r=r, theta=theta, channel=channel,
        epsilon=epsilon, axis=axis, grid=grid, probes=probes,
        time_value=parse_quantity(sweep.get("time_value", "1"),
                                  "time_value"),
        time_convention=time_convention,
        with_cfi=_parse_bool(sweep.get("with_cfi", "false"), "with_cfi"),
        cfi_variant=cfi_variant,
        with_bulk=_parse_bool(sweep.get("with_bulk", "false"), "with_bulk"),
        bulk_wavenumber=bulk_conv,
        output=sweep.get("output"),
        oracle_options=oracle_options, text=text)
