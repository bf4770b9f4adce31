"""Trapped-condensate phonon model.

Box-trap phonon spectrum, thermal symplectic eigenvalues, the initial
thermal two-mode squeezed state, and validity-regime diagnostics.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants
from .errors import RegimeError
from .gaussian import apply_symplectic, two_mode_squeezer


@dataclass(frozen=True)
class PhysicalParams:
    """Experimental dial settings, SI units (temperature in kelvin)."""

    trap_length: float          # L, m
    sound_speed: float          # c_s, m/s
    atom_mass: float = constants.M_RB87   # m0, kg
    chem_potential_over_kb: float = 100e-9  # mu / k_B, K
    temperature: float = 0.0    # T, K

    def __post_init__(self):
        for name in ("trap_length", "sound_speed", "atom_mass",
                     "chem_potential_over_kb"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")
        if self.sound_speed >= 1e-3 * constants.C_LIGHT:
            raise ValueError("sound speed must satisfy c_s << c")


@dataclass(frozen=True)
class ModePair:
    """The two phonon modes carrying the squeezed probe state."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("mode numbers must be positive integers")
        if not self.n < self.m:
            raise ValueError(f"require n < m, got n={self.n}, m={self.m}")


@dataclass(frozen=True)
class ThermalSpec:
    """Thermal occupation data for the mode pair.

    beta_k = hbar omega_k / (k_B T), nu_k = coth(beta_k / 2) and
    x_k = exp(-beta_k) is the small quantum-regime correction.
    """

    beta_n: float
    beta_m: float
    nu_n: float
    nu_m: float
    x_n: float
    x_m: float
    quantum_regime_ok: bool      # beta >= 1 for both modes
    quantum_regime_comfortable: bool  # beta >= 3 for both modes


def mode_frequency(params, n):
    """Angular frequency of box-trap phonon mode n: n pi c_s / L."""
    if n < 1:
        raise ValueError("mode index must be >= 1")
    return n * math.pi * params.sound_speed / params.trap_length


def thermal_nu(omega, temperature):
    """Symplectic eigenvalue coth(hbar omega / (2 k_B T)); 1 at T = 0."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if temperature < 0:
        raise ValueError("temperature must be non-negative")
    if temperature == 0.0:
        return 1.0
    half_beta = constants.HBAR * omega / (2.0 * constants.K_B * temperature)
    # coth(half_beta); for large argument this saturates to 1 cleanly
    if half_beta > 300.0:
        return 1.0
    return 1.0 / math.tanh(half_beta)


def thermal_x(omega, temperature):
    """Quantum-regime expansion parameter x = exp(-hbar omega / k_B T)."""
    if temperature == 0.0:
        return 0.0
    beta = constants.HBAR * omega / (constants.K_B * temperature)
    return math.exp(-beta)


def thermal_spec(params, modes):
    """Thermal data (beta, nu, x) for the mode pair, with regime flags."""
    omega_n = mode_frequency(params, modes.n)
    omega_m = mode_frequency(params, modes.m)
    if params.temperature == 0.0:
        return ThermalSpec(beta_n=math.inf, beta_m=math.inf,
                           nu_n=1.0, nu_m=1.0, x_n=0.0, x_m=0.0,
                           quantum_regime_ok=True,
                           quantum_regime_comfortable=True)
    kbt = constants.K_B * params.temperature
    beta_n = constants.HBAR * omega_n / kbt
    beta_m = constants.HBAR * omega_m / kbt
    if beta_n < 0.1:
        raise RegimeError(
            f"quantum regime badly violated: beta_n = {beta_n:.3g} < 0.1")
    return ThermalSpec(
        beta_n=beta_n, beta_m=beta_m,
        nu_n=thermal_nu(omega_n, params.temperature),
        nu_m=thermal_nu(omega_m, params.temperature),
        x_n=math.exp(-beta_n), x_m=math.exp(-beta_m),
        quantum_regime_ok=beta_n >= 1.0,
        quantum_regime_comfortable=beta_n >= 3.0)


def initial_state(params, modes, r, theta=0.0):
    """Initial covariance matrix: seed two-mode squeezer applied to the
    thermal Williamson form, sigma0 = S^T diag(nu_n, nu_n, nu_m, nu_m) S.

    Exact coth values are used; no low-temperature truncation.
    """
    if not np.isfinite(r):
        raise ValueError("squeezing parameter r must be finite")
    spec = thermal_spec(params, modes)
    nu = np.diag([spec.nu_n, spec.nu_n, spec.nu_m, spec.nu_m])
    seed = two_mode_squeezer(r, theta)
    return apply_symplectic(seed, nu)


@dataclass(frozen=True)
class RegimeCheck:
    name: str
    ratio: float
    grade: str        # "pass" | "warn" | "fail"
    description: str


@dataclass(frozen=True)
class ValidityReport:
    checks: tuple

    @property
    def worst(self):
        order = {"pass": 0, "warn": 1, "fail": 2}
        return max((c.grade for c in self.checks), key=order.get)

    def as_dict(self):
        return {c.name: (c.ratio, c.grade) for c in self.checks}


def _grade_small(ratio):
    """Grade a ratio that should be << 1 (pass <= 0.1, warn <= 1)."""
    if ratio <= 0.1:
        return "pass"
    if ratio <= 1.0:
        return "warn"
    return "fail"


def _grade_large(ratio):
    """Grade a ratio that should be >> 1 (pass >= 10, warn >= 1)."""
    if ratio >= 10.0:
        return "pass"
    if ratio >= 1.0:
        return "warn"
    return "fail"


def validate_regime(params, modes, duration):
    """Four named validity checks with dimensionless ratios and grades.

    Checks: linear phonon dispersion, quantum (low-occupation) regime,
    negligible thermal depletion (k_B T << mu), and interaction time
    long enough for the resonant channel (omega_1 t >> 1).
    """
    k_m = modes.m * math.pi / params.trap_length
    dispersion = constants.HBAR * k_m / (params.atom_mass * params.sound_speed)

    omega_n = mode_frequency(params, modes.n)
    if params.temperature > 0:
        quantum = constants.HBAR * omega_n / (
            constants.K_B * params.temperature)
    else:
        quantum = math.inf
    depletion = params.temperature / params.chem_potential_over_kb
    omega1 = mode_frequency(params, 1)
    interaction = omega1 * duration

    checks = (
        RegimeCheck("linear_dispersion", dispersion, _grade_small(dispersion),
                    "hbar k_m / (m0 c_s) must be << 1"),
        RegimeCheck("quantum_regime", quantum, _grade_large(quantum),
                    "hbar omega_n / (k_B T) must be >> 1"),
        RegimeCheck("thermal_depletion", depletion, _grade_small(depletion),
                    "k_B T / mu must be << 1"),
        RegimeCheck("interaction_time", interaction, _grade_large(interaction),
                    "omega_1 t must be >> 1"),
    )
    return ValidityReport(checks=checks)
