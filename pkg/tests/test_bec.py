import math

import numpy as np
import pytest

from becgw import constants
from becgw.bec import (ModePair, PhysicalParams, initial_state,
                       mode_frequency, thermal_nu, thermal_spec, thermal_x,
                       validate_regime)
from becgw.errors import RegimeError
from becgw.gaussian import is_physical_state, symplectic_eigenvalues

PARAMS = PhysicalParams(trap_length=1e-6, sound_speed=0.01)


def test_mode_frequency_spectrum():
    omega1 = mode_frequency(PARAMS, 1)
    assert omega1 == pytest.approx(2 * math.pi * 5e3, rel=1e-12)
    assert mode_frequency(PARAMS, 6) == pytest.approx(6 * omega1, rel=1e-12)


def test_mode_frequency_scales_inverse_length():
    half = PhysicalParams(trap_length=0.5e-6, sound_speed=0.01)
    assert mode_frequency(half, 1) == pytest.approx(
        2 * mode_frequency(PARAMS, 1), rel=1e-12)


def test_mode_pair_validation():
    with pytest.raises(ValueError):
        ModePair(2, 2)
    with pytest.raises(ValueError):
        ModePair(0, 1)


def test_params_validation():
    with pytest.raises(ValueError):
        PhysicalParams(trap_length=-1e-6, sound_speed=0.01)
    with pytest.raises(ValueError):
        PhysicalParams(trap_length=1e-6, sound_speed=1e7)
    with pytest.raises(ValueError):
        PhysicalParams(trap_length=1e-6, sound_speed=0.01, temperature=-1.0)


def test_thermal_nu_zero_temperature():
    assert thermal_nu(1e4, 0.0) == 1.0
    assert thermal_x(1e4, 0.0) == 0.0


def test_thermal_nu_coth():
    omega = 2 * math.pi * 5e3
    temp = 150e-9
    half_beta = constants.HBAR * omega / (2 * constants.K_B * temp)
    expected = math.cosh(half_beta) / math.sinh(half_beta)
    assert thermal_nu(omega, temp) == pytest.approx(expected, rel=1e-14)
    # occupation consistency: nu = 1 + 2 x / (1 - x)
    x = thermal_x(omega, temp)
    assert thermal_nu(omega, temp) == pytest.approx(
        1.0 + 2.0 * x / (1.0 - x), rel=1e-12)


def test_thermal_spec_ordering():
    params = PhysicalParams(trap_length=1e-6, sound_speed=0.01,
                            temperature=50e-9)
    spec = thermal_spec(params, ModePair(1, 2))
    assert spec.nu_n > spec.nu_m > 1.0
    assert 0.0 < spec.x_m < spec.x_n < 1.0


def test_thermal_spec_classical_regime_rejected():
    hot = PhysicalParams(trap_length=1e-6, sound_speed=0.01,
                         temperature=1e-3)
    with pytest.raises(RegimeError):
        thermal_spec(hot, ModePair(1, 2))


def test_initial_state_vacuum_limit():
    sigma = initial_state(PARAMS, ModePair(1, 2), 0.0)
    assert np.allclose(sigma, np.eye(4))


def test_initial_state_spectrum_is_thermal():
    params = PhysicalParams(trap_length=1e-6, sound_speed=0.01,
                            temperature=100e-9)
    spec = thermal_spec(params, ModePair(1, 2))
    sigma = initial_state(params, ModePair(1, 2), 1.0, 0.3)
    assert is_physical_state(sigma)
    vals = symplectic_eigenvalues(sigma)
    assert np.allclose(sorted(vals), sorted([spec.nu_n, spec.nu_m]),
                       rtol=1e-9)


def test_validate_regime_grades():
    report = validate_regime(PARAMS, ModePair(1, 2), 0.01)
    grades = {c.name: c.grade for c in report.checks}
    assert grades["quantum_regime"] == "pass"       # T = 0
    assert grades["interaction_time"] == "pass"     # omega_1 t >> 1
    assert report.worst in ("pass", "warn")


def test_validate_regime_flags_short_run():
    report = validate_regime(PARAMS, ModePair(1, 2), 1e-8)
    grades = {c.name: c.grade for c in report.checks}
    assert grades["interaction_time"] == "fail"
