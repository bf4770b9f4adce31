import math

import numpy as np
import pytest

from becgw.bec import ModePair, PhysicalParams, mode_frequency
from becgw.channel import WaveParams, resonant_frequency
from becgw.errors import CalibrationError
from becgw.oracle import (OracleConfig, check_bogoliubov_identities,
                          extract_rate, simulate_moving_boundary)

PARAMS = PhysicalParams(trap_length=1e-6, sound_speed=0.01)
MODES = ModePair(1, 2)
OMEGA1 = mode_frequency(PARAMS, 1)
OMEGA_RES = resonant_frequency(PARAMS, MODES)


def _wave(eps, w1t, omega=OMEGA_RES):
    return WaveParams(epsilon=eps, omega_gw=omega, duration=w1t / OMEGA1)


def test_free_evolution():
    res = simulate_moving_boundary(PARAMS, _wave(0.0, 50.0),
                                   OracleConfig(duration_w1=50.0))
    assert res.abs_beta[(1, 2)].max() < 1e-10
    assert max(res.identity_residuals) < 1e-7
    assert res.energy_drift < 1e-8
    alpha = res.bogoliubov.alpha
    # phase-diagonal: |alpha_kk| = 1, off-diagonal empty
    assert np.allclose(np.abs(np.diag(alpha)), 1.0, atol=1e-8)
    assert np.max(np.abs(alpha - np.diag(np.diag(alpha)))) < 1e-10


def test_resonant_linear_growth():
    cfg = OracleConfig(duration_w1=150.0)
    res = simulate_moving_boundary(PARAMS, _wave(1e-4, 150.0), cfg)
    ab = res.abs_beta[(1, 2)]
    t = res.times
    # compare slopes over the early and late halves
    half = len(t) // 2
    early = (ab[half] - ab[0]) / (t[half] - t[0])
    late = (ab[-1] - ab[half]) / (t[-1] - t[half])
    assert late == pytest.approx(early, rel=0.02)
    assert max(res.identity_residuals) < 1e-6


def test_detuned_growth_bounded():
    cfg = OracleConfig(duration_w1=150.0)
    on = simulate_moving_boundary(PARAMS, _wave(1e-4, 150.0), cfg)
    off = simulate_moving_boundary(PARAMS, _wave(1e-4, 150.0,
                                                 omega=1.1 * OMEGA_RES), cfg)
    assert off.abs_beta[(1, 2)].max() < 0.1 * on.abs_beta[(1, 2)][-1]


def test_linearity_in_epsilon():
    cfg = OracleConfig(duration_w1=100.0)
    full = simulate_moving_boundary(PARAMS, _wave(1e-4, 100.0), cfg)
    half = simulate_moving_boundary(PARAMS, _wave(5e-5, 100.0), cfg)
    ratio = full.abs_beta[(1, 2)][-1] / half.abs_beta[(1, 2)][-1]
    assert ratio == pytest.approx(2.0, rel=0.01)


def test_truncation_and_tolerance_convergence():
    cfg = OracleConfig(duration_w1=60.0, convergence_check=True)
    res = simulate_moving_boundary(PARAMS, _wave(1e-4, 60.0), cfg)
    assert res.truncation_delta < 0.005
    assert res.tolerance_delta < 0.001


def test_identity_report():
    bg_res = simulate_moving_boundary(PARAMS, _wave(1e-4, 60.0),
                                      OracleConfig(duration_w1=60.0))
    report = check_bogoliubov_identities(bg_res.bogoliubov)
    assert report["within_tolerance"]


def test_half_strain_convention_rescales_rate_by_two():
    cfg_half = OracleConfig(duration_w1=100.0)
    cfg_full = OracleConfig(duration_w1=100.0, half_strain=False)
    a = simulate_moving_boundary(PARAMS, _wave(1e-4, 100.0), cfg_half)
    b = simulate_moving_boundary(PARAMS, _wave(1e-4, 100.0), cfg_full)
    assert b.abs_beta[(1, 2)][-1] == pytest.approx(
        2.0 * a.abs_beta[(1, 2)][-1], rel=0.01)


def test_extract_rate():
    sweep = [(1e-4, 30 / OMEGA1), (1e-4, 60 / OMEGA1),
             (2e-4, 100 / OMEGA1), (5e-5, 150 / OMEGA1)]
    model = extract_rate(PARAMS, MODES, sweep)
    assert model.rate_per_strain_hz > 0
    assert model.rate_per_strain_hz / OMEGA1 == pytest.approx(0.3536,
                                                              rel=0.01)
    assert "oracle fit" in model.provenance_note


def test_extract_rate_scales_with_omega1():
    rates = {}
    for length in (0.5e-6, 1e-6):
        params = PhysicalParams(trap_length=length, sound_speed=0.01)
        omega1 = mode_frequency(params, 1)
        sweep = [(1e-4, 30 / omega1), (1e-4, 60 / omega1),
                 (1e-4, 100 / omega1), (1e-4, 150 / omega1)]
        rates[length] = extract_rate(params, MODES, sweep).rate_per_strain_hz
    assert rates[0.5e-6] == pytest.approx(2 * rates[1e-6], rel=0.01)


def test_extract_rate_rejects_bad_sweeps():
    with pytest.raises(ValueError):
        extract_rate(PARAMS, MODES, [(1e-4, 30 / OMEGA1)] * 3)
    with pytest.raises(ValueError):
        extract_rate(PARAMS, MODES, [(1e-4, 1.0)] * 4)   # omega_1 t too big
    with pytest.raises(ValueError):
        extract_rate(PARAMS, MODES, [(0.5, 30 / OMEGA1)] * 4)  # eps range


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(n_modes=1)
    with pytest.raises(ValueError):
        OracleConfig(rtol=1e-6)
    with pytest.raises(ValueError):
        simulate_moving_boundary(
            PARAMS, _wave(1e-4, 50.0),
            OracleConfig(n_modes=4), mode_pairs=((1, 2),))
