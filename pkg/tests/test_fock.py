import math

import numpy as np
import pytest

from becgw import fock


@pytest.mark.parametrize("s", [0.05, 0.1, 0.2, 0.5])
def test_vacuum_tmsv_overlap_law(s):
    assert fock.fidelity_vacuum_tmsv(s) == pytest.approx(
        1.0 / math.cosh(s) ** 2, rel=1e-10)


def test_tmsv_vector_normalized():
    vec = fock.tmsv_vector(0.8, 0.2, k_max=120)
    assert np.vdot(vec, vec).real == pytest.approx(1.0, abs=1e-12)


def test_sector_squeezer_unitary():
    mat = fock.sector_squeezer(0.4, 0.3, k_max=60)
    assert np.allclose(mat @ mat.conj().T, np.eye(61), atol=1e-10)


def test_pure_state_qfi_baseline():
    h = fock.pure_state_qfi(0.0, 0.0, 0.0, k_max=60)
    assert h == pytest.approx(4.0, rel=1e-4)


def test_pure_state_qfi_phase_dependence():
    # aligned phase leaves H_s = 4 for any seed; orthogonal phase
    # amplifies by cosh^2(2r)
    h_aligned = fock.pure_state_qfi(1.0, 0.0, 0.0, k_max=120)
    assert h_aligned == pytest.approx(4.0, rel=1e-3)
    h_orth = fock.pure_state_qfi(1.0, 0.0, math.pi / 2, k_max=120)
    assert h_orth == pytest.approx(4.0 * math.cosh(2.0) ** 2, rel=1e-3)


def test_thermal_weights_geometric():
    w = fock.thermal_weights(0.3, k_max=200)
    assert w.sum() == pytest.approx(1.0, rel=1e-10)
    assert w[1] / w[0] == pytest.approx(0.3, rel=1e-12)


def test_equal_count_distribution_derivative():
    # analytic dP/ds against a central finite difference
    r, s, x_n, x_m = 0.7, 0.05, 0.02, 0.001
    ds = 1e-6
    probs, dprobs, tail = fock.equal_count_distribution(
        r, 0.0, s, 0.0, x_n, x_m, j_max=60)
    p_plus, _, _ = fock.equal_count_distribution(
        r, 0.0, s + ds, 0.0, x_n, x_m, j_max=60)
    p_minus, _, _ = fock.equal_count_distribution(
        r, 0.0, s - ds, 0.0, x_n, x_m, j_max=60)
    fd = (p_plus - p_minus) / (2 * ds)
    assert np.allclose(dprobs, fd, atol=1e-6)
    assert tail < 1e-10
    sector_mass = (1 - x_n) * (1 - x_m) / (1 - x_n * x_m)
    assert probs.sum() == pytest.approx(sector_mass, rel=1e-8)
