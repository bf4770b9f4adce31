import math

import numpy as np
import pytest

from becgw.errors import NumericError
from becgw.gaussian import (apply_symplectic, is_physical_state,
                            is_symplectic, purity, symplectic_eigenvalues,
                            symplectic_form, two_mode_squeezer, vacuum)


def test_symplectic_form_structure():
    omega = symplectic_form(2)
    assert omega.shape == (4, 4)
    assert np.allclose(omega.T, -omega)
    assert np.allclose(omega @ omega, -np.eye(4))


def test_vacuum_is_identity():
    assert np.array_equal(vacuum(2), np.eye(4))
    assert is_physical_state(vacuum(3))


def test_identity_is_symplectic():
    assert is_symplectic(np.eye(4))
    assert not is_symplectic(2.0 * np.eye(4))


def test_two_mode_squeezer_zero_r():
    assert np.allclose(two_mode_squeezer(0.0, 0.3), np.eye(4))


@pytest.mark.parametrize("r", [0.1, 1.0, 3.0])
@pytest.mark.parametrize("theta", [0.0, 0.7, math.pi / 2])
def test_two_mode_squeezer_symplectic(r, theta):
    smat = two_mode_squeezer(r, theta)
    assert is_symplectic(smat)


def test_squeezer_blocks():
    r, theta = 0.8, 0.4
    smat = two_mode_squeezer(r, theta)
    ch, sh = math.cosh(r), math.sinh(r)
    assert np.allclose(smat[:2, :2], ch * np.eye(2))
    assert np.allclose(smat[2:, 2:], ch * np.eye(2))
    off = sh * np.array([[math.cos(theta), math.sin(theta)],
                         [math.sin(theta), -math.cos(theta)]])
    assert np.allclose(smat[:2, 2:], off)
    assert np.allclose(smat[2:, :2], off)


def test_apply_symplectic_vacuum_gives_tmsv():
    r = 0.6
    sigma = apply_symplectic(two_mode_squeezer(r), vacuum(2))
    assert np.allclose(np.diag(sigma)[:2], math.cosh(2 * r))
    assert is_physical_state(sigma)
    assert np.allclose(sigma, sigma.T)


def test_symplectic_eigenvalues_thermal():
    nu = np.diag([1.7, 1.7, 1.2, 1.2])
    vals = symplectic_eigenvalues(nu)
    assert np.allclose(vals, [1.7, 1.2])


def test_spectrum_invariant_under_squeezer():
    nu = np.diag([1.9, 1.9, 1.3, 1.3])
    sigma = apply_symplectic(two_mode_squeezer(1.2, 0.5), nu)
    vals = symplectic_eigenvalues(sigma)
    assert np.allclose(vals, [1.9, 1.3], atol=1e-10)


def test_purity():
    assert purity(vacuum(2)) == pytest.approx(1.0)
    nu = np.diag([2.0, 2.0, 1.0, 1.0])
    assert purity(nu) == pytest.approx(0.5)


def test_purity_rejects_degenerate_matrix():
    with pytest.raises(NumericError):
        purity(np.zeros((4, 4)))


def test_random_composition_suite():
    rng = np.random.default_rng(7)
    for _ in range(50):
        total_r = rng.uniform(0.0, 5.0)
        split = rng.uniform(0.0, 1.0)
        s1 = two_mode_squeezer(total_r * split, rng.uniform(0, 2 * math.pi))
        s2 = two_mode_squeezer(total_r * (1 - split),
                               rng.uniform(0, 2 * math.pi))
        assert is_symplectic(s1 @ s2)
