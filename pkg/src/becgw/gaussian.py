"""Symplectic linear algebra over real 2N-dimensional phase space.

Quadrature ordering is (x1, p1, x2, p2, ...) and the vacuum covariance
matrix is the identity.  All functions are pure and operate on plain
numpy arrays.
"""

import numpy as np

from .errors import NumericError

# default tolerances: structural checks / physicality of states
STRUCT_TOL = 1e-10
PHYS_TOL = 1e-8


def symplectic_form(n_modes):
    """Symplectic form Omega for n_modes modes: direct sum of [[0,1],[-1,0]] blocks."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def _check_even_square(mat, name="matrix"):
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{name} must be square, got shape {mat.shape}")
    if mat.shape[0] % 2 != 0:
        raise ValueError(f"{name} must have even dimension, got {mat.shape[0]}")
    return mat


def is_symplectic(smat, tol=STRUCT_TOL):
    """True iff S^T Omega S = Omega within max-norm tolerance."""
    smat = _check_even_square(smat, "S")
    omega = symplectic_form(smat.shape[0] // 2)
    resid = smat.T @ omega @ smat - omega
    return float(np.max(np.abs(resid))) <= tol


def is_physical_state(sigma, tol=PHYS_TOL):
    """True iff every symplectic eigenvalue of sigma is >= 1 - tol."""
    sigma = _check_even_square(sigma, "sigma")
    if np.max(np.abs(sigma - sigma.T)) > 1e-8 * max(1.0, np.max(np.abs(sigma))):
        raise ValueError("covariance matrix must be symmetric")
    nus = symplectic_eigenvalues(sigma)
    return bool(nus[-1] >= 1.0 - tol)


def two_mode_squeezer(r, theta=0.0):
    """4x4 symplectic matrix of the two-mode squeezer with parameter r, phase theta.

    Diagonal 2x2 blocks are cosh(r) * I; off-diagonal blocks are
    sinh(r) * R(theta) * Z with Z = diag(1, -1) and R a rotation.
    """
    if not (np.isfinite(r) and np.isfinite(theta)):
        raise ValueError("squeezer parameters must be finite")
    ch, sh = np.cosh(r), np.sinh(r)
    rot = np.array([[np.cos(theta), -np.sin(theta)],
                    [np.sin(theta), np.cos(theta)]])
    zmat = np.diag([1.0, -1.0])
    off = sh * (rot @ zmat)
    smat = np.zeros((4, 4))
    smat[:2, :2] = ch * np.eye(2)
    smat[2:, 2:] = ch * np.eye(2)
    smat[:2, 2:] = off
    smat[2:, :2] = off
    return smat


def apply_symplectic(smat, sigma):
    """Transform a covariance matrix: sigma -> S^T sigma S."""
    smat = np.asarray(smat, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if smat.shape != sigma.shape:
        raise ValueError(
            f"dimension mismatch: S is {smat.shape}, sigma is {sigma.shape}")
    out = smat.T @ sigma @ smat
    return 0.5 * (out + out.T)


def symplectic_eigenvalues(sigma):
    """Symplectic eigenvalues of sigma, descending.

    Computed as the moduli of the (+i/-i paired) eigenvalues of Omega sigma,
    using a general eigensolver on the real product matrix.
    """
    sigma = _check_even_square(sigma, "sigma")
    n = sigma.shape[0] // 2
    try:
        evals = np.linalg.eigvals(symplectic_form(n) @ sigma)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition of Omega sigma failed: {exc}")
    moduli = np.sort(np.abs(evals))
    # eigenvalues come in +-i nu pairs; average each pair
    nus = 0.5 * (moduli[0::2] + moduli[1::2])
    if np.min(nus) <= 0 or np.max(np.abs(moduli[0::2] - moduli[1::2])) > 1e-6 * max(
            1.0, float(np.max(moduli))):
        raise NumericError(
            "symplectic spectrum ill-defined (matrix not positive definite?): "
            f"paired moduli {moduli}")
    return np.sort(nus)[::-1]


def purity(sigma):
    """Purity 1/sqrt(det sigma) of a physical Gaussian state."""
    sigma = _check_even_square(sigma, "sigma")
    det = np.linalg.det(sigma)
    if det <= 0:
        raise NumericError(f"covariance determinant non-positive: {det}")
    return 1.0 / np.sqrt(det)


def vacuum(n_modes):
    """Vacuum covariance matrix (identity in our normalization)."""
    return np.eye(2 * n_modes)
