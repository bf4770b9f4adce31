"""Symplectic channel induced by a resonant gravitational wave.

The resonant wave acts on the mode pair as a two-mode squeezing
operation whose parameter grows linearly in time, s = eps * R * t.
The growth rate R is calibrated by the moving-boundary oracle
(see `becgw.oracle`) and carried in a ChannelModel.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bec import mode_frequency
from .gaussian import apply_symplectic, two_mode_squeezer


@dataclass(frozen=True)
class WaveParams:
    """Gravitational-wave strain model h_plus(t) = epsilon sin(Omega t)."""

    epsilon: float       # dimensionless strain amplitude
    omega_gw: float      # angular frequency, rad/s
    duration: float      # interaction time, s
    epsilon_cap: float = 1e-2

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("strain amplitude must be non-negative")
        if self.epsilon > self.epsilon_cap:
            raise ValueError(
                f"strain amplitude {self.epsilon} exceeds cap {self.epsilon_cap}")
        if self.omega_gw <= 0:
            raise ValueError("wave frequency must be positive")
        if self.duration < 0:
            raise ValueError("duration must be non-negative")


@dataclass(frozen=True)
class ChannelModel:
    """Calibrated channel: squeezing growth rate and quadrature phase.

    rate_per_strain_hz is d|beta_nm|/dt per unit strain (1/s); it is
    oracle-calibrated, not a hard-coded constant.  channel_phase_rad
    is the squeezing quadrature of the wave-induced operation relative
    to the seed squeezer.
    """

    rate_per_strain_hz: float
    channel_phase_rad: float = math.pi / 2
    provenance_note: str = ""

    def __post_init__(self):
        if self.rate_per_strain_hz <= 0:
            raise ValueError("channel rate must be positive at resonance")


@dataclass(frozen=True)
class BogoliubovSet:
    """Complex alpha/beta matrices of a Bogoliubov transformation."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=complex)
        beta = np.asarray(self.beta, dtype=complex)
        if alpha.shape != beta.shape or alpha.ndim != 2 \
                or alpha.shape[0] != alpha.shape[1]:
            raise ValueError("alpha and beta must be square matrices of equal shape")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def n_modes(self):
        return self.alpha.shape[0]

    def identity_residuals(self):
        """Max-norm residuals of alpha alpha^dag - beta beta^dag - I
        and alpha beta^T - beta alpha^T."""
        eye = np.eye(self.n_modes)
        r1 = self.alpha @ self.alpha.conj().T - self.beta @ self.beta.conj().T - eye
        r2 = self.alpha @ self.beta.T - self.beta @ self.alpha.T
        return float(np.max(np.abs(r1))), float(np.max(np.abs(r2)))


def gw_strain(wave, time):
    """Instantaneous strain h_plus(t) = epsilon sin(Omega t)."""
    return wave.epsilon * math.sin(wave.omega_gw * time)


def resonant_frequency(params, modes):
    """Resonance condition: wave frequency equal to omega_n + omega_m."""
    return mode_frequency(params, modes.n) + mode_frequency(params, modes.m)


def channel_squeezing(wave, model):
    """Accumulated channel squeezing parameter s = eps * R * t (resonant)."""
    return wave.epsilon * model.rate_per_strain_hz * wave.duration


def channel_symplectic(wave, model):
    """Exact 4x4 two-mode squeezer implementing the resonant channel.

    The linear-in-time Bogoliubov growth is folded into the squeezing
    parameter; using the exact squeezer keeps the matrix symplectic at
    all orders in the strain.
    """
    s = channel_squeezing(wave, model)
    return two_mode_squeezer(s, model.channel_phase_rad)


def bogoliubov_to_symplectic(bg, tol=1e-6):
    """Assemble the real 2Nx2N symplectic matrix from alpha/beta blocks.

    Block (k, j) is [[Re(a - b), Im(a + b)], [-Im(a - b), Re(a + b)]]
    with a = alpha_kj, b = beta_kj.
    """
    r1, r2 = bg.identity_residuals()
    if max(r1, r2) > tol:
        raise ValueError(
            f"Bogoliubov identities violated: residuals {r1:.3g}, {r2:.3g} > {tol:g}")
    n = bg.n_modes
    smat = np.zeros((2 * n, 2 * n))
    for k in range(n):
        for j in range(n):
            a = bg.alpha[k, j]
            b = bg.beta[k, j]
            smat[2 * k:2 * k + 2, 2 * j:2 * j + 2] = [
                [(a - b).real, (a + b).imag],
                [-(a - b).imag, (a + b).real],
            ]
    return smat


def evolved_state(sigma0, wave, model):
    """Final state after the wave: S_eps^T sigma0 S_eps."""
    return apply_symplectic(channel_symplectic(wave, model), sigma0)
