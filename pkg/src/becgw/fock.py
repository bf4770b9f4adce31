"""Fock-space oracles on the equal-occupation sector of the mode pair.

Two-mode squeezing conserves the occupation-number difference, so
states reachable from |k, k> live in the sector spanned by |j, j>.
Restricted to that sector the squeezer exp[s (e^{-i th} ab - e^{i th}
a^dag b^dag)] is a (K+1) x (K+1) matrix exponential, which gives an
independent route to overlaps, fidelities and counting statistics.
"""

import numpy as np
from scipy.linalg import expm


def sector_generator(s, theta, k_max):
    """Generator of the two-mode squeezer on the equal-number sector.

    Acting on basis |k, k>, k = 0..k_max: ab lowers with coefficient k,
    a^dag b^dag raises with coefficient k + 1.
    """
    dim = k_max + 1
    gen = np.zeros((dim, dim), dtype=complex)
    for k in range(k_max):
        gen[k + 1, k] = -s * np.exp(1j * theta) * (k + 1)   # raising part
        gen[k, k + 1] = s * np.exp(-1j * theta) * (k + 1)   # lowering part
    return gen


def sector_squeezer(s, theta, k_max):
    """Matrix of the two-mode squeezer restricted to the |j, j> sector."""
    return expm(sector_generator(s, theta, k_max))


def tmsv_vector(r, theta, k_max):
    """Equal-number amplitudes <j, j | TMSV(r, theta)>."""
    return sector_squeezer(r, theta, k_max)[:, 0]


def overlap_fidelity(vec_a, vec_b):
    """|<a|b>|^2 for truncated state vectors."""
    return abs(np.vdot(vec_a, vec_b)) ** 2


def fidelity_vacuum_tmsv(s, k_max=60):
    """Truncated-Fock fidelity between vacuum and TMSV(s)."""
    vec = tmsv_vector(s, 0.0, k_max)
    return abs(vec[0]) ** 2


def pure_state_qfi(r, theta_seed, phi_channel, s0=0.0, ds=1e-4, k_max=80):
    """QFI for the channel squeezing parameter on a pure seed state.

    Computed from truncated Fock vectors via
    H = 4 (<dpsi|dpsi> - |<psi|dpsi>|^2) with a central difference.
    Fully independent of the covariance-matrix route.
    """
    seed = sector_squeezer(r, theta_seed, k_max)[:, 0]

    def psi(s):
        return sector_squeezer(s, phi_channel, k_max) @ seed

    plus, minus = psi(s0 + ds), psi(s0 - ds)
    dpsi = (plus - minus) / (2.0 * ds)
    mid = psi(s0)
    return 4.0 * (np.vdot(dpsi, dpsi).real - abs(np.vdot(mid, dpsi)) ** 2)


def thermal_weights(x, k_max):
    """Geometric thermal number distribution p_k = (1 - x) x^k."""
    if x == 0.0:
        w = np.zeros(k_max + 1)
        w[0] = 1.0
        return w
    return (1.0 - x) * x ** np.arange(k_max + 1)


def equal_count_distribution(r, theta_seed, s, phi_channel, x_n, x_m,
                             j_max, k_max=None):
    """Joint equal-number counting distribution of the evolved thermal
    two-mode squeezed state, with its derivative in s.

    Returns (P, dP/ds, tail_mass) where P[j] is the probability of
    detecting j phonons in each mode.  Only the equal-occupation part
    of the thermal mixture contributes to equal counts.
    """
    if k_max is None:
        k_max = j_max + 40   # headroom against sector truncation
    mat = sector_squeezer(s, phi_channel, k_max) @ sector_squeezer(
        r, theta_seed, k_max)
    dmat = sector_generator(1.0, phi_channel, k_max) @ mat
    weights = thermal_weights(x_n, k_max) * thermal_weights(x_m, k_max)
    amps2 = np.abs(mat) ** 2
    damps2 = 2.0 * np.real(np.conj(mat) * dmat)
    probs = amps2 @ weights
    dprobs = damps2 @ weights
    # total weight of the equal-occupation thermal sector (exact geometric sum)
    sector_mass = (1.0 - x_n) * (1.0 - x_m) / (1.0 - x_n * x_m)
    tail = float(max(sector_mass - probs[:j_max + 1].sum(), 0.0))
    return probs[:j_max + 1], dprobs[:j_max + 1], tail
