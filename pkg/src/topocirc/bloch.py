"""Momentum-space cycle operators, quasienergy bands, and the branch-cut
effective Hamiltonian.

The Bloch cycle acts on the (up, down) spinor of one unit cell. The
hopping term carries phase e^{+ik} on its upper-right (up row, down
column) element,

    H_hop(k) = [[0, e^{+ik}], [e^{-ik}, 0]],

an orientation fixed so that the gap-0 winding number equals the
left-edge mode count (see the winding module). Step angles follow the
same bookkeeping as the real-space builders: alpha/4 per on-site step
and beta/2 for the hopping step in 1D; pi/4, gamma/4, delta/2 in 2D.
Time is a fraction t in [0, 1] of one period split into three equal
steps. Quasienergies are E = -arg(eigenvalue), so the cycle operator is
exp(-i H_eff) for the branch-cut effective Hamiltonian H_eff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


class GapClosedError(RuntimeError):
    """An eigenphase sits on (or too close to) the requested branch cut."""


def hop_bloch_matrix(k) -> np.ndarray:
    """Hopping Bloch Hamiltonian, unit coupling. Batched over k."""
    k = np.asarray(k, dtype=float)
    out = np.zeros(k.shape + (2, 2), dtype=complex)
    out[..., 0, 1] = np.exp(1j * k)
    out[..., 1, 0] = np.exp(-1j * k)
    return out


def _exp_rot(angle, h) -> np.ndarray:
    """exp(-i angle h) for h with h^2 = 1. angle broadcasts over h's batch."""
    angle = np.asarray(angle, dtype=float)
    c = np.cos(angle)[..., None, None]
    s = np.sin(angle)[..., None, None]
    return c * _I2 - 1j * s * h


def _step_fractions(t):
    t = np.asarray(t, dtype=float)
    f1 = np.clip(3.0 * t, 0.0, 1.0)
    f2 = np.clip(3.0 * t - 1.0, 0.0, 1.0)
    f3 = np.clip(3.0 * t - 2.0, 0.0, 1.0)
    return f1, f2, f3


def bloch_u1(k, alpha: float, beta: float, t: float = 1.0) -> np.ndarray:
    """Piecewise 1D cycle operator up to time fraction t. Batched over k.

    Step sequence in time: on-site (alpha/4), hopping (beta/2), on-site.
    """
    k = np.asarray(k, dtype=float)
    a, b = alpha / 4.0, beta / 2.0
    f1, f2, f3 = _step_fractions(t)
    ones = np.ones_like(k)
    u = _exp_rot(a * f1 * ones, _I2 * 0 + SIGMA_X)
    u = _exp_rot(b * f2 * ones, hop_bloch_matrix(k)) @ u
    u = _exp_rot(a * f3 * ones, _I2 * 0 + SIGMA_X) @ u
    return u


def bloch_u2(kx, ky, gamma: float, delta: float, t: float = 1.0) -> np.ndarray:
    """Piecewise 2D cycle operator up to time fraction t.

    Step sequence in time: on-site (pi/4), x-hopping (gamma/4),
    y-hopping (delta/2). kx and ky broadcast against each other.
    """
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    kx, ky = np.broadcast_arrays(kx, ky)
    a1, a2, a3 = np.pi / 4.0, gamma / 4.0, delta / 2.0
    f1, f2, f3 = _step_fractions(t)
    ones = np.ones_like(kx)
    u = _exp_rot(a1 * f1 * ones, _I2 * 0 + SIGMA_X)
    u = _exp_rot(a2 * f2 * ones, hop_bloch_matrix(kx)) @ u
    u = _exp_rot(a3 * f3 * ones, hop_bloch_matrix(ky)) @ u
    return u


def eig2_unitary(u: np.ndarray):
    """Eigenvalues and spectral projectors of batched 2x2 unitaries.

    Returns (lam1, lam2, p1, p2) with u = lam1*p1 + lam2*p2. Degenerate
    batches get p1 = identity, p2 = 0 and lam2 = lam1.
    """
    tr = u[..., 0, 0] + u[..., 1, 1]
    det = u[..., 0, 0] * u[..., 1, 1] - u[..., 0, 1] * u[..., 1, 0]
    disc = np.sqrt(tr * tr - 4.0 * det)
    lam1 = 0.5 * (tr + disc)
    lam2 = 0.5 * (tr - disc)
    gap = np.abs(lam1 - lam2)
    degenerate = gap < 1e-12
    denom = np.where(degenerate, 1.0, lam1 - lam2)
    p1 = (u - lam2[..., None, None] * _I2) / denom[..., None, None]
    p1 = np.where(degenerate[..., None, None], _I2, p1)
    p2 = _I2 - p1
    lam2 = np.where(degenerate, lam1, lam2)
    return lam1, lam2, p1, p2


def branch_quasienergies(lam: np.ndarray, epsilon: float, tol: float = 1e-9) -> np.ndarray:
    """Quasienergies E = -arg(lam) shifted into the branch (epsilon-2pi, epsilon).

    epsilon must be 0 or pi. Raises GapClosedError when an eigenphase lies
    within tol of the cut.
    """
    if epsilon not in (0, 0.0, np.pi):
        raise ValueError("branch cut must be 0 or pi")
    e = -np.angle(lam)
    dist = np.abs(np.angle(np.exp(1j * (e - epsilon))))
    if np.any(dist < tol):
        raise GapClosedError(
            f"eigenphase within {float(np.min(dist)):.2e} of the branch cut at {epsilon}"
        )
    if epsilon == 0:
        e = np.where(e > 0, e - 2.0 * np.pi, e)
    return e


def branch_log_hamiltonian(u: np.ndarray, epsilon: float) -> np.ndarray:
    """Hermitian H with exp(-i H) = u and quasienergies in (epsilon-2pi, epsilon)."""
    u = np.asarray(u, dtype=complex)
    if u.shape[-2:] != (2, 2):
        raise ValueError("expected 2x2 unitaries")
    lam1, lam2, p1, p2 = eig2_unitary(u)
    e1 = branch_quasienergies(lam1, epsilon)
    e2 = branch_quasienergies(lam2, epsilon)
    return e1[..., None, None] * p1 + e2[..., None, None] * p2


@dataclass
class QuasienergyBands:
    """Two quasienergy bands on a k grid with the gaps at 0 and pi."""

    k_values: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    gap_zero: float
    gap_pi: float


def quasienergy_bands(alpha: float, beta: float, k_values=None) -> QuasienergyBands:
    """Eigenphase bands E in (-pi, pi] of the full 1D cycle."""
    if k_values is None:
        k_values = np.linspace(-np.pi, np.pi, 257)
    k_values = np.asarray(k_values, dtype=float)
    u = bloch_u1(k_values, alpha, beta, 1.0)
    lam1, lam2, _, _ = eig2_unitary(u)
    e = np.stack([-np.angle(lam1), -np.angle(lam2)])
    upper = e.max(axis=0)
    lower = e.min(axis=0)
    abs_e = np.abs(e)
    gap_zero = float(2.0 * abs_e.min())
    gap_pi = float(2.0 * (np.pi - abs_e.max()))
    return QuasienergyBands(k_values, upper, lower, gap_zero, gap_pi)
