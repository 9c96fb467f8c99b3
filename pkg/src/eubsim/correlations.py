"""Entanglement and quantum discord for two-qubit states.

Closed-form X-state expressions are the fast path; a brute-force projective
measurement minimization over the memory qubit B serves as the independent
oracle.  Discord follows the measured-on-B convention: classical correlation
is the largest information about A extractable by a projective measurement on
B, and discord is mutual information minus that maximum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .qmath import (
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    binary_entropy,
    eig_hermitian,
    partial_trace,
    require_density,
    von_neumann_entropy,
)

X_FORM_ATOL = 1e-12


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective measurement direction on the Bloch sphere of qubit B."""

    theta_m: float
    phi_m: float

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        n = np.array(
            [
                np.sin(self.theta_m) * np.cos(self.phi_m),
                np.sin(self.theta_m) * np.sin(self.phi_m),
                np.cos(self.theta_m),
            ]
        )
        n_dot_sigma = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
        return 0.5 * (ID2 + n_dot_sigma), 0.5 * (ID2 - n_dot_sigma)


@dataclass(frozen=True)
class CorrelationReport:
    concurrence: float
    discord: float
    classical: float
    mutual_info: float


def _require_x_state(rho: np.ndarray) -> np.ndarray:
    rho = require_density(rho)
    mask = np.ones((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = False
    mask[0, 3] = mask[3, 0] = False
    if np.abs(rho[mask]).max() > X_FORM_ATOL:
        raise InvalidInputError("state is not in X form (off-diagonal entries outside (1,4))")
    return rho


def _sqrt_psd(m: np.ndarray) -> np.ndarray:
    w, v = eig_hermitian(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def concurrence_general(s: np.ndarray) -> float:
    """Wootters concurrence C = max{0, e1 - e2 - e3 - e4} with e_i the
    descending square-root eigenvalues of rho (sy x sy) rho* (sy x sy).

    The e_i are the singular values of sqrt(rho_tilde) sqrt(rho); they are
    extracted from the Hermitian dilation [[0, K], [K^dag, 0]] rather than
    from eigenvalues of K^dag K, which would lose half the precision in the
    near-separable corner where the e_i almost cancel.
    """
    s = require_density(s)
    syy = np.kron(SIGMA_Y, SIGMA_Y)
    rho_tilde = syy @ s.conj() @ syy
    k = _sqrt_psd(rho_tilde) @ _sqrt_psd(s)
    dilation = np.zeros((8, 8), dtype=complex)
    dilation[:4, 4:] = k
    dilation[4:, :4] = k.conj().T
    eps = np.clip(eig_hermitian(dilation)[0][:4], 0.0, None)  # top half = +singular values
    return max(0.0, float(eps[0] - eps[1] - eps[2] - eps[3]))


def concurrence_x_state(s: np.ndarray) -> float:
    """C = 2 max{0, |rho14| - sqrt(rho22 rho33)} for X-form states."""
    s = _require_x_state(s)
    r22 = max(s[1, 1].real, 0.0)
    r33 = max(s[2, 2].real, 0.0)
    return 2.0 * max(0.0, float(abs(s[0, 3]) - np.sqrt(r22 * r33)))


def discord_x_state(s: np.ndarray) -> float:
    """Closed-form discord min{Q1, Q2} of an X state, measurement on B.

    Q_j = h(rho11 + rho33) + sum_i lam_i log2 lam_i + D_j, where D1 comes from
    the equatorial measurement via kappa = sqrt([1 - 2(rho33 + rho44)]^2 +
    4 |rho14|^2) and D2 from the z measurement.
    """
    s = _require_x_state(s)
    r11, r22, r33, r44 = (s[i, i].real for i in range(4))
    s_b = binary_entropy(r11 + r33)
    s_ab = von_neumann_entropy(s)
    kappa = np.sqrt((1.0 - 2.0 * (r33 + r44)) ** 2 + 4.0 * abs(s[0, 3]) ** 2)
    d1 = binary_entropy(min((1.0 + kappa) / 2.0, 1.0))
    pops = np.clip([r11, r22, r33, r44], 0.0, None)
    nz = pops[pops > 0.0]
    d2 = float(-(nz * np.log2(nz)).sum()) - s_b
    q = s_b - s_ab + min(d1, d2)
    return max(0.0, q)


def mutual_information(s: np.ndarray) -> float:
    """I(A;B) = S(A) + S(B) - S(AB), in bits."""
    s = require_density(s)
    return max(
        0.0,
        von_neumann_entropy(partial_trace(s, "A"))
        + von_neumann_entropy(partial_trace(s, "B"))
        - von_neumann_entropy(s),
    )


def _binary_entropy_grid(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    out = np.zeros_like(x)
    inner = (x > 0.0) & (x < 1.0)
    xi = x[inner]
    out[inner] = -xi * np.log2(xi) - (1.0 - xi) * np.log2(1.0 - xi)
    return out


def classical_correlation_oracle(s: np.ndarray, coarse=(64, 128), refine: int = 20) -> float:
    """max over projective measurements on B of S(A) - sum_k p_k S(A|k).

    Deterministic search: dense (theta, phi) grid scan followed by local
    refinement that halves the grid spacing around the running best point.
    Ties resolve to the first grid index and candidates are compared with max,
    so the result does not depend on evaluation order.
    """
    s = require_density(s)
    r = s.reshape(2, 2, 2, 2)
    rho_a = np.einsum("abcb->ac", r)
    s_a = von_neumann_entropy(rho_a)
    # T_k[a, c] = Tr_B[rho (I x sigma_k)] so that M(+-) = (rho_A +- n.T_k)/2
    tk = np.stack([np.einsum("abcd,db->ac", r, sig) for sig in (SIGMA_X, SIGMA_Y, SIGMA_Z)])

    def avg_cond_entropy(theta, phi):
        """sum_k p_k S(A|k) for measurement directions (vectorized over grids)."""
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        theta, phi = np.broadcast_arrays(theta, phi)
        n = np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
        tn = np.tensordot(n, tk, axes=(0, 0))  # grid-shaped 2x2 matrices
        total = np.zeros(theta.shape)
        for sign in (1.0, -1.0):
            m00 = 0.5 * (rho_a[0, 0] + sign * tn[..., 0, 0]).real
            m11 = 0.5 * (rho_a[1, 1] + sign * tn[..., 1, 1]).real
            m01 = 0.5 * (rho_a[0, 1] + sign * tn[..., 0, 1])
            p = m00 + m11
            half_gap = np.sqrt(np.clip((0.5 * (m00 - m11)) ** 2 + np.abs(m01) ** 2, 0.0, None))
            safe_p = np.where(p > 1e-12, p, 1.0)
            lam_hi = np.clip(0.5 + half_gap / safe_p, 0.0, 1.0)
            total += np.where(p > 1e-12, p * _binary_entropy_grid(lam_hi), 0.0)
        return total

    n_theta, n_phi = coarse
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    grid = avg_cond_entropy(thetas[:, None], phis[None, :])
    i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
    best_val = float(grid[i, j])
    best = (float(thetas[i]), float(phis[j]))
    step_t = np.pi / (n_theta - 1)
    step_p = 2.0 * np.pi / n_phi
    offsets = np.array([-1.0, 0.0, 1.0])
    for _ in range(refine):
        step_t /= 2.0
        step_p /= 2.0
        cand_t = best[0] + offsets[:, None] * step_t
        cand_p = best[1] + offsets[None, :] * step_p
        local = avg_cond_entropy(cand_t, cand_p)
        i, j = np.unravel_index(int(np.argmin(local)), local.shape)
        if local[i, j] < best_val:
            best_val = float(local[i, j])
            best = (float(cand_t[i, 0]), float(cand_p[0, j]))
    return max(0.0, s_a - best_val)


def discord_oracle(s: np.ndarray) -> float:
    """Brute-force discord I(A;B) - max classical correlation, measurement on B."""
    q = mutual_information(s) - classical_correlation_oracle(s)
    return max(0.0, q)


def correlation_report(s: np.ndarray) -> CorrelationReport:
    """Concurrence, discord, classical correlation and mutual information.

    X-form inputs take the closed-form route; anything else falls back to the
    general concurrence and the measurement oracle.
    """
    s = require_density(s)
    info = mutual_information(s)
    mask = np.ones((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = False
    mask[0, 3] = mask[3, 0] = False
    if np.abs(s[mask]).max() <= X_FORM_ATOL:
        conc = concurrence_x_state(s)
        disc = discord_x_state(s)
        classical = max(0.0, info - disc)
    else:
        conc = concurrence_general(s)
        classical = classical_correlation_oracle(s)
        disc = max(0.0, info - classical)
    return CorrelationReport(concurrence=conc, discord=disc, classical=classical, mutual_info=info)
