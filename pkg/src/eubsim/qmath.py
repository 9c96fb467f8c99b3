"""Complex linear algebra and entropy kernel for 2x2 and 4x4 Hermitian matrices.

Density matrices are plain complex numpy arrays.  Two-qubit states use the
basis order |00>, |01>, |10>, |11> with the measured qubit A as the first
tensor factor and the memory B as the second.  All entropies are in bits
(base-2 logarithms).
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError, InvalidStateError

HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-8
EIG_FLOOR = -1e-9
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def require_hermitian(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m - m.conj().T).max() > atol * scale:
        raise InvalidInputError("matrix is not Hermitian within tolerance")
    return m


def require_density(rho: np.ndarray, trace_atol: float = TRACE_ATOL) -> np.ndarray:
    """Cheap validity check: Hermitian and unit trace.  Positivity is enforced
    where eigenvalues are actually computed (entropy), not here."""
    rho = require_hermitian(rho)
    if abs(np.trace(rho).real - 1.0) > trace_atol or abs(np.trace(rho).imag) > trace_atol:
        raise InvalidInputError(f"trace {np.trace(rho):.3g} differs from 1 beyond tolerance")
    return rho


def _jacobi_rotation(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate a[p, q] with a complex Jacobi rotation, updating a and v in place."""
    apq = a[p, q]
    r = abs(apq)
    alpha = apq / r  # phase of the off-diagonal element
    tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
    if tau == 0.0:
        t = 1.0
    else:
        t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    n = a.shape[0]
    J = np.eye(n, dtype=complex)
    J[p, p] = c
    J[q, p] = -s * np.conj(alpha)
    J[p, q] = s * alpha
    J[q, q] = c
    a[:] = J.conj().T @ a @ J
    v[:] = v @ J


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eig_hermitian(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a small Hermitian matrix by cyclic complex Jacobi
    rotations.

    Returns (values, vectors) with real eigenvalues sorted in descending order
    and orthonormal eigenvectors as the corresponding columns.
    """
    m = require_hermitian(m)
    a = 0.5 * (m + m.conj().T)  # symmetrize away representation round-off
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_diagonal_norm(a) <= JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > 1e-300:
                    _jacobi_rotation(a, v, p, q)
    else:
        raise RuntimeError("Jacobi sweep did not converge")
    w = np.diag(a).real
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0."""
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise InvalidInputError(f"binary_entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def _entropy_from_spectrum(w: np.ndarray) -> float:
    if w.min() < EIG_FLOOR:
        raise InvalidStateError(f"negative eigenvalue {w.min():.3e} below {EIG_FLOOR}")
    w = np.clip(w, 0.0, None)
    nz = w[w > 0.0]
    return max(0.0, float(-(nz * np.log2(nz)).sum()))


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -Tr rho log2 rho in bits, with the 0 log 0 = 0 convention.

    Eigenvalues in [-1e-9, 0] are treated as exact zeros; anything more
    negative raises, since it signals a genuinely invalid state rather than
    round-off drift.
    """
    rho = require_density(rho)
    diag = np.diag(rho)
    if np.abs(rho - np.diag(diag)).max() <= 1e-14:
        return _entropy_from_spectrum(diag.real)
    return _entropy_from_spectrum(eig_hermitian(rho)[0])


def _ptrace_keep_a(rho: np.ndarray) -> np.ndarray:
    return np.einsum("abcb->ac", rho.reshape(2, 2, 2, 2))


def _ptrace_keep_b(rho: np.ndarray) -> np.ndarray:
    return np.einsum("abad->bd", rho.reshape(2, 2, 2, 2))


def partial_trace(rho: np.ndarray, keep: str) -> np.ndarray:
    """Trace out one qubit of a two-qubit state; keep is "A" or "B"."""
    rho = require_density(rho)
    if rho.shape != (4, 4):
        raise InvalidInputError(f"expected a 4x4 two-qubit state, got {rho.shape}")
    if keep == "A":
        return _ptrace_keep_a(rho)
    if keep == "B":
        return _ptrace_keep_b(rho)
    raise InvalidInputError(f"keep must be 'A' or 'B', got {keep!r}")
