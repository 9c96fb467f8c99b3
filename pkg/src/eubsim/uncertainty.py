"""Memory-assisted entropic uncertainty quantities for the pair (sigma_x, sigma_z).

The headline output is the Adabi-form bound

    eub = log2(1/c) + S(A|B) + max{0, I(A;B) - I(sigma_x;B) - I(sigma_z;B)}

with complementarity c = 1/2 for (sigma_x, sigma_z), so log2(1/c) = 1.  The
left-hand side S(sigma_x|B) + S(sigma_z|B) is always computed definitionally
from post-measurement states, never from any bound, so the sandwich inequality
lhs >= eub >= berta is a genuine test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .qmath import (
    ID2,
    SIGMA_X,
    SIGMA_Z,
    _ptrace_keep_a,
    _ptrace_keep_b,
    binary_entropy,
    eig_hermitian,
    require_density,
    von_neumann_entropy,
)

LOG2_INV_C = 1.0  # log2(1/c) with c = 1/2, cross-checked by complementarity()


def _projector_pairs() -> dict:
    out = {}
    for name, obs in (("sigma_x", SIGMA_X), ("sigma_z", SIGMA_Z)):
        _, vectors = eig_hermitian(obs)
        projs = [np.outer(vectors[:, i], vectors[:, i].conj()) for i in range(2)]
        out[name] = tuple((p, np.kron(p, ID2)) for p in projs)
    return out


# fixed observable pair; eigenprojectors computed once at import
_PROJECTORS = _projector_pairs()


@dataclass(frozen=True)
class UncertaintyReport:
    lhs: float
    berta: float
    eub: float
    holevo_x: float
    holevo_z: float
    cond_entropy: float
    delta_term: float


def _projectors(obs: str):
    try:
        return _PROJECTORS[obs]
    except KeyError:
        raise InvalidInputError(f"obs must be one of {sorted(_PROJECTORS)}, got {obs!r}")


def complementarity(obs_a: str = "sigma_x", obs_b: str = "sigma_z") -> float:
    """c = max_{i,j} |<a_i|b_j>|^2 from the actual eigenprojectors; 1/2 for (x, z)."""
    return max(
        float(np.trace(pa @ pb).real)
        for pa, _ in _projectors(obs_a)
        for pb, _ in _projectors(obs_b)
    )


def _entropy_2x2(m: np.ndarray) -> float:
    """Entropy of a unit-trace 2x2 Hermitian matrix from its closed-form spectrum."""
    half_gap = np.sqrt(max(0.0, ((m[0, 0] - m[1, 1]).real / 2.0) ** 2 + abs(m[0, 1]) ** 2))
    return binary_entropy(min(max(0.5 * (m[0, 0] + m[1, 1]).real + half_gap, 0.0), 1.0))


def post_measurement_state(s: np.ndarray, obs: str) -> np.ndarray:
    """rho^XB = sum_i (Pi_i x I) rho (Pi_i x I) after measuring obs on A."""
    s = require_density(s)
    out = np.zeros((4, 4), dtype=complex)
    for _, big in _projectors(obs):
        out += big @ s @ big
    return out


def conditional_entropy(s: np.ndarray) -> float:
    """S(A|B) = S(AB) - S(B); reaches -1 on a Bell state."""
    s = require_density(s)
    return von_neumann_entropy(s) - _entropy_2x2(_ptrace_keep_b(s))


def _holevo(s: np.ndarray, obs: str, s_b: float) -> float:
    total = 0.0
    for _, big in _projectors(obs):
        m = big @ s @ big
        p = np.trace(m).real
        if p < 1e-14:
            continue
        total += p * _entropy_2x2(_ptrace_keep_b(m) / p)
    return max(0.0, s_b - total)


def holevo_quantity(s: np.ndarray, obs: str) -> float:
    """I(X;B) = S(B) - sum_i p_i S(rho_B|i) for the measurement of obs on A."""
    s = require_density(s)
    return _holevo(s, obs, _entropy_2x2(_ptrace_keep_b(s)))


def holevo_x_state_closed_form(s: np.ndarray, obs: str) -> float:
    """Closed forms valid for the evolved X family; used as assertions only.

    I(sigma_z;B) = h(r11+r22) + h(r11+r33) + sum_i r_ii log2 r_ii
    I(sigma_x;B) = 1 + h(r11+r33) + sum_i xi_i log2 xi_i,
    xi_{1,2} = (1-k)/4, xi_{3,4} = (1+k)/4, k = sqrt(4|r14|^2 + [1-2(r22+r44)]^2).
    """
    s = require_density(s)
    r11, r22, r33, r44 = (s[i, i].real for i in range(4))
    if obs == "sigma_z":
        pops = np.clip([r11, r22, r33, r44], 0.0, None)
        nz = pops[pops > 0.0]
        return binary_entropy(r11 + r22) + binary_entropy(r11 + r33) + float((nz * np.log2(nz)).sum())
    if obs == "sigma_x":
        k = np.sqrt(4.0 * abs(s[0, 3]) ** 2 + (1.0 - 2.0 * (r22 + r44)) ** 2)
        xi = np.clip([(1 - k) / 4, (1 - k) / 4, (1 + k) / 4, (1 + k) / 4], 0.0, None)
        nz = xi[xi > 0.0]
        return 1.0 + binary_entropy(r11 + r33) + float((nz * np.log2(nz)).sum())
    raise InvalidInputError(f"obs must be 'sigma_x' or 'sigma_z', got {obs!r}")


def eub(s: np.ndarray) -> UncertaintyReport:
    """Full uncertainty report for the (sigma_x, sigma_z) pair."""
    s = require_density(s)
    s_ab = von_neumann_entropy(s)
    s_a = _entropy_2x2(_ptrace_keep_a(s))
    s_b = _entropy_2x2(_ptrace_keep_b(s))
    cond = s_ab - s_b
    info = s_a + s_b - s_ab
    hol_x = _holevo(s, "sigma_x", s_b)
    hol_z = _holevo(s, "sigma_z", s_b)
    delta_term = info - hol_x - hol_z
    lhs = (
        von_neumann_entropy(post_measurement_state(s, "sigma_x"))
        + von_neumann_entropy(post_measurement_state(s, "sigma_z"))
        - 2.0 * s_b
    )
    return UncertaintyReport(
        lhs=lhs,
        berta=LOG2_INV_C + cond,
        eub=LOG2_INV_C + cond + max(0.0, delta_term),
        holevo_x=hol_x,
        holevo_z=hol_z,
        cond_entropy=cond,
        delta_term=delta_term,
    )
