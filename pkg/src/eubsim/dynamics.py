"""Decay envelope of a qubit damped by a detuned Lorentzian cavity, the induced
Kraus channel on the memory side, and two independent numerical oracles.

The model: a two-level memory B couples to a leaky cavity mode with Lorentzian
spectral density of width lambda, centered a detuning delta away from the qubit
transition.  In the one-excitation sector the excited amplitude obeys

    cdot(t) = -int_0^t f(t - t1) c(t1) dt1,      f(tau) = (gamma lambda / 2) e^{-(lambda - i delta) tau}

whose closed-form solution is c(t) = G(t) c(0) with

    G(t) = e^{-(lambda - i delta) t / 2} [cosh(Omega t / 2) + ((lambda - i delta)/Omega) sinh(Omega t / 2)]
    Omega = sqrt((lambda - i delta)^2 - 2 gamma lambda).

Everything downstream (decay rate, Kraus pair, evolved two-qubit state) is a
function of G.  Time is dimensionless gamma*t throughout; gamma defaults to 1.

Basis conventions: single-qubit basis |0> = excited, |1> = ground (so the
damping Kraus operators read K1 = diag(G, 1), K2 = sqrt(1-|G|^2)|1><0|).
Two-qubit basis |00>, |01>, |10>, |11> with the untouched measured qubit A
first and the damped memory B second.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IntegrationError, InvalidEnvelopeError, InvalidInputError
from .qmath import ID2, require_density

# |0> = excited, |1> = ground
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T
NUMBER_OP = SIGMA_PLUS @ SIGMA_MINUS  # |0><0|


@dataclass(frozen=True)
class EnvironmentParams:
    """Dissipation rate gamma, spectral width lam and detuning delta.

    lam and delta are in units of gamma; gamma itself sets the time unit and
    defaults to 1 so that all times are the dimensionless gamma*t.
    """

    lam: float
    delta: float = 0.0
    gamma: float = 1.0

    def __post_init__(self):
        if self.gamma <= 0 or self.lam <= 0:
            raise InvalidInputError("gamma and lam must be positive")


@dataclass(frozen=True)
class InitialStateParams:
    """Purity weight r in [0, 1] and correlation angle theta (radians) of the
    shared state r |psi(theta)><psi(theta)| + (1-r)/4 * I,
    |psi(theta)> = cos(theta)|00> + sin(theta)|11>."""

    r: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise InvalidInputError(f"r={self.r} outside [0, 1]")


@dataclass(frozen=True)
class DecayEnvelope:
    """G(t) together with the derived time-local rates.

    Gamma = -2 Re(Gdot/G) is the decay rate; lamb_shift = -2 Im(Gdot/G) is the
    detuning-induced coherent frequency correction.  Both develop integrable
    singularities at isolated zeros of G (possible for lam < 2 gamma, delta=0).
    """

    t: float
    G: complex
    absG2: float
    Gamma: float
    lamb_shift: float

    def __post_init__(self):
        if abs(self.absG2 - abs(self.G) ** 2) > 1e-12:
            raise InvalidInputError("absG2 inconsistent with |G|^2")


@dataclass(frozen=True)
class KrausPair:
    K1: np.ndarray
    K2: np.ndarray


def big_omega(env: EnvironmentParams) -> complex:
    """Principal square root of (lam - i delta)^2 - 2 gamma lam.

    Branch: non-negative real part, and non-negative imaginary part when the
    real part vanishes.  G(t) is branch-invariant (cosh is even, sinh/Omega is
    even in Omega), which the tests exercise by flipping the sign.
    """
    l = complex(env.lam, -env.delta)
    z = l * l - 2.0 * env.gamma * env.lam
    if z.imag == 0.0:
        z = complex(z.real, 0.0)  # normalize -0.0 so the cut lands on +i
    return complex(np.sqrt(z))


def _envelope_parts(env: EnvironmentParams, t: float) -> tuple[complex, complex]:
    """Return (G(t), Gdot(t)/G(t)) without overflow for any t >= 0.

    cosh/sinh are evaluated as scaled exponentials exp(z - Re z); both
    exponents of G then have non-positive real parts since Re(Omega) < lam.
    For |Omega t| < 1e-6 the 0/0 in sinh(z)/Omega is replaced by its series.
    Gdot follows from the closed form: Gdot = -gamma lam e^{-w} sinh(z)/Omega.
    """
    om = big_omega(env)
    l = complex(env.lam, -env.delta)
    z = om * t / 2.0
    w = l * t / 2.0
    if abs(z) < 1e-6:
        z2 = z * z
        cosh_s = 1.0 + z2 / 2.0 + z2 * z2 / 24.0
        sinh_over_om = (t / 2.0) * (1.0 + z2 / 6.0 + z2 * z2 / 120.0)
        G = np.exp(-w) * (cosh_s + l * sinh_over_om)
        dlog = -env.gamma * env.lam * sinh_over_om / (cosh_s + l * sinh_over_om)
        return complex(G), complex(dlog)
    rez = z.real
    ep = np.exp(z - rez)   # |ep| = 1
    em = np.exp(-z - rez)  # |em| <= 1
    cosh_s = (ep + em) / 2.0            # cosh(z) e^{-Re z}
    sinh_over_om = (ep - em) / 2.0 / om  # sinh(z)/Omega e^{-Re z}
    G = np.exp(-w + rez) * (cosh_s + l * sinh_over_om)
    dlog = -env.gamma * env.lam * sinh_over_om / (cosh_s + l * sinh_over_om)
    return complex(G), complex(dlog)


def envelope(env: EnvironmentParams, t: float) -> DecayEnvelope:
    """Closed-form decay envelope at dimensionless time t >= 0."""
    if t < 0:
        raise InvalidInputError(f"t={t} must be non-negative")
    G, dlog = _envelope_parts(env, t)
    absG2 = abs(G) ** 2
    if absG2 > 1.0 + 1e-10:
        raise InvalidEnvelopeError(f"|G|^2={absG2} exceeds 1 at t={t}")
    return DecayEnvelope(t=t, G=G, absG2=absG2, Gamma=-2.0 * dlog.real, lamb_shift=-2.0 * dlog.imag)


def correlation_kernel(env: EnvironmentParams, tau: float) -> complex:
    """Environment correlation function f(tau) = (gamma lam / 2) e^{-(lam - i delta) tau}."""
    if tau < 0:
        raise InvalidInputError(f"tau={tau} must be non-negative")
    return complex(0.5 * env.gamma * env.lam * np.exp(-complex(env.lam, -env.delta) * tau))


def spectral_density(env: EnvironmentParams, omega_offset: float) -> float:
    """Lorentzian spectral density J as a function of omega_offset = omega_0 - omega.

    Peaked at omega_offset = delta with peak value gamma/(2 pi); integrates to
    gamma lam / 2 = f(0) over the whole line.
    """
    return float(env.gamma * env.lam**2 / (2.0 * np.pi) / ((omega_offset - env.delta) ** 2 + env.lam**2))


def kraus_pair(envlp: DecayEnvelope) -> KrausPair:
    """Amplitude-damping Kraus pair for the memory qubit at the envelope's time."""
    if envlp.absG2 > 1.0 + 1e-10:
        raise InvalidEnvelopeError(f"|G|^2={envlp.absG2} exceeds 1; channel not completely positive")
    K1 = np.array([[envlp.G, 0.0], [0.0, 1.0]], dtype=complex)
    K2 = np.array([[0.0, 0.0], [np.sqrt(max(0.0, 1.0 - envlp.absG2)), 0.0]], dtype=complex)
    return KrausPair(K1=K1, K2=K2)


def initial_state(p: InitialStateParams) -> np.ndarray:
    """Shared two-qubit state r |psi(theta)><psi(theta)| + (1-r)/4 I."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.cos(p.theta)
    psi[3] = np.sin(p.theta)
    return p.r * np.outer(psi, psi.conj()) + (1.0 - p.r) / 4.0 * np.eye(4, dtype=complex)


def evolve(state0: np.ndarray, kp: KrausPair) -> np.ndarray:
    """Apply the memory-side channel: rho(t) = sum_a (I (x) K_a) rho(0) (I (x) K_a)^dag."""
    state0 = require_density(state0)
    out = np.zeros((4, 4), dtype=complex)
    for K in (kp.K1, kp.K2):
        U = np.kron(ID2, K)
        out += U @ state0 @ U.conj().T
    return out


def analytic_x_state(p: InitialStateParams, envlp: DecayEnvelope) -> np.ndarray:
    """Evolved state of the shared family in closed X form.

    Uses 1 - |G|^2 in the populations, the completely-positive reading of the
    channel; must agree with evolve(initial_state(p), kraus_pair(envlp))
    element-wise to 1e-12.
    """
    g2 = envlp.absG2
    c2t = np.cos(2.0 * p.theta)
    r = p.r
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 0.25 * g2 * (1.0 + r + 2.0 * r * c2t)
    rho[1, 1] = 0.25 * (1.0 - r + (1.0 - g2) * (1.0 + r + 2.0 * r * c2t))
    rho[2, 2] = 0.25 * g2 * (1.0 - r)
    rho[3, 3] = 0.25 * (1.0 + r + (1.0 - r) * (1.0 - g2) - 2.0 * r * c2t)
    rho[0, 3] = envlp.G * r * np.cos(p.theta) * np.sin(p.theta)
    rho[3, 0] = np.conj(rho[0, 3])
    return rho


# --- time-local master-equation oracle -------------------------------------

def _superop(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    # row-major vec: vec(A rho B) = (A kron B^T) vec(rho)
    return np.kron(left, right.T)


def _memory_side_generators() -> tuple[np.ndarray, np.ndarray]:
    """16x16 superoperators of the dissipator and the Lamb commutator acting on B."""
    lower = np.kron(ID2, SIGMA_MINUS)
    raise_ = np.kron(ID2, SIGMA_PLUS)
    number = np.kron(ID2, NUMBER_OP)
    ident = np.eye(4, dtype=complex)
    dissipator = _superop(lower, raise_) - 0.5 * (_superop(number, ident) + _superop(ident, number))
    commutator = _superop(number, ident) - _superop(ident, number)  # [N, rho]
    return dissipator, commutator


_L_DISS, _L_COMM = _memory_side_generators()


def _trapezoid_run(state0, env, times, dt, include_lamb_shift):
    """Crank-Nicolson integration on a fixed grid, sampling at the given times.

    The implicit trapezoid map is A-stable and propagates the local power-law
    modes (t - t0)^p, p in {1, 2}, exactly across the integrable singularities
    of Gamma(t) at zeros of G; an explicit stepper diverges there.
    """
    t_end = times[-1]
    n_steps = int(round(t_end / dt))
    grid_dt = t_end / n_steps if n_steps else dt
    idx = [int(round(t / grid_dt)) for t in times]
    for t, i in zip(times, idx):
        if abs(i * grid_dt - t) > 1e-9 * max(1.0, t_end):
            raise InvalidInputError(f"sample time {t} does not lie on the dt={dt} grid")
    ident = np.eye(16, dtype=complex)

    def generator(t):
        e = envelope(env, t)
        L = e.Gamma * _L_DISS
        if include_lamb_shift:
            # drho/dt += -i (S/2) [N_B, rho], the time-convolutionless Lamb term
            L = L - 1j * (e.lamb_shift / 2.0) * _L_COMM
        return L

    y = state0.reshape(-1).astype(complex)
    wanted = set(idx)
    out = {}
    if 0 in wanted:
        out[0] = state0.astype(complex).copy()
    L_prev = generator(0.0)
    for n in range(n_steps):
        L_next = generator((n + 1) * grid_dt)
        rhs = y + (grid_dt / 2.0) * (L_prev @ y)
        y = np.linalg.solve(ident - (grid_dt / 2.0) * L_next, rhs)
        L_prev = L_next
        if (n + 1) in wanted:
            out[n + 1] = y.reshape(4, 4).copy()
    return [out[i] for i in idx]


def master_equation_trajectory(
    state0: np.ndarray,
    env: EnvironmentParams,
    times,
    dt: float = 1e-3,
    include_lamb_shift: bool = True,
    convergence_tol: float = 5e-7,
) -> list[np.ndarray]:
    """Integrate the time-local master equation

        drho/dt = Gamma(t) (s- rho s+ - 1/2 {s+ s-, rho}) - i (S(t)/2) [s+ s-, rho]

    on qubit B and return the states at the requested times (ascending, on the
    dt grid).  The run is repeated at dt/2; if the two disagree beyond
    convergence_tol in max-norm the step size is declared unconverged and an
    IntegrationError is raised.  The finer result is returned.
    """
    state0 = require_density(state0)
    times = sorted(float(t) for t in times)
    if not times or times[0] < 0:
        raise InvalidInputError("times must be non-negative and non-empty")
    if times[-1] == 0.0:
        return [state0.astype(complex).copy() for _ in times]
    coarse = _trapezoid_run(state0, env, times, dt, include_lamb_shift)
    fine = _trapezoid_run(state0, env, times, dt / 2.0, include_lamb_shift)
    worst = max(float(np.abs(a - b).max()) for a, b in zip(coarse, fine))
    if worst > convergence_tol:
        raise IntegrationError(
            f"step halving changed the result by {worst:.3e} (> {convergence_tol:g}); decrease dt"
        )
    return fine


def master_equation_oracle(
    state0: np.ndarray,
    env: EnvironmentParams,
    t_end: float,
    dt: float = 1e-3,
    include_lamb_shift: bool = True,
    convergence_tol: float = 5e-7,
) -> np.ndarray:
    """State at t_end per the time-local master equation; see master_equation_trajectory."""
    return master_equation_trajectory(
        state0, env, [t_end], dt=dt, include_lamb_shift=include_lamb_shift, convergence_tol=convergence_tol
    )[-1]


# --- Volterra integro-differential oracle -----------------------------------

def volterra_oracle(
    env: EnvironmentParams,
    t_end: float,
    dt: float = 1e-3,
    convergence_tol: float = 1e-5,
) -> tuple[np.ndarray, np.ndarray]:
    """Solve cdot(t) = -int_0^t f(t - t1) c(t1) dt1, c(0) = 1, on a uniform grid.

    The memory integral is a trapezoidal quadrature over the stored history
    (the kernel convolves against c(t1), not c(t)); each step is advanced by an
    explicit predictor followed by two trapezoidal corrector passes.  Raises
    IntegrationError if halving dt moves the endpoint by more than
    convergence_tol.  Returns (times, c) including t = 0.
    """
    if t_end <= 0:
        raise InvalidInputError("t_end must be positive")

    def run(h):
        n = int(round(t_end / h))
        h = t_end / n
        ts = np.arange(n + 1) * h
        l = complex(env.lam, -env.delta)
        fker = 0.5 * env.gamma * env.lam * np.exp(-l * ts)
        frev = fker[::-1].copy()  # contiguous, frev[n - k + j] = fker[k - j]
        c = np.zeros(n + 1, dtype=complex)
        c[0] = 1.0
        for k in range(n):
            if k == 0:
                integral_k = 0.0 + 0.0j
            else:
                hist = np.dot(frev[n - k : n], c[:k])  # sum_{j<k} f(t_k - t_j) c_j
                integral_k = h * (hist - 0.5 * fker[k] * c[0] + 0.5 * fker[0] * c[k])
            cdot_k = -integral_k
            hist1 = np.dot(frev[n - k - 1 : n], c[: k + 1])
            c_end = c[k] + h * cdot_k  # predictor
            for _ in range(2):  # corrector passes
                integral_k1 = h * (hist1 - 0.5 * fker[k + 1] * c[0] + 0.5 * fker[0] * c_end)
                c_end = c[k] + 0.5 * h * (cdot_k - integral_k1)
            c[k + 1] = c_end
        return ts, c

    ts, c = run(dt)
    _, c_half = run(dt / 2.0)
    drift = abs(c[-1] - c_half[-1])
    if drift > convergence_tol:
        raise IntegrationError(f"step halving moved c(t_end) by {drift:.3e} (> {convergence_tol:g})")
    return ts, c
