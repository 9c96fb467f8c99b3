import numpy as np
import pytest

from eubsim import EnvironmentParams, InitialStateParams, analytic_x_state, envelope
from eubsim.sweep import FIGURE_NAMES, figure_preset, run_sweep


def random_density(rng, dim=4):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, dim=4):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (m + m.conj().T)


def random_family_state(rng, t_max=50.0):
    """Random member of the evolved two-qubit family (always exact X form)."""
    params = InitialStateParams(r=rng.uniform(0.0, 1.0), theta=rng.uniform(0.0, np.pi / 2.0))
    env = EnvironmentParams(lam=float(rng.choice([0.1, 1.0, 10.0])), delta=rng.uniform(0.0, 10.0))
    envlp = envelope(env, rng.uniform(0.0, t_max))
    return analytic_x_state(params, envlp), params, envlp


def bell_state():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1.0 / np.sqrt(2.0)
    return np.outer(v, v.conj())


@pytest.fixture(scope="session")
def preset_rows():
    """All four figure presets, computed once per session."""
    return {name: run_sweep(figure_preset(name)) for name in FIGURE_NAMES}
