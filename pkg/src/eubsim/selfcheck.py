"""Release-gate invariant suites, runnable from the CLI.

Each suite prints one PASS/FAIL line; the run succeeds only if every suite
passes.  The suites mirror the acceptance criteria at reduced sample counts so
the whole check stays comfortably under a minute.
"""

from __future__ import annotations

import numpy as np

from . import correlations, dynamics, uncertainty
from .dynamics import EnvironmentParams, InitialStateParams
from .sweep import FIGURE_NAMES, figure_preset, run_sweep

MONOTONE_SLACK = 1e-6


def _random_density(rng) -> np.ndarray:
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def _random_family_state(rng):
    params = InitialStateParams(r=rng.uniform(0, 1), theta=rng.uniform(0, np.pi / 2))
    env = EnvironmentParams(lam=float(rng.choice([0.1, 1.0, 10.0])), delta=rng.uniform(0, 10))
    t = rng.uniform(0, 50)
    envlp = dynamics.envelope(env, t)
    return params, envlp


def check_cptp(fault: str | None = None) -> tuple[bool, str]:
    rng = np.random.default_rng(20240)
    worst_complete = 0.0
    worst_trace = 0.0
    worst_herm = 0.0
    worst_neg = 0.0
    for _ in range(200):
        params, envlp = _random_family_state(rng)
        if fault == "cptp":
            # test hook: force |G|^2 > 1 past the kraus_pair guard so the
            # completeness check below must trip
            kp = dynamics.KrausPair(
                K1=np.array([[1.2, 0.0], [0.0, 1.0]], dtype=complex),
                K2=np.zeros((2, 2), dtype=complex),
            )
        else:
            kp = dynamics.kraus_pair(envlp)
        comp = kp.K1.conj().T @ kp.K1 + kp.K2.conj().T @ kp.K2
        worst_complete = max(worst_complete, float(np.abs(comp - np.eye(2)).max()))
        state = dynamics.evolve(dynamics.initial_state(params), kp)
        worst_trace = max(worst_trace, abs(np.trace(state).real - 1.0))
        worst_herm = max(worst_herm, float(np.abs(state - state.conj().T).max()))
        eigs = np.linalg.eigvalsh(state)
        worst_neg = max(worst_neg, max(0.0, -float(eigs.min())))
    ok = worst_complete < 1e-10 and worst_trace < 1e-10 and worst_herm < 1e-10 and worst_neg < 1e-9
    return ok, (
        f"completeness {worst_complete:.2e}, trace drift {worst_trace:.2e}, "
        f"hermiticity {worst_herm:.2e}, negativity {worst_neg:.2e}"
    )


def check_closed_form_vs_channel() -> tuple[bool, str]:
    rng = np.random.default_rng(20241)
    worst = 0.0
    for _ in range(200):
        params, envlp = _random_family_state(rng)
        direct = dynamics.evolve(dynamics.initial_state(params), dynamics.kraus_pair(envlp))
        closed = dynamics.analytic_x_state(params, envlp)
        worst = max(worst, float(np.abs(direct - closed).max()))
    return worst < 1e-12, f"max element mismatch {worst:.2e}"


def check_volterra() -> tuple[bool, str]:
    worst = 0.0
    for lam, t_end, dt in ((10.0, 10.0, 5e-4), (0.1, 50.0, 1e-3)):
        for delta in (0.0, 5.0, 10.0):
            env = EnvironmentParams(lam=lam, delta=delta)
            ts, c = dynamics.volterra_oracle(env, t_end, dt=dt)
            stride = max(1, int(round(0.5 / dt)))
            for i in range(0, len(ts), stride):
                worst = max(worst, abs(c[i] - dynamics.envelope(env, float(ts[i])).G))
    return worst < 1e-5, f"max |c - G| {worst:.2e}"


def check_master_equation(include_lamb_shift: bool = True) -> tuple[bool, str]:
    worst = 0.0
    bell = dynamics.initial_state(InitialStateParams(r=1.0, theta=np.pi / 4))
    for lam, t_end in ((10.0, 10.0), (0.1, 50.0)):
        for delta in (0.0, 5.0, 10.0):
            env = EnvironmentParams(lam=lam, delta=delta)
            times = [t_end / 4, t_end / 2, 3 * t_end / 4, t_end]
            states = dynamics.master_equation_trajectory(
                bell, env, times, dt=1e-3, include_lamb_shift=include_lamb_shift
            )
            for t, got in zip(times, states):
                ref = dynamics.evolve(bell, dynamics.kraus_pair(dynamics.envelope(env, t)))
                worst = max(worst, float(np.abs(got - ref).max()))
    if include_lamb_shift:
        return worst < 1e-6, f"max state mismatch {worst:.2e}"
    # the paper-literal equation (no Lamb term) must miss the coherence phase at delta != 0
    return worst > 1e-3, f"expected coherence mismatch without Lamb term: {worst:.2e}"


def check_discord_oracle() -> tuple[bool, str]:
    rng = np.random.default_rng(20242)
    worst = 0.0
    for _ in range(25):
        params, envlp = _random_family_state(rng)
        state = dynamics.analytic_x_state(params, envlp)
        worst = max(worst, abs(correlations.discord_x_state(state) - correlations.discord_oracle(state)))
    return worst < 1e-4, f"max closed-form vs oracle gap {worst:.2e}"


def _preset_rows():
    return {name: run_sweep(figure_preset(name)) for name in FIGURE_NAMES}


def check_sandwich(preset_rows=None) -> tuple[bool, str]:
    rng = np.random.default_rng(20243)
    worst = 0.0
    for _ in range(500):
        rep = uncertainty.eub(_random_density(rng))
        worst = max(worst, rep.eub - rep.lhs, rep.berta - rep.eub)
    for rows in (preset_rows or _preset_rows()).values():
        for row in rows:
            worst = max(worst, row.eub - row.lhs, row.berta - row.eub)
    return worst < 1e-9, f"max inequality violation {worst:.2e}"


def check_detuning_monotonicity(preset_rows=None) -> tuple[bool, str]:
    worst = 0.0
    rows_by_name = preset_rows or _preset_rows()
    for name in FIGURE_NAMES:
        rows = rows_by_name[name]
        by_delta = {}
        for row in rows:
            by_delta.setdefault(row.delta_over_gamma, []).append(row)
        deltas = sorted(by_delta)
        for d1, d2 in zip(deltas, deltas[1:]):
            for low, high in zip(by_delta[d1], by_delta[d2]):
                worst = max(
                    worst,
                    low.concurrence - high.concurrence,
                    low.discord - high.discord,
                    high.eub - low.eub,
                )
    return worst < MONOTONE_SLACK, f"max monotonicity violation {worst:.2e}"


def check_complementarity() -> tuple[bool, str]:
    c = uncertainty.complementarity()
    return abs(c - 0.5) < 1e-12, f"c = {c:.12f}"


def run_selfcheck(include_lamb_shift: bool = True, fault: str | None = None, echo=print) -> bool:
    preset_rows = _preset_rows()
    suites = [
        ("cptp", lambda: check_cptp(fault=fault)),
        ("closed-form-vs-channel", check_closed_form_vs_channel),
        ("volterra-oracle", check_volterra),
        ("master-equation-oracle", lambda: check_master_equation(include_lamb_shift)),
        ("discord-oracle", check_discord_oracle),
        ("sandwich-inequality", lambda: check_sandwich(preset_rows)),
        ("detuning-monotonicity", lambda: check_detuning_monotonicity(preset_rows)),
        ("complementarity", check_complementarity),
    ]
    all_ok = True
    for name, fn in suites:
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        echo(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    echo(f"selfcheck: {'all suites passed' if all_ok else 'FAILURES detected'}")
    return all_ok
