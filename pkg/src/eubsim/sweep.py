"""Parameter sweeps over (delta, gamma*t) grids and figure presets.

Every sweep row carries the full 12-column record (parameters, |G|, Gamma,
concurrence, discord, eub, berta, lhs); the quantities field of a config
selects what a figure is about, not what is computed.  Output is fully
deterministic: identical configs produce byte-identical CSV.
"""

from __future__ import annotations

import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .correlations import concurrence_x_state, discord_x_state
from .dynamics import EnvironmentParams, InitialStateParams, envelope, evolve, initial_state, kraus_pair
from .errors import ConfigError, SweepNumericalError
from .uncertainty import eub

ALL_QUANTITIES = ("concurrence", "discord", "eub", "berta", "lhs", "absG", "Gamma")

CSV_COLUMNS = (
    "gamma_t",
    "delta_over_gamma",
    "lambda_over_gamma",
    "r",
    "theta",
    "absG",
    "Gamma",
    "concurrence",
    "discord",
    "eub",
    "berta",
    "lhs",
)

FIGURE_NAMES = ("fig2", "fig3", "fig4", "fig5")


@dataclass(frozen=True)
class SweepConfig:
    lambda_over_gamma: float = 10.0
    delta_list: tuple = (0.0,)
    r: float = 1.0
    theta: float = math.pi / 4.0
    t_max: float = 10.0
    n_points: int = 401
    quantities: tuple = ALL_QUANTITIES
    output_format: str = "csv"

    def validate(self) -> "SweepConfig":
        if self.lambda_over_gamma <= 0:
            raise ConfigError("lambda must be positive")
        if not self.delta_list:
            raise ConfigError("delta list must be non-empty")
        if not 0.0 <= self.r <= 1.0:
            raise ConfigError(f"r={self.r} outside [0, 1]")
        if self.t_max <= 0:
            raise ConfigError("t_max must be positive")
        if self.n_points < 2:
            raise ConfigError("need at least 2 time points")
        unknown = set(self.quantities) - set(ALL_QUANTITIES)
        if unknown:
            raise ConfigError(f"unknown quantities: {sorted(unknown)}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.output_format!r}")
        return self


@dataclass(frozen=True)
class TimeSeriesRecord:
    gamma_t: float
    delta_over_gamma: float
    lambda_over_gamma: float
    r: float
    theta: float
    absG: float
    Gamma: float
    concurrence: float
    discord: float
    eub: float
    berta: float
    lhs: float

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


def figure_preset(name: str) -> SweepConfig:
    """Sweep configs behind the paper-style figures.

    fig2/fig3: Markovian, lambda = 10 gamma, gamma*t in [0, 10], 401 points.
    fig4/fig5: non-Markovian, lambda = 0.1 gamma, gamma*t in [0, 50], 1001 points.
    fig2/fig4 are about the correlations, fig3/fig5 about the uncertainty bound;
    all use the maximally entangled initial state and detunings {0, 2, 5, 10} gamma.
    """
    if name not in FIGURE_NAMES:
        raise ConfigError(f"unknown figure {name!r}; choose from {FIGURE_NAMES}")
    markovian = name in ("fig2", "fig3")
    quantities = ("concurrence", "discord") if name in ("fig2", "fig4") else ("eub", "berta", "lhs")
    return SweepConfig(
        lambda_over_gamma=10.0 if markovian else 0.1,
        delta_list=(0.0, 2.0, 5.0, 10.0),
        r=1.0,
        theta=math.pi / 4.0,
        t_max=10.0 if markovian else 50.0,
        n_points=401 if markovian else 1001,
        quantities=quantities,
        output_format="csv",
    )


def _record_at(cfg: SweepConfig, delta: float, t: float) -> TimeSeriesRecord:
    env = EnvironmentParams(lam=cfg.lambda_over_gamma, delta=delta)
    params = InitialStateParams(r=cfg.r, theta=cfg.theta)
    envlp = envelope(env, t)
    state = evolve(initial_state(params), kraus_pair(envlp))
    report = eub(state)
    return TimeSeriesRecord(
        gamma_t=t,
        delta_over_gamma=delta,
        lambda_over_gamma=cfg.lambda_over_gamma,
        r=cfg.r,
        theta=cfg.theta,
        absG=math.sqrt(envlp.absG2),
        Gamma=envlp.Gamma,
        concurrence=concurrence_x_state(state),
        discord=discord_x_state(state),
        eub=report.eub,
        berta=report.berta,
        lhs=report.lhs,
    )


def _delta_series(cfg: SweepConfig, delta: float, times: np.ndarray) -> list[TimeSeriesRecord]:
    rows = []
    for t in times:
        try:
            rows.append(_record_at(cfg, delta, float(t)))
        except Exception as exc:  # surface the failing grid point
            raise SweepNumericalError(delta, float(t), exc) from exc
    return rows


def _worker_count(n_series: int) -> int:
    raw = os.environ.get("EUB_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"EUB_THREADS={raw!r} is not an integer")
    if cap < 0:
        raise ConfigError("EUB_THREADS must be >= 0")
    auto = min(n_series, os.cpu_count() or 1)
    return min(cap, n_series) if cap else auto


def run_sweep(cfg: SweepConfig) -> list[TimeSeriesRecord]:
    """Evaluate the (delta, t) grid; rows ordered by (delta, t).

    The delta series are independent and may run on a thread pool (capped by
    EUB_THREADS); results are assembled in canonical order regardless of
    completion order.
    """
    cfg = cfg.validate()
    times = np.linspace(0.0, cfg.t_max, cfg.n_points)
    workers = _worker_count(len(cfg.delta_list))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            series = list(pool.map(lambda d: _delta_series(cfg, d, times), cfg.delta_list))
    else:
        series = [_delta_series(cfg, d, times) for d in cfg.delta_list]
    return [row for rows in series for row in rows]


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # canonicalize -0.0
    return f"{x:.12g}"


def format_csv(records) -> str:
    """UTF-8 CSV text: mandatory header, 12 significant digits, LF endings."""
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for rec in records:
        buf.write(",".join(_fmt(v) for v in rec.as_tuple()) + "\n")
    return buf.getvalue()


def format_json(records) -> str:
    rows = [dict(zip(CSV_COLUMNS, rec.as_tuple())) for rec in records]
    return json.dumps(rows, indent=2) + "\n"


def format_records(records, output_format: str) -> str:
    if output_format == "csv":
        return format_csv(records)
    if output_format == "json":
        return format_json(records)
    raise ConfigError(f"format must be csv or json, got {output_format!r}")


def preset_with_overrides(name: str, **overrides) -> SweepConfig:
    """Figure preset with any user overrides (delta list, ranges, format) applied."""
    cfg = figure_preset(name)
    clean = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **clean) if clean else cfg
