import json
import os

import numpy as np
import pytest

from eubsim.errors import ConfigError
from eubsim.sweep import (
    ALL_QUANTITIES,
    CSV_COLUMNS,
    SweepConfig,
    figure_preset,
    format_csv,
    format_json,
    run_sweep,
)

SMALL = SweepConfig(lambda_over_gamma=10.0, delta_list=(0.0, 5.0), t_max=2.0, n_points=9)


class TestConfig:
    def test_defaults_valid(self):
        SweepConfig().validate()

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(lambda_over_gamma=-1.0),
            dict(delta_list=()),
            dict(r=1.5),
            dict(t_max=0.0),
            dict(n_points=1),
            dict(quantities=("entropy_of_fun",)),
            dict(output_format="xml"),
        ],
    )
    def test_invalid_configs_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            SweepConfig(**kwargs).validate()


class TestFigurePresets:
    def test_markovian_presets(self):
        for name in ("fig2", "fig3"):
            cfg = figure_preset(name)
            assert cfg.lambda_over_gamma == 10.0
            assert cfg.t_max == 10.0
            assert cfg.n_points == 401
            assert cfg.delta_list == (0.0, 2.0, 5.0, 10.0)
            assert cfg.r == 1.0
            assert cfg.theta == pytest.approx(np.pi / 4)

    def test_non_markovian_presets(self):
        for name in ("fig4", "fig5"):
            cfg = figure_preset(name)
            assert cfg.lambda_over_gamma == 0.1
            assert cfg.t_max == 50.0
            assert cfg.n_points == 1001

    def test_quantity_focus(self):
        assert figure_preset("fig2").quantities == ("concurrence", "discord")
        assert "eub" in figure_preset("fig5").quantities

    def test_unknown_name(self):
        with pytest.raises(ConfigError):
            figure_preset("fig9")


class TestRunSweep:
    def test_first_row_is_bell_endpoint(self):
        cfg = SweepConfig(
            lambda_over_gamma=10.0, delta_list=(0.0,), r=1.0, theta=np.pi / 4, t_max=10.0, n_points=101
        )
        row = run_sweep(cfg)[0]
        expected = (0.0, 0.0, 10.0, 1.0, np.pi / 4, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0)
        for got, want in zip(row.as_tuple(), expected):
            assert got == pytest.approx(want, abs=1e-10)

    def test_row_count_and_order(self):
        rows = run_sweep(SMALL)
        assert len(rows) == 2 * 9
        deltas = [r.delta_over_gamma for r in rows]
        assert deltas == sorted(deltas)
        times = [r.gamma_t for r in rows[:9]]
        assert times == pytest.approx(list(np.linspace(0, 2, 9)))
        assert rows[8].gamma_t == SMALL.t_max  # inclusive grid

    def test_two_point_grid(self):
        cfg = SweepConfig(delta_list=(0.0, 1.0, 2.0), n_points=2, t_max=1.0)
        assert len(run_sweep(cfg)) == 6

    def test_maximally_mixed_input_stays_uncorrelated(self):
        cfg = SweepConfig(r=0.0, delta_list=(0.0,), t_max=2.0, n_points=11)
        for row in run_sweep(cfg):
            assert row.concurrence == 0.0
            assert row.discord == pytest.approx(0.0, abs=1e-12)

    def test_thread_cap_does_not_change_output(self, monkeypatch):
        monkeypatch.setenv("EUB_THREADS", "1")
        serial = format_csv(run_sweep(SMALL))
        monkeypatch.setenv("EUB_THREADS", "2")
        threaded = format_csv(run_sweep(SMALL))
        assert serial == threaded

    def test_bad_thread_cap(self, monkeypatch):
        monkeypatch.setenv("EUB_THREADS", "lots")
        with pytest.raises(ConfigError):
            run_sweep(SMALL)


class TestFormatting:
    def test_csv_schema(self):
        text = format_csv(run_sweep(SMALL))
        lines = text.split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert text.endswith("\n")
        assert "\r" not in text
        assert len(lines) == 2 + 2 * 9  # header + rows + trailing newline

    def test_csv_determinism(self):
        assert format_csv(run_sweep(SMALL)) == format_csv(run_sweep(SMALL))

    def test_no_negative_zero(self):
        text = format_csv(run_sweep(SMALL))
        assert "-0," not in text and not text.endswith("-0")

    def test_significant_digits(self):
        text = format_csv(run_sweep(SMALL))
        theta = text.split("\n")[1].split(",")[4]
        assert theta == f"{np.pi / 4:.12g}"

    def test_json_round_trip(self):
        rows = run_sweep(SMALL)
        parsed = json.loads(format_json(rows))
        assert len(parsed) == len(rows)
        assert list(parsed[0]) == list(CSV_COLUMNS)
        assert parsed[0]["absG"] == 1.0

    def test_all_quantities_always_emitted(self):
        cfg = SweepConfig(quantities=("concurrence",), delta_list=(0.0,), t_max=1.0, n_points=3)
        parsed = json.loads(format_json(run_sweep(cfg)))
        assert set(parsed[0]) == set(CSV_COLUMNS)


def test_quantities_cover_spec_set():
    assert set(ALL_QUANTITIES) == {"concurrence", "discord", "eub", "berta", "lhs", "absG", "Gamma"}


def test_presets_regenerate_golden_fixtures(preset_rows):
    # fixtures were produced by this implementation after oracle validation,
    # then frozen; regeneration must be byte-exact on the build host
    fixture_dir = os.path.join(os.path.dirname(__file__), "fixtures")
    for name, rows in preset_rows.items():
        with open(os.path.join(fixture_dir, f"{name}.csv"), "r", newline="") as fh:
            assert format_csv(rows) == fh.read(), f"{name} drifted from its golden fixture"
