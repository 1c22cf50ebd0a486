import math

import numpy as np
import pytest

from uavcovert import (
    ConfigError, GridSpec, SweepSpec, mc_zeta_tolerance, monotone_by_overlay,
    render_csv, run_covertness_sweep, run_detection_sweep, run_rate_sweep,
    run_validation,
)
from uavcovert.experiments import (
    COVERTNESS_COLUMNS, DETECTION_COLUMNS, RATE_COLUMNS,
)


def detection_sweep_spec(steps=8, overlays=(2.0, 3.0, 4.0)):
    return SweepSpec(parameter="gamma", start=0.0, stop=1.0, steps=steps,
                     overlay_parameter="p_u", overlay_values=overlays)


# -- sweep spec --------------------------------------------------------------

def test_sweepspec_validation():
    good = detection_sweep_spec()
    assert len(good.points()) == 8
    with pytest.raises(ConfigError):
        SweepSpec("gamma", 1.0, 0.0, 5, "p_u", (2.0,))
    with pytest.raises(ConfigError):
        SweepSpec("gamma", 0.0, 1.0, 0, "p_u", (2.0,))
    with pytest.raises(ConfigError):
        SweepSpec("gamma", 0.0, 1.0, 5, "p_u", (2.0, 2.0))
    with pytest.raises(ConfigError):
        SweepSpec("gamma", 0.0, 1.0, 5, "gamma", (2.0,))
    with pytest.raises(ConfigError):
        SweepSpec("voltage", 0.0, 1.0, 5, "p_u", (2.0,))
    with pytest.raises(ConfigError):
        SweepSpec("gamma", 0.0, 1.0, 1, "p_u", (2.0,))


def test_sweepspec_degenerate_single_point():
    spec = SweepSpec("h", 50.0, 50.0, 1, "p_u", (7.0,))
    assert list(spec.points()) == [50.0]


# -- detection sweep ---------------------------------------------------------

def test_detection_sweep_records(fig2):
    records = run_detection_sweep(fig2, detection_sweep_spec(), n_trials=4000,
                                  seed=3)
    assert len(records) == 24
    keys = [(r["p_u"], r["gamma"]) for r in records]
    assert keys == sorted(keys)
    for r in records:
        assert r["zeta"] == r["p_fa"] + r["p_md"]
        assert r["zeta_mc"] == r["p_fa_mc"] + r["p_md_mc"]
        assert abs(r["zeta_mc"] - r["zeta"]) <= mc_zeta_tolerance(
            r["zeta"], r["n_trials"], floor=0.05)
        assert r["n_trials"] == 4000 and r["seed"] == 3
        assert len(r["scenario_hash"]) == 16


def test_detection_sweep_requires_gamma(fig2):
    bad = SweepSpec("h", 0.0, 1.0, 4, "p_u", (2.0,))
    with pytest.raises(ConfigError):
        run_detection_sweep(fig2, bad, n_trials=10, seed=0)


def test_detection_sweep_single_trial_degenerate(fig2):
    records = run_detection_sweep(fig2, detection_sweep_spec(steps=6),
                                  n_trials=1, seed=5)
    assert all(r["zeta_mc"] in (0.0, 0.5, 1.0) for r in records)


def test_detection_sweep_deterministic_across_workers(fig2):
    spec = detection_sweep_spec(steps=5)
    serial = run_detection_sweep(fig2, spec, n_trials=2000, seed=11, workers=1)
    threaded = run_detection_sweep(fig2, spec, n_trials=2000, seed=11, workers=4)
    assert render_csv(serial, DETECTION_COLUMNS) == render_csv(
        threaded, DETECTION_COLUMNS)
    again = run_detection_sweep(fig2, spec, n_trials=2000, seed=11, workers=1)
    assert render_csv(serial, DETECTION_COLUMNS) == render_csv(
        again, DETECTION_COLUMNS)


# -- rate sweep --------------------------------------------------------------

def rate_sweep_spec(overlays=(7.0, 8.0, 9.0), stop=100.0, steps=21):
    return SweepSpec(parameter="h", start=0.0, stop=stop, steps=steps,
                     overlay_parameter="p_u", overlay_values=overlays)


def test_rate_sweep_records(fig3):
    records = run_rate_sweep(fig3, rate_sweep_spec())
    assert len(records) == 63
    flags = monotone_by_overlay(records, y="c_s", group="p_u", x="h")
    assert all(flags.values())
    flags = monotone_by_overlay(records, y="r_b", group="p_u", x="h")
    assert all(flags.values())
    for r in records:
        assert r["c_s"] == r["c_b"] - r["c_u"]
        assert r["r_b"] == r["c_b"]


def test_rate_sweep_single_point(fig3):
    spec = SweepSpec("h", 40.0, 40.0, 1, "p_u", (7.0,))
    records = run_rate_sweep(fig3, spec)
    assert len(records) == 1
    assert records[0]["h"] == 40.0


def test_rate_sweep_requires_h_overlay_pu(fig3):
    bad = SweepSpec("epsilon", 0.01, 0.2, 4, "p_u", (7.0,))
    with pytest.raises(ConfigError):
        run_rate_sweep(fig3, bad)


# -- covertness sweep --------------------------------------------------------

def covertness_sweep_spec(steps=4, overlays=(5.0, 10.0, 15.0)):
    return SweepSpec(parameter="epsilon", start=0.01, stop=0.02, steps=steps,
                     overlay_parameter="p_j", overlay_values=overlays)


def test_covertness_sweep_records(fig5):
    grid = GridSpec.linear(fig5.p_max, fig5.p_max, p_u_steps=15, p_j_steps=1)
    records = run_covertness_sweep(fig5, covertness_sweep_spec(), grid=grid,
                                   seed=2)
    assert len(records) == 12
    assert all(r["feasible"] for r in records)
    for r in records:
        assert r["h_star"] == r["h_min"]
        assert r["p_j_star"] == r["p_j"]
        assert r["r_b_star"] > 0.0
    flags = monotone_by_overlay(records, y="r_b_star", group="p_j",
                                x="epsilon", decreasing=False)
    # nondecreasing is guaranteed; strict increase holds at this preset
    assert all(flags.values())


def test_covertness_sweep_records_infeasible_rows(fig4):
    # pinned to the infeasible base forward power: every point reports
    # feasible=false instead of being dropped
    grid = GridSpec(p_u_values=(fig4.p_u,), p_j_values=(fig4.p_j,))
    spec = SweepSpec("epsilon", 0.01, 0.02, 3, "p_j", (fig4.p_j,))
    records = run_covertness_sweep(fig4, spec, grid=grid, seed=2)
    assert len(records) == 3
    assert all(not r["feasible"] for r in records)
    assert all(math.isnan(r["r_b_star"]) for r in records)


def test_covertness_sweep_tight_epsilon_infeasible(fig5):
    # covertness so tight that the required altitude overshoots the
    # security ceiling even at the power cap
    grid = GridSpec(p_u_values=(fig5.p_max,), p_j_values=(5.0,))
    spec = SweepSpec("epsilon", 0.0005, 0.0006, 2, "p_j", (5.0,))
    records = run_covertness_sweep(fig5, spec, grid=grid)
    assert len(records) == 2
    assert not any(r["feasible"] for r in records)


def test_covertness_sweep_single_epsilon(fig5):
    spec = SweepSpec("epsilon", 0.015, 0.015, 1, "p_j", (5.0, 10.0))
    grid = GridSpec.linear(fig5.p_max, fig5.p_max, p_u_steps=8, p_j_steps=1)
    records = run_covertness_sweep(fig5, spec, grid=grid)
    assert [(r["p_j"], r["epsilon"]) for r in records] == [
        (5.0, 0.015), (10.0, 0.015)]


def test_covertness_sweep_requires_epsilon_overlay_pj(fig5):
    bad = SweepSpec("epsilon", 0.01, 0.02, 3, "p_u", (5.0,))
    with pytest.raises(ConfigError):
        run_covertness_sweep(fig5, bad)


# -- CSV rendering -----------------------------------------------------------

def test_render_csv_round_trips_floats(fig2):
    records = run_detection_sweep(fig2, detection_sweep_spec(steps=4),
                                  n_trials=50, seed=1)
    text = render_csv(records, DETECTION_COLUMNS)
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(DETECTION_COLUMNS)
    cells = lines[1].split(",")
    parsed = dict(zip(DETECTION_COLUMNS, cells))
    for column in ("gamma", "p_fa", "zeta_mc", "beta", "sigma_w2"):
        assert float(parsed[column]) == records[0][column]
    assert parsed["scenario_hash"] == records[0]["scenario_hash"]


def test_csv_columns_prefixed_by_scenario():
    for columns in (DETECTION_COLUMNS, RATE_COLUMNS, COVERTNESS_COLUMNS):
        assert columns[:14] == ("d_a2", "d_b2", "d_w2", "h", "beta", "p_a",
                                "p_u", "p_j", "p_max", "sigma_u2", "sigma_b2",
                                "sigma_w2", "epsilon", "r_s")


def test_records_recomputable_from_scenario_columns(fig2, fig3):
    # closed-form outputs must follow from the row's own scenario columns
    from uavcovert import Scenario, optimal_detection, rate_report, total_error

    det = run_detection_sweep(fig2, detection_sweep_spec(steps=5),
                              n_trials=100, seed=6)
    for row in det:
        text = render_csv([row], DETECTION_COLUMNS).strip().split("\n")[1]
        parsed = dict(zip(DETECTION_COLUMNS, text.split(",")))
        rebuilt = Scenario(**{k: float(parsed[k]) for k in DETECTION_COLUMNS[:14]})
        assert total_error(float(parsed["gamma"]), rebuilt).zeta == row["zeta"]
        assert optimal_detection(rebuilt).gamma_star == row["gamma_star"]

    rates = run_rate_sweep(fig3, rate_sweep_spec(steps=5))
    for row in rates:
        text = render_csv([row], RATE_COLUMNS).strip().split("\n")[1]
        parsed = dict(zip(RATE_COLUMNS, text.split(",")))
        rebuilt = Scenario(**{k: float(parsed[k]) for k in RATE_COLUMNS[:14]})
        assert rate_report(rebuilt).c_s == row["c_s"]


# -- validation suite --------------------------------------------------------

def test_run_validation_passes(fig2):
    checks = run_validation(fig2, n_trials=30_000, n_symbols=60_000, seed=4,
                            gamma_points=8)
    assert [c.name for c in checks] == [
        "detection_error_mc_vs_closed",
        "relay_forwarded_power_unit",
        "destination_snr_mc_vs_closed",
    ]
    assert all(c.passed for c in checks)


def test_run_validation_deterministic(fig2):
    a = run_validation(fig2, n_trials=5_000, n_symbols=10_000, seed=4,
                       gamma_points=4)
    b = run_validation(fig2, n_trials=5_000, n_symbols=10_000, seed=4,
                       gamma_points=4)
    assert a == b
