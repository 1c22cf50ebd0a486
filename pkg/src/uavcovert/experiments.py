"""Sweep runners and CSV emission.

Each runner covers one experiment protocol: a detection-threshold sweep
with closed-form and Monte Carlo error curves, an altitude sweep of the
rate chain, and a covertness sweep that re-optimizes the covert rate per
point.  Records are plain dicts in a fixed column order; floats render
with repr so the CSV round-trips exactly and is byte-deterministic for a
fixed (scenario, seed, trials), independent of worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields as dataclass_fields

import numpy as np

from .errors import ConfigError, NumericalError
from .model import Scenario
from .detection import optimal_detection, simulate_detection, total_error
from .rates import rate_report, simulate_destination_snr
from .constraints import feasible_interval
from .optimizer import GridSpec, maximize_covert_rate

SWEEPABLE = ("gamma", "h", "epsilon", "p_u", "p_j")

_MONOTONE_SLACK = 1e-12  # float guard on provably monotone sequences


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter over [start, stop] plus an overlay family."""

    parameter: str
    start: float
    stop: float
    steps: int
    overlay_parameter: str
    overlay_values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.parameter not in SWEEPABLE:
            raise ConfigError(f"unknown sweep parameter {self.parameter!r}")
        if self.overlay_parameter not in SWEEPABLE:
            raise ConfigError(f"unknown overlay parameter {self.overlay_parameter!r}")
        if self.overlay_parameter == self.parameter:
            raise ConfigError("overlay parameter must differ from the swept one")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if self.steps == 1:
            if self.start != self.stop:
                raise ConfigError("a 1-step sweep needs start == stop")
        elif not self.start < self.stop:
            raise ConfigError(f"need start < stop, got [{self.start}, {self.stop}]")
        if len(self.overlay_values) < 1:
            raise ConfigError("overlay_values must be nonempty")
        if len(set(self.overlay_values)) != len(self.overlay_values):
            raise ConfigError("overlay_values must be distinct")

    def points(self) -> np.ndarray:
        if self.steps == 1:
            return np.asarray([self.start], dtype=float)
        return np.linspace(self.start, self.stop, self.steps)


_SCENARIO_COLUMNS = tuple(f.name for f in dataclass_fields(Scenario))

DETECTION_COLUMNS = _SCENARIO_COLUMNS + (
    "gamma", "p_fa", "p_md", "zeta", "p_fa_mc", "p_md_mc", "zeta_mc",
    "gamma_star", "zeta_star", "n_trials", "seed", "scenario_hash",
)
RATE_COLUMNS = _SCENARIO_COLUMNS + (
    "gamma_u", "gamma_b", "c_u", "c_b", "c_s", "r_b", "seed", "scenario_hash",
)
COVERTNESS_COLUMNS = _SCENARIO_COLUMNS + (
    "feasible", "h_min", "h_max", "p_u_star", "p_j_star", "h_star",
    "r_b_star", "c_s_star", "seed", "scenario_hash",
)
OPTIMIZE_COLUMNS = _SCENARIO_COLUMNS + (
    "feasible", "p_u_star", "p_j_star", "h_star", "r_b_star", "c_s_star",
    "active_constraints", "seed", "scenario_hash",
)


def scenario_columns(scenario: Scenario) -> dict:
    """The shared leading CSV columns: the full scenario in linear units."""
    return {name: getattr(scenario, name) for name in _SCENARIO_COLUMNS}


def _render_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(records: list[dict], columns: tuple[str, ...]) -> str:
    """Header plus one comma-joined line per record, LF newlines."""
    lines = [",".join(columns)]
    for record in records:
        lines.append(",".join(_render_cell(record[c]) for c in columns))
    return "\n".join(lines) + "\n"


def write_csv(path, records: list[dict], columns: tuple[str, ...]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(render_csv(records, columns))


def _run_jobs(jobs, worker, workers: int):
    if workers <= 1:
        return [worker(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, jobs))


def run_detection_sweep(scenario: Scenario, sweep: SweepSpec, n_trials: int,
                        seed: int, workers: int = 1) -> list[dict]:
    """Closed-form and Monte Carlo error curves over a threshold grid.

    One record per (overlay p_u, gamma), sorted by (overlay, gamma).  The
    Monte Carlo stream of each point derives from (seed, overlay index,
    point index), so output is identical for any worker count.
    """
    if sweep.parameter != "gamma" or sweep.overlay_parameter != "p_u":
        raise ConfigError("detection sweep expects parameter=gamma, overlay=p_u")
    overlays = sorted(sweep.overlay_values)
    gammas = sweep.points()
    jobs = [(oi, p_u, gi, float(g))
            for oi, p_u in enumerate(overlays)
            for gi, g in enumerate(gammas)]
    variants = {p_u: scenario.replace(p_u=p_u) for p_u in overlays}
    optima = {p_u: optimal_detection(variants[p_u]) for p_u in overlays}
    hashes = {p_u: variants[p_u].canonical_hash() for p_u in overlays}

    def worker(job):
        oi, p_u, gi, gamma = job
        sc = variants[p_u]
        closed = total_error(gamma, sc)
        point_seed = np.random.SeedSequence(entropy=[int(seed), oi, gi])
        mc = simulate_detection(sc, gamma, n_trials, seed=point_seed)
        record = scenario_columns(sc)
        record.update(
            gamma=gamma, p_fa=closed.p_fa, p_md=closed.p_md, zeta=closed.zeta,
            p_fa_mc=mc.p_fa, p_md_mc=mc.p_md, zeta_mc=mc.zeta,
            gamma_star=optima[p_u].gamma_star, zeta_star=optima[p_u].zeta_star,
            n_trials=int(n_trials), seed=int(seed), scenario_hash=hashes[p_u],
        )
        return record

    return _run_jobs(jobs, worker, workers)


def run_rate_sweep(scenario: Scenario, sweep: SweepSpec, seed: int = 0,
                   workers: int = 1) -> list[dict]:
    """Rate chain over an altitude grid with forward-power overlays.

    The destination capacity is provably decreasing in altitude; the runner
    asserts that on each overlay as a numerical self-check.
    """
    if sweep.parameter != "h" or sweep.overlay_parameter != "p_u":
        raise ConfigError("rate sweep expects parameter=h, overlay=p_u")
    if sweep.start < 0.0:
        raise ConfigError("altitude sweep must start at h >= 0")
    overlays = sorted(sweep.overlay_values)
    heights = sweep.points()

    def worker(job):
        p_u, h = job
        sc = scenario.replace(p_u=p_u, h=float(h))
        report = rate_report(sc)
        record = scenario_columns(sc)
        record.update(
            gamma_u=report.gamma_u, gamma_b=report.gamma_b,
            c_u=report.c_u, c_b=report.c_b, c_s=report.c_s, r_b=report.r_b,
            seed=int(seed), scenario_hash=sc.canonical_hash(),
        )
        return record

    jobs = [(p_u, h) for p_u in overlays for h in heights]
    records = _run_jobs(jobs, worker, workers)

    per_overlay = len(heights)
    for oi, p_u in enumerate(overlays):
        chunk = records[oi * per_overlay:(oi + 1) * per_overlay]
        c_b = [r["c_b"] for r in chunk]
        if any(b > a + _MONOTONE_SLACK for a, b in zip(c_b, c_b[1:])):
            raise NumericalError(
                f"destination capacity not decreasing in h at p_u={p_u}")
    return records


def monotone_by_overlay(records: list[dict], y: str, group: str = "p_u",
                        x: str = "h", decreasing: bool = True) -> dict:
    """Per-overlay strict monotonicity flags of column y along column x."""
    flags = {}
    for key in sorted({r[group] for r in records}):
        series = sorted((r[x], r[y]) for r in records if r[group] == key)
        values = [v for _, v in series]
        if decreasing:
            flags[key] = all(b < a for a, b in zip(values, values[1:]))
        else:
            flags[key] = all(b > a for a, b in zip(values, values[1:]))
    return flags


def default_power_grid(scenario: Scenario, steps: int = 60) -> GridSpec:
    """Forward-power grid up to the cap; jamming axis is a placeholder
    (covertness sweeps substitute the overlay value)."""
    return GridSpec.linear(p_u_stop=scenario.p_max, p_j_stop=scenario.p_max,
                           p_u_steps=steps, p_j_steps=1)


def run_covertness_sweep(scenario: Scenario, sweep: SweepSpec,
                         grid: GridSpec | None = None, seed: int = 0,
                         workers: int = 1) -> list[dict]:
    """Optimized covert rate over a covertness-slack grid.

    For each (overlay p_j, epsilon) the forward power is re-optimized on
    the grid's p_u axis with the altitude closed out analytically.
    Infeasible points are recorded with feasible=false, never dropped.
    Relaxing epsilon only enlarges the feasible set, so the runner asserts
    the optimized rate is nondecreasing along each overlay.
    """
    if sweep.parameter != "epsilon" or sweep.overlay_parameter != "p_j":
        raise ConfigError("covertness sweep expects parameter=epsilon, overlay=p_j")
    if not (0.0 < sweep.start and sweep.stop < 1.0):
        raise ConfigError("epsilon sweep must stay inside (0, 1)")
    if grid is None:
        grid = default_power_grid(scenario)
    overlays = sorted(sweep.overlay_values)
    eps_values = sweep.points()

    def worker(job):
        p_j, eps = job
        sc = scenario.replace(p_j=p_j, epsilon=float(eps))
        point_grid = GridSpec(p_u_values=grid.p_u_values, p_j_values=(p_j,))
        result = maximize_covert_rate(sc, point_grid)
        record = scenario_columns(sc)
        if result.feasible:
            interval = feasible_interval(
                sc.replace(p_u=result.p_u_star, p_j=result.p_j_star))
            h_min, h_max = interval.h_min, interval.h_max
        else:
            h_min = h_max = math.nan
        record.update(
            feasible=result.feasible, h_min=h_min, h_max=h_max,
            p_u_star=result.p_u_star, p_j_star=result.p_j_star,
            h_star=result.h_star, r_b_star=result.r_b_star,
            c_s_star=result.c_s_star,
            seed=int(seed), scenario_hash=sc.canonical_hash(),
        )
        return record

    jobs = [(p_j, eps) for p_j in overlays for eps in eps_values]
    records = _run_jobs(jobs, worker, workers)

    per_overlay = len(eps_values)
    for oi, p_j in enumerate(overlays):
        chunk = records[oi * per_overlay:(oi + 1) * per_overlay]
        rates = [r["r_b_star"] for r in chunk if r["feasible"]]
        if any(b < a - _MONOTONE_SLACK for a, b in zip(rates, rates[1:])):
            raise NumericalError(
                f"optimized covert rate not nondecreasing in epsilon at p_j={p_j}")
    return records


# -- closed-form vs Monte Carlo validation ---------------------------------

@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str


def mc_zeta_tolerance(zeta: float, n_trials: int, floor: float = 0.005) -> float:
    """Binomial three-sigma band around the closed-form zeta, floored."""
    return max(floor, 3.0 * math.sqrt(max(zeta * (1.0 - zeta), 0.0) / n_trials))


def run_validation(scenario: Scenario, n_trials: int = 100_000,
                   n_symbols: int = 1_000_000, seed: int = 0,
                   gamma_points: int = 20) -> list[ValidationCheck]:
    """Compare every closed form against its Monte Carlo counterpart.

    Checks the detection error curve point by point on a threshold grid
    around gamma_star, the unit forwarded power of the relay scaling, and
    the end-to-end destination SNR.
    """
    checks = []

    opt = optimal_detection(scenario)
    gammas = np.linspace(0.0, 10.0 * opt.gamma_star, gamma_points)
    worst = 0.0
    ok = True
    for gi, gamma in enumerate(gammas):
        closed = total_error(float(gamma), scenario)
        mc = simulate_detection(scenario, float(gamma), n_trials,
                                seed=np.random.SeedSequence(entropy=[int(seed), 0, gi]))
        gap = abs(mc.zeta - closed.zeta)
        tol = mc_zeta_tolerance(closed.zeta, n_trials)
        worst = max(worst, gap / tol)
        ok = ok and gap <= tol
    checks.append(ValidationCheck(
        name="detection_error_mc_vs_closed", passed=ok,
        detail=f"{gamma_points} thresholds, worst gap {worst:.3f}x tolerance"))

    est = simulate_destination_snr(scenario, n_symbols,
                                   seed=np.random.SeedSequence(entropy=[int(seed), 1]))
    power_gap = abs(est.forwarded_power - 1.0)
    checks.append(ValidationCheck(
        name="relay_forwarded_power_unit", passed=power_gap <= 0.01,
        detail=f"mean |x_u|^2 = {est.forwarded_power:.6f}"))

    closed_snr = rate_report(scenario).gamma_b
    rel_gap = abs(est.snr - closed_snr) / closed_snr
    checks.append(ValidationCheck(
        name="destination_snr_mc_vs_closed", passed=rel_gap <= 0.01,
        detail=f"mc {est.snr:.6g} vs closed {closed_snr:.6g} ({rel_gap:.2%})"))

    return checks
