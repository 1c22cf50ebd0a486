"""Covert-rate maximization over forward power, jamming power, and altitude.

The destination capacity is strictly decreasing in altitude, so for fixed
powers the best feasible altitude is the left end of the feasible interval;
the powers themselves are searched exhaustively on a grid.  Ties break
toward the smallest forward power, then smallest jamming power, then lowest
altitude, which the ascending scan order yields for free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InfeasibleError
from .model import Scenario
from .constraints import feasible_interval
from .rates import rate_report

_ACTIVE_TOL = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Candidate forward / jamming power values, ascending and distinct."""

    p_u_values: tuple[float, ...]
    p_j_values: tuple[float, ...]

    def __post_init__(self) -> None:
        for name, values in (("p_u_values", self.p_u_values),
                             ("p_j_values", self.p_j_values)):
            if len(values) < 1:
                raise ConfigError(f"{name} must be nonempty")
            if any(not (math.isfinite(v) and v > 0.0) for v in values):
                raise ConfigError(f"{name} must be finite and > 0")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ConfigError(f"{name} must be strictly increasing")

    @classmethod
    def linear(cls, p_u_stop: float, p_j_stop: float, p_u_steps: int = 50,
               p_j_steps: int = 50, p_u_start: float | None = None,
               p_j_start: float | None = None) -> "GridSpec":
        """Evenly spaced grids ending at the given stops.

        Starts default to stop/steps so the grid stays strictly positive.
        """
        if p_u_steps < 1 or p_j_steps < 1:
            raise ConfigError("step counts must be positive")
        if p_u_start is None:
            p_u_start = p_u_stop / p_u_steps
        if p_j_start is None:
            p_j_start = p_j_stop / p_j_steps
        p_u = (p_u_stop,) if p_u_steps == 1 else tuple(
            float(v) for v in np.linspace(p_u_start, p_u_stop, p_u_steps))
        p_j = (p_j_stop,) if p_j_steps == 1 else tuple(
            float(v) for v in np.linspace(p_j_start, p_j_stop, p_j_steps))
        return cls(p_u_values=p_u, p_j_values=p_j)


@dataclass(frozen=True)
class OptimizationResult:
    """Grid argmax of the covert rate, with the constraint state at it."""

    p_u_star: float
    p_j_star: float
    h_star: float
    r_b_star: float
    c_s_star: float
    feasible: bool
    active_constraints: tuple[str, ...]


def optimal_height_given_powers(scenario: Scenario) -> tuple[float, float]:
    """Best altitude and covert rate for the scenario's own powers.

    The rate falls with altitude, so the maximizer is the interval's lower
    end.  Raises InfeasibleError when the interval is empty.
    """
    interval = feasible_interval(scenario)
    if interval.empty:
        raise InfeasibleError(
            f"no feasible hover height for p_u={scenario.p_u}, p_j={scenario.p_j}")
    h = interval.h_min
    return h, rate_report(scenario.replace(h=h)).r_b


def maximize_covert_rate(scenario: Scenario, grid: GridSpec) -> OptimizationResult:
    """Exhaustive grid search over (p_u, p_j) with the altitude closed out.

    Grid points above the scenario power cap are skipped (they violate the
    cap constraint).  Deterministic: the ascending scan with strict
    improvement implements the tie-break order.
    """
    best = None  # (r_b, p_u, p_j, h, c_s, h_max)
    for p_u in grid.p_u_values:
        if p_u > scenario.p_max:
            continue
        for p_j in grid.p_j_values:
            if p_j > scenario.p_max:
                continue
            candidate = scenario.replace(p_u=p_u, p_j=p_j)
            interval = feasible_interval(candidate)
            if interval.empty:
                continue
            h = interval.h_min
            report = rate_report(candidate.replace(h=h))
            if best is None or report.r_b > best[0]:
                best = (report.r_b, p_u, p_j, h, report.c_s, interval.h_max)

    if best is None:
        return OptimizationResult(
            p_u_star=math.nan, p_j_star=math.nan, h_star=math.nan,
            r_b_star=math.nan, c_s_star=math.nan, feasible=False,
            active_constraints=())

    r_b, p_u, p_j, h, c_s, h_max = best
    active = []
    if h > 0.0:
        active.append("covert")  # altitude pinned by the covertness bound
    if math.isfinite(h_max) and h >= h_max - _ACTIVE_TOL * max(1.0, h_max):
        active.append("security")
    if p_u >= scenario.p_max - _ACTIVE_TOL * scenario.p_max:
        active.append("p_u_cap")
    if p_j >= scenario.p_max - _ACTIVE_TOL * scenario.p_max:
        active.append("p_j_cap")
    return OptimizationResult(
        p_u_star=p_u, p_j_star=p_j, h_star=h, r_b_star=r_b, c_s_star=c_s,
        feasible=True, active_constraints=tuple(active))
