"""Hover-height constraints.

Covertness requires the warden's minimum error zeta_star(h) to stay at or
above 1 - epsilon, which translates into a minimum altitude.  Security
requires the secrecy rate C_s(h) to stay at or above the threshold r_s;
since C_s falls with altitude over the operating range, that yields a
maximum altitude found by bisection.  Their intersection is the feasible
hover interval, possibly empty.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, NumericalError
from .model import Scenario
from .detection import optimal_detection
from .rates import rate_report

SEARCH_CEILING_M = 1e6     # far beyond any physical hover height
BISECT_MAX_ITER = 200
BISECT_RESIDUAL = 1e-9     # absolute residual on C_s at the returned height


@dataclass(frozen=True)
class FeasibleHeightInterval:
    """[h_min, h_max] altitude window; h_max may be +inf, NaN when empty."""

    h_min: float
    h_max: float
    empty: bool


def covert_height_bound(p_u: float, p_j: float, beta: float, epsilon: float,
                        d_w2: float) -> float:
    """Minimum altitude for zeta_star(h) >= 1 - epsilon.

    h_min = sqrt(-P_u beta / (P_J ln(1 - epsilon)) - d_w^2), folded to 0
    when the radicand is non-positive (covert at any height).  When
    positive, zeta_star(h_min) = 1 - epsilon exactly.
    """
    if not (0.0 < epsilon < 1.0):
        raise ConfigError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if min(p_u, p_j, beta) <= 0.0:
        raise ConfigError("p_u, p_j, beta must be > 0")
    radicand = -p_u * beta / (p_j * math.log1p(-epsilon)) - d_w2
    return math.sqrt(radicand) if radicand > 0.0 else 0.0


def min_error_at_height(scenario: Scenario, h: float) -> float:
    """zeta_star as a function of altitude, other fields fixed."""
    return optimal_detection(scenario.replace(h=h)).zeta_star


def secrecy_rate_at_height(scenario: Scenario, h: float) -> float:
    """C_s as a function of altitude, other fields fixed."""
    return rate_report(scenario.replace(h=h)).c_s


def security_height_bound(scenario: Scenario, r_s: float | None = None,
                          ceiling: float = SEARCH_CEILING_M):
    """Altitude h_max where C_s(h_max) == r_s, by bisection.

    Returns None when C_s(0) < r_s (infeasible even on the ground) and
    math.inf when C_s stays above r_s all the way to the search ceiling.
    Bracketing scans doubling altitudes; a second sign change there means
    the feasible set is not an interval and raises NumericalError.
    """
    if r_s is None:
        r_s = scenario.r_s
    if not (math.isfinite(r_s) and r_s >= 0.0):
        raise ConfigError(f"r_s must be finite and >= 0, got {r_s!r}")

    def f(h: float) -> float:
        return secrecy_rate_at_height(scenario, h) - r_s

    if f(0.0) < 0.0:
        return None

    # Doubling scan to bracket the first crossing.
    scan = [0.0]
    h = 1.0
    while h < ceiling:
        scan.append(h)
        h *= 2.0
    scan.append(ceiling)

    values = [f(x) for x in scan]
    crossings = [i for i in range(len(scan) - 1)
                 if values[i] >= 0.0 > values[i + 1]]
    if not crossings:
        if any(v < 0.0 for v in values):
            raise NumericalError(
                "secrecy rate is not monotone across the bracketing scan; "
                "the feasible height set is not an interval")
        return math.inf
    if any(v >= 0.0 for v in values[crossings[0] + 1:]):
        raise NumericalError(
            "secrecy rate re-crosses the threshold above the first "
            "crossing; the feasible height set is not an interval")

    lo, hi = scan[crossings[0]], scan[crossings[0] + 1]
    mid = 0.5 * (lo + hi)
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= BISECT_RESIDUAL:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def feasible_interval(scenario: Scenario) -> FeasibleHeightInterval:
    """Intersect the covert lower bound with the security upper bound.

    The interval is closed at h_max: C_s(h_max) = r_s satisfies the
    security requirement with equality.
    """
    h_min = covert_height_bound(scenario.p_u, scenario.p_j, scenario.beta,
                                scenario.epsilon, scenario.d_w2)
    h_max = security_height_bound(scenario)
    if h_max is None:
        return FeasibleHeightInterval(h_min=h_min, h_max=math.nan, empty=True)
    return FeasibleHeightInterval(h_min=h_min, h_max=h_max, empty=h_min > h_max)
