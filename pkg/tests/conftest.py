import pathlib
import sys

import numpy as np
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from uavcovert import Scenario  # noqa: E402

SCENARIOS = ROOT / "scenarios"


@pytest.fixture(scope="session")
def fig2():
    return Scenario.from_file(SCENARIOS / "fig2.json")


@pytest.fixture(scope="session")
def fig3():
    return Scenario.from_file(SCENARIOS / "fig3.json")


@pytest.fixture(scope="session")
def fig4():
    return Scenario.from_file(SCENARIOS / "fig4.json")


@pytest.fixture(scope="session")
def fig5():
    return Scenario.from_file(SCENARIOS / "fig5.json")


def draw_scenario(rng: np.random.Generator, **overrides) -> Scenario:
    """Random but physically sane scenario for randomized oracles."""
    fields = dict(
        d_a2=rng.uniform(100.0, 1e4),
        d_b2=rng.uniform(100.0, 1e4),
        d_w2=rng.uniform(10.0, 2e3),
        h=rng.uniform(0.0, 200.0),
        beta=rng.uniform(1.0, 30.0),
        p_a=rng.uniform(0.5, 5.0),
        p_u=rng.uniform(1.0, 20.0),
        p_j=rng.uniform(1.0, 20.0),
        p_max=30.0,
        sigma_u2=rng.uniform(1e-3, 0.1),
        sigma_b2=rng.uniform(1e-3, 0.1),
        sigma_w2=rng.uniform(1e-3, 0.1),
        epsilon=rng.uniform(0.005, 0.3),
        r_s=rng.uniform(0.0, 0.2),
    )
    fields.update(overrides)
    return Scenario(**fields)
