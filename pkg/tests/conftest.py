from __future__ import annotations

import pytest

from capmix.scenario import bundled_scenario_path, load_scenario


def _bundled_act(name: str, act: str):
    scenario = load_scenario(bundled_scenario_path(name))
    return scenario.act(act), scenario.probabilities


@pytest.fixture(scope="session")
def example2():
    """Two states, two members each, even odds."""
    return _bundled_act("example2.json", "f1")


@pytest.fixture(scope="session")
def example3():
    """Two states, four members against three, odds 0.8/0.2."""
    return _bundled_act("example3.json", "f1")


@pytest.fixture(scope="session")
def counterexample_prob():
    return _bundled_act("counterexample_prob.json", "f1")


@pytest.fixture(scope="session")
def land_grants():
    return _bundled_act("land_grants_finite.json", "farmer")


@pytest.fixture(scope="session")
def farmers_market():
    return _bundled_act("farmers_market.json", "shopper")


@pytest.fixture(scope="session")
def figure2_sets():
    scenario = load_scenario(bundled_scenario_path("figure2_sets.json"))
    return {name: act.per_state[0] for name, act in scenario.acts}
