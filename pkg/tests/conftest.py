import pytest

from heatplate import run_simulation, scenario_preset


@pytest.fixture(scope="session")
def preset1():
    return scenario_preset(1)


@pytest.fixture(scope="session")
def preset2():
    return scenario_preset(2)


@pytest.fixture
def material(preset1):
    return preset1.material


@pytest.fixture
def exchange(preset1):
    return preset1.exchange


@pytest.fixture
def grid(preset1):
    return preset1.grid


# The two reference runs take a couple of seconds each; share them across
# every test that inspects their results.
@pytest.fixture(scope="session")
def scenario1_result(preset1):
    return run_simulation(preset1)


@pytest.fixture(scope="session")
def scenario2_result(preset2):
    return run_simulation(preset2)
