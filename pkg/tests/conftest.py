import pytest

from mechpay import build_graph, gen_example


@pytest.fixture(scope="session")
def fig1():
    return gen_example("fig1-single-item")


@pytest.fixture(scope="session")
def claim1():
    return gen_example("claim1-dictator")


@pytest.fixture(scope="session")
def claim2():
    return gen_example("claim2-proportional")


@pytest.fixture(scope="session")
def claim3():
    return gen_example("claim3-8cycle")


@pytest.fixture(scope="session")
def claim3_graph(claim3):
    return build_graph(claim3)
