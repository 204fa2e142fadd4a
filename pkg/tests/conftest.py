import hypothesis
import numpy as np
import pytest

from hubbardq.model import FIXTURES, assemble_hamiltonian, load_fixture

np.seterr(all="warn", under="ignore")

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)



def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run long VQD and sampling acceptance checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance check")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in FIXTURES}


@pytest.fixture(scope="session")
def ethylene(fixtures):
    return fixtures["ethylene"]


@pytest.fixture(scope="session")
def butadiene(fixtures):
    return fixtures["butadiene"]


@pytest.fixture(scope="session")
def ethylene_ham(ethylene):
    return assemble_hamiltonian(ethylene)


@pytest.fixture
def random_orthogonal():
    def make(K, seed=0):
        rng = np.random.default_rng(seed)
        q, r = np.linalg.qr(rng.normal(size=(K, K)))
        return q * np.sign(np.diag(r))
    return make
