import sys
import random

import pytest

from qcross import Algebra, Calculus, Hopf, Pairing, Params


@pytest.fixture(scope="session")
def alg():
    return Algebra()


@pytest.fixture(scope="session")
def hopf(alg):
    return Hopf(alg)


@pytest.fixture(scope="session")
def pairing(alg, hopf):
    return Pairing(alg, hopf=hopf)


@pytest.fixture(scope="session")
def calc(pairing):
    return Calculus(pairing)


@pytest.fixture
def rng():
    return random.Random(20241015)


@pytest.fixture(scope="session")
def numeric_alg():
    return Algebra(Params.specialized(2, 3))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
