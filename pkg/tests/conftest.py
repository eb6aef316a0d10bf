import os

import pytest

from qprlab.frames import sic_frame, wootters_frame
from qprlab.sic import d2_fiducial, d3_family, sic_from_fiducial

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def hesse():
    return sic_from_fiducial(d3_family(0.0))


@pytest.fixture(scope="session")
def qubit_sic():
    return sic_from_fiducial(d2_fiducial())


@pytest.fixture(scope="session")
def hesse_minus(hesse):
    return sic_frame(hesse, "minus")


@pytest.fixture(scope="session")
def hesse_plus(hesse):
    return sic_frame(hesse, "plus")


@pytest.fixture(scope="session")
def wootters():
    cache = {}

    def get(d):
        if d not in cache:
            cache[d] = wootters_frame(d)
        return cache[d]

    return get


@pytest.fixture
def data_dir():
    return DATA_DIR


def random_hermitian(d, gen):
    A = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    return (A + A.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
