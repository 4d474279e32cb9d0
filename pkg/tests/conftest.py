import numpy as np
import pytest

import difflat as dl

HEX_BASIS = [[1.0, 0.5], [0.0, np.sqrt(3.0) / 2.0]]


@pytest.fixture(scope="session")
def z1():
    return dl.make_lattice([[1.0]])


@pytest.fixture(scope="session")
def z2():
    return dl.make_lattice(np.eye(2))


@pytest.fixture(scope="session")
def z3():
    return dl.make_lattice(np.eye(3))


@pytest.fixture(scope="session")
def hexagonal():
    return dl.make_lattice(HEX_BASIS)


@pytest.fixture(scope="session")
def rect21():
    return dl.make_lattice([[2.0, 0.0], [0.0, 1.0]])
