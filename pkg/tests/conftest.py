import random

import pytest

from regsys.io import load_example
from regsys.ring import RingContext


@pytest.fixture(scope="session")
def z210_doc():
    return load_example("z210")


@pytest.fixture(scope="session")
def z210(z210_doc):
    return z210_doc.system()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def Z6():
    return RingContext(6)


@pytest.fixture(scope="session")
def Z30():
    return RingContext(30)


@pytest.fixture(scope="session")
def Z210():
    return RingContext(210)
