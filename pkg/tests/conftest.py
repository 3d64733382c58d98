import random

import pytest

from hbgsearch import validate_pattern


@pytest.fixture
def k33():
    return validate_pattern(3, 1, [3, 3])


@pytest.fixture
def heawood():
    return validate_pattern(7, 1, [5, 9])


@pytest.fixture
def tutte_coxeter():
    return validate_pattern(15, 3, [-13, -9, 7, -7, 9, 13])


@pytest.fixture
def rng():
    return random.Random(0xC3B5)
