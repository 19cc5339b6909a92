import pytest

from btuples import parse_field, validate_family


@pytest.fixture(scope="session")
def gaussian():
    return parse_field("quadratic:-1")


@pytest.fixture(scope="session")
def twins():
    return validate_family([(1, 0), (1, 1)])


@pytest.fixture(scope="session")
def triples():
    return validate_family([(1, 0), (1, 1), (1, 2)])
