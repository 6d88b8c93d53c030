import pytest

from src.models.function_model import Carrier, FiniteFunction
from src.models.poset_model import bowtie, chain
from tests.factories import BOOL, boolean, majority, median, on_chain, parity


@pytest.fixture
def and2():
    return boolean(2, lambda a, b: a and b)


@pytest.fixture
def or2():
    return boolean(2, lambda a, b: a or b)


@pytest.fixture
def xor2():
    return boolean(2, parity)


@pytest.fixture
def parity3():
    return boolean(3, parity)


@pytest.fixture
def majority3():
    return boolean(3, majority)


@pytest.fixture
def and3():
    return boolean(3, lambda a, b, c: a and b and c)


@pytest.fixture
def or3():
    return boolean(3, lambda a, b, c: a or b or c)


@pytest.fixture
def median_chain3():
    return on_chain(3, 3, median)


@pytest.fixture
def chain2():
    return chain(2)


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def bowtie_poset():
    return bowtie()


@pytest.fixture
def distinct3():
    """1 exactly when the three arguments are pairwise distinct, on a 3-element set."""
    return FiniteFunction.from_callable(Carrier.of_size(3), 3, BOOL, lambda a, b, c: int(len({a, b, c}) == 3))
