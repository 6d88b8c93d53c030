import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from config.settings import settings
from src.core.exceptions import ArityGapUndefined, BudgetExceeded
from src.core.function_algebra import arity_gap, essential_arity, essl, quasi_arity, reduce_to_essential
from src.core.oracles import oracle_essl, oracle_gap, oracle_qa
from src.models.function_model import Carrier, FiniteFunction
from tests.factories import BOOL, boolean, pseudo


@st.composite
def small_functions(draw):
    k = draw(st.integers(2, 3))
    n = draw(st.integers(1, 3 if k == 2 else 2))
    values = draw(st.lists(st.integers(0, 2), min_size=k ** n, max_size=k ** n))
    return FiniteFunction(Carrier.of_size(k), n, Carrier.of_size(3, name="B"), tuple(values))


def test_oracle_gap_examples(majority3, or3, distinct3):
    assert oracle_gap(majority3) == 2
    assert oracle_gap(or3) == 1
    assert oracle_gap(distinct3) == 3


def test_oracle_gap_ignores_inessential_variables():
    assert oracle_gap(boolean(4, lambda a, b, c, d: a ^ d)) == 2


def test_oracle_gap_undefined():
    with pytest.raises(ArityGapUndefined):
        oracle_gap(FiniteFunction.projection(BOOL, 2, 2))


def test_oracle_essl(parity3, distinct3):
    assert oracle_essl(parity3) == 1
    assert oracle_essl(distinct3) == 0


def test_oracle_qa(parity3, xor2, distinct3):
    assert oracle_qa(parity3).value == 3
    assert oracle_qa(xor2).value == 0
    assert oracle_qa(distinct3).value == 0
    assert not oracle_qa(distinct3).fallback


def test_oracle_qa_on_rational_range():
    assert oracle_qa(pseudo(2, lambda a, b: a + b)).value == 1


def test_oracle_qa_falls_back_above_the_support_budget(monkeypatch):
    monkeypatch.setattr(settings, "SUPPORT_BUDGET", 4)
    f = FiniteFunction.from_callable(Carrier.of_size(3), 3, Carrier.of_size(3), lambda a, b, c: a)
    result = oracle_qa(f)
    assert result.fallback
    assert result.value == 1


def test_oracle_essl_respects_the_arity_limit(monkeypatch):
    monkeypatch.setattr(settings, "CLASSIFIER_MAX_ARITY", 2)
    with pytest.raises(BudgetExceeded):
        oracle_essl(boolean(3, lambda a, b, c: a ^ b ^ c))


@hypothesis_settings(max_examples=200, deadline=None)
@given(small_functions())
def test_fast_paths_agree_with_oracles(f):
    if essential_arity(f) < 2:
        with pytest.raises(ArityGapUndefined):
            oracle_gap(f)
        return
    assert arity_gap(f) == oracle_gap(f)
    assert essl(f) == oracle_essl(f)
    reduced, _ = reduce_to_essential(f)
    assert quasi_arity(reduced) == oracle_qa(reduced).value
