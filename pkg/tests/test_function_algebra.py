import itertools

import pytest
from hypothesis import assume, given, settings as hypothesis_settings
from hypothesis import strategies as st

from src.core.exceptions import (
    ArityGapUndefined,
    CarrierMismatchError,
    ConstantFunctionError,
    IndexRangeError,
    InessentialVariableError,
)
from src.core.function_algebra import (
    arity_gap,
    diagonal_tuples,
    equivalent,
    essential_arity,
    essential_variables,
    essl,
    gap_via_characterization,
    identification_minor_arities,
    identify,
    is_determined_by_oddsupp,
    is_essential,
    is_minor_of,
    is_totally_symmetric,
    oddsupp,
    quasi_arity,
    reduce_to_essential,
    simple_minor,
    ternary_gap2_condition,
)
from src.core.oracles import oracle_gap
from src.models.analysis_result import TheoremCase
from src.models.function_model import Carrier, FiniteFunction, VariableMap
from tests.factories import BOOL, boolean, parity


def test_essential_variables_of_projection():
    f = FiniteFunction.projection(BOOL, 3, 2)
    assert essential_variables(f) == (2,)
    assert essential_arity(f) == 1


def test_is_essential_returns_first_witness(and2):
    essential, witness = is_essential(and2, 1)
    assert essential
    assert witness.base == (0, 1)
    assert witness.replacement == 1
    assert and2(*witness.base) != and2(*witness.altered())


def test_is_essential_inessential_variable():
    f = FiniteFunction.projection(BOOL, 2, 1)
    assert is_essential(f, 2) == (False, None)


@pytest.mark.parametrize("index", [0, 3])
def test_is_essential_index_range(and2, index):
    with pytest.raises(IndexRangeError):
        is_essential(and2, index)


def test_simple_minor_diagonal_of_and(and2):
    f = simple_minor(and2, VariableMap(2, 1, (1, 1)))
    assert f == FiniteFunction.projection(BOOL, 1, 1)


def test_identify_majority(majority3):
    minor = identify(majority3, 1, 2)
    assert essential_variables(minor) == (2,)
    assert minor(1, 1, 0) == 1


def test_identify_same_variable_rejected(majority3):
    with pytest.raises(IndexRangeError):
        identify(majority3, 2, 2)


def test_projection_is_minor_of_and(and2):
    x1 = FiniteFunction.projection(BOOL, 1, 1)
    sigma = is_minor_of(x1, and2)
    assert sigma is not None
    assert sigma.mapping == (1, 1)


def test_and_is_not_minor_of_projection(and2):
    assert is_minor_of(and2, FiniteFunction.projection(BOOL, 1, 1)) is None


def test_is_minor_of_carrier_mismatch(and2):
    other = FiniteFunction.projection(Carrier.of_size(3), 2, 1)
    with pytest.raises(CarrierMismatchError):
        is_minor_of(other, and2)


def test_equivalent_under_permutation():
    f = boolean(2, lambda a, b: a and not b)
    g = boolean(2, lambda a, b: b and not a)
    assert equivalent(f, g)
    assert not equivalent(f, boolean(2, lambda a, b: a or b))


def test_reduce_to_essential_drops_middle_variable():
    f = boolean(3, lambda a, b, c: a ^ c)
    reduced, embedding = reduce_to_essential(f)
    assert reduced.arity == 2
    assert embedding.mapping == (1, 3)
    assert simple_minor(reduced, embedding) == f


def test_reduce_constant_rejected():
    with pytest.raises(ConstantFunctionError):
        reduce_to_essential(FiniteFunction.constant(BOOL, 2, BOOL, 1))


def test_diagonal_sizes():
    three = Carrier.of_size(3)
    assert len(list(diagonal_tuples(three, 3))) == 21
    assert len(list(diagonal_tuples(three, 1))) == 3
    assert len(list(diagonal_tuples(BOOL, 3))) == 8


def test_oddsupp():
    assert oddsupp((0, 0, 1)) == frozenset({1})
    assert oddsupp((1, 1, 1)) == frozenset({1})
    assert oddsupp((2, 2)) == frozenset()


@given(st.lists(st.integers(0, 3), min_size=1, max_size=6), st.randoms())
def test_oddsupp_permutation_invariant(values, rng):
    shuffled = list(values)
    rng.shuffle(shuffled)
    assert oddsupp(tuple(values)) == oddsupp(tuple(shuffled))


def test_quasi_arity_examples(parity3):
    assert quasi_arity(FiniteFunction.constant(BOOL, 3, BOOL, 0)) == 0
    assert quasi_arity(FiniteFunction.projection(Carrier.of_size(3), 2, 1)) == 1
    assert quasi_arity(parity3) == 3


def test_arity_gap_boolean_examples(parity3, or3, majority3, and2, xor2):
    assert arity_gap(parity3) == 2
    assert arity_gap(or3) == 1
    assert arity_gap(majority3) == 2
    assert arity_gap(and2) == 1
    assert arity_gap(xor2) == 2


def test_arity_gap_undefined_for_projection():
    with pytest.raises(ArityGapUndefined):
        arity_gap(FiniteFunction.projection(BOOL, 3, 1))


def test_essl(parity3):
    assert essl(parity3) == 1
    assert identification_minor_arities(parity3)[(1, 2)] == 1


def test_gap_three_when_all_identifications_are_constant(distinct3):
    report = gap_via_characterization(distinct3)
    assert report.gap == 3
    assert report.qa == 0
    assert report.theorem_case == TheoremCase.P_GE_3
    assert report.is_consistent()


def test_characterization_cases(xor2, and2, majority3, parity3):
    assert gap_via_characterization(xor2).theorem_case == TheoremCase.GAP2_QA
    assert gap_via_characterization(and2).theorem_case == TheoremCase.GAP1
    report = gap_via_characterization(majority3)
    assert report.theorem_case == TheoremCase.N3_CONDITION
    assert report.ternary_condition.indices == (0, 0, 0)
    assert gap_via_characterization(parity3).ternary_condition.indices == (1, 1, 1)
    parity4 = boolean(4, parity)
    report = gap_via_characterization(parity4)
    assert report.theorem_case == TheoremCase.GAP2_ODDSUPP
    assert report.gap == 2


def test_characterization_needs_full_essentiality():
    with pytest.raises(InessentialVariableError):
        gap_via_characterization(boolean(3, lambda a, b, c: a and b))


def test_ternary_condition_absent_for_and3(and3):
    assert ternary_gap2_condition(and3) is None


def test_total_symmetry(majority3):
    assert is_totally_symmetric(majority3)
    assert not is_totally_symmetric(boolean(2, lambda a, b: a and not b))


def test_parity_is_determined_by_oddsupp(parity3):
    assert is_determined_by_oddsupp(parity3)
    assert not is_determined_by_oddsupp(boolean(2, lambda a, b: a and b))


@hypothesis_settings(max_examples=150, deadline=None)
@given(st.integers(2, 3), st.data())
def test_characterization_matches_oracle(n, data):
    size = 3 if n == 2 else 2
    domain = Carrier.of_size(size)
    values = data.draw(st.lists(st.integers(0, 2), min_size=size ** n, max_size=size ** n))
    f = FiniteFunction(domain, n, Carrier.of_size(3, name="B"), tuple(values))
    assume(essential_arity(f) >= 2)
    reduced, _ = reduce_to_essential(f)
    assert gap_via_characterization(reduced).gap == oracle_gap(f) == arity_gap(f)


def test_every_boolean_binary_gap_matches_oracle():
    for values in itertools.product((0, 1), repeat=4):
        f = FiniteFunction(BOOL, 2, BOOL, values)
        if essential_arity(f) == 2:
            assert gap_via_characterization(f).gap == oracle_gap(f)
