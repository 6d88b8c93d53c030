import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.exceptions import InessentialVariableError, NotBooleanError
from src.core.function_algebra import arity_gap, essential_variables
from src.core.oracles import oracle_mobius
from src.core.set_functions import (
    anf,
    boolean_gap_matches,
    characteristic_vector,
    classify_boolean_gap,
    classify_pseudo_boolean_gap,
    essential_from_mobius,
    from_set_function,
    mobius,
    multilinear_value,
    to_set_function,
    vertex_position,
    zeta,
)
from src.models.function_model import Carrier, FiniteFunction
from src.models.set_function_model import BooleanPolynomial, MobiusCoefficients, SetFunction, mask_of
from tests.factories import BOOL, boolean, parity, pseudo

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)


@st.composite
def set_functions(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    values = draw(st.lists(rationals, min_size=1 << n, max_size=1 << n))
    return SetFunction(n, tuple(values))


def test_vertex_position_puts_first_element_first():
    assert vertex_position(mask_of({1}), 3) == 4
    assert vertex_position(mask_of({3}), 3) == 1
    assert characteristic_vector(mask_of({1, 3}), 3) == (1, 0, 1)


def test_and_has_single_top_coefficient(and2):
    m = mobius(to_set_function(and2))
    assert m[{1, 2}] == 1
    assert m.support() == (frozenset({1, 2}),)


def test_from_set_function_inverts_to_set_function():
    f = pseudo(3, lambda a, b, c: a + 2 * b - Fraction(1, 3) * c)
    assert from_set_function(to_set_function(f)) == f


@given(set_functions())
def test_zeta_inverts_mobius(v):
    assert zeta(mobius(v)) == v


@given(set_functions())
def test_fast_transform_matches_subset_sums(v):
    assert mobius(v) == oracle_mobius(v)


@given(set_functions(max_n=3), st.data())
def test_multilinear_value_interpolates_vertices(v, data):
    mask = data.draw(st.integers(0, (1 << v.n) - 1))
    x = [Fraction(bit) for bit in characteristic_vector(mask, v.n)]
    assert multilinear_value(mobius(v), x) == v[mask]


def test_anf_of_majority(majority3):
    assert anf(majority3) == BooleanPolynomial.of(3, (1, 2), (1, 3), (2, 3))
    assert str(anf(majority3)) == "x1x2 ^ x1x3 ^ x2x3"


def test_anf_rejects_rational_codomain():
    with pytest.raises(NotBooleanError):
        anf(pseudo(2, lambda a, b: a + b))


def test_essential_from_mobius_agrees_with_table():
    f = pseudo(3, lambda a, b, c: 2 * a - a * c + c)
    m = mobius(to_set_function(f))
    assert tuple(i for i in (1, 2, 3) if essential_from_mobius(m, i)) == essential_variables(f)


def test_boolean_classifier_parity(parity3):
    verdict = classify_boolean_gap(parity3)
    assert verdict.gap == 2
    assert verdict.template == "parity"
    assert verdict.constant == 0
    assert verdict.permutation == (1, 2, 3)


def test_boolean_classifier_negated_parity():
    verdict = classify_boolean_gap(boolean(3, lambda a, b, c: 1 - parity(a, b, c)))
    assert (verdict.template, verdict.constant) == ("parity", 1)


@pytest.mark.parametrize("fn, permutation", [
    (lambda a, b: a and not b, (1, 2)),
    (lambda a, b: b and not a, (2, 1)),
])
def test_boolean_classifier_and_xor(fn, permutation):
    verdict = classify_boolean_gap(boolean(2, fn))
    assert verdict.template == "and_xor"
    assert verdict.permutation == permutation


def test_boolean_classifier_majority_and_gap1(majority3, or3):
    assert classify_boolean_gap(majority3).template == "majority"
    assert classify_boolean_gap(or3).gap == 1


def test_boolean_classifier_needs_full_essentiality():
    with pytest.raises(InessentialVariableError):
        classify_boolean_gap(boolean(3, lambda a, b, c: a ^ b))


def test_every_match_reproduces_the_anf(majority3):
    for match in boolean_gap_matches(majority3):
        assert match.template == "majority"
    assert len(boolean_gap_matches(majority3)) == 6


def test_boolean_classifier_agrees_with_gap_on_all_ternary_functions():
    for values in itertools.product((0, 1), repeat=8):
        f = FiniteFunction(BOOL, 3, BOOL, values)
        if len(essential_variables(f)) == 3:
            assert classify_boolean_gap(f).gap == arity_gap(f)


def test_pseudo_boolean_binary_diagonal():
    verdict = classify_pseudo_boolean_gap(pseudo(2, lambda a, b: 5 * (a ^ b)))
    assert verdict.gap == 2
    assert verdict.reason == "binary_diag"


def test_pseudo_boolean_two_valued_composition():
    verdict = classify_pseudo_boolean_gap(pseudo(3, lambda *x: 3 * parity(*x) + 1))
    assert verdict.gap == 2
    assert verdict.reason == "two_valued_composition"
    assert verdict.details["value_map"] == {0: Fraction(1), 1: Fraction(4)}
    assert verdict.details["boolean"].template == "parity"


def test_pseudo_boolean_injective_is_gap1():
    verdict = classify_pseudo_boolean_gap(pseudo(3, lambda a, b, c: a + 2 * b + 4 * c))
    assert verdict.gap == 1
    assert verdict.to_dict()["reason"] is None


def test_pseudo_boolean_rejects_larger_domain():
    f = FiniteFunction.projection(Carrier.of_size(3), 2, 1)
    with pytest.raises(NotBooleanError):
        classify_pseudo_boolean_gap(f)


def test_mobius_coefficients_from_mapping():
    m = MobiusCoefficients.from_mapping(2, {(): 1, (1, 2): -2})
    assert m[0] == 1
    assert m[{2, 1}] == -2
    assert m.permuted((2, 1)) == m
