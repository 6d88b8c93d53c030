"""Set functions, Moebius/zeta transforms and the Boolean / pseudo-Boolean gap classifiers."""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from config.settings import settings
from src.core.exceptions import (
    ArityGapUndefined,
    BudgetExceeded,
    IndexRangeError,
    InessentialVariableError,
    NotBooleanError,
)
from src.core.function_algebra import essential_arity
from src.models.analysis_result import BooleanGapClass, PseudoBooleanGapClass
from src.models.function_model import RATIONAL, Carrier, FiniteFunction
from src.models.set_function_model import BooleanPolynomial, MobiusCoefficients, SetFunction, subset_of

logger = logging.getLogger(__name__)

BOOLEAN = Carrier.boolean()


def vertex_position(mask: int, n: int) -> int:
    """Table position of the characteristic vector e_T, T given by ``mask``."""
    return sum(1 << (n - 1 - i) for i in range(n) if mask >> i & 1)


def characteristic_vector(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(mask >> i & 1 for i in range(n))


def _require_boolean_domain(f: FiniteFunction) -> None:
    if not f.domain.is_boolean():
        raise NotBooleanError(f"Domain {f.domain.elements} is not {{0, 1}}")


def _require_boolean(f: FiniteFunction) -> None:
    _require_boolean_domain(f)
    if f.codomain.is_rational or not f.codomain.is_boolean():
        raise NotBooleanError(f"Codomain {f.codomain.name!r} is not {{0, 1}}")


def to_set_function(f: FiniteFunction) -> SetFunction:
    """v_f(T) = f(e_T)."""
    _require_boolean_domain(f)
    n = f.arity
    try:
        values = tuple(Fraction(f.values[vertex_position(mask, n)]) for mask in range(1 << n))
    except (TypeError, ValueError) as e:
        raise NotBooleanError(f"Values of a pseudo-Boolean function must be rational: {e}") from e
    return SetFunction(n, values)


def from_set_function(v: SetFunction) -> FiniteFunction:
    """f_v(e_T) = v(T), as a pseudo-Boolean function with rational codomain."""
    values = [Fraction(0)] * (1 << v.n)
    for mask, value in enumerate(v.values):
        values[vertex_position(mask, v.n)] = value
    return FiniteFunction(BOOLEAN, v.n, RATIONAL, tuple(values))


def _subset_butterfly(values: Sequence[Fraction], n: int, subtract: bool) -> Tuple[Fraction, ...]:
    grid = np.empty(len(values), dtype=object)
    grid[:] = list(values)
    grid = grid.reshape((2,) * n)
    for axis in range(n):
        low = np.asarray(grid.take(0, axis=axis), dtype=object)
        high = np.asarray(grid.take(1, axis=axis), dtype=object)
        grid = np.stack([low, high - low if subtract else high + low], axis=axis)
    return tuple(Fraction(x) for x in grid.ravel())


def mobius(v: SetFunction) -> MobiusCoefficients:
    """m_v(S) = sum over T subset of S of (-1)^{|S|-|T|} v(T), by the fast subset transform."""
    return MobiusCoefficients(v.n, _subset_butterfly(v.values, v.n, subtract=True))


def zeta(m: MobiusCoefficients) -> SetFunction:
    """v(S) = sum over T subset of S of m(T)."""
    return SetFunction(m.n, _subset_butterfly(m.values, m.n, subtract=False))


def multilinear_value(m: MobiusCoefficients, x: Sequence[Fraction]) -> Fraction:
    """sum_S m(S) prod_{i in S} x_i (empty product is 1)."""
    if len(x) != m.n:
        raise IndexRangeError(f"Point has {len(x)} coordinates, expected {m.n}")
    total = Fraction(0)
    for mask, coefficient in enumerate(m.values):
        if coefficient == 0:
            continue
        term = coefficient
        for i in subset_of(mask):
            term *= x[i - 1]
        total += term
    return total


def anf(f: FiniteFunction) -> BooleanPolynomial:
    """Algebraic normal form: the GF(2) Moebius transform of the truth table."""
    _require_boolean(f)
    n = f.arity
    bits = np.array([f.values[vertex_position(mask, n)] for mask in range(1 << n)], dtype=np.uint8)
    grid = bits.reshape((2,) * n)
    for axis in range(n):
        low = grid.take(0, axis=axis)
        high = grid.take(1, axis=axis)
        grid = np.stack([low, high ^ low], axis=axis)
    coefficients = grid.ravel()
    return BooleanPolynomial(n, frozenset(subset_of(mask) for mask in range(1 << n) if coefficients[mask]))


def essential_from_mobius(m: MobiusCoefficients, i: int) -> bool:
    """x_i is essential iff it appears in a monomial with nonzero coefficient."""
    if not 1 <= i <= m.n:
        raise IndexRangeError(f"Variable index {i} outside 1..{m.n}")
    bit = 1 << (i - 1)
    return any(value != 0 for mask, value in enumerate(m.values) if mask & bit)


def _boolean_templates(n: int) -> List[Tuple[str, BooleanPolynomial]]:
    templates = [("parity", BooleanPolynomial.of(n, *[(i,) for i in range(1, n + 1)]))]
    if n == 2:
        templates.append(("and_xor", BooleanPolynomial.of(2, (1, 2), (1,))))
    if n == 3:
        templates.append(("majority", BooleanPolynomial.of(3, (1, 2), (1, 3), (2, 3))))
        templates.append(("maj_linear", BooleanPolynomial.of(3, (1, 2), (1, 3), (2, 3), (1,), (2,))))
    return templates


def _check_classifiable(f: FiniteFunction) -> None:
    if f.arity < 2:
        raise ArityGapUndefined("The arity gap needs at least two essential variables")
    if essential_arity(f) != f.arity:
        raise InessentialVariableError("Classifier needs a function depending on all its variables")
    if f.arity > settings.CLASSIFIER_MAX_ARITY:
        raise BudgetExceeded(f"Permutation search at arity {f.arity} refused")


@lru_cache(maxsize=None)
def _template_index(n: int) -> Dict[BooleanPolynomial, Tuple[BooleanGapClass, ...]]:
    """Polynomial -> its (template, c, permutation) matches, in template, permutation, c order."""
    index: Dict[BooleanPolynomial, List[BooleanGapClass]] = {}
    for name, template in _boolean_templates(n):
        for permutation in itertools.permutations(range(1, n + 1)):
            permuted = template.permuted(permutation)
            for c in (0, 1):
                index.setdefault(permuted.with_constant(c), []).append(BooleanGapClass(2, name, c, permutation))
    return {polynomial: tuple(matches) for polynomial, matches in index.items()}


def boolean_gap_matches(f: FiniteFunction) -> List[BooleanGapClass]:
    """Every (template, c, permutation) reproducing the ANF of f."""
    _require_boolean(f)
    _check_classifiable(f)
    return list(_template_index(f.arity).get(anf(f), ()))


def classify_boolean_gap(f: FiniteFunction) -> BooleanGapClass:
    """Gap 2 with the first matching template, otherwise gap 1."""
    matches = boolean_gap_matches(f)
    return matches[0] if matches else BooleanGapClass(1)


def classify_pseudo_boolean_gap(f: FiniteFunction) -> PseudoBooleanGapClass:
    """Gap 2 for nonconstant binary f with f(0,0) = f(1,1), or g o h with injective g and gap h = 2."""
    _require_boolean_domain(f)
    _check_classifiable(f)
    values = f.range_values()
    if f.arity == 2 and len(values) > 1 and f(0, 0) == f(1, 1):
        return PseudoBooleanGapClass(2, "binary_diag", {"diagonal_value": f(0, 0)})
    if len(values) == 2:
        for labels in ((0, 1), (1, 0)):
            label_of = dict(zip(values, labels))
            h = FiniteFunction(BOOLEAN, f.arity, BOOLEAN, tuple(label_of[v] for v in f.values))
            verdict = classify_boolean_gap(h)
            if verdict.gap == 2:
                g = {label: value for value, label in label_of.items()}
                return PseudoBooleanGapClass(2, "two_valued_composition",
                                             {"h": h, "value_map": g, "boolean": verdict})
    return PseudoBooleanGapClass(1)
