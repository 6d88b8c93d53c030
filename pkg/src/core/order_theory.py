"""Order-preserving functions on posets and lattices: witnesses, the monotone gap classifier and medians."""

import itertools
import logging
from typing import Any, List, Optional, Tuple

import numpy as np

from src.core.exceptions import (
    ArityGapUndefined,
    ArityMismatchError,
    BoundaryConditionError,
    CarrierMismatchError,
    InessentialVariableError,
    IndexRangeError,
    NotAChain,
    NotALattice,
    NotBidirected,
    NotDistributive,
    NotOrderPreserving,
    NotPseudoDirected,
)
from src.core.function_algebra import (
    essential_variables,
    is_determined_by_oddsupp,
    quasi_arity,
    reduce_to_essential,
)
from src.models.analysis_result import AggregationClass, MonotoneGap2Certificate, MonotoneGapClass
from src.models.function_model import Carrier, Element, FiniteFunction
from src.models.poset_model import (
    ComparableWitness,
    DirectednessReport,
    Lattice,
    MonotoneMinorWitness,
    Poset,
)

logger = logging.getLogger(__name__)


def directedness(P: Poset) -> DirectednessReport:
    leq = P.leq_matrix.astype(np.int64)
    has_upper = (leq @ leq.T) > 0
    has_lower = (leq.T @ leq) > 0
    upwards = bool(has_upper.all())
    downwards = bool(has_lower.all())
    return DirectednessReport(
        upwards=upwards,
        downwards=downwards,
        bidirected=upwards and downwards,
        pseudo_directed=bool((has_upper | has_lower).all()),
    )


def _codomain_order(f: FiniteFunction, P_B: Optional[Poset]) -> np.ndarray:
    """<=_B between value codes of f; the natural order of the values when no poset is given."""
    if P_B is not None:
        if f.codomain.is_rational or P_B.carrier != f.codomain:
            raise CarrierMismatchError(f"Codomain poset {P_B.carrier.name!r} does not match f")
        return P_B.leq_matrix
    levels = f.levels
    try:
        return np.array([[x <= y for y in levels] for x in levels], dtype=bool)
    except TypeError as e:
        raise CarrierMismatchError(f"Codomain {f.codomain.name!r} has no natural order: {e}") from e


def _check_domain(f: FiniteFunction, P_A: Poset) -> None:
    if P_A.carrier != f.domain:
        raise CarrierMismatchError(f"Domain poset {P_A.carrier.name!r} does not match f")


def is_order_preserving(f: FiniteFunction, P_A: Poset, P_B: Optional[Poset] = None) -> bool:
    """f(a) <= f(b) for all a <= b componentwise; single-coordinate steps suffice."""
    _check_domain(f, P_A)
    leq_B = _codomain_order(f, P_B)
    grid = f.grid
    for axis in range(f.arity):
        for u, v in P_A.strict_pairs:
            if not leq_B[grid.take(u, axis=axis), grid.take(v, axis=axis)].all():
                return False
    return True


def _value_order(f: FiniteFunction, P_B: Optional[Poset]):
    leq_B = _codomain_order(f, P_B)
    code_of = {value: code for code, value in enumerate(f.levels)}

    def strictly_below(x: Any, y: Any) -> bool:
        cx, cy = code_of[x], code_of[y]
        return cx != cy and bool(leq_B[cx, cy])

    return strictly_below


def comparable_witness(f: FiniteFunction, P_A: Poset, i: int) -> Optional[ComparableWitness]:
    """First (a, b_i) in lexicographic order with a_i < b_i and f(a) != f(a with b_i at i)."""
    _check_domain(f, P_A)
    if not 1 <= i <= f.arity:
        raise IndexRangeError(f"Variable index {i} outside 1..{f.arity}")
    if not directedness(P_A).pseudo_directed:
        raise NotPseudoDirected("Comparable witnesses need a pseudo-directed domain")
    if i not in essential_variables(f):
        raise InessentialVariableError(f"x{i} is not essential")
    elements = P_A.carrier.elements
    for base in f.tuples():
        lower = P_A.carrier.index_of(base[i - 1])
        for upper in np.flatnonzero(P_A.leq_matrix[lower]):
            if upper == lower:
                continue
            altered = base[:i - 1] + (elements[upper],) + base[i:]
            if f(*base) != f(*altered):
                return ComparableWitness(i, base, elements[upper], f(*base), f(*altered))
    logger.warning(f"No comparable witness for essential x{i} on a pseudo-directed domain")
    return None


def _check_monotone_preconditions(f: FiniteFunction, P_A: Poset, P_B: Optional[Poset]) -> None:
    if not directedness(P_A).bidirected:
        raise NotBidirected(f"Poset {P_A.carrier.name!r} is not bidirected")
    if not is_order_preserving(f, P_A, P_B):
        raise NotOrderPreserving("f is not order-preserving")
    essential = essential_variables(f)
    if len(essential) != f.arity:
        raise InessentialVariableError(f"Essential variables are {essential} of {f.arity}")
    if f.arity < 2:
        raise ArityGapUndefined("The arity gap needs at least two essential variables")


def minor_monotone_witness(f: FiniteFunction, P_A: Poset, P_B: Optional[Poset],
                           i: int, j: int) -> Optional[MonotoneMinorWitness]:
    """c < d with f(..c..c..) < f(..d..d..) at positions i, j and the other coordinates fixed."""
    for index in (i, j):
        if not 1 <= index <= f.arity:
            raise IndexRangeError(f"Variable index {index} outside 1..{f.arity}")
    if i == j:
        raise IndexRangeError("Witness positions must differ")
    _check_monotone_preconditions(f, P_A, P_B)
    below = _value_order(f, P_B)
    elements = P_A.carrier.elements
    others = [p for p in range(f.arity) if p not in (i - 1, j - 1)]
    for rest in itertools.product(elements, repeat=len(others)):
        for u, v in P_A.strict_pairs:
            lower, upper = [None] * f.arity, [None] * f.arity
            for p, value in zip(others, rest):
                lower[p] = upper[p] = value
            lower[i - 1] = lower[j - 1] = elements[u]
            upper[i - 1] = upper[j - 1] = elements[v]
            if below(f(*lower), f(*upper)):
                return MonotoneMinorWitness(i, j, elements[u], elements[v], tuple(lower), tuple(upper))
    logger.warning(f"No monotone witness for the identification of x{i} and x{j}")
    return None


def structural_props_violations(f: FiniteFunction, P_A: Poset, P_B: Optional[Poset] = None) -> List[str]:
    """Clauses of qa f >= n - 1 and 'not determined by oddsupp' that fail for f."""
    _check_monotone_preconditions(f, P_A, P_B)
    n = f.arity
    violations = []
    qa = quasi_arity(f)
    if qa < n - 1:
        violations.append(f"qa f = {qa} < n - 1 = {n - 1}")
    if is_determined_by_oddsupp(f):
        violations.append("f restricted to the diagonal is determined by oddsupp")
    return violations


def check_monotone_structural_props(f: FiniteFunction, P_A: Poset, P_B: Optional[Poset] = None) -> bool:
    violations = structural_props_violations(f, P_A, P_B)
    for violation in violations:
        logger.warning(f"Order-preserving function violates a structural property: {violation}")
    return not violations


def monotone_gap2_certificate(f: FiniteFunction) -> MonotoneGap2Certificate:
    """h(x) = f(x,x,x) and the three identities f(x1,x0,x0) = f(x0,x1,x0) = f(x0,x0,x1) = h(x0)."""
    if f.arity != 3:
        raise ArityMismatchError(f"The certificate needs arity 3, got {f.arity}")
    k = len(f.domain)
    grid = f.grid
    diagonal = np.arange(k)
    h = grid[diagonal, diagonal, diagonal]
    x0, x1 = np.indices((k, k))
    expected = h[x0]
    checks = tuple(bool(np.array_equal(table, expected))
                   for table in (grid[x1, x0, x0], grid[x0, x1, x0], grid[x0, x0, x1]))
    return MonotoneGap2Certificate(f.with_grid(h, arity=1), checks)


def classify_monotone_gap(f: FiniteFunction, P_A: Poset, P_B: Optional[Poset] = None) -> MonotoneGapClass:
    """Gap 2 exactly for ternary f whose identification minors all equal h(x0) with h nonconstant."""
    _check_monotone_preconditions(f, P_A, P_B)
    if f.arity != 3:
        return MonotoneGapClass(1)
    certificate = monotone_gap2_certificate(f)
    if certificate.is_valid():
        return MonotoneGapClass(2, certificate)
    return MonotoneGapClass(1)


def _median_codes(L: Lattice, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    meet, join = L.meet_table, L.join_table
    return join[join[meet[x, y], meet[x, z]], meet[y, z]]


def _dual_median_codes(L: Lattice, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    meet, join = L.meet_table, L.join_table
    return meet[meet[join[x, y], join[x, z]], join[y, z]]


def is_distributive(L: Lattice) -> bool:
    meet, join = L.meet_table, L.join_table
    k = len(L.carrier)
    x, y, z = np.ix_(range(k), range(k), range(k))
    return bool(np.array_equal(meet[x, join[y, z]], join[meet[x, y], meet[x, z]]))


def _require_distributive(L: Lattice) -> None:
    if not is_distributive(L):
        raise NotDistributive(f"Lattice {L.carrier.name!r} is not distributive")


def median(L: Lattice, x1: Element, x2: Element, x3: Element) -> Element:
    """(x1 & x2) | (x1 & x3) | (x2 & x3)."""
    _require_distributive(L)
    index = L.carrier.index_of
    code = _median_codes(L, index(x1), index(x2), index(x3))
    return L.carrier.elements[int(code)]


def dual_median(L: Lattice, x1: Element, x2: Element, x3: Element) -> Element:
    """(x1 | x2) & (x1 | x3) & (x2 | x3)."""
    index = L.carrier.index_of
    return L.carrier.elements[int(_dual_median_codes(L, index(x1), index(x2), index(x3)))]


def is_lattice_homomorphism(h: FiniteFunction, L_A: Lattice, L_B: Lattice) -> bool:
    if h.arity != 1:
        raise ArityMismatchError(f"A homomorphism is unary, got arity {h.arity}")
    if h.domain != L_A.carrier or h.codomain != L_B.carrier:
        raise CarrierMismatchError("h does not map the carrier of L_A into that of L_B")
    codes = h.grid
    x, y = np.indices((len(L_A.carrier),) * 2)
    return bool(np.array_equal(codes[L_A.meet_table[x, y]], L_B.meet_table[codes[x], codes[y]])
                and np.array_equal(codes[L_A.join_table[x, y]], L_B.join_table[codes[x], codes[y]]))


def median_form_match(f: FiniteFunction, chain_A: Poset, lattice_B: Lattice) -> Optional[FiniteFunction]:
    """Nonconstant h with f = med(h(x1), h(x2), h(x3)), or None."""
    if not chain_A.is_chain():
        raise NotAChain(f"Poset {chain_A.carrier.name!r} is not a chain")
    if not isinstance(lattice_B, Lattice):
        raise NotALattice("Codomain must be given as a lattice")
    if f.arity != 3:
        raise ArityMismatchError(f"The median form is ternary, got arity {f.arity}")
    if not is_order_preserving(f, chain_A, lattice_B.poset):
        raise NotOrderPreserving("f is not order-preserving")
    k = len(f.domain)
    diagonal = np.arange(k)
    h = f.grid[diagonal, diagonal, diagonal]
    if np.all(h == h[0]):
        return None
    x1, x2, x3 = np.ix_(h, h, h)
    if np.array_equal(f.grid, _median_codes(lattice_B, x1, x2, x3)):
        return f.with_grid(h, arity=1)
    return None


def truncated_median(L: Lattice, a: Element, b: Element) -> FiniteFunction:
    """The ternary table of (a | med(x1, x2, x3)) & b."""
    if not L.poset.lt(a, b):
        raise ValueError(f"Truncation bounds need a < b, got a={a!r}, b={b!r}")
    _require_distributive(L)
    k = len(L.carrier)
    ai, bi = L.carrier.index_of(a), L.carrier.index_of(b)
    x1, x2, x3 = np.indices((k, k, k))
    codes = L.meet_table[L.join_table[ai, _median_codes(L, x1, x2, x3)], bi]
    values = tuple(L.carrier.elements[c] for c in codes.ravel().tolist())
    return FiniteFunction(L.carrier, 3, L.carrier, values)


def classify_latpoly_gap2(f: FiniteFunction, L: Lattice) -> Optional[Tuple[Element, Element]]:
    """(a, b) with f a truncated median; the median is symmetric so no permutation search is needed."""
    _require_distributive(L)
    if not is_order_preserving(f, L.poset, L.poset):
        raise NotOrderPreserving("f is not order-preserving on the lattice")
    if f.arity != 3:
        return None
    a = f(L.bottom, L.bottom, L.bottom)
    b = f(L.top, L.top, L.top)
    if not L.poset.lt(a, b):
        return None
    if truncated_median(L, a, b).values == f.values:
        return a, b
    return None


def classify_aggregation(f: FiniteFunction) -> AggregationClass:
    """Gap of an aggregation function on a finite rational chain a = min A < ... < b = max A."""
    domain = f.domain
    if f.codomain != domain or any(x >= y for x, y in zip(domain.elements, domain.elements[1:])):
        raise CarrierMismatchError("Aggregation functions map an increasing rational chain to itself")
    P = Poset.chain_of(domain)
    if not is_order_preserving(f, P, P):
        raise NotOrderPreserving("An aggregation function is nondecreasing")
    a, b = domain.elements[0], domain.elements[-1]
    if f(*(a,) * f.arity) != a or f(*(b,) * f.arity) != b:
        raise BoundaryConditionError(f"Boundary conditions M(a..a) = a, M(b..b) = b fail for a={a}, b={b}")
    reduced, _ = reduce_to_essential(f)
    if reduced.arity < 2:
        raise ArityGapUndefined("The arity gap needs at least two essential variables")
    if reduced.arity != 3:
        return AggregationClass(1, reduced.arity)
    h = median_form_match(reduced, P, Lattice.from_poset(P))
    if h is not None and h(a) == a and h(b) == b:
        return AggregationClass(2, 3, h)
    return AggregationClass(1, 3)


def rational_chain_poset(points) -> Poset:
    """Chain poset on distinct rationals sorted increasingly."""
    return Poset.chain_of(Carrier.rational_chain(points))
