"""Essential variables, simple minors, quasi-arity and the arity gap of finite functions."""

import itertools
import logging
from collections import Counter
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

import numpy as np

from config.settings import settings
from src.core.exceptions import (
    ArityGapUndefined,
    ArityMismatchError,
    BudgetExceeded,
    CarrierMismatchError,
    ConstantFunctionError,
    IndexRangeError,
    InessentialVariableError,
)
from src.models.analysis_result import GapReport, TernaryGapCondition, TheoremCase
from src.models.function_model import Carrier, Element, EssentialityWitness, FiniteFunction, VariableMap

logger = logging.getLogger(__name__)


def _check_index(f: FiniteFunction, i: int) -> None:
    if not 1 <= i <= f.arity:
        raise IndexRangeError(f"Variable index {i} outside 1..{f.arity}")


def _axis_is_essential(grid: np.ndarray, axis: int) -> bool:
    return bool(np.any(grid != grid.take([0], axis=axis)))


def essential_variables(f: FiniteFunction) -> Tuple[int, ...]:
    """1-based indices of the essential variables of f."""
    grid = f.grid
    return tuple(i + 1 for i in range(f.arity) if _axis_is_essential(grid, i))


def is_essential(f: FiniteFunction, i: int) -> Tuple[bool, Optional[EssentialityWitness]]:
    """Decide essentiality of x_i; returns the lexicographically first witness when essential."""
    _check_index(f, i)
    if not _axis_is_essential(f.grid, i - 1):
        return False, None
    for base in f.tuples():
        value = f.values[f.position_of(base)]
        for replacement in f.domain.elements:
            if replacement == base[i - 1]:
                continue
            witness = EssentialityWitness(i, base, replacement)
            if f(*witness.altered()) != value:
                return True, witness
    raise AssertionError("essential axis without a witness")


def essential_arity(f: FiniteFunction) -> int:
    return len(essential_variables(f))


def simple_minor(g: FiniteFunction, sigma: VariableMap) -> FiniteFunction:
    """f(x_1..x_n) = g(x_sigma(1), ..., x_sigma(m))."""
    if sigma.source_arity != g.arity:
        raise ArityMismatchError(
            f"Variable map has source arity {sigma.source_arity}, function has arity {g.arity}")
    shape = (len(g.domain),) * sigma.target_arity
    axes = np.indices(shape, sparse=True)
    codes = g.grid[tuple(axes[k - 1] for k in sigma.mapping)]
    return g.with_grid(np.broadcast_to(codes, shape), arity=sigma.target_arity)


@lru_cache(maxsize=4096)
def _cached_minor(g: FiniteFunction, sigma: VariableMap) -> FiniteFunction:
    return simple_minor(g, sigma)


def identify(f: FiniteFunction, i: int, j: int) -> FiniteFunction:
    """The identification minor f_{i<-j}: x_j substituted for x_i."""
    _check_index(f, i)
    _check_index(f, j)
    if i == j:
        raise IndexRangeError(f"Cannot identify variable {i} with itself")
    return simple_minor(f, VariableMap.identification(f.arity, i, j))


def _check_same_carriers(f: FiniteFunction, g: FiniteFunction) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise CarrierMismatchError(
            f"Carriers differ: {f.domain.name}->{f.codomain.name} vs {g.domain.name}->{g.codomain.name}")


def is_minor_of(f: FiniteFunction, g: FiniteFunction) -> Optional[VariableMap]:
    """Search all maps sigma: [m] -> [n] for f = g o sigma; first map in lexicographic order."""
    _check_same_carriers(f, g)
    if g.arity > settings.CLASSIFIER_MAX_ARITY:
        raise BudgetExceeded(f"Minor search over {f.arity}^{g.arity} maps refused")
    for mapping in itertools.product(range(1, f.arity + 1), repeat=g.arity):
        sigma = VariableMap(g.arity, f.arity, mapping)
        if _cached_minor(g, sigma).values == f.values:
            return sigma
    return None


def equivalent(f: FiniteFunction, g: FiniteFunction) -> bool:
    return is_minor_of(f, g) is not None and is_minor_of(g, f) is not None


def reduce_to_essential(f: FiniteFunction) -> Tuple[FiniteFunction, VariableMap]:
    """Drop inessential variables; f = simple_minor(reduced, embedding)."""
    essential = essential_variables(f)
    if not essential:
        raise ConstantFunctionError("A constant function has no essential reduction")
    if len(essential) == f.arity:
        return f, VariableMap.identity(f.arity)
    codes = f.grid
    for axis in reversed(range(f.arity)):
        if axis + 1 not in essential:
            codes = codes.take(0, axis=axis)
    reduced = f.with_grid(codes, arity=len(essential))
    return reduced, VariableMap(len(essential), f.arity, essential)


def diagonal_tuples(domain: Carrier, n: int) -> Iterator[Tuple[Element, ...]]:
    """A^n_=: tuples with a repeated coordinate (A itself when n = 1)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    for t in itertools.product(domain.elements, repeat=n):
        if n == 1 or len(set(t)) < n:
            yield t


def diagonal_mask(k: int, n: int) -> np.ndarray:
    shape = (k,) * n
    if n == 1:
        return np.ones(shape, dtype=bool)
    axes = np.indices(shape)
    mask = np.zeros(shape, dtype=bool)
    for p, q in itertools.combinations(range(n), 2):
        mask |= axes[p] == axes[q]
    return mask


def oddsupp(t: Tuple[Element, ...]) -> FrozenSet[Element]:
    """Elements occurring an odd number of times in t."""
    return frozenset(a for a, count in Counter(t).items() if count % 2 == 1)


def is_determined_by_oddsupp(f: FiniteFunction) -> bool:
    """Whether f restricted to A^n_= factors through oddsupp."""
    seen: Dict[FrozenSet[Element], object] = {}
    for t, value in zip(f.tuples(), f.values):
        if f.arity > 1 and len(set(t)) == f.arity:
            continue
        key = oddsupp(t)
        if seen.setdefault(key, value) != value:
            return False
    return True


def _diagonal_codes(f: FiniteFunction) -> Tuple[np.ndarray, np.ndarray]:
    k, n = len(f.domain), f.arity
    mask = diagonal_mask(k, n).ravel()
    coordinates = np.indices(f.shape).reshape(n, -1).T
    return coordinates[mask], f.grid.ravel()[mask]


def quasi_arity(f: FiniteFunction) -> int:
    """Least |S| such that f on A^n_= is constant on the fibers of the projection onto S."""
    coordinates, values = _diagonal_codes(f)
    if np.all(values == values[0]):
        return 0
    k = len(f.domain)
    for size in range(1, f.arity + 1):
        weights = k ** np.arange(size)
        for subset in itertools.combinations(range(f.arity), size):
            keys = coordinates[:, subset] @ weights
            _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
            if np.array_equal(values, values[first][inverse]):
                return size
    return f.arity


def identification_minor_arities(f: FiniteFunction) -> Dict[Tuple[int, int], int]:
    """ess f_{i<-j} for every ordered pair of distinct essential variables."""
    essential = essential_variables(f)
    return {
        (i, j): essential_arity(identify(f, i, j))
        for i, j in itertools.permutations(essential, 2)
    }


def arity_gap(f: FiniteFunction) -> int:
    """min over essential pairs of (ess f - ess f_{i<-j})."""
    minors = identification_minor_arities(f)
    if not minors:
        raise ArityGapUndefined("The arity gap needs at least two essential variables")
    return essential_arity(f) - max(minors.values())


def essl(f: FiniteFunction) -> int:
    """Largest essential arity of a proper simple minor of f."""
    return essential_arity(f) - arity_gap(f)


def is_totally_symmetric(f: FiniteFunction) -> bool:
    grid = f.grid
    return all(np.array_equal(grid, np.swapaxes(grid, p, p + 1)) for p in range(f.arity - 1))


def ternary_gap2_condition(f: FiniteFunction) -> Optional[TernaryGapCondition]:
    """Find a nonconstant h and i1, i2, i3 in {0, 1} satisfying the ternary identification identities."""
    if f.arity != 3:
        raise ArityMismatchError(f"The ternary condition needs arity 3, got {f.arity}")
    k = len(f.domain)
    grid = f.grid
    x0, x1 = np.indices((k, k))
    identities = (grid[x1, x0, x0], grid[x0, x1, x0], grid[x0, x0, x1])

    def lift(h: np.ndarray, which: int) -> np.ndarray:
        return np.broadcast_to(h[:, None] if which == 0 else h[None, :], (k, k))

    first = identities[0]
    for i1 in (0, 1):
        h = first[:, 0] if i1 == 0 else first[0, :]
        if np.all(h == h[0]) or not np.array_equal(first, lift(h, i1)):
            continue
        found = [i1]
        for table in identities[1:]:
            match = next((i for i in (0, 1) if np.array_equal(table, lift(h, i))), None)
            if match is None:
                break
            found.append(match)
        if len(found) == 3:
            return TernaryGapCondition(f.with_grid(h, arity=1), tuple(found))
    return None


def gap_via_characterization(f: FiniteFunction) -> GapReport:
    """Arity gap from quasi-arity, the oddsupp condition and the ternary condition."""
    n = f.arity
    essential = essential_variables(f)
    if len(essential) != n:
        raise InessentialVariableError(
            f"Characterization needs all variables essential; essential are {essential} of {n}")
    if n < 2:
        raise ArityGapUndefined("The arity gap needs at least two essential variables")

    qa = quasi_arity(f)
    determined = is_determined_by_oddsupp(f)
    ternary = None
    p = n - qa
    if p >= 3:
        gap, case = p, TheoremCase.P_GE_3
    elif n != 3:
        if qa == n - 2:
            gap, case = 2, TheoremCase.GAP2_QA
        elif qa == n and determined:
            gap, case = 2, TheoremCase.GAP2_ODDSUPP
        else:
            gap, case = 1, TheoremCase.GAP1
    else:
        ternary = ternary_gap2_condition(f)
        gap, case = (2, TheoremCase.N3_CONDITION) if ternary else (1, TheoremCase.GAP1)

    report = GapReport(
        arity=n,
        essential_variables=essential,
        ess=n,
        per_pair_minor_ess=identification_minor_arities(f),
        essl=n - gap,
        gap=gap,
        qa=qa,
        oddsupp_determined=determined,
        theorem_case=case,
        ternary_condition=ternary,
    )
    if not report.is_consistent():
        logger.warning(
            f"Characterization gap {gap} differs from identification gap {report.identification_gap}")
    return report
