"""Brute-force oracles.

Everything here works on plain ``{tuple: value}`` tables and deliberately imports
nothing from the classifier modules it is used to check.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from config.settings import settings
from src.core.exceptions import ArityGapUndefined, BudgetExceeded
from src.models.function_model import FiniteFunction
from src.models.set_function_model import MobiusCoefficients, SetFunction

logger = logging.getLogger(__name__)

Table = Dict[Tuple[Any, ...], Any]


@dataclass(frozen=True)
class QuasiArityResult:
    value: int
    fallback: bool = False


def _table(f: FiniteFunction) -> Table:
    return dict(zip(itertools.product(f.domain.elements, repeat=f.arity), f.values))


def _essential_positions(table: Table, elements: Tuple[Any, ...], n: int) -> List[int]:
    essential = []
    for i in range(n):
        if any(table[t[:i] + (a,) + t[i + 1:]] != value
               for t, value in table.items() for a in elements if a != t[i]):
            essential.append(i)
    return essential


def _minor(table: Table, sigma: Tuple[int, ...]) -> Table:
    """t -> table[(t[sigma[0]], ..., t[sigma[n-1]])], sigma 0-based."""
    return {t: table[tuple(t[s] for s in sigma)] for t in table}


def oracle_gap(f: FiniteFunction) -> int:
    """ess f minus the largest ess f_{i<-j} over ordered pairs of essential variables."""
    elements, n = f.domain.elements, f.arity
    table = _table(f)
    essential = _essential_positions(table, elements, n)
    if len(essential) < 2:
        raise ArityGapUndefined(f"Only {len(essential)} essential variable(s)")
    best = 0
    for i, j in itertools.permutations(essential, 2):
        sigma = tuple(j if p == i else p for p in range(n))
        best = max(best, len(_essential_positions(_minor(table, sigma), elements, n)))
    return len(essential) - best


def oracle_essl(f: FiniteFunction) -> int:
    """Largest essential arity over all non-surjective variable maps of the essential reduction."""
    elements = f.domain.elements
    table = _table(f)
    essential = _essential_positions(table, elements, f.arity)
    n = len(essential)
    if n < 2:
        raise ArityGapUndefined(f"Only {n} essential variable(s)")
    if n > settings.CLASSIFIER_MAX_ARITY:
        raise BudgetExceeded(f"{n}^{n} variable maps refused")
    fixed = next(iter(table))
    reduced = {}
    for t in itertools.product(elements, repeat=n):
        full = list(fixed)
        for position, value in zip(essential, t):
            full[position] = value
        reduced[t] = table[tuple(full)]
    best = 0
    for sigma in itertools.product(range(n), repeat=n):
        if len(set(sigma)) == n:
            continue
        best = max(best, len(_essential_positions(_minor(reduced, sigma), elements, n)))
    return best


def _off_diagonal(table: Table, n: int) -> List[Tuple[Any, ...]]:
    return [t for t in table if n > 1 and len(set(t)) == n]


def _qa_by_factorization(table: Table, n: int) -> int:
    diagonal = {t: v for t, v in table.items() if n == 1 or len(set(t)) < n}
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            seen: Dict[Tuple[Any, ...], Any] = {}
            if all(seen.setdefault(tuple(t[p] for p in subset), v) == v for t, v in diagonal.items()):
                return size
    return n


def oracle_qa(f: FiniteFunction) -> QuasiArityResult:
    """Minimum ess over every support of f, or the factorization bound when too many supports exist."""
    elements, n = f.domain.elements, f.arity
    table = _table(f)
    free = _off_diagonal(table, n)
    if f.codomain.is_rational:
        values = sorted(set(f.values))
    else:
        values = list(f.codomain.elements)
    count = len(values) ** len(free)
    if count > settings.SUPPORT_BUDGET:
        logger.warning(f"{count} supports exceed the budget; using subset factorization")
        return QuasiArityResult(_qa_by_factorization(table, n), fallback=True)
    best = n
    support = dict(table)
    for assignment in itertools.product(values, repeat=len(free)):
        support.update(zip(free, assignment))
        best = min(best, len(_essential_positions(support, elements, n)))
        if best == 0:
            break
    return QuasiArityResult(best)


def oracle_mobius(v: SetFunction) -> MobiusCoefficients:
    """The alternating subset sum, term by term."""
    values = []
    for s in range(1 << v.n):
        total = Fraction(0)
        t = s
        while True:
            sign = -1 if bin(s ^ t).count("1") % 2 else 1
            total += sign * v.values[t]
            if t == 0:
                break
            t = (t - 1) & s
        values.append(total)
    return MobiusCoefficients(v.n, tuple(values))
