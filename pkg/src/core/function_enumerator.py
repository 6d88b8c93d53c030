"""Deterministic enumeration and seeded sampling of function tables.

Tables are numbered in base-|B| counter order: the table with number t puts
digit ``(t // |B|^(N-1-p)) % |B|`` at position p of the lexicographic tuple
order, so the first tuple is the most significant digit.

Sampling draws from SplitMix64 (Steele, Lea and Flood): the state advances by
0x9E3779B97F4A7C15 and each output is mixed with the multipliers
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. Sample number ``index`` of a sweep
seeds its own generator with ``seed + index * 0x9E3779B97F4A7C15 (mod 2^64)``
and draws one value per table position as ``next() % |B|``; monotone samples
draw one extra value first, whose low bit selects bottom-up (0) or top-down (1)
assignment. Ternary monotone samples draw one more value before that: when its
low bit is 0 the attempt first samples a unary h (same scheme) and fixes every
tuple with a repeated value v to h(v), so that gap-2 tables turn up; the
remaining positions are then assigned as above.
"""

import logging
from functools import cached_property
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from src.core.exceptions import BudgetExceeded
from src.models.function_model import FiniteFunction
from src.models.poset_model import Poset
from src.models.sweep_result import SweepConfig

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MAX_MONOTONE_ATTEMPTS = 100


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound

    @classmethod
    def for_sample(cls, seed: int, index: int) -> "SplitMix64":
        return cls(seed + index * GOLDEN_GAMMA)


class MonotoneTableSpace:
    """Single-coordinate order constraints between positions of the table of f: P_A^n -> P_B."""

    def __init__(self, P_A: Poset, arity: int, P_B: Poset):
        self.P_A = P_A
        self.P_B = P_B
        self.arity = arity
        k = len(P_A)
        self.size = k ** arity
        self.coordinates = np.indices((k,) * arity).reshape(arity, -1).T
        self.weights = k ** np.arange(arity - 1, -1, -1)

    @cached_property
    def below(self) -> Tuple[Tuple[int, ...], ...]:
        """below[p]: positions q whose tuple is a single-coordinate step under that of p."""
        lower: List[List[int]] = [[] for _ in range(self.size)]
        for p, coordinate in enumerate(self.coordinates):
            for axis in range(self.arity):
                for u, v in self.P_A.strict_pairs:
                    if coordinate[axis] == v:
                        shifted = coordinate.copy()
                        shifted[axis] = u
                        lower[p].append(int(shifted @ self.weights))
        return tuple(tuple(sorted(set(q))) for q in lower)

    @cached_property
    def above(self) -> Tuple[Tuple[int, ...], ...]:
        upper: List[List[int]] = [[] for _ in range(self.size)]
        for p, lower in enumerate(self.below):
            for q in lower:
                upper[q].append(p)
        return tuple(tuple(sorted(q)) for q in upper)

    @cached_property
    def linear_extension(self) -> Tuple[int, ...]:
        """Positions sorted by the sum of coordinate ranks, then by position."""
        ranks = self.P_A.ranks()
        height = ranks[self.coordinates].sum(axis=1)
        return tuple(int(p) for p in np.lexsort((np.arange(self.size), height)))

    def enumerate(self) -> Iterator[Tuple[int, ...]]:
        """Every order-preserving code table, in base-|B| counter order."""
        leq = self.P_B.leq_matrix
        m = len(self.P_B)
        codes = [0] * self.size
        constraints = [
            ([q for q in self.below[p] if q < p], [q for q in self.above[p] if q < p])
            for p in range(self.size)
        ]

        def extend(p: int) -> Iterator[Tuple[int, ...]]:
            if p == self.size:
                yield tuple(codes)
                return
            lower, upper = constraints[p]
            for value in range(m):
                if all(leq[codes[q], value] for q in lower) and all(leq[value, codes[q]] for q in upper):
                    codes[p] = value
                    yield from extend(p + 1)

        yield from extend(0)

    @cached_property
    def unary(self) -> "MonotoneTableSpace":
        return MonotoneTableSpace(self.P_A, 1, self.P_B)

    def diagonal_seed(self, rng: SplitMix64) -> Optional[Dict[int, int]]:
        """Codes for every ternary tuple with a repeated value v, all set to h(v) for a sampled unary h.

        Two such tuples s <= t share a position of their repeated values, so the seed is monotone.
        """
        if self.arity != 3:
            raise ValueError("Diagonal seeding is defined for ternary tables")
        h = self.unary.sample(rng)
        if h is None:
            return None
        seed = {}
        for p, (x, y, z) in enumerate(self.coordinates):
            if x == y or x == z:
                seed[p] = h[x]
            elif y == z:
                seed[p] = h[y]
        return seed

    def sample(self, rng: SplitMix64, prescribed: Optional[Dict[int, int]] = None) -> Optional[Tuple[int, ...]]:
        """Ordered assignment along a linear extension, each value drawn among the feasible ones.

        Positions in ``prescribed`` keep their codes and draw nothing.
        """
        leq = self.P_B.leq_matrix
        m = len(self.P_B)
        top_down = rng.next() & 1
        order = self.linear_extension[::-1] if top_down else self.linear_extension
        codes = [-1] * self.size
        for p, code in (prescribed or {}).items():
            codes[p] = code
        for p in order:
            if codes[p] >= 0:
                continue
            feasible = [
                value for value in range(m)
                if all(leq[codes[q], value] for q in self.below[p] if codes[q] >= 0)
                and all(leq[value, codes[q]] for q in self.above[p] if codes[q] >= 0)
            ]
            if not feasible:
                return None
            codes[p] = feasible[rng.below(len(feasible))]
        return tuple(codes)


def table_count(config: SweepConfig) -> int:
    return config.codomain_size ** (config.domain_size ** config.arity)


def _build(config: SweepConfig, codes: Tuple[int, ...]) -> FiniteFunction:
    values = config.codomain_values()
    return FiniteFunction(config.domain_carrier(), config.arity, config.codomain(),
                          tuple(values[c] for c in codes))


def table_at(config: SweepConfig, index: int) -> FiniteFunction:
    m = config.codomain_size
    size = config.domain_size ** config.arity
    digits = []
    for _ in range(size):
        index, digit = divmod(index, m)
        digits.append(digit)
    return _build(config, tuple(reversed(digits)))


def _monotone_space(config: SweepConfig) -> MonotoneTableSpace:
    return MonotoneTableSpace(config.domain_poset(), config.arity, config.codomain_poset())


def sample_at(config: SweepConfig, index: int, space: Optional[MonotoneTableSpace] = None) -> FiniteFunction:
    rng = SplitMix64.for_sample(config.seed, index)
    if not config.monotone_only:
        size = config.domain_size ** config.arity
        return _build(config, tuple(rng.below(config.codomain_size) for _ in range(size)))
    space = space or _monotone_space(config)
    for _ in range(MAX_MONOTONE_ATTEMPTS):
        prescribed = None
        if config.arity == 3 and rng.next() & 1 == 0:
            prescribed = space.diagonal_seed(rng)
            if prescribed is None:
                continue
        codes = space.sample(rng, prescribed)
        if codes is not None:
            return _build(config, codes)
    raise BudgetExceeded(f"No order-preserving table found for sample {index}")


def function_source(config: SweepConfig) -> Tuple[int, Callable[[int], FiniteFunction]]:
    """(number of tables, table by index) for the configured stream."""
    if config.mode == "sample":
        space = _monotone_space(config) if config.monotone_only else None
        return config.sample_count, lambda index: sample_at(config, index, space)
    count = table_count(config)
    if count > config.table_budget:
        raise BudgetExceeded(f"Exhaustive sweep over {count} tables exceeds the budget {config.table_budget}")
    if not config.monotone_only:
        return count, lambda index: table_at(config, index)
    monotone = [_build(config, codes) for codes in _monotone_space(config).enumerate()]
    logger.info(f"{len(monotone)} order-preserving tables out of {count}")
    return len(monotone), monotone.__getitem__


def enumerate_functions(config: SweepConfig) -> Iterator[FiniteFunction]:
    count, function_at = function_source(config)
    return (function_at(index) for index in range(count))


def chunk_ranges(count: int, chunk_size: int) -> List[range]:
    return [range(start, min(start + chunk_size, count)) for start in range(0, count, chunk_size)]
