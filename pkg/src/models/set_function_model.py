from dataclasses import dataclass
from fractions import Fraction
from typing import Any, ClassVar, Dict, FrozenSet, Iterable, Iterator, Sequence, Tuple, Union

Subset = FrozenSet[int]
SubsetKey = Union[int, Iterable[int]]


def mask_of(subset: Iterable[int]) -> int:
    """Bitmask of a subset of [n]; element i sets bit i - 1."""
    mask = 0
    for i in subset:
        mask |= 1 << (i - 1)
    return mask


def subset_of(mask: int) -> Subset:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def permute_mask(mask: int, permutation: Sequence[int]) -> int:
    """Image pi(U) of the subset U encoded by ``mask``; ``permutation`` is 1-based."""
    return mask_of(permutation[i - 1] for i in subset_of(mask))


@dataclass(frozen=True)
class _SubsetMapping:
    """Total map 2^[n] -> Q, indexed by bitmask."""

    n: int
    values: Tuple[Fraction, ...]

    kind: ClassVar[str] = "subsetmap"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Ground set size must be positive, got {self.n}")
        values = tuple(Fraction(v) for v in self.values)
        if len(values) != 1 << self.n:
            raise ValueError(f"Expected {1 << self.n} entries, got {len(values)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, n: int, entries: Dict[Any, Any]):
        """Build from {subset: value}; missing subsets are zero."""
        values = [Fraction(0)] * (1 << n)
        for subset, value in entries.items():
            values[subset if isinstance(subset, int) else mask_of(subset)] = Fraction(value)
        return cls(n, tuple(values))

    @classmethod
    def zeros(cls, n: int):
        return cls(n, (Fraction(0),) * (1 << n))

    def __getitem__(self, key: SubsetKey) -> Fraction:
        return self.values[key if isinstance(key, int) else mask_of(key)]

    def subsets(self) -> Iterator[Subset]:
        return (subset_of(mask) for mask in range(1 << self.n))

    def items(self) -> Iterator[Tuple[Subset, Fraction]]:
        return ((subset_of(mask), value) for mask, value in enumerate(self.values))

    def support(self) -> Tuple[Subset, ...]:
        """Subsets carrying a nonzero value."""
        return tuple(subset_of(mask) for mask, value in enumerate(self.values) if value != 0)

    def permuted(self, permutation: Sequence[int]):
        """New mapping m' with m'(pi(U)) = m(U)."""
        values = [Fraction(0)] * (1 << self.n)
        for mask, value in enumerate(self.values):
            values[permute_mask(mask, permutation)] = value
        return type(self)(self.n, tuple(values))

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "n": self.n,
                "values": {",".join(map(str, sorted(s))) or "{}": str(v) for s, v in self.items()}}


@dataclass(frozen=True)
class SetFunction(_SubsetMapping):
    """v: 2^[n] -> Q."""

    kind: ClassVar[str] = "setfunction"


@dataclass(frozen=True)
class MobiusCoefficients(_SubsetMapping):
    """m_v: 2^[n] -> Q; the coefficients of the multilinear representation."""

    kind: ClassVar[str] = "mobius"


@dataclass(frozen=True)
class BooleanPolynomial:
    """Multilinear polynomial over GF(2): the XOR of its monomials."""

    n: int
    monomials: FrozenSet[Subset]

    def __post_init__(self):
        monomials = frozenset(frozenset(m) for m in self.monomials)
        for monomial in monomials:
            if any(not 1 <= i <= self.n for i in monomial):
                raise ValueError(f"Monomial {sorted(monomial)} leaves [1, {self.n}]")
        object.__setattr__(self, "monomials", monomials)

    @classmethod
    def of(cls, n: int, *monomials: Iterable[int]) -> "BooleanPolynomial":
        return cls(n, frozenset(frozenset(m) for m in monomials))

    def with_constant(self, c: int) -> "BooleanPolynomial":
        return BooleanPolynomial(self.n, self.monomials | {frozenset()} if c else self.monomials - {frozenset()})

    def permuted(self, permutation: Sequence[int]) -> "BooleanPolynomial":
        return BooleanPolynomial(self.n, frozenset(
            frozenset(permutation[i - 1] for i in monomial) for monomial in self.monomials))

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        terms = sorted(self.monomials, key=lambda m: (-len(m), sorted(m)))
        return " ^ ".join("".join(f"x{i}" for i in sorted(m)) or "1" for m in terms)
