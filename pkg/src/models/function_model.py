import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, Iterator, Optional, Tuple, Union

import numpy as np

Element = Any


@dataclass(frozen=True)
class Carrier:
    """Finite set of element symbols with a fixed index order."""

    name: str = field(compare=False)
    elements: Tuple[Element, ...]

    is_rational = False

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise ValueError(f"Carrier {self.name!r} has no elements")
        if len(set(elements)) != len(elements):
            raise ValueError(f"Carrier {self.name!r} has repeated elements: {elements}")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def of_size(cls, size: int, name: str = "A") -> "Carrier":
        return cls(name, tuple(range(size)))

    @classmethod
    def boolean(cls) -> "Carrier":
        return cls("bool", (0, 1))

    @classmethod
    def rational_chain(cls, points: Iterable[Any], name: str = "chain") -> "Carrier":
        """Carrier of distinct rationals sorted increasingly."""
        return cls(name, tuple(sorted({Fraction(p) for p in points})))

    @cached_property
    def _index(self) -> Dict[Element, int]:
        return {element: i for i, element in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def index_of(self, element: Element) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise ValueError(f"{element!r} is not an element of {self.name!r}") from None

    def contains(self, value: Any) -> bool:
        try:
            return value in self._index
        except TypeError:
            return False

    def is_boolean(self) -> bool:
        return self.elements == (0, 1)


@dataclass(frozen=True)
class RationalCodomain:
    """Marker codomain: exact rationals (the pseudo-Boolean codomain)."""

    name: str = field(default="rational", compare=False)

    is_rational = True

    def contains(self, value: Any) -> bool:
        return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


RATIONAL = RationalCodomain()

Codomain = Union[Carrier, RationalCodomain]


@dataclass(frozen=True)
class FiniteFunction:
    """Total table of f: A^n -> B, stored in lexicographic tuple order.

    The first coordinate is the most significant one, so the table is the
    C-order ravel of the integer grid returned by ``grid``.
    """

    domain: Carrier
    arity: int
    codomain: Codomain
    values: Tuple[Any, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError(f"Arity must be positive, got {self.arity}")
        values = tuple(self.values)
        if self.codomain.is_rational:
            values = tuple(Fraction(v) for v in values)
        expected = len(self.domain) ** self.arity
        if len(values) != expected:
            raise ValueError(f"Table has {len(values)} entries, expected {expected}")
        for value in values:
            if not self.codomain.contains(value):
                raise ValueError(f"Value {value!r} is not in codomain {self.codomain.name!r}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, domain: Carrier, arity: int, codomain: Codomain,
                      fn: Callable[..., Any]) -> "FiniteFunction":
        values = tuple(fn(*args) for args in itertools.product(domain.elements, repeat=arity))
        return cls(domain, arity, codomain, values)

    @classmethod
    def constant(cls, domain: Carrier, arity: int, codomain: Codomain, value: Any) -> "FiniteFunction":
        return cls(domain, arity, codomain, (value,) * len(domain) ** arity)

    @classmethod
    def projection(cls, domain: Carrier, arity: int, index: int) -> "FiniteFunction":
        return cls.from_callable(domain, arity, domain, lambda *args: args[index - 1])

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (len(self.domain),) * self.arity

    def tuples(self) -> Iterator[Tuple[Element, ...]]:
        return itertools.product(self.domain.elements, repeat=self.arity)

    def position_of(self, args: Tuple[Element, ...]) -> int:
        if len(args) != self.arity:
            raise ValueError(f"Expected {self.arity} arguments, got {len(args)}")
        k = len(self.domain)
        position = 0
        for element in args:
            position = position * k + self.domain.index_of(element)
        return position

    def __call__(self, *args: Element) -> Any:
        return self.values[self.position_of(args)]

    @cached_property
    def levels(self) -> Tuple[Any, ...]:
        """Codomain values in code order (carrier order, or increasing rationals)."""
        if self.codomain.is_rational:
            return tuple(sorted(set(self.values)))
        return self.codomain.elements

    @cached_property
    def grid(self) -> np.ndarray:
        """Integer codes of the values, shaped (|A|,) * n."""
        code_of = {value: code for code, value in enumerate(self.levels)}
        codes = np.fromiter((code_of[v] for v in self.values), dtype=np.int64, count=self.size)
        codes = codes.reshape(self.shape)
        codes.setflags(write=False)
        return codes

    def with_grid(self, codes: np.ndarray, arity: Optional[int] = None) -> "FiniteFunction":
        """Build a function on the same carriers from a code grid of this function."""
        levels = self.levels
        values = tuple(levels[c] for c in np.asarray(codes).ravel().tolist())
        return FiniteFunction(self.domain, self.arity if arity is None else arity, self.codomain, values)

    def range_values(self) -> Tuple[Any, ...]:
        present = set(self.values)
        return tuple(v for v in self.levels if v in present)

    def is_constant(self) -> bool:
        return all(v == self.values[0] for v in self.values)

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {
            "domain": [str(e) for e in self.domain.elements],
            "arity": self.arity,
            "codomain": "rational" if self.codomain.is_rational else [str(e) for e in self.codomain.elements],
            "table": [str(v) for v in self.values],
        }


@dataclass(frozen=True)
class VariableMap:
    """sigma: [m] -> [n] with 1-based indices; f(x) = g(x_sigma(1), ..., x_sigma(m))."""

    source_arity: int
    target_arity: int
    mapping: Tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(k) for k in self.mapping)
        if len(mapping) != self.source_arity:
            raise ValueError(f"Map has {len(mapping)} entries, expected {self.source_arity}")
        if any(not 1 <= k <= self.target_arity for k in mapping):
            raise ValueError(f"Map {mapping} leaves [1, {self.target_arity}]")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, n: int) -> "VariableMap":
        return cls(n, n, tuple(range(1, n + 1)))

    @classmethod
    def identification(cls, n: int, i: int, j: int) -> "VariableMap":
        """Identity except sigma(i) = j (the substitution of x_j for x_i)."""
        mapping = list(range(1, n + 1))
        mapping[i - 1] = j
        return cls(n, n, tuple(mapping))

    def is_permutation(self) -> bool:
        return self.source_arity == self.target_arity and len(set(self.mapping)) == self.source_arity

    def to_dict(self) -> Dict:
        return {"source_arity": self.source_arity, "target_arity": self.target_arity,
                "mapping": list(self.mapping)}


@dataclass(frozen=True)
class EssentialityWitness:
    index: int
    base: Tuple[Element, ...]
    replacement: Element

    def altered(self) -> Tuple[Element, ...]:
        """The base tuple with position ``index`` replaced."""
        altered = list(self.base)
        altered[self.index - 1] = self.replacement
        return tuple(altered)
