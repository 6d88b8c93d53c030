from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, Optional, Sequence, Tuple

from src.models.set_function_model import MobiusCoefficients


@dataclass(frozen=True)
class RationalPoint:
    """A point of Q^n with exact coordinates."""

    coordinates: Tuple[Fraction, ...]

    def __post_init__(self):
        coordinates = tuple(Fraction(c) for c in self.coordinates)
        if not coordinates:
            raise ValueError("A point needs at least one coordinate")
        object.__setattr__(self, "coordinates", coordinates)

    @classmethod
    def parse(cls, text: str) -> "RationalPoint":
        """Read ``"1/3,2/3"`` (commas or whitespace between coordinates)."""
        tokens = text.replace(",", " ").split()
        try:
            return cls(tuple(Fraction(token) for token in tokens))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Cannot read point {text!r}: {e}") from e

    def __len__(self) -> int:
        return len(self.coordinates)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coordinates)

    def __getitem__(self, index: int) -> Fraction:
        return self.coordinates[index]

    def combine(self, other: "RationalPoint", weight: Fraction) -> "RationalPoint":
        """weight * self + (1 - weight) * other."""
        if len(other) != len(self):
            raise ValueError(f"Points of dimensions {len(self)} and {len(other)} cannot be combined")
        weight = Fraction(weight)
        return RationalPoint(tuple(weight * x + (1 - weight) * y for x, y in zip(self, other)))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coordinates) + ")"


@dataclass(frozen=True)
class SimplexId:
    """The standard simplex {x : x_sigma(1) <= ... <= x_sigma(n)}; sigma is 1-based."""

    permutation: Tuple[int, ...]

    def __post_init__(self):
        permutation = tuple(int(k) for k in self.permutation)
        if sorted(permutation) != list(range(1, len(permutation) + 1)):
            raise ValueError(f"{permutation} is not a permutation of 1..{len(permutation)}")
        object.__setattr__(self, "permutation", permutation)

    @property
    def n(self) -> int:
        return len(self.permutation)

    def suffix_masks(self) -> Tuple[int, ...]:
        """Bitmasks of S_k = {sigma(k), ..., sigma(n)} for k = 1..n+1 (the last one empty)."""
        masks = [0]
        for k in reversed(self.permutation):
            masks.append(masks[-1] | 1 << (k - 1))
        return tuple(reversed(masks))


@dataclass(frozen=True)
class OwenExtension:
    """P(x) = sum_S m(S) prod_{i in S} x_i."""

    coefficients: MobiusCoefficients

    @property
    def n(self) -> int:
        return self.coefficients.n


@dataclass(frozen=True)
class LovaszExtension:
    """F(x) = sum_S m(S) min_{i in S} x_i, with the empty minimum read as 1."""

    coefficients: MobiusCoefficients

    @property
    def n(self) -> int:
        return self.coefficients.n


@dataclass(frozen=True)
class SimplexLinearForm:
    """F(x) = constant + sum_i weights[i-1] * x_i on one standard simplex."""

    simplex: SimplexId
    constant: Fraction
    weights: Tuple[Fraction, ...]

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return self.constant + sum((w * xi for w, xi in zip(self.weights, x)), Fraction(0))


class LovaszForm(str, Enum):
    FORM_I = "form_i"
    FORM_II = "form_ii"
    FORM_III = "form_iii"
    FORM_IV = "form_iv"
    FORM_V = "form_v"


@dataclass(frozen=True)
class LovaszGap2Match:
    """A gap-2 template with recovered parameters; ``permutation`` maps template variables onto f's."""

    template: LovaszForm
    a: Fraction
    b: Fraction
    c: Optional[Fraction]
    permutation: Tuple[int, ...]

    def to_dict(self) -> Dict:
        return {
            "template": self.template.value,
            "a": str(self.a),
            "b": str(self.b),
            "c": None if self.c is None else str(self.c),
            "permutation": list(self.permutation),
        }
