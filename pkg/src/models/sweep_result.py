from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.settings import settings
from src.models.function_model import RATIONAL, Carrier, Codomain
from src.models.poset_model import Poset, poset_by_name


class SweepConfig(BaseModel):
    """Which function space a sweep walks and how."""

    model_config = ConfigDict(frozen=True)

    domain_size: int = Field(2, ge=1)
    codomain_size: int = Field(2, ge=1)
    arity: int = Field(3, ge=1)
    mode: Literal["exhaustive", "sample"] = "exhaustive"
    sample_count: int = Field(1000, ge=1)
    seed: Optional[int] = None
    monotone_only: bool = False
    poset_a: Optional[str] = None
    poset_b: Optional[str] = None
    rational_values: Optional[Tuple[str, ...]] = None
    table_budget: int = Field(default_factory=lambda: settings.SWEEP_TABLE_BUDGET, ge=1)
    workers: int = Field(default_factory=lambda: settings.MAX_WORKERS, ge=1)
    chunk_size: int = Field(default_factory=lambda: settings.SWEEP_CHUNK_SIZE, ge=1)

    @model_validator(mode="before")
    @classmethod
    def derive_sizes(cls, data):
        """Sizes left out (or None) are read off the named posets and the rational values."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if data.get("domain_size") is None:
            data.pop("domain_size", None)
            if data.get("poset_a") is not None:
                data["domain_size"] = len(poset_by_name(data["poset_a"]))
        if data.get("codomain_size") is None:
            data.pop("codomain_size", None)
            if data.get("poset_b") is not None:
                data["codomain_size"] = len(poset_by_name(data["poset_b"]))
            elif data.get("rational_values") is not None:
                data["codomain_size"] = len(data["rational_values"])
        return data

    @field_validator("rational_values")
    @classmethod
    def validate_rational_values(cls, values):
        if values is None:
            return None
        parsed = [Fraction(v) for v in values]
        if len(set(parsed)) != len(parsed):
            raise ValueError(f"Repeated codomain values in {values}")
        return tuple(str(v) for v in sorted(parsed))

    @model_validator(mode="after")
    def validate_space(self) -> "SweepConfig":
        if self.mode == "sample" and self.seed is None:
            raise ValueError("Sample mode requires a seed")
        if self.rational_values is not None:
            if self.poset_b is not None:
                raise ValueError("A rational codomain is ordered by value; drop the codomain poset")
            if self.codomain_size != len(self.rational_values):
                raise ValueError(f"codomain_size {self.codomain_size} differs from "
                                 f"{len(self.rational_values)} rational values")
        for name, size in ((self.poset_a, self.domain_size), (self.poset_b, self.codomain_size)):
            if name is not None and len(poset_by_name(name)) != size:
                raise ValueError(f"Poset {name!r} has {len(poset_by_name(name))} elements, expected {size}")
        if self.mode == "exhaustive":
            count = self.codomain_size ** (self.domain_size ** self.arity)
            if count > self.table_budget:
                raise ValueError(f"Exhaustive mode over {count} tables exceeds the budget {self.table_budget}")
        return self

    def domain_carrier(self) -> Carrier:
        if self.poset_a is not None:
            return poset_by_name(self.poset_a).carrier
        return Carrier.of_size(self.domain_size)

    def codomain(self) -> Codomain:
        if self.rational_values is not None:
            return RATIONAL
        if self.poset_b is not None:
            return poset_by_name(self.poset_b).carrier
        return Carrier.of_size(self.codomain_size, name="B")

    def codomain_values(self) -> Tuple:
        if self.rational_values is not None:
            return tuple(Fraction(v) for v in self.rational_values)
        return self.codomain().elements

    def domain_poset(self) -> Poset:
        """The named domain poset; the index chain when none is named."""
        if self.poset_a is not None:
            return poset_by_name(self.poset_a)
        return Poset.chain_of(self.domain_carrier())

    def codomain_poset(self) -> Poset:
        if self.rational_values is not None:
            return Poset.chain_of(Carrier.rational_chain(self.codomain_values(), name="values"))
        if self.poset_b is not None:
            return poset_by_name(self.poset_b)
        return Poset.chain_of(self.codomain())

    def describe(self) -> str:
        codomain = ("{" + ", ".join(self.rational_values) + "}" if self.rational_values
                    else self.poset_b or str(self.codomain_size))
        space = f"|A|={self.poset_a or self.domain_size} n={self.arity} B={codomain}"
        stream = "exhaustive" if self.mode == "exhaustive" else f"sample x{self.sample_count} seed={self.seed}"
        return f"{space} {stream}" + (" monotone" if self.monotone_only else "")


@dataclass(frozen=True)
class Counterexample:
    """A table on which a classifier and the oracle disagree."""

    index: int
    check: str
    table: Tuple[str, ...]
    expected: str
    actual: str

    def to_line(self) -> str:
        return f"{self.index};{self.check};expected={self.expected};actual={self.actual};table={' '.join(self.table)}"


@dataclass(frozen=True)
class InvariantViolation:
    index: int
    invariant: str
    detail: str

    def to_line(self) -> str:
        return f"{self.index};{self.invariant};{self.detail}"


@dataclass
class SweepReport:
    """Aggregated outcome of a sweep; merging is order-normalized by table index."""

    total: int = 0
    agreements: int = 0
    skipped: int = 0
    disagreements: List[Counterexample] = field(default_factory=list)
    violations: List[InvariantViolation] = field(default_factory=list)
    gap_counts: Counter = field(default_factory=Counter)
    case_counts: Counter = field(default_factory=Counter)
    check_counts: Counter = field(default_factory=Counter)
    elapsed_seconds: float = 0.0
    config: Optional[SweepConfig] = None
    finished_at: Optional[datetime] = None

    @property
    def disagreement_count(self) -> int:
        return len({c.index for c in self.disagreements})

    def is_consistent(self) -> bool:
        return self.total == self.agreements + self.disagreement_count

    def is_clean(self) -> bool:
        return not self.disagreements and not self.violations

    def merge(self, other: "SweepReport") -> "SweepReport":
        merged = SweepReport(
            total=self.total + other.total,
            agreements=self.agreements + other.agreements,
            skipped=self.skipped + other.skipped,
            disagreements=sorted(self.disagreements + other.disagreements, key=lambda c: (c.index, c.check)),
            violations=sorted(self.violations + other.violations, key=lambda v: (v.index, v.invariant)),
            gap_counts=self.gap_counts + other.gap_counts,
            case_counts=self.case_counts + other.case_counts,
            check_counts=self.check_counts + other.check_counts,
            elapsed_seconds=self.elapsed_seconds + other.elapsed_seconds,
            config=self.config or other.config,
        )
        return merged

    def tally_frame(self) -> pd.DataFrame:
        rows = [("gap", str(k), v) for k, v in sorted(self.gap_counts.items())]
        rows += [("case", k, v) for k, v in sorted(self.case_counts.items())]
        rows += [("check", k, v) for k, v in sorted(self.check_counts.items())]
        return pd.DataFrame(rows, columns=["tally", "key", "count"])

    def machine_block(self) -> str:
        """key=value lines; identical for identical configurations."""
        lines = [
            f"config={self.config.describe() if self.config else ''}",
            f"total={self.total}",
            f"agreements={self.agreements}",
            f"disagreements={self.disagreement_count}",
            f"skipped={self.skipped}",
            f"violations={len(self.violations)}",
        ]
        lines += [f"gap.{k}={v}" for k, v in sorted(self.gap_counts.items())]
        lines += [f"case.{k}={v}" for k, v in sorted(self.case_counts.items())]
        lines += [f"check.{k}={v}" for k, v in sorted(self.check_counts.items())]
        lines += [f"disagreement.{i}={c.to_line()}" for i, c in enumerate(self.disagreements)]
        lines += [f"violation.{i}={v.to_line()}" for i, v in enumerate(self.violations)]
        return "\n".join(lines)

    def human_text(self) -> str:
        verdict = "all checks agree" if self.is_clean() else "DISAGREEMENTS FOUND"
        parts = [
            f"Sweep {self.config.describe() if self.config else ''}: {verdict}",
            f"  analysed {self.total} tables ({self.skipped} skipped with fewer than two essential variables)",
            f"  {self.agreements} agreements, {self.disagreement_count} disagreements, "
            f"{len(self.violations)} invariant violations",
            f"  wall-clock {self.elapsed_seconds:.2f}s",
        ]
        frame = self.tally_frame()
        if not frame.empty:
            parts.append(frame.to_string(index=False))
        for counterexample in self.disagreements[:10]:
            parts.append(f"  disagreement: {counterexample.to_line()}")
        for violation in self.violations[:10]:
            parts.append(f"  violation: {violation.to_line()}")
        return "\n".join(parts)

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {
            "config": self.config.model_dump() if self.config else None,
            "total": self.total,
            "agreements": self.agreements,
            "disagreements": [c.to_line() for c in self.disagreements],
            "violations": [v.to_line() for v in self.violations],
            "skipped": self.skipped,
            "gap_counts": dict(self.gap_counts),
            "case_counts": dict(self.case_counts),
            "check_counts": dict(self.check_counts),
            "elapsed_seconds": self.elapsed_seconds,
            "finished_at": self.finished_at.isoformat() if self.finished_at else None,
        }
