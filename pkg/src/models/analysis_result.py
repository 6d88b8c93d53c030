from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.models.function_model import FiniteFunction, VariableMap


class TheoremCase(str, Enum):
    """Which clause of the general arity-gap characterization decided the gap."""

    P_GE_3 = "case_p_ge_3"
    GAP2_QA = "case_gap2_qa"
    GAP2_ODDSUPP = "case_gap2_oddsupp"
    N3_CONDITION = "case_n3_condition"
    GAP1 = "case_gap1"


@dataclass(frozen=True)
class TernaryGapCondition:
    """h and (i1, i2, i3) with f(x1,x0,x0) = h(x_i1), f(x0,x1,x0) = h(x_i2), f(x0,x0,x1) = h(x_i3)."""

    h: FiniteFunction
    indices: Tuple[int, int, int]

    def to_dict(self) -> Dict:
        return {"h": [str(v) for v in self.h.values], "indices": list(self.indices)}


@dataclass
class GapReport:
    """Full diagnostic record of one fully essential function."""

    arity: int
    essential_variables: Tuple[int, ...]
    ess: int
    per_pair_minor_ess: Dict[Tuple[int, int], int]
    essl: int
    gap: int
    qa: int
    oddsupp_determined: bool
    theorem_case: TheoremCase
    ternary_condition: Optional[TernaryGapCondition] = None

    @property
    def identification_gap(self) -> int:
        """gap recomputed from the identification minors alone."""
        return self.ess - max(self.per_pair_minor_ess.values())

    def is_consistent(self) -> bool:
        return self.gap == self.ess - self.essl == self.identification_gap

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {
            "arity": self.arity,
            "essential_variables": list(self.essential_variables),
            "ess": self.ess,
            "per_pair_minor_ess": {f"{i},{j}": e for (i, j), e in sorted(self.per_pair_minor_ess.items())},
            "essl": self.essl,
            "gap": self.gap,
            "qa": self.qa,
            "oddsupp_determined": self.oddsupp_determined,
            "theorem_case": self.theorem_case.value,
            "ternary_condition": self.ternary_condition.to_dict() if self.ternary_condition else None,
        }


@dataclass(frozen=True)
class BooleanGapClass:
    """Verdict of the Boolean classifier: gap 1, or gap 2 with the matched template."""

    gap: int
    template: Optional[str] = None
    constant: Optional[int] = None
    permutation: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> Dict:
        return {"gap": self.gap, "template": self.template, "c": self.constant,
                "permutation": list(self.permutation) if self.permutation else None}


@dataclass(frozen=True)
class PseudoBooleanGapClass:
    gap: int
    reason: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        details = {}
        for key, value in self.details.items():
            if isinstance(value, FiniteFunction):
                details[key] = [str(v) for v in value.values]
            elif isinstance(value, BooleanGapClass):
                details[key] = value.to_dict()
            elif isinstance(value, dict):
                details[key] = {str(k): str(v) for k, v in value.items()}
            else:
                details[key] = str(value)
        return {"gap": self.gap, "reason": self.reason, "details": details}


@dataclass(frozen=True)
class MonotoneGap2Certificate:
    """h(x) = f(x,x,x) together with the outcome of the three identification identities."""

    h: FiniteFunction
    checks: Tuple[bool, bool, bool]

    def is_valid(self) -> bool:
        return all(self.checks) and not self.h.is_constant()

    def to_dict(self) -> Dict:
        return {"h": [str(v) for v in self.h.values], "checks": list(self.checks)}


@dataclass(frozen=True)
class MonotoneGapClass:
    gap: int
    certificate: Optional[MonotoneGap2Certificate] = None

    def to_dict(self) -> Dict:
        return {"gap": self.gap,
                "certificate": self.certificate.to_dict() if self.certificate else None}


@dataclass(frozen=True)
class AggregationClass:
    """Arity-gap verdict for an aggregation function on a finite rational chain."""

    gap: int
    arity: int
    h: Optional[FiniteFunction] = None

    def to_dict(self) -> Dict:
        return {"gap": self.gap, "arity": self.arity,
                "h": [str(v) for v in self.h.values] if self.h else None}


@dataclass
class AnalysisResult:
    """Everything known about one input table after reduction to essential form."""

    source_arity: int
    essential_arity: int
    embedding: Optional[VariableMap]
    gap_report: Optional[GapReport]
    verdicts: Dict[str, Any]
    notes: List[str]
    analysis_timestamp: Optional[datetime] = None

    def __post_init__(self):
        if self.analysis_timestamp is None:
            self.analysis_timestamp = datetime.now()

    @property
    def gap(self) -> Optional[int]:
        return self.gap_report.gap if self.gap_report else None

    def to_dict(self) -> Dict:
        """Convert to dictionary representation."""
        return {
            "source_arity": self.source_arity,
            "essential_arity": self.essential_arity,
            "embedding": self.embedding.to_dict() if self.embedding else None,
            "gap_report": self.gap_report.to_dict() if self.gap_report else None,
            "verdicts": {name: (v.to_dict() if hasattr(v, "to_dict") else v)
                         for name, v in sorted(self.verdicts.items())},
            "notes": self.notes,
            "analysis_timestamp": self.analysis_timestamp.isoformat(),
        }
