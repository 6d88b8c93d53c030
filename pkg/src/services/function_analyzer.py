from typing import Any, Dict, List, Optional
import logging

from src.core.exceptions import ArityGapError, ConstantFunctionError, NotALattice
from src.core.extensions import classify_lovasz_gap2, lovasz_extension
from src.core.function_algebra import gap_via_characterization, reduce_to_essential
from src.core.order_theory import (
    classify_latpoly_gap2,
    classify_monotone_gap,
    directedness,
    is_distributive,
    is_order_preserving,
    median_form_match,
)
from src.core.set_functions import anf, classify_boolean_gap, classify_pseudo_boolean_gap
from src.models.analysis_result import AnalysisResult
from src.models.function_model import FiniteFunction
from src.models.poset_model import Lattice, Poset

logger = logging.getLogger(__name__)


class FunctionAnalyzer:
    """Core service bundling the gap report and every applicable classifier for one table."""

    def analyze(self, f: FiniteFunction, poset_a: Optional[Poset] = None,
                poset_b: Optional[Poset] = None) -> AnalysisResult:
        """Reduce f to its essential variables, then run each classifier whose hypotheses hold."""
        try:
            try:
                reduced, embedding = reduce_to_essential(f)
            except ConstantFunctionError:
                return AnalysisResult(f.arity, 0, None, None, {}, ["constant function: no essential variables"])

            notes: List[str] = []
            if reduced.arity != f.arity:
                notes.append(f"reduced from arity {f.arity} to the essential variables {list(embedding.mapping)}")
            if reduced.arity < 2:
                notes.append("fewer than two essential variables: the arity gap is undefined")
                return AnalysisResult(f.arity, reduced.arity, embedding, None, {}, notes)

            gap_report = gap_via_characterization(reduced)
            if not gap_report.is_consistent():
                notes.append("characterization and identification minors disagree")
            verdicts = self._boolean_verdicts(reduced, notes)
            if poset_a is not None:
                verdicts.update(self._order_verdicts(f, reduced, poset_a, poset_b, notes))

            return AnalysisResult(
                source_arity=f.arity,
                essential_arity=reduced.arity,
                embedding=embedding,
                gap_report=gap_report,
                verdicts=verdicts,
                notes=notes,
            )

        except Exception as e:
            logger.error(f"Error analyzing function: {e}")
            raise

    def _boolean_verdicts(self, reduced: FiniteFunction, notes: List[str]) -> Dict[str, Any]:
        verdicts: Dict[str, Any] = {}
        if not reduced.domain.is_boolean():
            return verdicts
        if not reduced.codomain.is_rational and reduced.codomain.is_boolean():
            verdicts["boolean"] = classify_boolean_gap(reduced)
            polynomial = anf(reduced)
            notes.append(f"ANF: {polynomial} (degree {polynomial.degree()})")
        try:
            verdicts["pseudo_boolean"] = classify_pseudo_boolean_gap(reduced)
            match = classify_lovasz_gap2(lovasz_extension(reduced))
            verdicts["lovasz"] = match if match is not None else "no gap-2 template"
        except ArityGapError as e:
            notes.append(f"pseudo-Boolean classifiers skipped: {e}")
        return verdicts

    def _order_verdicts(self, f: FiniteFunction, reduced: FiniteFunction, poset_a: Poset,
                        poset_b: Optional[Poset], notes: List[str]) -> Dict[str, Any]:
        verdicts: Dict[str, Any] = {"directedness": directedness(poset_a)}
        if not is_order_preserving(f, poset_a, poset_b):
            notes.append("f is not order-preserving: order classifiers skipped")
            return verdicts
        if not verdicts["directedness"].bidirected:
            notes.append("domain poset is not bidirected: monotone classifier skipped")
        else:
            verdicts["monotone"] = classify_monotone_gap(reduced, poset_a, poset_b)
        if reduced.arity != 3 or poset_b is None:
            return verdicts
        try:
            lattice_b = Lattice.from_poset(poset_b)
        except NotALattice:
            notes.append("codomain poset is not a lattice: median forms skipped")
            return verdicts
        if poset_a.is_chain():
            h = median_form_match(reduced, poset_a, lattice_b)
            verdicts["median_form"] = (f"h = ({', '.join(str(v) for v in h.values)})"
                                       if h is not None else "not a median form")
        if poset_a == poset_b and is_distributive(lattice_b):
            bounds = classify_latpoly_gap2(reduced, lattice_b)
            verdicts["truncated_median"] = (f"a={bounds[0]}, b={bounds[1]}"
                                            if bounds else "not a truncated median")
        return verdicts
