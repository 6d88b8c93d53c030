from typing import Callable, Dict, List, Optional, Tuple
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import datetime
from functools import lru_cache, reduce

from src.core.exceptions import ArityGapError, NotALattice
from src.core.extensions import (
    classify_lovasz_gap2,
    classify_owen_gap2,
    eval_lovasz,
    eval_owen,
    gap_lovasz,
    lovasz_extension,
    owen_extension,
)
from src.core.function_algebra import (
    arity_gap,
    essential_variables,
    gap_via_characterization,
    identify,
    is_determined_by_oddsupp,
    is_essential,
    is_totally_symmetric,
    reduce_to_essential,
)
from src.core.function_enumerator import chunk_ranges, function_source
from src.core.oracles import oracle_essl, oracle_gap, oracle_qa
from src.core.order_theory import (
    classify_latpoly_gap2,
    classify_monotone_gap,
    directedness,
    is_distributive,
    is_order_preserving,
    median_form_match,
    minor_monotone_witness,
    structural_props_violations,
)
from src.core.set_functions import (
    characteristic_vector,
    classify_boolean_gap,
    classify_pseudo_boolean_gap,
    to_set_function,
)
from src.models.extension_model import RationalPoint
from src.models.function_model import FiniteFunction
from src.models.poset_model import Lattice, Poset
from src.models.sweep_result import Counterexample, InvariantViolation, SweepConfig, SweepReport

logger = logging.getLogger(__name__)

ESSL_ORACLE_MAX_ARITY = 3
VERTEX_CHECK_MAX_ARITY = 3


@dataclass(frozen=True)
class SweepContext:
    """Order structures prepared once per sweep and shared read-only by the workers."""

    config: SweepConfig
    domain_poset: Optional[Poset]
    codomain_poset: Optional[Poset]
    bidirected: bool
    median_lattice: Optional[Lattice]
    latpoly_lattice: Optional[Lattice]

    @classmethod
    def from_config(cls, config: SweepConfig) -> "SweepContext":
        ordered = config.monotone_only or config.poset_a is not None
        if not ordered:
            return cls(config, None, None, False, None, None)
        P_A = config.domain_poset()
        P_B = None if config.rational_values else config.codomain_poset()
        median_lattice = latpoly_lattice = None
        if P_B is not None and P_A.is_chain():
            try:
                median_lattice = Lattice.from_poset(P_B)
            except NotALattice:
                logger.info(f"Codomain {P_B.carrier.name!r} is not a lattice; median forms not checked")
        if P_B is not None and P_A == P_B:
            try:
                lattice = Lattice.from_poset(P_A)
                latpoly_lattice = lattice if is_distributive(lattice) else None
            except NotALattice:
                pass
        return cls(config, P_A, P_B, directedness(P_A).bidirected, median_lattice, latpoly_lattice)


@lru_cache(maxsize=4)
def _prepared(config: SweepConfig) -> Tuple[int, Callable[[int], FiniteFunction], SweepContext]:
    """Table source and order context, built once per process for each configuration."""
    count, function_at = function_source(config)
    return count, function_at, SweepContext.from_config(config)


def _run_chunk(config: SweepConfig, chunk: range) -> SweepReport:
    _, function_at, context = _prepared(config)
    processor = SweepProcessor()
    partial = SweepReport()
    for index in chunk:
        partial = partial.merge(processor.check_function(index, function_at(index), context))
    return partial


class _Checker:
    """Runs every applicable check on one table and records the outcome in a one-table report."""

    def __init__(self, index: int, f: FiniteFunction, expected: int):
        self.index = index
        self.table = tuple(str(v) for v in f.values)
        self.expected = expected
        self.report = SweepReport(total=1)
        self.report.gap_counts[expected] += 1

    def compare(self, check: str, actual, expected=None) -> None:
        expected = self.expected if expected is None else expected
        self.report.check_counts[check] += 1
        if actual != expected:
            self.report.disagreements.append(
                Counterexample(self.index, check, self.table, str(expected), str(actual)))

    def violate(self, invariant: str, detail: str) -> None:
        self.report.violations.append(InvariantViolation(self.index, invariant, detail))

    def finish(self) -> SweepReport:
        if not self.report.disagreements:
            self.report.agreements = 1
        return self.report


class SweepProcessor:
    """Service verifying every classifier against the oracles over a function space."""

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers

    def run(self, config: SweepConfig) -> SweepReport:
        """Sweep the configured space; the report does not depend on the worker count."""
        try:
            started = time.perf_counter()
            logger.info(f"Sweep started: {config.describe()}")
            count, _, _ = _prepared(config)
            chunks = chunk_ranges(count, config.chunk_size)
            workers = min(self.max_workers or config.workers, len(chunks))
            partials: Dict[int, SweepReport] = {}

            if workers <= 1:
                for number, chunk in enumerate(chunks):
                    partials[number] = _run_chunk(config, chunk)
            else:
                with ProcessPoolExecutor(max_workers=workers) as executor:
                    future_to_chunk = {
                        executor.submit(_run_chunk, config, chunk): number
                        for number, chunk in enumerate(chunks)
                    }
                    for future in as_completed(future_to_chunk):
                        number = future_to_chunk[future]
                        partials[number] = future.result()
                        logger.debug(f"Chunk {number + 1}/{len(chunks)} done")

            report = reduce(SweepReport.merge, (partials[n] for n in sorted(partials)), SweepReport())
            report.config = config
            report.elapsed_seconds = time.perf_counter() - started
            report.finished_at = datetime.now()
            logger.info(f"Sweep finished: {report.total} analysed, {report.disagreement_count} disagreements, "
                        f"{len(report.violations)} violations in {report.elapsed_seconds:.2f}s")
            return report

        except Exception as e:
            logger.error(f"Error in sweep: {e}")
            raise

    def check_function(self, index: int, f: FiniteFunction, context: SweepContext) -> SweepReport:
        if len(essential_variables(f)) < 2:
            return SweepReport(skipped=1)
        checker = _Checker(index, f, oracle_gap(f))
        try:
            reduced, _ = reduce_to_essential(f)
            self._check_general(checker, f, reduced)
            if reduced.domain.is_boolean():
                self._check_boolean_domain(checker, reduced)
            if context.domain_poset is not None and is_order_preserving(
                    f, context.domain_poset, context.codomain_poset):
                self._check_monotone(checker, reduced, context)
        except ArityGapError as e:
            logger.error(f"Check raised on table {index}: {e}")
            checker.compare("exception", type(e).__name__, "none")
        return checker.finish()

    def _check_general(self, checker: _Checker, f: FiniteFunction, reduced: FiniteFunction) -> None:
        gap_report = gap_via_characterization(reduced)
        checker.report.case_counts[gap_report.theorem_case.value] += 1
        checker.compare("characterization", gap_report.gap)
        checker.compare("identification", arity_gap(f))
        n = reduced.arity
        if n <= ESSL_ORACLE_MAX_ARITY:
            checker.compare("essl", n - oracle_essl(f))
        qa = oracle_qa(reduced)
        if not qa.fallback:
            checker.compare("quasi_arity", gap_report.qa, qa.value)
        if n > max(len(reduced.domain), 3):
            if checker.expected > 2:
                checker.violate("willard_bound", f"gap {checker.expected} at n={n}")
            if checker.expected == 2 and not (is_totally_symmetric(reduced) and is_determined_by_oddsupp(reduced)):
                checker.violate("willard_symmetry", "gap 2 without total symmetry and oddsupp determination")

    def _check_boolean_domain(self, checker: _Checker, reduced: FiniteFunction) -> None:
        if not reduced.codomain.is_rational:
            if not reduced.codomain.is_boolean():
                return
            checker.compare("boolean", classify_boolean_gap(reduced).gap)
        checker.compare("pseudo_boolean", classify_pseudo_boolean_gap(reduced).gap)
        if not reduced.codomain.is_rational:
            return
        F = lovasz_extension(reduced)
        checker.compare("lovasz_gap", gap_lovasz(F))
        checker.compare("lovasz_template", 2 if classify_lovasz_gap2(F) else 1)
        P = owen_extension(reduced)
        checker.compare("owen_template", 2 if classify_owen_gap2(P) else 1)
        if reduced.arity <= VERTEX_CHECK_MAX_ARITY:
            v = to_set_function(reduced)
            for mask in range(1 << reduced.arity):
                vertex = RationalPoint(characteristic_vector(mask, reduced.arity))
                if not eval_lovasz(F, vertex) == eval_owen(P, vertex) == v[mask]:
                    checker.violate("vertex_agreement", f"extensions differ from v at {vertex}")

    def _check_monotone(self, checker: _Checker, reduced: FiniteFunction, context: SweepContext) -> None:
        P_A, P_B = context.domain_poset, context.codomain_poset
        if not context.bidirected:
            return
        verdict = classify_monotone_gap(reduced, P_A, P_B)
        checker.compare("monotone", verdict.gap)
        if verdict.certificate is not None and not is_order_preserving(verdict.certificate.h, P_A, P_B):
            checker.violate("certificate_order", "h is not order-preserving")
        for violation in structural_props_violations(reduced, P_A, P_B):
            checker.violate("structural_props", violation)
        for i, j in itertools.permutations(range(1, reduced.arity + 1), 2):
            if minor_monotone_witness(reduced, P_A, P_B, i, j) is None:
                checker.violate("monotone_witness", f"no witness for ({i},{j})")
            if not is_essential(identify(reduced, i, j), j)[0]:
                checker.violate("identified_essential", f"x{j} inessential in f_({i}<-{j})")
        if reduced.arity != 3:
            return
        if context.median_lattice is not None:
            h = median_form_match(reduced, P_A, context.median_lattice)
            checker.compare("median_form", 2 if h is not None else 1)
        if context.latpoly_lattice is not None and classify_latpoly_gap2(reduced, context.latpoly_lattice):
            checker.compare("truncated_median", 2)


def sweep(config: SweepConfig, max_workers: Optional[int] = None) -> SweepReport:
    return SweepProcessor(max_workers).run(config)


def failing_checks(report: SweepReport) -> List[str]:
    return sorted({c.check for c in report.disagreements})
