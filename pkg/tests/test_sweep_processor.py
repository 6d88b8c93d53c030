import os

import pytest

from src.models.function_model import FiniteFunction
from src.models.sweep_result import SweepConfig
from src.services.sweep_processor import SweepContext, SweepProcessor, failing_checks, sweep
from tests.factories import BOOL


def test_binary_boolean_sweep():
    report = sweep(SweepConfig(domain_size=2, codomain_size=2, arity=2, chunk_size=5))
    assert report.total == 10
    assert report.skipped == 6
    assert report.gap_counts == {1: 4, 2: 6}
    assert report.is_clean()
    assert report.is_consistent()
    assert report.check_counts["boolean"] == 10


def test_ternary_boolean_sweep():
    report = sweep(SweepConfig(domain_size=2, codomain_size=2, arity=3))
    assert report.total == 248
    assert report.is_clean()
    assert failing_checks(report) == []


def test_monotone_sweep_finds_only_the_majority():
    report = sweep(SweepConfig(domain_size=2, codomain_size=2, arity=3, monotone_only=True))
    assert report.total == 15
    assert report.gap_counts[2] == 1
    assert report.check_counts["monotone"] == 15
    assert report.is_clean()


def test_pseudo_boolean_sweep():
    config = SweepConfig(domain_size=2, codomain_size=3, arity=2, rational_values=("0", "1/2", "1"))
    report = sweep(config)
    assert report.is_clean()
    assert report.check_counts["lovasz_template"] == report.total
    assert report.check_counts["owen_template"] == report.total


def test_report_does_not_depend_on_worker_count():
    config = SweepConfig(domain_size=3, codomain_size=2, arity=2, mode="sample",
                         sample_count=60, seed=11, chunk_size=7)
    one = SweepProcessor(max_workers=1).run(config)
    four = SweepProcessor(max_workers=4).run(config)
    assert one.machine_block() == four.machine_block()


def test_check_function_on_single_tables(majority3):
    config = SweepConfig(domain_size=2, codomain_size=2, arity=3, monotone_only=True)
    context = SweepContext.from_config(config)
    processor = SweepProcessor()
    skipped = processor.check_function(0, FiniteFunction.projection(BOOL, 3, 2), context)
    assert skipped.skipped == 1 and skipped.total == 0
    report = processor.check_function(1, majority3, context)
    assert report.agreements == 1
    assert report.case_counts["case_n3_condition"] == 1
    assert {"characterization", "identification", "essl", "boolean", "monotone"} <= set(report.check_counts)


def test_context_for_unordered_sweeps():
    context = SweepContext.from_config(SweepConfig())
    assert context.domain_poset is None
    assert context.median_lattice is None


@pytest.mark.parametrize("poset_a, poset_b", [("chain:3", "chain:3"), ("bowtie", "chain:2")])
def test_sampled_monotone_sweeps_check_gap2_tables(poset_a, poset_b):
    config = SweepConfig(arity=3, mode="sample", sample_count=40, seed=17, monotone_only=True,
                         poset_a=poset_a, poset_b=poset_b, workers=1)
    report = sweep(config)
    assert report.is_clean()
    assert report.gap_counts[2] >= 1
    assert report.check_counts["monotone"] > 0


@pytest.mark.slow
def test_boolean_arity4_exhaustive_sweep_within_a_minute():
    report = sweep(SweepConfig(domain_size=2, codomain_size=2, arity=4, workers=os.cpu_count() or 1))
    assert report.total + report.skipped == 2 ** 16
    assert report.is_clean()
    assert max(report.gap_counts) == 2
    assert report.elapsed_seconds < 60


@pytest.mark.slow
def test_willard_bound_on_a_three_element_domain():
    report = sweep(SweepConfig(domain_size=3, codomain_size=2, arity=4, mode="sample",
                               sample_count=10_000, seed=2024))
    assert report.total + report.skipped == 10_000
    assert report.is_clean()
    assert max(report.gap_counts) <= 2


@pytest.mark.slow
@pytest.mark.parametrize("domain_size, arity", [(2, 3), (2, 4), (3, 3), (3, 4)])
def test_characterization_with_three_codomain_values(domain_size, arity):
    report = sweep(SweepConfig(domain_size=domain_size, codomain_size=3, arity=arity, mode="sample",
                               sample_count=10_000, seed=99))
    assert report.is_clean()
    assert report.check_counts["characterization"] == report.total


@pytest.mark.slow
@pytest.mark.parametrize("arity", [3, 4])
def test_pseudo_boolean_sweep_over_four_values(arity):
    report = sweep(SweepConfig(arity=arity, mode="sample", sample_count=10_000, seed=5,
                               rational_values=("0", "1", "2", "1/2")))
    assert report.is_clean()
    assert report.check_counts["lovasz_template"] == report.total
    assert report.check_counts["owen_template"] == report.total


@pytest.mark.slow
def test_monotone_chain_sweep_with_medians():
    config = SweepConfig(arity=3, mode="sample", sample_count=10_000, seed=7, monotone_only=True,
                         poset_a="chain:3", poset_b="chain:3")
    report = sweep(config)
    assert report.is_clean()
    assert report.check_counts["median_form"] > 0
    assert report.check_counts["truncated_median"] > 0


@pytest.mark.slow
def test_bowtie_sweep():
    report = sweep(SweepConfig(arity=3, mode="sample", sample_count=1000, seed=3, monotone_only=True,
                               poset_a="bowtie"))
    assert report.is_clean()
    assert report.check_counts["monotone"] > 0
    assert report.gap_counts[2] > 0


@pytest.mark.slow
@pytest.mark.parametrize("poset_a, poset_b", [("chain:3", "chain:3"), ("bowtie", "chain:2")])
def test_monotone_reports_do_not_depend_on_worker_count(poset_a, poset_b):
    config = SweepConfig(arity=3, mode="sample", sample_count=500, seed=41, monotone_only=True,
                         poset_a=poset_a, poset_b=poset_b, chunk_size=32)
    one = SweepProcessor(max_workers=1).run(config)
    four = SweepProcessor(max_workers=4).run(config)
    assert one.machine_block() == four.machine_block()


@pytest.mark.slow
def test_five_variable_boolean_sample_respects_the_gap_bound():
    report = sweep(SweepConfig(domain_size=2, codomain_size=2, arity=5, mode="sample",
                               sample_count=1000, seed=1))
    assert report.is_clean()
    assert max(report.gap_counts) <= 2
