import pytest
from pydantic import ValidationError

from src.core.function_enumerator import (
    MonotoneTableSpace,
    SplitMix64,
    chunk_ranges,
    enumerate_functions,
    function_source,
    sample_at,
    table_at,
    table_count,
)
from src.core.order_theory import is_order_preserving
from src.models.function_model import FiniteFunction
from src.models.poset_model import bowtie, chain
from src.models.sweep_result import SweepConfig


def test_splitmix_reference_output():
    assert SplitMix64(0).next() == 0xE220A8397B1DCDAF


def test_splitmix_sample_streams_are_reproducible():
    first = [SplitMix64.for_sample(42, 7).next() for _ in range(2)]
    assert first[0] == first[1]
    assert SplitMix64.for_sample(42, 7).next() != SplitMix64.for_sample(42, 8).next()


def test_counter_order():
    config = SweepConfig(domain_size=2, codomain_size=2, arity=2)
    assert table_count(config) == 16
    assert table_at(config, 0).values == (0, 0, 0, 0)
    assert table_at(config, 1).values == (0, 0, 0, 1)
    assert table_at(config, 8).values == (1, 0, 0, 0)
    assert table_at(config, 15).values == (1, 1, 1, 1)


def test_enumeration_is_complete_and_ordered():
    config = SweepConfig(domain_size=3, codomain_size=2, arity=1)
    tables = [f.values for f in enumerate_functions(config)]
    assert len(tables) == 8
    assert tables == sorted(tables)


def test_monotone_enumeration_counts():
    space = MonotoneTableSpace(chain(2), 2, chain(2))
    tables = list(space.enumerate())
    assert len(tables) == 6
    assert tables == sorted(tables)
    assert len(list(MonotoneTableSpace(chain(2), 3, chain(2)).enumerate())) == 20


def test_monotone_source_keeps_only_order_preserving_tables():
    config = SweepConfig(domain_size=2, codomain_size=2, arity=3, monotone_only=True)
    count, function_at = function_source(config)
    assert count == 20
    P = chain(2)
    assert all(is_order_preserving(function_at(i), P) for i in range(count))


def test_samples_are_deterministic():
    config = SweepConfig(domain_size=3, codomain_size=3, arity=3, mode="sample", sample_count=5, seed=99)
    assert [sample_at(config, i) for i in range(5)] == [sample_at(config, i) for i in range(5)]
    assert sample_at(config, 0) != sample_at(config, 1)


@pytest.mark.parametrize("poset_a, domain_size", [("chain:3", 3), ("bowtie", 6)])
def test_monotone_samples_are_order_preserving(poset_a, domain_size):
    config = SweepConfig(domain_size=domain_size, codomain_size=3, arity=2, mode="sample",
                         sample_count=25, seed=5, monotone_only=True, poset_a=poset_a, poset_b="chain:3")
    count, function_at = function_source(config)
    P_A = bowtie() if poset_a == "bowtie" else chain(3)
    for index in range(count):
        assert is_order_preserving(function_at(index), P_A, chain(3))


def test_rational_codomain_tables():
    config = SweepConfig(domain_size=2, codomain_size=3, arity=1, rational_values=("1", "0", "1/2"))
    assert config.rational_values == ("0", "1/2", "1")
    assert [str(v) for v in table_at(config, 5).values] == ["1/2", "1"]


def test_budget_is_enforced():
    with pytest.raises(ValidationError):
        SweepConfig(domain_size=3, codomain_size=3, arity=3, table_budget=1000)


def test_chunk_ranges():
    assert chunk_ranges(10, 4) == [range(0, 4), range(4, 8), range(8, 10)]
    assert chunk_ranges(0, 4) == []


def test_diagonal_seed_fixes_tuples_with_a_repeated_value():
    space = MonotoneTableSpace(chain(3), 3, chain(3))
    rng = SplitMix64(123)
    seed = None
    while seed is None:
        seed = space.diagonal_seed(rng)
    assert len(seed) == 27 - 6
    codes = None
    while codes is None:
        codes = space.sample(rng, seed)
    assert all(codes[p] == code for p, code in seed.items())
    f = FiniteFunction(chain(3).carrier, 3, chain(3).carrier, codes)
    assert is_order_preserving(f, chain(3))
    for x in range(3):
        for y in range(3):
            assert f(x, x, y) == f(x, y, x) == f(y, x, x) == f(x, x, x)


def test_diagonal_seed_needs_ternary_tables():
    with pytest.raises(ValueError):
        MonotoneTableSpace(chain(2), 2, chain(2)).diagonal_seed(SplitMix64(0))


def test_ternary_bowtie_samples_are_order_preserving():
    config = SweepConfig(arity=3, mode="sample", sample_count=20, seed=8, monotone_only=True,
                         poset_a="bowtie", poset_b="chain:2")
    count, function_at = function_source(config)
    for index in range(count):
        assert is_order_preserving(function_at(index), bowtie(), chain(2))
