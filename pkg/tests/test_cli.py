import json
from fractions import Fraction

import pytest

from src.cli import EXIT_INPUT_ERROR, EXIT_OK, main
from src.core.set_functions import to_set_function
from src.core.table_io import TableFileProcessor, parse_table
from src.models.function_model import Carrier, FiniteFunction
from tests.factories import median


@pytest.fixture
def save(tmp_path):
    files = TableFileProcessor()

    def _save(obj, name):
        path = tmp_path / name
        files.save(obj, path)
        return str(path)

    return _save


def test_analyze_text(save, majority3, capsys):
    assert main(["analyze", save(majority3, "maj.tbl")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "essential arity: 3" in out
    assert "gap: 2" in out
    assert "boolean:" in out


def test_analyze_json(save, majority3, capsys):
    assert main(["analyze", save(majority3, "maj.tbl"), "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["gap_report"]["gap"] == 2
    assert payload["essential_arity"] == 3


def test_analyze_with_fixture_posets(save, median_chain3, capsys):
    path = save(median_chain3, "median.tbl")
    assert main(["analyze", path, "--poset-a", "chain:3", "--poset-b", "chain:3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "median_form: h = (0, 1, 2)" in out
    assert "truncated_median: a=0, b=2" in out


def test_mobius_then_zeta(save, and2, tmp_path, capsys):
    assert main(["mobius", save(and2, "and.tbl")]) == EXIT_OK
    coefficients = capsys.readouterr().out
    assert "kind: mobius" in coefficients
    path = tmp_path / "and.mob"
    path.write_text(coefficients)
    assert main(["zeta", str(path)]) == EXIT_OK
    assert parse_table(capsys.readouterr().out) == to_set_function(and2)


def test_transforms_write_output_files(save, and2, tmp_path, capsys):
    coefficients = tmp_path / "and.mob"
    assert main(["mobius", save(and2, "and.tbl"), "--output", str(coefficients)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert parse_table(coefficients.read_text()).kind == "mobius"
    restored = tmp_path / "and.set"
    assert main(["zeta", str(coefficients), "-o", str(restored)]) == EXIT_OK
    assert parse_table(restored.read_text()) == to_set_function(and2)


def test_zeta_needs_coefficients(save, and2, capsys):
    assert main(["zeta", save(and2, "and.tbl")]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


def test_extension_evaluation(save, and2, capsys):
    path = save(and2, "and.tbl")
    assert main(["eval-owen", path, "1/3,2/3"]) == EXIT_OK
    assert Fraction(capsys.readouterr().out.strip()) == Fraction(2, 9)
    assert main(["eval-lovasz", path, "1/3 2/3"]) == EXIT_OK
    assert Fraction(capsys.readouterr().out.strip()) == Fraction(1, 3)


def test_classify_boolean(save, majority3, capsys):
    assert main(["classify", save(majority3, "maj.tbl"), "--boolean"]) == EXIT_OK
    verdicts = json.loads(capsys.readouterr().out)
    assert verdicts["boolean"]["gap"] == 2
    assert verdicts["boolean"]["template"] == "majority"


def test_classify_aggregation(save, capsys):
    C = Carrier.rational_chain([0, Fraction(1, 2), 1])
    path = save(FiniteFunction.from_callable(C, 3, C, median), "median.tbl")
    assert main(["classify", path, "--aggregation"]) == EXIT_OK
    verdict = json.loads(capsys.readouterr().out)["aggregation"]
    assert (verdict["gap"], verdict["arity"]) == (2, 3)
    assert verdict["h"] == ["0", "1/2", "1"]


def test_sweep(capsys):
    assert main(["sweep", "--arity", "2", "--workers", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "--- machine-readable ---" in out
    assert any(line.startswith("total=") for line in out.splitlines())


def test_invalid_sweep_is_an_input_error(capsys):
    assert main(["sweep", "--arity", "0"]) == EXIT_INPUT_ERROR


def test_formats(capsys):
    assert main(["formats"]) == EXIT_OK
    assert "aritygap-table v1" in capsys.readouterr().out


def test_malformed_table(tmp_path, capsys):
    path = tmp_path / "bad.tbl"
    path.write_text("aritygap-table v1\ndomain: 0 1\ncodomain: 0 1\narity: two\ntable:\n")
    assert main(["analyze", str(path)]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


def test_missing_table(tmp_path):
    assert main(["analyze", str(tmp_path / "absent.tbl")]) == EXIT_INPUT_ERROR
