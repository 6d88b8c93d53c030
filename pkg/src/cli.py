"""Command-line entry point: ``python -m src.cli <command> ...``.

Exit codes: 0 success, 1 a sweep found a disagreement or invariant violation,
2 unreadable or malformed input.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Union

from config.settings import settings
from src.core.exceptions import ArityGapError
from src.core.extensions import (
    classify_lovasz_gap2,
    eval_lovasz,
    eval_owen,
    lovasz_extension,
)
from src.core.order_theory import classify_aggregation
from src.core.set_functions import classify_boolean_gap, classify_pseudo_boolean_gap, mobius, to_set_function, zeta
from src.core.table_io import FORMAT_SPEC, TableFileProcessor, serialize_table
from src.models.extension_model import LovaszExtension, OwenExtension, RationalPoint
from src.models.function_model import FiniteFunction
from src.models.poset_model import Poset, poset_by_name
from src.models.set_function_model import MobiusCoefficients, SetFunction
from src.models.sweep_result import SweepConfig
from src.services.function_analyzer import FunctionAnalyzer
from src.services.sweep_processor import SweepProcessor, failing_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INPUT_ERROR = 2

files = TableFileProcessor()


def _configure_logging(verbose: bool, debug: bool) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else settings.LOG_LEVEL
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr)


def _poset(source: Optional[str]) -> Optional[Poset]:
    """A poset file, or a catalogue name such as chain:3 or bowtie."""
    if source is None:
        return None
    if Path(source).is_file():
        return files.load_poset(source)
    return poset_by_name(source)


def _coefficients(path: str) -> MobiusCoefficients:
    obj = files.load_table(path)
    if isinstance(obj, MobiusCoefficients):
        return obj
    if isinstance(obj, SetFunction):
        return mobius(obj)
    return mobius(to_set_function(obj))


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, default=str))


def cmd_analyze(args: argparse.Namespace) -> int:
    f = files.load_function(args.table)
    result = FunctionAnalyzer().analyze(f, _poset(args.poset_a), _poset(args.poset_b))
    if args.json:
        _print_json(result.to_dict())
        return EXIT_OK
    print(f"source arity: {result.source_arity}")
    print(f"essential arity: {result.essential_arity}")
    if result.gap_report is not None:
        report = result.gap_report
        print(f"essential variables: {list(report.essential_variables)}")
        print(f"gap: {report.gap}   essl: {report.essl}   qa: {report.qa}")
        print(f"oddsupp-determined: {report.oddsupp_determined}")
        print(f"case: {report.theorem_case.value}")
        for (i, j), ess in sorted(report.per_pair_minor_ess.items()):
            print(f"  ess f_({i}<-{j}) = {ess}")
        if report.ternary_condition is not None:
            print(f"ternary condition: {report.ternary_condition.to_dict()}")
    for name, verdict in sorted(result.verdicts.items()):
        print(f"{name}: {verdict.to_dict() if hasattr(verdict, 'to_dict') else verdict}")
    for note in result.notes:
        print(f"note: {note}")
    return EXIT_OK


def _emit(obj: Union[SetFunction, MobiusCoefficients], output: Optional[str]) -> int:
    if output:
        files.save(obj, output)
    else:
        sys.stdout.write(serialize_table(obj))
    return EXIT_OK


def cmd_mobius(args: argparse.Namespace) -> int:
    obj = files.load_table(args.table)
    v = obj if isinstance(obj, SetFunction) else to_set_function(obj) if isinstance(obj, FiniteFunction) else None
    if v is None:
        raise ArityGapError(f"{args.table} already holds Moebius coefficients")
    return _emit(mobius(v), args.output)


def cmd_zeta(args: argparse.Namespace) -> int:
    obj = files.load_table(args.table)
    if not isinstance(obj, MobiusCoefficients):
        raise ArityGapError(f"{args.table} does not hold Moebius coefficients (kind: mobius)")
    return _emit(zeta(obj), args.output)


def _evaluate(args: argparse.Namespace, extension: Union[OwenExtension, LovaszExtension]) -> int:
    point = RationalPoint.parse(args.point)
    value = eval_owen(extension, point) if isinstance(extension, OwenExtension) else eval_lovasz(extension, point)
    print(value)
    return EXIT_OK


def cmd_eval_owen(args: argparse.Namespace) -> int:
    return _evaluate(args, OwenExtension(_coefficients(args.table)))


def cmd_eval_lovasz(args: argparse.Namespace) -> int:
    return _evaluate(args, LovaszExtension(_coefficients(args.table)))


def cmd_classify(args: argparse.Namespace) -> int:
    if not (args.boolean or args.pseudo or args.lovasz or args.aggregation):
        return cmd_analyze(args)
    f = files.load_function(args.table)
    verdicts = {}
    if args.boolean:
        verdicts["boolean"] = classify_boolean_gap(f).to_dict()
    if args.pseudo:
        verdicts["pseudo_boolean"] = classify_pseudo_boolean_gap(f).to_dict()
    if args.lovasz:
        match = classify_lovasz_gap2(lovasz_extension(f))
        verdicts["lovasz"] = match.to_dict() if match else {"gap": 1}
    if args.aggregation:
        verdicts["aggregation"] = classify_aggregation(f).to_dict()
    _print_json(verdicts)
    return EXIT_OK


def _sweep_config(args: argparse.Namespace) -> SweepConfig:
    values = tuple(v for v in args.values.replace(",", " ").split()) if args.values else None
    # sizes of named posets and of the value list are derived by SweepConfig
    fields = dict(
        domain_size=None if args.poset_a else args.domain,
        codomain_size=None if args.poset_b or values else args.codomain,
        arity=args.arity,
        mode="sample" if args.sample else "exhaustive",
        sample_count=args.sample or 1,
        seed=args.seed if args.seed is not None else (settings.DEFAULT_SEED if args.sample else None),
        monotone_only=args.monotone,
        poset_a=args.poset_a,
        poset_b=args.poset_b,
        rational_values=values,
    )
    for name in ("workers", "chunk_size", "table_budget"):
        if getattr(args, name) is not None:
            fields[name] = getattr(args, name)
    return SweepConfig(**fields)


def cmd_sweep(args: argparse.Namespace) -> int:
    report = SweepProcessor().run(_sweep_config(args))
    print(report.human_text())
    print("--- machine-readable ---")
    print(report.machine_block())
    if report.is_clean():
        return EXIT_OK
    logger.warning(f"Failing checks: {', '.join(failing_checks(report)) or 'invariants only'}")
    return EXIT_DISAGREEMENT


def cmd_formats(args: argparse.Namespace) -> int:
    sys.stdout.write(FORMAT_SPEC)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aritygap", description="Arity gap analysis of finite functions.")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--debug", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="gap report of a table file")
    analyze.add_argument("table")
    analyze.add_argument("--poset-a", help="domain poset file or fixture name")
    analyze.add_argument("--poset-b", help="codomain poset file or fixture name")
    analyze.add_argument("--json", action="store_true")
    analyze.set_defaults(handler=cmd_analyze)

    for name, handler, help_text in (("mobius", cmd_mobius, "Moebius transform of a set function"),
                                     ("zeta", cmd_zeta, "zeta transform of Moebius coefficients")):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("table")
        sub.add_argument("-o", "--output", help="write the result table here instead of stdout")
        sub.set_defaults(handler=handler)

    for name, handler in (("eval-owen", cmd_eval_owen), ("eval-lovasz", cmd_eval_lovasz)):
        sub = commands.add_parser(name, help=f"evaluate the {name[5:]} extension at a rational point")
        sub.add_argument("table")
        sub.add_argument("point", help='e.g. "1/3,2/3"')
        sub.set_defaults(handler=handler)

    classify = commands.add_parser("classify", help="run the gap classifiers")
    classify.add_argument("table")
    classify.add_argument("--poset-a")
    classify.add_argument("--poset-b")
    classify.add_argument("--boolean", action="store_true")
    classify.add_argument("--pseudo", action="store_true")
    classify.add_argument("--lovasz", action="store_true")
    classify.add_argument("--aggregation", action="store_true",
                          help="nondecreasing self-map of a rational chain fixing its ends")
    classify.add_argument("--json", action="store_true")
    classify.set_defaults(handler=cmd_classify)

    sweep = commands.add_parser("sweep", help="verify the classifiers against the oracles")
    sweep.add_argument("--domain", type=int, default=2)
    sweep.add_argument("--codomain", type=int, default=2)
    sweep.add_argument("--arity", type=int, default=3)
    stream = sweep.add_mutually_exclusive_group()
    stream.add_argument("--exhaustive", action="store_true")
    stream.add_argument("--sample", type=int, metavar="COUNT")
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--monotone", action="store_true")
    sweep.add_argument("--poset-a", help="fixture name, e.g. chain:3 or bowtie")
    sweep.add_argument("--poset-b")
    sweep.add_argument("--values", help='rational codomain, e.g. "0,1,2,1/2"')
    sweep.add_argument("--workers", type=int)
    sweep.add_argument("--chunk-size", type=int)
    sweep.add_argument("--budget", dest="table_budget", type=int)
    sweep.set_defaults(handler=cmd_sweep)

    formats = commands.add_parser("formats", help="print the file format specification")
    formats.set_defaults(handler=cmd_formats)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose, args.debug)
    try:
        return args.handler(args)
    except (ArityGapError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
