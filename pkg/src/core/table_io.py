from typing import Any, Dict, List, Tuple, Union
import itertools
import logging
from fractions import Fraction
from pathlib import Path

from src.core.exceptions import PosetError, TableFormatError
from src.models.function_model import RATIONAL, Carrier, FiniteFunction
from src.models.poset_model import Poset
from src.models.set_function_model import MobiusCoefficients, SetFunction

logger = logging.getLogger(__name__)

TABLE_MAGIC = "aritygap-table v1"
POSET_MAGIC = "aritygap-poset v1"
KINDS = ("function", "setfunction", "mobius")
_RESERVED = ("#", "<", "->")

TableObject = Union[FiniteFunction, SetFunction, MobiusCoefficients]

FORMAT_SPEC = f"""\
Table files (one function, set function or Moebius coefficient bundle):

    {TABLE_MAGIC}
    domain: e1 e2 ...
    codomain: e1 e2 ...        (or: codomain: rational)
    arity: n
    kind: function             (optional; function | setfunction | mobius)
    table:
    a1 a2 ... an -> value      (one row per tuple, every tuple exactly once)

  Tokens that read as integers are integers, then p/q rationals, otherwise symbols.
  A symbol that would read as a number is written in double quotes ("00", "1").
  Symbols may not contain whitespace, '#', '<' or '->'.
  Rows are written in lexicographic tuple order. For setfunction and mobius files the
  domain is 0 1, the codomain is rational and the row for the characteristic vector
  of T carries the value at T.

Poset files:

    {POSET_MAGIC}
    elements: e1 e2 ...
    covers:
    x < y                      (one line per pair; the order is their reflexive-transitive closure)

Blank lines and lines starting with # are ignored.
"""


def parse_token(token: str) -> Any:
    """A double-quoted token is a symbol; otherwise int, then Fraction, then the string itself."""
    if len(token) >= 2 and token[0] == token[-1] == '"':
        return token[1:-1]
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        return token


def _format_token(value: Any) -> str:
    if not isinstance(value, str):
        return str(value)
    if not value or any(c.isspace() for c in value) or any(mark in value for mark in _RESERVED):
        raise TableFormatError(f"symbol {value!r} cannot be written as a table token")
    # symbols that would read back as numbers or as quoted symbols get quotes
    return f'"{value}"' if value.startswith('"') or parse_token(value) != value else value


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((number, line))
    return lines


def _split_header(lines: List[Tuple[int, str]], magic: str,
                  body_key: str) -> Tuple[Dict[str, Tuple[int, str]], List[Tuple[int, str]], int]:
    if not lines or lines[0][1] != magic:
        raise TableFormatError(f"expected header {magic!r}", lines[0][0] if lines else 1)
    fields: Dict[str, Tuple[int, str]] = {}
    for position, (number, line) in enumerate(lines[1:], start=1):
        key, separator, value = line.partition(":")
        if not separator:
            raise TableFormatError(f"expected 'key: value', got {line!r}", number)
        key = key.strip().lower()
        if key == body_key:
            if value.strip():
                raise TableFormatError(f"'{body_key}:' must stand on its own line", number)
            return fields, lines[position + 1:], number
        if key in fields:
            raise TableFormatError(f"repeated field {key!r}", number)
        fields[key] = (number, value.strip())
    raise TableFormatError(f"missing '{body_key}:' section", lines[-1][0])


def _require(fields: Dict[str, Tuple[int, str]], key: str, header_line: int) -> Tuple[int, str]:
    if key not in fields:
        raise TableFormatError(f"missing field {key!r}", header_line)
    return fields[key]


def _carrier(name: str, number: int, text: str) -> Carrier:
    tokens = text.split()
    try:
        return Carrier(name, tuple(parse_token(t) for t in tokens))
    except ValueError as e:
        raise TableFormatError(str(e), number) from e


def parse_table(text: str) -> TableObject:
    lines = _content_lines(text)
    fields, rows, table_line = _split_header(lines, TABLE_MAGIC, "table")
    unknown = set(fields) - {"domain", "codomain", "arity", "kind"}
    if unknown:
        number = min(fields[key][0] for key in unknown)
        raise TableFormatError(f"unknown field {sorted(unknown)[0]!r}", number)

    domain = _carrier("A", *_require(fields, "domain", table_line))
    codomain_line, codomain_text = _require(fields, "codomain", table_line)
    codomain = RATIONAL if codomain_text.lower() == "rational" else _carrier("B", codomain_line, codomain_text)
    arity_line, arity_text = _require(fields, "arity", table_line)
    if not arity_text.isdigit() or int(arity_text) < 1:
        raise TableFormatError(f"arity must be a positive integer, got {arity_text!r}", arity_line)
    arity = int(arity_text)
    kind_line, kind = fields.get("kind", (table_line, "function"))
    if kind not in KINDS:
        raise TableFormatError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}", kind_line)
    if kind != "function" and (not domain.is_boolean() or not codomain.is_rational):
        raise TableFormatError(f"a {kind} file needs domain 0 1 and a rational codomain", kind_line)

    values: Dict[Tuple[Any, ...], Any] = {}
    for number, line in rows:
        arguments, arrow, value_text = line.partition("->")
        if not arrow:
            raise TableFormatError(f"expected 'a1 ... an -> value', got {line!r}", number)
        args = tuple(parse_token(t) for t in arguments.split())
        if len(args) != arity:
            raise TableFormatError(f"row has {len(args)} arguments, arity is {arity}", number)
        if not all(domain.contains(a) for a in args):
            raise TableFormatError(f"row {args} leaves the domain", number)
        if args in values:
            raise TableFormatError(f"repeated row for {args}", number)
        value = parse_token(value_text.strip())
        if codomain.is_rational and isinstance(value, str):
            raise TableFormatError(f"value {value!r} is not a rational", number)
        if not codomain.contains(value):
            raise TableFormatError(f"value {value!r} is not in the codomain", number)
        values[args] = value

    last_line = rows[-1][0] if rows else table_line
    ordered = []
    for args in itertools.product(domain.elements, repeat=arity):
        if args not in values:
            raise TableFormatError(f"missing row for {args}", last_line)
        ordered.append(values[args])

    if kind == "function":
        return FiniteFunction(domain, arity, codomain, tuple(ordered))
    by_mask = [Fraction(0)] * (1 << arity)
    for args, value in zip(itertools.product((0, 1), repeat=arity), ordered):
        by_mask[sum(bit << i for i, bit in enumerate(args))] = value
    cls = SetFunction if kind == "setfunction" else MobiusCoefficients
    return cls(arity, tuple(by_mask))


def serialize_table(obj: TableObject) -> str:
    if isinstance(obj, FiniteFunction):
        domain, arity, kind = obj.domain.elements, obj.arity, "function"
        codomain = "rational" if obj.codomain.is_rational else " ".join(map(_format_token, obj.codomain.elements))
        rows = zip(itertools.product(domain, repeat=arity), obj.values)
    else:
        domain, arity, kind, codomain = (0, 1), obj.n, obj.kind, "rational"
        rows = ((args, obj[sum(bit << i for i, bit in enumerate(args))])
                for args in itertools.product((0, 1), repeat=arity))
    lines = [
        TABLE_MAGIC,
        f"domain: {' '.join(map(_format_token, domain))}",
        f"codomain: {codomain}",
        f"arity: {arity}",
        f"kind: {kind}",
        "table:",
    ]
    lines += [f"{' '.join(map(_format_token, args))} -> {_format_token(value)}" for args, value in rows]
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> Poset:
    lines = _content_lines(text)
    fields, rows, covers_line = _split_header(lines, POSET_MAGIC, "covers")
    if set(fields) != {"elements"}:
        extra = sorted(set(fields) - {"elements"})
        raise TableFormatError(f"unknown field {extra[0]!r}" if extra else "missing field 'elements'",
                               fields[extra[0]][0] if extra else covers_line)
    carrier = _carrier("P", *fields["elements"])
    covers = []
    for number, line in rows:
        lower, separator, upper = line.partition("<")
        lower, upper = parse_token(lower.strip()), parse_token(upper.strip())
        if not separator or not carrier.contains(lower) or not carrier.contains(upper):
            raise TableFormatError(f"expected 'x < y' over the elements, got {line!r}", number)
        covers.append((lower, upper))
    try:
        return Poset.from_covers(carrier, covers)
    except PosetError as e:
        raise TableFormatError(str(e), covers_line) from e


def serialize_poset(P: Poset) -> str:
    lines = [POSET_MAGIC, f"elements: {' '.join(map(_format_token, P.carrier.elements))}", "covers:"]
    lines += [f"{_format_token(x)} < {_format_token(y)}" for x, y in P.covers()]
    return "\n".join(lines) + "\n"


class TableFileProcessor:
    """Loads table and poset files from disk."""

    def __init__(self, encoding: str = "utf-8"):
        self.encoding = encoding

    def load_table(self, file_path: Union[str, Path]) -> TableObject:
        try:
            obj = parse_table(Path(file_path).read_text(encoding=self.encoding))
            logger.info(f"Loaded {type(obj).__name__} from {file_path}")
            return obj
        except Exception as e:
            logger.error(f"Error loading table {file_path}: {e}")
            raise

    def load_function(self, file_path: Union[str, Path]) -> FiniteFunction:
        obj = self.load_table(file_path)
        if not isinstance(obj, FiniteFunction):
            raise TableFormatError(f"{file_path} holds a {obj.kind}, not a function table")
        return obj

    def load_poset(self, file_path: Union[str, Path]) -> Poset:
        try:
            return parse_poset(Path(file_path).read_text(encoding=self.encoding))
        except Exception as e:
            logger.error(f"Error loading poset {file_path}: {e}")
            raise

    def save(self, obj: Union[TableObject, Poset], file_path: Union[str, Path]) -> None:
        text = serialize_poset(obj) if isinstance(obj, Poset) else serialize_table(obj)
        Path(file_path).write_text(text, encoding=self.encoding)
        logger.info(f"Wrote {file_path}")
