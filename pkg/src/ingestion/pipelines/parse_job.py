"""Parser and printer for golod-forge job files.

A job is a sequence of ';'-terminated statements:

    ring 3 x y z mod 32003 order grevlex;
    ideal I = x^2, x*y, z^3;
    run golod I N=5;

'#' starts a comment that runs to the end of the line. Polynomials are read
with sympy after a character check, so only declared variables, integers and
the operators + - * / ^ and parentheses ever reach the expression parser.
"""

from __future__ import annotations

import keyword
import re
from tokenize import TokenError
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import Poly, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import BasePolynomialError

from src.ingestion.schemas.job_schemas import (
    COMMANDS,
    OPTION_KINDS,
    IdealDeclaration,
    JobSpec,
    RingDeclaration,
    RunStatement,
)
from src.services.errors import JobParseError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event
from src.services.ring.field import MAX_CHARACTERISTIC, PrimeField
from src.services.ring.polynomial import Polynomial, PolynomialRing

logger = get_logger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor,)

RING_RE = re.compile(r"ring\s+(?P<count>\S+)\s+(?P<body>.*?)\s+mod\s+(?P<p>\S+)(?:\s+order\s+(?P<order>\S+))?\s*$", re.S)
IDEAL_RE = re.compile(r"ideal\s+(?P<name>\S+)\s*=(?P<body>.*)$", re.S)
RUN_RE = re.compile(r"run\s+(?P<command>\S+)(?P<body>.*)$", re.S)
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
POLY_CHARS_RE = re.compile(r"[A-Za-z0-9_\s+\-*/^()]*$")
IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

VALUE_PATTERNS = {
    "int": re.compile(r"\d+$"),
    "ints": re.compile(r"\d+(,\d+)*$"),
    "names": re.compile(r"[A-Za-z_][A-Za-z0-9_]*(,[A-Za-z_][A-Za-z0-9_]*)*$"),
    "bool": re.compile(r"(true|false)$"),
    "word": re.compile(r"(text|structured)$"),
}

ALLOWED_OPTIONS: Dict[str, Tuple[str, ...]] = {
    "resolve": ("bound", "format"),
    "koszul": ("bound", "format"),
    "trim": ("sigma", "a", "minimal", "bound", "format"),
    "product-resolution": ("witness", "bound", "format"),
    "golod": ("N", "bound", "factors", "witness", "format"),
    "corpus": ("format",),
}
ARGUMENT_COUNTS = {"resolve": 1, "koszul": 1, "trim": 1, "product-resolution": 2, "golod": 1}


class _Source:
    """Maps character offsets of the job text to 1-based line and column numbers."""

    def __init__(self, text: str):
        self.text = text
        self._line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def location(self, offset: int) -> Tuple[int, int]:
        line = 0
        for index, start in enumerate(self._line_starts):
            if start > offset:
                break
            line = index
        return line + 1, offset - self._line_starts[line] + 1

    def error(self, message: str, offset: int) -> JobParseError:
        line, column = self.location(offset)
        return JobParseError(message, line, column)


def _strip_comments(text: str) -> str:
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


def _statements(source: _Source) -> Iterator[Tuple[int, str]]:
    """(offset, statement) pairs with leading whitespace removed."""
    cleaned = _strip_comments(source.text)
    start = 0
    for match in re.finditer(";", cleaned):
        raw = cleaned[start : match.start()]
        if not raw.strip():
            raise source.error("empty statement", match.start())
        yield start + len(raw) - len(raw.lstrip()), raw.strip()
        start = match.end()
    tail = cleaned[start:]
    if tail.strip():
        raise source.error("statement is missing its terminating ';'", start + len(tail) - len(tail.lstrip()))


def polynomial_from_text(ring: PolynomialRing, text: str) -> Polynomial:
    """Read one polynomial; errors carry no location."""
    if not text.strip():
        raise JobParseError("empty polynomial")
    if not POLY_CHARS_RE.match(text):
        raise JobParseError(f"unexpected character in polynomial '{text.strip()}'")
    for identifier in IDENTIFIER_RE.findall(text):
        if identifier not in ring.variables:
            raise JobParseError(f"unknown variable '{identifier}'")
    symbols = {name: Symbol(name) for name in ring.variables}
    try:
        expression = parse_expr(text, local_dict=symbols, transformations=TRANSFORMATIONS)
        poly = Poly(expression, *[symbols[name] for name in ring.variables], domain="QQ")
    except (SyntaxError, TokenError, SympifyError, TypeError, BasePolynomialError) as exc:
        raise JobParseError(f"cannot read polynomial '{text.strip()}': {exc}") from exc
    field = ring.field
    terms: Dict[Tuple[int, ...], int] = {}
    for exponents, coefficient in poly.terms():
        numerator, denominator = int(coefficient.p), int(coefficient.q)
        if denominator % field.p == 0:
            raise JobParseError(f"coefficient {coefficient} has a denominator divisible by {field.p}")
        terms[tuple(int(e) for e in exponents)] = field.from_rational(numerator, denominator)
    polynomial = Polynomial(ring, terms)
    if not polynomial.is_homogeneous():
        raise JobParseError(f"inhomogeneous polynomial '{text.strip()}'")
    return polynomial


def _parse_ring(source: _Source, offset: int, statement: str) -> RingDeclaration:
    match = RING_RE.match(statement)
    if not match:
        raise source.error("expected 'ring <n> <variables...> mod <p> [order grevlex|lex]'", offset)
    count_text = match.group("count")
    if not count_text.isdigit():
        raise source.error(f"variable count '{count_text}' is not a number", offset + match.start("count"))
    variables = match.group("body").split()
    for name_match in re.finditer(r"\S+", match.group("body")):
        name = name_match.group()
        if not NAME_RE.match(name) or keyword.iskeyword(name):
            raise source.error(f"invalid variable name '{name}'", offset + match.start("body") + name_match.start())
    if len(variables) != int(count_text):
        raise source.error(f"ring declares {count_text} variables but names {len(variables)}", offset + match.start("count"))
    if len(set(variables)) != len(variables):
        raise source.error("variable names must be distinct", offset + match.start("body"))
    p_text = match.group("p")
    p_offset = offset + match.start("p")
    if not p_text.isdigit():
        raise source.error(f"characteristic '{p_text}' is not a number", p_offset)
    characteristic = int(p_text)
    if characteristic >= MAX_CHARACTERISTIC:
        raise source.error(f"characteristic {characteristic} must be below 2^31", p_offset)
    try:
        PrimeField(characteristic)
    except PreconditionError as exc:
        raise source.error(str(exc), p_offset) from exc
    order = match.group("order") or "grevlex"
    if order not in ("grevlex", "lex"):
        raise source.error(f"unknown monomial order '{order}'", offset + match.start("order"))
    return RingDeclaration(variables=variables, characteristic=characteristic, order=order)


def _parse_ideal(source: _Source, offset: int, statement: str, ring: Optional[PolynomialRing], declared: List[str]) -> IdealDeclaration:
    match = IDEAL_RE.match(statement)
    if not match:
        raise source.error("expected 'ideal <Name> = <poly>, <poly>, ...'", offset)
    if ring is None:
        raise source.error("ideal declared before the ring", offset)
    name = match.group("name")
    if not NAME_RE.match(name):
        raise source.error(f"invalid ideal name '{name}'", offset + match.start("name"))
    if name in declared:
        raise source.error(f"ideal '{name}' is declared twice", offset + match.start("name"))
    generators: List[str] = []
    cursor = offset + match.start("body")
    for text in match.group("body").split(","):
        position = cursor + len(text) - len(text.lstrip())
        cursor += len(text) + 1
        try:
            polynomial = polynomial_from_text(ring, text)
        except JobParseError as exc:
            raise source.error(exc.reason, position) from exc
        generators.append(str(polynomial))
    return IdealDeclaration(name=name, generators=generators)


def _parse_run(source: _Source, offset: int, statement: str, spec: JobSpec) -> RunStatement:
    match = RUN_RE.match(statement)
    if not match:
        raise source.error("expected 'run <command> [arguments] [key=value ...]'", offset)
    command = match.group("command")
    if command not in COMMANDS:
        raise source.error(f"unknown command '{command}'", offset + match.start("command"))
    declared = spec.ideal_names()
    arguments: List[str] = []
    options: Dict[str, str] = {}
    for token in re.finditer(r"\S+", match.group("body")):
        text = token.group()
        position = offset + match.start("body") + token.start()
        if "=" in text:
            key, value = text.split("=", 1)
            kind = OPTION_KINDS.get(key)
            if kind is None or key not in ALLOWED_OPTIONS[command]:
                raise source.error(f"option '{key}' does not apply to '{command}'", position)
            if not VALUE_PATTERNS[kind].match(value):
                raise source.error(f"bad value '{value}' for option '{key}'", position + len(key) + 1)
            if kind == "names":
                for name in value.split(","):
                    if name not in declared:
                        raise source.error(f"undeclared ideal '{name}'", position + len(key) + 1)
            if kind == "int":
                value = str(int(value))
            elif kind == "ints":
                value = ",".join(str(int(item)) for item in value.split(","))
            options[key] = value
            continue
        if command != "corpus" and text not in declared:
            raise source.error(f"undeclared ideal '{text}'", position)
        arguments.append(text)
    run = RunStatement(command=command, arguments=arguments, options=options)
    expected = ARGUMENT_COUNTS.get(command)
    if expected is not None and len(arguments) != expected:
        raise source.error(f"'{command}' takes {expected} ideal name(s), got {len(arguments)}", offset)
    _check_option_shapes(source, offset, run)
    return run


def _check_option_shapes(source: _Source, offset: int, run: RunStatement) -> None:
    if run.command == "trim":
        sigma = run.int_list_option("sigma")
        if sigma is None:
            raise source.error("'trim' needs sigma=<i,j,...>", offset)
        a_names = run.name_list_option("a")
        if a_names is not None and len(a_names) != len(sigma):
            raise source.error("option 'a' needs one ideal per trimmed position", offset)
    factors = run.name_list_option("factors")
    if factors is not None and len(factors) != 2:
        raise source.error("option 'factors' needs exactly two ideals", offset)
    witness = run.int_list_option("witness")
    if witness is not None and len(witness) != 4:
        raise source.error("option 'witness' needs four generator indices", offset)
    if run.command == "golod" and witness is not None and factors is None:
        raise source.error("option 'witness' on 'golod' needs factors=<A,I>", offset)


def parse_job(text: str) -> JobSpec:
    source = _Source(text)
    spec = JobSpec()
    ring: Optional[PolynomialRing] = None
    for offset, statement in _statements(source):
        keyword_match = re.match(r"\S+", statement)
        head = keyword_match.group() if keyword_match else ""
        if head == "ring":
            if spec.ring is not None:
                raise source.error("ring declared twice", offset)
            spec.ring = _parse_ring(source, offset, statement)
            ring = build_ring(spec)
        elif head == "ideal":
            spec.ideals.append(_parse_ideal(source, offset, statement, ring, spec.ideal_names()))
        elif head == "run":
            spec.runs.append(_parse_run(source, offset, statement, spec))
        else:
            raise source.error(f"unknown statement '{head}'", offset)
    if not spec.runs:
        raise JobParseError("job has no 'run' statement")
    log_event(logger, "parse_job", ideals=len(spec.ideals), runs=[run.command for run in spec.runs])
    return spec


def format_job(spec: JobSpec) -> str:
    """Canonical job text; parse_job(format_job(spec)) == spec."""
    lines: List[str] = []
    if spec.ring is not None:
        ring = spec.ring
        lines.append(f"ring {len(ring.variables)} {' '.join(ring.variables)} mod {ring.characteristic} order {ring.order};")
    for ideal in spec.ideals:
        lines.append(f"ideal {ideal.name} = {', '.join(ideal.generators)};")
    for run in spec.runs:
        parts = ["run", run.command, *run.arguments]
        parts.extend(f"{key}={run.options[key]}" for key in sorted(run.options))
        lines.append(" ".join(parts) + ";")
    return "\n".join(lines) + "\n"


def build_ring(spec: JobSpec) -> PolynomialRing:
    if spec.ring is None:
        raise PreconditionError("job has no ring declaration")
    declaration = spec.ring
    return PolynomialRing(tuple(declaration.variables), PrimeField(declaration.characteristic), declaration.order)


def build_ideals(spec: JobSpec, ring: Optional[PolynomialRing] = None) -> Dict[str, Ideal]:
    ring = ring or build_ring(spec)
    return {
        ideal.name: Ideal(ring, [polynomial_from_text(ring, g) for g in ideal.generators], name=ideal.name)
        for ideal in spec.ideals
    }
