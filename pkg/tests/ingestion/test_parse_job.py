from __future__ import annotations

import pytest

from src.ingestion.pipelines.parse_job import build_ideals, build_ring, format_job, parse_job, polynomial_from_text
from src.services.errors import JobParseError

EXAMPLE = """# the trimming example
ring 3 x y z mod 32003 order grevlex;
ideal I = x^2, x*y, z^3;
ideal A = y, z^3;
run golod I N=5;
run trim I sigma=1 a=A;
"""


def _error(text: str) -> JobParseError:
    with pytest.raises(JobParseError) as info:
        parse_job(text)
    return info.value


def test_parse_example_job():
    spec = parse_job(EXAMPLE)
    assert spec.ring.variables == ["x", "y", "z"]
    assert spec.ring.characteristic == 32003
    assert spec.declaration("I").generators == ["x^2", "x*y", "z^3"]
    assert [run.command for run in spec.runs] == ["golod", "trim"]
    assert spec.runs[0].int_option("N") == 5
    assert spec.runs[1].int_list_option("sigma") == [1]
    assert spec.runs[1].name_list_option("a") == ["A"]


def test_format_job_round_trip():
    spec = parse_job(EXAMPLE)
    text = format_job(spec)
    assert text.splitlines()[0] == "ring 3 x y z mod 32003 order grevlex;"
    assert "run trim I a=A sigma=1;" in text
    assert parse_job(text) == spec


def test_generators_are_stored_canonically():
    spec = parse_job("ring 2 x y mod 32003;\nideal I = y*x + x*x, (x - y)^2;\nrun resolve I;")
    assert spec.declaration("I").generators == ["x^2 + x*y", "x^2 - 2*x*y + y^2"]


def test_inhomogeneous_generator_is_located():
    error = _error("ring 3 x y z mod 32003;\nideal I = x + y^2;\nrun resolve I;")
    assert error.reason == "inhomogeneous polynomial 'x + y^2'"
    assert (error.line, error.column) == (2, 11)


def test_second_generator_is_located():
    error = _error("ring 3 x y z mod 32003;\nideal I = x^2,  q*y;\nrun resolve I;")
    assert "unknown variable 'q'" in error.reason
    assert (error.line, error.column) == (2, 17)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("ring 2 x y mod 32000;\nrun corpus;", "prime"),
        ("ring 2 x y mod 4294967311;\nrun corpus;", "below 2^31"),
        ("ring 3 x y mod 32003;\nrun corpus;", "names 2"),
        ("ring 2 x x mod 32003;\nrun corpus;", "distinct"),
        ("ring 2 x y mod 32003 order deglex;\nrun corpus;", "unknown monomial order"),
        ("ideal I = x;\nrun resolve I;", "before the ring"),
        ("ring 1 x mod 32003;\nideal I = x;\nideal I = x^2;\nrun resolve I;", "declared twice"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun resolve J;", "undeclared ideal 'J'"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun frobnicate I;", "unknown command"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun resolve I sigma=1;", "does not apply"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun trim I;", "needs sigma"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun golod I N=five;", "bad value"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun golod I witness=1,2,3,4;", "needs factors"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun product-resolution I;", "takes 2"),
        ("ring 1 x mod 32003;\nideal I = x;\nrun resolve I", "terminating ';'"),
        ("ring 1 x mod 32003;;\nrun corpus;", "empty statement"),
        ("ring 1 x mod 32003;\nideal I = x;", "no 'run' statement"),
        ("ring 1 x mod 32003;\nideal I = x**;\nrun resolve I;", "cannot read polynomial"),
        ("ring 1 x mod 32003;\nideal I = x; import os;\nrun resolve I;", "unknown statement"),
    ],
)
def test_parse_errors(text, fragment):
    assert fragment in str(_error(text))


def test_rational_coefficients_are_reduced_mod_p():
    ring = build_ring(parse_job("ring 2 x y mod 7;\nrun corpus;"))
    half = polynomial_from_text(ring, "1/2*x")
    assert half * 2 == polynomial_from_text(ring, "x")
    with pytest.raises(JobParseError):
        polynomial_from_text(ring, "1/7*x")


def test_polynomial_text_is_whitelisted():
    ring = build_ring(parse_job("ring 2 x y mod 32003;\nrun corpus;"))
    with pytest.raises(JobParseError):
        polynomial_from_text(ring, "__import__('os')")
    with pytest.raises(JobParseError):
        polynomial_from_text(ring, "x.y")


def test_corpus_job_needs_no_ring():
    spec = parse_job("run corpus m-squared koszul-m format=structured;")
    assert spec.ring is None
    assert spec.runs[0].arguments == ["m-squared", "koszul-m"]
    assert spec.runs[0].options == {"format": "structured"}


def test_build_ideals_names_each_ideal():
    spec = parse_job(EXAMPLE)
    ideals = build_ideals(spec)
    assert set(ideals) == {"I", "A"}
    assert ideals["I"].name == "I"
    assert ideals["I"].mu == 3
