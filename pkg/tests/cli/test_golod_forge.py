from __future__ import annotations

import json

import pytest

from src.cli import golod_forge
from src.services.errors import EngineInvariantError

JOB = "ring 3 x y z mod 32003;\nideal M = x, y, z;\nrun resolve M;\n"


def _run(argv) -> int:
    with pytest.raises(SystemExit) as info:
        golod_forge.main([str(arg) for arg in argv])
    return info.value.code


def test_text_report_on_stdout(tmp_path, capsys):
    job = tmp_path / "m.job"
    job.write_text(JOB, encoding="utf-8")
    assert _run([job]) == 0
    assert "ranks: 1 3 3 1" in capsys.readouterr().out


def test_structured_report_to_file(tmp_path):
    job = tmp_path / "m.job"
    job.write_text(JOB, encoding="utf-8")
    out = tmp_path / "reports" / "m.json"
    assert _run([job, "--format", "structured", "--out", out]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["schema_version"] == "1"


def test_job_format_option_selects_structured_output(tmp_path, capsys):
    job = tmp_path / "m.job"
    job.write_text(JOB.replace("run resolve M;", "run resolve M format=structured;"), encoding="utf-8")
    assert _run([job]) == 0
    assert json.loads(capsys.readouterr().out)["runs"][0]["ranks"] == [1, 3, 3, 1]


def test_parse_error_exits_2(tmp_path, capsys):
    job = tmp_path / "bad.job"
    job.write_text("ring 3 x y z mod 32003;\nideal I = x + y^2;\nrun resolve I;\n", encoding="utf-8")
    assert _run([job]) == 2
    assert "line 2, column 11" in capsys.readouterr().err


def test_precondition_exits_3(tmp_path):
    job = tmp_path / "bad.job"
    job.write_text("ring 3 x y z mod 32003;\nideal A = x^2, y^2;\nideal I = x^2, z;\nrun product-resolution A I;\n", encoding="utf-8")
    assert _run([job]) == 3


def test_missing_job_file_exits_3(tmp_path):
    assert _run([tmp_path / "absent.job"]) == 3


def test_invariant_violation_exits_4(tmp_path, monkeypatch):
    job = tmp_path / "m.job"
    job.write_text(JOB, encoding="utf-8")

    def broken(spec, settings):
        raise EngineInvariantError("d*d != 0")

    monkeypatch.setattr(golod_forge, "run_job", broken)
    assert _run([job]) == 4
