import json
import os
import subprocess
import sys

import pytest

from greenops.cli import main

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "goldens")


def run(args):
    return main(args)


def test_pipeline_ok(capsys):
    assert run(["pipeline", "--group", "C2", "--m", "2", "--theory", "burnside",
                "--ideal", "j"]) == 0
    out = capsys.readouterr().out
    assert "transfer-commutes: pass" in out


def test_pipeline_itr_documents_failure(capsys):
    assert run(["pipeline", "--group", "C2", "--m", "2", "--theory", "burnside",
                "--ideal", "itr"]) == 0
    out = capsys.readouterr().out
    assert "transfer-commutes: FAIL" in out


def test_verify_green_map_exit_codes(capsys):
    assert run(["verify", "green-map", "--group", "C2", "--m", "2",
                "--theory", "ru", "--ideal", "itr"]) == 2
    assert run(["verify", "green-map", "--group", "C2", "--m", "2",
                "--theory", "ru", "--ideal", "j"]) == 0


def test_unsupported_configuration(capsys):
    # a group outside the catalog
    assert run(["pipeline", "--group", "E8", "--m", "2",
                "--theory", "burnside"]) == 3
    # RU needs tables for every subgroup; S4 contains A4
    assert run(["pipeline", "--group", "S4", "--m", "2", "--theory", "ru"]) == 3


def test_cap_exceeded(capsys):
    assert run(["pipeline", "--group", "S8", "--m", "2",
                "--theory", "burnside"]) == 4


def test_determinism(tmp_path, capsys):
    texts = []
    for _ in range(2):
        assert run(["pipeline", "--group", "S3", "--m", "2", "--theory", "ru",
                    "--ideal", "j", "--format", "json"]) == 0
        texts.append(capsys.readouterr().out)
    assert texts[0] == texts[1]
    data = json.loads(texts[0])
    assert data["schema"] == "greenops.report/v1"
    assert data["verification"]["transfer-commutes"] is True


def test_gset_dump(capsys):
    assert run(["gset-dump", "--group", "S3", "--subgroup", "(0 1)"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["orbits"][0]["length"] * 2 == 6
    assert run(["gset-dump", "--group", "C2", "--power", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert sum(o["length"] * o["count"] for o in data["orbits"]) == 4


def test_burnside_marks_csv(capsys):
    assert run(["burnside-marks", "C2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == ",C2,1"
    assert lines[1] == "C2,2,0"
    assert lines[2] == "1,1,1"


def test_burnside_pow(capsys):
    assert run(["burnside-pow", "C2", "2", "1,0"]) == 0
    out = capsys.readouterr().out.strip()
    assert "Gamma/" in out or "Gamma" in out
    assert run(["burnside-pow", "C2", "2", "1"]) == 3  # wrong length


def test_charfun_table(capsys):
    assert run(["charfun-table", "S3"]) == 0
    out = capsys.readouterr().out
    assert "orthogonality: pass" in out
    assert "W: 2 0 -1" in out


def test_height2_cmd(capsys):
    assert run(["height2"]) == 0
    out = capsys.readouterr().out
    assert "a^2" in out and "| (0, 1) | b^2 | a | b | b |" in out


def test_report_examples_and_golden_diff(tmp_path):
    """Regenerated reports are byte-identical to the committed goldens."""
    out = tmp_path / "goldens"
    assert run(["report-examples", "--out", str(out)]) == 0
    committed = sorted(os.listdir(GOLDEN_DIR))
    fresh = sorted(os.listdir(out))
    assert committed == fresh
    for name in committed:
        with open(os.path.join(GOLDEN_DIR, name), "rb") as fh:
            want = fh.read()
        with open(out / name, "rb") as fh:
            got = fh.read()
        assert got == want, f"golden drift in {name}"


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "greenops.cli", "verify",
                           "power-formulas"],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0
    assert "pass" in proc.stdout


def test_functor_json_schema():
    import jsonschema

    from greenops import burnside_green_functor, cyclic_group, parse_group
    from greenops.reports import functor_to_json

    schema_path = os.path.join(os.path.dirname(__file__), os.pardir,
                               "schemas", "functor.v1.json")
    with open(schema_path) as fh:
        schema = json.load(fh)
    for spec in ("C2", "S3"):
        data = json.loads(functor_to_json(burnside_green_functor(parse_group(spec))))
        jsonschema.validate(data, schema)


def test_report_json_schema():
    import jsonschema

    from greenops.reports import PipelineReport
    from greenops import parse_group

    schema_path = os.path.join(os.path.dirname(__file__), os.pardir,
                               "schemas", "report.v1.json")
    with open(schema_path) as fh:
        schema = json.load(fh)
    rep = PipelineReport(parse_group("S3"), 2, "ru", "j")
    jsonschema.validate(json.loads(rep.to_json()), schema)
