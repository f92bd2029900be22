import json

import pytest

from hurwitz1.cli import parse_complex, parse_point, run
from hurwitz1.errors import DomainError


@pytest.mark.parametrize(
    "text,value",
    [
        ("1", 1.0),
        ("-2.5", -2.5),
        ("0.0+0.159154943i", 0.159154943j),
        ("2i", 2j),
        ("-i", -1j),
        ("1 - 2 i", 1 - 2j),
        ("1.5e-3+2e4j", 1.5e-3 + 2e4j),
        ("j", 1j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_complex_rejects_garbage():
    for bad in ("", "1+2", "abc", "1i+2"):
        with pytest.raises(DomainError):
            parse_complex(bad)


def test_parse_point():
    assert parse_point("1,0,-1") == [1.0, 0.0, -1.0]
    assert parse_point("1, 0.5i, -1") == [1.0, 0.5j, -1.0]


def test_eval_exit_codes(capsys, tmp_path):
    assert run(["eval", "--kind", "holo-s", "--point", "1,0,0.0+0.159154943i",
                "--what", "F", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "0.07957747" in out
    # wrong arity -> usage/domain error
    assert run(["eval", "--kind", "holo-s", "--point", "1,0", "--what", "F"]) == 2
    # malformed literal
    assert run(["eval", "--kind", "holo-s", "--point", "1,xx,0", "--what", "F"]) == 2
    # unknown kind is an argparse error
    assert run(["eval", "--kind", "nope", "--point", "1,0,0"]) == 2


def test_eval_coords(capsys):
    assert run(["eval", "--kind", "double-t", "--what", "coords",
                "--branch", "1,0,-1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["result"]["coords"]) == 6
    assert abs(float(doc["result"]["mu"]["im"]) - 1.0) < 1e-10


def test_kernels_command(capsys):
    assert run(["kernels", "--branch", "1,0,-1", "--check", "flatness",
                "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"] == {"checks": 1, "passed": 1, "failed": 0}
    flat = doc["checks"][0]
    assert flat["check_name"] == "flatness"
    assert float(flat["residuals"]["flat1"]) < 1e-6


def test_verify_json_reproducible(tmp_path):
    args = ["verify", "--kind", "holo-s", "--samples", "1", "--seed", "0",
            "--skip-kernels", "--format", "json"]
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(args + ["--output", str(p1)]) == 0
    assert run(args + ["--output", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    doc = json.loads(p1.read_text())
    assert doc["schema_version"] == 1
    assert doc["command"] == "verify"
    assert doc["summary"]["failed"] == 0
    names = {c["check_name"] for c in doc["checks"]}
    assert {"wdvv", "associativity", "f1_metric", "euler", "getzler", "unit_field"} <= names


def test_verify_tolerance_override_fails():
    assert run(["verify", "--kind", "holo-s", "--samples", "1", "--seed", "0",
                "--skip-kernels", "--tolerance", "wdvv=1e-30",
                "--format", "json", "--output", "/dev/null"]) == 1
    # unknown tolerance name -> usage error
    assert run(["verify", "--kind", "holo-s", "--tolerance", "bogus=1"]) == 2


def test_verify_csv(tmp_path):
    out = tmp_path / "r.csv"
    assert run(["verify", "--kind", "holo-s", "--samples", "1", "--seed", "0",
                "--skip-kernels", "--format", "csv", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("check_name,kind,seed,residual")
    assert len(lines) > 5


def test_fixtures_command(tmp_path, capsys):
    out = tmp_path / "fix.json"
    assert run(["fixtures", "--output", str(out)]) == 0
    capsys.readouterr()
    table = json.loads(out.read_text())
    assert "T1P_I" in table
