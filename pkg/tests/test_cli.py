import json
import pathlib

import jsonschema
import pytest
from click.testing import CliRunner

from fpcat.cli import main
from fpcat.runner import run_script

GOLDEN = pathlib.Path(__file__).parent / "golden"

EXT_SCRIPT = """\
ring R = zmod 4
module Z2 = coker R right [[2]]
module Z4 = free R right 1
morphism f : Z2 -> Z4 images [2]
functor E = fp f
eval E at Z2
eval E at Z4
"""


@pytest.fixture(scope="module")
def schema():
    out = CliRunner().invoke(main, ["schema"])
    assert out.exit_code == 0
    data = json.loads(out.stdout)
    jsonschema.Draft202012Validator.check_schema(data)
    return data


def _run(tmp_path, text, *flags):
    path = tmp_path / "s.fpc"
    path.write_text(text)
    return CliRunner().invoke(main, ["run", str(path), *flags])


def test_eval_of_ext_functor():
    rep = run_script(EXT_SCRIPT).to_json()
    evals = [r for r in rep["results"] if r.get("command", "").startswith("eval")]
    assert evals[0]["result"]["invariant_factors"] == [2]
    assert evals[1]["result"]["invariant_factors"] == []


def test_empty_program(tmp_path, schema):
    out = _run(tmp_path, "")
    assert out.exit_code == 0
    data = json.loads(out.stdout)
    assert data["results"] == [] and data["status"] == "pass"
    jsonschema.validate(data, schema)


def test_reports_are_deterministic_and_valid(tmp_path, schema):
    a = _run(tmp_path, EXT_SCRIPT, "--seed", "3")
    b = _run(tmp_path, EXT_SCRIPT, "--seed", "3")
    assert a.exit_code == 0 and a.stdout == b.stdout
    data = json.loads(a.stdout)
    jsonschema.validate(data, schema)
    assert data["seed"] == 3 and "timing_seconds" not in data


def test_timing_flag(tmp_path, schema):
    out = _run(tmp_path, EXT_SCRIPT, "--timing")
    data = json.loads(out.stdout)
    assert len(data["timing_seconds"]) == len(data["results"])
    jsonschema.validate(data, schema)


def test_failed_check_sets_exit_code(tmp_path, schema):
    text = EXT_SCRIPT + "morphism z : Z4 -> Z2 images [0]\npurity f z\n"
    out = _run(tmp_path, text)
    assert out.exit_code == 1
    data = json.loads(out.stdout)
    assert data["status"] == "fail"
    assert data["results"][-1]["status"] == "fail"
    jsonschema.validate(data, schema)


def test_runtime_error_keeps_span(tmp_path, schema):
    text = "ring R = zmod 4\nmodule Big = free R right 7\n"
    out = _run(tmp_path, text)
    assert out.exit_code == 1
    data = json.loads(out.stdout)
    assert data["error"]["type"] == "SizeLimitError"
    assert (data["error"]["line"], data["error"]["column"]) == (2, 1)
    jsonschema.validate(data, schema)
    # the bound is a flag
    out = _run(tmp_path, text, "--max-module-size", "20000")
    assert out.exit_code == 0


def test_parse_error_goes_to_stderr(tmp_path):
    out = _run(tmp_path, "module M = coker Q right [[2]]\n")
    assert out.exit_code == 2
    assert "1:18: undefined name Q" in out.stderr
    assert out.stdout == ""


def test_text_format(tmp_path):
    out = _run(tmp_path, EXT_SCRIPT, "--format", "text")
    assert "eval E at Z2 -> Z/2" in out.output
    assert out.output.rstrip().endswith("PASS")


def test_debug_extensional_flag(tmp_path):
    text = EXT_SCRIPT + "functor D = dual E\ndr D\n"
    assert _run(tmp_path, text, "--debug-extensional").exit_code == 0


def test_table_ring_file(tmp_path):
    from fpcat.rings import make_upper_triangular_f2

    (tmp_path / "t2.json").write_text(json.dumps(make_upper_triangular_f2().to_json()))
    text = ("ring T = table t2.json\nmodule P = free T right 1\nmodule S = coker T right [[4], [2]]\n"
            "hom P S\n")
    out = _run(tmp_path, text)
    assert out.exit_code == 0, out.output
    assert json.loads(out.stdout)["results"][-1]["result"]["invariant_factors"] == [2]


def test_verify_json(schema):
    out = CliRunner().invoke(main, ["verify", "--ring", "Z4", "--format", "json", "--samples", "5"])
    assert out.exit_code == 0
    data = json.loads(out.stdout)
    jsonschema.validate(data, schema)
    assert data["corpus"]["right"]["functors"] == 14


def test_verify_unknown_ring():
    out = CliRunner().invoke(main, ["verify", "--ring", "Q"])
    assert out.exit_code == 2
    assert "UnsupportedRingError" in out.stderr


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.fpc")), ids=lambda p: p.stem)
def test_golden_reports_validate(path, schema):
    jsonschema.validate(json.loads(path.with_suffix(".json").read_text()), schema)
