import pathlib

import pytest
from hypothesis import given, strategies as st

from fpcat.dsl import ScriptError, parse_script

GOLDEN = pathlib.Path(__file__).parent / "golden"
SCRIPTS = sorted(GOLDEN.glob("*.fpc"))


def test_two_statements():
    prog = parse_script("ring R = zmod 4\nmodule M = coker R right [[2]]\n")
    assert len(prog) == 2
    assert [s.kind for s in prog.statements] == ["ring", "module"]


def test_undefined_name_has_span():
    with pytest.raises(ScriptError) as exc:
        parse_script("module M = coker Q right [[2]]")
    assert exc.value.bare == "undefined name Q"
    assert (exc.value.line, exc.value.column) == (1, 18)


def test_demo_script_has_eight_statements():
    prog = parse_script((GOLDEN / "demo.fpc").read_text())
    assert len(prog) == 8
    assert [s.kind for s in prog.statements] == [
        "ring", "module", "module", "morphism", "functor", "eval", "dual", "check"]


@pytest.mark.parametrize("path", SCRIPTS, ids=lambda p: p.stem)
def test_round_trip(path):
    prog = parse_script(path.read_text())
    again = parse_script(prog.to_source())
    assert again == prog
    assert again.to_source() == prog.to_source()


@pytest.mark.parametrize("text, line, column, fragment", [
    ("ring R = zmod 4\nring R = zmod 6\n", 2, 6, "already defined"),
    ("ring R = zmod 4\nmodule M = coker R up [[2]]\n", 2, 20, "left or right"),
    ("ring R = zmod 4\nmodule M = coker R right [[2]]\nfunctor F = fp M\n", 3, 16, "is a module"),
    ("ring R = zmod 4\nmodule M = coker R right [[2]]\nmodule N = coker R left [[2]]\n"
     "morphism f : M -> N images [1]\n", 4, 19, "same side"),
    ("ring R = zmod 4\nmodule M = coker R right [[2]]\ntensor M M\n", 3, 10, "right module and a left"),
    ("ring R = zmod 4\ncheck sanity\n", 2, 7, "unknown check"),
    ("ring R = zmod 4\nsuite ring=R maxgens=x\n", 2, 22, "integer"),
    ("ring R = zmod 4\ncheck duality ring=S\n", 2, 20, "undefined name S"),
    ("ring R = zmod 4\ncheck duality depth=2\n", 2, 15, "unknown option"),
    ("ring R = zmod 4 $\n", 1, 17, "unexpected character"),
    ("frobnicate\n", 1, 1, "unknown statement"),
])
def test_errors_carry_positions(text, line, column, fragment):
    with pytest.raises(ScriptError) as exc:
        parse_script(text)
    assert fragment in exc.value.bare
    assert exc.value.line == line
    assert exc.value.column == column


def test_comments_and_blank_lines():
    prog = parse_script("# header\n\nring R = zmod 4   # trailing\n")
    assert len(prog) == 1 and prog.statements[0].line == 3


def test_empty_program():
    assert len(parse_script("")) == 0


names = st.from_regex(r"[A-Z][a-z0-9]{0,3}", fullmatch=True).filter(lambda s: s not in ("R", "F", "Fr"))
rows = st.lists(st.lists(st.integers(0, 3), min_size=2, max_size=2), min_size=1, max_size=3)


@given(names, rows, st.integers(0, 3), st.sampled_from(["left", "right"]))
def test_generated_scripts_round_trip(name, matrix, image, side):
    text = (f"ring R = zmod 4\n"
            f"module {name} = coker R {side} {matrix}\n"
            f"module Fr = free R {side} 1\n"
            f"morphism g : Fr -> {name} images [({image}, 0)]\n"
            f"functor F = fp g\n"
            f"eval F at {name}\n")
    prog = parse_script(text)
    assert parse_script(prog.to_source()) == prog
