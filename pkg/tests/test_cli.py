import io
import json
import pathlib
import subprocess
import sys

import pytest

from catconj.cli import main
from catconj.docformat import parse, serialize
from catconj.loader import Loader

ROOT = pathlib.Path(__file__).resolve().parent.parent
EXAMPLES = sorted((ROOT / "docs" / "examples").glob("*.cat"))
DATA = pathlib.Path(__file__).resolve().parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def write(tmp_path, text, name="doc.cat"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


@pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.name)
def test_examples_are_canonical(path):
    code, text = run("format", path)
    assert code == 0 and text == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.name)
def test_examples_check_clean(path):
    code, text = run("check", path)
    recs = records(text)
    assert code == 0, text
    assert recs[-1]["summary"]["fail"] == recs[-1]["summary"]["error"] == 0
    body = [(r["subject"], r["check"]) for r in recs[:-1]]
    assert body == sorted(body)


def test_loop_document_fails_with_a_witness():
    code, text = run("check", DATA / "stacking_loop.cat")
    assert code == 1
    bad = [r for r in records(text) if r.get("status") == "fail"]
    assert any("lower:t1-t2 upper:b1-b2" in json.dumps(r["witness"]) for r in bad)


def test_parse_error_reports_position(tmp_path):
    p = write(tmp_path, "category X {\n  objects: [a, b\n}\n")
    code, text = run("check", p)
    rec = records(text)[0]
    assert code == 2 and rec["error"] == "parse" and rec["line"] == 2


def test_unknown_kind_and_duplicate_names(tmp_path):
    assert run("check", write(tmp_path, "widget w {\n}\n", "a.cat"))[0] == 2
    dup = "category X {\n  objects: [a]\n}\ncategory X {\n  objects: [a]\n}\n"
    code, text = run("check", write(tmp_path, dup, "b.cat"))
    assert code == 2 and "duplicate" in records(text)[0]["message"]


def test_unresolved_reference_is_an_error(tmp_path):
    p = write(tmp_path, "functor F {\n  source: X\n  target: X\n  thin: true\n}\n")
    code, text = run("check", p)
    assert code == 2


def test_forward_reference(tmp_path):
    doc = ("functor I {\n  source: X\n  target: X\n  thin: true\n  obj a -> b\n  obj b -> b\n}\n\n"
           "category X {\n  objects: [a, b]\n  thin: true\n  morphism ab: a -> b\n}\n")
    code, text = run("check", write(tmp_path, doc))
    assert code == 0, text


def test_empty_document(tmp_path):
    p = write(tmp_path, "")
    code, text = run("check", p)
    assert code == 0 and records(text) == [{"summary": {"error": 0, "fail": 0, "pass": 0}}]
    assert run("format", p) == (0, "")


def test_usage_errors():
    assert run()[0] == 2
    assert run("check", EXAMPLES[0], "--select", "no-such-check")[0] == 2
    assert run("compute", EXAMPLES[0], "--op", "nonsense", "--args", "x")[0] == 2
    assert run("check", "/nonexistent/file.cat")[0] == 2


def test_select_by_check_name():
    code, text = run("check", ROOT / "docs" / "examples" / "closed.cat", "--select", "closed")
    recs = records(text)[:-1]
    assert code == 0 and recs and {r["check"] for r in recs} == {"closed"}


def test_output_is_deterministic():
    for path in EXAMPLES:
        assert run("check", path) == run("check", path)


def test_comments_survive_formatting(tmp_path):
    text = "# top\ncategory X {\n  # inner\n  objects: [a]\n}\n"
    assert serialize(parse(text)) == text


ROTATION = """\
category Z4 {
  objects: ["*"]
  morphism 0: "*" -> "*"
  morphism 1: "*" -> "*"
  morphism 2: "*" -> "*"
  morphism 3: "*" -> "*"
  identity "*" = 0
  compose 1 1 = 2
  compose 1 2 = 3
  compose 1 3 = 0
  compose 2 1 = 3
  compose 2 2 = 0
  compose 2 3 = 1
  compose 3 1 = 0
  compose 3 2 = 1
  compose 3 3 = 2
}

nattrans k1 {
  source: id(Z4)
  target: id(Z4)
  component "*" = 1
}

nattrans k3 {
  source: id(Z4)
  target: id(Z4)
  component "*" = 3
}

nattrans k2 {
  source: id(Z4)
  target: id(Z4)
  component "*" = 2
}

adjunction a {
  left: id(Z4)
  right: id(Z4)
  unit: k1
  counit: k3
}

adjunction b {
  left: id(Z4)
  right: id(Z4)
  unit: k2
  counit: k2
}
"""


def test_compute_round_trip(tmp_path):
    p = write(tmp_path, ROTATION)
    mid, out = tmp_path / "mid.cat", tmp_path / "out.cat"
    assert run("check", p)[0] == 0
    assert run("compute", p, "--op", "conjugate_left", "--args", "k1", "a", "b", "--name", "phi", "--out", mid)[0] == 0
    assert run("compute", mid, "--op", "conjugate_right", "--args", "phi", "a", "b", "--name", "back",
               "--out", out)[0] == 0
    ld = Loader(parse(out.read_text()))
    # j_l(t) = -k_b + t + k_a = 2 + 1 + 1
    assert ld.value("phi")["*"] == "0"
    assert ld.value("back").same_as(ld.value("k1"))
    assert run("check", out)[0] == 0
    assert run("format", out)[1] == out.read_text()


def test_export_ek():
    code, text = run("export-ek", ROOT / "docs" / "examples" / "stacking.cat", "--term", "stacked")
    assert code == 0 and text.splitlines() == ["arc b0 b1 C", "arc b2 t0 A", "arc t1 t2 B"]


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "catconj.cli", "format", str(EXAMPLES[0])],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == EXAMPLES[0].read_text()
