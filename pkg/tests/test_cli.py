import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from regsys.cli import main
from regsys.io import DocumentError, SystemDocument, dumps, loads
from regsys.system import FeedbackTransform, LinSys, apply_feedback
from regsys.matrix import Mat


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


Z6_CHAIN = {"modulus": 6, "n": 2, "m": 1, "A": [[3, 0], [4, 3]], "B": [[4], [0]]}


def test_canonical_example(capsys):
    code, out, _ = run(["canonical", "--example", "z210"], capsys)
    assert code == 0
    report = json.loads(out)
    assert [c["idempotent"] for c in report["components"]] == [36, 70, 105]
    assert [c["kronecker_indices"] for c in report["components"]] == [[2, 1, 1], [3], []]
    assert report["input"]["label"]


def test_canonical_zero_input(tmp_path, capsys):
    path = write(tmp_path, "s.json", {"modulus": 30, "n": 2, "m": 1, "A": [[1, 2], [3, 4]], "B": [[0], [0]]})
    code, out, _ = run(["canonical", path], capsys)
    (comp,) = json.loads(out)["components"]
    assert code == 0 and comp["idempotent"] == 1
    assert comp["kronecker_indices"] == [] and len(comp["C_hat"]) == 2


def test_canonical_reads_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(Z6_CHAIN)))
    code, out, _ = run(["canonical", "-"], capsys)
    assert code == 0 and json.loads(out)["modulus"] == 6


def test_not_squarefree_exit(tmp_path, capsys):
    path = write(tmp_path, "s.json", {"modulus": 12, "n": 1, "m": 1, "A": [[1]], "B": [[0]]})
    code, _, err = run(["canonical", path], capsys)
    assert code == 3
    assert "2^2" in err


@pytest.mark.parametrize("text", [
    "{not json",
    json.dumps([1, 2]),
    json.dumps({"modulus": 6, "n": 2, "m": 1, "A": [[1, 2]], "B": [[0], [0]]}),
    json.dumps({"modulus": 6, "n": 1, "m": 1, "A": [[1]]}),
    json.dumps({"modulus": 6, "n": 1, "m": 1, "A": [["x"]], "B": [[0]]}),
    json.dumps({"modulus": 6, "n": 1, "m": 1, "A": [[1]], "B": [[0]], "label": 3}),
])
def test_parse_errors_exit_2(tmp_path, capsys, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    for cmd in (["canonical"], ["invariants"], ["smith"], ["transform", "--seed", "1"]):
        code, out, err = run(cmd + [str(p)], capsys)
        assert code == 2 and out == "" and err.startswith("regsys:")


def test_missing_file_exit_2(capsys):
    code, _, _ = run(["canonical", "/nonexistent/file.json"], capsys)
    assert code == 2


def test_bad_usage_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["equiv", "only-one"])
    assert info.value.code == 2


def test_equiv_self(tmp_path, capsys):
    path = write(tmp_path, "s.json", Z6_CHAIN)
    code, out, _ = run(["equiv", path, path], capsys)
    assert code == 0 and json.loads(out) == {"equivalent": True, "method": "canonical"}


def test_equiv_transformed_copy_with_witness(tmp_path, capsys):
    src = write(tmp_path, "s.json", Z6_CHAIN)
    _, out, _ = run(["transform", src, "--seed", "4"], capsys)
    dst = tmp_path / "t.json"
    dst.write_text(out)
    code, out, _ = run(["equiv", src, str(dst), "--witness"], capsys)
    verdict = json.loads(out)
    assert code == 0 and verdict["equivalent"]
    s1, s2 = loads(json.dumps(Z6_CHAIN)).system(), loads(dst.read_text()).system()
    w = verdict["witness"]
    ctx = s1.ctx
    t = FeedbackTransform(Mat(w["P"], ctx), Mat(w["Q"], ctx), Mat(w["K"], ctx))
    assert apply_feedback(s1, t) == s2


def test_equiv_example_against_its_105_part(tmp_path, capsys, z210_doc):
    s = z210_doc.system()
    part = SystemDocument.from_system(LinSys(s.A * 105, s.B * 105))
    a = write(tmp_path, "a.json", z210_doc.to_dict())
    b = write(tmp_path, "b.json", part.to_dict())
    code, out, _ = run(["equiv", a, b], capsys)
    assert code == 1 and json.loads(out)["equivalent"] is False


def test_equiv_nk_method(tmp_path, capsys):
    doc = {"modulus": 30, "n": 2, "m": 1, "A": [[0, 0], [1, 0]], "B": [[1], [0]]}
    path = write(tmp_path, "s.json", doc)
    code, out, _ = run(["equiv", path, path, "--method", "nk"], capsys)
    assert code == 0 and json.loads(out)["method"] == "nk_factors"
    unreachable = write(tmp_path, "u.json", dict(doc, B=[[0], [0]]))
    code, _, _ = run(["equiv", unreachable, unreachable, "--method", "nk"], capsys)
    assert code == 2


def test_equiv_mismatch_exit_2(tmp_path, capsys):
    a = write(tmp_path, "a.json", Z6_CHAIN)
    b = write(tmp_path, "b.json", dict(Z6_CHAIN, modulus=30))
    c = write(tmp_path, "c.json", {"modulus": 6, "n": 1, "m": 1, "A": [[0]], "B": [[1]]})
    assert run(["equiv", a, b], capsys)[0] == 2
    assert run(["equiv", a, c], capsys)[0] == 2


def test_invariants(tmp_path, capsys):
    p = write(tmp_path, "i.json", {"modulus": 6, "n": 2, "m": 2, "A": [[0, 0], [0, 0]], "B": [[1, 0], [0, 1]]})
    code, out, _ = run(["invariants", p], capsys)
    assert code == 0
    assert json.loads(out)["nk_invariant_factors"] == [[1, 1], [1, 1]]
    p = write(tmp_path, "b.json", {"modulus": 6, "n": 2, "m": 1, "A": [[0, 0], [1, 0]], "B": [[1], [0]]})
    assert json.loads(run(["invariants", p], capsys)[1])["single_input_d"] == [1, 1]
    p = write(tmp_path, "c.json", Z6_CHAIN)
    assert json.loads(run(["invariants", p], capsys)[1])["single_input_d"] == [4, 4]


def test_transform_deterministic(tmp_path, capsys):
    p = write(tmp_path, "s.json", Z6_CHAIN)
    first = run(["transform", p, "--seed", "0"], capsys)[1]
    again = run(["transform", p, "--seed", "0"], capsys)[1]
    other = run(["transform", p, "--seed", "1"], capsys)[1]
    assert first == again != other
    assert set(json.loads(first)) >= {"modulus", "n", "m", "A", "B", "transform"}


def test_smith(tmp_path, capsys):
    p = write(tmp_path, "s.json", {"modulus": 6, "n": 2, "m": 2, "A": [[0, 0], [0, 0]], "B": [[2, 0], [0, 3]]})
    code, out, _ = run(["smith", p], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["d"] == [1] and res["D"] == [[1, 0], [0, 0]]


def test_pretty_color_switch(monkeypatch, capsys):
    monkeypatch.setenv("REGSYS_COLOR", "0")
    plain = run(["canonical", "--example", "z210", "--pretty"], capsys)[1]
    assert "\033[" not in plain
    assert "e = 70" in plain and "140" in plain and "---" in plain
    monkeypatch.setenv("REGSYS_COLOR", "1")
    colored = run(["canonical", "--example", "z210", "--pretty"], capsys)[1]
    assert "\033[" in colored


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "regsys", "canonical", "--example", "z210"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


def test_load_reduces_entries():
    doc = loads(json.dumps({"modulus": 6, "n": 1, "m": 1, "A": [[-1]], "B": [[13]]}))
    assert doc.A == ((5,),) and doc.B == ((1,),)


def test_field_names_exact():
    doc = loads(json.dumps(dict(Z6_CHAIN, label="x")))
    assert list(doc.to_dict()) == ["modulus", "n", "m", "A", "B", "label"]


def test_bad_modulus_type():
    with pytest.raises(DocumentError):
        loads(json.dumps(dict(Z6_CHAIN, modulus="6")))


@st.composite
def documents(draw):
    mod = draw(st.sampled_from([2, 6, 30, 210, 2310]))
    n = draw(st.integers(1, 4))
    m = draw(st.integers(0, 3))
    entry = st.integers(0, mod - 1)
    A = draw(st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n))
    B = draw(st.lists(st.lists(entry, min_size=m, max_size=m), min_size=n, max_size=n))
    label = draw(st.none() | st.text(max_size=10))
    return SystemDocument(mod, n, m, tuple(map(tuple, A)), tuple(map(tuple, B)), label)


@settings(max_examples=100, deadline=None)
@given(documents())
def test_round_trip(doc):
    assert loads(dumps(doc.to_dict())) == doc
    assert SystemDocument.from_system(doc.system(), doc.label) == doc
