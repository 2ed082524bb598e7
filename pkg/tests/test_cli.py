from __future__ import annotations

import json

import pytest

from cli_corpus import CORPUS, GOLDEN, HERE, ONE, PROJ1, PROJ2, TWO, run_cli, run_corpus
from prolam.cli import main
from prolam.model import interpret
from prolam.syntax import parse_term


@pytest.fixture(autouse=True)
def _in_tests_dir(monkeypatch):
    monkeypatch.chdir(HERE)


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- documented examples -------------------------------------------------------------------


def test_interp_prints_projection_table(capsys):
    code, out, _ = cli(capsys, "interp", "--q", "2", r"\x:o.\y:o.x")
    assert code == 0
    assert out.splitlines() == [
        "type  o -> o -> o",
        "q     2",
        "index 12",
        "table",
        "  0 0 -> 0",
        "  0 1 -> 0",
        "  1 0 -> 1",
        "  1 1 -> 1",
    ]


def test_separate_numerals(capsys):
    code, out, _ = cli(capsys, "pro", "separate", r"\f:o->o.\x:o.f x", r"\f:o->o.\x:o.f (f x)", "--max-q", "4")
    assert (code, out) == (0, "separated at q=2\n")
    code, out, _ = cli(capsys, "pro", "separate", ONE, r"\f:o->o. f", "--max-q", "3")
    assert out == "not separated up to q=3\n"


def test_dfa_run_parity(capsys):
    assert cli(capsys, "dfa", "run", "fixtures/parity.json", "ab")[:2] == (0, "state 1, accepted\n")
    assert cli(capsys, "dfa", "run", "fixtures/parity.json")[1] == "state 0, rejected\n"
    assert cli(capsys, "dfa", "accepts", "fixtures/parity.json", "aab")[1] == "rejected\n"


def test_human_outputs(capsys):
    assert cli(capsys, "check", r"\x:o. x")[1] == "\\x:o. x : o -> o\n"
    assert cli(capsys, "normalize", "@fixtures/two.term")[1] == "\\f:o -> o. \\x:o. f (f x)\n"
    out = cli(capsys, "def", "o -> o -> o", "--q", "2")[1]
    assert out.splitlines()[0] == "Def(o -> o -> o) at q=2: 2 element(s), exact (first-order)"
    out = cli(capsys, "dfa", "monoid", "fixtures/parity.json")[1]
    assert out.splitlines() == ["transition monoid of size 2 on [2]", "  0: [0, 1]  (unit, b)", "  1: [1, 0]  (a)"]
    out = cli(capsys, "pro", "check-natural", "fixtures/mixed_projections.json")[1]
    assert out == "not natural: f: [3] -> [2] = [0, 1, -]\n"
    out = cli(capsys, "pro", "check-parametric", PROJ1, "--k", "2")[1]
    assert out.startswith("parametric (") and out.endswith("exhaustive)\n")
    out = cli(capsys, "pro", "omega", "--type", "o", "--k", "2")[1]
    assert out.splitlines()[0] == "type (o -> o) -> o -> o, k=2"
    out = cli(capsys, "lang", "member", "fixtures/proj1_q2.json", PROJ1)[1]
    assert out == "member\n"


def test_lang_commands_emit_json(capsys):
    out = cli(capsys, "lang", "embed", "fixtures/proj1_q2.json", "--q", "3")[1]
    lang = json.loads(out)
    p1 = str(interpret(parse_term(PROJ1), 3).index)
    p2 = str(interpret(parse_term(PROJ2), 3).index)
    assert lang["q"] == 3 and p1 in lang["accepting"] and p2 not in lang["accepting"]


def test_approximant_file_roundtrip(capsys, tmp_path):
    path = tmp_path / "theta.json"
    path.write_text(cli(capsys, "pro", "iota", TWO, "--k", "2", "--json")[1])
    code, out, _ = cli(capsys, "pro", "check-natural", str(path), "--json")
    assert code == 0 and json.loads(out)["natural"] is True
    code, out, _ = cli(capsys, "pro", "compose", str(path), str(path), "--json")
    assert json.loads(out)["type"] == "(o -> o) -> o -> o"


# --- errors ----------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["check", r"\x:o. y"],
        ["check", r"\x:o. x x"],
        ["interp", "--q", "3", r"\u:(o->o)->o. \x:o. x", "--cap", "100"],
        ["dfa", "run", "fixtures/parity.json", "abc"],
        ["dfa", "run", "fixtures/missing.json", "ab"],
        ["dfa", "run", "fixtures/broken.json", "ab"],
        ["dfa", "run", "fixtures/bad_dfa.json", "a"],
        ["lang", "member", "fixtures/proj1_q2.json", r"\x:o. x"],
        ["lang", "op", "union", "fixtures/proj1_q2.json", "fixtures/parity.json"],
        ["lang", "embed", "fixtures/proj1_q2.json", "--q", "1"],
        ["pro", "compose", PROJ1, PROJ1],
        ["pro", "word-omega", PROJ1],
        ["normalize", "@fixtures/nothing.term"],
    ],
    ids=lambda a: " ".join(a[:2]),
)
def test_domain_errors_exit_one(capsys, argv):
    code, out, err = cli(capsys, *argv)
    assert code == 1 and out == ""
    assert err.startswith("error: ")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["interp", r"\x:o. x"],
        ["interp", "--q", "0", r"\x:o. x"],
        ["lang", "frobnicate"],
        ["pro", "separate", ONE],
        ["lang", "op", "xor", "a.json", "b.json"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage:" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["lang", "op", "complement", "fixtures/proj1_q2.json", "fixtures/proj2_q2.json"],
        ["lang", "op", "union", "fixtures/proj1_q2.json"],
        ["pro", "omega"],
    ],
)
def test_semantic_usage_errors_exit_two(capsys, argv):
    code, _, err = cli(capsys, *argv)
    assert code == 2 and "usage:" in err


def test_module_entry_point():
    proc = run_cli(["check", r"\x:o. x"])
    assert proc.returncode == 0 and proc.stdout == b"\\x:o. x : o -> o\n"
    assert run_cli(["check", r"\x:o. y"]).returncode == 1
    assert run_cli(["check"]).returncode == 2


# --- golden corpus ---------------------------------------------------------------------------


def test_golden_corpus_matches():
    outputs = run_corpus()
    assert set(outputs) == {p.stem for p in GOLDEN.glob("*.json")} == set(CORPUS)
    for name, data in outputs.items():
        assert data == (GOLDEN / f"{name}.json").read_bytes(), name
