import io
import json
import subprocess
import sys

from biint.cli import main
from biint.corpus import data_dir
from biint.derivation import parse_derivation
from biint.labelled import check_llbii, equal_up_to_renaming

from conftest import COUNTEREXAMPLE

DATA = data_dir()


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_exit_codes(capsys, tmp_path):
    path = str(DATA / "cut-standard.deriv")
    assert run(capsys, "check", "--calculus", "lbii", "--cuts", "full", path)[0] == 0
    code, out, _ = run(capsys, "check", "--calculus", "lbii", "--cuts", "none", path)
    assert code == 1 and out.strip() == "root: forbidden cut"
    bad = tmp_path / "bad.deriv"
    bad.write_text("(lbii (hyp")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "parse error" in err
    assert run(capsys, "check", "--calculus", "nlbii", path)[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.deriv"))[0] == 2


def test_check_extended_and_stdin(capsys, monkeypatch):
    text = (DATA / "unnest-nested.deriv").read_text()
    code, out, _ = run(capsys, "check", "--cuts", "none", "-", stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and out.startswith("ok: nlbii")


def test_prove(capsys):
    code, out, _ = run(capsys, "prove", "--calculus", "llbii", COUNTEREXAMPLE, "--depth", "12")
    assert code == 0
    calc, d = parse_derivation(out)
    assert calc == "llbii"
    check_llbii(d, "none")
    code, out, _ = run(capsys, "prove", "--calculus", "lbii-cutfree", COUNTEREXAMPLE, "--depth", "12")
    assert code == 1 and out.strip() == "exhausted"
    code, out, _ = run(capsys, "prove", "--calculus", "llbii", "|- T")
    assert code == 0 and parse_derivation(out)[1].size() == 1
    code, out, _ = run(capsys, "prove", "--calculus", "nlbii", "|- [p |- p]", "--depth", "3")
    assert code == 0
    assert run(capsys, "prove", "p |- &")[0] == 2


def test_translate(capsys, tmp_path):
    labelled = str(DATA / "monot-labelled.deriv")
    code, out, _ = run(capsys, "translate", "--from", "llbii", "--to", "lbii", "--root", "x", labelled)
    assert code == 0
    assert "; checked: ok" in out and "; cut-profile: unnest-only" in out
    assert parse_derivation(out)[0] == "lbii"
    assert run(capsys, "translate", "--from", "llbii", "--to", "lbii", labelled)[0] == 2

    hyp = tmp_path / "hyp.deriv"
    hyp.write_text('(lbii (hyp "p |- p"))')
    code, out, _ = run(capsys, "translate", "--from", "lbii", "--to", "nlbii", str(hyp))
    assert code == 0 and out.splitlines()[:2] == ["(nlbii", '  (hyp "p |- p"))']

    code, out, _ = run(capsys, "translate", "--from", "llbii", "--to", "nlbii", "--root", "x", labelled)
    nested = tmp_path / "nested.deriv"
    nested.write_text(out)
    code, out, _ = run(capsys, "translate", "--from", "nlbii", "--to", "llbii", "--root", "x", str(nested))
    assert code == 0
    original = parse_derivation((DATA / "monot-labelled.deriv").read_text())[1]
    assert equal_up_to_renaming(parse_derivation(out)[1].conclusion, original.conclusion)


def test_countermodel(capsys):
    code, out, _ = run(capsys, "countermodel", "|- p | (p -> F)", "--max-worlds", "2")
    assert code == 0 and out.startswith("worlds: w0 w1")
    code, out, _ = run(capsys, "countermodel", COUNTEREXAMPLE, "--max-worlds", "3")
    assert code == 1 and out.strip() == "none up to 3"
    for n in ("1", "2", "3"):
        assert run(capsys, "countermodel", "p |- p", "--max-worlds", n)[1].strip() == f"none up to {n}"


def test_parse(capsys):
    assert run(capsys, "parse", "p -> (q -> r)")[1].strip() == "p -> q -> r"
    assert run(capsys, "parse", "--kind", "nested", "[q |- p], r |- ")[1].strip() == "r, [q |- p] |-"
    assert run(capsys, "parse", "--kind", "labelled", "[x>y] y:p |- x:q")[1].strip() == "[x>y] y:p |- x:q"
    assert run(capsys, "parse", "p -")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_corpus_report_is_deterministic(capsys, tmp_path):
    code, first, _ = run(capsys, "corpus")
    assert code == 0
    assert run(capsys, "corpus")[1] == first
    assert "seconds" not in first
    assert "seconds" in run(capsys, "corpus", "--timing")[1]

    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps({"entries": [
        {"name": "wrong", "calculus": "lbii", "sequent": "p |- q", "expected": "proves", "depth": 3},
    ]}))
    code, out, _ = run(capsys, "corpus", "--manifest", str(manifest))
    assert code == 1 and "NO" in out


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "biint.cli", "parse", "~p"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "T -< p"
