import io
import subprocess
import sys
from pathlib import Path

import pytest

from rbsys.cli import emit_report, main, run_command
from rbsys.errors import InputError, ModelParseError
from rbsys.model import emit_model, parse_model, parse_text

MODELS = Path(__file__).resolve().parent.parent / "models"

# observed exit code of every command on every model, frozen as a regression table;
# columns follow COMMANDS below, rows the model stem
COMMANDS = ["validate", "check-rbs", "characterize", "induce", "cohomology", "deform", "aybp",
            "covariant", "perturb", "averaging", "homotopy", "quadri", "gauge", "reduce"]
EXPECTED = {
    "averaging_identity":     "01111122201222",
    "deformation":            "00000022210222",
    "deformation_obstructed": "00000122200222",
    "gauge":                  "00000022210202",
    "idempotent_identity":    "01111122201222",
    "idempotent_zero":        "00000022200222",
    "invalid_nonassociative": "22222222222222",
    "invalid_rational":       "22222222222222",
    "jackson":                "00000022210222",
    "nilpotent_aybp":         "02222200022222",
    "quadri_split":           "00000022210022",
    "reduce":                 "00000022210220",
    "two_term":               "00000022210222",
}


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main([str(a) for a in args])
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def test_every_model_parses_or_fails_with_a_named_error():
    for path in sorted(MODELS.glob("*.json")):
        if path.stem.startswith("invalid"):
            with pytest.raises(InputError):
                parse_model(path)
        else:
            doc = parse_model(path)
            assert doc.alg.dim >= 1


def test_semantic_error_names_triple():
    with pytest.raises(InputError) as e:
        parse_model(MODELS / "invalid_nonassociative.json")
    assert "(a, a, a)" in str(e.value)


def test_parse_error_has_position():
    with pytest.raises(InputError) as e:
        parse_model(MODELS / "invalid_rational.json")
    assert "line 5" in str(e.value) and "column 23" in str(e.value)
    with pytest.raises(ModelParseError) as e:
        parse_text('{"algebra": ')
    assert e.value.line == 1
    with pytest.raises(InputError):
        parse_text('{"algebra": {"basis": ["e"]}, "extra": 1}')
    with pytest.raises(InputError):
        parse_text("[1, 2]")


def test_round_trip_is_byte_identical():
    for path in sorted(MODELS.glob("*.json")):
        if path.stem.startswith("invalid"):
            continue
        text = path.read_text()
        assert emit_model(parse_text(text)) == text, path.name
        assert emit_model(parse_text(emit_model(parse_text(text)))) == text


def test_corpus_is_covered():
    assert sorted(p.stem for p in MODELS.glob("*.json")) == sorted(EXPECTED)


@pytest.mark.parametrize("command", COMMANDS)
def test_exit_codes(command):
    col = COMMANDS.index(command)
    for path in sorted(MODELS.glob("*.json")):
        want = int(EXPECTED[path.stem][col])
        code, out, err = run(command, path)
        assert code == want, (command, path.stem, err)
        if code == 2:
            assert err.startswith("error:") and out == ""
        else:
            assert out.rstrip().endswith("result=pass" if code == 0 else "result=fail")


def test_witness_line():
    code, out, _ = run("check-rbs", MODELS / "idempotent_identity.json")
    assert code == 1
    assert "witness check=rbs defect_R[e,e] = -1/1 component=e" in out.splitlines()


def test_characterize_flags_agree():
    code, out, _ = run("characterize", MODELS / "idempotent_identity.json")
    lines = out.splitlines()
    assert code == 1
    for name in ("rbs", "graph", "nijenhuis", "maurer_cartan"):
        assert f"check={name} pass=false" in lines
    assert "check=agree pass=true" in lines


def test_cohomology_line():
    code, out, _ = run("cohomology", MODELS / "idempotent_zero.json")
    assert code == 0 and "H0=2 H1=2 H2=2" in out.splitlines()
    code, _, err = run("cohomology", MODELS / "jackson.json", "--max-degree", "9")
    assert code == 2 and "budget" in err


def test_human_format():
    code, out, _ = run("check-rbs", MODELS / "idempotent_identity.json", "--format", "human")
    assert code == 1
    assert "counterexample for rbs: defect_R at (e, e), coefficient of e is -1/1" in out


def test_usage_errors():
    assert run("bogus", MODELS / "jackson.json")[0] == 2
    assert run("validate", MODELS / "missing.json")[0] == 2
    assert run("homotopy", MODELS / "jackson.json", "--arity-bound", "0")[0] == 2
    with pytest.raises(InputError):
        run_command("bogus", parse_model(MODELS / "jackson.json"))


def test_determinism_across_processes():
    outs = []
    for _ in range(2):
        p = subprocess.run([sys.executable, "-m", "rbsys", "cohomology", str(MODELS / "jackson.json")],
                           capture_output=True, text=True)
        outs.append((p.returncode, p.stdout))
    assert outs[0] == outs[1] and outs[0][0] == 0


def test_report_in_process_matches_cli():
    doc = parse_model(MODELS / "jackson.json")
    digest = __import__("hashlib").sha256((MODELS / "jackson.json").read_bytes()).hexdigest()
    rep = run_command("check-rbs", doc, digest=digest)
    assert emit_report(rep) == run("check-rbs", MODELS / "jackson.json")[1]
    with pytest.raises(InputError):
        emit_report(rep, "xml")


def test_stdin_input(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO((MODELS / "jackson.json").read_text()))
    code, out, _ = run("check-rbs", "-")
    assert code == 0 and "result=pass" in out
