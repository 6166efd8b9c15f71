import json
import subprocess
import sys

from partial_gma.cli import execute, main
from partial_gma.fixtures import fixture_by_name


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_unit_zero_lists_axioms(capsys):
    code, out = run(capsys, "check", "--fixture", "unit_zero")
    assert code == 0
    for tag in ("LPA1: pass", "LPA2: pass", "LPA3-left: pass", "LPA3-right: pass"):
        assert tag in out


def test_build_smash_reports_dimension_one(capsys):
    code, out = run(capsys, "build-smash", "--fixture", "unit_zero", "--name", "P")
    assert code == 0
    assert "dimension: 1" in out
    assert "basis" in out


def test_decompose_non_invariant_action_fails_with_block(capsys):
    code, out = run(capsys, "decompose-gma", "--fixture", "swap")
    assert code == 1
    assert "invariant[1,2]: FAIL" in out


def test_structured_output_is_json(capsys):
    code, out = run(capsys, "check", "--fixture", "z2_k2", "--format", "structured")
    d = json.loads(out)
    assert code == 0 and d["exit_code"] == 0
    assert all(r["passed"] for r in d["reports"])


def test_input_errors_exit_two(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "missing.def"))[0] == 2
    bad = tmp_path / "bad.def"
    bad.write_text("field prime 0\n")
    code, out = run(capsys, "check", str(bad))
    assert code == 2 and "prime required" in out
    assert run(capsys, "check", "--fixture", "nope")[0] == 2
    assert run(capsys, "morita", "ring-action", "--fixture", "swap")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_operation_word_may_follow_the_file(capsys, tmp_path):
    path = tmp_path / "c.def"
    path.write_text(fixture_by_name("conjugation").text())
    assert run(capsys, "group-datum", str(path), "check")[0] == 0
    assert run(capsys, "group-datum", "check", str(path))[0] == 0


def test_deep_flag_adds_derived_identities(capsys):
    _, out = run(capsys, "check", "--fixture", "sweedler", "--deep")
    assert "derived-1: pass" in out and "derived-2: pass" in out


def test_exit_code_follows_reports():
    for fx, argv in (("morita_flipped", ["morita", "check-equivalence"]), ("ring_reject", ["morita", "ring-action"]),
                     ("conjugation", ["synthesize-gma"])):
        res = execute(argv + ["--fixture", fx])
        assert res.exit_code == (0 if all(r.passed for r in res.reports) else 1)


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "partial_gma.cli", "check", "--fixture", "unit_zero"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
