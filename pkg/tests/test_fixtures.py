import pytest

from partial_gma.cli import execute
from partial_gma.fixtures import builtin_fixtures, fixture_by_name, golden_for, golden_text

NAMES = [fx.name for fx in builtin_fixtures()]


def test_catalog_covers_the_required_battery():
    required = {"eps_trivial", "unit_zero", "z2_k2", "conjugation", "swap", "sweedler", "z3_m3"}
    assert required <= set(NAMES)
    assert len(set(NAMES)) == len(NAMES)
    with pytest.raises(KeyError):
        fixture_by_name("missing")


@pytest.mark.parametrize("name", NAMES)
def test_golden_regenerates_identically(name):
    fx = fixture_by_name(name)
    assert golden_text(fx) == fx.golden_path.read_text(encoding="utf-8")


@pytest.mark.parametrize("name", NAMES)
def test_recorded_exit_codes(name):
    fx = fixture_by_name(name)
    golden = fx.golden()
    for argv, code, run in zip(fx.runs, fx.expect_exit, golden["runs"]):
        assert run["exit_code"] == code
        assert run["report"]["passed"] == (code == 0)


def test_fixture_dimension_examples():
    info = execute(["build-smash", "--fixture", "unit_zero", "--name", "P"]).info["P"]
    assert info["smash-left"]["dimension"] == 1
    info = execute(["build-smash", "--fixture", "z2_k2", "--name", "U"]).info["U"]
    assert info["crossed-product-dimension"] == 3
    assert info["smash-left"]["dimension"] == 3
    inv = execute(["decompose-gma", "--fixture", "swap"]).info["P"]["invariance"]
    assert inv[0][1] == "F" and inv[1][0] == "F"


def test_fixtures_dir_override(tmp_path, monkeypatch):
    fx = fixture_by_name("unit_zero")
    (tmp_path / fx.filename).write_text(fx.text())
    monkeypatch.setenv("PARTIAL_GMA_FIXTURES", str(tmp_path))
    assert fixture_by_name("unit_zero").path.parent == tmp_path
    assert golden_for(fx)["runs"][0]["exit_code"] == 0
