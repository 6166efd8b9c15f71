import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from partial_gma.fileformat import BuildError, ParseError, Workspace, load, parse, serialize
from partial_gma.fixtures import builtin_fixtures, fixture_by_name
from partial_gma.linalg import ModP

MINIMAL = """field rationals

algebra K
  dim 1
  mult 0 0 0 1 1
  unit 0 1 1
end
"""


def test_minimal_file_parses_and_builds():
    ws = load(MINIMAL)
    assert ws["K"].dim == 1
    assert serialize(parse(MINIMAL)) == MINIMAL


def test_prime_zero_is_rejected():
    with pytest.raises(ParseError) as exc:
        parse("field prime 0\n")
    assert any("prime required" in m for _, _, m in exc.value.errors)


def test_prime_field_reduces_scalars():
    ws = load(MINIMAL.replace("rationals", "prime 5").replace("mult 0 0 0 1 1", "mult 0 0 0 6 1"))
    assert ws["K"].mult[0, 0, 0] == ModP(1, 5)
    with pytest.raises(ParseError) as exc:
        parse(MINIMAL.replace("rationals", "prime 5").replace("unit 0 1 1", "unit 0 1 5"))
    assert any("field mismatch" in m for _, _, m in exc.value.errors)


def test_errors_are_collected_with_positions():
    text = "field rationals\nalgebra K\n  dim x\n  mult 0 0 0 1 0\nbogus Z\nend\n"
    with pytest.raises(ParseError) as exc:
        parse(text)
    lines = {ln for ln, _, _ in exc.value.errors}
    assert {3, 4, 5} <= lines


def test_unknown_reference_and_duplicates():
    with pytest.raises(ParseError):
        parse("field rationals\nhopf H\n  construct group_algebra Nope\nend\n")
    with pytest.raises(ParseError):
        parse(MINIMAL + "\n" + MINIMAL.split("\n", 1)[1])


def test_shape_errors_surface_as_build_errors():
    with pytest.raises(BuildError, match="outside shape"):
        load(MINIMAL.replace("mult 0 0 0 1 1", "mult 0 0 3 1 1"))
    with pytest.raises(BuildError, match="Cayley"):
        load("field rationals\n\ngroup G\n  order 2\n  product 0 0 0\nend\n")


@pytest.mark.parametrize("fx", [f.name for f in builtin_fixtures()])
def test_fixture_files_round_trip_byte_identically(fx):
    text = fixture_by_name(fx).text()
    once = serialize(parse(text))
    assert once == text
    assert serialize(parse(once)) == once


def test_comments_and_spacing_are_normalized():
    noisy = "# header\nfield   rationals   # Q\n\nalgebra K   \n dim 1\n  unit 0 1 1\n  mult 0 0 0 2 2\nend\n"
    assert serialize(parse(noisy)) == MINIMAL


SOURCE = fixture_by_name("conjugation").text().splitlines()


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(st.tuples(st.integers(0, len(SOURCE) - 1), st.sampled_from(["drop", "dup", "swap", "token"]),
                          st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789 -#/", max_size=12)),
                max_size=4))
def test_parsing_damaged_files_fails_cleanly(edits):
    lines = list(SOURCE)
    for pos, op, junk in edits:
        pos %= max(len(lines), 1)
        if not lines:
            break
        if op == "drop":
            del lines[pos]
        elif op == "dup":
            lines.insert(pos, lines[pos])
        elif op == "swap" and pos + 1 < len(lines):
            lines[pos], lines[pos + 1] = lines[pos + 1], lines[pos]
        else:
            lines[pos] = lines[pos] + " " + junk
    text = "\n".join(lines) + "\n"
    try:
        df = parse(text)
    except ParseError as exc:
        assert exc.errors and all(isinstance(ln, int) for ln, _, _ in exc.errors)
        return
    assert serialize(parse(serialize(df))) == serialize(df)
    try:
        Workspace(df)
    except BuildError:
        pass


@settings(max_examples=100, deadline=None)
@given(st.text(max_size=200))
def test_arbitrary_text_never_crashes_the_parser(text):
    try:
        parse(text)
    except ParseError:
        pass
