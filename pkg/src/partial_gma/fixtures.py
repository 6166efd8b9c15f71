"""The shipped example battery: definition files under fixtures/ and their golden reports."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path


def fixtures_dir() -> Path:
    env = os.environ.get("PARTIAL_GMA_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "fixtures"


@dataclass(frozen=True)
class FixtureSet:
    name: str
    filename: str
    runs: tuple[tuple[str, ...], ...]
    expect_exit: tuple[int, ...]
    summary: str

    @property
    def path(self) -> Path:
        return fixtures_dir() / self.filename

    @property
    def golden_path(self) -> Path:
        return fixtures_dir() / (Path(self.filename).stem + ".golden.json")

    def text(self) -> str:
        return self.path.read_text(encoding="utf-8")

    def golden(self) -> dict:
        return json.loads(self.golden_path.read_text(encoding="utf-8"))


def _fx(name, summary, runs):
    return FixtureSet(name, f"{name}.def", tuple(tuple(r[0]) for r in runs), tuple(r[1] for r in runs), summary)


_CATALOG = (
    _fx("eps_trivial", "counit actions of kZ/2, kZ/3, kS3 on algebras of dimension at most 4", [
        (("check",), 0), (("build-smash",), 0), (("decompose-gma",), 0), (("synthesize-gma",), 0),
        (("group-datum", "roundtrip"), 0)]),
    _fx("unit_zero", "Z/2 on k with 1_g = 0", [(("check",), 0), (("build-smash",), 0)]),
    _fx("z2_k2", "Z/2 on k^2 with D_g = k e1", [(("check",), 0), (("build-smash",), 0)]),
    _fx("conjugation", "conjugation by diag(1,-1) on M2 as a two-block algebra", [
        (("check",), 0), (("build-smash",), 0), (("decompose-gma",), 0), (("synthesize-gma",), 0),
        (("group-datum", "check"), 0), (("group-datum", "to-hopf"), 0), (("group-datum", "from-hopf"), 0),
        (("group-datum", "roundtrip"), 0), (("morita", "check-context"), 0), (("morita", "check-equivalence"), 0)]),
    _fx("swap", "conjugation by the swap matrix on M2, not block invariant", [
        (("check",), 0), (("decompose-gma",), 1)]),
    _fx("sweedler", "Sweedler's algebra on k^2: counit action and a solved partial action", [
        (("check",), 0), (("build-smash",), 0)]),
    _fx("z3_m3", "global conjugation of Z/3 on M3 over F_7 as a three-block datum", [
        (("check",), 0), (("decompose-gma",), 0), (("synthesize-gma",), 0),
        (("group-datum", "check"), 0), (("group-datum", "roundtrip"), 0)]),
    _fx("k3_partial", "Z/2 swapping e1, e2 on k^3 with D_g = k e1 + k e2, one block", [
        (("check",), 0), (("build-smash",), 0), (("decompose-gma",), 0), (("synthesize-gma",), 0),
        (("group-datum", "check"), 0), (("group-datum", "roundtrip"), 0)]),
    _fx("z3_k2", "Z/3 on k^2 restricted from the cyclic shift of k^3, one block", [
        (("check",), 0), (("build-smash",), 0), (("decompose-gma",), 0), (("synthesize-gma",), 0)]),
    _fx("morita_sign", "Morita context (k, k, k, k) with the sign action on the off-diagonal corners", [
        (("check",), 0), (("morita", "check-context"), 0), (("morita", "check-equivalence"), 0),
        (("decompose-gma",), 0)]),
    _fx("morita_flipped", "the sign context with g acting on M by +1 from both sides", [
        (("morita", "check-equivalence"), 1)]),
    _fx("morita_peirce", "M3 cut by e11 + e22 and e33 with conjugation by diag(1,-1,1)", [
        (("check",), 0), (("morita", "check-context"), 0), (("morita", "check-equivalence"), 0)]),
    _fx("ring_accept", "partial action on k^2 fixing e1, ring of the idempotent", [
        (("morita", "ring-action"), 0)]),
    _fx("ring_reject", "Z/2 swapping coordinates 2, 3 of k^3 on D_g = 0 + k^2, with e = (1, 1, 0)", [(("morita", "ring-action"), 1)]),
)


def builtin_fixtures() -> list[FixtureSet]:
    return list(_CATALOG)


def fixture_by_name(name: str) -> FixtureSet:
    for fx in _CATALOG:
        if fx.name == name:
            return fx
    raise KeyError(name)


def golden_for(fx: FixtureSet) -> dict:
    """Run every recorded command on the fixture and collect the structured reports."""
    from .cli import execute
    runs = []
    for argv in fx.runs:
        res = execute(list(argv) + ["--fixture", fx.name])
        runs.append({"argv": list(argv), "exit_code": res.exit_code, "report": res.to_dict()})
    return {"fixture": fx.name, "runs": runs}


def golden_text(fx: FixtureSet) -> str:
    return json.dumps(golden_for(fx), indent=1) + "\n"
