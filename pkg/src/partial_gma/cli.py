"""Command-line entry point: run checkers and constructions on definition files."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import check_algebra
from .fileformat import BuildError, ParseError, Workspace, parse
from .gma import check_blocked_algebra, check_datum
from .gma_partial import (
    BlockPartialData,
    check_block_invariance,
    check_block_partial_data,
    check_c_prime,
    check_mixed_actions,
    decompose,
    invariance_table,
    morita_ring_action,
    same_modules,
    synthesize,
)
from .group_datum import (
    check_group_datum,
    check_unital,
    block_data_to_datum,
    datum_to_block_data,
    group_datum_roundtrip,
)
from .hopf import check_hopf
from .linalg import equal
from .morita import check_morita_context, check_morita_equivalent, context_from_datum, check_block_conditions
from .partial_action import (
    check_group_action,
    check_partial_action,
    check_partial_representation,
    induced_representation,
    to_right,
)
from .report import CheckFailure, Report
from .smash import (
    canonical_pair,
    check_smash_invariants,
    crossed_iso,
    crossed_product,
    left_smash,
    right_smash,
    universal_morphism,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class CommandResult:
    command: str
    target: str
    reports: list[Report] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(r.passed for r in self.reports)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_INPUT
        return EXIT_PASS if self.passed else EXIT_FAIL

    def to_dict(self) -> dict:
        out = {"command": self.command, "target": self.target, "passed": self.passed,
               "exit_code": self.exit_code, "info": self.info,
               "reports": [r.to_dict() for r in self.reports]}
        if self.error is not None:
            out["error"] = self.error
        return out

    def text(self) -> str:
        lines = [f"{self.command} {self.target}: {'PASS' if self.passed else 'FAIL'}"]
        if self.error is not None:
            lines.append(f"error: {self.error}")
        for key, val in self.info.items():
            lines.extend(_info_lines(key, val))
        for r in self.reports:
            lines.append(r.text())
        return "\n".join(lines)


def _info_lines(key: str, val) -> list[str]:
    if isinstance(val, dict):
        out = [f"{key}:"]
        for k, v in val.items():
            out.extend("  " + line for line in _info_lines(str(k), v))
        return out
    if isinstance(val, list) and val and isinstance(val[0], list):
        return [f"{key}:"] + ["  " + " ".join(str(x) for x in row) for row in val]
    if isinstance(val, list):
        return [f"{key}: {' '.join(str(x) for x in val)}"]
    return [f"{key}: {val}"]


def _retitle(rep: Report, subject: str) -> Report:
    out = Report(subject)
    out.extend(rep)
    return out


def _failure_report(subject: str, exc: CheckFailure) -> Report:
    rep = Report(subject)
    if exc.report is not None:
        rep.extend(exc.report)
    if rep.passed:
        rep.add("construction", False, [()], note=str(exc))
    return rep


def _select(ws: Workspace, kinds, name: str | None) -> list[str]:
    kinds = (kinds,) if isinstance(kinds, str) else kinds
    if name is not None:
        if name not in ws.kinds:
            raise InputError(f"no section named {name!r}")
        if ws.kinds[name] not in kinds:
            raise InputError(f"{name!r} is a {ws.kinds[name]}, expected {' or '.join(kinds)}")
        return [name]
    found = [n for n in ws.kinds if ws.kinds[n] in kinds]
    if not found:
        raise InputError(f"file has no {' or '.join(kinds)} section")
    return found


def _blocked_actions(ws: Workspace, name: str | None) -> list[str]:
    names = _select(ws, "partial_action", name)
    out = [n for n in names if ws.kinds[ws.df.get(n).ref("algebra")] in ("gma", "morita_context")]
    if not out:
        raise InputError("no partial action on a block-structured algebra")
    return out


# commands

def cmd_check(ws: Workspace, args, res: CommandResult) -> None:
    for s in ws.df.sections:
        if args.name is not None and s.name != args.name:
            continue
        obj = ws[s.name]
        label = f"{s.kind} {s.name}"
        if s.kind == "algebra":
            res.reports.append(_retitle(check_algebra(obj), label))
        elif s.kind == "hopf":
            res.reports.append(_retitle(check_hopf(obj), label))
        elif s.kind == "gma":
            rep = _retitle(check_datum(obj.datum), label)
            rep.extend(check_blocked_algebra(obj), "blocked.")
            res.reports.append(rep)
        elif s.kind == "partial_action":
            rep = _retitle(check_partial_action(obj, deep=args.deep), label)
            if obj.side == "left" and rep.passed:
                rep.extend(check_partial_representation(induced_representation(obj, validate=False)),
                           "induced.")
            res.reports.append(rep)
        elif s.kind == "group_action":
            res.reports.append(_retitle(check_group_action(obj), label))
        elif s.kind == "group_datum":
            rep = _retitle(check_group_datum(obj), label)
            if rep.passed:
                rep.extend(check_unital(obj), "unital.")
            res.reports.append(rep)
        elif s.kind == "morita_context":
            res.reports.append(_retitle(check_morita_context(obj), label))
        elif s.kind == "block_data":
            res.reports.append(_retitle(check_block_partial_data(obj, include_c_prime=True), label))
    if args.name is not None and not res.reports and args.name not in ws.kinds:
        raise InputError(f"no section named {args.name!r}")


def _smash_info(s) -> dict:
    return {"dimension": s.dim, "basis": list(s.algebra.labels)}


def cmd_build_smash(ws: Workspace, args, res: CommandResult) -> None:
    names = _select(ws, ("partial_action", "group_action"), args.name)
    for n in names:
        obj = ws[n]
        if ws.kinds[n] == "group_action":
            gre = check_group_action(obj)
            if not gre.passed:
                res.reports.append(_retitle(gre, f"group_action {n}"))
                continue
            cp = crossed_product(obj)
            info = {"crossed-product-dimension": cp.dim}
            for which in ("left", "right"):
                iso = crossed_iso(obj, which)
                info[f"smash-{which}"] = _smash_info(iso.smash)
                res.reports.append(_retitle(iso.report, f"crossed-iso-{which} {n}"))
            res.info[n] = info
            continue
        prep = check_partial_action(obj)
        if not prep.passed:
            res.reports.append(_retitle(prep, f"partial_action {n}"))
            continue
        smashes = [left_smash(obj)] if obj.side == "left" else []
        smashes.append(right_smash(to_right(obj)) if obj.side == "left" else right_smash(obj))
        info = {}
        for s in smashes:
            info[f"smash-{s.side}"] = _smash_info(s)
            res.reports.append(_retitle(check_smash_invariants(s), f"smash-{s.side} {n}"))
            try:
                um = universal_morphism(canonical_pair(s), s)
                res.reports.append(_retitle(um.report, f"universal-{s.side} {n}"))
            except CheckFailure as exc:
                res.reports.append(_failure_report(f"universal-{s.side} {n}", exc))
        res.info[n] = info


def cmd_decompose(ws: Workspace, args, res: CommandResult) -> None:
    for n in _blocked_actions(ws, args.name):
        p = ws[n]
        r = ws.blocked(ws.df.get(n).ref("algebra"))
        inv = check_block_invariance(r, p)
        res.info[n] = {"invariance": [["T" if x else "F" for x in row] for row in invariance_table(inv, r.n)]}
        res.reports.append(_retitle(inv, f"invariance {n}"))
        prep = check_partial_action(p)
        if not (inv.passed and prep.passed):
            if not prep.passed:
                res.reports.append(_retitle(prep, f"partial_action {n}"))
            continue
        b = decompose(r, p)
        res.info[n]["left-smash-dimensions"] = [s.dim for s in b.left_smashes]
        res.info[n]["right-smash-dimensions"] = [s.dim for s in b.right_smashes]
        res.reports.append(_retitle(check_block_partial_data(b), f"block-data {n}"))
        res.reports.append(_retitle(check_c_prime(b), f"c-prime {n}"))
        res.reports.append(_retitle(check_mixed_actions(b), f"mixed-actions {n}"))
        rt = Report(f"roundtrip {n}")
        _, p2 = synthesize(b, validate=False)
        ok = equal(p2.tensor, p.tensor)
        rt.add("action-fixed-point", ok, [] if ok else [()])
        res.reports.append(rt)


def cmd_synthesize(ws: Workspace, args, res: CommandResult) -> None:
    for n in _select(ws, "block_data", args.name):
        b = ws[n]
        rep = _retitle(check_block_partial_data(b, include_c_prime=True), f"block-data {n}")
        res.reports.append(rep)
        if not rep.passed:
            continue
        r, p = synthesize(b, validate=False)
        res.reports.append(_retitle(check_partial_action(p, deep=args.deep), f"synthesized-action {n}"))
        res.reports.append(_retitle(check_block_invariance(r, p), f"synthesized-invariance {n}"))
        rt = Report(f"roundtrip {n}")
        same = same_modules(decompose(r, p), b)
        rt.add("module-fixed-point", same, [] if same else [()])
        res.reports.append(rt)
        res.info[n] = {"total-dimension": r.total.dim, "action": _tensor_rows(p.tensor, p.field)}


def _tensor_rows(t: np.ndarray, f) -> list[list]:
    rows = []
    for idx in np.ndindex(*t.shape):
        if t[idx] != 0:
            num, den = f.to_pair(t[idx])
            rows.append(list(idx) + [num if den == 1 else f"{num}/{den}"])
    return rows


def cmd_group_datum(ws: Workspace, args, res: CommandResult) -> None:
    op = args.operation
    if op == "from-hopf":
        for n in _select(ws, "block_data", args.name):
            try:
                x = block_data_to_datum(ws[n])
            except CheckFailure as exc:
                res.reports.append(_failure_report(f"from-hopf {n}", exc))
                continue
            res.reports.append(_retitle(check_group_datum(x), f"extracted-datum {n}"))
            res.info[n] = {"gamma": {f"{g},{i},{j}": _tensor_rows(m, x.datum.field)
                                     for (g, i, j), m in sorted(x.gamma.items())}}
        return
    if op == "roundtrip":
        for n in _select(ws, ("group_datum", "block_data"), args.name):
            try:
                res.reports.append(_retitle(group_datum_roundtrip(ws[n]), f"roundtrip {n}"))
            except CheckFailure as exc:
                res.reports.append(_failure_report(f"roundtrip {n}", exc))
        return
    for n in _select(ws, "group_datum", args.name):
        x = ws[n]
        rep = _retitle(check_group_datum(x), f"group_datum {n}")
        if rep.passed:
            rep.extend(check_unital(x), "unital.")
        res.reports.append(rep)
        if op == "to-hopf" and rep.passed:
            b = datum_to_block_data(x)
            res.reports.append(_retitle(check_block_partial_data(b), f"block-data {n}"))
            r, p = synthesize(b, validate=False)
            res.reports.append(_retitle(check_partial_action(p), f"hopf-action {n}"))
            res.info[n] = {"action": _tensor_rows(p.tensor, p.field)}


def cmd_morita(ws: Workspace, args, res: CommandResult) -> None:
    op = args.operation
    if op == "check-context":
        for n in _select(ws, ("morita_context",), args.name):
            res.reports.append(_retitle(check_morita_context(ws[n]), f"morita_context {n}"))
        return
    if op == "ring-action":
        for n in _select(ws, "partial_action", args.name):
            sec = ws.df.get(n)
            if "idempotent" not in sec.tensors:
                if args.name is None:
                    continue
                raise InputError(f"{n!r} declares no idempotent")
            p = ws[n]
            e = p.field.zeros(p.algebra.dim)
            for (k,), v in sec.tensors["idempotent"].items():
                if k >= p.algebra.dim:
                    raise InputError(f"idempotent index {k} out of range")
                e[k] = v
            try:
                m = morita_ring_action(p, e)
            except CheckFailure as exc:
                res.reports.append(_failure_report(f"ring-action {n}", exc))
                res.info[n] = {"accepted": False}
                continue
            rep = _retitle(m.report, f"ring-action {n}")
            rep.extend(check_partial_action(m.action), "lpa.")
            rep.extend(check_block_invariance(m.blocked, m.action), "invariance.")
            res.reports.append(rep)
            res.info[n] = {"accepted": True, "block-dimensions": [list(r) for r in m.blocked.datum.dims],
                           "action": _tensor_rows(m.action.tensor, m.action.field)}
        if not res.reports:
            raise InputError("no partial action declares an idempotent")
        return
    # check-equivalence: each two-block block_data, read as data over a Morita ring
    names = [n for n in _select(ws, "block_data", args.name) if ws[n].n == 2]
    if not names:
        raise InputError("no two-block block data")
    for n in names:
        b: BlockPartialData = ws[n]
        c = context_from_datum(b.datum)
        pa, pb = b.diag_actions
        rep, pr = check_block_conditions(pa, pb, c, b)
        res.reports.append(_retitle(rep, f"block-conditions {n}"))
        if pr is None:
            _, pr = synthesize(b, validate=False)
        try:
            eq = check_morita_equivalent(pa, pb, c, pr)
        except CheckFailure as exc:
            eq = _failure_report("", exc)
        res.reports.append(_retitle(eq, f"equivalence {n}"))
        res.info[n] = {"agree": rep.passed == eq.passed}


COMMANDS = {
    "check": cmd_check,
    "build-smash": cmd_build_smash,
    "decompose-gma": cmd_decompose,
    "synthesize-gma": cmd_synthesize,
    "group-datum": cmd_group_datum,
    "morita": cmd_morita,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="partial-gma", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help="definition file")
    common.add_argument("--fixture", help="use a builtin fixture instead of a file")
    common.add_argument("--name", help="restrict to one named section")
    common.add_argument("--deep", action="store_true", help="also check derived identities")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("check", "build-smash", "decompose-gma", "synthesize-gma"):
        sub.add_parser(name, parents=[common])
    g = sub.add_parser("group-datum", parents=[common])
    g.add_argument("operation", choices=("check", "to-hopf", "from-hopf", "roundtrip"))
    m = sub.add_parser("morita", parents=[common])
    m.add_argument("operation", choices=("check-context", "check-equivalence", "ring-action"))
    return ap


def _reorder(argv: list[str]) -> list[str]:
    """Allow the operation word of group-datum/morita to come before or after the file."""
    if len(argv) >= 3 and argv[0] in ("group-datum", "morita"):
        ops = {"group-datum": ("check", "to-hopf", "from-hopf", "roundtrip"),
               "morita": ("check-context", "check-equivalence", "ring-action")}[argv[0]]
        rest = argv[1:]
        picked = [a for a in rest if a in ops][:1]
        if picked:
            rest = list(rest)
            rest.remove(picked[0])
            return [argv[0]] + rest + picked
    return argv


def load_text(args) -> tuple[str, str]:
    if args.fixture and args.file:
        raise InputError("give either a file or --fixture, not both")
    if args.fixture:
        from .fixtures import fixture_by_name
        try:
            fx = fixture_by_name(args.fixture)
        except KeyError as exc:
            raise InputError(f"unknown fixture {args.fixture!r}") from exc
        return fx.path.read_text(encoding="utf-8"), f"fixture:{fx.name}"
    if not args.file:
        raise InputError("no input file")
    path = Path(args.file)
    try:
        return path.read_bytes().decode("utf-8"), str(args.file)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{args.file} is not UTF-8") from exc


def execute(argv: list[str]) -> CommandResult:
    args = build_parser().parse_args(_reorder(list(argv)))
    return run_args(args)


def run_args(args) -> CommandResult:
    command = args.command + (f" {args.operation}" if hasattr(args, "operation") else "")
    res = CommandResult(command, args.fixture and f"fixture:{args.fixture}" or (args.file or ""))
    try:
        text, res.target = load_text(args)
        ws = Workspace(parse(text))
        run_on(ws, args, res)
    except ParseError as exc:
        res.error = "parse error: " + "; ".join(f"line {l} col {c}: {m}" for l, c, m in exc.errors)
    except BuildError as exc:
        res.error = f"invalid definition at line {exc}"
    except InputError as exc:
        res.error = str(exc)
    except ValueError as exc:
        res.error = f"invalid input: {exc}"
    return res


def run_on(ws: Workspace, args, res: CommandResult) -> CommandResult:
    """Run a parsed command against already built objects; input problems land in res.error."""
    try:
        COMMANDS[args.command](ws, args, res)
    except BuildError as exc:
        res.error = f"invalid definition at line {exc}"
    except InputError as exc:
        res.error = str(exc)
    except ValueError as exc:
        res.error = f"invalid input: {exc}"
    return res


def render(res: CommandResult, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(res.to_dict(), indent=2, sort_keys=False)
    return res.text()


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(_reorder(list(argv)))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    res = run_args(args)
    print(render(res, args.format))
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
