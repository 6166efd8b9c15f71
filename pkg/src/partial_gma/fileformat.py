"""Line-based definition files: parsing, canonical serialization, and building objects.

Grammar (see docs/file-format.md):

    file     := header section*
    header   := "field" ("rationals" | "prime" INT)
    section  := KIND NAME NEWLINE line* "end"
    line     := KEYWORD token*

Tensor lines carry integer indices followed by an exact scalar written as
numerator and denominator. Everything after "#" on a line is a comment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import FinDimAlgebra, diagonal_algebra, endomorphism_algebra
from .hopf import GroupTable, HopfAlgebra, group_algebra, sweedler_h4
from .linalg import Field, inverse

ATTR, MULTI, TENSOR = "attr", "multi", "tensor"
INT = "int"
ANY = "any"

# keyword -> (role, arity or argument types); order here is the canonical output order
SCHEMA: dict[str, dict[str, tuple]] = {
    "group": {"order": (ATTR, (INT,)), "labels": (ATTR, None), "product": (MULTI, (INT, INT, INT))},
    "algebra": {"dim": (ATTR, (INT,)), "labels": (ATTR, None), "construct": (ATTR, None),
                "mult": (TENSOR, 3), "unit": (TENSOR, 1)},
    "hopf": {"algebra": (ATTR, ({"algebra"},)), "construct": (ATTR, None),
             "comult": (TENSOR, 3), "counit": (TENSOR, 1), "antipode": (TENSOR, 2)},
    "gma": {"blocks": (ATTR, (INT,)), "construct": (ATTR, None), "dim": (MULTI, (INT, INT, INT)),
            "theta": (TENSOR, 6), "eta": (TENSOR, 2), "idempotent": (TENSOR, 2)},
    "partial_action": {"hopf": (ATTR, ({"hopf"},)), "algebra": (ATTR, ({"algebra", "gma", "morita_context"},)),
                       "side": (ATTR, (ANY,)), "act": (TENSOR, 3), "idempotent": (TENSOR, 1)},
    "group_action": {"group": (ATTR, ({"group"},)), "algebra": (ATTR, ({"algebra", "gma", "morita_context"},)),
                     "idempotent": (TENSOR, 2), "alpha": (TENSOR, 3)},
    "group_datum": {"gma": (ATTR, ({"gma", "morita_context"},)), "group": (ATTR, ({"group"},)),
                    "construct": (ATTR, None), "alpha": (MULTI, (INT, {"group_action"})), "gamma": (TENSOR, 5)},
    "morita_context": {"algebra_a": (ATTR, ({"algebra"},)), "algebra_b": (ATTR, ({"algebra"},)),
                       "dim_m": (ATTR, (INT,)), "dim_n": (ATTR, (INT,)), "construct": (ATTR, None),
                       "m_left": (TENSOR, 3), "m_right": (TENSOR, 3), "n_left": (TENSOR, 3),
                       "n_right": (TENSOR, 3), "mu": (TENSOR, 3), "nu": (TENSOR, 3)},
    "block_data": {"gma": (ATTR, ({"gma", "morita_context"},)), "hopf": (ATTR, ({"hopf"},)),
                   "construct": (ATTR, None), "action": (MULTI, (INT, {"partial_action"})),
                   "left": (TENSOR, 5), "right": (TENSOR, 5)},
}

CONSTRUCTS: dict[str, dict[str, tuple]] = {
    "algebra": {"endomorphism": (INT,), "diagonal": (INT,), "total": ({"gma"},),
                "morita_ring": ({"morita_context"},)},
    "hopf": {"group_algebra": ({"group"},), "sweedler_h4": ()},
    "gma": {"peirce": ({"algebra", "gma", "morita_context"},)},
    "group_datum": {"from_block_data": ({"block_data"},)},
    "morita_context": {"from_gma": ({"gma"},)},
    "block_data": {"decompose": ({"partial_action"},)},
}


class ParseError(ValueError):
    def __init__(self, errors: list[tuple[int, int, str]]):
        self.errors = errors
        super().__init__("; ".join(f"{l}:{c}: {m}" for l, c, m in errors))


class BuildError(ValueError):
    """A syntactically valid file whose contents do not describe valid objects."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"{line}: {message}")


@dataclass
class Section:
    kind: str
    name: str
    line: int
    attrs: dict = dc_field(default_factory=dict)
    multi: dict = dc_field(default_factory=dict)
    tensors: dict = dc_field(default_factory=dict)
    entry_lines: dict = dc_field(default_factory=dict)

    def attr(self, key: str, default=None):
        return self.attrs.get(key, default)

    def int_attr(self, key: str) -> int:
        return int(self.attrs[key][0])

    def ref(self, key: str) -> str:
        return self.attrs[key][0]


@dataclass
class DefinitionFile:
    field: Field
    sections: list[Section]

    def get(self, name: str) -> Section:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def of_kind(self, kind: str) -> list[Section]:
        return [s for s in self.sections if s.kind == kind]


def _tokens(line: str) -> list[tuple[str, int]]:
    body = line.split("#", 1)[0]
    out, i = [], 0
    while i < len(body):
        if body[i].isspace():
            i += 1
            continue
        j = i
        while j < len(body) and not body[j].isspace():
            j += 1
        out.append((body[i:j], i + 1))
        i = j
    return out


def _int(tok: str) -> int | None:
    try:
        return int(tok)
    except ValueError:
        return None


def parse(text: str) -> DefinitionFile:
    """Parse a definition file; raises ParseError carrying every problem found."""
    errors: list[tuple[int, int, str]] = []
    try:
        return _parse(text, errors)
    except ParseError:
        raise
    except Exception as exc:  # parsing must never crash
        errors.append((0, 0, f"internal parse failure: {exc}"))
        raise ParseError(errors) from exc


def _parse(text: str, errors) -> DefinitionFile:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError([(0, 0, f"not UTF-8: {exc}")]) from exc
    lines = text.splitlines()
    fld = None
    sections: list[Section] = []
    names: dict[str, str] = {}
    cur: Section | None = None
    for ln, raw in enumerate(lines, start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        word, col = toks[0]
        if fld is None:
            if word != "field":
                errors.append((ln, col, "file must start with a field declaration"))
                raise ParseError(errors)
            fld = _parse_field(toks, ln, errors)
            if fld is None:
                raise ParseError(errors)
            continue
        if word == "field":
            errors.append((ln, col, "field declared twice"))
            continue
        if cur is None:
            if word not in SCHEMA:
                errors.append((ln, col, f"unknown section {word!r}"))
                continue
            if len(toks) != 2:
                errors.append((ln, col, "section header needs exactly one name"))
                continue
            name, ncol = toks[1]
            if name in names:
                errors.append((ln, ncol, f"duplicate name {name!r}"))
            cur = Section(word, name, ln)
            continue
        if word == "end":
            if len(toks) != 1:
                errors.append((ln, toks[1][1], "unexpected tokens after end"))
            _finish_section(cur, names, errors)
            names[cur.name] = cur.kind
            sections.append(cur)
            cur = None
            continue
        _parse_line(cur, toks, ln, fld, names, errors)
    if fld is None:
        errors.append((max(len(lines), 1), 1, "missing field declaration"))
    if cur is not None:
        errors.append((cur.line, 1, f"section {cur.name!r} is not closed by end"))
    if errors:
        raise ParseError(errors)
    return DefinitionFile(fld, sections)


def _parse_field(toks, ln, errors) -> Field | None:
    if len(toks) == 2 and toks[1][0] == "rationals":
        return Field.rationals()
    if len(toks) == 3 and toks[1][0] == "prime":
        p = _int(toks[2][0])
        if p is None:
            errors.append((ln, toks[2][1], "prime required"))
            return None
        try:
            return Field.prime(p)
        except ValueError:
            errors.append((ln, toks[2][1], "prime required"))
            return None
    errors.append((ln, toks[0][1], "expected 'field rationals' or 'field prime P'"))
    return None


def _check_arg(kind_set, tok, col, ln, names, errors) -> bool:
    if kind_set == INT:
        v = _int(tok)
        if v is None or v < 0:
            errors.append((ln, col, f"expected a non-negative integer, got {tok!r}"))
            return False
        return True
    if kind_set == ANY:
        return True
    if tok not in names:
        errors.append((ln, col, f"unknown name {tok!r}"))
        return False
    if names[tok] not in kind_set:
        errors.append((ln, col, f"{tok!r} is a {names[tok]}, expected {' or '.join(sorted(kind_set))}"))
        return False
    return True


def _parse_line(cur: Section, toks, ln, fld: Field, names, errors) -> None:
    word, col = toks[0]
    schema = SCHEMA[cur.kind]
    if word not in schema:
        errors.append((ln, col, f"unknown keyword {word!r} in {cur.kind}"))
        return
    role, spec = schema[word]
    args = toks[1:]
    if role == ATTR:
        if word in cur.attrs:
            errors.append((ln, col, f"{word} given twice"))
            return
        if word == "construct":
            if not args:
                errors.append((ln, col, "construct needs an operation"))
                return
            op, ocol = args[0]
            table = CONSTRUCTS.get(cur.kind, {})
            if op not in table:
                errors.append((ln, ocol, f"unknown construction {op!r} for {cur.kind}"))
                return
            spec = table[op]
            args = args[1:]
            if len(args) != len(spec):
                errors.append((ln, ocol, f"{op} takes {len(spec)} argument(s)"))
                return
            if all(_check_arg(k, t, c, ln, names, errors) for k, (t, c) in zip(spec, args)):
                cur.attrs[word] = (op,) + tuple(t for t, _ in args)
            return
        if spec is not None:
            if len(args) != len(spec):
                errors.append((ln, col, f"{word} takes {len(spec)} argument(s)"))
                return
            if not all(_check_arg(k, t, c, ln, names, errors) for k, (t, c) in zip(spec, args)):
                return
        if word == "side" and args[0][0] not in ("left", "right"):
            errors.append((ln, args[0][1], "side must be left or right"))
            return
        cur.attrs[word] = tuple(t for t, _ in args)
        return
    if role == MULTI:
        if len(args) != len(spec):
            errors.append((ln, col, f"{word} takes {len(spec)} argument(s)"))
            return
        if all(_check_arg(k, t, c, ln, names, errors) for k, (t, c) in zip(spec, args)):
            cur.multi.setdefault(word, []).append(tuple(t for t, _ in args))
        return
    arity = spec
    if len(args) != arity + 2:
        errors.append((ln, col, f"{word} needs {arity} indices and a numerator/denominator pair"))
        return
    idx = []
    for t, c in args[:arity]:
        v = _int(t)
        if v is None or v < 0:
            errors.append((ln, c, f"index must be a non-negative integer, got {t!r}"))
            return
        idx.append(v)
    num, den = _int(args[arity][0]), _int(args[arity + 1][0])
    if num is None or den is None:
        errors.append((ln, args[arity][1], "scalar must be two integers"))
        return
    try:
        val = fld.scalar(num, den)
    except ZeroDivisionError as exc:
        errors.append((ln, args[arity + 1][1], f"field mismatch: {exc}"))
        return
    key = tuple(idx)
    tab = cur.tensors.setdefault(word, {})
    if key in tab:
        errors.append((ln, col, f"duplicate entry {word} {' '.join(map(str, key))}"))
        return
    tab[key] = val
    cur.entry_lines[(word, key)] = ln


def _finish_section(cur: Section, names, errors) -> None:
    required = {
        "group": ("order",), "partial_action": ("hopf", "algebra", "side"),
        "group_action": ("group", "algebra"),
    }
    for key in required.get(cur.kind, ()):
        if key not in cur.attrs:
            errors.append((cur.line, 1, f"{cur.kind} {cur.name!r} needs {key}"))
    if cur.kind in ("algebra", "gma", "hopf", "morita_context", "block_data", "group_datum"):
        if "construct" not in cur.attrs:
            need = {"algebra": "dim", "gma": "blocks", "hopf": "algebra", "morita_context": "algebra_a",
                    "block_data": "gma", "group_datum": "gma"}[cur.kind]
            if need not in cur.attrs:
                errors.append((cur.line, 1, f"{cur.kind} {cur.name!r} needs {need} or construct"))


# canonical serialization

def _scalar_text(fld: Field, v) -> str:
    n, d = fld.to_pair(v)
    return f"{n} {d}"


def serialize(df: DefinitionFile) -> str:
    fld = df.field
    out = ["field rationals" if fld.is_rational else f"field prime {fld.characteristic}"]
    for s in df.sections:
        out.append("")
        out.append(f"{s.kind} {s.name}")
        for key, (role, _) in SCHEMA[s.kind].items():
            if role == ATTR and key in s.attrs:
                out.append("  " + " ".join((key,) + tuple(s.attrs[key])))
            elif role == MULTI and key in s.multi:
                for row in sorted(s.multi[key], key=_sort_key):
                    out.append("  " + " ".join((key,) + tuple(row)))
            elif role == TENSOR and key in s.tensors:
                for idx in sorted(s.tensors[key]):
                    v = s.tensors[key][idx]
                    if v != 0:
                        out.append("  " + " ".join([key] + [str(i) for i in idx]) + " " + _scalar_text(fld, v))
        out.append("end")
    return "\n".join(out) + "\n"


def _sort_key(row):
    return tuple((0, int(t), "") if _int(t) is not None else (1, 0, t) for t in row)


# building sections from objects

def tensor_entries(arr: np.ndarray) -> dict:
    arr = np.asarray(arr, dtype=object)
    return {tuple(int(i) for i in idx): arr[idx] for idx in np.ndindex(*arr.shape) if arr[idx] != 0}


def group_section(name: str, g: GroupTable) -> Section:
    s = Section("group", name, 0)
    s.attrs["order"] = (str(g.order),)
    s.attrs["labels"] = tuple(g.labels)
    s.multi["product"] = [(str(a), str(b), str(g.mul(a, b))) for a in range(g.order) for b in range(g.order)]
    return s


def algebra_section(name: str, a: FinDimAlgebra, construct: tuple | None = None) -> Section:
    s = Section("algebra", name, 0)
    if construct is not None:
        s.attrs["construct"] = tuple(str(x) for x in construct)
        return s
    s.attrs["dim"] = (str(a.dim),)
    s.attrs["labels"] = tuple(a.labels)
    s.tensors["mult"] = tensor_entries(a.mult)
    s.tensors["unit"] = tensor_entries(a.unit)
    return s


def hopf_section(name: str, construct: tuple) -> Section:
    s = Section("hopf", name, 0)
    s.attrs["construct"] = tuple(str(x) for x in construct)
    return s


def gma_section(name: str, d) -> Section:
    s = Section("gma", name, 0)
    s.attrs["blocks"] = (str(d.n),)
    s.multi["dim"] = [(str(i), str(j), str(d.dims[i][j])) for i in range(d.n) for j in range(d.n)]
    th = {}
    for (i, j, k), t in d.theta.items():
        for idx, v in tensor_entries(t).items():
            th[(i, j, k) + idx] = v
    s.tensors["theta"] = th
    s.tensors["eta"] = {(i,) + idx: v for i in range(d.n) for idx, v in tensor_entries(d.eta[i]).items()}
    return s


def partial_action_section(name: str, hopf: str, algebra: str, p) -> Section:
    s = Section("partial_action", name, 0)
    s.attrs.update(hopf=(hopf,), algebra=(algebra,), side=(p.side,))
    s.tensors["act"] = tensor_entries(p.tensor)
    return s


def group_action_section(name: str, group: str, algebra: str, u) -> Section:
    s = Section("group_action", name, 0)
    s.attrs.update(group=(group,), algebra=(algebra,))
    s.tensors["idempotent"] = tensor_entries(u.idempotents)
    s.tensors["alpha"] = {(g,) + idx: v for g, a in enumerate(u.alpha) for idx, v in tensor_entries(a).items()}
    return s


def group_datum_section(name: str, gma: str, group: str, alpha_names, x) -> Section:
    s = Section("group_datum", name, 0)
    s.attrs.update(gma=(gma,), group=(group,))
    s.multi["alpha"] = [(str(i), n) for i, n in enumerate(alpha_names)]
    s.tensors["gamma"] = {k + idx: v for k, m in x.gamma.items() for idx, v in tensor_entries(m).items()}
    return s


def morita_section(name: str, a: str, b: str, c) -> Section:
    s = Section("morita_context", name, 0)
    s.attrs.update(algebra_a=(a,), algebra_b=(b,), dim_m=(str(c.dim_m),), dim_n=(str(c.dim_n),))
    for key in ("m_left", "m_right", "n_left", "n_right", "mu", "nu"):
        s.tensors[key] = tensor_entries(getattr(c, key))
    return s


def block_data_section(name: str, gma: str, hopf: str, action_names, b) -> Section:
    s = Section("block_data", name, 0)
    s.attrs.update(gma=(gma,), hopf=(hopf,))
    s.multi["action"] = [(str(i), n) for i, n in enumerate(action_names)]
    for key, tab in (("left", b.left), ("right", b.right)):
        s.tensors[key] = {k + idx: v for k, m in tab.items() for idx, v in tensor_entries(m).items()}
    return s


def construct_section(kind: str, name: str, *construct) -> Section:
    s = Section(kind, name, 0)
    s.attrs["construct"] = tuple(str(x) for x in construct)
    return s


# building objects from sections

class Workspace:
    """Objects built from a definition file, looked up by name."""

    def __init__(self, df: DefinitionFile):
        self.df = df
        self.field = df.field
        self.objects: dict[str, object] = {}
        self.kinds: dict[str, str] = {}
        for s in df.sections:
            try:
                self.objects[s.name] = _BUILDERS[s.kind](self, s)
            except BuildError:
                raise
            except (ValueError, IndexError, KeyError) as exc:
                raise BuildError(s.line, f"{s.kind} {s.name}: {exc}") from exc
            self.kinds[s.name] = s.kind

    def __getitem__(self, name: str):
        return self.objects[name]

    def names(self, kind: str) -> list[str]:
        return [n for n, k in self.kinds.items() if k == kind]

    def algebra(self, name: str) -> FinDimAlgebra:
        """Algebras, or the total algebra of a datum or Morita context."""
        return _as_algebra(self, name)

    def blocked(self, name: str):
        from .gma import assemble
        from .morita import morita_ring
        obj = self.objects[name]
        if self.kinds[name] == "gma":
            return obj
        if self.kinds[name] == "morita_context":
            return assemble(morita_ring(obj))
        raise BuildError(0, f"{name} is not block structured")


def _as_algebra(ws: Workspace, name: str) -> FinDimAlgebra:
    kind = ws.kinds[name]
    if kind == "algebra":
        return ws.objects[name]
    return ws.blocked(name).total


def _dense(s: Section, key: str, shape, fld: Field) -> np.ndarray:
    out = fld.zeros(shape)
    for idx, v in s.tensors.get(key, {}).items():
        if len(idx) != len(shape) or any(i >= n for i, n in zip(idx, shape)):
            raise BuildError(s.entry_lines.get((key, idx), s.line),
                             f"{key} index {idx} outside shape {tuple(shape)}")
        out[idx] = v
    return out


def _build_group(ws, s):
    n = s.int_attr("order")
    table = [[None] * n for _ in range(n)]
    for a, b, c in s.multi.get("product", []):
        a, b, c = int(a), int(b), int(c)
        if max(a, b, c) >= n:
            raise BuildError(s.line, f"group element index out of range in product {a} {b} {c}")
        table[a][b] = c
    if any(x is None for row in table for x in row):
        raise BuildError(s.line, "Cayley table incomplete")
    labels = tuple(s.attr("labels", ()))
    return GroupTable(tuple(tuple(r) for r in table), labels)


def _build_algebra(ws, s):
    f = ws.field
    c = s.attr("construct")
    if c:
        op = c[0]
        if op == "endomorphism":
            return endomorphism_algebra(int(c[1]), f)
        if op == "diagonal":
            return diagonal_algebra(int(c[1]), f)
        return _as_algebra(ws, c[1])
    d = s.int_attr("dim")
    labels = tuple(s.attr("labels", ()))
    alg = FinDimAlgebra(f, _dense(s, "mult", (d, d, d), f), _dense(s, "unit", (d,), f), labels)
    return alg


def _build_hopf(ws, s):
    f = ws.field
    c = s.attr("construct")
    if c:
        if c[0] == "group_algebra":
            return group_algebra(ws[c[1]], f)
        return sweedler_h4(f)
    alg = ws[s.ref("algebra")]
    d = alg.dim
    S = _dense(s, "antipode", (d, d), f)
    Si = inverse(S, f)
    if Si is None:
        raise BuildError(s.line, "antipode is not invertible")
    return HopfAlgebra(alg, _dense(s, "comult", (d, d, d), f), _dense(s, "counit", (d,), f), S, Si, None, s.name)


def _build_gma(ws, s):
    from .gma import GeneralizedMatrixDatum, assemble, peirce
    f = ws.field
    c = s.attr("construct")
    if c:
        alg = _as_algebra(ws, c[1])
        ids = s.tensors.get("idempotent", {})
        count = 1 + max((k[0] for k in ids), default=-1)
        es = [_dense_vec(s, "idempotent", k, alg.dim, f) for k in range(count)]
        return peirce(alg, es).blocked
    n = s.int_attr("blocks")
    dims = [[0] * n for _ in range(n)]
    for i, j, d in s.multi.get("dim", []):
        i, j = int(i), int(j)
        if i >= n or j >= n:
            raise BuildError(s.line, f"block ({i}, {j}) out of range")
        dims[i][j] = int(d)
    theta = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        theta[(i, j, k)] = f.zeros((dims[i][j], dims[j][k], dims[i][k]))
    for idx, v in s.tensors.get("theta", {}).items():
        key, sub = idx[:3], idx[3:]
        if key not in theta or any(a >= b for a, b in zip(sub, theta[key].shape)):
            raise BuildError(s.entry_lines.get(("theta", idx), s.line), f"theta index {idx} out of range")
        theta[key][sub] = v
    eta = [f.zeros(dims[i][i]) for i in range(n)]
    for idx, v in s.tensors.get("eta", {}).items():
        if idx[0] >= n or idx[1] >= dims[idx[0]][idx[0]]:
            raise BuildError(s.entry_lines.get(("eta", idx), s.line), f"eta index {idx} out of range")
        eta[idx[0]][idx[1]] = v
    d = GeneralizedMatrixDatum(f, tuple(tuple(r) for r in dims), theta, tuple(eta))
    return assemble(d, validate=False)


def _dense_vec(s, key, first, n, f):
    out = f.zeros(n)
    for idx, v in s.tensors.get(key, {}).items():
        if idx[0] == first:
            if idx[1] >= n:
                raise BuildError(s.entry_lines.get((key, idx), s.line), f"{key} index {idx} out of range")
            out[idx[1]] = v
    return out


def _build_partial_action(ws, s):
    from .partial_action import PartialActionMap
    f = ws.field
    H = ws[s.ref("hopf")]
    A = _as_algebra(ws, s.ref("algebra"))
    side = s.ref("side")
    shape = (H.dim, A.dim, A.dim) if side == "left" else (A.dim, H.dim, A.dim)
    return PartialActionMap(H, A, side, _dense(s, "act", shape, f))


def _build_group_action(ws, s):
    from .partial_action import UnitalPartialGroupAction, ideal_of
    f = ws.field
    G = ws[s.ref("group")]
    A = _as_algebra(ws, s.ref("algebra"))
    ids = _dense(s, "idempotent", (G.order, A.dim), f)
    alphas = []
    for g in range(G.order):
        width = ideal_of(A, ids[G.inv(g)]).dim
        m = f.zeros((A.dim, width))
        for idx, v in s.tensors.get("alpha", {}).items():
            if idx[0] == g:
                if idx[1] >= A.dim or idx[2] >= width:
                    raise BuildError(s.entry_lines.get(("alpha", idx), s.line), f"alpha index {idx} out of range")
                m[idx[1], idx[2]] = v
        alphas.append(m)
    return UnitalPartialGroupAction(G, A, ids, tuple(alphas))


def _build_group_datum(ws, s):
    from .group_datum import GroupDatum, block_data_to_datum, left_ideal_block
    f = ws.field
    c = s.attr("construct")
    if c:
        return block_data_to_datum(ws[c[1]])
    r = ws.blocked(s.ref("gma"))
    d = r.datum
    G = ws[s.ref("group")]
    alpha = [None] * d.n
    for i, name in s.multi.get("alpha", []):
        i = int(i)
        if i >= d.n:
            raise BuildError(s.line, f"alpha index {i} out of range")
        alpha[i] = ws[name]
    if any(a is None for a in alpha):
        raise BuildError(s.line, "every diagonal block needs an alpha")
    gamma = {}
    for g in range(G.order):
        for i, j in itertools.product(range(d.n), repeat=2):
            width = left_ideal_block(d, alpha[i].idempotents[G.inv(g)], i, j).dim
            gamma[(g, i, j)] = f.zeros((d.dims[i][j], width))
    for idx, v in s.tensors.get("gamma", {}).items():
        key, sub = idx[:3], idx[3:]
        if key not in gamma or any(a >= b for a, b in zip(sub, gamma[key].shape)):
            raise BuildError(s.entry_lines.get(("gamma", idx), s.line), f"gamma index {idx} out of range")
        gamma[key][sub] = v
    return GroupDatum(d, G, tuple(alpha), gamma)


def _build_morita(ws, s):
    from .morita import MoritaContextData, context_from_datum
    f = ws.field
    c = s.attr("construct")
    if c:
        return context_from_datum(ws[c[1]].datum)
    A, B = ws[s.ref("algebra_a")], ws[s.ref("algebra_b")]
    dm, dn = s.int_attr("dim_m"), s.int_attr("dim_n")
    shapes = {"m_left": (A.dim, dm, dm), "m_right": (dm, B.dim, dm), "n_left": (B.dim, dn, dn),
              "n_right": (dn, A.dim, dn), "mu": (dm, dn, A.dim), "nu": (dn, dm, B.dim)}
    return MoritaContextData(A, B, **{k: _dense(s, k, sh, f) for k, sh in shapes.items()})


def _build_block_data(ws, s):
    from .gma_partial import BlockPartialData, build_smashes, decompose
    f = ws.field
    c = s.attr("construct")
    if c:
        p = ws[c[1]]
        pa_sec = ws.df.get(c[1])
        return decompose(ws.blocked(pa_sec.ref("algebra")), p)
    r = ws.blocked(s.ref("gma"))
    d = r.datum
    H = ws[s.ref("hopf")]
    actions = [None] * d.n
    for i, name in s.multi.get("action", []):
        i = int(i)
        if i >= d.n:
            raise BuildError(s.line, f"action index {i} out of range")
        actions[i] = ws[name]
    if any(a is None for a in actions):
        raise BuildError(s.line, "every diagonal block needs an action")
    lefts, rights = build_smashes(actions)
    left, right = {}, {}
    for i, j in itertools.product(range(d.n), repeat=2):
        m = d.dims[i][j]
        left[(i, j)] = f.zeros((lefts[i].dim, m, m))
        right[(i, j)] = f.zeros((m, rights[j].dim, m))
    for key, tab in (("left", left), ("right", right)):
        for idx, v in s.tensors.get(key, {}).items():
            blk, sub = idx[:2], idx[2:]
            if blk not in tab or any(a >= b for a, b in zip(sub, tab[blk].shape)):
                raise BuildError(s.entry_lines.get((key, idx), s.line), f"{key} index {idx} out of range")
            tab[blk][sub] = v
    return BlockPartialData(d, H, tuple(actions), lefts, rights, left, right)


_BUILDERS = {
    "group": _build_group, "algebra": _build_algebra, "hopf": _build_hopf, "gma": _build_gma,
    "partial_action": _build_partial_action, "group_action": _build_group_action,
    "group_datum": _build_group_datum, "morita_context": _build_morita, "block_data": _build_block_data,
}


def load(text: str) -> Workspace:
    return Workspace(parse(text))
