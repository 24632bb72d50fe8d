"""Text formats: category data files and combinatorial map files.

Category file (line oriented, ``#`` starts a comment)::

    mtc fibonacci
    labels 1 tau
    unit 1
    dual tau tau
    N tau tau 1 1
    N tau tau tau 1
    S 1 0.5257 0 0.8507 0
    S tau 0.8507 0 -0.5257 0
    F tau tau tau tau 1 1 0.618 0

``N`` lines list nonzero fusion multiplicities; ``S`` lines give one row as
real/imaginary pairs; ``F`` lines give ``F[a,b,c,d][e,f]``.

Map file::

    map tetrahedron
    vertex +1 -4 -3
    ...

one ``vertex`` line per vertex listing its edge ends counterclockwise, ``+e``
for the tail of edge ``e`` and ``-e`` for its head.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .graphs import GraphError, PlanarGraph
from .mtc import MtcData, builtin


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass
class MtcFile:
    name: str
    labels: tuple[str, ...]
    unit: str
    dual: dict[str, str] = field(default_factory=dict)
    N: dict[tuple[str, str, str], int] = field(default_factory=dict)
    S: dict[str, tuple[complex, ...]] | None = None
    F: dict[tuple[str, ...], complex] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MtcFile):
            return NotImplemented
        return (self.name, self.labels, self.unit, self.dual, self.N, self.S, self.F) == (
            other.name, other.labels, other.unit, other.dual, other.N, other.S, other.F)


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace tokens with 1-based start columns, comment stripped."""
    body = line.split("#", 1)[0]
    out = []
    i = 0
    while i < len(body):
        if body[i].isspace():
            i += 1
            continue
        j = i
        while j < len(body) and not body[j].isspace():
            j += 1
        out.append((i + 1, body[i:j]))
        i = j
    return out


def _number(lineno: int, col: int, tok: str, kind=float):
    try:
        return kind(tok)
    except ValueError:
        raise ParseError(lineno, col, f"expected {'an integer' if kind is int else 'a number'}, got {tok!r}") from None


def parse_mtc(text: str) -> MtcFile:
    name = labels = unit = None
    dual: dict[str, str] = {}
    N: dict[tuple[str, str, str], int] = {}
    S: dict[str, tuple[complex, ...]] = {}
    F: dict[tuple[str, ...], complex] = {}
    label_set: set[str] = set()

    def need_labels(lineno: int, col: int, what: str) -> None:
        if labels is None:
            raise ParseError(lineno, col, f"'{what}' before the 'labels' line")

    def label(lineno: int, col: int, tok: str) -> str:
        if tok not in label_set:
            raise ParseError(lineno, col, f"unknown label {tok!r}")
        return tok

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        (col, key), args = toks[0], toks[1:]
        if key == "mtc":
            if name is not None:
                raise ParseError(lineno, col, "duplicate 'mtc' line")
            if len(args) != 1:
                raise ParseError(lineno, col, "'mtc' takes exactly one name")
            name = args[0][1]
        elif key == "labels":
            if labels is not None:
                raise ParseError(lineno, col, "duplicate 'labels' line")
            if not args:
                raise ParseError(lineno, col, "'labels' needs at least one label")
            names = [t for _, t in args]
            for (c, t) in args:
                if names.count(t) > 1:
                    raise ParseError(lineno, c, f"label {t!r} listed twice")
            labels = tuple(names)
            label_set = set(names)
        elif key == "unit":
            need_labels(lineno, col, key)
            if unit is not None:
                raise ParseError(lineno, col, "duplicate 'unit' line")
            if len(args) != 1:
                raise ParseError(lineno, col, "'unit' takes one label")
            unit = label(lineno, *args[0])
        elif key == "dual":
            need_labels(lineno, col, key)
            if len(args) != 2:
                raise ParseError(lineno, col, "'dual' takes two labels")
            a, b = label(lineno, *args[0]), label(lineno, *args[1])
            for x, y in ((a, b), (b, a)):
                if x in dual and dual[x] != y:
                    raise ParseError(lineno, col, f"conflicting dual for {x!r}")
            if a in dual and a != b and dual.get(b) == a:
                raise ParseError(lineno, col, f"duplicate dual entry for {a!r}")
            dual[a] = b
            dual[b] = a
        elif key == "N":
            need_labels(lineno, col, key)
            if len(args) != 4:
                raise ParseError(lineno, col, "'N' takes three labels and a multiplicity")
            k = tuple(label(lineno, *t) for t in args[:3])
            if k in N:
                raise ParseError(lineno, col, f"duplicate N entry {k}")
            v = _number(lineno, args[3][0], args[3][1], int)
            if v < 0:
                raise ParseError(lineno, args[3][0], "multiplicities are nonnegative")
            N[k] = v
        elif key == "S":
            need_labels(lineno, col, key)
            if not args:
                raise ParseError(lineno, col, "'S' needs a row")
            rc, rt = args[0]
            if rt in label_set:
                row = rt
            else:
                idx = _number(lineno, rc, rt, int)
                if not 0 <= idx < len(labels):
                    raise ParseError(lineno, rc, f"row index {idx} out of range")
                row = labels[idx]
            if row in S:
                raise ParseError(lineno, col, f"duplicate S row {row!r}")
            vals = args[1:]
            if len(vals) != 2 * len(labels):
                raise ParseError(lineno, col, f"S row needs {2 * len(labels)} numbers, got {len(vals)}")
            nums = [_number(lineno, c, t) for c, t in vals]
            S[row] = tuple(complex(nums[2 * i], nums[2 * i + 1]) for i in range(len(labels)))
        elif key == "F":
            need_labels(lineno, col, key)
            if len(args) != 8:
                raise ParseError(lineno, col, "'F' takes six labels and a complex value")
            k = tuple(label(lineno, *t) for t in args[:6])
            if k in F:
                raise ParseError(lineno, col, f"duplicate F entry {k}")
            F[k] = complex(_number(lineno, *args[6]), _number(lineno, *args[7]))
        else:
            raise ParseError(lineno, col, f"unknown directive {key!r}")

    last = max(1, len(text.splitlines()))
    if name is None:
        raise ParseError(1, 1, "missing 'mtc <name>' line")
    if labels is None:
        raise ParseError(last, 1, f"missing 'labels' line (lines 1..{last})")
    if unit is None:
        raise ParseError(last, 1, "missing 'unit' line")
    if S and len(S) != len(labels):
        missing = [x for x in labels if x not in S]
        raise ParseError(last, 1, f"S matrix is missing rows {missing}")
    return MtcFile(name, labels, unit, dict(sorted(dual.items())), N, S or None, F)


def _fmt(x: float) -> str:
    return repr(float(x))


def serialize_mtc(f: MtcFile) -> str:
    out = [f"mtc {f.name}", "labels " + " ".join(f.labels), f"unit {f.unit}"]
    done = set()
    for a in f.labels:
        if a in f.dual and a not in done:
            out.append(f"dual {a} {f.dual[a]}")
            done |= {a, f.dual[a]}
    for k in sorted(f.N, key=lambda k: tuple(f.labels.index(x) for x in k)):
        out.append(f"N {' '.join(k)} {f.N[k]}")
    if f.S:
        for row in f.labels:
            vals = " ".join(f"{_fmt(c.real)} {_fmt(c.imag)}" for c in f.S[row])
            out.append(f"S {row} {vals}")
    for k in sorted(f.F, key=lambda k: tuple(f.labels.index(x) for x in k)):
        v = f.F[k]
        out.append(f"F {' '.join(k)} {_fmt(v.real)} {_fmt(v.imag)}")
    return "\n".join(out) + "\n"


def mtc_to_file(m: MtcData, F: dict[tuple[int, ...], complex] | None = None) -> MtcFile:
    L = m.labels
    N = {(L[a], L[b], L[c]): int(m.N[a, b, c])
         for a in range(m.rank) for b in range(m.rank) for c in range(m.rank) if m.N[a, b, c]}
    S = {L[a]: tuple(complex(x) for x in m.S[a]) for a in range(m.rank)}
    Fd = {tuple(L[i] for i in k): complex(v) for k, v in (F or {}).items()}
    dual = {L[a]: L[m.dual[a]] for a in range(m.rank)}
    return MtcFile(m.name, L, L[0], dual, N, S, Fd)


def recoupling_entries(r) -> dict[tuple[int, ...], complex]:
    out = {}
    for (a, b, c, d), (es, fs, mat) in r.blocks.items():
        for i, e in enumerate(es):
            for j, f in enumerate(fs):
                out[(a, b, c, d, e, f)] = complex(mat[i, j])
    return out


def file_to_mtc(f: MtcFile) -> tuple[MtcData, dict[tuple[int, ...], complex] | None]:
    """Category data (unit moved to index 0) and F-symbols by label index."""
    order = [f.unit] + [x for x in f.labels if x != f.unit]
    idx = {x: i for i, x in enumerate(order)}
    r = len(order)
    N = np.zeros((r, r, r), dtype=np.int64)
    for (a, b, c), v in f.N.items():
        N[idx[a], idx[b], idx[c]] = v
    dual = []
    for x in order:
        if x in f.dual:
            dual.append(idx[f.dual[x]])
        else:
            cands = [y for y in order if N[idx[x], idx[y], 0]]
            if len(cands) != 1:
                raise ValueError(f"cannot infer the dual of {x!r} from the fusion rules")
            dual.append(idx[cands[0]])
    if f.S is None:
        try:
            ref = builtin(f.name)
        except (KeyError, ValueError):
            raise ValueError(f"category {f.name!r} has no S matrix and is not a built-in") from None
        if ref.rank != r or tuple(ref.labels) != tuple(order):
            raise ValueError(f"labels of {f.name!r} do not match the built-in")
        S = ref.S
        description = ref.description
    else:
        S = np.array([[f.S[x][f.labels.index(y)] for y in order] for x in order])
        description = ""
        try:
            ref = builtin(f.name)
            if tuple(ref.labels) == tuple(order):
                description = ref.description
        except (KeyError, ValueError):
            pass
    m = MtcData(f.name, tuple(order), N, tuple(dual), S, description)
    m.check_shapes()
    F = {tuple(idx[x] for x in k): v for k, v in f.F.items()} or None
    return m, F


def fingerprint(f: MtcFile) -> str:
    return hashlib.sha256(serialize_mtc(f).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# maps

def parse_map(text: str) -> PlanarGraph:
    name = ""
    rotation = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        (col, key), args = toks[0], toks[1:]
        if key == "map":
            name = " ".join(t for _, t in args)
        elif key == "vertex":
            if not args:
                raise ParseError(lineno, col, "a vertex needs at least one edge end")
            ends = []
            for c, t in args:
                if not (t[:1] in "+-" and t[1:].isdigit() and int(t[1:]) > 0):
                    raise ParseError(lineno, c, f"edge ends look like +3 or -3, got {t!r}")
                ends.append(int(t))
            rotation.append(ends)
        else:
            raise ParseError(lineno, col, f"unknown directive {key!r}")
    if not rotation:
        raise ParseError(1, 1, "no vertex lines")
    try:
        return PlanarGraph.from_rotation(rotation, name)
    except GraphError as exc:
        raise ParseError(1, 1, str(exc)) from None


def serialize_map(G: PlanarGraph) -> str:
    out = [f"map {G.name}"] if G.name else []
    for v in G.rotation():
        out.append("vertex " + " ".join(f"{s:+d}" for s in v))
    return "\n".join(out) + "\n"
