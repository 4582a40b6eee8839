"""Text formats: quivers (.tqa), modules (.mod), semisimple sequences (.seq).

All three are line based, UTF-8, with ``#`` comments.  Path expressions such
as ``a9*a8*b7`` are read right to left (``b7`` is applied first) unless the
caller asks for left-to-right reading.

Quiver::

    name = example3
    L = 3
    vertices = 1 2 3
    a: 1 -> 2

Module (monomial presentation; relation lines are ``<slot>: <path>``)::

    slots = 7
    1: b7

Module (labeled graph; several edges into one node identify paths)::

    node x = 3
    node y = 4
    edge a3: x -> y
"""

from __future__ import annotations

import re
from typing import Optional, Union

from .algebra import TruncatedAlgebra
from .modules import GraphModule, MonomialModule, SemisimpleSequence, SlotPath
from .quiver import Path, QuiverError, validate


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, source: str = "<input>"):
        super().__init__(message)
        self.message, self.line, self.col, self.source = message, line, col, source

    def __str__(self) -> str:
        return f"{self.source}:{self.line}:{self.col}: {self.message}"


_NAME = r"[^\s:=,*#>-][^\s:=,*#]*"
_ASSIGN = re.compile(r"^(\s*)(\w+)(\s*)=(\s*)(.*?)\s*$")
_ARROW = re.compile(rf"^(\s*)({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*$")
_REL = re.compile(r"^(\s*)(\d+)\s*:\s*(.+?)\s*$")
_EDGE = re.compile(rf"^(\s*)edge\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*$")
_NODE = re.compile(rf"^(\s*)node\s+({_NAME})\s*=\s*({_NAME})\s*$")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield no, line


def _tokens(line: str, start: int) -> list[tuple[str, int]]:
    """Names separated by spaces/commas, with 1-based columns."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"[^\s,]+", line)
            if m.start() >= start]


def _col(line: str, token: str, after: int = 0) -> int:
    return line.find(token, after) + 1


def parse_quiver(text: str, source: str = "<input>") -> TruncatedAlgebra:
    name, L, L_pos = "Q", None, (0, 0)
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    arrow_pos: dict[str, tuple[int, int, str]] = {}
    last = 0
    for no, line in _lines(text):
        last = no
        m = _ASSIGN.match(line)
        if m:
            key, value = m.group(2), m.group(5)
            vcol = m.end(4) + 1
            if key == "name":
                name = value
            elif key == "L":
                if not re.fullmatch(r"-?\d+", value):
                    raise ParseError(f"L must be an integer, got {value!r}", no, vcol, source)
                L, L_pos = int(value), (no, vcol)
            elif key == "vertices":
                for tok, col in _tokens(line, m.end(4)):
                    if tok in vertices:
                        raise ParseError(f"duplicate vertex {tok!r}", no, col, source)
                    vertices.append(tok)
            else:
                raise ParseError(f"unknown setting {key!r}", no, m.start(2) + 1, source)
            continue
        m = _ARROW.match(line)
        if m:
            label, src, tgt = m.group(2), m.group(3), m.group(4)
            if label in arrow_pos:
                raise ParseError(f"duplicate label {label!r}", no, m.start(2) + 1, source)
            for tok, idx in ((src, 3), (tgt, 4)):
                if tok not in vertices:
                    raise ParseError(f"unknown vertex {tok!r}", no, m.start(idx) + 1, source)
            arrow_pos[label] = (no, m.start(2) + 1, line)
            arrows.append((label, src, tgt))
            continue
        raise ParseError("expected 'key = value' or 'label: source -> target'", no,
                         len(line) - len(line.lstrip()) + 1, source)
    if L is None:
        raise ParseError("missing 'L = <positive integer>'", last + 1, 1, source)
    if L < 1:
        raise ParseError(f"L must be at least 1, got {L}", *L_pos, source)
    if not vertices:
        raise ParseError("no vertices declared", last + 1, 1, source)
    try:
        quiver = validate(vertices, arrows, name=name)
    except QuiverError as exc:
        raise ParseError(str(exc), last, 1, source) from None
    return TruncatedAlgebra(quiver, L)


def emit_quiver(alg: TruncatedAlgebra) -> str:
    q = alg.quiver
    out = [f"name = {q.name}", f"L = {alg.L}", "vertices = " + " ".join(q.vertex_names)]
    out += [f"{a.label}: {q.vertex_names[a.source]} -> {q.vertex_names[a.target]}" for a in q.arrows]
    return "\n".join(out) + "\n"


def parse_path(expr: str, alg: TruncatedAlgebra, left_to_right: bool = False) -> Path:
    """Parse ``a9*a8*b7`` (or a single vertex name / ``e<name>`` for a trivial path)."""
    q = alg.quiver
    labels = [t.strip() for t in expr.strip().split("*")]
    if any(not t for t in labels):
        raise QuiverError(f"malformed path expression {expr!r}")
    if len(labels) == 1 and not q.has_arrow(labels[0]):
        tok = labels[0]
        if tok in q.vertex_names:
            return q.trivial_path(q.vertex(tok))
        if tok.startswith("e") and tok[1:] in q.vertex_names:
            return q.trivial_path(q.vertex(tok[1:]))
    if not left_to_right:
        labels.reverse()
    return q.path_from_labels(labels)


def parse_module(
    text: str, alg: TruncatedAlgebra, left_to_right: bool = False, source: str = "<input>"
) -> Union[MonomialModule, GraphModule]:
    q = alg.quiver
    slots: Optional[list[int]] = None
    relations: list[tuple[int, str, int, int]] = []
    nodes: list[tuple[str, int]] = []
    edges: list[tuple[int, str, str, int, int]] = []
    for no, line in _lines(text):
        m = _NODE.match(line)
        if m:
            nm, vx = m.group(2), m.group(3)
            if vx not in q.vertex_names:
                raise ParseError(f"unknown vertex {vx!r}", no, m.start(3) + 1, source)
            if any(nm == x for x, _ in nodes):
                raise ParseError(f"duplicate node {nm!r}", no, m.start(2) + 1, source)
            nodes.append((nm, q.vertex(vx)))
            continue
        m = _EDGE.match(line)
        if m:
            if not q.has_arrow(m.group(2)):
                raise ParseError(f"unknown arrow {m.group(2)!r}", no, m.start(2) + 1, source)
            edges.append((q.arrow(m.group(2)).id, m.group(3), m.group(4), no, m.start(3) + 1))
            continue
        m = _ASSIGN.match(line)
        if m and m.group(2) == "slots":
            slots = []
            for tok, col in _tokens(line, m.end(4)):
                if tok not in q.vertex_names:
                    raise ParseError(f"unknown vertex {tok!r}", no, col, source)
                slots.append(q.vertex(tok))
            continue
        m = _REL.match(line)
        if m:
            relations.append((int(m.group(2)), m.group(3), no, m.start(3) + 1))
            continue
        raise ParseError("expected 'slots = ...', '<slot>: <path>', 'node ...' or 'edge ...'", no,
                         len(line) - len(line.lstrip()) + 1, source)
    if nodes or edges:
        if slots is not None or relations:
            raise ParseError("a module file is either monomial (slots/relations) or a graph (nodes/edges)", 1, 1, source)
        index = {nm: k for k, (nm, _) in enumerate(nodes)}
        built = []
        for a, s, t, no, col in edges:
            for tok in (s, t):
                if tok not in index:
                    raise ParseError(f"unknown node {tok!r}", no, col, source)
            built.append((a, index[s], index[t]))
        try:
            return GraphModule(alg, tuple(n for n, _ in nodes), tuple(v for _, v in nodes), tuple(built))
        except ValueError as exc:
            raise ParseError(str(exc), 1, 1, source) from None
    if slots is None:
        raise ParseError("missing 'slots = ...'", 1, 1, source)
    rels = []
    for slot, expr, no, col in relations:
        if not 1 <= slot <= len(slots):
            raise ParseError(f"slot {slot} out of range 1..{len(slots)}", no, 1, source)
        try:
            p = parse_path(expr, alg, left_to_right)
        except QuiverError as exc:
            raise ParseError(str(exc), no, col, source) from None
        if p.source != slots[slot - 1]:
            raise ParseError(f"relation does not start at slot {slot}'s vertex", no, col, source)
        if not 1 <= p.length <= alg.L:
            raise ParseError(f"relation length must lie in 1..{alg.L}", no, col, source)
        rels.append(SlotPath(slot - 1, p))
    try:
        return MonomialModule(alg, tuple(slots), tuple(rels))
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1, source) from None


def emit_module(m: Union[MonomialModule, GraphModule]) -> str:
    q = m.alg.quiver
    if isinstance(m, GraphModule):
        out = [f"node {nm} = {q.vertex_names[v]}" for nm, v in zip(m.node_names, m.node_vertices)]
        out += [
            f"edge {q.arrows[a].label}: {m.node_names[s]} -> {m.node_names[t]}" for a, s, t in m.edges
        ]
        return "\n".join(out) + "\n"
    out = ["slots = " + " ".join(q.vertex_names[v] for v in m.slots)]
    out += [f"{sp.slot + 1}: {q.path_str(sp.path)}" for sp in m.relations]
    return "\n".join(out) + "\n"


def parse_sequence(text: str, alg: TruncatedAlgebra, source: str = "<input>") -> SemisimpleSequence:
    rows: list[tuple[int, ...]] = []
    for no, line in _lines(text):
        row = []
        for tok, col in _tokens(line, 0):
            if not tok.isdigit():
                raise ParseError(f"expected a nonnegative integer, got {tok!r}", no, col, source)
            row.append(int(tok))
        if len(row) != alg.n:
            raise ParseError(f"row has {len(row)} entries, expected {alg.n}", no, 1, source)
        rows.append(tuple(row))
    if len(rows) != alg.L + 1:
        raise ParseError(f"expected {alg.L + 1} rows (layers 0..L), got {len(rows)}", max(len(rows), 1), 1, source)
    return SemisimpleSequence(tuple(rows))


def emit_sequence(S: SemisimpleSequence) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in S.rows) + "\n"
