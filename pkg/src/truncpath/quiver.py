"""Quivers, paths, and the longest-path statistics used throughout the package.

Vertices are addressed by dense 0-based indices; the human-facing name of a
vertex (``"7"``, ``"x"``...) lives in :attr:`Quiver.vertex_names`.  Paths store
their arrows in *application order*: ``Path(src, tgt, (b7, a8, a9))`` is the
path usually written ``a9*a8*b7`` ("a9 after a8 after b7").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import networkx as nx
import numpy as np

INF = math.inf
# Either a nonnegative int or math.inf.
ExtNat = Union[int, float]


class QuiverError(ValueError):
    """Raised for malformed quiver data."""


def format_extnat(x: ExtNat, unicode: bool = True) -> str:
    if x == INF:
        return "∞" if unicode else "inf"
    return str(int(x))


@dataclass(frozen=True)
class Arrow:
    id: int
    label: str
    source: int
    target: int


@dataclass(frozen=True, order=True)
class Path:
    """A path in KQ.  ``arrows`` holds arrow ids, first-applied first."""

    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self) -> tuple:
        return (len(self.arrows), self.arrows, self.source)

    def extend(self, arrow: Arrow) -> "Path":
        """Return ``arrow * self``."""
        if arrow.source != self.target:
            raise QuiverError(f"arrow {arrow.label} does not compose after path ending at {self.target}")
        return Path(self.source, arrow.target, self.arrows + (arrow.id,))

    def prefix(self, k: int, quiver: "Quiver") -> "Path":
        """The initial subpath of length ``k``."""
        arrows = self.arrows[:k]
        target = quiver.arrows[arrows[-1]].target if arrows else self.source
        return Path(self.source, target, arrows)


@dataclass(frozen=True, eq=False)
class Quiver:
    vertex_names: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    name: str = "Q"
    _label_index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._label_index.update({a.label: a.id for a in self.arrows})

    @property
    def n(self) -> int:
        return len(self.vertex_names)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def vertex(self, name: str) -> int:
        try:
            return self.vertex_names.index(str(name))
        except ValueError:
            raise QuiverError(f"unknown vertex {name!r}") from None

    def arrow(self, label: str) -> Arrow:
        try:
            return self.arrows[self._label_index[label]]
        except KeyError:
            raise QuiverError(f"unknown arrow {label!r}") from None

    def has_arrow(self, label: str) -> bool:
        return label in self._label_index

    @cached_property
    def outgoing(self) -> tuple[tuple[Arrow, ...], ...]:
        out: list[list[Arrow]] = [[] for _ in self.vertices]
        for a in self.arrows:
            out[a.source].append(a)
        return tuple(tuple(x) for x in out)

    @cached_property
    def incoming(self) -> tuple[tuple[Arrow, ...], ...]:
        inc: list[list[Arrow]] = [[] for _ in self.vertices]
        for a in self.arrows:
            inc[a.target].append(a)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def arrow_count_matrix(self) -> np.ndarray:
        """``A[j, i]`` = number of arrows i -> j."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for arr in self.arrows:
            a[arr.target, arr.source] += 1
        a.setflags(write=False)
        return a

    @cached_property
    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((a.source, a.target) for a in self.arrows)
        return g

    def is_sink(self, v: int) -> bool:
        return not self.outgoing[v]

    # -- path rendering / parsing -------------------------------------------------

    def path_str(self, p: Path) -> str:
        """Render right-to-left, e.g. ``a9*a8*b7``; length-0 paths as ``e<name>``."""
        if not p.arrows:
            return f"e{self.vertex_names[p.source]}"
        return "*".join(self.arrows[i].label for i in reversed(p.arrows))

    def path_from_labels(self, labels: Sequence[str]) -> Path:
        """Build a path from labels given in application order."""
        if not labels:
            raise QuiverError("empty arrow sequence")
        arrows = [self.arrow(lab) for lab in labels]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise QuiverError(f"arrows {a.label} and {b.label} do not compose")
        return Path(arrows[0].source, arrows[-1].target, tuple(a.id for a in arrows))

    def trivial_path(self, v: int) -> Path:
        return Path(v, v, ())

    # -- statistics (cached, computed for all vertices in one pass) ---------------

    @cached_property
    def _cycle_seeds(self) -> frozenset[int]:
        seeds: set[int] = set()
        for comp in nx.strongly_connected_components(self.digraph):
            if len(comp) > 1:
                seeds |= comp
        seeds |= {a.source for a in self.arrows if a.source == a.target}
        return frozenset(seeds)

    @cached_property
    def cyclebound(self) -> frozenset[int]:
        out = set(self._cycle_seeds)
        for v in self._cycle_seeds:
            out |= nx.ancestors(self.digraph, v)
        return frozenset(out)

    @cached_property
    def cycle_reachable(self) -> frozenset[int]:
        out = set(self._cycle_seeds)
        for v in self._cycle_seeds:
            out |= nx.descendants(self.digraph, v)
        return frozenset(out)

    @cached_property
    def c_values(self) -> tuple[ExtNat, ...]:
        c: list[ExtNat] = [INF] * self.n
        acyclic = self.digraph.subgraph(v for v in self.vertices if v not in self.cyclebound)
        # successors of a non-cyclebound vertex are non-cyclebound
        for v in reversed(list(nx.topological_sort(acyclic))):
            c[v] = max((c[a.target] + 1 for a in self.outgoing[v]), default=0)
        return tuple(c)

    @cached_property
    def b_values(self) -> tuple[ExtNat, ...]:
        b: list[ExtNat] = [INF] * self.n
        acyclic = self.digraph.subgraph(v for v in self.vertices if v not in self.cycle_reachable)
        for v in nx.topological_sort(acyclic):
            b[v] = max((b[a.source] + 1 for a in self.incoming[v]), default=0)
        return tuple(b)


def validate(
    vertex_names: Iterable[str],
    arrows: Iterable[tuple[str, str, str]],
    name: str = "Q",
) -> Quiver:
    """Build a quiver from names and ``(label, source_name, target_name)`` triples."""
    names = tuple(str(v) for v in vertex_names)
    if not names:
        raise QuiverError("empty vertex set")
    if len(set(names)) != len(names):
        raise QuiverError("duplicate vertex name")
    index = {v: i for i, v in enumerate(names)}
    built: list[Arrow] = []
    seen: set[str] = set()
    for label, src, tgt in arrows:
        if label in seen:
            raise QuiverError(f"duplicate label {label!r}")
        seen.add(label)
        for end in (src, tgt):
            if str(end) not in index:
                raise QuiverError(f"dangling endpoint {end!r} on arrow {label!r}")
        built.append(Arrow(len(built), label, index[str(src)], index[str(tgt)]))
    return Quiver(names, tuple(built), name=name)


def cyclebound_set(q: Quiver) -> frozenset[int]:
    """Vertices from which some vertex on an oriented cycle can be reached."""
    return q.cyclebound


def c_out(q: Quiver, e: int) -> ExtNat:
    """Supremum of the lengths of paths in KQ starting at ``e``."""
    return q.c_values[e]


def b_in(q: Quiver, e: int) -> ExtNat:
    """Supremum of the lengths of paths in KQ ending at ``e``."""
    return q.b_values[e]


def enumerate_paths(q: Quiver, start: int, max_len: int) -> list[Path]:
    """All paths from ``start`` of length <= ``max_len`` in canonical order."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    layer = [q.trivial_path(start)]
    found = list(layer)
    for _ in range(max_len):
        layer = [p.extend(a) for p in layer for a in q.outgoing[p.target]]
        if not layer:
            break
        found.extend(layer)
    found.sort(key=Path.sort_key)
    return found


def is_initial_subpath(p: Path, q: Path) -> bool:
    """True iff ``q = p' p`` for some path ``p'``."""
    return p.source == q.source and q.arrows[: len(p.arrows)] == p.arrows
