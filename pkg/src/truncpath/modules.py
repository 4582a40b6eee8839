"""Modules presented by paths: monomial quotients P/C of projectives, tree
modules, skeletons and their critical paths, radical layerings, and the
layered graphs used to draw them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .algebra import TruncatedAlgebra, branches_and_syzygy_of_cyclic, pdim_cyclic
from .quiver import ExtNat, Path, is_initial_subpath


@dataclass(frozen=True, order=True)
class SlotPath:
    """The path ``path`` applied to the generator of slot ``slot`` of P."""

    slot: int
    path: Path

    @property
    def length(self) -> int:
        return self.path.length

    @property
    def target(self) -> int:
        return self.path.target

    def sort_key(self) -> tuple:
        return (self.slot,) + self.path.sort_key()


def _canonical(paths: Iterable[SlotPath]) -> tuple[SlotPath, ...]:
    return tuple(sorted(set(paths), key=SlotPath.sort_key))


@dataclass(frozen=True)
class SemisimpleSequence:
    """Multiplicities ``rows[l][i]`` of S_i in the l-th layer, 0 <= l <= L."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged semisimple sequence")
        if any(x < 0 for r in self.rows for x in r):
            raise ValueError("negative multiplicity")

    @classmethod
    def from_array(cls, arr) -> "SemisimpleSequence":
        a = np.asarray(arr, dtype=np.int64)
        return cls(tuple(tuple(int(x) for x in row) for row in a))

    @classmethod
    def zeros(cls, L: int, n: int) -> "SemisimpleSequence":
        return cls(tuple((0,) * n for _ in range(L + 1)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(len(self.rows), -1)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def dim(self) -> int:
        return sum(map(sum, self.rows))

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.array.sum(axis=0))

    def __add__(self, other: "SemisimpleSequence") -> "SemisimpleSequence":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return SemisimpleSequence.from_array(self.array + other.array)


@dataclass(frozen=True, eq=False)
class Skeleton:
    """A prefix-closed set of paths in P = ⊕ Λe(slot); one trivial path per slot."""

    alg: TruncatedAlgebra
    slots: tuple[int, ...]
    paths: tuple[SlotPath, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", _canonical(self.paths))
        members = set(self.paths)
        q = self.alg.quiver
        for r, v in enumerate(self.slots):
            if SlotPath(r, q.trivial_path(v)) not in members:
                raise ValueError(f"skeleton lacks the trivial path of slot {r}")
        for sp in self.paths:
            if not 0 <= sp.slot < len(self.slots) or sp.path.source != self.slots[sp.slot]:
                raise ValueError("skeleton path does not start at its slot's vertex")
            self.alg.check_path(sp.path)
            if sp.length and SlotPath(sp.slot, sp.path.prefix(sp.length - 1, q)) not in members:
                raise ValueError(f"skeleton not closed under initial subpaths at {q.path_str(sp.path)}")

    @cached_property
    def members(self) -> frozenset[SlotPath]:
        return frozenset(self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __contains__(self, sp: SlotPath) -> bool:
        return sp in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Skeleton):
            return NotImplemented
        return self.alg is other.alg and self.slots == other.slots and self.paths == other.paths

    def __hash__(self) -> int:
        return hash((self.slots, self.paths))

    def restrict(self, slot: int) -> list[Path]:
        return [sp.path for sp in self.paths if sp.slot == slot]


@dataclass(frozen=True, eq=False)
class MonomialModule:
    """P/C with P = ⊕_r Λe(slots[r]) and C generated by the relation paths.

    Relations are normalized at construction: a relation that extends
    another relation of the same slot lies in the submodule already and is
    dropped.
    """

    alg: TruncatedAlgebra
    slots: tuple[int, ...]
    relations: tuple[SlotPath, ...] = ()

    def __post_init__(self) -> None:
        if not self.slots:
            raise ValueError("a module needs at least one slot")
        for v in self.slots:
            if not 0 <= v < self.alg.n:
                raise ValueError(f"slot vertex {v} out of range")
        rels = _canonical(self.relations)
        for sp in rels:
            if not 0 <= sp.slot < len(self.slots):
                raise ValueError(f"relation on unknown slot {sp.slot}")
            if sp.path.source != self.slots[sp.slot]:
                raise ValueError("relation does not start at its slot's vertex")
            if not 1 <= sp.length <= self.alg.L:
                raise ValueError(f"relation length must lie in 1..{self.alg.L}")
        reduced = tuple(
            sp for sp in rels
            if not any(o != sp and o.slot == sp.slot and is_initial_subpath(o.path, sp.path) for o in rels)
        )
        object.__setattr__(self, "slots", tuple(self.slots))
        object.__setattr__(self, "relations", reduced)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialModule):
            return NotImplemented
        return self.alg is other.alg and self.slots == other.slots and self.relations == other.relations

    def __hash__(self) -> int:
        return hash((self.slots, self.relations))

    @classmethod
    def projective(cls, alg: TruncatedAlgebra, v: int) -> "MonomialModule":
        return cls(alg, (v,))

    @classmethod
    def simple(cls, alg: TruncatedAlgebra, v: int) -> "MonomialModule":
        q = alg.quiver
        return cls(alg, (v,), tuple(SlotPath(0, q.trivial_path(v).extend(a)) for a in q.outgoing[v]))

    @classmethod
    def cyclic_ideal(cls, alg: TruncatedAlgebra, p: Path) -> "MonomialModule":
        """Λp as Λe/V with e the end of ``p``."""
        _, syz = branches_and_syzygy_of_cyclic(alg, p)
        return cls(alg, (p.target,), tuple(SlotPath(0, s) for s in syz))

    def direct_sum(self, other: "MonomialModule") -> "MonomialModule":
        if self.alg is not other.alg:
            raise ValueError("modules over different algebras")
        shift = len(self.slots)
        moved = tuple(SlotPath(sp.slot + shift, sp.path) for sp in other.relations)
        return MonomialModule(self.alg, self.slots + other.slots, self.relations + moved)

    @cached_property
    def skeleton(self) -> Skeleton:
        return skeleton(self)

    @property
    def dim(self) -> int:
        return len(self.skeleton)


@dataclass(frozen=True, eq=False)
class TreeModule:
    """Λe/V with V generated by paths, described by its root and branches."""

    alg: TruncatedAlgebra
    root: int
    branches: tuple[Path, ...]

    def __post_init__(self) -> None:
        brs = tuple(sorted(set(self.branches), key=Path.sort_key))
        if not brs:
            raise ValueError("a tree module has at least one branch")
        for b in brs:
            if b.source != self.root:
                raise ValueError("branch does not start at the root")
            self.alg.check_path(b)
        for a in brs:
            for b in brs:
                if a != b and is_initial_subpath(a, b):
                    raise ValueError("branches must be pairwise incomparable")
        object.__setattr__(self, "branches", brs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeModule):
            return NotImplemented
        return self.alg is other.alg and self.root == other.root and self.branches == other.branches

    def __hash__(self) -> int:
        return hash((self.root, self.branches))

    def paths(self) -> list[Path]:
        q = self.alg.quiver
        return sorted({b.prefix(k, q) for b in self.branches for k in range(b.length + 1)}, key=Path.sort_key)

    def as_module(self) -> MonomialModule:
        sig = Skeleton(self.alg, (self.root,), tuple(SlotPath(0, p) for p in self.paths()))
        return MonomialModule(self.alg, (self.root,), tuple(sigma_critical(sig)))

    @classmethod
    def from_module(cls, m: MonomialModule) -> "TreeModule":
        if len(m.slots) != 1:
            raise ValueError("tree modules have exactly one slot")
        return cls(m.alg, m.slots[0], tuple(_maximal(m.skeleton.restrict(0))))

    @property
    def dim(self) -> int:
        return len(self.paths())


@dataclass(frozen=True, eq=False)
class GraphModule:
    """A module given by a labeled graph: basis ``nodes`` (each sitting at a
    vertex) and edges ``(arrow_id, src_node, tgt_node)`` meaning the arrow sends
    the source basis vector to the target one.  Several edges into the same
    node identify the corresponding paths, so these modules need not be
    monomial; they are analyzed through the exact-arithmetic oracle."""

    alg: TruncatedAlgebra
    node_names: tuple[str, ...]
    node_vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.node_names) != len(self.node_vertices):
            raise ValueError("node names and vertices differ in length")
        if len(set(self.node_names)) != len(self.node_names):
            raise ValueError("duplicate node name")
        q = self.alg.quiver
        for a, s, t in self.edges:
            arr = q.arrows[a]
            if self.node_vertices[s] != arr.source or self.node_vertices[t] != arr.target:
                raise ValueError(
                    f"edge {arr.label}: {self.node_names[s]} -> {self.node_names[t]} does not match the arrow's endpoints"
                )


def _maximal(paths: Sequence[Path]) -> list[Path]:
    return [p for p in paths if not any(o != p and is_initial_subpath(p, o) for o in paths)]


def skeleton(m: MonomialModule) -> Skeleton:
    """All slot paths of length <= L having no relation as an initial subpath."""
    alg, q = m.alg, m.alg.quiver
    rels = set(m.relations)
    found: list[SlotPath] = []
    for r, v in enumerate(m.slots):
        layer = [q.trivial_path(v)]
        while layer:
            found.extend(SlotPath(r, p) for p in layer)
            if layer[0].length == alg.L:
                break
            layer = [
                p.extend(a)
                for p in layer
                for a in q.outgoing[p.target]
                if SlotPath(r, p.extend(a)) not in rels
            ]
    return Skeleton(alg, m.slots, tuple(found))


def sigma_critical(sigma: Skeleton) -> list[SlotPath]:
    """Paths arrow*(σ-path) of length <= L that are not in σ, canonical order."""
    q, L = sigma.alg.quiver, sigma.alg.L
    out = {
        SlotPath(sp.slot, sp.path.extend(a))
        for sp in sigma.paths
        if sp.length < L
        for a in q.outgoing[sp.target]
    }
    return sorted((c for c in out if c not in sigma), key=SlotPath.sort_key)


def _as_skeleton(m) -> Skeleton:
    if isinstance(m, Skeleton):
        return m
    if isinstance(m, TreeModule):
        return m.as_module().skeleton
    return m.skeleton


def syzygy(m) -> list[Path]:
    """Generators of the cyclic summands Λq of the first syzygy, one per critical path.

    Accepts a MonomialModule, TreeModule, or any Skeleton.
    """
    return [c.path for c in sigma_critical(_as_skeleton(m))]


def syzygy_tree_modules(m) -> list[TreeModule]:
    alg = _as_skeleton(m).alg
    return [TreeModule(alg, p.target, tuple(branches_and_syzygy_of_cyclic(alg, p)[0])) for p in syzygy(m)]


def iterated_syzygy(m, k: int) -> Counter:
    """Multiset of generators of the cyclic summands of the k-th syzygy (k >= 1).

    Generators of Ω^k for k >= 2 start at the root of a previous summand.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    sk = _as_skeleton(m)
    current = Counter(syzygy(sk))
    for _ in range(k - 1):
        nxt: Counter = Counter()
        for p, mult in current.items():
            for g in branches_and_syzygy_of_cyclic(sk.alg, p)[1]:
                nxt[g] += mult
        current = nxt
    return current


def pdim_module(m) -> ExtNat:
    sk = _as_skeleton(m)
    gens = syzygy(sk)
    if not gens:
        return 0
    return 1 + max(pdim_cyclic(sk.alg, g) for g in gens)


def radical_layering(m) -> SemisimpleSequence:
    sk = _as_skeleton(m)
    s = np.zeros((sk.alg.L + 1, sk.alg.n), dtype=np.int64)
    for sp in sk.paths:
        s[sp.length, sp.target] += 1
    return SemisimpleSequence.from_array(s)


def treeify(m) -> list[TreeModule]:
    """One tree module per slot, each with the slot's part of the skeleton."""
    sk = _as_skeleton(m)
    return [
        TreeModule(sk.alg, v, tuple(_maximal(sk.restrict(r))))
        for r, v in enumerate(sk.slots)
    ]


def tree_sum(trees: Sequence[TreeModule]) -> MonomialModule:
    mods = [t.as_module() for t in trees]
    out = mods[0]
    for x in mods[1:]:
        out = out.direct_sum(x)
    return out


# -- layered graphs --------------------------------------------------------------


@dataclass(frozen=True)
class GraphNode:
    id: str
    layer: int
    label: str
    slot: int
    critical: bool = False


@dataclass(frozen=True)
class GraphEdge:
    source: str
    target: str
    arrow: str
    dashed: bool = False


@dataclass
class LayeredGraph:
    name: str
    nodes: list[GraphNode] = field(default_factory=list)
    edges: list[GraphEdge] = field(default_factory=list)

    def children(self, node_id: str, dashed: Optional[bool] = False) -> list[GraphNode]:
        by_id = {nd.id: nd for nd in self.nodes}
        return [
            by_id[e.target] for e in self.edges
            if e.source == node_id and (dashed is None or e.dashed == dashed)
        ]

    def roots(self) -> list[GraphNode]:
        return [nd for nd in self.nodes if nd.layer == 0]

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{', "\trankdir=TB;", "\tnode [shape=plaintext];"]
        for layer in sorted({nd.layer for nd in self.nodes}):
            lines.append("\t{ rank=same;")
            for nd in self.nodes:
                if nd.layer == layer:
                    lines.append(f'\t\t"{nd.id}" [label="{nd.label}"];')
            lines.append("\t}")
        for e in self.edges:
            style = "dashed" if e.dashed else "solid"
            lines.append(f'\t"{e.source}" -> "{e.target}" [label="{e.arrow}", style={style}, arrowhead=none];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _node_id(sp: SlotPath) -> str:
    return f"s{sp.slot}:" + ".".join(str(a) for a in sp.path.arrows)


def layered_graph(m, critical: bool = True, name: str = "M") -> LayeredGraph:
    """Skeleton drawn as a layered forest: one node per skeleton path,
    labeled by its terminal vertex; optional dashed edges to critical paths."""
    sk = _as_skeleton(m)
    q = sk.alg.quiver
    g = LayeredGraph(name)
    for sp in sk.paths:
        g.nodes.append(GraphNode(_node_id(sp), sp.length, q.vertex_names[sp.target], sp.slot))
        if sp.length:
            parent = SlotPath(sp.slot, sp.path.prefix(sp.length - 1, q))
            g.edges.append(GraphEdge(_node_id(parent), _node_id(sp), q.arrows[sp.path.arrows[-1]].label))
    if critical:
        for c in sigma_critical(sk):
            g.nodes.append(GraphNode(_node_id(c), c.length, q.vertex_names[c.target], c.slot, critical=True))
            parent = SlotPath(c.slot, c.path.prefix(c.length - 1, q))
            g.edges.append(GraphEdge(_node_id(parent), _node_id(c), q.arrows[c.path.arrows[-1]].label, dashed=True))
    order = {_node_id(sp): sp.sort_key() for sp in list(sk.paths) + (sigma_critical(sk) if critical else [])}
    g.nodes.sort(key=lambda nd: (nd.layer, order[nd.id]))
    return g
