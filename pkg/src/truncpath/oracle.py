"""Brute-force verifier.  Modules are explicit representations (one exact
rational matrix per arrow); projective dimensions come from computing minimal
projective resolutions step by step, with no use of the path combinatorics in
the rest of the package beyond listing the basis paths of projectives."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Hashable, Optional, Sequence

from .algebra import TruncatedAlgebra
from .linalg import EchelonBasis, Matrix, Vector, nullspace
from .modules import GraphModule, MonomialModule, Skeleton, SlotPath
from .quiver import INF, ExtNat, Path

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True, eq=False)
class MatrixModule:
    """``dims[i]`` = dim e_iM; ``action[a]`` is a dims[target] x dims[source] matrix."""

    alg: TruncatedAlgebra
    dims: tuple[int, ...]
    action: tuple[Matrix, ...]
    # global basis order as (vertex, local index); defaults to vertex-major
    basis_order: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        q = self.alg.quiver
        if len(self.dims) != q.n or len(self.action) != len(q.arrows):
            raise ValueError("dimension vector or action list has the wrong size")
        for arr, mat in zip(q.arrows, self.action):
            if len(mat) != self.dims[arr.target] or any(len(r) != self.dims[arr.source] for r in mat):
                raise ValueError(f"matrix for arrow {arr.label} has the wrong shape")
        if not self.basis_order:
            order = tuple((v, k) for v in q.vertices for k in range(self.dims[v]))
            object.__setattr__(self, "basis_order", order)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @cached_property
    def _sparse(self) -> tuple[tuple[tuple[int, int, Fraction], ...], ...]:
        return tuple(
            tuple((r, c, x) for r, row in enumerate(mat) for c, x in enumerate(row) if x)
            for mat in self.action
        )

    def act(self, arrow: int, v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * len(self.action[arrow])
        for r, c, x in self._sparse[arrow]:
            if v[c]:
                out[r] += x * v[c]
        return out

    def act_path(self, p: Path, v: Sequence[Fraction]) -> Vector:
        for a in p.arrows:
            v = self.act(a, v)
        return list(v)

    def unit(self, vertex: int, k: int) -> Vector:
        v = [ZERO] * self.dims[vertex]
        v[k] = ONE
        return v


def zero_module(alg: TruncatedAlgebra) -> MatrixModule:
    q = alg.quiver
    return MatrixModule(alg, (0,) * q.n, tuple([] for _ in q.arrows))


def _blank_action(alg: TruncatedAlgebra, dims: Sequence[int]) -> list[Matrix]:
    return [[[ZERO] * dims[a.source] for _ in range(dims[a.target])] for a in alg.quiver.arrows]


def from_monomial(m: MonomialModule) -> MatrixModule:
    """Matrix form of P/C on the basis of surviving paths."""
    alg = m.alg
    sk = m.skeleton
    dims = [0] * alg.n
    index: dict[SlotPath, int] = {}
    order = []
    for sp in sk.paths:
        index[sp] = dims[sp.target]
        order.append((sp.target, dims[sp.target]))
        dims[sp.target] += 1
    action = _blank_action(alg, dims)
    for sp in sk.paths:
        for a in alg.quiver.outgoing[sp.target]:
            nxt = SlotPath(sp.slot, sp.path.extend(a))
            if nxt in index:
                action[a.id][index[nxt]][index[sp]] = ONE
    return MatrixModule(alg, tuple(dims), tuple(action), tuple(order))


def from_graph(gm: GraphModule) -> MatrixModule:
    alg = gm.alg
    dims = [0] * alg.n
    local = []
    for v in gm.node_vertices:
        local.append(dims[v])
        dims[v] += 1
    action = _blank_action(alg, dims)
    for a, s, t in gm.edges:
        action[a][local[t]][local[s]] += ONE
    mod = MatrixModule(
        alg, tuple(dims), tuple(action), tuple((v, k) for v, k in zip(gm.node_vertices, local))
    )
    if not check_truncation(mod):
        raise ValueError("graph module violates the truncation relation (a path of length L+1 acts nonzero)")
    return mod


# -- radical structure --------------------------------------------------------------


def _apply_arrows(mod: MatrixModule, layer: list[EchelonBasis]) -> list[EchelonBasis]:
    q = mod.alg.quiver
    images: list[list[Vector]] = [[] for _ in q.vertices]
    for a in q.arrows:
        for vec in layer[a.source].rows:
            images[a.target].append(mod.act(a.id, vec))
    return [EchelonBasis(images[v], mod.dims[v]) for v in q.vertices]


def radical_series(mod: MatrixModule) -> list[list[EchelonBasis]]:
    """[J^0 M, J^1 M, ..., J^{L+1} M] as per-vertex subspaces."""
    q = mod.alg.quiver
    cur = [EchelonBasis([mod.unit(v, k) for k in range(mod.dims[v])], mod.dims[v]) for v in q.vertices]
    series = [cur]
    for _ in range(mod.alg.L + 1):
        cur = _apply_arrows(mod, cur)
        series.append(cur)
    return series


def check_truncation(mod: MatrixModule) -> bool:
    """True iff every composite of L+1 arrow actions vanishes."""
    return all(len(b) == 0 for b in radical_series(mod)[-1])


def layer_dims(mod: MatrixModule) -> list[list[int]]:
    """dim e_i(J^l M / J^{l+1} M) for l = 0..L (rows) and vertices i (columns)."""
    s = radical_series(mod)
    return [[len(s[l][v]) - len(s[l + 1][v]) for v in mod.alg.quiver.vertices] for l in range(mod.alg.L + 1)]


def top(mod: MatrixModule) -> tuple[int, ...]:
    return tuple(layer_dims(mod)[0]) if mod.dim else (0,) * mod.alg.n


def _generators(mod: MatrixModule, rng: Optional[random.Random] = None) -> list[tuple[int, Vector]]:
    """Lifts of a basis of M/JM, scanned in basis order."""
    rad = radical_series(mod)[1]
    spans = [EchelonBasis(b.rows, b.dim) for b in rad]
    order = list(mod.basis_order)
    if rng is not None:
        rng.shuffle(order)
    gens: list[tuple[int, Vector]] = []
    for v, k in order:
        u = mod.unit(v, k)
        if spans[v].add(u):
            gens.append((v, u))
    if rng is not None:
        # unitriangular change of generators plus radical perturbation
        mixed = []
        for i, (v, g) in enumerate(gens):
            w = list(g)
            for v2, g2 in gens[:i]:
                if v2 == v and rng.random() < 0.5:
                    c = Fraction(rng.randint(-2, 2))
                    w = [x + c * y for x, y in zip(w, g2)]
            for row in rad[v].rows:
                if rng.random() < 0.5:
                    c = Fraction(rng.randint(-2, 2))
                    w = [x + c * y for x, y in zip(w, row)]
            mixed.append((v, w))
        gens = mixed
    return gens


# -- resolutions --------------------------------------------------------------------


@dataclass(frozen=True)
class CoverStep:
    generators: tuple[int, ...]  # vertex of each top generator
    omega: MatrixModule


def projective_cover_kernel(mod: MatrixModule) -> CoverStep:
    """Kernel of the minimal projective cover P(top M) -> M."""
    alg = mod.alg
    q = alg.quiver
    gens = _generators(mod)
    # basis of P at each vertex: (generator index, path)
    pbasis: list[list[tuple[int, Path]]] = [[] for _ in q.vertices]
    images: list[list[Vector]] = [[] for _ in q.vertices]
    for gi, (v, vec) in enumerate(gens):
        stack = [(q.trivial_path(v), vec)]
        while stack:
            p, img = stack.pop()
            pbasis[p.target].append((gi, p))
            images[p.target].append(img)
            if p.length < alg.L:
                for a in q.outgoing[p.target]:
                    stack.append((p.extend(a), mod.act(a.id, img)))
    pindex = [{b: k for k, b in enumerate(pb)} for pb in pbasis]
    kernels = [
        EchelonBasis(nullspace(images[v], mod.dims[v]), len(pbasis[v])) for v in q.vertices
    ]
    for v in q.vertices:
        for support in kernels[v].supports:
            if any(pbasis[v][j][1].length == 0 for j in support):
                raise AssertionError("projective cover is not minimal: kernel meets the top")
    dims = tuple(len(k) for k in kernels)
    action = _blank_action(alg, dims)
    for a in q.arrows:
        src, tgt = kernels[a.source], kernels[a.target]
        for col, (row, support) in enumerate(zip(src.rows, src.supports)):
            moved = [ZERO] * len(pbasis[a.target])
            for j in support:
                gi, p = pbasis[a.source][j]
                if p.length < alg.L:
                    moved[pindex[a.target][(gi, p.extend(a))]] += row[j]
            for r, y in enumerate(tgt.coordinates(moved)):
                if y:
                    action[a.id][r][col] = y
    return CoverStep(tuple(v for v, _ in gens), MatrixModule(alg, dims, tuple(action)))


def syzygy_step(mod: MatrixModule) -> MatrixModule:
    return projective_cover_kernel(mod).omega


def components(mod: MatrixModule) -> list[MatrixModule]:
    """Split along connected components of the nonzero pattern of the action."""
    q = mod.alg.quiver
    nodes = [(v, k) for v in q.vertices for k in range(mod.dims[v])]
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in q.arrows:
        for r, c, _ in mod._sparse[a.id]:
            parent[find((a.source, c))] = find((a.target, r))
    groups: dict = {}
    for x in nodes:
        groups.setdefault(find(x), []).append(x)
    out = []
    for members in groups.values():
        local: dict = {}
        dims = [0] * q.n
        for v, k in members:
            local[(v, k)] = dims[v]
            dims[v] += 1
        action = _blank_action(mod.alg, dims)
        for a in q.arrows:
            for r, c, val in mod._sparse[a.id]:
                if (a.source, c) in local:
                    action[a.id][local[(a.target, r)]][local[(a.source, c)]] = val
        out.append(MatrixModule(mod.alg, tuple(dims), tuple(action)))
    return out


def canonical_key(mod: MatrixModule) -> Optional[Hashable]:
    """Isomorphism-invariant labeling by color refinement; None if the
    refinement does not separate all basis vectors."""
    q = mod.alg.quiver
    nodes = [(v, k) for v in q.vertices for k in range(mod.dims[v])]
    entries = [(a.id, (a.target, r), (a.source, c), val) for a in q.arrows for r, c, val in mod._sparse[a.id]]
    color = {x: x[0] for x in nodes}
    nclasses = len(set(color.values()))
    while True:
        sig = {x: [color[x]] for x in nodes}
        for a, tgt, src, val in entries:
            sig[src].append(("o", a, val, color[tgt]))
            sig[tgt].append(("i", a, val, color[src]))
        keyed = {x: (s[0], tuple(sorted(s[1:], key=repr))) for x, s in sig.items()}
        ranks = {k: i for i, k in enumerate(sorted(set(keyed.values()), key=repr))}
        color = {x: ranks[keyed[x]] for x in nodes}
        new = len(ranks)
        if new == nclasses:
            break
        nclasses = new
    if nclasses != len(nodes):
        return None
    return (mod.dims, tuple(sorted((a, color[t], color[s], val) for a, t, s, val in entries)))


@dataclass(frozen=True)
class PdimResult:
    value: int
    exact: bool

    def matches(self, predicted: ExtNat) -> bool:
        if predicted == INF:
            return not self.exact
        return self.exact and self.value == predicted

    def __str__(self) -> str:
        return f"Exact({self.value})" if self.exact else f"AtLeast({self.value})"


def Exact(k: int) -> PdimResult:
    return PdimResult(k, True)


def AtLeast(k: int) -> PdimResult:
    return PdimResult(k, False)


@dataclass(frozen=True)
class ResolutionTrace:
    covers: tuple[tuple[int, ...], ...]  # top dimension vector of each projective in the resolution
    pdim_result: PdimResult
    syzygy_dims: tuple[tuple[int, ...], ...] = ()


def default_bound(alg: TruncatedAlgebra) -> int:
    return 2 * alg.n * (alg.L + 1)


def pdim_upto(mod: MatrixModule, bound: Optional[int] = None) -> ResolutionTrace:
    """Resolve ``mod`` minimally; Exact(k) if the k-th syzygy is projective for
    some k <= bound, else AtLeast(bound).

    Each syzygy is split into connected components and isomorphic copies
    (same canonical key) are merged with multiplicity, which keeps resolutions
    of infinite projective dimension from growing exponentially.
    """
    alg = mod.alg
    bound = default_bound(alg) if bound is None else bound
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n = alg.n
    level: dict = {}
    # equal keys mean the same matrices up to a basis permutation, so a
    # component's cover and syzygy can be reused whenever it recurs
    memo: dict = {}

    def keyed(comp: MatrixModule) -> Hashable:
        key = canonical_key(comp)
        return ("anon", id(comp)) if key is None else key

    def add(bucket: dict, key: Hashable, comp: MatrixModule, mult: int) -> None:
        if key in bucket:
            bucket[key] = (bucket[key][0], bucket[key][1] + mult)
        else:
            bucket[key] = (comp, mult)

    def resolve(key: Hashable, comp: MatrixModule):
        if key not in memo:
            step = projective_cover_kernel(comp)
            subs = [(keyed(s), s) for s in components(step.omega)] if step.omega.dim else []
            memo[key] = (step.generators, step.omega.dims, subs)
        return memo[key]

    for comp in components(mod):
        add(level, keyed(comp), comp, 1)
    covers: list[tuple[int, ...]] = []
    dims_seen: list[tuple[int, ...]] = []
    k = 0
    while True:
        tops = [0] * n
        nxt: dict = {}
        omega_dims = [0] * n
        for key, (comp, mult) in level.items():
            gens, odims, subs = resolve(key, comp)
            for v in gens:
                tops[v] += mult
            for i, d in enumerate(odims):
                omega_dims[i] += d * mult
            for skey, sub in subs:
                add(nxt, skey, sub, mult)
        covers.append(tuple(tops))
        dims_seen.append(tuple(omega_dims))
        if not nxt:
            return ResolutionTrace(tuple(covers), Exact(k), tuple(dims_seen))
        if k >= bound:
            return ResolutionTrace(tuple(covers), AtLeast(bound), tuple(dims_seen))
        level = nxt
        k += 1


# -- skeletons ----------------------------------------------------------------------


def skeleton_extract(mod: MatrixModule, rng: Optional[random.Random] = None) -> Skeleton:
    """Greedy skeleton: tops first, then layer by layer keep arrow-extensions of
    chosen paths that are independent modulo the next radical power.

    Candidates are scanned in canonical order unless ``rng`` is given, in which
    case generators and candidate order are randomized.
    """
    alg = mod.alg
    q = alg.quiver
    series = radical_series(mod)
    gens = _generators(mod, rng)
    slots = tuple(v for v, _ in gens)
    layer = [(SlotPath(r, q.trivial_path(v)), vec) for r, (v, vec) in enumerate(gens)]
    chosen = [sp for sp, _ in layer]
    for l in range(1, alg.L + 1):
        spans = [EchelonBasis(b.rows, b.dim) for b in series[l + 1]]
        cands = [
            (SlotPath(sp.slot, sp.path.extend(a)), mod.act(a.id, vec))
            for sp, vec in layer
            for a in q.outgoing[sp.target]
        ]
        if rng is not None:
            rng.shuffle(cands)
        else:
            cands.sort(key=lambda c: c[0].sort_key())
        layer = [(sp, vec) for sp, vec in cands if spans[sp.target].add(vec)]
        chosen.extend(sp for sp, _ in layer)
    return Skeleton(alg, slots, tuple(chosen))
