"""Truncated path algebras KQ/I (I generated by all paths of length L+1) and
their closed-form homological invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .quiver import INF, ExtNat, Path, Quiver, enumerate_paths


@dataclass(frozen=True, eq=False)
class TruncatedAlgebra:
    quiver: Quiver
    L: int

    def __post_init__(self) -> None:
        if not isinstance(self.L, int) or self.L < 1:
            raise ValueError(f"L must be a positive integer, got {self.L!r}")

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def name(self) -> str:
        return self.quiver.name

    def c(self, e: int) -> ExtNat:
        return self.quiver.c_values[e]

    def is_cyclebound(self, e: int) -> bool:
        return e in self.quiver.cyclebound

    def paths_from(self, e: int, max_len: Optional[int] = None) -> list[Path]:
        """Basis paths of Λe (length <= L, or <= max_len if smaller)."""
        cap = self.L if max_len is None else min(max_len, self.L)
        return enumerate_paths(self.quiver, e, cap)

    def check_path(self, p: Path) -> None:
        if p.length > self.L:
            raise ValueError(f"path {self.quiver.path_str(p)} has length {p.length} > L = {self.L}")


def l_deg(alg: TruncatedAlgebra, l: int, c: ExtNat) -> ExtNat:
    """floor(c/(L+1)) + floor((c+l)/(L+1)); infinite c stays infinite."""
    if not 0 <= l <= alg.L:
        raise ValueError(f"l must lie in 0..{alg.L}, got {l}")
    if c == INF:
        return INF
    c = int(c)
    return c // (alg.L + 1) + (c + l) // (alg.L + 1)


def pdim_cyclic(alg: TruncatedAlgebra, q: Path) -> ExtNat:
    """Projective dimension of the cyclic left ideal Λq."""
    alg.check_path(q)
    if q.length == 0:
        return 0
    return l_deg(alg, q.length, alg.c(q.target))


def maximal_paths(alg: TruncatedAlgebra, e: int, max_len: int) -> list[Path]:
    """Paths from ``e`` of length <= max_len that cannot be extended within the bound."""
    paths = alg.paths_from(e, max_len)
    q = alg.quiver
    return [p for p in paths if p.length == max_len or q.is_sink(p.target)]


def branches_and_syzygy_of_cyclic(alg: TruncatedAlgebra, q: Path) -> tuple[list[Path], list[Path]]:
    """Branches of the tree module Λq (rooted at the end of ``q``) and the
    generators βb of its first syzygy."""
    alg.check_path(q)
    e = q.target
    branches = maximal_paths(alg, e, alg.L - q.length)
    syz = [
        b.extend(a)
        for b in branches
        for a in alg.quiver.outgoing[b.target]
        if b.length + 1 <= alg.L
    ]
    syz.sort(key=Path.sort_key)
    return branches, syz


def pdim_simple(alg: TruncatedAlgebra, i: int) -> ExtNat:
    q = alg.quiver
    if q.is_sink(i):
        return 0
    if alg.is_cyclebound(i):
        return INF
    return 1 + max(l_deg(alg, 1, alg.c(a.target)) for a in q.outgoing[i])


@dataclass(frozen=True)
class FindimReport:
    s: int  # -1 when no path of positive length has finite pdim
    findim: int
    witness: Optional[tuple[int, int]]  # (terminal vertex, path length) attaining s
    acyclic_path_bound: Optional[int]  # None when every vertex is cyclebound
    lower_bound: Optional[int]
    max_simple_pdim: Optional[int]

    @property
    def bracket(self) -> Optional[tuple[int, int]]:
        if self.lower_bound is None:
            return None
        return (self.lower_bound, self.lower_bound + 1)


def acyclic_path_bound(alg: TruncatedAlgebra) -> Optional[int]:
    """Longest path in the subquiver spanned by the non-cyclebound vertices."""
    q = alg.quiver
    free = [v for v in q.vertices if not alg.is_cyclebound(v)]
    if not free:
        return None
    return nx.dag_longest_path_length(q.digraph.subgraph(free))


def findim(alg: TruncatedAlgebra) -> FindimReport:
    q = alg.quiver
    s, witness = -1, None
    for e in q.vertices:
        if alg.is_cyclebound(e) or not q.incoming[e]:
            continue
        # a path of length l ends at e iff 1 <= l <= b(e): take terminal subpaths
        l = int(min(alg.L, q.b_values[e]))
        val = l_deg(alg, l, alg.c(e))
        if val > s:
            s, witness = int(val), (e, l)
    m = acyclic_path_bound(alg)
    lower = None if m is None else (0 if m == 0 else 1 + int(l_deg(alg, 1, m - 1)))
    simples = [pdim_simple(alg, i) for i in q.vertices if not alg.is_cyclebound(i)]
    return FindimReport(
        s=s,
        findim=s + 1,
        witness=witness,
        acyclic_path_bound=m,
        lower_bound=lower,
        max_simple_pdim=int(max(simples)) if simples else None,
    )
