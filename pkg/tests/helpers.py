"""Random quivers and modules shared by the test files."""

from __future__ import annotations

import itertools
import random
from pathlib import Path as FsPath

import numpy as np
from hypothesis import strategies as st

from truncpath.algebra import TruncatedAlgebra
from truncpath.io import parse_quiver
from truncpath.generic import realizable, seq_leq
from truncpath.modules import MonomialModule, SemisimpleSequence, SlotPath
from truncpath.quiver import validate

DATA = FsPath(__file__).resolve().parents[1] / "src" / "truncpath" / "data"


def example3() -> TruncatedAlgebra:
    return parse_quiver((DATA / "example3.tqa").read_text(encoding="utf-8"))


def random_algebra(rng: random.Random, n_max: int = 5, L_max: int = 3, arrow_max: int = 8,
                   n_min: int = 1) -> TruncatedAlgebra:
    n = rng.randint(n_min, n_max)
    k = rng.randint(0, arrow_max)
    arrows = [(f"x{j}", str(rng.randrange(n)), str(rng.randrange(n))) for j in range(k)]
    return TruncatedAlgebra(validate([str(i) for i in range(n)], arrows, name="rnd"), rng.randint(1, L_max))


def random_module(rng: random.Random, alg: TruncatedAlgebra, max_slots: int = 3, dim_max: int = 20,
                  rel_prob: float = 0.3) -> MonomialModule:
    """Random P/C, retried until the total dimension is at most ``dim_max``."""
    while True:
        slots = tuple(rng.randrange(alg.n) for _ in range(rng.randint(1, max_slots)))
        rels = []
        for r, v in enumerate(slots):
            for p in alg.paths_from(v):
                if p.length and rng.random() < rel_prob:
                    rels.append(SlotPath(r, p))
        m = MonomialModule(alg, slots, tuple(rels))
        if m.dim <= dim_max:
            return m
        rel_prob = min(0.9, rel_prob + 0.1)


@st.composite
def algebras(draw, n_max: int = 5, L_max: int = 3, arrow_max: int = 8):
    n = draw(st.integers(1, n_max))
    ends = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    pairs = draw(st.lists(ends, max_size=arrow_max))
    arrows = [(f"x{j}", str(s), str(t)) for j, (s, t) in enumerate(pairs)]
    L = draw(st.integers(1, L_max))
    return TruncatedAlgebra(validate([str(i) for i in range(n)], arrows, name="rnd"), L)


@st.composite
def modules(draw, alg_strategy=None, max_slots: int = 3, dim_max: int = 20):
    alg = draw(alg_strategy if alg_strategy is not None else algebras(n_max=4, L_max=3, arrow_max=6))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_module(random.Random(seed), alg, max_slots=max_slots, dim_max=dim_max)


def exhaustive_realizable(alg, S):
    """Search all prefix-closed path sets in the projective cover of the top."""
    q = alg.quiver
    rows = S.rows
    layer0 = [(r, q.trivial_path(v)) for r, v in enumerate(v for v in q.vertices for _ in range(rows[0][v]))]

    def extend(layer, l):
        if l > alg.L:
            return True
        cands = [(r, p.extend(a)) for r, p in layer for a in q.outgoing[p.target]]
        groups = [[c for c in cands if c[1].target == v] for v in q.vertices]
        if any(len(groups[v]) < rows[l][v] for v in q.vertices):
            return False
        choices = [itertools.combinations(groups[v], rows[l][v]) for v in q.vertices]
        return any(extend([c for part in pick for c in part], l + 1) for pick in itertools.product(*choices))

    return extend(layer0, 1)


def brute_geq(alg, S):
    """All realizable S' >= S by scanning every way to split each column total."""
    totals = S.totals
    columns = []
    for t in totals:
        columns.append([c for c in itertools.product(range(t + 1), repeat=alg.L + 1) if sum(c) == t])
    out = []
    for cols in itertools.product(*columns):
        cand = SemisimpleSequence.from_array(np.array(cols).T)
        if realizable(alg, cand) and seq_leq(S, cand):
            out.append(cand.rows)
    return sorted(out)
