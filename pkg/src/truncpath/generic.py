"""Semisimple sequences as labels of the strata Mod(S) of the module variety:
realizability, generic projective dimension, the spectrum of values on the
closure of a stratum, the dominance order, and the tree modules T_i whose
projective dimensions realize the finitistic dimension."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .algebra import TruncatedAlgebra, l_deg
from .modules import MonomialModule, SemisimpleSequence, SlotPath, TreeModule
from .quiver import INF, ExtNat, Path

DEFAULT_CAP = 12


class NotRealizable(ValueError):
    pass


def _check_shape(alg: TruncatedAlgebra, S: SemisimpleSequence) -> np.ndarray:
    s = S.array
    if s.shape != (alg.L + 1, alg.n):
        raise ValueError(f"sequence has shape {s.shape}, expected {(alg.L + 1, alg.n)}")
    return s


def realizable(alg: TruncatedAlgebra, S: SemisimpleSequence) -> bool:
    """Whether some prefix-closed path set in the projective cover of the top
    layer has exactly s(i,l) paths of length l ending at each vertex i.

    Chosen paths at level l+1 are arrow extensions of chosen level-l paths;
    distinct parents give distinct extensions, so level l+1 can be filled iff
    s(., l+1) <= A s(., l) entrywise.
    """
    s = _check_shape(alg, S)
    A = alg.quiver.arrow_count_matrix
    return all(np.all(s[l + 1] <= A @ s[l]) for l in range(alg.L))


@dataclass(frozen=True)
class LayerDecomposition:
    s: SemisimpleSequence
    r: SemisimpleSequence  # multiplicities of the layers of P not used by S


def projective_layers(alg: TruncatedAlgebra, top: np.ndarray) -> np.ndarray:
    """Row l = multiplicities of the simples in J^l P / J^{l+1} P, P = cover of ``top``."""
    A = alg.quiver.arrow_count_matrix
    rows = [np.asarray(top, dtype=np.int64)]
    for _ in range(alg.L):
        rows.append(A @ rows[-1])
    return np.array(rows)


def layer_decomposition(alg: TruncatedAlgebra, S: SemisimpleSequence) -> LayerDecomposition:
    s = _check_shape(alg, S)
    r = projective_layers(alg, s[0]) - s
    if (r < 0).any():
        raise NotRealizable("sequence not embeddable in projective cover layers")
    return LayerDecomposition(S, SemisimpleSequence.from_array(r))


def _require(alg: TruncatedAlgebra, S: SemisimpleSequence) -> np.ndarray:
    if not realizable(alg, S):
        raise NotRealizable("no module has this radical layering")
    return layer_decomposition(alg, S).r.array


def generic_pdim(alg: TruncatedAlgebra, S: SemisimpleSequence) -> ExtNat:
    r = _require(alg, S)
    values = [l_deg(alg, l, alg.c(i)) for l, i in zip(*np.nonzero(r))]
    return 1 + max(values) if values else 0


@dataclass(frozen=True)
class SpectrumReport:
    generic: ExtNat
    others: tuple[ExtNat, ...]

    @property
    def full_set(self) -> frozenset:
        return frozenset((self.generic,) + self.others)


def spectrum(alg: TruncatedAlgebra, S: SemisimpleSequence) -> SpectrumReport:
    g = generic_pdim(alg, S)
    s = S.array
    cands = {1 + l_deg(alg, int(l), alg.c(int(j))) for l, j in zip(*np.nonzero(s)) if l >= 1}
    return SpectrumReport(g, tuple(sorted(v for v in cands if v > g)))


def seq_leq(S: SemisimpleSequence, S2: SemisimpleSequence) -> bool:
    """True iff S2 >= S: every partial sum of layers of S is a summand of the
    corresponding partial sum of S2, and the totals agree."""
    if S.shape != S2.shape:
        raise ValueError("shape mismatch")
    a, b = np.cumsum(S.array, axis=0), np.cumsum(S2.array, axis=0)
    return bool(np.array_equal(a[-1], b[-1]) and np.all(a <= b))


def _expand(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For K boxes [lo_k, hi_k] return (parent index, vector) for every integer
    point of every box, in lexicographic order within each box."""
    k, n = lo.shape
    parent = np.arange(k)
    vals = np.zeros((k, 0), dtype=np.int64)
    for i in range(n):
        cnt = np.maximum(hi[parent, i] - lo[parent, i] + 1, 0)
        starts = np.cumsum(cnt) - cnt
        offset = np.arange(int(cnt.sum())) - np.repeat(starts, cnt)
        col = np.repeat(lo[parent, i], cnt) + offset
        vals = np.concatenate([np.repeat(vals, cnt, axis=0), col[:, None]], axis=1)
        parent = np.repeat(parent, cnt)
    return parent, vals


def iter_geq_batches(alg: TruncatedAlgebra, S: SemisimpleSequence, chunk: int = 256) -> Iterator[np.ndarray]:
    """Yield arrays of shape (B, L+1, n) holding every realizable S' >= S.

    Rows are filled top-down, level by level over a chunk of top rows at a
    time; a row may only use what the layer above can reach (s'(., l+1) <=
    A s'(., l)) and must keep every column's partial sums at or above those
    of S.  The last row is forced by the column totals.
    """
    s = _check_shape(alg, S)
    A = alg.quiver.arrow_count_matrix
    L = alg.L
    prefix = np.cumsum(s, axis=0)
    totals = prefix[-1]
    _, tops = _expand(prefix[0][None, :], totals[None, :])
    for c0 in range(0, len(tops), chunk):
        states = tops[c0 : c0 + chunk][:, None, :]
        used = states[:, 0, :]
        for l in range(1, L + 1):
            lo = np.maximum(prefix[l] - used, 0)
            hi = np.minimum(totals - used, states[:, -1, :] @ A.T)
            if l == L:
                last = totals - used
                ok = np.all(last <= hi, axis=1)
                states = np.concatenate([states[ok], last[ok][:, None, :]], axis=1)
                break
            parent, rows = _expand(lo, hi)
            states = np.concatenate([states[parent], rows[:, None, :]], axis=1)
            used = used[parent] + rows
            if not len(states):
                break
        if len(states):
            yield states


def iter_geq(alg: TruncatedAlgebra, S: SemisimpleSequence) -> Iterator[SemisimpleSequence]:
    """Yield every realizable S' >= S in lexicographic order."""
    for batch in iter_geq_batches(alg, S):
        for arr in batch:
            yield SemisimpleSequence.from_array(arr)


def enumerate_geq(alg: TruncatedAlgebra, S: SemisimpleSequence, cap: Optional[int] = DEFAULT_CAP) -> list[SemisimpleSequence]:
    """All realizable S' >= S; refuses sequences of total dimension above ``cap``."""
    if cap is not None and S.dim > cap:
        raise ValueError(f"cap exceeded: total dimension {S.dim} > {cap}")
    return list(iter_geq(alg, S))


def _l_deg_table(alg: TruncatedAlgebra) -> np.ndarray:
    return np.array([[float(l_deg(alg, l, alg.c(i))) for i in alg.quiver.vertices] for l in range(alg.L + 1)])


def spectrum_by_enumeration(alg: TruncatedAlgebra, S: SemisimpleSequence, cap: Optional[int] = DEFAULT_CAP) -> tuple[frozenset, int]:
    """{generic_pdim(S') : S' >= S realizable}, plus the number of S' visited.

    The generic value of each S' is recomputed from its own projective cover
    layers in bulk.
    """
    if cap is not None and S.dim > cap:
        raise ValueError(f"cap exceeded: total dimension {S.dim} > {cap}")
    A = alg.quiver.arrow_count_matrix
    table = _l_deg_table(alg)
    values: set = set()
    count = 0
    for batch in iter_geq_batches(alg, S):
        count += len(batch)
        layers = [batch[:, 0, :]]
        for _ in range(alg.L):
            layers.append(layers[-1] @ A.T)
        r = np.stack(layers, axis=1) - batch
        if (r < 0).any():
            raise AssertionError("enumerated sequence is not realizable")
        masked = np.where(r != 0, table[None, :, :], -1.0).reshape(len(batch), -1).max(axis=1)
        values.update(np.unique(masked).tolist())
    return frozenset(0 if v < 0 else (INF if v == INF else 1 + int(v)) for v in values), count


def tree_T(alg: TruncatedAlgebra, i: int) -> TreeModule:
    """Λe_i modulo the paths from e_i of positive length that end at a
    non-cyclebound vertex while all shorter positive-length initial subpaths
    end at cyclebound vertices."""
    q = alg.quiver
    relations: list[Path] = []
    layer = [q.trivial_path(i)]
    for _ in range(alg.L):
        nxt = []
        for p in layer:
            for a in q.outgoing[p.target]:
                ext = p.extend(a)
                (nxt if alg.is_cyclebound(a.target) else relations).append(ext)
        layer = nxt
    m = MonomialModule(alg, (i,), tuple(SlotPath(0, p) for p in relations))
    return TreeModule.from_module(m)
