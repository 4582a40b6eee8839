"""Exact linear algebra over the rationals (rows of ``Fraction``)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead if x else x for x in m[r]]
        support = [j for j, x in enumerate(m[r]) if x]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row = m[i]
                for j in support:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(columns: Sequence[Sequence[Fraction]], nrows: int) -> Matrix:
    """Basis of {x : sum_k x_k * columns[k] = 0}, one vector per free column.

    ``columns`` lists the images of the domain basis vectors (each of length
    ``nrows``).  The basis is returned in reduced echelon form.
    """
    ncols = len(columns)
    if ncols == 0:
        return []
    rows = [[columns[k][i] for k in range(ncols)] for i in range(nrows)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis: Matrix = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return rref(basis, ncols)[0]


class EchelonBasis:
    """A subspace basis kept in reduced echelon form, for coordinates and membership."""

    def __init__(self, vectors: Sequence[Sequence[Fraction]], dim: int):
        self.dim = dim
        self.rows, self.pivots = rref(vectors, dim)
        self.supports = [[j for j, x in enumerate(r) if x] for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        w = list(v)
        for row, p, support in zip(self.rows, self.pivots, self.supports):
            if w[p] != 0:
                f = w[p]
                for j in support:
                    w[j] -= f * row[j]
        return w

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        if any(self.reduce(v)):
            raise ValueError("vector not in subspace")
        return [v[p] for p in self.pivots]

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        if self.contains(v):
            return False
        self.rows, self.pivots = rref(self.rows + [list(v)], self.dim)
        self.supports = [[j for j, x in enumerate(r) if x] for r in self.rows]
        return True
