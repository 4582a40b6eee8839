import random

import numpy as np
import pytest
from hypothesis import given, settings

from helpers import algebras, example3, random_algebra
from truncpath.quiver import (
    INF,
    QuiverError,
    b_in,
    c_out,
    cyclebound_set,
    enumerate_paths,
    format_extnat,
    is_initial_subpath,
    validate,
)


def walk_lengths(q, start, cap, forward=True):
    """Lengths of all walks from (or into) ``start``, by brute force up to ``cap``."""
    frontier = {start}
    longest = 0
    for k in range(1, cap + 1):
        nxt = set()
        for v in frontier:
            arrows = q.outgoing[v] if forward else q.incoming[v]
            nxt.update(a.target if forward else a.source for a in arrows)
        if not nxt:
            break
        frontier, longest = nxt, k
    return longest


def test_validate_errors():
    with pytest.raises(QuiverError, match="empty vertex set"):
        validate([], [])
    with pytest.raises(QuiverError, match="duplicate label"):
        validate(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])
    with pytest.raises(QuiverError, match="dangling endpoint"):
        validate(["1"], [("a", "1", "9")])


def test_example3_c_values_and_cyclebound():
    alg = example3()
    q = alg.quiver
    c = {q.vertex_names[i]: q.c_values[i] for i in q.vertices}
    assert {k: c[k] for k in ("8", "9", "10", "11", "12", "13", "14", "15")} == {
        "8": 7, "9": 6, "10": 5, "11": 4, "12": 3, "13": 2, "14": 1, "15": 0}
    assert all(c[str(i)] == INF for i in range(1, 8))
    assert {q.vertex_names[i] for i in cyclebound_set(q)} == {str(i) for i in range(1, 8)}
    assert q.b_values[q.vertex("15")] == INF
    assert q.b_values[q.vertex("8")] == 1


def test_enumerate_paths_from_9():
    q = example3().quiver
    got = [q.path_str(p) for p in enumerate_paths(q, q.vertex("9"), 3)]
    assert got == ["e9", "a9", "a10*a9", "b10*a9", "a11*a10*a9", "a13*b10*a9"]


def test_arrow_count_matrix():
    q = validate(["1", "2"], [("a", "1", "2"), ("b", "1", "2"), ("c", "2", "2")])
    assert q.arrow_count_matrix.tolist() == [[0, 0], [2, 1]]


def test_initial_subpath():
    q = example3().quiver
    p = q.path_from_labels(["b7", "a8"])
    longer = p.extend(q.arrow("a9"))
    assert is_initial_subpath(p, longer)
    assert not is_initial_subpath(longer, p)
    assert is_initial_subpath(q.trivial_path(q.vertex("7")), p)


def test_format_extnat():
    assert format_extnat(INF) == "∞"
    assert format_extnat(INF, unicode=False) == "inf"
    assert format_extnat(3) == "3"


def test_c_and_b_against_walk_enumeration():
    """c_out/b_in agree with exhaustive walks capped at n(n+1) on 500 quivers."""
    rng = random.Random(1234)
    for _ in range(500):
        q = random_algebra(rng).quiver
        cap = q.n * (q.n + 1)
        for e in q.vertices:
            fwd = walk_lengths(q, e, cap)
            assert c_out(q, e) == (INF if fwd == cap else fwd)
            back = walk_lengths(q, e, cap, forward=False)
            assert b_in(q, e) == (INF if back == cap else back)


@settings(max_examples=200, deadline=None)
@given(algebras())
def test_cyclebound_iff_infinite_c(alg):
    q = alg.quiver
    for e in q.vertices:
        assert (e in cyclebound_set(q)) == (c_out(q, e) == INF)


@settings(max_examples=100, deadline=None)
@given(algebras(n_max=4, L_max=3))
def test_path_counts_match_matrix_powers(alg):
    q = alg.quiver
    A = q.arrow_count_matrix
    for e in q.vertices:
        paths = enumerate_paths(q, e, alg.L)
        keys = [p.sort_key() for p in paths]
        assert keys == sorted(keys)
        vec = np.zeros(q.n, dtype=np.int64)
        vec[e] = 1
        for length in range(alg.L + 1):
            counts = np.bincount([p.target for p in paths if p.length == length], minlength=q.n)
            assert counts.tolist() == vec.tolist()
            vec = A @ vec
