import random
from collections import Counter

import pytest
from hypothesis import given, settings

from helpers import DATA, example3, modules, random_algebra, random_module
from truncpath.algebra import TruncatedAlgebra
from truncpath.io import parse_module
from truncpath.modules import (
    GraphModule,
    MonomialModule,
    pdim_module,
    radical_layering,
    sigma_critical,
    syzygy,
)
from truncpath.oracle import (
    AtLeast,
    Exact,
    canonical_key,
    components,
    from_graph,
    from_monomial,
    layer_dims,
    pdim_upto,
    skeleton_extract,
    syzygy_step,
    top,
)
from truncpath.quiver import INF, validate


def test_pdim_result_semantics():
    assert Exact(3).matches(3) and not Exact(3).matches(INF)
    assert AtLeast(8).matches(INF) and not AtLeast(8).matches(8)
    assert str(Exact(2)) == "Exact(2)" and str(AtLeast(5)) == "AtLeast(5)"


def test_example3_oracle_values():
    alg = example3()
    q = alg.quiver
    pe7 = parse_module((DATA / "pe7_mod_b7.mod").read_text(), alg)
    assert pdim_upto(from_monomial(pe7)).pdim_result == Exact(4)
    ideal = MonomialModule.cyclic_ideal(alg, q.path_from_labels(["b7", "a8", "a9"]))
    assert pdim_upto(from_monomial(ideal)).pdim_result == Exact(3)
    s1 = MonomialModule.simple(alg, q.vertex("1"))
    assert not pdim_upto(from_monomial(s1), 6).pdim_result.exact


def test_example3_graph_module():
    alg = example3()
    gm = parse_module((DATA / "example3_M.mod").read_text(), alg)
    mod = from_graph(gm)
    names = alg.quiver.vertex_names
    assert {names[v]: d for v, d in enumerate(top(mod)) if d} == {"2": 2, "3": 1, "5": 1, "6": 1}
    assert sum(map(sum, layer_dims(mod))) == mod.dim == 10
    assert not pdim_upto(mod, 6).pdim_result.exact


def test_graph_module_truncation_is_checked():
    alg = TruncatedAlgebra(validate(["1"], [("a", "1", "1")]), 1)
    gm = GraphModule(alg, ("x",), (0,), ((0, 0, 0),))
    with pytest.raises(ValueError, match="truncation"):
        from_graph(gm)


def test_projective_has_pdim_zero():
    alg = example3()
    assert pdim_upto(from_monomial(MonomialModule.projective(alg, 0))).pdim_result == Exact(0)


def test_oracle_equivalence_random_modules():
    """Formula pdim against explicit minimal resolutions on 200 monomial modules."""
    rng = random.Random(2024)
    mismatches = []
    for _ in range(200):
        alg = random_algebra(rng, n_max=4, L_max=3, arrow_max=7)
        m = random_module(rng, alg, dim_max=20)
        got = pdim_upto(from_monomial(m)).pdim_result
        if not got.matches(pdim_module(m)):
            mismatches.append((m, got))
    assert not mismatches


@settings(max_examples=100, deadline=None)
@given(modules(dim_max=12))
def test_oracle_layers_match_skeleton(m):
    mod = from_monomial(m)
    assert [tuple(r) for r in layer_dims(mod)] == list(radical_layering(m).rows)
    assert skeleton_extract(mod) == m.skeleton


@settings(max_examples=100, deadline=None)
@given(modules(dim_max=12))
def test_first_syzygy_dimensions(m):
    """dim Ω(M) from linear algebra equals the sum of dims of the cyclic ideals."""
    omega = syzygy_step(from_monomial(m))
    expected = [0] * m.alg.n
    for g in syzygy(m):
        for sp in MonomialModule.cyclic_ideal(m.alg, g).skeleton.paths:
            expected[sp.target] += 1
    assert list(omega.dims) == expected


def test_syzygy_independent_of_skeleton_choice():
    """Randomized skeletons give the same multiset of (end vertex, length) of critical paths."""
    rng = random.Random(99)
    checked = 0
    while checked < 150:
        alg = random_algebra(rng, n_max=4, L_max=3, arrow_max=6)
        m = random_module(rng, alg, max_slots=3, dim_max=15)
        if len(m.slots) < 2:
            continue
        mod = from_monomial(m)
        base = Counter((c.target, c.length) for c in sigma_critical(m.skeleton))
        for _ in range(3):
            sk = skeleton_extract(mod, random.Random(rng.random()))
            assert Counter((c.target, c.length) for c in sigma_critical(sk)) == base
            assert radical_layering(sk) == radical_layering(m)
            assert pdim_module(sk) == pdim_module(m)
        checked += 1


def test_example3_M_skeleton_independence():
    alg = example3()
    mod = from_graph(parse_module((DATA / "example3_M.mod").read_text(), alg))
    base = Counter((c.target, c.length) for c in sigma_critical(skeleton_extract(mod)))
    for seed in range(10):
        sk = skeleton_extract(mod, random.Random(seed))
        assert Counter((c.target, c.length) for c in sigma_critical(sk)) == base


def test_components_and_canonical_key():
    alg = example3()
    q = alg.quiver
    s = MonomialModule.simple(alg, q.vertex("15"))
    double = from_monomial(s.direct_sum(s))
    parts = components(double)
    assert len(parts) == 2
    assert canonical_key(parts[0]) == canonical_key(parts[1]) is not None
    other = from_monomial(MonomialModule.simple(alg, q.vertex("14")))
    assert canonical_key(other) != canonical_key(parts[0])
