"""Acceptance criteria 1-8.  Every comparison is exact equality of integers or ∞."""

import io
import json
import random
import time

from helpers import DATA, example3, exhaustive_realizable, random_algebra, random_module
from truncpath.algebra import findim, l_deg, pdim_cyclic, pdim_simple
from truncpath.cli import run
from truncpath.generic import generic_pdim, iter_geq, realizable, spectrum, tree_T
from truncpath.io import emit_module, emit_quiver, parse_module
from truncpath.modules import (
    MonomialModule,
    SemisimpleSequence,
    layered_graph,
    pdim_module,
    radical_layering,
    sigma_critical,
)
from truncpath.oracle import Exact, from_graph, from_monomial, pdim_upto, skeleton_extract
from truncpath.quiver import INF

Q = str(DATA / "example3.tqa")


def cli_json(*argv):
    out = io.StringIO()
    code = run(["--json", *argv], out=out, err=io.StringIO())
    return code, json.loads(out.getvalue())


def test_criterion_1_example3_golden_fixture():
    q = example3().quiver
    c = lambda name: q.c_values[q.vertex(name)]
    assert (c("10"), c("8"), c("7")) == (5, 7, INF)
    assert {q.vertex_names[v] for v in q.cyclebound} == {str(i) for i in range(1, 8)}


def test_criterion_2_cyclic_and_quotient_pdims_and_findim():
    alg = example3()
    q = alg.quiver
    path = q.path_from_labels(["b7", "a8", "a9"])
    pe7 = parse_module((DATA / "pe7_mod_b7.mod").read_text(), alg)
    assert pdim_cyclic(alg, path) == 3
    assert pdim_module(pe7) == 4
    assert pdim_upto(from_monomial(MonomialModule.cyclic_ideal(alg, path))).pdim_result == Exact(3)
    assert pdim_upto(from_monomial(pe7)).pdim_result == Exact(4)
    rep = findim(alg)
    assert (rep.findim, rep.bracket, rep.acyclic_path_bound) == (4, (3, 4), 7)


def test_criterion_3_simple_module_table():
    alg = example3()
    q = alg.quiver
    table = {q.vertex_names[i]: pdim_simple(alg, i) for i in q.vertices}
    assert {v for v, d in table.items() if d == INF} == {str(i) for i in range(1, 8)}
    assert max(table[str(i)] for i in range(8, 16)) == 3


def test_criterion_4_syzygy_of_M_and_trees():
    alg = example3()
    q = alg.quiver
    gm = parse_module((DATA / "example3_M.mod").read_text(), alg)
    gens = [q.path_str(c.path) for c in sigma_critical(skeleton_extract(from_graph(gm)))]
    for g in ["b3", "a4*a3", "a3*b4*a3", "a5", "b5", "a6", "b6", "a2"]:
        assert g in gens

    def tree(labels):
        g = layered_graph(MonomialModule.cyclic_ideal(alg, q.path_from_labels(labels)), critical=False)
        return {(nd.layer, nd.label, tuple(ch.label for ch in g.children(nd.id))) for nd in g.nodes}

    assert tree(["a3", "a4"]) == {(0, "1", ("1", "2")), (1, "1", ()), (1, "2", ())}
    assert tree(["b3"]) == {(0, "12", ("13",)), (1, "13", ("14",)), (2, "14", ())}
    assert tree(["a2"]) == {(0, "3", ("4", "12")), (1, "4", ("1", "3")), (1, "12", ("13",)),
                            (2, "1", ()), (2, "3", ()), (2, "13", ())}


def test_criterion_5_spectrum_of_pe1():
    alg = example3()
    S = radical_layering(MonomialModule.projective(alg, alg.quiver.vertex("1")))
    assert S.dim == 18
    values = spectrum(alg, S).full_set
    assert values == frozenset({0, 2, 3, 4, INF}) and 1 not in values
    t0 = time.perf_counter()
    code, rep = cli_json("spectrum-check", Q, str(DATA / "s_of_Pe1.seq"))
    elapsed = time.perf_counter() - t0
    assert code == 0 and rep["result"]["match"]
    assert rep["result"]["enumerated"] == [0, 2, 3, 4, "inf"]
    assert elapsed <= 60


def test_criterion_6_property_suite():
    rng = random.Random(606)
    for _ in range(500):
        alg = random_algebra(rng, n_max=5, L_max=3)
        q = alg.quiver
        # l-degree differences
        for c in range(3 * (alg.L + 1)):
            for l in range(alg.L + 1):
                for l2 in range(l, alg.L + 1):
                    assert l_deg(alg, l2, c) - l_deg(alg, l, c) in (0, 1)
        # pdim of cyclic ideals ending at a common vertex
        by_target: dict = {}
        for s in q.vertices:
            for p in alg.paths_from(s):
                if p.length:
                    by_target.setdefault(p.target, set()).add(p.length)
        for e, ls in by_target.items():
            for l in ls:
                for l2 in ls:
                    if l <= l2:
                        a, b = l_deg(alg, l, alg.c(e)), l_deg(alg, l2, alg.c(e))
                        assert a <= b <= 1 + a
        # closed-form findim vs tree modules
        assert findim(alg).findim == max(pdim_module(tree_T(alg, i)) for i in q.vertices)
        # monotonicity along enumerated S' >= S
        m = random_module(rng, alg, max_slots=2, dim_max=7)
        S = radical_layering(m)
        g = generic_pdim(alg, S)
        assert all(generic_pdim(alg, S2) >= g for S2 in iter_geq(alg, S))
        # realizability test vs exhaustive search
        if alg.n <= 4 and alg.L <= 2:
            rows = [[rng.randint(0, 2) if l == 0 else rng.randint(0, 1) for _ in q.vertices]
                    for l in range(alg.L + 1)]
            T = SemisimpleSequence.from_array(rows)
            assert realizable(alg, T) == exhaustive_realizable(alg, T)


def test_criterion_7_oracle_equivalence(tmp_path):
    """200 random monomial modules through the CLI oracle command: no exit code 2."""
    rng = random.Random(707)
    codes = []
    for k in range(200):
        alg = random_algebra(rng, n_max=4, L_max=3, arrow_max=7)
        m = random_module(rng, alg, dim_max=20)
        qf, mf = tmp_path / f"q{k}.tqa", tmp_path / f"m{k}.mod"
        qf.write_text(emit_quiver(alg))
        mf.write_text(emit_module(m))
        code, rep = cli_json("oracle", str(qf), str(mf))
        codes.append(code)
        assert rep["result"]["formula"] == (pdim_module(m) if pdim_module(m) != INF else "inf")
    assert codes.count(2) == 0 and set(codes) == {0}


def test_criterion_8_constancy_on_strata():
    rng = random.Random(808)
    for _ in range(100):
        alg = random_algebra(rng, n_max=4, L_max=3)
        m = random_module(rng, alg)
        assert pdim_module(m) == generic_pdim(alg, radical_layering(m))
