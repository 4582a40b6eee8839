"""Command line interface: ``truncpath [--json] <command> ...``.

Exit codes: 0 success, 1 input error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FsPath
from typing import Any, Optional

from . import __version__
from .algebra import TruncatedAlgebra, findim, pdim_cyclic, pdim_simple
from .generic import (
    NotRealizable,
    layer_decomposition,
    generic_pdim,
    realizable,
    spectrum,
    spectrum_by_enumeration,
    tree_T,
)
from .io import ParseError, parse_module, parse_path, parse_quiver, parse_sequence
from .modules import (
    GraphModule,
    MonomialModule,
    iterated_syzygy,
    layered_graph,
    pdim_module,
    sigma_critical,
)
from .oracle import default_bound, from_graph, from_monomial, pdim_upto, skeleton_extract
from .quiver import INF, QuiverError, format_extnat

REPORT_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


class InputError(Exception):
    pass


def _jsonable(x: Any) -> Any:
    if isinstance(x, float) and x == INF:
        return "inf"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return [_jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _fmt(x) -> str:
    return format_extnat(x)


def _fmt_set(values) -> str:
    return "{" + ", ".join(_fmt(v) for v in sorted(values)) + "}"


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_quiver(path: str) -> TruncatedAlgebra:
    return parse_quiver(_read(path), source=path)


def _load_module(alg: TruncatedAlgebra, path: str, ltr: bool):
    return parse_module(_read(path), alg, left_to_right=ltr, source=path)


def _skeleton_of(mod):
    """Skeleton of a monomial module, or the canonical greedy one of a graph module."""
    if isinstance(mod, GraphModule):
        return skeleton_extract(from_graph(mod))
    return mod.skeleton


def _vertex(alg: TruncatedAlgebra, name: str) -> int:
    try:
        return alg.quiver.vertex(name)
    except QuiverError as exc:
        raise InputError(str(exc)) from None


# -- commands: each returns (result dict, human lines, exit code) ------------------


def cmd_analyze(args):
    alg = _load_quiver(args.quiver)
    q = alg.quiver
    names = q.vertex_names
    rep = findim(alg)
    trees = []
    for i in q.vertices:
        t = tree_T(alg, i)
        trees.append({
            "vertex": names[i],
            "branches": [q.path_str(b) for b in t.branches],
            "pdim": pdim_module(t),
        })
    result = {
        "n": alg.n,
        "arrows": len(q.arrows),
        "c": {names[i]: q.c_values[i] for i in q.vertices},
        "b": {names[i]: q.b_values[i] for i in q.vertices},
        "cyclebound": [names[i] for i in sorted(q.cyclebound)],
        "findim": rep.findim,
        "s": rep.s,
        "witness": None if rep.witness is None else {"vertex": names[rep.witness[0]], "length": rep.witness[1]},
        "acyclic_path_bound": rep.acyclic_path_bound,
        "bracket": None if rep.bracket is None else list(rep.bracket),
        "max_simple_pdim": rep.max_simple_pdim,
        "tree_modules": trees,
    }
    lines = [
        f"quiver {alg.name}: {alg.n} vertices, {len(q.arrows)} arrows, L = {alg.L}",
        "cyclebound: {" + ", ".join(result["cyclebound"]) + "}",
        "vertex  c  b",
    ]
    lines += [f"{names[i]:>6}  {_fmt(q.c_values[i])}  {_fmt(q.b_values[i])}" for i in q.vertices]
    lines.append(f"findim = {rep.findim}")
    if rep.witness is not None:
        lines.append(f"  attained by paths of length {rep.witness[1]} ending at {names[rep.witness[0]]}")
    if rep.bracket is not None:
        lo, hi = rep.bracket
        lines.append(f"longest path among non-cyclebound vertices m = {rep.acyclic_path_bound}; findim in [{lo}, {hi}]")
    if rep.max_simple_pdim is not None:
        lines.append(f"max finite pdim of a simple = {rep.max_simple_pdim}")
    lines.append("tree modules T_i:")
    lines += [f"  T_{t['vertex']}: pdim {_fmt(t['pdim'])}, branches {', '.join(t['branches'])}" for t in trees]
    return result, lines, EXIT_OK


def cmd_pdim(args):
    alg = _load_quiver(args.quiver)
    q = alg.quiver
    if args.kind == "path":
        try:
            p = parse_path(args.target, alg, args.left_to_right)
            value = pdim_cyclic(alg, p)
        except (QuiverError, ValueError) as exc:
            raise InputError(str(exc)) from None
        result = {"kind": "path", "path": q.path_str(p), "length": p.length, "pdim": value}
        return result, [f"pdim Λ({q.path_str(p)}) = {_fmt(value)}"], EXIT_OK
    if args.kind == "simple":
        i = _vertex(alg, args.target)
        value = pdim_simple(alg, i)
        return {"kind": "simple", "vertex": args.target, "pdim": value}, [f"pdim S_{args.target} = {_fmt(value)}"], EXIT_OK
    mod = _load_module(alg, args.target, args.left_to_right)
    value = pdim_module(_skeleton_of(mod))
    return {"kind": "module", "file": args.target, "pdim": value}, [f"pdim M = {_fmt(value)}"], EXIT_OK


def cmd_syzygy(args):
    alg = _load_quiver(args.quiver)
    q = alg.quiver
    sk = _skeleton_of(_load_module(alg, args.module, args.left_to_right))
    if args.iterate < 1:
        raise InputError("--iterate must be >= 1")
    if args.iterate == 1:
        summands = [
            {"slot": c.slot + 1, "generator": q.path_str(c.path), "vertex": q.vertex_names[c.target],
             "multiplicity": 1, "pdim": pdim_cyclic(alg, c.path)}
            for c in sigma_critical(sk)
        ]
    else:
        counts = iterated_syzygy(sk, args.iterate)
        summands = [
            {"slot": None, "generator": q.path_str(p), "vertex": q.vertex_names[p.target],
             "multiplicity": k, "pdim": pdim_cyclic(alg, p)}
            for p, k in sorted(counts.items(), key=lambda kv: kv[0].sort_key())
        ]
    result = {"order": args.iterate, "summands": summands}
    lines = [f"syzygy of order {args.iterate}: {sum(s['multiplicity'] for s in summands)} cyclic summands"]
    for s in summands:
        where = f"slot {s['slot']}: " if s["slot"] is not None else ""
        mult = f" x{s['multiplicity']}" if s["multiplicity"] > 1 else ""
        lines.append(f"  {where}Λ({s['generator']}){mult}  pdim {_fmt(s['pdim'])}")
    return result, lines, EXIT_OK


def _load_seq(args):
    alg = _load_quiver(args.quiver)
    return alg, parse_sequence(_read(args.sequence), alg, source=args.sequence)


def cmd_generic(args):
    alg, S = _load_seq(args)
    ok = realizable(alg, S)
    result: dict = {"realizable": ok, "dim": S.dim, "r": None, "generic_pdim": None}
    lines = [f"realizable: {'yes' if ok else 'no'}"]
    if ok:
        r = layer_decomposition(alg, S).r
        result["r"] = [list(row) for row in r.rows]
        result["generic_pdim"] = generic_pdim(alg, S)
        lines.append("r (unused layers of the projective cover):")
        lines += ["  " + " ".join(str(x) for x in row) for row in r.rows]
        lines.append(f"generic pdim = {_fmt(result['generic_pdim'])}")
    return result, lines, EXIT_OK


def cmd_spectrum(args):
    alg, S = _load_seq(args)
    try:
        rep = spectrum(alg, S)
    except NotRealizable as exc:
        raise InputError(str(exc)) from None
    result = {"generic": rep.generic, "others": list(rep.others), "values": rep.full_set}
    lines = [f"generic pdim = {_fmt(rep.generic)}", f"values on the closure: {_fmt_set(rep.full_set)}"]
    return result, lines, EXIT_OK


def cmd_spectrum_check(args):
    alg, S = _load_seq(args)
    try:
        predicted = spectrum(alg, S).full_set
        enumerated, count = spectrum_by_enumeration(alg, S, cap=args.cap)
    except NotRealizable as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    match = predicted == enumerated
    result = {"predicted": predicted, "enumerated": enumerated, "sequences": count, "match": match}
    lines = [
        f"formula:     {_fmt_set(predicted)}",
        f"enumeration: {_fmt_set(enumerated)} over {count} sequences",
        "match" if match else "MISMATCH",
    ]
    return result, lines, EXIT_OK if match else EXIT_MISMATCH


def cmd_oracle(args):
    alg = _load_quiver(args.quiver)
    mod = _load_module(alg, args.module, args.left_to_right)
    mm = from_graph(mod) if isinstance(mod, GraphModule) else from_monomial(mod)
    predicted = pdim_module(_skeleton_of(mod))
    bound = args.max_depth if args.max_depth is not None else default_bound(alg)
    trace = pdim_upto(mm, bound)
    match = trace.pdim_result.matches(predicted)
    result = {
        "formula": predicted,
        "oracle": {"value": trace.pdim_result.value, "exact": trace.pdim_result.exact},
        "bound": bound,
        "covers": [list(c) for c in trace.covers],
        "match": match,
    }
    lines = [
        f"formula: {_fmt(predicted)}",
        f"oracle:  {trace.pdim_result} (depth bound {bound})",
        "match" if match else "MISMATCH",
    ]
    return result, lines, EXIT_OK if match else EXIT_MISMATCH


def cmd_graph(args):
    alg = _load_quiver(args.quiver)
    if (args.module is None) == (args.path is None):
        raise InputError("give exactly one of a module file or --path EXPR")
    if args.path is not None:
        try:
            p = parse_path(args.path, alg, args.left_to_right)
        except QuiverError as exc:
            raise InputError(str(exc)) from None
        sk = MonomialModule.cyclic_ideal(alg, p).skeleton
        name = alg.quiver.path_str(p)
    else:
        sk = _skeleton_of(_load_module(alg, args.module, args.left_to_right))
        name = FsPath(args.module).stem
    g = layered_graph(sk, critical=not args.no_critical, name=name)
    result = {
        "nodes": [{"id": nd.id, "layer": nd.layer, "vertex": nd.label, "slot": nd.slot + 1,
                   "critical": nd.critical} for nd in g.nodes],
        "edges": [{"source": e.source, "target": e.target, "arrow": e.arrow, "dashed": e.dashed}
                  for e in g.edges],
        "dot": g.to_dot(),
    }
    if args.dot:
        lines = g.to_dot().rstrip("\n").split("\n")
    else:
        lines = []
        for layer in sorted({nd.layer for nd in g.nodes}):
            row = [nd.label + ("*" if nd.critical else "") for nd in g.nodes if nd.layer == layer]
            lines.append(f"layer {layer}: " + " ".join(row))
    return result, lines, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="truncpath", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="emit a machine-readable report")
    p.add_argument("--left-to-right", action="store_true",
                   help="read path expressions left to right (first arrow applied first)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="c, b, cyclebound set, findim and the T_i table")
    a.add_argument("quiver")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("pdim", help="projective dimension of Λp, a simple, or a module file")
    a.add_argument("kind", choices=["path", "simple", "module"])
    a.add_argument("target", help="path expression, vertex name, or module file")
    a.add_argument("quiver")
    a.set_defaults(func=cmd_pdim)

    a = sub.add_parser("syzygy", help="cyclic summands of a syzygy")
    a.add_argument("quiver")
    a.add_argument("module")
    a.add_argument("--iterate", type=int, default=1, metavar="K")
    a.set_defaults(func=cmd_syzygy)

    for name, func, hlp in (
        ("generic", cmd_generic, "realizability, r-matrix and generic pdim of a sequence"),
        ("spectrum", cmd_spectrum, "pdim values on the closure of a stratum"),
        ("spectrum-check", cmd_spectrum_check, "compare the spectrum with brute-force enumeration"),
    ):
        a = sub.add_parser(name, help=hlp)
        a.add_argument("quiver")
        a.add_argument("sequence")
        a.set_defaults(func=func)
        if name == "spectrum-check":
            a.add_argument("--cap", type=int, default=24, help="largest total dimension to enumerate")

    a = sub.add_parser("oracle", help="check pdim against an explicit minimal resolution")
    a.add_argument("quiver")
    a.add_argument("module")
    a.add_argument("--max-depth", type=int, default=None)
    a.set_defaults(func=cmd_oracle)

    a = sub.add_parser("graph", help="layered drawing of a module's skeleton")
    a.add_argument("quiver")
    a.add_argument("module", nargs="?")
    a.add_argument("--path", metavar="EXPR", help="draw the cyclic ideal generated by a path instead")
    a.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    a.add_argument("--no-critical", action="store_true", help="omit dashed critical edges")
    a.set_defaults(func=cmd_graph)
    return p


def run(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result, lines, code = args.func(args)
    except (InputError, ParseError, QuiverError, ValueError) as exc:
        if args.json:
            report = {"version": REPORT_VERSION, "command": args.command, "ok": False, "error": str(exc)}
            print(json.dumps(report, indent=2, ensure_ascii=False), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    if args.json:
        report = {
            "version": REPORT_VERSION,
            "command": args.command,
            "ok": code == EXIT_OK,
            "result": _jsonable(result),
        }
        print(json.dumps(report, indent=2, ensure_ascii=False), file=out)
    else:
        print("\n".join(lines), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
