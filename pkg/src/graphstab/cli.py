"""Command-line front end: ``graphstab analyze | gadget | reduce | formula | verify``.

Exit codes: 0 success, 1 a violated law, failed ``--verify`` or failed
``--expect``, 2 usage or input errors, 3 a solver ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import cnf, gadgets, reductions
from .budget import BudgetExceeded
from .cnf import CnfError, CnfFormula
from .gadgets import ConstructionResult
from .graph import DimacsError, Graph, GraphError, parse_dimacs, to_dimacs
from .solvers import GraphNumber, chromatic_number, graph_number, is_k_colorable, vertex_cover_number
from .stability import VERDICTS, analyze, decide

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _read_graph(path: str) -> Graph:
    try:
        return parse_dimacs(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except DimacsError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _read_cnf(path: str) -> CnfFormula:
    try:
        return cnf.parse_dimacs_cnf(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except CnfError as exc:
        raise UsageError(f"{path}: {exc}") from None


def parse_edges(spec: str | None, g: Graph) -> list[tuple[int, int]] | None:
    """Edge selector: ``a-b,c-d`` with DIMACS (1-based) vertex numbers, ``all``, or ``@file``.

    Returns 0-based pairs, or None for ``all`` / no selector.
    """
    if spec is None or spec == "all":
        return None
    if spec.startswith("@"):
        try:
            spec = Path(spec[1:]).read_text().replace("\n", ",")
        except OSError as exc:
            raise UsageError(f"cannot read edge list {spec[1:]}: {exc.strerror}") from None
    out = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        a, sep, b = item.partition("-")
        if not sep or not a.isdigit() or not b.isdigit():
            raise UsageError(f"bad edge selector {item!r}; expected a-b")
        u, v = int(a) - 1, int(b) - 1
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise UsageError(f"{item} is not an edge of the input graph")
        out.append((u, v))
    if not out:
        raise UsageError("empty edge selector")
    return out


def _write_construction(result: ConstructionResult, out: str, comments: Sequence[str] = ()) -> None:
    path = Path(out)
    path.write_text(to_dimacs(result.graph, comments))
    path.with_name(path.name + ".provenance.json").write_text(_dump(result.provenance_json()) + "\n")


def _write_graph(g: Graph, out: str, comments: Sequence[str] = (), construction: str | None = None,
                 inputs: Sequence[str] = ()) -> None:
    path = Path(out)
    path.write_text(to_dimacs(g, comments))
    if construction is not None:
        # Plain-graph outputs carry their roles in vertex labels; the sidecar records those.
        sidecar = {
            "construction": construction,
            "inputs": list(inputs),
            "labels": {str(v): g.label(v) for v in g.vertices if g.label(v) is not None},
        }
        path.with_name(path.name + ".provenance.json").write_text(_dump(sidecar) + "\n")


# analyze


def _cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    report = analyze(g, args.xi, k=args.k, time_budget=args.time_budget, node_budget=args.node_budget)
    if args.json:
        print(report.dumps())
    else:
        print(f"{report.graph_number.value} = {report.value} on {g.n} vertices, {g.m} edges")
        for name, value in report.verdicts.items():
            print(f"  {name}: {str(value).lower()}")
        for s in report.elements():
            print(f"  {s.element}: {s.status} ({s.delta:+d})")
    if args.expect is not None:
        name = args.expect
        if args.k is not None and f"k-{name}" in report.verdicts:
            name = f"k-{name}"
        if name not in report.verdicts:
            raise UsageError(f"unknown verdict {args.expect!r}")
        if not report.verdicts[name]:
            print(f"expected {name}, got not {name}", file=sys.stderr)
            return EXIT_VIOLATION
    return EXIT_OK


# gadget

_GADGETS: dict[str, tuple[str, Callable]] = {
    "chi-stabilize": ("chi", lambda g, s: gadgets.chi_stabilize_edges(g, g.edge_list() if s is None else s)),
    "beta-stabilize": ("beta", lambda g, s: gadgets.beta_stabilize_edges(g, s)),
    "two-way": ("beta", lambda g, s: gadgets.two_way_gadget_all(g, s)),
}
_JOINS = {
    "join-and": lambda gs, flavor: gadgets.join_and(gs, flavor),
    "stabilized-join-and": lambda gs, flavor: gadgets.stabilized_join_and(gs),
}


def _cmd_gadget(args) -> int:
    graphs = [_read_graph(p) for p in args.graphs]
    if args.name in _JOINS:
        if args.edges is not None:
            raise UsageError(f"{args.name} takes no edge selector")
        result = _JOINS[args.name](graphs, args.flavor)
        xi = "chi"
    else:
        if len(graphs) != 1:
            raise UsageError(f"{args.name} takes exactly one graph")
        xi, build = _GADGETS[args.name]
        try:
            result = build(graphs[0], parse_edges(args.edges, graphs[0]))
        except GraphError as exc:
            raise UsageError(str(exc)) from None
    value = graph_number(result.graph, xi).value
    _write_construction(result, args.out, [f"{result.notes}, {xi} = {value}"])
    summary = {
        "construction": result.notes,
        "vertices": result.graph.n,
        "edges": result.graph.m,
        "xi": xi,
        "value": value,
        "value_shift": result.value_shift,
        "out": args.out,
    }
    print(_dump(summary) if args.json else f"{result.notes}: {result.graph.n} vertices, {result.graph.m} edges, {xi} = {value}")
    return EXIT_OK


# reduce


def _beta(g: Graph) -> int:
    return vertex_cover_number(g).value


def _chi(g: Graph) -> int:
    return chromatic_number(g).value


def _formula_stable(phi: CnfFormula) -> bool:
    return cnf.formula_stability(phi).stable


# name -> (input kind, arity or None for variadic, builder, verifier returning (expected, observed))
_PIPELINES: dict[str, tuple[str, int | None, Callable, Callable]] = {
    "stable3cnf-to-vertex-stability": (
        "cnf", 1,
        lambda xs: reductions.stable3cnf_to_vertex_stability(xs[0]),
        lambda xs, out: (_formula_stable(xs[0]), decide(out, "chi", "vertex-stable")),
    ),
    "cai-meyer": (
        "cnf", 1,
        lambda xs: reductions.cai_meyer_graph(xs[0]).graph,
        lambda xs, out: (cnf.is_satisfiable(xs[0]), is_k_colorable(out, 3)),
    ),
    "gjs-3col": (
        "cnf", 1,
        lambda xs: reductions.gjs_3col(xs[0]),
        lambda xs, out: (cnf.is_satisfiable(xs[0]), is_k_colorable(out, 3)),
    ),
    "vstab-to-stab": (
        "graph", 1,
        lambda xs: reductions.vstab_to_stab(xs[0]),
        lambda xs, out: (decide(xs[0], "chi", "vertex-stable"), decide(out, "chi", "stable")),
    ),
    "union-double": (
        "graph", 1,
        lambda xs: reductions.union_double(xs[0]),
        lambda xs, out: (decide(xs[0], "chi", "unfrozen"), decide(out, "chi", "two-way-stable")),
    ),
    "compare-vc-to-beta-stability": (
        "graph", 2,
        lambda xs: reductions.compare_vc_to_beta_stability(xs[0], xs[1]),
        lambda xs, out: (_beta(xs[0]) > _beta(xs[1]), decide(out, "beta", "stable")),
    ),
    "compare-vc-to-beta-unfrozenness": (
        "graph", 2,
        lambda xs: reductions.compare_vc_to_beta_unfrozenness(xs[0], xs[1]),
        lambda xs, out: (_beta(xs[0]) <= _beta(xs[1]), decide(out, "beta", "unfrozen")),
    ),
    "beta-unfrozen-to-twoway": (
        "graph", 1,
        lambda xs: reductions.beta_unfrozen_to_beta_twoway(xs[0]),
        lambda xs, out: (decide(xs[0], "beta", "unfrozen"), decide(out, "beta", "two-way-stable")),
    ),
    "conditional-unfrozenness": (
        "graph", 2,
        lambda xs: reductions.conditional_unfrozenness_reduction(xs[0], xs[1], reductions.exact_unfreezer()),
        lambda xs, out: (_chi(xs[0]) <= _chi(xs[1]), decide(out, "chi", "unfrozen")),
    ),
}


def _pair_paths(out: str) -> tuple[str, str]:
    p = Path(out)
    return str(p.with_name(f"{p.stem}.G{p.suffix}")), str(p.with_name(f"{p.stem}.H{p.suffix}"))


def _cmd_reduce(args) -> int:
    if args.pipeline == "compare-colorability":
        if len(args.inputs) % 2 or not args.inputs:
            raise UsageError("compare-colorability takes 2k formulas: k for the first list, then k for the second")
        formulas = [_read_cnf(p) for p in args.inputs]
        k = len(formulas) // 2
        try:
            g, h = reductions.compare_colorability_instance(formulas[:k], formulas[k:])
        except CnfError as exc:
            raise UsageError(str(exc)) from None
        g_path, h_path = _pair_paths(args.out)
        _write_graph(g, g_path, ["compare colourability, first graph"], args.pipeline, args.inputs)
        _write_graph(h, h_path, ["compare colourability, second graph"], args.pipeline, args.inputs)
        summary = {"pipeline": args.pipeline, "out": [g_path, h_path], "vertices": [g.n, h.n]}
        if args.verify:
            sat = [cnf.is_satisfiable(f) for f in formulas]
            expected = sum(sat[:k]) <= sum(sat[k:])
            observed = _chi(g) <= _chi(h)
            summary.update(expected=expected, observed=observed, verified=expected == observed)
        return _finish_reduce(args, summary)
    kind, arity, build, verify = _PIPELINES[args.pipeline]
    if arity is not None and len(args.inputs) != arity:
        raise UsageError(f"{args.pipeline} takes {arity} input file(s), got {len(args.inputs)}")
    inputs = [(_read_cnf if kind == "cnf" else _read_graph)(p) for p in args.inputs]
    try:
        built = build(inputs)
    except (CnfError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    graph = built.graph if isinstance(built, ConstructionResult) else built
    if isinstance(built, ConstructionResult):
        _write_construction(built, args.out, [args.pipeline])
    else:
        _write_graph(graph, args.out, [args.pipeline], args.pipeline, args.inputs)
    summary = {"pipeline": args.pipeline, "out": args.out, "vertices": graph.n, "edges": graph.m}
    if args.verify:
        expected, observed = verify(inputs, graph)
        summary.update(expected=expected, observed=observed, verified=expected == observed)
    return _finish_reduce(args, summary)


def _finish_reduce(args, summary: dict) -> int:
    if args.json:
        print(_dump(summary))
    else:
        line = f"{summary['pipeline']}: wrote {summary['out']}"
        if "verified" in summary:
            line += f"; expected {summary['expected']}, observed {summary['observed']}"
        print(line)
    if args.verify and not summary["verified"]:
        print("biconditional violated", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


# formula

_CONSTRUCTIONS = {
    "to-exact-3cnf": lambda fs: cnf.to_exact_3cnf(fs[0]),
    "unsat-padding": lambda fs: cnf.unsat_padding(fs[0]),
    "sat-to-stable": lambda fs: cnf.sat_to_stable_cnf(fs[0]),
    "or2": lambda fs: cnf.or2_combine(fs[0], fs[1]),
}


def _cmd_formula(args) -> int:
    formulas = [_read_cnf(p) for p in args.cnf]
    need = 2 if args.construction == "or2" else 1
    if len(formulas) != need:
        raise UsageError(f"{args.construction} takes {need} formula file(s)")
    phi = formulas[0]
    if args.construction == "solve":
        data = {"satisfiable": cnf.is_satisfiable(phi)}
    elif args.construction == "stability":
        res = cnf.formula_stability(phi)
        data = {
            "satisfiable": res.satisfiable,
            "stable": res.stable,
            "minimally_unsatisfiable": res.minimally_unsatisfiable,
            "per_clause": [{"clause": i, "satisfiable_without": s} for i, s in res.per_clause],
        }
    else:
        try:
            out = _CONSTRUCTIONS[args.construction](formulas)
        except CnfError as exc:
            raise UsageError(str(exc)) from None
        text = cnf.to_dimacs_cnf(out, [args.construction])
        if args.out:
            Path(args.out).write_text(text)
            data = {"construction": args.construction, "num_vars": out.num_vars, "clauses": out.m, "out": args.out}
        else:
            sys.stdout.write(text)
            return EXIT_OK
    if args.json:
        print(_dump(data))
    else:
        for key, value in data.items():
            if key != "per_clause":
                print(f"{key}: {value}")
    return EXIT_OK


# verify


def _cmd_verify(args) -> int:
    from .verify.laws import LAWS, run_law

    if args.list:
        for law in LAWS.values():
            print(f"{law.id}: {law.claim}")
        return EXIT_OK
    target = args.law or "all"
    ids = list(LAWS) if target == "all" else [target]
    if target != "all" and target not in LAWS:
        raise UsageError(f"unknown law {target!r}; try --list")
    overrides = {"seed": args.seed, "max_n": args.max_n, "samples": args.samples}
    reports = []
    for law_id in ids:
        r = run_law(law_id, overrides)
        reports.append(r)
        if not args.json:
            status = "pass" if r.passed else "FAIL"
            print(f"{status} {law_id}: {r.instances} instances, {r.violation_count} violations, {r.elapsed:.1f}s")
            for v in r.violations[:3]:
                print(f"    #{v['index']}: {v['detail']}")
    if args.json:
        print(_dump({"laws": [r.to_json() for r in reports], "passed": all(r.passed for r in reports)}))
    if all(r.passed for r in reports):
        return EXIT_OK
    if all(v.get("budget") for r in reports for v in r.violations) and any(r.budget_exceeded for r in reports):
        return EXIT_BUDGET
    return EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphstab", description="Exact stability analysis for graph numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="element statuses and verdicts of a DIMACS graph")
    p.add_argument("graph")
    p.add_argument("--xi", required=True, choices=[x.value for x in GraphNumber])
    p.add_argument("--k", type=int, help="also report the k-prefixed verdicts")
    p.add_argument("--expect", choices=VERDICTS, help="exit 1 unless this verdict holds")
    p.add_argument("--json", action="store_true")
    p.add_argument("--time-budget", type=float, help="seconds per solve")
    p.add_argument("--node-budget", type=int, help="search nodes per solve")
    p.set_defaults(run=_cmd_analyze)

    p = sub.add_parser("gadget", help="apply a gadget construction")
    p.add_argument("name", choices=[*_GADGETS, *_JOINS])
    p.add_argument("graphs", nargs="+")
    p.add_argument("--edges", help="a-b,c-d (DIMACS vertex numbers), all, or @file")
    p.add_argument("--flavor", default="vertex-stability", choices=["vertex-stability", "unfrozenness"])
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_cmd_gadget)

    p = sub.add_parser("reduce", help="run a reduction pipeline")
    p.add_argument("pipeline", choices=[*_PIPELINES, "compare-colorability"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", required=True)
    p.add_argument("--verify", action="store_true", help="check the pipeline's biconditional with exact solvers")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_cmd_reduce)

    p = sub.add_parser("formula", help="satisfiability, stability and formula constructions")
    p.add_argument("construction", choices=["solve", "stability", *_CONSTRUCTIONS])
    p.add_argument("cnf", nargs="+")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_cmd_formula)

    p = sub.add_parser("verify", help="run registered laws")
    p.add_argument("law", nargs="?", help="law id or 'all' (default)")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(run=_cmd_verify)
    return parser


def _validate(args) -> None:
    for name in ("k", "max_n", "samples", "node_budget"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
    tb = getattr(args, "time_budget", None)
    if tb is not None and tb <= 0:
        raise UsageError("--time-budget must be positive")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _validate(args)
        return args.run(args)
    except UsageError as exc:
        print(f"graphstab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"graphstab: budget exceeded while solving {exc.query}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        # budget environment variables and other malformed settings
        print(f"graphstab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
