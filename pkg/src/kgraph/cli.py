"""Command-line driver: ``kgraph {validate,analyze,tlambda,verify,export-dot}``.

Exit codes: 0 success, 1 unreadable or malformed KGF, 2 k-graph axiom
failure, 3 a relation or structural check failed, 4 a precondition was
not met (e.g. a cycle where an acyclic graph is required).
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import check_aperiodic, default_bound, exhaustive_sets, is_locally_convex, is_source
from .core import KGraph, MultiDegree, degrees_up_to
from .errors import CyclicGraph, KGraphError
from .kgf import KgfDocument, KgfError, document_from_graph, export_dot, format_kgf, load_kgf
from .reports import Report
from .representations import verify_isomorphism
from .tlambda import build_tlambda, structure_report

SCHEMA = 1
EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_RELATION, EXIT_PRECONDITION = range(5)


class CliFailure(Exception):
    def __init__(self, code: int, kind: str, message: str, extra=None):
        super().__init__(message)
        self.code, self.kind, self.extra = code, kind, extra or {}


def _load(path: str) -> KgfDocument:
    try:
        return load_kgf(path)
    except OSError as exc:
        raise CliFailure(EXIT_PARSE, "IOError", f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise CliFailure(EXIT_PARSE, "EncodingError", f"{path}: not UTF-8 ({exc.reason})") from None
    except KgfError as exc:
        raise CliFailure(EXIT_PARSE, type(exc).__name__, f"{path}: {exc}") from None


def _graph(doc: KgfDocument) -> KGraph:
    try:
        return doc.to_kgraph()
    except KGraphError as exc:
        raise CliFailure(EXIT_INVALID, type(exc).__name__, str(exc)) from None


def _bound(text, k: int, flag: str):
    if text is None:
        return None
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise CliFailure(EXIT_PRECONDITION, "BadBound", f"{flag} expects comma-separated integers") from None
    if len(parts) == 1:
        parts *= k
    if len(parts) != k or min(parts) < 0:
        raise CliFailure(EXIT_PRECONDITION, "BadBound", f"{flag} needs {k} non-negative integers")
    return MultiDegree(parts)


def cmd_validate(args) -> tuple[Report, int]:
    doc = _load(args.file)
    rep = Report(f"k-graph axioms: {doc.name}")
    sk = doc.skeleton
    rep.data.update(k=sk.k, vertices=len(sk.vertices), edges=len(sk.edges), squares=len(doc.squares))
    try:
        g = doc.to_kgraph()
    except KGraphError as exc:
        rep.add("k-graph axioms", False, f"{type(exc).__name__}: {exc}")
        return rep, EXIT_INVALID
    rep.add("k-graph axioms", True, "endpoints, square completeness, cube condition")
    cycle = g.find_cycle()
    rep.data["acyclic"] = cycle is None
    rep.data["cycle"] = cycle
    bound = MultiDegree.constant(g.k, 2)
    bad = []
    for p in g.all_paths_up_to(bound):
        for n in degrees_up_to(p.degree):
            head, tail = g.factorize(p, n)
            if g.compose(head, tail) != p:
                bad.append((str(p), tuple(n)))
    rep.add("factorisation round trip", not bad, f"all paths up to {tuple(bound)}", bad[:5] or None)
    return rep, EXIT_OK if rep.ok else EXIT_RELATION


def cmd_analyze(args) -> tuple[Report, int]:
    g = _graph(_load(args.file))
    k = g.k
    pair_bound = _bound(args.pair_bound, k, "--pair-bound") or MultiDegree.constant(k, 2)
    witness_bound = _bound(args.witness_bound, k, "--witness-bound") or MultiDegree.constant(k, 2)
    search = default_bound(g)
    rep = Report("analysis")
    rep.data["search_bound"] = list(search)
    sources, exhaustive = {}, {}
    for v in sorted(g.vertices):
        verdict = is_source(g, v, search)
        sources[v] = str(verdict)
        exhaustive[v] = [sorted(E) for E in exhaustive_sets(g, v, search)]
    rep.data["sources"] = sources
    rep.data["exhaustive_sets"] = exhaustive
    convex, violation = is_locally_convex(g)
    rep.data["locally_convex"] = convex
    rep.data["convexity_violation"] = list(violation) if violation else None
    ap = check_aperiodic(g, pair_bound, witness_bound)
    rep.data["aperiodicity"] = ap.to_dict()
    rep.note("sources", ", ".join(f"{v}: {s}" for v, s in sources.items()))
    rep.note("local convexity", "locally convex" if convex else f"violated by {violation}")
    rep.note("aperiodicity",
             f"{ap.pairs_checked} pairs up to {tuple(pair_bound)}, witnesses up to {tuple(witness_bound)}, "
             f"{len(ap.failures)} without witness")
    return rep, EXIT_OK


def cmd_tlambda(args) -> tuple[Report, int]:
    doc = _load(args.file)
    g = _graph(doc)
    t = build_tlambda(g)
    text = format_kgf(document_from_graph(t.t_graph, f"T-{doc.name}"))
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    rep = structure_report(t, _bound(args.pair_bound, g.k, "--pair-bound"))
    rep.data["output"] = args.output
    return rep, EXIT_OK if rep.ok else EXIT_RELATION


def cmd_verify(args) -> tuple[Report, int]:
    g = _graph(_load(args.file))
    try:
        rep = verify_isomorphism(g, _bound(args.pair_bound, g.k, "--pair-bound"))
    except CyclicGraph as exc:
        raise CliFailure(EXIT_PRECONDITION, "CyclicGraph", str(exc), {"cycle": exc.cycle}) from None
    return rep, EXIT_OK if rep.ok else EXIT_RELATION


def cmd_export_dot(args) -> tuple[Report, int]:
    doc = _load(args.file)
    g = _graph(doc)
    dot = export_dot(g, doc.name)
    rep = Report("export-dot")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dot)
        rep.data["output"] = args.output
    else:
        rep.data["dot"] = dot
    return rep, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="KGF input file")
        p.add_argument("--json", action="store_true", help="emit a machine-readable report")
        p.set_defaults(func=func)
        return p

    command("validate", cmd_validate, "check the k-graph axioms")
    p = command("analyze", cmd_analyze, "sources, exhaustive sets, local convexity, aperiodicity")
    p.add_argument("--pair-bound", help="d1,..,dk (default 2 per colour)")
    p.add_argument("--witness-bound", help="d1,..,dk (default 2 per colour)")
    p = command("tlambda", cmd_tlambda, "write the Toeplitz k-graph and its structure report")
    p.add_argument("-o", "--output", required=True, help="output KGF file")
    p.add_argument("--pair-bound", help="aperiodicity pair bound (default 2 per colour)")
    p = command("verify", cmd_verify, "verify the Toeplitz / Cuntz-Krieger correspondence (acyclic input)")
    p.add_argument("--pair-bound", help="TCK3 pair bound (default: every path)")
    p = command("export-dot", cmd_export_dot, "Graphviz drawing with one colour per degree")
    p.add_argument("-o", "--output", help="output DOT file (default: stdout)")
    return parser


def _emit(payload: dict, as_json: bool, text: str, stream):
    if as_json:
        stream.write(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write(text + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep, code = args.func(args)
    except CliFailure as exc:
        payload = {"command": args.command, "file": args.file, "exit_code": exc.code,
                   "error": {"kind": exc.kind, "message": str(exc), **exc.extra}}
        _emit(payload, args.json, f"error ({exc.kind}): {exc}", sys.stderr if not args.json else sys.stdout)
        return exc.code
    if args.command == "export-dot" and not args.json and "dot" in rep.data:
        sys.stdout.write(rep.data["dot"])
        return code
    payload = {"command": args.command, "file": args.file, "exit_code": code, "report": rep.to_dict()}
    _emit(payload, args.json, rep.render(), sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
