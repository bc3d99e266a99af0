"""Command-line interface: ``rgc <command> ...``.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import complex as cx
from .derivations import Derivation, es_trace, is_symplectic
from .formats import format_graph, graph_to_json, parse_graph
from .necklace import Necklace, rho_eval
from .ribbon import InvalidGraph
from .verify import SUITES, dumps, run_suite


class UsageError(Exception):
    pass


def _edge_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"bad edge range {text!r}")
    return a, b


def _pair(text: str) -> tuple[int, int]:
    try:
        v, e = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected V,E, got {text!r}") from None
    return v, e


def _parity(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError("d must be 0 or 1")
    return int(text)


def _emit(obj, args) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _selector(args, edges: int, vertices: int | None = None) -> cx.Selector:
    if (args.genus is None) != (args.boundaries is None):
        raise UsageError("--genus and --boundaries go together")
    if vertices is None:
        vertices = args.vertices
    try:
        return cx.Selector(edges, vertices, args.genus, args.boundaries)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_enumerate(args) -> int:
    sel = _selector(args, args.edges)
    basis = cx.enumerate_basis(sel, args.d, include_zero=args.include_zero, jobs=args.jobs)
    if args.format == "text":
        _emit("".join(format_graph(G) + "\n" for G in basis.graphs), args)
    else:
        _emit({"d": args.d, "selector": sel.key(), "count": len(basis),
               "graphs": [graph_to_json(G) for G in basis.graphs]}, args)
    return 0


def cmd_diff(args) -> int:
    V, E = args.source
    src = cx.enumerate_basis(_selector(args, E, V), args.d, jobs=args.jobs)
    dst = cx.enumerate_basis(src.selector.next(), args.d, jobs=args.jobs)
    M = cx.differential_matrix(src, dst, full=args.with_empty_arcs, jobs=args.jobs)
    out = M.to_json()
    out["rank"] = cx.rank(M)
    _emit(out, args)
    return 0


def cmd_cohomology(args) -> int:
    sector = None
    if args.genus is not None or args.boundaries is not None:
        if args.genus is None or args.boundaries is None:
            raise UsageError("--genus and --boundaries go together")
        sector = (args.genus, args.boundaries)
    if args.grading == "vertex":
        degree = args.degree if args.degree is not None else args.vertices
        if degree is None:
            raise UsageError("the vertex grading needs --degree or --vertices")
        if args.vertices is not None and args.vertices != degree:
            raise UsageError("--vertices and --degree disagree in the vertex grading")
    else:
        if sector is None:
            raise UsageError("the degree grading needs --genus and --boundaries")
        if args.degree is None:
            raise UsageError("--degree is required")
        degree = args.degree
    reports = cx.cohomology(
        args.d, degree, grading=args.grading, sector=sector, edges=args.edges,
        allow_truncation=args.allow_truncation, full=args.with_empty_arcs, jobs=args.jobs,
    )
    _emit({"reports": [r.to_json() for r in reports]}, args)
    return 0


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: bad JSON: {exc}") from None


def cmd_eval(args) -> int:
    try:
        text = Path(args.graph).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    G = parse_graph(text)
    raw = _read_json(args.inputs)
    if isinstance(raw, dict):
        raw = raw.get("inputs", [raw])
    inputs = [Necklace.from_json(x) for x in raw]
    _emit({"graph": format_graph(G), "result": rho_eval(G, inputs).to_json()}, args)
    return 0


def cmd_trace(args) -> int:
    D = Derivation.from_json(_read_json(args.input))
    _emit({"degree": D.degree, "symplectic": is_symplectic(D), "trace": es_trace(D).to_json()}, args)
    return 0


def cmd_verify(args) -> int:
    only = set(args.check) if args.check else None
    report = run_suite(args.suite, jobs=args.jobs, full=args.with_empty_arcs, timings=args.timings, only=only)
    _emit(dumps(report), args)
    for c in report["checks"]:
        print(f"{c['id']:>4} {c['status'].upper():4} {c['title']}", file=sys.stderr)
    return 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rgc", description="Ribbon graph complexes and necklace operations.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, parity=True):
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (results do not depend on it)")
        sp.add_argument("--output", "-o", help="write to a file instead of stdout")
        if parity:
            sp.add_argument("--d", type=_parity, required=True, help="parity of the complex")
            sp.add_argument("--with-empty-arcs", action="store_true",
                            help="also split off univalent vertices in the differential")

    sp = sub.add_parser("enumerate", help="list a graded basis")
    common(sp)
    sp.add_argument("--vertices", type=int)
    sp.add_argument("--edges", type=int, required=True)
    sp.add_argument("--genus", type=int)
    sp.add_argument("--boundaries", type=int)
    sp.add_argument("--include-zero", action="store_true", help="keep classes with odd automorphisms")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("diff", help="matrix of the differential out of one piece")
    common(sp)
    sp.add_argument("--from", dest="source", type=_pair, required=True, metavar="V,E")
    sp.add_argument("--genus", type=int)
    sp.add_argument("--boundaries", type=int)
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("cohomology", help="cohomology dimensions")
    common(sp)
    sp.add_argument("--vertices", type=int)
    sp.add_argument("--genus", type=int)
    sp.add_argument("--boundaries", type=int)
    sp.add_argument("--edges", type=_edge_range, required=True, metavar="LO..HI")
    sp.add_argument("--grading", choices=("vertex", "degree"), default="vertex")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--allow-truncation", action="store_true")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("eval", help="state-sum operation of a graph on necklaces")
    common(sp, parity=False)
    sp.add_argument("--graph", required=True, help="file with one graph (rg text or JSON)")
    sp.add_argument("--inputs", required=True, help="JSON list of necklaces, one per vertex")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("trace", help="trace of a derivation")
    common(sp, parity=False)
    sp.add_argument("--input", required=True, help="derivation JSON")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, parity=False)
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("--check", action="append", help="run only this check ID (repeatable)")
    sp.add_argument("--with-empty-arcs", action="store_true")
    sp.add_argument("--timings", action="store_true", help="add per-check seconds (not byte-stable)")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (UsageError, InvalidGraph, cx.TruncationError, ValueError, KeyError) as exc:
        code = getattr(exc, "code", None)
        prefix = f"error [{code}]" if isinstance(code, str) else "error"
        print(f"rgc: {prefix}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
