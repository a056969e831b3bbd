"""Command-line front end: file formats, report serialization, and
subcommands wiring the other modules.

Exit codes: 0 = property holds / construction succeeded; 1 = definite
negative with a witness on standard output; 2 = usage or parse error;
3 = size cap exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .core import Digraph, underlying_graph
from .errors import (
    DiperfectError,
    LoopArc,
    NotMaximumStable,
    NotStable,
    ParseError,
    TooLarge,
    VertexOutOfRange,
)
from .oracles import (
    PathPartition,
    exists_s_path_partition,
    is_perfect,
    max_stable_sets,
)
from .forbidden import (
    ClassReport,
    Witness,
    classify,
    find_induced_anti_directed_odd_cycle,
    find_induced_blocking_odd_cycle,
    is_semicomplete,
    is_in_semicomplete,
    is_series_parallel,
    find_induced_transitive_triangle,
    lonely_arcs,
)
from . import constructive, harness

SCHEMA_PREFIX = "diperfect"
SCHEMA_VERSION = 1


# -- parsing ----------------------------------------------------------------


def _parse_edge_list(text: str) -> Digraph:
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("expected a single vertex count", line=lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[0]!r}", line=lineno)
            if n < 0:
                raise ParseError("vertex count must be non-negative", line=lineno)
            continue
        if len(fields) != 2:
            raise ParseError("expected 'u v'", line=lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"bad arc {line!r}", line=lineno)
        if u == v:
            raise LoopArc(f"loop arc {u}->{v} on line {lineno}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"arc {u}->{v} outside 0..{n - 1} on line {lineno}")
        arcs.append((u, v))
    if n is None:
        raise ParseError("empty input", line=1)
    return Digraph(n, arcs)


def _parse_digraph6(text: str) -> Digraph:
    data = text.strip()
    if not data.startswith("&"):
        raise ParseError("digraph6-like input must start with '&'", line=1, column=1)
    body = data[1:]
    if not body:
        raise ParseError("missing vertex count byte", line=1, column=2)
    n = ord(body[0]) - 63
    if n < 0 or n > 62:
        raise ParseError(f"unsupported vertex count byte {body[0]!r}", line=1, column=2)
    bits = []
    for col, ch in enumerate(body[1:], start=3):
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ParseError(f"byte {ch!r} out of range", line=1, column=col)
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    if len(bits) < n * n:
        raise ParseError("truncated adjacency bits", line=1)
    arcs = []
    for u in range(n):
        for v in range(n):
            if bits[u * n + v]:
                if u == v:
                    raise LoopArc(f"loop bit set at vertex {u}")
                arcs.append((u, v))
    return Digraph(n, arcs)


def parse_digraph(text: str, format: str | None = None) -> Digraph:
    """Parse edge_list or digraph6_like text; format None auto-detects
    from the '&' header."""
    if format is None:
        stripped = text.lstrip()
        format = "digraph6_like" if stripped.startswith("&") else "edge_list"
    if format == "edge_list":
        return _parse_edge_list(text)
    if format == "digraph6_like":
        return _parse_digraph6(text)
    raise ParseError(f"unknown format {format!r}")


# -- emission ---------------------------------------------------------------


def _emit_edge_list(D: Digraph) -> str:
    lines = [str(D.n)]
    lines += [f"{u} {v}" for u, v in D.sorted_arcs()]
    return "\n".join(lines) + "\n"


def _emit_digraph6(D: Digraph) -> str:
    n = D.n
    if n > 62:
        raise TooLarge("digraph6_like emission supports n <= 62")
    bits = [0] * (n * n)
    for u, v in D.arcs:
        bits[u * n + v] = 1
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "&" + chr(n + 63) + "".join(chars) + "\n"


def _emit_dot(D: Digraph) -> str:
    lines = ["digraph {"]
    for v in range(D.n):
        lines.append(f"  {v};")
    digons = sorted(
        (u, v) for u, v in D.arcs if u < v and (v, u) in D.arcs
    )
    for u, v in digons:
        lines.append(f"  {u} -> {v} [dir=both];")
    for u, v in sorted(lonely_arcs(D)):
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, Digraph):
        return {
            "n": value.n,
            "arcs": [list(a) for a in value.sorted_arcs()],
        }
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            k: _jsonable(v) for k, v in dataclasses.asdict(value).items()
        }
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    return value


def _schema_name(value) -> str:
    names = {
        Digraph: "digraph",
        PathPartition: "path_partition",
        Witness: "witness",
        ClassReport: "class_report",
        harness.PropertyReport: "property_report",
        harness.SurveyReport: "survey_report",
    }
    for cls, name in names.items():
        if isinstance(value, cls):
            return name
    return type(value).__name__.lower()


def emit(value, format: str = "json") -> str:
    """Serialize a digraph or report; json output is deterministic with
    sorted keys and a versioned schema tag."""
    if format == "edge_list":
        if not isinstance(value, Digraph):
            raise ValueError("edge_list format is digraph-only")
        return _emit_edge_list(value)
    if format == "digraph6_like":
        if not isinstance(value, Digraph):
            raise ValueError("digraph6_like format is digraph-only")
        return _emit_digraph6(value)
    if format == "dot":
        if not isinstance(value, Digraph):
            raise ValueError("dot format is digraph-only")
        return _emit_dot(value)
    if format == "json":
        doc = {
            "schema": f"{SCHEMA_PREFIX}/{_schema_name(value)}/v{SCHEMA_VERSION}",
            "data": _jsonable(value),
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}")


# -- builder dispatch -------------------------------------------------------


def _auto_partition(D: Digraph, S, mode: str):
    """Most specific applicable constructive builder, falling back to
    the exact oracle; the decision is recorded in the returned trace."""
    from .constructive import _is_cycle_graph

    U = underlying_graph(D)
    candidates = []
    if _is_cycle_graph(U):
        candidates.append(("cycle", lambda: (constructive.partition_cycle_digraph(D, S, mode), None)))
    if is_semicomplete(D) and find_induced_transitive_triangle(D) is None:
        candidates.append(("semicomplete", lambda: constructive.partition_semicomplete(D, S, mode)))
    if is_in_semicomplete(D):
        candidates.append(("in_semicomplete", lambda: constructive.partition_in_semicomplete(D, S, mode)))
    if D.n <= 14 and is_perfect(U)[0]:
        candidates.append(("perfect", lambda: constructive.partition_perfect(D, S, mode)))
    if is_series_parallel(U):
        candidates.append(("series_parallel", lambda: constructive.partition_series_parallel(D, S, mode)))
    if mode == "be" and len(lonely_arcs(D)) <= 3:
        candidates.append(("semi_symmetric", lambda: constructive.partition_semi_symmetric(D, S)))

    trace = constructive.BuildTrace()
    for name, run in candidates:
        try:
            pp, inner = run()
        except DiperfectError as exc:
            trace.add("builder_skipped", builder=name, reason=type(exc).__name__)
            continue
        trace.add("builder_dispatch", builder=name)
        if inner is not None:
            trace.merge(inner)
        return pp, trace

    trace.add("builder_dispatch", builder="oracle")
    pp = exists_s_path_partition(D, S, mode)
    return pp, trace


# -- subcommands ------------------------------------------------------------


def _read_digraph(path: str, format: str | None) -> Digraph:
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return parse_digraph(text, format)


def _cmd_classify(args) -> int:
    D = _read_digraph(args.file, args.format)
    sys.stdout.write(emit(classify(D), args.output))
    return 0


def _cmd_forbidden(args) -> int:
    D = _read_digraph(args.file, args.format)
    finder = (
        find_induced_anti_directed_odd_cycle
        if args.mode == "alpha"
        else find_induced_blocking_odd_cycle
    )
    witness = finder(D)
    if witness is None:
        sys.stdout.write(
            json.dumps(
                {"mode": args.mode, "witness": None}, sort_keys=True, indent=2
            )
            + "\n"
        )
        return 0
    sys.stdout.write(emit(witness, args.output))
    return 1


def _parse_vertex_set(text: str):
    try:
        return tuple(sorted({int(tok) for tok in text.split(",") if tok != ""}))
    except ValueError:
        raise ParseError(f"bad vertex set {text!r}")


def _cmd_partition(args) -> int:
    D = _read_digraph(args.file, args.format)
    S = _parse_vertex_set(args.set)
    family = max_stable_sets(D)
    if S not in family.sets:
        raise NotMaximumStable(
            f"{list(S)} is not a maximum stable set; alpha is {family.alpha}"
        )
    if args.builder == "oracle":
        pp = exists_s_path_partition(D, S, args.mode)
        trace = constructive.BuildTrace()
        trace.add("builder_dispatch", builder="oracle")
    else:
        pp, trace = _auto_partition(D, S, args.mode)
    for lemma, payload in trace.steps:
        print(f"# {lemma} " + " ".join(f"{k}={v}" for k, v in payload), file=sys.stderr)
    if pp is None:
        sys.stdout.write(
            json.dumps(
                {"exists": False, "mode": args.mode, "stable_set": list(S)},
                sort_keys=True,
                indent=2,
            )
            + "\n"
        )
        return 1
    sys.stdout.write(emit(pp, args.output))
    return 0


def _cmd_check(args) -> int:
    D = _read_digraph(args.file, args.format)
    if args.diperfect:
        report = harness.check_diperfect(D, args.property)
    else:
        report = harness.check_property(D, args.property)
    sys.stdout.write(emit(report, args.output))
    return 0 if report.holds else 1


def _cmd_survey(args) -> int:
    report = harness.survey_conjecture(
        args.n, args.mode, up_to_iso=args.up_to_iso, jobs=args.jobs
    )
    sys.stdout.write(emit(report, args.output))
    return 0 if not report.counterexamples else 1


def _cmd_validate(args) -> int:
    report = harness.validate_theorem(
        getattr(args, "class"), args.n, args.mode,
        samples=args.samples, seed=args.seed,
    )
    sys.stdout.write(emit(report, args.output))
    return 0 if not report.counterexamples else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diperfect",
        description="Path partitions, forbidden structures, and conjecture surveys for digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_file(p):
        p.add_argument("file", help="digraph file (edge_list or digraph6-like)")
        p.add_argument("--format", choices=["edge_list", "digraph6_like"], default=None)

    def add_output(p):
        p.add_argument("--output", choices=["json", "edge_list", "dot"], default="json")

    p = sub.add_parser("classify", help="class membership report")
    add_file(p)
    add_output(p)
    p.set_defaults(run=_cmd_classify)

    p = sub.add_parser("forbidden", help="search for the forbidden induced structure")
    add_file(p)
    add_output(p)
    p.add_argument("--mode", choices=["alpha", "be"], required=True)
    p.set_defaults(run=_cmd_forbidden)

    p = sub.add_parser("partition", help="build an S-path partition")
    add_file(p)
    add_output(p)
    p.add_argument("--set", required=True, help="comma-separated stable set, e.g. 0,2,4")
    p.add_argument("--mode", choices=["alpha", "be"], required=True)
    p.add_argument("--builder", choices=["auto", "oracle"], default="auto")
    p.set_defaults(run=_cmd_partition)

    p = sub.add_parser("check", help="decide the alpha-/BE-property")
    add_file(p)
    add_output(p)
    p.add_argument("--property", choices=["alpha", "be"], required=True)
    p.add_argument("--diperfect", action="store_true", help="hereditary check over induced subdigraphs")
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("survey", help="conjecture survey over all digraphs up to order n")
    add_output(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["alpha", "be"], required=True)
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("DIPERFECT_JOBS", "1")),
    )
    p.set_defaults(run=_cmd_survey)

    p = sub.add_parser("validate", help="validate a class theorem on generated members")
    add_output(p)
    p.add_argument("--class", choices=list(harness.VALID_CLASSES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["alpha", "be"], required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.run(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, LoopArc, VertexOutOfRange, NotStable, NotMaximumStable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DiperfectError as exc:
        print(f"{type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
