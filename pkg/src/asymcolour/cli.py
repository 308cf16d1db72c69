"""Command-line entry point.

Subcommands: ``colour`` runs the construction and self-audits, ``verify``
checks a colouring file for asymmetry, ``oracle`` computes exhaustive
quantities, ``bound`` prints the closed-form bounds.

Exit codes: 0 success (all checks pass), 1 invalid input or guard
violation, 2 group cap exceeded, 3 internal invariant violation (a bug
surface, not an input problem). ``verify`` uses 4 for a well-formed
colouring that is not asymmetric, so failure kinds stay distinguishable.
The ASYM_CAP environment variable overrides the default group cap; an
explicit --cap flag wins over both.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import audit, oracle
from .colouring import (
    colour_bound,
    parse_colouring,
    run,
    serialize_colouring,
    serialize_trace,
)
from .errors import (
    AsymmetricGraphError,
    GroupCapError,
    InternalInvariantError,
    SearchGuardError,
)
from .graphs import FamilySpec, eccentricity, generate_family, parse_graph
from .symmetry import DEFAULT_CAP, chain_length_bound

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAP = 2
EXIT_INVARIANT = 3
EXIT_NOT_ASYMMETRIC = 4

ORACLE_QUANTITIES = ("motion", "dnumber", "autorder", "motion-lemma", "interior-support")


@dataclass
class RunConfig:
    """Resolved configuration for the colour subcommand."""

    graph_source: str  # description of where the graph came from
    graph: object
    root: int
    horizon: int | None
    bound_mode: str
    cap: int
    out_path: str | None
    trace_path: str | None
    report_format: str


def _default_cap() -> int:
    env = os.environ.get("ASYM_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"asym: invalid ASYM_CAP value {env!r}")
    return DEFAULT_CAP


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asym", description="Symmetry-breaking colourings with exhaustive verification")
    sub = parser.add_subparsers(dest="command", required=True)

    colour = sub.add_parser("colour", help="run the construction and audit the result")
    source = colour.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="graph file in adjacency-list format")
    source.add_argument("--family", choices=FamilySpec.FAMILIES, help="built-in graph family")
    colour.add_argument("--degree", type=int, help="tree family: degree")
    colour.add_argument("--radius", type=int, help="tree family: truncation radius")
    colour.add_argument("--n", type=int, help="family size parameter")
    colour.add_argument("--m", type=int, help="complete_bipartite: left side size")
    colour.add_argument("--w", type=int, help="grid: width")
    colour.add_argument("--h", type=int, help="grid: height")
    colour.add_argument("--root", type=int, default=0)
    colour.add_argument("--horizon", type=int, default=None, help="number of spheres to colour (default: eccentricity)")
    colour.add_argument("--bound-mode", choices=("csg", "elementary"), default="csg")
    colour.add_argument("--cap", type=int, default=None, help="group element cap (default ASYM_CAP or 10^6)")
    colour.add_argument("--out", help="write the colouring here")
    colour.add_argument("--trace", help="write the construction trace here")
    colour.add_argument("--format", choices=("text", "kv"), default="text")

    verify = sub.add_parser("verify", help="check a colouring file for asymmetry")
    verify.add_argument("graph")
    verify.add_argument("colouring")
    verify.add_argument("--cap", type=int, default=None)

    orc = sub.add_parser("oracle", help="exhaustive oracle quantities")
    orc.add_argument("graph")
    orc.add_argument("quantity", choices=ORACLE_QUANTITIES)
    orc.add_argument("--root", type=int, default=0, help="root for interior-support")
    orc.add_argument("--horizon", type=int, default=None, help="truncation radius for interior-support")
    orc.add_argument("--max-colours", type=int, default=None, help="palette limit for dnumber")
    orc.add_argument("--cap", type=int, default=None)

    bound = sub.add_parser("bound", help="closed-form bounds")
    bound.add_argument("kind", choices=("colours", "chain"))
    bound.add_argument("value", type=int)
    return parser


def _load_graph_file(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text)


def _family_from_args(args) -> FamilySpec:
    return FamilySpec(
        args.family,
        degree=args.degree,
        radius=args.radius,
        n=args.n,
        m=args.m,
        w=args.w,
        h=args.h,
    )


def _emit(lines, fmt: str, text_prefix: str = "") -> None:
    for key, value in lines:
        if fmt == "kv":
            print(f"{key} {value}")
        else:
            print(f"{text_prefix}{key.replace('.', ' ')}: {value}")


def _resolve_config(args) -> RunConfig:
    cap = args.cap if args.cap is not None else _default_cap()
    if args.input:
        graph = _load_graph_file(args.input)
        source = args.input
    else:
        graph = generate_family(_family_from_args(args))
        source = graph.family_tag
    if not (0 <= args.root < graph.n):
        raise ValueError(f"root {args.root} outside 0..{graph.n - 1}")
    if args.horizon is not None and not (0 <= args.horizon <= eccentricity(graph, args.root)):
        raise ValueError(f"horizon {args.horizon} outside 0..{eccentricity(graph, args.root)}")
    return RunConfig(
        graph_source=source,
        graph=graph,
        root=args.root,
        horizon=args.horizon,
        bound_mode=args.bound_mode,
        cap=cap,
        out_path=args.out,
        trace_path=args.trace,
        report_format=args.format,
    )


def cmd_colour(args) -> int:
    try:
        config = _resolve_config(args)
    except ValueError as exc:
        print(f"asym: {exc}", file=sys.stderr)
        return EXIT_INPUT
    graph = config.graph

    try:
        colouring, trace = run(graph, config.root, config.horizon, bound_mode=config.bound_mode, cap=config.cap)
        checks = audit.audit_run(graph, trace, colouring, cap=config.cap)
        asymmetric = oracle.is_asymmetric(graph, colouring, cap=config.cap)
    except GroupCapError as exc:
        print(f"asym: group cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalInvariantError as exc:
        print(f"asym: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT

    if config.out_path:
        Path(config.out_path).write_text(serialize_colouring(colouring), encoding="utf-8")
    if config.trace_path:
        Path(config.trace_path).write_text(serialize_trace(trace), encoding="utf-8")

    budget = colour_bound(max(graph.max_degree, 1))
    used = {c for c in colouring.colours if c.kind != "far"}
    lines = [
        ("graph.source", config.graph_source),
        ("graph.vertices", graph.n),
        ("graph.max-degree", graph.max_degree),
        ("run.root", config.root),
        ("run.horizon", trace.horizon),
        ("run.bound-mode", trace.bound_mode),
        ("run.orbit-domain", trace.orbit_domain),
        ("run.cap", config.cap),
        ("colours.used", len(used)),
        ("colours.max-numeric", colouring.max_numeric()),
        ("colours.barred", len(colouring.barred_values())),
        ("bound.total-colours", f"{budget.total:g}"),
        ("bound.max-numeric", f"{budget.numeric:g}"),
        ("stabilizer.orders", " ".join(str(o) for o in trace.stabilizer_orders)),
    ]
    summary = audit.summarize(checks)
    for name in sorted(summary):
        result = summary[name]
        status = "pass" if result.passed else f"FAIL ({result.label()}: {result.detail})"
        lines.append((f"check.{name}", status))
    lines.append(("checks.all", "pass" if audit.all_passed(checks) else "fail"))
    lines.append(("oracle.asymmetric", "true" if asymmetric else "false"))
    _emit(lines, config.report_format)

    if not audit.all_passed(checks):
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_verify(args) -> int:
    cap = args.cap if args.cap is not None else _default_cap()
    try:
        graph = _load_graph_file(args.graph)
        text = Path(args.colouring).read_text(encoding="utf-8")
        colouring = parse_colouring(text)
        if len(colouring) != graph.n:
            print(f"asym: colouring covers {len(colouring)} vertices, graph has {graph.n}", file=sys.stderr)
            return EXIT_INPUT
    except (ValueError, OSError) as exc:
        print(f"asym: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        order = oracle.stabilizer_order(graph, colouring, cap=cap)
    except GroupCapError as exc:
        print(f"asym: group cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if order == 1:
        print("asymmetric: true")
        return EXIT_OK
    print("asymmetric: false")
    print(f"stabilizer-order: {order}")
    return EXIT_NOT_ASYMMETRIC


def cmd_oracle(args) -> int:
    cap = args.cap if args.cap is not None else _default_cap()
    try:
        graph = _load_graph_file(args.graph)
    except ValueError as exc:
        print(f"asym: {exc}", file=sys.stderr)
        return EXIT_INPUT

    start = time.perf_counter()
    try:
        if args.quantity == "motion":
            value = oracle.motion(graph, cap=cap)
            report = oracle.OracleReport("motion", value, oracle.automorphism_order(graph, cap=cap), time.perf_counter() - start)
        elif args.quantity == "dnumber":
            value = oracle.distinguishing_number(graph, args.max_colours, cap=cap)
            witness = oracle.distinguishing_witness(graph, value, cap=cap)
            report = oracle.OracleReport(
                "dnumber",
                value,
                graph.n,
                time.perf_counter() - start,
                details={"witness": " ".join(str(x) for x in witness)},
            )
        elif args.quantity == "autorder":
            value = oracle.automorphism_order(graph, cap=cap)
            report = oracle.OracleReport("autorder", value, value, time.perf_counter() - start)
        elif args.quantity == "motion-lemma":
            report = oracle.motion_lemma_check(graph, cap=cap)
        else:
            horizon = args.horizon if args.horizon is not None else eccentricity(graph, args.root)
            if not (0 <= args.root < graph.n):
                print(f"asym: root {args.root} outside 0..{graph.n - 1}", file=sys.stderr)
                return EXIT_INPUT
            value = oracle.interior_support_check(graph, args.root, horizon, cap=cap)
            report = oracle.OracleReport(
                "interior-support",
                "true" if value else "false",
                oracle.automorphism_order(graph, cap=cap),
                time.perf_counter() - start,
                details={"root": args.root, "radius": horizon},
            )
    except GroupCapError as exc:
        print(f"asym: group cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SearchGuardError, AsymmetricGraphError, ValueError) as exc:
        print(f"asym: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInvariantError as exc:
        print(f"asym: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT

    for line in report.kv_lines():
        print(line)
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.value < 1:
        print(f"asym: value must be positive, got {args.value}", file=sys.stderr)
        return EXIT_INPUT
    if args.kind == "chain":
        print(chain_length_bound(args.value))
    else:
        budget = colour_bound(args.value)
        print(budget.total)
        print(f"max-numeric {budget.numeric:g}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "colour": cmd_colour,
        "verify": cmd_verify,
        "oracle": cmd_oracle,
        "bound": cmd_bound,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
