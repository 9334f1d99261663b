"""Command-line entry point.

Exit status: 0 when nothing failed, 1 when a check found violations,
2 for usage or input/output errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import (
    ConstructionError,
    FFamilySpec,
    StarSpec,
    build_bridge_class,
    build_F_member,
    build_G1,
    build_G2,
    build_G3,
    build_G4,
    build_H,
)
from .contraction import audit_trace, basic_procedure
from .graph import GraphError
from .harness.enumeration import EnumerationError, GraphSource
from .harness.graph6 import Graph6Error, decode, encode, read_graph6, write_graph6
from .harness.oracles import classical_suite
from .harness.report import emit_report, trace_json
from .harness.sweeps import (
    STABILITY_MODES,
    SweepError,
    verify_kopylov_sweep,
    verify_path_theorems,
    verify_stability_sweep,
)
from .recognizers import PreconditionError, Violation, classify_stability
from .structure import circumference, is_2_connected, is_3_connected, is_connected

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------
def parse_n_range(text: str) -> tuple[int, ...]:
    """``"9"``, ``"5..9"`` or ``"5-9"`` (inclusive), or a comma list."""
    try:
        if "," in text:
            return tuple(int(x) for x in text.split(","))
        for sep in ("..", "-"):
            if sep in text:
                lo, hi = text.split(sep)
                return tuple(range(int(lo), int(hi) + 1))
        return (int(text),)
    except ValueError:
        raise UsageError(f"bad n range {text!r}") from None


def parse_stars(text: str) -> list[StarSpec]:
    """Comma list of star sizes, each optionally ``size@anchor`` or ``size:i-j@anchor``."""
    out = []
    for part in filter(None, text.split(",")):
        try:
            anchor = 0
            if "@" in part:
                part, a = part.split("@")
                anchor = int(a)
            ends = (0, 1)
            if ":" in part:
                part, e = part.split(":")
                x, y = e.split("-")
                ends = (int(x), int(y))
            out.append(StarSpec(int(part), anchor, ends))
        except ValueError:
            raise UsageError(f"bad star spec {part!r}") from None
    return out


def parse_pairs(text: str, sep: str = "-") -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in p.split(sep)) for p in filter(None, text.split(","))]
    except ValueError:
        raise UsageError(f"bad pair list {text!r}") from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.family} needs --{name.replace('_', '-')}")


def _graphs_from(args) -> list:
    if args.file:
        return list(read_graph6(args.file))
    if args.graph6:
        return [decode(args.graph6)]
    raise UsageError("give a graph6 string or --file")


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------
def cmd_construct(args) -> int:
    fam = args.family
    if fam == "H":
        _need(args, "n", "k", "a")
        lc = build_H(args.n, args.k, args.a)
    elif fam == "G1":
        _need(args, "n", "k")
        lc = build_G1(args.n, args.k)
    elif fam == "G2":
        _need(args, "b_size", "j_size", "t")
        lc = build_G2(args.b_size, args.j_size, args.t, args.k)
    elif fam == "G3":
        _need(args, "b_size", "stars", "t")
        lc = build_G3(args.b_size, parse_stars(args.stars), args.t, args.k)
    elif fam == "G4":
        _need(args, "stars")
        lc = build_G4(parse_stars(args.stars))
    elif fam in ("G5", "G6", "G7", "G8"):
        lc = build_bridge_class(fam, parse_stars(args.bridges or ""), parse_pairs(args.isolated or ""),
                                args.reading)
    else:
        spec = FFamilySpec(fam, args.t or 4, tuple(parse_pairs(args.delete or "", ":")))
        lc = build_F_member(spec)
    if args.parts:
        info = {"graph6": encode(lc.graph), "family": lc.family, "n": lc.graph.n, "e": lc.graph.e,
                "parts": {k: list(v) for k, v in lc.parts.items()}}
        _write(json.dumps(info, indent=2) + "\n", args.out)
    elif args.out:
        write_graph6([lc.graph], args.out)
    else:
        print(encode(lc.graph))
    return EXIT_OK


def cmd_check(args) -> int:
    status = EXIT_OK
    for G in _graphs_from(args):
        two = is_2_connected(G)
        info = {"graph6": encode(G), "n": G.n, "e": G.e, "connected": is_connected(G), "two_connected": two,
                "three_connected": is_3_connected(G), "circumference": circumference(G)}
        if args.k is not None:
            if two and info["circumference"] < args.k and 4 <= args.k <= G.n:
                verdict = classify_stability(G, args.k, args.g6_reading, check_preconditions=False)
                info["verdict"] = verdict.verdict
                info["detail"] = getattr(verdict, "label", None) or getattr(verdict, "reason", None)
                if isinstance(verdict, Violation):
                    status = EXIT_VIOLATIONS
            else:
                info["verdict"] = "out of hypotheses"
        print(json.dumps(info))
    return status


def _infer_format(args) -> str:
    if args.format:
        return args.format
    if args.out and args.out.endswith(".json"):
        return "json"
    if args.out and args.out.endswith(".csv"):
        return "csv"
    return "text"


def cmd_verify(args) -> int:
    n_values = parse_n_range(args.n_range)
    kind = {"enumeration": "enumeration", "graph6": "graph6", "random": "random", "grid": "construction-grid"}[args.source]
    source = GraphSource(kind, n_values, path=args.file, seed=args.seed, samples=args.samples,
                         density=args.density, cache_dir=args.cache_dir)
    if args.mode == "kopylov":
        report = verify_kopylov_sweep(source, args.k, args.jobs)
    elif args.mode == "paths":
        report = verify_path_theorems(source, args.k, args.jobs)
    else:
        report = verify_stability_sweep(source, args.k, args.mode, args.jobs, args.g6_reading)
    emit_report(report, _infer_format(args), args.out or sys.stdout)
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


def cmd_procedure(args) -> int:
    G = _graphs_from(args)[0]
    trace = basic_procedure(G, args.k)
    audit = audit_trace(trace, args.k, family_check=args.family_check)
    if args.trace:
        Path(args.trace).write_text(trace_json(trace, audit))
    rules = " ".join(s.rule for s in trace.steps)
    print(f"steps: {rules}; m={trace.m}; final={encode(trace.final)}; {audit.final_structure}")
    for note in trace.notes:
        print(f"note: {note}")
    for v in audit.violations:
        print(f"AUDIT: {v}")
    return EXIT_OK if audit.ok else EXIT_VIOLATIONS


def cmd_oracle(args) -> int:
    reports = classical_suite(args.n_max, args.cache_dir, args.seed)
    fmt = _infer_format(args)
    if fmt == "json":
        text = "[\n" + ",\n".join(emit_report(r, "json").rstrip() for r in reports) + "\n]\n"
    else:
        text = "".join(emit_report(r, fmt) for r in reports)
    _write(text, args.out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATIONS


# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclestab", description="Long-cycle stability toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an extremal or family graph and print graph6")
    c.add_argument("family", choices=["H", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8",
                                      "F0", "F1", "F2", "F3", "F4", "F4'"])
    for flag in ("--n", "--k", "--a", "--t", "--b-size", "--j-size"):
        c.add_argument(flag, type=int)
    c.add_argument("--stars", help="star sizes, e.g. 3,3@1,2")
    c.add_argument("--bridges", help="J3-bridges as size:i-j@anchor, e.g. 3:0-1,2:0-2")
    c.add_argument("--isolated", help="A-neighbour pairs of isolated vertices, e.g. 0-2,2-3")
    c.add_argument("--reading", choices=["every", "some"], default="every")
    c.add_argument("--delete", help="A:B index pairs removed from the bipartite base, e.g. 0:0")
    c.add_argument("--parts", action="store_true", help="print JSON with the vertex parts")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    for name, func, helptext in (("check", cmd_check, "inspect graphs"),
                                 ("procedure", cmd_procedure, "run and audit the contraction procedure")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("graph6", nargs="?")
        q.add_argument("--file")
        q.add_argument("--k", type=int, required=name == "procedure")
        q.set_defaults(func=func)
        if name == "check":
            q.add_argument("--g6-reading", choices=["some", "every"], default="some")
        else:
            q.add_argument("--trace", help="write the trace and audit as JSON")
            q.add_argument("--family-check", action="store_true")

    v = sub.add_parser("verify", help="sweep a theorem over a graph source")
    v.add_argument("--mode", required=True, choices=list(STABILITY_MODES) + ["kopylov", "paths"])
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--n-range", required=True)
    v.add_argument("--source", choices=["enumeration", "graph6", "random", "grid"], default="enumeration")
    v.add_argument("--file")
    v.add_argument("--samples", type=int, default=0)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--density", type=float, default=0.5)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--cache-dir")
    v.add_argument("--g6-reading", choices=["some", "every"], default="some")
    v.add_argument("--out")
    v.add_argument("--format", choices=["json", "csv", "text"])
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="run the classical theorem suite")
    o.add_argument("--n-max", type=int, default=8)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--cache-dir")
    o.add_argument("--out")
    o.add_argument("--format", choices=["json", "csv", "text"])
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConstructionError, PreconditionError, SweepError, EnumerationError,
            Graph6Error, GraphError, OSError) as exc:
        print(f"cyclestab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
