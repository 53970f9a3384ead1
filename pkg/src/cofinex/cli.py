"""Command line front end.

Exit codes: 0 for success or a true answer, 1 for a false answer or a
failing suite, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import sys

from . import carrier as ca
from . import cofinite as cf
from . import completion as cp
from . import fixtures as fx
from . import groupoid as gp
from . import jsonio as js
from . import partition as pt
from . import verify as vf
from .completion import InverseSystem
from .errors import CofinexError
from .partition import LawTag


def _law(value: str) -> LawTag:
    try:
        return LawTag(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown law {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cofinex",
        description="Finite-scale constructions for cofinite directed graphs, Serre graphs, and groupoids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("validate", help="check a structure file against its kind's axioms")
    p.add_argument("structure")
    add_format(p)

    p = sub.add_parser("close", help="smallest relation containing the seed pairs under a law")
    p.add_argument("structure")
    p.add_argument("--law", type=_law, default=LawTag.COMPATIBLE)
    p.add_argument("--pairs", required=True, help="JSON file with a list of [x, y] pairs")
    add_format(p)

    p = sub.add_parser("quotient", help="quotient a structure by a relation")
    p.add_argument("structure")
    p.add_argument("relation")
    p.add_argument("--law", type=_law, default=LawTag.COMPATIBLE)
    add_format(p)

    p = sub.add_parser("hausdorff", help="meet-of-members test for a filter base file")
    p.add_argument("filterbase")
    add_format(p)

    p = sub.add_parser("separate", help="finite-index relation isolating one element")
    p.add_argument("structure")
    p.add_argument("--at", required=True, dest="element")
    add_format(p)

    p = sub.add_parser("complete", help="inverse-system reports: ends, census, quotient-check")
    p.add_argument("--system", required=True, help="zline-circles, zline-arcs, or a system JSON file")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--report", choices=("ends", "census", "quotient-check"), default="ends")
    add_format(p)

    p = sub.add_parser("rigid", help="rigid congruence spread from a normal subgroup at a vertex")
    p.add_argument("groupoid")
    p.add_argument("--normal", required=True, help="JSON file with a list of element ids")
    p.add_argument("--at", required=True, dest="vertex")
    add_format(p)

    p = sub.add_parser("gen", help="emit a built-in fixture as canonical JSON")
    p.add_argument("fixture")
    p.add_argument("params", nargs="*")

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", choices=vf.SUITES, default="all")
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--seed", type=int, default=42)
    return parser


def _emit_partition(r, fmt: str, extra: dict | None = None) -> None:
    if fmt == "json":
        doc = js.partition_doc(r)
        doc["index"] = r.index
        if extra:
            doc.update(extra)
        sys.stdout.write(js.dumps(doc))
        return
    print(f"index: {r.index}")
    for cls in r.classes:
        print("  {" + ", ".join(cls) + "}")
    for key, value in (extra or {}).items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        print(f"{key}: {value}")


def _resolve_system(spec: str, depth: int) -> InverseSystem:
    if spec == "zline-circles":
        return fx.zline_circles(depth)
    if spec == "zline-arcs":
        return fx.zline_arcs(depth)
    return js.load_system(spec)


def _cmd_validate(args) -> int:
    structure = js.load_structure(args.structure)
    report = ca.validate(structure)
    if args.format == "json":
        doc = {"ok": report.ok, "violations": [[v.code, list(v.witness)] for v in report.violations]}
        sys.stdout.write(js.dumps(doc))
    else:
        print("ok" if report.ok else "invalid")
        for v in report.violations:
            print(f"  {v.code} at ({', '.join(map(str, v.witness))})")
    return 0 if report.ok else 1


def _cmd_close(args) -> int:
    structure = js.load_structure(args.structure)
    pairs = js.load_json(args.pairs)
    seed = [(str(x), str(y)) for x, y in pairs]
    result = pt.close(args.law, structure, seed)
    _emit_partition(result.partition, args.format, {"valid": result.valid})
    return 0 if result.valid else 1


def _cmd_quotient(args) -> int:
    structure = js.load_structure(args.structure)
    relation = js.load_partition(args.relation, structure)
    q = pt.quotient(structure, relation, args.law)
    if args.format == "json":
        doc = {"quotient": js.structure_doc(q.structure), "nu": dict(sorted(q.nu.table.items()))}
        sys.stdout.write(js.dumps(doc))
    else:
        print(f"quotient: {len(q.structure.elements)} elements, {len(q.structure.vertices)} vertices")
        for x in structure.elements:
            print(f"  {x} -> {q.nu.table[x]}")
    return 0


def _cmd_hausdorff(args) -> int:
    base = js.load_filterbase(args.filterbase)
    answer = cf.is_hausdorff(base)
    if args.format == "json":
        sys.stdout.write(js.dumps({"hausdorff": answer}))
    else:
        print("true" if answer else "false")
    return 0 if answer else 1


def _cmd_separate(args) -> int:
    structure = js.load_structure(args.structure)
    r = cf.separating_congruence(structure, args.element)
    _emit_partition(r, args.format)
    return 0


def _cmd_complete(args) -> int:
    system = _resolve_system(args.system, args.depth)
    if args.report == "ends":
        report = cp.count_new_points(system, args.depth)
        if args.format == "json":
            doc = {
                "status": report.status,
                "count": report.count,
                "labels": list(report.labels),
                "per_level": list(report.per_level),
                "stabilization": report.stabilization,
            }
            sys.stdout.write(js.dumps(doc))
        else:
            print(report.status)
            print("per-level: " + ",".join(str(c) for c in report.per_level))
            print(f"stabilization: {report.stabilization}")
        return 0 if report.exact else 1
    if args.report == "census":
        rows = []
        for n in report_labels(system, args.depth):
            census = cp.fiber_census(system, n, cp.default_window(args.depth))
            rows.append(
                {
                    "level": n,
                    "classes": len(census.entries),
                    "unbounded": sorted(census.unbounded_classes()),
                }
            )
        if args.format == "json":
            sys.stdout.write(js.dumps({"census": rows}))
        else:
            for row in rows:
                print(f"level {row['level']}: {row['classes']} classes, unbounded {row['unbounded']}")
        return 0
    rows = []
    ok = True
    for n in report_labels(system, args.depth):
        rep = cp.discrete_quotient_report(system, n, args.depth)
        ok = ok and rep.passed
        rows.append(rep)
    if args.format == "json":
        doc = {
            "levels": [
                {
                    "level": r.label,
                    "extended_classes": r.extended_classes,
                    "level_size": r.level_size,
                    "passed": r.passed,
                }
                for r in rows
            ]
        }
        sys.stdout.write(js.dumps(doc))
    else:
        for r in rows:
            mark = "ok" if r.passed else "FAIL"
            print(f"level {r.label}: extended {r.extended_classes} vs {r.level_size} ({mark})")
    return 0 if ok else 1


def report_labels(system: InverseSystem, depth: int) -> list[int]:
    return [n for n in system.labels if 1 <= n <= depth]


def _cmd_rigid(args) -> int:
    g = js.load_structure(args.groupoid)
    subset = [str(x) for x in js.load_json(args.normal)]
    rc = gp.rho_from_subgroup(g, args.vertex, subset)
    _emit_partition(rc.partition, args.format, {"index": rc.index})
    return 0


def _cmd_gen(args) -> int:
    made = fx.generate(args.fixture, *args.params)
    if isinstance(made, InverseSystem):
        sys.stdout.write(js.dumps(js.system_doc(made)))
    else:
        sys.stdout.write(js.dumps(js.structure_doc(made)))
    return 0


def _cmd_verify(args) -> int:
    report = vf.run_verify(args.suite, args.max_size, args.seed)
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


_COMMANDS = {
    "validate": _cmd_validate,
    "close": _cmd_close,
    "quotient": _cmd_quotient,
    "hausdorff": _cmd_hausdorff,
    "separate": _cmd_separate,
    "complete": _cmd_complete,
    "rigid": _cmd_rigid,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CofinexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
