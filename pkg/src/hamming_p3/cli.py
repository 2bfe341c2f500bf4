"""Command-line driver.

Exit statuses: 0 success / affirmative, 1 negative verdict, 2 input error,
3 memory guard exceeded, 4 budget-truncated search.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import __version__
from .constructions import (
    VARIANTS,
    build_family,
    caratheodory_formula,
    q_sequence,
    verify_family,
)
from .convexity import analyze, components_of, decompose, summarize
from .errors import ContractViolation, GuardExceeded, InputError, P3Error, PreconditionError
from .hamming import DEFAULT_GUARD, RadixVector, format_vertex_lines, parse_radices, parse_vertex_lines
from .hull import AdjacencyGraph, p3_hull
from .search import (
    SearchBudget,
    explore_k2_conjecture,
    max_caratheodory,
    max_minimal_hull_set,
    repair_base_list,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_GUARD, EXIT_TRUNCATED = 0, 1, 2, 3, 4

_TIMING_KEYS = ("elapsed_ms", "timings_ms")


def _emit(args, payload: dict, text_lines: list[str]):
    if args.json:
        if args.no_timings:
            payload = _strip_timings(payload)
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k not in _TIMING_KEYS}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _guard(args):
    return None if args.override_guard else DEFAULT_GUARD


def _provider(args, required=True):
    if args.graph_file and args.radices:
        raise InputError("--radices and --graph-file are mutually exclusive")
    if args.graph_file:
        with open(args.graph_file, encoding="utf-8") as fh:
            return AdjacencyGraph.parse(fh.read())
    if args.radices:
        return RadixVector(parse_radices(args.radices), guard=_guard(args))
    if required:
        raise InputError("give --radices a,b,c or --graph-file PATH")
    return None


def _read_set(args, provider):
    if args.set is not None and args.set_file:
        raise InputError("--set and --set-file are mutually exclusive")
    if args.set is not None:
        text, inline = args.set, True
    elif args.set_file:
        with open(args.set_file, encoding="utf-8") as fh:
            text, inline = fh.read(), False
    else:
        raise InputError("give the vertex set with --set or --set-file")
    if isinstance(provider, RadixVector):
        vertices = parse_vertex_lines(text, provider, inline=inline)
        return provider.vertex_set(vertices)
    vertices = parse_vertex_lines(text, inline=inline)
    ranks = []
    for v in vertices:
        if len(v) != 1 or v[0] >= provider.universe_size:
            raise InputError(f"graph vertices are single ranks below {provider.universe_size}, got {v}")
        ranks.append(v[0])
    from .hamming import VertexSet

    return VertexSet.from_ranks(provider.universe_size, ranks)


def _component_payload(provider, hull):
    if isinstance(provider, RadixVector):
        return [{"pattern": c.subgraph.pattern_strings() if c.subgraph else None,
                 "dimension": c.dimension, "size": c.size}
                for c in components_of(provider, hull).components]
    from .convexity import _plain_component_sizes

    return [{"pattern": None, "dimension": None, "size": s}
            for s in _plain_component_sizes(provider, hull)]


def _component_lines(components):
    lines = [f"components {len(components)}"]
    for c in components:
        pattern = ",".join(str(p) for p in c["pattern"]) if c["pattern"] else "-"
        dim = "-" if c["dimension"] is None else c["dimension"]
        lines.append(f"  {pattern}  dimension {dim}  size {c['size']}")
    return lines


# -- commands ---------------------------------------------------------------


def cmd_hull(args) -> int:
    provider = _provider(args)
    s = _read_set(args, provider)
    hull = p3_hull(provider, s)
    comps = _component_payload(provider, hull)
    payload = {
        "radices": list(provider.radices) if isinstance(provider, RadixVector) else None,
        "set_size": len(s),
        "hull_size": len(hull),
        "components": comps,
    }
    _emit(args, payload, [f"hull_size {len(hull)}"] + _component_lines(comps))
    return EXIT_OK


def cmd_decompose(args) -> int:
    provider = _provider(args)
    if not isinstance(provider, RadixVector):
        raise InputError("decompose works on Hamming graphs (--radices)")
    s = _read_set(args, provider)
    dec = decompose(provider, s)
    comps = [{"pattern": c.subgraph.pattern_strings() if c.subgraph else None,
              "dimension": c.dimension, "size": c.size} for c in dec.components]
    payload = {"radices": list(provider.radices), "size": len(s), "components": comps}
    _emit(args, payload, [f"size {len(s)}"] + _component_lines(comps))
    return EXIT_OK


def cmd_check(args) -> int:
    provider = _provider(args)
    s = _read_set(args, provider)
    report = analyze(provider, s, threads=args.threads, keep_removal_hulls=False)
    summary = summarize(report, provider)
    data = asdict(summary)

    def fmt(v):
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, list):
            return ",".join(str(x) for x in v)
        return str(v)

    lines = [f"set_size {len(s)}"]
    for key in ("hull_size", "boundary_size", "witness", "is_caratheodory",
                "is_hull_set", "is_minimal_hull_set"):
        lines.append(f"{key} {fmt(data[key]) if data[key] is not None else '-'}")
    lines += _component_lines(data["components"])
    _emit(args, data, lines)
    return EXIT_OK if report.is_caratheodory else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    family = build_family(args.n, args.variant)
    if args.part == "u":
        vertices = family.u
    elif args.part == "s_w":
        vertices = family.s_w
    else:
        vertices = family.s_v
    if args.json:
        payload = {
            "n": family.n,
            "variant": family.variant,
            "expected_size": family.expected_size,
            "s_w": [list(x) for x in family.s_w],
            "s_v": [list(x) for x in family.s_v],
            "u": [list(x) for x in family.u],
        }
        print(json.dumps(payload, indent=2))
    else:
        header = f"{args.part} for n={family.n} ({family.variant}), {len(vertices)} vertices"
        sys.stdout.write(format_vertex_lines(vertices, header=header))
    return EXIT_OK


def _parse_n_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-", 1))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise InputError(f"cannot parse dimension range {text!r}; expected e.g. 7-12")
    if not out or min(out) < 7:
        raise InputError("verify-theorem needs dimensions >= 7")
    return sorted(set(out))


def cmd_verify_theorem(args) -> int:
    dims = _parse_n_range(args.n)
    q = q_sequence(max(dims))
    rows = []
    for n in dims:
        row = {"n": n, "formula": caratheodory_formula(n), "q_n": q.q(n)}
        try:
            rv = RadixVector.uniform(n, args.radix, guard=_guard(args))
        except GuardExceeded:
            row.update(status="SKIPPED", size=None, failed=[], note="memory guard")
            rows.append(row)
            continue
        family = build_family(n, args.variant)
        result = verify_family(family, rv, threads=args.threads)
        row.update(size=result.size, failed=result.failed_checks,
                   timings_ms=result.timings_ms, variant=family.variant)
        row["bound_ok"] = result.size <= row["q_n"]
        if result.passed and row["bound_ok"]:
            row["status"] = "PASS"
        elif args.repair:
            row.update(_repair_row(n, family, rv, args))
        else:
            row["status"] = "FAIL"
        rows.append(row)

    lines = [f"{'n':>3} {'|U|':>6} {'formula':>8} {'q_n':>6}  status"]
    for row in rows:
        size = "-" if row.get("size") is None else row["size"]
        extra = ""
        if row["status"] == "FAIL":
            extra = "  failed: " + ",".join(row["failed"])
        elif row["status"] == "REPAIRED":
            extra = f"  ({row['repair']})"
        elif row["status"] == "SKIPPED":
            extra = f"  ({row['note']})"
        if args.verbose and "timings_ms" in row:
            extra += "  " + " ".join(f"{k}={v}ms" for k, v in row["timings_ms"].items())
        lines.append(f"{row['n']:>3} {size:>6} {row['formula']:>8} {row['q_n']:>6}  {row['status']}{extra}")
    _emit(args, {"radix": args.radix, "variant": args.variant, "rows": rows}, lines)
    bad = {"FAIL"} | ({"REPAIRED"} if args.strict else set())
    return EXIT_NEGATIVE if any(r["status"] in bad for r in rows) else EXIT_OK


def _repair_row(n, family, rv, args) -> dict:
    if n == 8 and family.variant == "verbatim":
        found = repair_base_list(n, family, SearchBudget(time_limit=args.time_limit), rv=rv)
        if found.repairs:
            best = found.repairs[0]
            check = verify_family(best.family, rv)
            return {"status": "REPAIRED", "size": check.size,
                    "repair": f"{best.side}_{best.index + 1} -> {','.join(map(str, best.replacement))}"}
        return {"status": "FAIL", "repair": "no single-vertex repair found",
                "repair_exhaustive": found.exhaustive}
    if family.variant == "verbatim":
        alt = build_family(n, "repaired")
        if alt.variant == "repaired":
            check = verify_family(alt, rv, threads=args.threads)
            if check.passed:
                return {"status": "REPAIRED", "size": check.size,
                        "repair": "repaired recursion variant"}
    return {"status": "FAIL"}


def _budget(args) -> SearchBudget:
    return SearchBudget(max_subset_size=args.max_size, max_candidates=args.max_candidates,
                        time_limit=args.time_limit, canonicalize=args.canonicalize,
                        threads=args.threads)


def _search_cmd(args, fn) -> int:
    provider = _provider(args)
    result = fn(provider, _budget(args))
    lines = [
        f"kind {result.kind}",
        f"best_size {result.best_size}",
        "witness " + ("-" if result.witness is None else
                      ";".join(",".join(map(str, w)) if isinstance(w, list) else str(w)
                               for w in result.witness)),
        f"exhaustive {str(result.exhaustive).lower()}",
        f"max_size_searched {result.max_size_searched}",
        f"candidates_examined {result.candidates_examined}",
    ]
    if args.verbose:
        lines.append(f"elapsed_ms {result.elapsed_ms}")
    _emit(args, asdict(result), lines)
    return EXIT_OK if result.exhaustive else EXIT_TRUNCATED


def cmd_search_cmax(args) -> int:
    return _search_cmd(args, max_caratheodory)


def cmd_search_p(args) -> int:
    return _search_cmd(args, max_minimal_hull_set)


def cmd_explore_k2(args) -> int:
    provider = _provider(args)
    if not isinstance(provider, RadixVector):
        raise InputError("explore-k2 works on Hamming graphs (--radices)")
    budget = _budget(args)
    if budget.max_subset_size is None and provider.universe_size > 16:
        budget.max_subset_size = 6
    report = explore_k2_conjecture(provider, budget)
    lines = [
        f"radices {','.join(map(str, report.radices))}",
        f"best_c {report.caratheodory.best_size} (exhaustive {str(report.caratheodory.exhaustive).lower()})",
        f"best_p {report.minimal_hull.best_size} (exhaustive {str(report.minimal_hull.exhaustive).lower()})",
        f"c_less_than_p {str(report.c_less_than_p).lower()}",
        "conclusive" if report.conclusive else "NON-CONCLUSIVE (search bounded by budget)",
    ]
    _emit(args, asdict(report), lines)
    return EXIT_OK if report.conclusive else EXIT_TRUNCATED


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--no-timings", action="store_true",
                        help="drop timing fields from JSON for byte-stable output")
    common.add_argument("--override-guard", action="store_true",
                        help=f"lift the {DEFAULT_GUARD}-vertex memory guard")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--radices", help="factor sizes, e.g. 3,3,3")
    graph.add_argument("--graph-file", help="edge list: 'n m' then m lines 'u v'")

    vset = argparse.ArgumentParser(add_help=False)
    vset.add_argument("--set", help="inline vertices, e.g. '1,0;0,1'")
    vset.add_argument("--set-file", help="one vertex per line, comma-separated")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-size", type=int, default=None)
    budget.add_argument("--max-candidates", type=int, default=None)
    budget.add_argument("--time-limit", type=float, default=None, help="seconds")
    budget.add_argument("--canonicalize", type=int, choices=(0, 1, 2), default=0)

    parser = argparse.ArgumentParser(prog="hamming-p3", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hull", parents=[common, graph, vset], help="P3-hull of a set")
    p.set_defaults(func=cmd_hull)
    p = sub.add_parser("decompose", parents=[common, graph, vset],
                       help="split a convex set into Hamming subgraphs")
    p.set_defaults(func=cmd_decompose)
    p = sub.add_parser("check", parents=[common, graph, vset],
                       help="Carathéodory / hull-set report (exit 0 iff Carathéodory)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="emit a construction family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="verbatim")
    p.add_argument("--part", choices=("u", "s_w", "s_v"), default="u")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-theorem", parents=[common],
                       help="build and verify families for a range of dimensions")
    p.add_argument("--n", default="7-10", help="dimensions, e.g. 7-12 or 7,9,12")
    p.add_argument("--radix", type=int, default=3, help="size of every factor (>= 3)")
    p.add_argument("--variant", choices=VARIANTS, default="verbatim")
    p.add_argument("--no-repair", dest="repair", action="store_false",
                   help="report failures without trying a repair")
    p.add_argument("--strict", action="store_true", help="treat REPAIRED rows as failures")
    p.add_argument("--time-limit", type=float, default=None, help="repair search limit (s)")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("search-cmax", parents=[common, graph, budget],
                       help="largest Carathéodory set by exhaustive search")
    p.set_defaults(func=cmd_search_cmax)
    p = sub.add_parser("search-p", parents=[common, graph, budget],
                       help="largest minimal hull set by exhaustive search")
    p.set_defaults(func=cmd_search_p)
    p = sub.add_parser("explore-k2", parents=[common, graph, budget],
                       help="compare c and p on graphs with a K2 factor")
    p.set_defaults(func=cmd_explore_k2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, ContractViolation, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except P3Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
