"""Command-line front end.

Family specs use `name:params`, for example crown:5, hypercube:4,
complete_bipartite:2,3, single_edge or cayley:z5:2,3 (group, then the
connection set). Exit codes: 0 ok, 1 validation or solver failure, 2 input
error, 3 resource budget.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import exact, groups, suites
from .graphs import FAMILIES, Graph, dump_graph, family, hardness_gadget, half_size_reduction, load_graph
from .report import BOUNDS, NotApplicable, compute_report, format_value, to_csv_rows, to_table
from .sdp.engine import DimensionCapExceeded, SolverConfig

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


def parse_family(spec: str):
    """Build a graph from a `name:params` spec."""
    name, _, rest = spec.partition(":")
    if name == "cayley":
        gspec, _, subset = rest.partition(":")
        if not gspec or not subset:
            raise InputError("cayley spec is cayley:GROUP:a,b,...")
        G = groups.group_from_spec(gspec)
        return groups.cayley_bipartite(G, _int_list(subset))
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))} or cayley")
    params = _int_list(rest) if rest else []
    try:
        return family(name, *params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {name}: {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _load_input(args):
    if args.graph:
        return load_graph(args.graph)
    return parse_family(args.family)


def _config(args) -> SolverConfig:
    return SolverConfig(gap_tol=args.tol, feas_tol=args.tol)


def _json_default(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if hasattr(v, "tolist"):
        return v.tolist()
    raise TypeError(f"cannot encode {type(v).__name__}")


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, default=_json_default))


def _emit_csv(rows) -> None:
    w = csv.writer(sys.stdout)
    for r in rows:
        w.writerow([format_value(c) if isinstance(c, (float, Fraction)) else c for c in r])


def _plain_table(head, rows) -> str:
    cells = [list(map(str, head))] + [[format_value(c) if isinstance(c, (int, float, Fraction)) else str(c) for c in r]
                                      for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(head))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# ---------------------------------------------------------------- commands


def cmd_bounds(args) -> int:
    G = _load_input(args)
    names = None
    if not args.all:
        if not args.bound:
            raise InputError("give --bound NAME (repeatable) or --all")
        names = [n for b in args.bound for n in b.split(",") if n]
        unknown = [n for n in names if n not in BOUNDS]
        if unknown:
            raise InputError(f"unknown bound(s) {', '.join(unknown)}; choose from {', '.join(BOUNDS)}")
    rep = compute_report(G, names, _config(args), args.budget, max(1e-6, 100 * args.tol), strict=True)
    if args.json:
        _emit_json(rep.to_dict())
    elif args.csv:
        _emit_csv(to_csv_rows(rep))
    else:
        print(f"graph {rep.digest} ({rep.graph_type})")
        print(to_table(rep))
    for v in rep.violations:
        print(f"violated: {v['relation']} {v['values']}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    names = suites.SUITES if args.suite == "all" else (args.suite,)
    checks = []
    for name in names:
        checks += suites.run_suite(name, args.seed, _config(args), args.budget, max(1e-6, 100 * args.tol))
    failed = [c for c in checks if not c.ok]
    if args.json:
        _emit_json({"checks": len(checks), "failed": [c.to_dict() for c in failed], "ok": not failed})
    elif args.csv:
        _emit_csv([["suite", "name", "ok"]] + [[c.suite, c.name, c.ok] for c in checks])
    else:
        for name in names:
            mine = [c for c in checks if c.suite == name]
            bad = [c for c in mine if not c.ok]
            print(f"{name}: {len(mine) - len(bad)}/{len(mine)} passed")
            for c in bad:
                print(f"  FAIL {c.name}: {json.dumps(c.detail, default=_json_default)}")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_table(args) -> int:
    head, rows = suites.table(args.section, args.min, args.max, _config(args), args.budget)
    if args.json:
        _emit_json({"section": args.section, "columns": head, "rows": rows})
    elif args.csv:
        _emit_csv([head] + rows)
    else:
        print(_plain_table(head, rows))
    return EXIT_OK


def cmd_gadget(args) -> int:
    G = _load_input(args)
    if not isinstance(G, Graph):
        G = G.flatten()
    H = hardness_gadget(G)
    out = {"n": G.n, "m": G.m, "gadget_side": H.n1, "expected_alpha": G.n + G.m * (G.n + 1)}
    if args.out:
        dump_graph(H, args.out)
        out["gadget_file"] = args.out
    if args.reduction:
        R = half_size_reduction(G)
        dump_graph(R, args.reduction)
        out["reduction_file"] = args.reduction
        out["reduction"] = {"n": R.n, "m": R.m}
    ok = True
    if args.check:
        out["alpha"] = exact.alpha_bipartite(H)
        out["structure"] = exact.gadget_maximal_sets_match_structure(G, args.budget)
        ok = out["structure"] and out["alpha"] == out["expected_alpha"]
        if G.n % 2 == 0 and 4 * G.m == G.n * (G.n - 2):
            clique, balanced = exact.verify_gadget_equivalence(G, args.budget)
            out.update(clique=clique, balanced=balanced)
            ok = ok and clique == balanced
    out["ok"] = ok
    if args.json:
        _emit_json(out)
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_group(args) -> int:
    if args.group_file:
        G = groups.load_group(args.group_file)
    elif args.group:
        G = groups.group_from_spec(args.group)
    else:
        raise InputError("give --group SPEC or --group-file PATH")
    if args.emit:
        groups.dump_group(G, args.emit)
    out = {"group": G.name or "table", "order": G.order, "abelian": G.is_abelian()}
    if args.subset is not None:
        A = _int_list(args.subset)
        out["subset"] = A
        out["product_free"] = groups.is_product_free(G, A)
    else:
        size, A = groups.max_product_free(G)
        out["max_product_free"] = size
        out["subset"] = A
        out["product_free"] = True
    ok = True
    if out["product_free"] and out["subset"]:
        rep = groups.gowers_report(G, out["subset"], args.k)
        out["report"] = rep
        ok = rep["ok"]
    if args.json:
        _emit_json(out)
    else:
        for k, v in out.items():
            if k == "report":
                for kk, vv in v.items():
                    print(f"  {kk}: {format_value(vv) if isinstance(vv, float) else vv}")
            else:
                print(f"{k}: {v}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--csv", action="store_true", help="emit CSV")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--tol", type=float, default=1e-8, help="solver gap and feasibility tolerance")
    common.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET, help="maximal-set enumeration budget")

    graph_in = argparse.ArgumentParser(add_help=False)
    src = graph_in.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph JSON file")
    src.add_argument("--family", help="family spec, e.g. crown:5 or cayley:z5:2,3")

    parser = argparse.ArgumentParser(prog="artifact", description="Bounds on biindependent pairs in bipartite graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common, graph_in], help="compute and cross-check bounds")
    p.add_argument("--bound", action="append", help="bound name (repeatable or comma-separated)")
    p.add_argument("--all", action="store_true", help="every applicable bound")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=list(suites.SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="worked-example tables")
    p.add_argument("section", choices=suites.SECTIONS)
    p.add_argument("--min", type=int, help="smallest size parameter")
    p.add_argument("--max", type=int, help="largest size parameter")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("gadget", parents=[common, graph_in], help="hardness gadget and reduction graphs")
    p.add_argument("--out", help="write the gadget graph here")
    p.add_argument("--reduction", help="write the half-size reduction graph here")
    p.add_argument("--check", action="store_true", help="verify the maximal-set structure and the equivalence")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("group", parents=[common], help="product-free sets and Cayley graphs")
    p.add_argument("--group", help="z5, z2xz2, s3, d4, ...")
    p.add_argument("--group-file", help='JSON {"order": n, "table": [[...]]}')
    p.add_argument("--subset", help="comma-separated element indices (default: search a largest product-free set)")
    p.add_argument("--k", type=int, default=1, help="smallest nontrivial representation dimension")
    p.add_argument("--emit", help="write the group table as JSON")
    p.set_defaults(func=cmd_group)
    return parser


def _error(kind: str, exc: Exception, code: int) -> int:
    print(json.dumps({"error": kind, "message": str(exc)}), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (exact.BudgetExceeded, DimensionCapExceeded, groups.SearchCapExceeded) as exc:
        return _error("budget", exc, EXIT_BUDGET)
    except NotApplicable as exc:
        return _error("not-applicable", exc, EXIT_INPUT)
    except (InputError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        return _error("input", exc, EXIT_INPUT)
    except RuntimeError as exc:
        return _error("solver", exc, EXIT_FAIL)


if __name__ == "__main__":
    raise SystemExit(main())
