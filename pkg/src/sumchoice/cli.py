"""Batch command line: tables, checks, experiments, witness inspection.

Every command prints JSON (CSV for experiment traces) with a config echo,
sorted keys, and no timestamps, so identical invocations are byte-identical.
Exit codes: 0 success, 1 verify-tables mismatch, 2 usage error, 3 budget
exhausted (partial output already printed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import graphs
from .acceptance import CRITERIA, run_rows
from .bipartite import (
    bounds_report,
    constr_assignment,
    default_pick_probability,
    random_type2_assignment,
    recommended_r,
    transversal_trials,
)
from .choosability import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    color_from_lists,
    is_sufficient,
    lists_from_json,
    lists_to_json,
    transversal_check,
)
from .exact import sum_choice_exact
from .graphs import generate, graph_to_json, load_graph
from .turan import independent_sdr, split_bounds
from .type2 import beta, reduced_witness_to_json, type2_insufficient

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip() != ""]


def _emit(doc: dict, args: argparse.Namespace, extra: dict | None = None) -> None:
    config = {
        "command": args.command,
        "seed": args.seed,
        "budget": args.budget,
        "jobs": args.jobs,
    }
    if extra:
        config.update(extra)
    doc = dict(doc)
    doc["config"] = config
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _load_lists(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return lists_from_json(json.load(fh))


def _graph_from_args(args: argparse.Namespace) -> graphs.Graph:
    if getattr(args, "graph", None):
        return load_graph(args.graph)
    family = args.family
    if family is None:
        raise ValueError("either --graph or --family is required")
    if args.params is not None:
        params = _int_list(args.params)
    elif family in ("complete_bipartite", "complete_split"):
        params = [args.a, args.q]
    elif family in ("path", "cycle", "complete", "star"):
        params = [args.n]
    elif family == "random_tree":
        params = [args.n, args.seed]
    elif family == "random_graph":
        params = [args.n, args.m, args.seed]
    else:
        raise ValueError(f"family {family!r} needs --params")
    if any(p is None for p in params):
        raise ValueError(f"family {family!r} is missing parameters (use --params or the named flags)")
    return generate(family, params)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumchoice",
        description="Sum choice numbers: exact values, bounds, constructions, witnesses.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base seed for randomized commands")
    common.add_argument(
        "--budget",
        type=int,
        default=int(os.environ.get("SUMCHOICE_BUDGET", DEFAULT_BUDGET)),
        help="search budget cap (env override: SUMCHOICE_BUDGET)",
    )
    common.add_argument("--jobs", type=int, default=1, help="worker count (results are independent of it)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def sub(name: str, **kwargs) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, parents=[common], **kwargs)

    p = sub("generate", help="emit a named-family graph as JSON")
    p.add_argument("--family", required=True, choices=graphs.family_names())
    p.add_argument("--params", help="comma-separated integer parameters")
    p.add_argument("--a", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--out", help="write to file instead of stdout")

    p = sub("check", help="test a size function or a concrete list assignment")
    p.add_argument("--graph", required=True, help="graph JSON file (or inline JSON)")
    p.add_argument("--f", help="comma-separated list sizes per vertex")
    p.add_argument("--lists", help="list-assignment JSON file")

    p = sub("sumchoice", help="exact sum choice number")
    p.add_argument("--graph")
    p.add_argument("--family", choices=graphs.family_names())
    p.add_argument("--params")
    p.add_argument("--a", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)

    p = sub("bounds", help="closed form and bounds for K_{a,q}")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--log-base", choices=("e", "2"), default="e")

    p = sub("constr", help="the doubling construction for a=2^t, q=t*ell^2")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)

    p = sub("experiment", help="randomized experiments (CSV)")
    p.add_argument("kind", choices=("rt",), help="rt: random transversal process")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, help="A-list size (default: the bound's r)")
    p.add_argument("--p", type=float, help="pick probability (default: the bound's p)")
    p.add_argument("--universe", type=int, help="color universe size (default 2q)")
    p.add_argument("--trials", type=int, default=50)

    p = sub("sdr", help="greedy independent SDR with step trace")
    p.add_argument("--graph", required=True)
    p.add_argument("--lists", required=True)

    p = sub("split-bounds", help="bounds for the complete split graph G_{a,q}")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = sub("type2", help="type-II insufficiency witness for K_{a,q}")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--f", required=True, help="comma-separated A-side list sizes")

    p = sub("beta", help="the normalized type-II limit constant")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--grid", type=int, default=32)

    p = sub("verify-tables", help="re-run every acceptance row; nonzero exit on mismatch")
    p.add_argument("--only", help="comma-separated row ids (default: all)")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except BudgetExceededError as exc:
        sys.stderr.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def _dispatch(args: argparse.Namespace) -> int:

    if args.command == "generate":
        g = _graph_from_args(args)
        doc = graph_to_json(g)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True, indent=2)
                fh.write("\n")
            _emit({"written": args.out, "n": g.n, "edges": g.m}, args)
        else:
            _emit(doc, args)
        return EXIT_OK

    if args.command == "check":
        g = load_graph(args.graph)
        if (args.f is None) == (args.lists is None):
            raise ValueError("check needs exactly one of --f or --lists")
        if args.f is not None:
            verdict = is_sufficient(g, _int_list(args.f), budget=args.budget)
            doc = {"verdict": verdict.status, "checked": verdict.checked}
            if verdict.witness is not None:
                doc["witness"] = lists_to_json(verdict.witness)
            _emit(doc, args, {"f": args.f})
            return EXIT_UNDECIDED if verdict.status == "undecided" else EXIT_OK
        lists = _load_lists(args.lists)
        coloring = color_from_lists(g, lists)
        doc = {"colorable": coloring is not None}
        if coloring is not None:
            doc["coloring"] = list(coloring)
        _emit(doc, args, {"lists": args.lists})
        return EXIT_OK

    if args.command == "sumchoice":
        g = _graph_from_args(args)
        result = sum_choice_exact(g, budget=args.budget)
        doc = {
            "chi_sc": result.value,
            "optimal_f": list(result.optimal_f) if result.optimal_f is not None else None,
            "budget_used": result.budget_used,
        }
        if result.undecided:
            doc["undecided"] = True
            doc["bracket"] = list(result.bracket)
        _emit(doc, args)
        return EXIT_UNDECIDED if result.undecided else EXIT_OK

    if args.command == "bounds":
        report = bounds_report(args.a, args.q, log_base=args.log_base)
        _emit(
            {
                "a": report.a,
                "q": report.q,
                "closed_form": report.closed,
                "ub": report.upper,
                "lb": report.lower,
                "sandwich_ok": report.sandwich_ok,
            },
            args,
            {"log_base": args.log_base},
        )
        return EXIT_OK

    if args.command == "constr":
        c = constr_assignment(args.t, args.ell)
        insufficient = transversal_check(c.a_lists, c.q_lists) is None
        _emit(
            {
                "t": c.t,
                "ell": c.ell,
                "a": c.a,
                "q": c.q,
                "n_colors": c.n_colors,
                "a_lists": [sorted(L) for L in c.a_lists],
                "q_lists": [sorted(L) for L in c.q_lists],
                "insufficient": insufficient,
            },
            args,
        )
        return EXIT_OK

    if args.command == "experiment":
        a, q = args.a, args.q
        r = args.r if args.r is not None else recommended_r(a, q)
        p = args.p if args.p is not None else default_pick_probability(a, q)
        universe = args.universe if args.universe is not None else max(2 * q, r)
        LA, LQ = random_type2_assignment(a, q, r, seed=args.seed, universe=universe)
        config = {
            "kind": args.kind, "a": a, "q": q, "r": r, "p": p,
            "universe": universe, "trials": args.trials, "seed": args.seed,
        }
        sys.stdout.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
        sys.stdout.write("trial,Y,min_X_u,success\n")
        for trace in transversal_trials(LA, LQ, p, seed=args.seed, max_trials=args.trials):
            sys.stdout.write(
                f"{trace.trial},{trace.spanned},{min(trace.hits)},{int(trace.success)}\n"
            )
        return EXIT_OK

    if args.command == "sdr":
        g = load_graph(args.graph)
        lists = _load_lists(args.lists)
        result = independent_sdr(g, lists)
        if result is None:
            _emit({"success": False}, args)
        else:
            _emit(
                {
                    "success": True,
                    "representatives": list(result.representatives),
                    "list_indices": list(result.list_indices),
                    "steps": [asdict(step) for step in result.steps],
                },
                args,
            )
        return EXIT_OK

    if args.command == "split-bounds":
        sb = split_bounds(args.a, args.q)
        _emit(
            {
                "a": sb.a, "q": sb.q, "s": sb.s,
                "lower": sb.lower, "upper": sb.upper,
                "upper_f": list(sb.upper_f),
            },
            args,
        )
        return EXIT_OK

    if args.command == "type2":
        f = _int_list(args.f)
        if len(f) != args.a:
            raise ValueError(f"--f has {len(f)} entries but --a is {args.a}")
        witness = type2_insufficient(f, args.q, budget=args.budget)
        if witness is None:
            _emit({"verdict": "sufficient"}, args, {"f": args.f, "q": args.q})
        else:
            _emit(
                {"verdict": "insufficient", "witness": reduced_witness_to_json(witness)},
                args,
                {"f": args.f, "q": args.q},
            )
        return EXIT_OK

    if args.command == "beta":
        value = beta(args.a, args.tol, grid=args.grid)
        _emit({"a": args.a, "beta": value, "tolerance": args.tol}, args, {"grid": args.grid})
        return EXIT_OK

    if args.command == "verify-tables":
        only = set(_int_str_list(args.only)) if args.only else None
        if only is not None:
            known = {row_id for row_id, _, _ in CRITERIA}
            bad = only - known
            if bad:
                raise ValueError(f"unknown row ids: {sorted(bad)}")
        failures = 0
        for row_id, title, ok, detail in run_rows(only):
            status = "PASS" if ok else "FAIL"
            sys.stdout.write(f"ROW {row_id:>2} {status} {title}: {detail}\n")
            failures += 0 if ok else 1
        sys.stdout.write(f"{'OK' if failures == 0 else 'MISMATCH'} ({failures} failing rows)\n")
        return EXIT_OK if failures == 0 else EXIT_MISMATCH

    raise AssertionError(f"unhandled command {args.command!r}")


def _int_str_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


if __name__ == "__main__":
    sys.exit(main())
