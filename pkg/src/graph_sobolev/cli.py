"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .cheeger import DEFAULT_LIMIT, cheeger_exact, cheeger_heuristic
from .functions import (
    deg_weighted_norm_p,
    grad_norm_W_p,
    grad_norm_script_p,
    lp_norm_p,
    p_energy,
    rayleigh_quotient,
    sobolev_norm_p,
)
from .gap import GeometricDecay, gap_curve, theorem1_chain_check, theorem2_chain_check, theorem_lower_bound
from .graph import custom_family, line_family, measures, tree_family
from .io import FormatError, format_graph, read_function, read_graph
from .spectral import lambda_p_estimate
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


# -- family flags -------------------------------------------------------------

def _add_family_flags(p):
    p.add_argument("--family", choices=["tree", "line", "graph"], default="tree")
    p.add_argument("--b", type=int, default=2, help="tree branching")
    p.add_argument("--q", type=float, default=1 / 3, help="tree measure ratio")
    p.add_argument("--m", type=float, default=1 / 3, help="tree root measure")
    p.add_argument("--profile", choices=["constant", "geometric"], default="constant", help="line measure profile")
    p.add_argument("--c", type=float, default=1.0, help="line measure scale")
    p.add_argument("--ratio", type=float, default=None, help="line geometric measure ratio")
    p.add_argument("--graph", default=None, help="graph file (with --family graph)")


def _family(args):
    if args.family == "tree":
        return tree_family(args.b, args.q, args.m)
    if args.family == "line":
        return line_family(args.profile, args.c, args.ratio)
    if not args.graph:
        raise UsageError("--family graph needs --graph FILE")
    return custom_family(read_graph(args.graph))


# -- subcommands ----------------------------------------------------------------

def cmd_verify(args):
    summary = run_suites(args.suite or None, seed=args.seed, cases=args.cases)
    _emit(_dump_json({"seed": args.seed, "suites": summary}), args.out)
    return EXIT_OK if all(s["failures"] == 0 for s in summary) else EXIT_FAIL


def cmd_gap(args):
    if args.rmin < 1 or args.rmax < args.rmin:
        raise UsageError("need 1 <= rmin <= rmax")
    fam = _family(args)
    target = None
    if args.target == "geometric-decay":
        target = GeometricDecay(args.amplitude, args.decay)
    radii = list(range(args.rmin, args.rmax + 1))
    curve = gap_curve(fam, radii, args.p, args.flavor, target, tol=args.tol)
    lines = ["radius,distance_p,converged"]
    lines += [f"{pt.radius},{_fmt(pt.distance_p)},{str(pt.converged).lower()}" for pt in curve]
    _emit("\n".join(lines) + "\n", args.out)
    if args.report:
        rows = []
        for pt in curve:
            g = fam.truncate(pt.radius)
            row = {"radius": pt.radius, "distance_p": pt.distance_p}
            if len(g.core_ids) <= DEFAULT_LIMIT:
                row["alpha_exhaustive"] = cheeger_exact(g).alpha
            row["alpha_exact"] = cheeger_exact(g, method="auto").alpha
            root = g.root if g.root is not None else min(g.core_ids)
            row["phi_root"] = pt.minimizer(root)
            row["deg_root"] = float(g.degrees[g.position(root)])
            if target is None and (args.flavor == "script" or args.p >= 2):
                row["theorem_lower_bound"] = theorem_lower_bound(args.p, row["alpha_exact"], row["deg_root"], args.flavor)
            rows.append(row)
        report = {"config": _config(args), "total_measure": fam.total_measure, "points": rows}
        Path(args.report).write_text(_dump_json(report), encoding="utf-8")
    return EXIT_OK


def cmd_quantities(args):
    g = read_graph(args.graph)
    if args.norm and not args.function:
        raise UsageError("--norm needs --function FILE")
    out = {"config": _config(args)}
    out["degrees"] = {str(v): float(d) for v, d in zip(g.ids, g.degrees)}
    core, tail = measures(g)
    out["core_measure"], out["tail_measure"] = core, tail
    if len(g.core_ids) <= args.limit:
        out["alpha"] = cheeger_exact(g, limit=args.limit).alpha
    if all(g.degrees[g.core_mask] > 0):
        out["lambda_p"] = lambda_p_estimate(g, args.p, seed=args.seed).value
    if args.function:
        u = read_function(args.function, g)
        out["lp_norm_p"] = lp_norm_p(g, u, args.p)
        out["grad_W_p"] = grad_norm_W_p(g, u, args.p)
        out["grad_script_p"] = grad_norm_script_p(g, u, args.p)
        out["sobolev_W_p"] = sobolev_norm_p(g, u, args.p, "W")
        out["sobolev_script_p"] = sobolev_norm_p(g, u, args.p, "script")
        out["deg_norm_p"] = deg_weighted_norm_p(g, u, args.p)
        if u.is_compactly_supported():
            out["energy"] = p_energy(g, u, args.p)
            if u.values:
                out["rayleigh"] = rayleigh_quotient(g, u, args.p)
    _emit(_dump_json(out), args.out)
    return EXIT_OK


def cmd_cheeger(args):
    g = read_graph(args.graph)
    if args.mode == "heuristic":
        res = cheeger_heuristic(g, args.iterations, args.seed, boundary=args.boundary)
    else:
        method = {"exhaustive": "enumerate", "mincut": "mincut", "auto": "auto"}[args.mode]
        res = cheeger_exact(g, boundary=args.boundary, method=method, limit=args.limit)
    _emit(_dump_json(res.to_dict()), args.out)
    return EXIT_OK


def cmd_lambda(args):
    g = read_graph(args.graph)
    res = lambda_p_estimate(g, args.p, restarts=args.restarts, seed=args.seed, method=args.method)
    _emit(_dump_json(res.to_dict()), args.out)
    return EXIT_OK


def cmd_chain(args):
    g = read_graph(args.graph)
    phi = read_function(args.phi, g)
    check = theorem1_chain_check if args.theorem == 1 else theorem2_chain_check
    rep = check(g, phi, args.p, root=args.root)
    _emit(_dump_json(rep.to_dict()), args.out)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_gen(args):
    fam = _family(args)
    _emit(format_graph(fam.truncate(args.radius)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graph-sobolev", description="Discrete Sobolev spaces on weighted graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the randomized property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--cases", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gap", help="distance-to-target curve over radii (CSV)")
    _add_family_flags(p)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--flavor", choices=["W", "script"], default="W")
    p.add_argument("--rmin", type=int, default=2)
    p.add_argument("--rmax", type=int, default=6)
    p.add_argument("--target", choices=["constant", "geometric-decay"], default="constant")
    p.add_argument("--decay", type=float, default=0.5)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--report", default=None, help="companion JSON with Cheeger constants and bounds")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("quantities", help="degrees, norms, energy, alpha, lambda_p (JSON)")
    p.add_argument("--graph", required=True)
    p.add_argument("--function", default=None)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--norm", action="store_true", help="require the function-dependent norms")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_quantities)

    p = sub.add_parser("cheeger", help="Cheeger constant (JSON)")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=["auto", "exhaustive", "mincut", "heuristic"], default="exhaustive")
    p.add_argument("--boundary", choices=["edge", "vertex"], default="edge")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cheeger)

    p = sub.add_parser("lambda", help="estimate lambda_p (JSON)")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=["auto", "eigh", "descent"], default="auto")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("chain", help="check a theorem's inequality chain for one function (JSON)")
    p.add_argument("--graph", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--theorem", type=int, choices=[1, 2], required=True)
    p.add_argument("--root", type=int, default=None)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("gen", help="write a family truncation in the graph file format")
    _add_family_flags(p)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_gen)

    for action in sub.choices.values():
        action.add_argument("--out", default=None, help="output path (default stdout)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError, KeyError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"graph-sobolev {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
