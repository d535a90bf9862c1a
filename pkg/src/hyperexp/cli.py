"""Command-line front end: ``hyperexp <command> --graph FILE ...``.

Node arguments and node lists in reports use the labels from the input file.
Exit codes: 0 ok, 1 I/O error, 2 precondition violated, 64 usage error,
70 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import generators, oracles
from .cuts import certify_cut_family, disjoint_cut_family
from .flow import INF, max_flow, uniform_capacities
from .graph import DomainError, Graph, format_edge_list, load_graph
from .hyperbolicity import DEFAULT_EXACT_CAP, delta_exact, delta_two_approx
from .overlap import overlap_families, overlap_matrix
from .sse import sse_solve
from .vulnerability import InvariantError, ehssc_approx, greedy_uumv, uumv_approx
from .witnesses import check_family, nested_witness_family

EXIT_IO = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def ratio(x) -> Any:
    """Exact text for rationals, plus a short decimal when the value is not an integer."""
    if x is None:
        return None
    if x == INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return {"exact": f"{x.numerator}/{x.denominator}", "approx": f"{float(x):.12g}"}


class Labels:
    def __init__(self, g: Graph):
        self.g = g
        self.index = {lab: i for i, lab in enumerate(g.labels)}

    def node(self, label: int, flag: str) -> int:
        if label not in self.index:
            raise DomainError(f"{flag} {label} is not a node of the graph")
        return self.index[label]

    def out(self, u: int) -> int:
        return self.g.labels[u]

    def nodes(self, s) -> list[int]:
        return sorted(self.out(u) for u in s)

    def seq(self, path) -> list[int]:
        return [self.out(u) for u in path]

    def edges(self, es) -> list[list[int]]:
        return sorted(sorted((self.out(u), self.out(v))) for u, v in es)


def _read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _delta_report(source: str, value) -> dict:
    """Effective delta (floored at 1/2) and where it came from."""
    return {"value": ratio(value), "source": source, "exact": source == "exact"}


# ---- commands -------------------------------------------------------------

def cmd_delta(g: Graph, lab: Labels, args) -> dict:
    if args.approx:
        res = delta_two_approx(g)
    else:
        res = delta_exact(g, cap=args.exact_cap, workers=args.workers)
    rep = {"delta": ratio(res.delta), "effective_delta": ratio(res.effective_delta),
           "witness_quadruple": lab.seq(res.witness_quadruple), "exact": res.is_exact, "n": g.n}
    if not res.is_exact:
        rep["note"] = "value v satisfies v <= delta <= 2v"
    return rep


def cmd_witnesses(g: Graph, lab: Labels, args) -> dict:
    p, q = lab.node(args.p, "--p"), lab.node(args.q, "--q")
    fam = nested_witness_family(g, p, q, args.mu, args.delta, args.max_degree)
    prm = fam.params
    return {
        "anchor": lab.out(fam.anchor),
        "subsets": [{"nodes": lab.nodes(s), "size": len(s), "expansion": ratio(h), "origin": o}
                    for s, h, o in zip(fam.subsets, fam.expansions, fam.origins)],
        "bound": ratio(fam.bound),
        "t_required": fam.t_required,
        "too_short": fam.too_short,
        "violations": check_family(g, fam),
        "delta": _delta_report(prm.delta_source, prm.delta),
        "degree": {"d": prm.d, "source": "override" if args.max_degree is not None
                   else "max degree (floored at 2)"},
        "params": {"Delta": prm.Delta, "mu": ratio(prm.mu), "n": prm.n,
                   "alpha1_Delta": ratio(prm.alpha1_Delta),
                   "cylinder_radii": list(prm.cylinder_radii),
                   "floors": "Delta/3 and Delta/2 floored; cylinder radii floor(a)..ceil(a/2)"},
        "diagnostics": {
            "ball_anchor": lab.out(fam.diagnostics["ball_anchor"]),
            "ball_hits": fam.diagnostics["ball_hits"],
            "ball_term": ratio(fam.diagnostics["ball_term"]),
            "cylinder_term": ratio(fam.diagnostics["cylinder_term"]),
            "cylinder_sweep": [
                {**row, "anchor": lab.out(row["anchor"])}
                for row in fam.diagnostics["cylinder_sweep"]],
            "candidates": fam.diagnostics["candidates"],
        },
    }


def cmd_overlap(g: Graph, lab: Labels, args) -> dict:
    p, q = lab.node(args.p, "--p"), lab.node(args.q, "--q")
    fs = overlap_families(g, p, q, args.tau, args.mu, args.delta, args.max_degree,
                          force=args.force)
    matrix = overlap_matrix(fs)
    return {
        "Delta": fs.Delta, "tau": fs.tau, "mu": ratio(fs.mu),
        "delta": _delta_report(fs.delta_source, fs.delta),
        "degree": {"d": fs.d, "source": "override" if args.max_degree is not None
                   else "max degree (floored at 2)"},
        "segment_length": fs.Delta // fs.tau,
        "segment_anchors": lab.seq(fs.segment_anchors),
        "segment_bound": ratio(fs.segment_bound),
        "group": "-".join(fs.group), "group_sizes": fs.group_sizes,
        "tau_check": {"ok": fs.tau_check.ok, "reason": fs.tau_check.reason},
        "forced": fs.forced, "shortfall": fs.shortfall,
        "families": [{"segment": i, "anchor": lab.out(f.anchor),
                      "subsets": [lab.nodes(s) for s in f.subsets],
                      "expansions": [ratio(h) for h in f.expansions],
                      "too_short": f.too_short}
                     for i, f in zip(fs.segment_indices, fs.families)],
        "overlap_pairs": len(matrix),
        "overlap_ok": all(r["ok"] for r in matrix),
        "overlap_failures": [r for r in matrix if not r["ok"]],
    }


def cmd_cuts(g: Graph, lab: Labels, args) -> dict:
    s, t = lab.node(args.s, "--s"), lab.node(args.t, "--t")
    fam = disjoint_cut_family(g, s, t, args.delta, args.max_degree)
    cert = certify_cut_family(g, fam)
    return {
        "s": args.s, "t": args.t, "distance": fam.distance,
        "threshold": ratio(fam.threshold),
        "delta": _delta_report(fam.delta_source, fam.delta),
        "degree": {"d": fam.degree.d, "source": fam.degree.source,
                   "excluded": lab.nodes(fam.degree.excluded)},
        "level_stride": fam.level_stride, "ball_radius": fam.ball_radius,
        "floors": "stride floor(50 delta), radius floor(12 delta), ball exclusion floor(35 delta)",
        "size_bound": fam.size_bound, "guaranteed_count": fam.guaranteed_count,
        "cuts": [{"center": lab.out(c.center), "level": c.level,
                  "members": lab.nodes(c.members), "cut_edges": lab.edges(c.cut_edges),
                  "cut_nodes": lab.nodes(c.cut_nodes),
                  "certificate": {"separates": cert.separation[i],
                                  "endpoints_outside": cert.endpoints_outside[i],
                                  "disjoint": cert.disjoint[i], "size_ok": cert.size_ok[i]}}
                 for i, c in enumerate(fam.cuts)],
        "certified": cert.passed,
    }


def _ehssc_block(sol, lab: Labels) -> dict:
    return {
        "hit_edges": lab.edges(sol.hit_edges), "size": len(sol.hit_edges),
        "branch": sol.branch, "k": sol.k,
        "iterations": [lab.edges(f) for f in sol.iterations],
        "threshold": sol.threshold, "threshold_overridden": sol.threshold_overridden,
        "delta": _delta_report(sol.delta_source, sol.delta),
        "degree": {"d": sol.degree.d, "source": sol.degree.source,
                   "excluded": lab.nodes(sol.degree.excluded)},
        "ratio_bound": ratio(sol.ratio_bound),
        "floors": "threshold d^(floor(12 delta)+1); exclusion ball floor(35 delta)",
    }


def cmd_ehssc(g: Graph, lab: Labels, args) -> dict:
    s, t = lab.node(args.s, "--s"), lab.node(args.t, "--t")
    sol = ehssc_approx(g, s, t, args.k, args.delta, args.max_degree, args.threshold_override)
    check = max_flow(g, uniform_capacities(g, 1, sol.hit_edges), s, t, cutoff=args.k + 1)
    rep = _ehssc_block(sol, lab)
    rep["certificate"] = {"min_cut_after_hits": ratio(check.value),
                          "valid": check.value == INF or check.value > args.k}
    return rep


def cmd_uumv(g: Graph, lab: Labels, args) -> dict:
    s, t = lab.node(args.s, "--s"), lab.node(args.t, "--t")
    if args.greedy:
        sol = greedy_uumv(g, s, t, args.r, args.kappa)
    else:
        sol = uumv_approx(g, s, t, args.r, args.kappa, args.delta, args.max_degree,
                          threshold_override=args.threshold_override)
    rep = {"method": sol.method, "r": sol.r, "kappa": sol.kappa,
           "paths": [lab.seq(p) for p in sol.paths],
           "shared": sol.shared_count, "shared_edges": lab.edges(sol.shared_edges),
           "hitting_set_size": sol.hitting_set_size}
    if sol.ehssc is not None:
        rep["ehssc"] = _ehssc_block(sol.ehssc, lab)
    return rep


def cmd_sse(g: Graph, lab: Labels, args) -> dict:
    sol = sse_solve(g, args.epsilon, args.zeta, args.delta, args.max_degree)
    prm = dict(sol.params)
    prm["p"], prm["q"] = lab.out(prm["p"]), lab.out(prm["q"])
    return {
        "branch": sol.branch, "shortfall": sol.shortfall, "set": lab.nodes(sol.nodes),
        "size": len(sol.nodes), "phi": ratio(sol.phi), "h": ratio(sol.h),
        "params": {k: ratio(v) if isinstance(v, Fraction) else v for k, v in prm.items()},
        "delta": _delta_report(prm["delta_source"], sol.params["delta"]),
        "precondition_window": {k: (None if v is None else (v if isinstance(v, bool)
                                                            else f"{v:.6f}"))
                                for k, v in sol.window.items()},
        "floors": "size cap floor(zeta n); Delta = floor(log_d n); cylinder radius ceil(alpha Delta)",
    }


def cmd_gen(args) -> str:
    g = generators.generate(args.family, args.params, args.seed)
    return format_edge_list(g)


def cmd_oracle(g: Graph, lab: Labels, args) -> dict:
    which = args.oracle
    if which == "delta":
        return {"delta": ratio(oracles.brute_delta(g))}
    if which == "min-expansion":
        s, h = oracles.brute_min_node_expansion(g)
        return {"set": lab.nodes(s), "expansion": ratio(h)}
    s, t = lab.node(args.s, "--s"), lab.node(args.t, "--t")
    if which == "cuts":
        cuts = oracles.enumerate_size_constrained_cuts(g, s, t, args.k)
        return {"count": len(cuts), "cuts": [lab.edges(c) for c in cuts]}
    if which == "ehssc":
        hit, opt = oracles.brute_ehssc(g, s, t, args.k)
        return {"opt": opt, "hit_edges": lab.edges(hit)}
    if which == "uumv":
        return {"opt": oracles.brute_uumv(g, s, t, args.r, args.kappa)}
    if which == "min-cut":
        return {"value": ratio(oracles.brute_min_cut(g, {}, s, t))}
    raise UsageError(f"unknown oracle {which}")


COMMANDS = {
    "delta": cmd_delta, "witnesses": cmd_witnesses, "overlap": cmd_overlap, "cuts": cmd_cuts,
    "ehssc": cmd_ehssc, "uumv": cmd_uumv, "sse": cmd_sse, "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=None)

    graph_opts = _Parser(add_help=False)
    graph_opts.add_argument("--graph", required=True, help="edge-list file")

    overrides = _Parser(add_help=False)
    overrides.add_argument("--delta", type=_fraction_arg, default=None)
    overrides.add_argument("--max-degree", type=int, default=None)

    parser = _Parser(prog="hyperexp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("delta", parents=[common, graph_opts], help="Gromov hyperbolicity")
    sp.add_argument("--approx", action="store_true", help="fixed-base 2-approximation")
    sp.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP)
    sp.add_argument("--workers", type=int, default=1)

    for name, helptext in (("witnesses", "nested low-expansion witnesses"),
                           ("overlap", "witness families with limited overlap")):
        sp = sub.add_parser(name, parents=[common, graph_opts, overrides], help=helptext)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--mu", type=_fraction_arg, default=Fraction(1, 2))
        if name == "overlap":
            sp.add_argument("--tau", type=int, required=True)
            sp.add_argument("--force", action="store_true",
                            help="run even when tau fails its constraints")

    sp = sub.add_parser("cuts", parents=[common, graph_opts, overrides],
                        help="disjoint small s-t cuts")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = sub.add_parser("ehssc", parents=[common, graph_opts, overrides],
                        help="hit every small s-t cut")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--threshold-override", type=int, default=None)

    sp = sub.add_parser("uumv", parents=[common, graph_opts, overrides],
                        help="route kappa paths with few shared edges")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--kappa", type=int, required=True)
    sp.add_argument("--greedy", action="store_true")
    sp.add_argument("--threshold-override", type=int, default=None)

    sp = sub.add_parser("sse", parents=[common, graph_opts, overrides],
                        help="small set with low normalised expansion")
    sp.add_argument("--epsilon", type=_fraction_arg, required=True)
    sp.add_argument("--zeta", type=_fraction_arg, required=True)

    sp = sub.add_parser("gen", parents=[common], help="emit a generated graph")
    sp.add_argument("family", help="path, cycle, complete, star, balanced-tree, grid, "
                    "hypercube, theta, ring-of-cliques, erdos-renyi, trap-chain, "
                    "caterpillar, triangle-strip")
    sp.add_argument("params", nargs="*")

    sp = sub.add_parser("oracle", parents=[common, graph_opts], help="brute-force ground truth")
    sp.add_argument("oracle", choices=("delta", "min-expansion", "cuts", "ehssc", "uumv",
                                       "min-cut"))
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--kappa", type=int, default=None)
    return parser


def _table(report: dict, prefix: str = "") -> list[str]:
    lines = []
    for key in sorted(report):
        val = report[key]
        name = f"{prefix}{key}"
        if isinstance(val, dict) and not {"exact", "approx"} >= set(val):
            lines.extend(_table(val, name + "."))
        elif isinstance(val, dict):
            lines.append(f"{name}\t{val['exact']} (~{val['approx']})")
        else:
            lines.append(f"{name}\t{json.dumps(val, sort_keys=True)}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(_table(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    try:
        if args.command == "gen":
            out.write(cmd_gen(args))
            return 0
        g = _read_graph(args.graph)
        if args.command == "oracle":
            need = {"cuts": ("s", "t", "k"), "ehssc": ("s", "t", "k"),
                    "uumv": ("s", "t", "r", "kappa"), "min-cut": ("s", "t")}
            missing = [f"--{a}" for a in need.get(args.oracle, ()) if getattr(args, a) is None]
            if missing:
                print(f"usage error: oracle {args.oracle} needs {' '.join(missing)}", file=err)
                return EXIT_USAGE
        report = {"command": args.command, **COMMANDS[args.command](g, Labels(g), args)}
        if args.seed is not None:
            report["seed"] = args.seed
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except InvariantError as exc:
        print(f"internal invariant failed: {exc}", file=err)
        return EXIT_INTERNAL
    except DomainError as exc:
        print(f"precondition violated: {exc}", file=err)
        return EXIT_DOMAIN
    out.write(render(report, args.format))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
