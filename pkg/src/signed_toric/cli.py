"""Command-line front end.

Exit status: 0 when the report was computed (whatever the verdict), 2 for
unreadable input, 3 when a size budget was exceeded.  ``oracle`` suites exit
1 when a cross-check fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from .binomial import Binomial
from .classify import (
    algorithm_ci_graph,
    cio_oracle,
    classify_cio,
    classify_cis,
    clique_sum_atoms,
    exhaustive_cis_check,
    is_ring_graph,
    necessary_conditions_ci,
)
from .graph import (
    GraphError,
    ParseError,
    apply_orientation,
    components,
    contract_ear,
    format_signed_graph,
    parse_signed_graph,
)
from .groebner import GREVLEX, LEX, BudgetExceeded
from .ideal import graver_basis, is_complete_intersection, r_invariant, r_invariant_exact, toric_ideal_basis
from .lattice import rank_formula
from .oracles import DEFAULT_SEED, SUITES, run_suite
from .walks import Walk, balanced_decomposition, binomial_of_walk, enumerate_primitive_walks, mu, unbalanced_positions, validate_walk

SCHEMA = "signed-toric/1"


class InputError(Exception):
    pass


# -- input -----------------------------------------------------------------------------

def _read_text(args) -> str:
    if args.inline is not None:
        if args.graph is not None:
            raise InputError("give either a graph file or --inline, not both")
        return args.inline.replace(";", "\n").replace(" / ", "\n")
    if args.graph is None:
        raise InputError("no graph given")
    if args.graph == "-":
        return sys.stdin.read()
    try:
        with open(args.graph, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _parse_orient(spec: str) -> dict[int, int]:
    tails = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        try:
            e, t = item.split(":")
            tails[int(e.lstrip("e"))] = int(t.lstrip("v"))
        except ValueError:
            raise InputError(f"bad --orient item {item!r}, expected edge:tail") from None
    return tails


def load_graph(args):
    text = _read_text(args)
    if args.all_plus and args.orient is not None:
        raise InputError("--all-plus and --orient are exclusive")
    if args.all_plus or args.orient is not None:
        # lets sign-free edge lines through; the shorthand overrides every sign below
        directive = "sign constant" if args.all_plus else "sign orient"
        lines = text.splitlines()
        for i, line in enumerate(lines):
            if line.split("#", 1)[0].strip():
                lines.insert(i + 1, directive)
                break
        text = "\n".join(lines)
    g = parse_signed_graph(text)
    if args.all_plus:
        g = g.constant_sign()
    elif args.orient is not None:
        g = apply_orientation(g, _parse_orient(args.orient))
    return g


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# -- reports ---------------------------------------------------------------------------

def _bin(b: Binomial, as_json: bool):
    return b.to_json() if as_json else str(b)


def cmd_rank(g, args):
    rep = rank_formula(g)
    return {"formula": rep.formula, "exact": rep.exact, "agree": rep.agree}


def cmd_walk_binomial(g, args):
    if args.walk_inline is not None:
        text = args.walk_inline
    elif args.walkfile is not None:
        try:
            with open(args.walkfile, encoding="utf-8") as fh:
                text = " ".join(line.split("#", 1)[0] for line in fh)
        except OSError as exc:
            raise InputError(str(exc)) from None
    else:
        raise InputError("walk-binomial needs a walk file or --walk")
    w = Walk.parse(text)
    validate_walk(w, g)
    out = {"walk": w.tokens(), "closed": w.closed, "mu": mu(w, g),
           "unbalanced_terms": [i + 1 for i in unbalanced_positions(w, g)]}
    if w.closed:
        dec = balanced_decomposition(w, g)
        out["sections"] = [s.tokens() for s in dec.sections]
        out["binomial"] = _bin(binomial_of_walk(w, g), args.json) if out["mu"] == 1 else None
    return out


def cmd_primitive_walks(g, args):
    cap = args.max_len if args.max_len else 2 * g.m
    walks = enumerate_primitive_walks(g, cap)
    return {"cap": cap, "count": len(walks),
            "walks": [{"walk": p.walk.tokens(), "binomial": _bin(p.binomial, args.json)} for p in walks]}


def cmd_graver(g, args):
    out = {"mode": args.mode}
    if args.mode in ("walks", "both"):
        gw = graver_basis(g, "walks", budget=args.budget)
        out["size"] = len(gw)
        out["binomials"] = [_bin(b, args.json) for b in gw]
    if args.mode in ("kernel", "both"):
        gk = graver_basis(g, "kernel", budget=args.budget)
        if args.mode == "kernel":
            out["size"] = len(gk)
            out["binomials"] = [_bin(b, args.json) for b in gk]
        else:
            out["agree"] = {b.key() for b in gw} == {b.key() for b in gk}
    return out


def cmd_groebner(g, args):
    order = LEX if args.order == "lex" else GREVLEX
    gb = toric_ideal_basis(g, order, budget=args.budget)
    return {"order": args.order, "size": len(gb), "basis": [_bin(b, args.json) for b in gb.binomials()]}


def cmd_r(g, args):
    return {"r": r_invariant(g), "r_exact": r_invariant_exact(g)}


def cmd_is_ci(g, args):
    v = is_complete_intersection(g, budget=args.budget)
    out = v.to_json()
    if not args.json:
        out = {"is_ci": v.is_ci, "r": v.r, "graver_size": len(v.graver),
               "graver": [str(b) for b in v.graver]}
        if v.is_ci:
            out["witness"] = [str(b) for b in v.witness]
    return out


def cmd_classify_cis(g, args):
    return classify_cis(g).to_json()


def cmd_classify_cio(g, args):
    out = {"cio": classify_cio(g, args.cap), "atoms": [sorted(a) for a in clique_sum_atoms(g, args.cap)]}
    if args.oracle:
        out["oracle"] = cio_oracle(g, args.budget or 16)
    return out


def cmd_ring_graph(g, args):
    return {"ring_graph": is_ring_graph(g)}


def cmd_ci_necessary(g, args):
    return necessary_conditions_ci(g).to_json()


def cmd_ci_algorithm(g, args):
    return algorithm_ci_graph(g.constant_sign(), trace=True).to_json()


def cmd_sweep_cis(g, args):
    res = exhaustive_cis_check(g, max_classes=args.max_classes, stop_early=args.stop_early)
    out = res.to_json()
    # classes of edge signs sigma, which decide walk parity but not the CI verdict
    out["edge_sign_classes"] = 2 ** (g.m - g.n + len(components(g)))
    if not args.json:
        out = {"verdict": res.all_ci, "classes": res.classes,
               "edge_sign_classes": out["edge_sign_classes"], "complete": res.complete,
               "failing_classes": [r.index for r in res.rows if not r.verdict.is_ci]}
    return out


def cmd_contract_ear(g, args):
    path = [int(t.lstrip("v")) for t in args.path.replace(",", " ").split()]
    con = contract_ear(g, path)
    return {"graph": format_signed_graph(con.graph) if not args.json else {
                "n": con.graph.n, "edges": [list(e) for e in con.graph.edges]},
            "vertex_map": list(con.vertex_map[1:]), "edge_map": list(con.edge_map[1:]),
            "new_edge": con.new_edge}


COMMANDS = {
    "rank": (cmd_rank, "incidence-matrix rank: formula, exact elimination and agreement"),
    "walk-binomial": (cmd_walk_binomial, "parity, balanced sections and binomial of a walk"),
    "primitive-walks": (cmd_primitive_walks, "enumerate primitive even closed walks"),
    "graver": (cmd_graver, "Graver basis (primitive binomials)"),
    "groebner": (cmd_groebner, "Groebner basis of the toric ideal"),
    "r": (cmd_r, "height r of the toric ideal"),
    "is-ci": (cmd_is_ci, "complete-intersection decision for the given sign"),
    "classify-cis": (cmd_classify_cis, "structural test: CI for every sign"),
    "classify-cio": (cmd_classify_cio, "structural test: CI for every orientation"),
    "ring-graph": (cmd_ring_graph, "ring-graph recognition"),
    "ci-necessary": (cmd_ci_necessary, "necessary CI conditions under the constant sign"),
    "ci-algorithm": (cmd_ci_algorithm, "inductive CI algorithm under the constant sign"),
    "sweep-cis": (cmd_sweep_cis, "CI decision on one sign of every sign class"),
    "contract-ear": (cmd_contract_ear, "contract an ear to a single edge"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signed-toric", description="Toric ideals of signed graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("graph", nargs="?", help=".sg file, or - for stdin")
    common.add_argument("--inline", help="graph text with ';' between lines")
    common.add_argument("--all-plus", action="store_true", help="constant sign +1 on every incidence")
    common.add_argument("--orient", nargs="?", const="", default=None, metavar="E:TAIL,...",
                        help="orientation sign; listed edges get the given tail, others their first endpoint")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--budget", type=_positive, default=None, help="edge budget for ideal computations")
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "walk-binomial":
            p.add_argument("walkfile", nargs="?", help="file holding 'v1 e1 v2 ...' tokens")
            p.add_argument("--walk", dest="walk_inline", help="walk tokens given inline")
        elif name == "primitive-walks":
            p.add_argument("--max-len", type=_positive, default=None, help="cap on edge terms (default 2m)")
        elif name == "graver":
            p.add_argument("--mode", choices=("walks", "kernel", "both"), default="walks")
        elif name == "groebner":
            p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
        elif name == "classify-cio":
            p.add_argument("--cap", type=_positive, default=4, help="largest clique separator tried")
            p.add_argument("--oracle", action="store_true", help="also run the CI decision on every orientation")
        elif name == "sweep-cis":
            p.add_argument("--max-classes", type=_positive, default=1 << 16)
            p.add_argument("--stop-early", action="store_true", help="stop at the first non-CI class")
        elif name == "contract-ear":
            p.add_argument("--path", required=True, help="ear vertices 'v0 v1 ... vt'")
    o = sub.add_parser("oracle", help="run a cross-check suite")
    o.add_argument("suite", choices=sorted(SUITES) + ["all"])
    o.add_argument("--seed", type=int, default=DEFAULT_SEED)
    o.add_argument("--json", action="store_true")
    return parser


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    for key, value in report.items():
        if key == "schema":
            continue
        if isinstance(value, list) and value and not isinstance(value[0], (int, float)):
            out.write(f"{key}:\n")
            for item in value:
                out.write(f"  {item}\n")
        elif isinstance(value, bool):
            out.write(f"{key}: {str(value).lower()}\n")
        elif isinstance(value, str) and "\n" in value:
            out.write(value if value.endswith("\n") else value + "\n")
        else:
            out.write(f"{key}: {value}\n")


def _run_oracle(args, out) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    if not args.json:
        out.write(f"seed: {args.seed}\n")
    results = [run_suite(n, args.seed) for n in names]
    if args.json:
        _emit({"schema": SCHEMA, "seed": args.seed, "suites": [r.to_json() for r in results]}, True, out)
    else:
        for r in results:
            out.write(f"{r.name}: {'pass' if r.ok else 'FAIL'} ({r.checked} checks, {r.elapsed:.1f}s)\n")
            for f in r.failures[:10]:
                out.write(f"  {f}\n")
    return 0 if all(r.ok for r in results) else 1


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "oracle":
        return _run_oracle(args, out)
    handler = COMMANDS[args.command][0]
    try:
        g = load_graph(args)
        report = handler(g, args)
    except (InputError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except GraphError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.json:
        report = {"schema": SCHEMA, "command": args.command, **report}
    _emit(report, args.json, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
