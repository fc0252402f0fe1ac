"""Command-line front end.

Exit codes: 0 success, 1 unreadable input, 2 size bound exceeded,
3 inconsistent data (including a failed self-test).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .core import BRUTE_FORCE_MAX_N, METHODS, compute_q
from .derived import (
    DEFAULT_P_GRID,
    RECONSTRUCTION_RULES,
    basic_invariants,
    connected_counts,
    deck,
    frange_exact,
    independence,
    reconstruct,
    reliability,
    reliability_csv,
)
from .errors import BoundsError, InconsistencyError, ParseError, QPolyError
from .graph import Graph
from .io import parse, to_graph6
from .poly import BiPoly
from .treedecomp import parse_decomposition


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def p_grid(text: str) -> list[Fraction]:
    """``start:stop:step`` with ``stop`` excluded, all exact rationals."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must look like start:stop:step, e.g. 0:1:1/100")
    start, stop, step = (rational(p) for p in parts)
    try:
        grid = frange_exact(start, stop, step)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if any(not 0 <= p <= 1 for p in grid):
        raise argparse.ArgumentTypeError("grid points must lie in [0, 1]")
    return grid


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _read_text(path: str) -> str:
    try:
        return _read(path).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8: {exc}") from None


def load_graph(args) -> Graph:
    return parse(args.format, _read(args.input), args.n)


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin (default)")
    p.add_argument("--format", choices=("edge-list", "graph6"), default="edge-list")
    p.add_argument("--n", type=int, help="vertex count (edge lists: adds isolated vertices)")


def _add_method_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--td", metavar="FILE", help="tree decomposition for --method treewidth")


def _compute(args, G: Graph) -> BiPoly:
    if args.method == "brute" and G.n > BRUTE_FORCE_MAX_N:
        raise BoundsError(f"--method brute is limited to n <= {BRUTE_FORCE_MAX_N}")
    td = None
    if args.td:
        if args.method != "treewidth":
            raise ParseError("--td requires --method treewidth")
        td = parse_decomposition(_read_text(args.td))
    return compute_q(G, args.method, td=td).poly


def _invariants(Q: BiPoly) -> dict:
    basic = basic_invariants(Q)
    ind = independence(Q)
    counts = connected_counts(Q)
    return {
        "n": basic.n,
        "edges": basic.edges,
        "components": basic.components,
        "alpha": ind.alpha,
        "independence_polynomial": str(ind.polynomial),
        "connected_subgraph_polynomial": str(counts.S),
        "separating_sets": counts.total,
    }


def cmd_compute(args) -> int:
    Q = _compute(args, load_graph(args))
    if args.output == "json":
        if args.invariants:
            print(json.dumps({"polynomial": Q.to_dict(), "invariants": _invariants(Q)}))
        else:
            print(Q.to_json())
    else:
        print(Q)
        if args.invariants:
            for key, value in _invariants(Q).items():
                print(f"{key}: {value}")
    return 0


def cmd_eval(args) -> int:
    Q = _compute(args, load_graph(args))
    print(Q.eval(args.x, args.y))
    return 0


def cmd_reliability(args) -> int:
    Q = _compute(args, load_graph(args))
    if args.p is not None:
        if not 0 <= args.p <= 1:
            raise ParseError("--p must lie in [0, 1]")
        dist = reliability(Q, args.p)
        print("p,k,P_k")
        for k, pk in enumerate(dist.probs):
            print(f"{dist.p},{k},{pk}")
        print(f"# residual connectedness P_1 = {dist.residual_connectedness}", file=sys.stderr)
    else:
        sys.stdout.write(reliability_csv(Q, args.p_grid, exact=args.exact))
    return 0


def cmd_deck(args) -> int:
    G = load_graph(args)
    for entry in deck(G).entries:
        print(entry.to_json())
    return 0


def _load_deck(paths: Sequence[str]) -> list[BiPoly]:
    """Each file holds one polynomial, a JSON list of them, or one per line."""
    entries: list[BiPoly] = []
    for path in paths:
        text = _read_text(path).strip()
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            entries += [BiPoly.from_json(line) for line in text.splitlines() if line.strip()]
            continue
        items = data if isinstance(data, list) else [data]
        entries += [BiPoly.from_dict(item) for item in items]
    return entries


def cmd_reconstruct(args) -> int:
    Q = reconstruct(_load_deck(args.deck or ["-"]), rule=args.rule)
    print(Q.to_json() if args.output == "json" else Q)
    return 0


def cmd_search(args) -> int:
    from .bridges import distinguishing_search

    report = distinguishing_search(args.family, args.n, args.comparator, cumulative=args.cumulative)
    print(report.to_json())
    return 0


def cmd_enumerate(args) -> int:
    from .generate import enumerate_graphs

    for G in enumerate_graphs(args.family, args.n):
        print(to_graph6(G))
    return 0


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    failed = 0
    for result in run_all(args.criteria):
        print(result.line(), flush=True)
        failed += not result.passed
    print(f"{failed} failing criteria" if failed else "all criteria pass")
    return InconsistencyError.exit_code if failed else 0


class _Parser(argparse.ArgumentParser):
    # usage errors share the exit code of unreadable input
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ParseError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qpoly",
        description="Exact computation of the subgraph component polynomial Q(G;x,y).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print Q(G;x,y)")
    _add_graph_args(p)
    _add_method_arg(p)
    p.add_argument("--output", choices=("human", "json"), default="human")
    p.add_argument("--invariants", action="store_true", help="also print invariants read off Q")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("eval", help="evaluate Q at an exact rational point")
    _add_graph_args(p)
    _add_method_arg(p)
    p.add_argument("--x", type=rational, required=True)
    p.add_argument("--y", type=rational, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reliability", help="component-count distribution under vertex failure (CSV)")
    _add_graph_args(p)
    _add_method_arg(p)
    p.add_argument("--p", type=rational, help="single survival probability; prints exact rationals")
    p.add_argument("--p-grid", type=p_grid, default=list(DEFAULT_P_GRID),
                   help="start:stop:step, stop excluded (default 0:1:1/100)")
    p.add_argument("--exact", action="store_true", help="print grid rows as exact rationals")
    p.set_defaults(func=cmd_reliability)

    p = sub.add_parser("deck", help="Q of every vertex-deleted subgraph, one JSON polynomial per line")
    _add_graph_args(p)
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("reconstruct", help="recover Q(G) from a deck of JSON polynomials")
    p.add_argument("deck", nargs="*", help="files with deck polynomials ('-' or none for stdin)")
    p.add_argument("--rule", choices=RECONSTRUCTION_RULES, default="corrected")
    p.add_argument("--output", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("search", help="pairs separated by one polynomial but not another (JSON)")
    p.add_argument("--family", choices=("free-trees", "trees", "all-graphs"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--comparator", choices=("Q", "matching", "characteristic", "tutte"), default="Q")
    p.add_argument("--cumulative", action="store_true", help="search every order from 1 to n")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("enumerate", help="one graph6 line per isomorphism class")
    p.add_argument("--family", choices=("free-trees", "trees", "all-graphs"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--criteria", type=int, nargs="*", help="subset of criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QPolyError as exc:
        print(f"qpoly: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, IndexError) as exc:
        print(f"qpoly: error: {exc}", file=sys.stderr)
        return ParseError.exit_code


if __name__ == "__main__":
    sys.exit(main())
