"""Command-line entry point.

Exit codes: 0 success, 1 precondition or parameter error, 2 verification defect,
3 IO or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from . import io
from .adversary import build_gadget
from .bounds import bound_row
from .colours import check_colouring
from .constructive import PreconditionError, colour_sp, precondition_report
from .instances import random_lists
from .oracle import BudgetExceeded, Colouring, solve_generic, verify_gadget
from .sp_core import (
    Finite,
    SPError,
    SPSyntaxError,
    format_term,
    girth,
    parse_sp_expression,
    random_sp_term,
    realize,
    series_stretch,
)

OK, PRECONDITION, DEFECT, IO_ERROR = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    out: Optional[str] = None
    k: Optional[int] = None
    m: Optional[int] = None
    e: Optional[int] = None
    seed: int = 0
    budget: int = 10**6
    trace: Optional[str] = None
    workers: int = 1

    def validate(self) -> None:
        for name in ("k", "m", "e"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise PreconditionError(f"--{name} must be positive, got {value}")
        if self.k is not None and self.k < 3:
            raise PreconditionError(f"--k must be >= 3, got {self.k}")
        if self.workers < 1 or self.budget < 1:
            raise PreconditionError("--workers and --budget must be >= 1")


def _emit(obj, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(io.dumps(obj))
    else:
        io.write_json(obj, out)


def _say(args, text: str) -> None:
    # keep stdout clean for JSON when no --out is given
    stream = sys.stderr if getattr(args, "out", None) in (None, "-") else sys.stdout
    print(text, file=stream)


def _load_graph(args):
    if args.graph:
        return io.graph_from_json(io.read_json(args.graph))
    if args.expr:
        term = parse_sp_expression(args.expr)
    else:
        term = random_sp_term(args.random, args.seed)
    if args.stretch > 1:
        term = series_stretch(term, args.stretch)
    args.term_text = format_term(term)
    return realize(term)


def cmd_realize(args) -> int:
    g = _load_graph(args)
    gv = girth(g)
    _emit(io.graph_to_json(g), args.out)
    if getattr(args, "term_text", None):
        _say(args, f"term: {args.term_text}")
    _say(args, f"vertices: {len(g.vertices)}  edges: {len(g.edges)}  terminals: {g.terminals}")
    _say(args, f"girth: {gv.g if isinstance(gv, Finite) else 'acyclic'}")
    return OK


def cmd_colour(args) -> int:
    g = _load_graph(args)
    if args.lists:
        lists = io.lists_from_json(io.read_json(args.lists))
    elif args.random_lists:
        universe = args.universe or 6 * args.m
        if args.random_lists > universe:
            raise PreconditionError(f"--random-lists {args.random_lists} exceeds the colour universe {universe}")
        lists = random_lists(g.vertices, args.random_lists, universe, args.seed)
    else:
        raise PreconditionError("colour needs --lists FILE or --random-lists SIZE")
    if args.solver == "generic":
        outcome = solve_generic(g, lists, args.m, args.budget)
        if isinstance(outcome, BudgetExceeded):
            _say(args, f"budget exhausted after {outcome.nodes_explored} nodes")
            return PRECONDITION
        if not isinstance(outcome, Colouring):
            _say(args, "no m-fold colouring exists for these lists")
            return PRECONDITION
        phi, events = outcome.phi, None
    else:
        report = precondition_report(g, lists, args.m, args.k)
        if not report.ok:
            print(f"precondition failed for k={args.k}, m={args.m}:\n{report}", file=sys.stderr)
            return PRECONDITION
        events = []
        phi = colour_sp(g, lists, args.m, args.k, trace=events)
    check = check_colouring(g, lists, phi, args.m)
    if not check.ok or set(phi) != set(g.vertices):
        print(f"internal error: produced colouring is invalid\n{check}", file=sys.stderr)
        return DEFECT
    _emit(io.colouring_to_json(phi, args.m), args.out)
    if args.trace and events is not None:
        trace = {"trace": [ev.to_json() for ev in events]}
        if args.trace == "-":
            sys.stderr.write(io.dumps(trace))
        else:
            io.write_json(trace, args.trace)
    _say(args, f"valid {args.m}-fold colouring of {len(g.vertices)} vertices")
    return OK


def cmd_gadget(args) -> int:
    bundle = build_gadget(args.k, args.m, args.e)
    _emit(io.gadget_to_json(bundle), args.out)
    p = bundle.params
    _say(args, f"gadget k={p['k']} m={p['m']} e={p['e']}: {p['p']} paths of length {p['l']}, "
               f"{len(bundle.graph.vertices)} vertices")
    return OK


def cmd_verify_gadget(args) -> int:
    bundle = io.gadget_from_json(io.read_json(args.gadget))
    cert = verify_gadget(bundle, workers=args.workers)
    if args.out:
        io.write_json(cert.to_json(), args.out)
    if cert.structure_problems:
        print("malformed bundle: " + "; ".join(cert.structure_problems))
        return DEFECT
    good = cert.pairs_checked - len(cert.defects)
    print(f"{good}/{cert.pairs_checked} uncolourable ({cert.runtime_ms} ms)")
    for d in cert.defects[:5]:
        print(f"defect: S={sorted(d['S'])} T={sorted(d['T'])} has a pinned colouring")
    return OK if cert.verified else DEFECT


def cmd_bound(args) -> int:
    print(bound_row(args.k))
    return OK


def cmd_suite(args) -> int:
    from .suite import corrupt_bundle, run_suite

    results = run_suite(args.profile, mutate=corrupt_bundle if args.corrupt else None)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return OK if not failed else DEFECT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spchoose", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("expr", nargs="?", help="SP expression, e.g. 'P(e^2,e^3)'")
        src.add_argument("--graph", help="graph JSON file")
        src.add_argument("--random", type=int, metavar="LEAVES", help="random SP term with LEAVES edges")
        p.add_argument("--stretch", type=int, default=1, help="subdivide every edge into this many")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out")

    p = sub.add_parser("realize", help="realize an SP expression, report girth")
    graph_source(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("colour", help="m-fold list colouring of an SP graph of girth >= k")
    graph_source(p)
    p.add_argument("--lists", help="lists JSON file")
    p.add_argument("--random-lists", type=int, metavar="SIZE", help="seeded random lists of this size")
    p.add_argument("--universe", type=int, help="colour universe for --random-lists (default 6m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--solver", choices=("sp", "generic"), default="sp")
    p.add_argument("--budget", type=int, default=10**6, help="node budget for --solver generic")
    p.add_argument("--trace", nargs="?", const="-", help="write the removal sequence (default stderr)")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("gadget", help="build a non-choosable bundle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("verify-gadget", help="certify every designated path of a bundle")
    p.add_argument("gadget")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="certificate JSON")
    p.set_defaults(func=cmd_verify_gadget)

    p = sub.add_parser("bound", help="exact bound 2 + 1/q for girth class k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("suite", help="run the acceptance checks")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--corrupt", action="store_true", help="inject a defective gadget (harness self-test)")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        out=getattr(args, "out", None),
        k=getattr(args, "k", None),
        m=getattr(args, "m", None),
        e=getattr(args, "e", None),
        seed=getattr(args, "seed", 0),
        budget=getattr(args, "budget", 10**6),
        trace=getattr(args, "trace", None),
        workers=getattr(args, "workers", 1),
    )
    try:
        config.validate()
        return args.func(args)
    except SPSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return IO_ERROR
    except (io.FormatError, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return IO_ERROR
    except (PreconditionError, SPError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
