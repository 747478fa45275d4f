"""Command line interface.

Every command reads an optional problem file (see io.py for the format),
computes one report, and prints it to stdout, as text by default or as
JSON under --json.  Diagnostics go to stderr.  Exit codes:

    0  success (and every checked identity held)
    1  a checked identity failed
    2  unreadable or invalid input
    3  the map has fixed points away from subdivision vertices
    4  a normal map is not hyperbolic, or no localization regime applies
    5  the vertex functional is degenerate on an edge
    6  the vertex map is not simplicial
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .complexes import canonical_tuple
from .errors import (
    CellSpaceUnsupportedError,
    DegenerateInputError,
    FixedPointNotSimplicialError,
    GenericityError,
    InvalidComplexError,
    LefscalcError,
    NoApplicableRegimeError,
    NonSimplicialMapError,
    NotHyperbolicError,
    NotLocalizableError,
    ParseError,
)
from .euler import ConstructibleFunction, chi_c, euler_integral, pushforward
from .exact import GaussianRational, Rat, parse_rational
from .fixedpoint import localization_report
from .flags import block_words, example_3_9, fixed_locus_cellspace, flag_cellspace
from .homology import homology_traces
from .morse import cc_table, index_sum, lefschetz_cycle_table
from .reports import (
    CcReport,
    ChiReport,
    CycleTableJson,
    FlagModelReport,
    IndexCheckReport,
    IntegralReport,
    LefschetzReport,
    LocalizationReport,
    PushforwardReport,
    WorkedExampleReport,
    print_report,
)
from .verify import VerifyConfig, run_all

_EXIT_RULES = (
    ((FixedPointNotSimplicialError,), 3),
    ((NotHyperbolicError, NotLocalizableError, NoApplicableRegimeError), 4),
    ((GenericityError,), 5),
    ((NonSimplicialMapError,), 6),
    (
        (
            ParseError,
            InvalidComplexError,
            CellSpaceUnsupportedError,
            DegenerateInputError,
        ),
        2,
    ),
)


def exit_code_for(exc: LefscalcError) -> int:
    for types, code in _EXIT_RULES:
        if isinstance(exc, types):
            return code
    return 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="problem file to read")
    common.add_argument(
        "--json", action="store_true", help="print the report as JSON"
    )
    common.add_argument(
        "--seed", type=int, default=0, help="seed for seeded commands"
    )
    top = argparse.ArgumentParser(
        prog="lefscalc",
        description="exact fixed-point traces on simplicial and cell models",
    )
    sub = top.add_subparsers(dest="command", required=True)

    sub.add_parser("chi", parents=[common],
                   help="compactly supported Euler characteristic")
    sub.add_parser("integrate", parents=[common],
                   help="Euler integral of the values table")
    sub.add_parser(
        "lefschetz", parents=[common],
        help="global trace; localized over fixed components when the "
             "problem carries support, traces, or normal data",
    )
    morse = sub.add_parser("morse", parents=[common],
                           help="cycle table at one fixed component")
    morse.add_argument("--component", type=int, default=0,
                       help="fixed component index (default 0)")
    sub.add_parser("cc", parents=[common],
                   help="multiplicity table of the values for the functional")
    sub.add_parser("index-check", parents=[common],
                   help="compare the table total with the Euler integral")
    sub.add_parser("pushforward", parents=[common],
                   help="push the values along the map to its target")
    flag = sub.add_parser("flag-model", parents=[common],
                          help="cell model of a flag manifold or fixed locus")
    flag.add_argument("--n", type=int, required=True, help="ambient dimension")
    flag.add_argument("--blocks", default=None,
                      help="comma separated eigenvalue multiplicities")
    example = sub.add_parser("example-3-9", parents=[common],
                             help="worked example: fixed spheres against the "
                                  "big-cell divisor")
    example.add_argument("--ratio", default="2",
                         help="eigenvalue ratio surrogate (default 2)")
    verify = sub.add_parser("verify", parents=[common],
                            help="run the deterministic identity battery")
    verify.add_argument("--cases", type=int, default=25,
                        help="random cases per check (default 25)")
    return top


def _load(args) -> io.Problem:
    if not args.input:
        raise ParseError("this command needs --input PATH")
    return io.load(args.input)


def _need_phi(problem: io.Problem) -> ConstructibleFunction:
    if problem.phi is not None:
        return problem.phi
    return ConstructibleFunction.indicator(problem.space)


def _need_ell(problem: io.Problem):
    if problem.ell is None:
        raise ParseError("this command needs an 'ell' functional in the input")
    return problem.ell


def _gauss(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(Rat(x), Rat(0))


def _deep_tuple(x):
    if isinstance(x, (list, tuple)):
        return tuple(_deep_tuple(y) for y in x)
    return x


def cmd_chi(args):
    problem = _load(args)
    return ChiReport(chi=chi_c(problem.space)), True


def cmd_integrate(args):
    problem = _load(args)
    return IntegralReport(integral=euler_integral(_need_phi(problem))), True


def cmd_lefschetz(args):
    problem = _load(args)
    if problem.spec is None:
        raise ParseError("the lefschetz command needs a self-map block")
    traced = (
        problem.support is not None
        or problem.traces is not None
        or problem.normal is not None
    )
    if traced:
        rep = localization_report(problem.traced())
        components = tuple(
            {
                "component": c["component"],
                "cells": _deep_tuple(c["cells"]),
                "normal_dim": c["normal_dim"],
                "sign": c["sign"],
                "integral": c["integral"],
                "signed_contribution": c["signed_contribution"],
            }
            for c in rep["components"]
        )
        report = LocalizationReport(
            global_trace=_gauss(rep["global_trace"]),
            sum_of_local=_gauss(rep["sum_of_local"]),
            equal=rep["equal"],
            components=components,
        )
        return report, rep["equal"]
    traces = homology_traces(problem.spec)
    total = sum(((-1) ** k) * t for k, t in enumerate(traces))
    report = LefschetzReport(
        global_trace=_gauss(total),
        degree_traces=tuple((k, _gauss(t)) for k, t in enumerate(traces)),
    )
    return report, True


def cmd_morse(args):
    problem = _load(args)
    if problem.spec is None:
        raise ParseError("the morse command needs a self-map block")
    ell = _need_ell(problem)
    result = lefschetz_cycle_table(problem.traced(), args.component, ell)
    return (
        CycleTableJson(
            component=result.component,
            regime=result.regime,
            sign=result.sign,
            table=tuple(result.table.sorted_entries()),
            total=result.total(),
        ),
        True,
    )


def cmd_cc(args):
    problem = _load(args)
    table = cc_table(_need_phi(problem), _need_ell(problem))
    return (
        CcReport(table=tuple(table.sorted_entries()), total=table.total()),
        True,
    )


def cmd_index_check(args):
    problem = _load(args)
    phi = _need_phi(problem)
    total = index_sum(phi, _need_ell(problem))
    integral = euler_integral(phi)
    equal = total == integral
    return (
        IndexCheckReport(index_sum=total, integral=integral, equal=equal),
        equal,
    )


def cmd_pushforward(args):
    problem = _load(args)
    if problem.push_map is None:
        raise ParseError(
            "the pushforward command needs a map block with a target"
        )
    phi = _need_phi(problem)
    pushed = pushforward(problem.push_map, phi)
    values = tuple(
        (_deep_tuple(canonical_tuple(cell)), value)
        for cell, value in pushed.sorted_items()
    )
    source_integral = euler_integral(phi)
    target_integral = euler_integral(pushed)
    equal = source_integral == target_integral
    return (
        PushforwardReport(
            values=values,
            source_integral=source_integral,
            target_integral=target_integral,
            equal=equal,
        ),
        equal,
    )


def _parse_blocks(raw: str) -> tuple:
    try:
        blocks = tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise ParseError(f"cannot parse block sizes {raw!r}")
    return blocks


def cmd_flag_model(args):
    if args.blocks:
        blocks = _parse_blocks(args.blocks)
        space = fixed_locus_cellspace(args.n, blocks)
        component_count = len(block_words(blocks))
    else:
        blocks = ()
        space = flag_cellspace(args.n).space
        component_count = 1
    return (
        FlagModelReport(
            n=args.n,
            blocks=blocks,
            cell_count=len(space.all_cells()),
            chi=chi_c(space),
            component_count=component_count,
        ),
        True,
    )


def cmd_example_3_9(args):
    example = example_3_9(parse_rational(args.ratio))
    components = tuple(
        (p.label, p.family, p.contained, p.points,
         example.contribution(p.label))
        for p in example.patterns
    )
    support = example.problem.support
    return (
        WorkedExampleReport(
            components=components,
            total=example.total(),
            chi_of_divisor=chi_c(support),
        ),
        True,
    )


def cmd_verify(args):
    config = VerifyConfig(seed=args.seed, cases=args.cases)
    report = run_all(config)
    return report, report.all_ok


_COMMANDS = {
    "chi": cmd_chi,
    "integrate": cmd_integrate,
    "lefschetz": cmd_lefschetz,
    "morse": cmd_morse,
    "cc": cmd_cc,
    "index-check": cmd_index_check,
    "pushforward": cmd_pushforward,
    "flag-model": cmd_flag_model,
    "example-3-9": cmd_example_3_9,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        report, ok = handler(args)
    except LefscalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(print_report(report, args.json))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
