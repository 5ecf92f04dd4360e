"""Command-line entry point.

Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
3 numerical failure (singular parameters or system).
"""

from __future__ import annotations

import argparse
import sys

from . import commands
from .errors import NumericalError, ScenarioError, ValidationError
from .scenario import parse_scenario

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="out", help="output directory (default: out)")
    common.add_argument("--svg", action="store_true", help="also write SVG plots")
    scenario = argparse.ArgumentParser(add_help=False)
    scenario.add_argument("--scenario", required=True, help="scenario YAML/JSON file")

    parser = _Parser(prog="retail-cournot", description="Multi-market Cournot dynamics laboratory")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", parents=[common, scenario], help="iterate the naive map")
    p.add_argument("--steps", type=int)
    p.add_argument("--mode", choices=["raw", "clipped"])

    sub.add_parser("equilibrium", parents=[common, scenario], help="Cournot-Nash point and profits")
    sub.add_parser("stability", parents=[common, scenario], help="Jacobian spectrum and stability class")

    p = sub.add_parser("bifurcate", parents=[common, scenario], help="scan d and sample the attractor")
    p.add_argument("--d-lo", type=float, required=True)
    p.add_argument("--d-hi", type=float, required=True)
    p.add_argument("--points", type=int)
    p.add_argument("--transient", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--mode", choices=["raw", "clipped"])

    p = sub.add_parser("zone", parents=[common], help="duopoly stability interval per market count")
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=10)

    p = sub.add_parser("compare", parents=[common, scenario], help="retail model vs independent single markets")
    p.add_argument("--steps", type=int)
    p.add_argument("--mode", choices=["raw", "clipped"])
    return parser


def _dispatch(args):
    if args.command == "zone":
        return commands.cmd_zone(args.m_min, args.m_max, args.out, args.svg)
    scenario = parse_scenario(args.scenario)
    for message in scenario.report.messages():
        print(f"warning: {message}", file=sys.stderr)
    if args.command == "simulate":
        return commands.cmd_simulate(scenario, args.steps, args.mode, args.out, args.svg)
    if args.command == "equilibrium":
        return commands.cmd_equilibrium(scenario, args.out)
    if args.command == "stability":
        return commands.cmd_stability(scenario, args.out)
    if args.command == "bifurcate":
        return commands.cmd_bifurcate(
            scenario, args.d_lo, args.d_hi, args.points, args.transient, args.samples, args.out, args.mode, args.svg
        )
    return commands.cmd_compare(scenario, args.steps, args.out, args.mode, args.svg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run = _dispatch(args)
    except ValidationError as err:
        for message in err.report.messages(hard_only=True):
            print(f"error: {message}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ScenarioError, ValueError, OSError, ImportError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    print(run.summary)
    for path in run.files:
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
