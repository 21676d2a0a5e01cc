"""Command line interface of the Timoshenko spectral laboratory.

Usage:
    python -m lab_app.cli symbol --a 2 --gamma 1 --out report.json
    python -m lab_app.cli decay --config reference.json --out reports.csv
"""
import argparse
import logging
import sys

from lab_app.commands.besov import BesovSvc
from lab_app.commands.decay import DecaySvc
from lab_app.commands.energy import EnergySvc
from lab_app.commands.evolve import EvolveSvc
from lab_app.commands.inequalities import InequalitiesSvc
from lab_app.commands.symbol import SymbolSvc
from lab_app.common.lab_type import LabCommandName, LabOutput
from timpy.tools.util.logtools import DEFAULT_LOG_PATH

COMMANDS = {
    LabCommandName.Besov: BesovSvc,
    LabCommandName.Symbol: SymbolSvc,
    LabCommandName.Evolve: EvolveSvc,
    LabCommandName.Energy: EnergySvc,
    LabCommandName.Decay: DecaySvc,
    LabCommandName.Inequalities: InequalitiesSvc,
}
# Command-line flags whose destination differs from the parameter name
COMMON_ARGS = ("command", "log_path", "quiet")


# .............................................................................
def _add_common(parser):
    parser.add_argument(
        "--log_path", type=str, default=DEFAULT_LOG_PATH,
        help="Directory for the log file")
    parser.add_argument(
        "--quiet", action="store_true",
        help="Do not copy log messages to the console")


# .............................................................................
def build_parser():
    """Build the argument parser with one subparser per command.

    Returns:
        argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog="timpy-lab",
        description="Spectral laboratory for the dissipative Timoshenko system.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    besov = subparsers.add_parser(
        LabCommandName.Besov, help=BesovSvc.COMMAND["description"])
    besov.add_argument(
        "--input", type=str, required=True,
        help="Field CSV file with columns x, v, u, z, y")
    besov.add_argument(
        "--component", type=str, default="v", choices=("v", "u", "z", "y"),
        help="Field component to measure")
    besov.add_argument("--s", type=str, default="0", help="Regularity index")
    besov.add_argument(
        "--p", type=str, default="2", help="Integrability exponent, real or inf")
    besov.add_argument(
        "--r", type=str, default="1", help="Summability exponent, real or inf")
    besov.add_argument(
        "--homogeneous", type=str, default="false", choices=("true", "false"),
        help="Measure in the homogeneous space")

    symbol = subparsers.add_parser(
        LabCommandName.Symbol, help=SymbolSvc.COMMAND["description"])
    symbol.add_argument("--a", type=str, default="1", help="Wave speed a > 0")
    symbol.add_argument("--gamma", type=str, default="1", help="Damping gamma > 0")
    symbol.add_argument(
        "--xi-min", dest="xi_min", type=str, default=None, help="Smallest frequency")
    symbol.add_argument(
        "--xi-max", dest="xi_max", type=str, default=None, help="Largest frequency")
    symbol.add_argument(
        "--points", type=str, default=None, help="Number of sweep frequencies")
    symbol.add_argument(
        "--eta", type=str, default="auto", choices=("1", "2", "auto"),
        help="Dissipation rate profile")
    symbol.add_argument("--out", type=str, default=None, help="JSON report file")
    symbol.add_argument(
        "--csv", type=str, default=None, help="Per-frequency CSV companion file")

    evolve = subparsers.add_parser(
        LabCommandName.Evolve, help=EvolveSvc.COMMAND["description"])
    evolve.add_argument(
        "--mode", type=str, default=None, choices=("linear", "nonlinear", "duhamel"),
        help="Evolution path, the configured mode when omitted")
    evolve.add_argument(
        "--config", type=str, required=True, help="Experiment configuration JSON")
    evolve.add_argument(
        "--out", type=str, required=True, help="Trajectory output directory")
    evolve.add_argument(
        "--energies", type=str, default=None, help="Energy ledger CSV file")

    energy = subparsers.add_parser(
        LabCommandName.Energy, help=EnergySvc.COMMAND["description"])
    energy.add_argument(
        "--input", type=str, required=True, help="Trajectory directory")
    energy.add_argument("--out", type=str, default=None, help="Energy ledger CSV file")

    decay = subparsers.add_parser(
        LabCommandName.Decay, help=DecaySvc.COMMAND["description"])
    decay.add_argument(
        "--config", type=str, required=True, help="Experiment configuration JSON")
    decay.add_argument("--out", type=str, default=None, help="Decay report CSV file")

    ineq = subparsers.add_parser(
        LabCommandName.Inequalities, help=InequalitiesSvc.COMMAND["description"])
    ineq.add_argument("--length", type=str, default=None, help="Domain length")
    ineq.add_argument("--n", type=str, default=None, help="Number of grid points")
    ineq.add_argument("--count", type=str, default=None, help="Random fields")
    ineq.add_argument("--seed", type=str, default=None, help="Random seed")

    for sub in subparsers.choices.values():
        _add_common(sub)
    return parser


# .............................................................................
def main(argv=None):
    """Run one lab command.

    Args:
        argv (list of str): arguments, sys.argv[1:] when None.

    Returns:
        int: 0 on success; 1 on errors, or for `decay` when a fit fails.
    """
    args = build_parser().parse_args(argv)
    svc = COMMANDS[args.command]
    kwargs = {
        key: val for key, val in vars(args).items() if key not in COMMON_ARGS}
    logger = svc.init_logger(
        log_path=args.log_path, log_console=not args.quiet, log_level=logging.INFO)

    passed = True
    if args.command == LabCommandName.Besov:
        output, table = BesovSvc.compute_norm(logger=logger, **kwargs)
        if table is not None:
            print(f"norm,{output.response['output']['norm']!r}")
            print(table.to_csv(index=False), end="")
    elif args.command == LabCommandName.Symbol:
        output = SymbolSvc.analyze(logger=logger, **kwargs)
    elif args.command == LabCommandName.Evolve:
        output = EvolveSvc.evolve(logger=logger, **kwargs)
    elif args.command == LabCommandName.Energy:
        output = EnergySvc.report(logger=logger, **kwargs)
    elif args.command == LabCommandName.Decay:
        output, passed = DecaySvc.fit_rates(logger=logger, **kwargs)
    else:
        output = InequalitiesSvc.fit_constants(logger=logger, **kwargs)

    if output.has_errors:
        LabOutput.print_output(output.response)
        return 1
    if args.command != LabCommandName.Besov:
        print(output.to_json())
    return 0 if passed else 1


# .............................................................................
if __name__ == "__main__":
    sys.exit(main())
