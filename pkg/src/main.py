#!/usr/bin/env python3
"""
Main entry point for the fink toolkit.

Parses the command line, configures logging on stderr and runs one
subcommand. JSON results go to stdout; progress and logs go to stderr.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from src.models.command import CommandName
from src.services.command_service import CommandService
from src.utils.config import load_config

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: str, log_file: Optional[str] = None) -> None:
    """
    Configure the root logger once per run. Existing handlers are replaced
    so repeated in-process runs keep writing to the current stderr.
    """
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=_nonnegative, required=True, help="Ambient level k")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized commands (default 0)")
    common.add_argument("--quiet", action="store_true", help="Suppress progress output on stderr")
    common.add_argument("--config", default=None, help="Path to the YAML configuration")

    parser = argparse.ArgumentParser(prog="fink", description="FIN_k staircase algebra and canonization")
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser(CommandName.COUNT.value, parents=[common], help="Exact counts")
    count.add_argument("--which", choices=["a", "c", "t", "s", "fib"], default="t")

    enumerate_ = sub.add_parser(CommandName.ENUMERATE.value, parents=[common], help="Staircase tuples")
    enumerate_.add_argument("--symmetric", action="store_true")
    enumerate_.add_argument("--linked-free", action="store_true")

    build = sub.add_parser(CommandName.SOS_BUILD.value, parents=[common], help="Build an sos sequence")
    build.add_argument("--generators", type=_positive, required=True, help="Length of the standard basis")
    build.add_argument("--length", type=_positive, required=True, help="Number of sos terms")

    check = sub.add_parser(CommandName.SOS_CHECK.value, parents=[common], help="Test the sos predicate")
    check.add_argument("--vector", required=True, help="JSON array or digit string")

    decide = sub.add_parser(CommandName.DECIDE.value, parents=[common], help="Decide a k-equation")
    decide.add_argument("--equation", required=True)
    relation = decide.add_mutually_exclusive_group()
    relation.add_argument("--values", help="StaircaseValues as JSON")
    relation.add_argument("--partition", help="Partition JSON file")
    domain = decide.add_mutually_exclusive_group()
    domain.add_argument("--sequence", help="BlockSequence JSON file")
    domain.add_argument("--length", type=_positive, help="Use the standard basis of this length")

    canonize = sub.add_parser(CommandName.CANONIZE.value, parents=[common], help="Canonize a partition")
    canonize.add_argument("--partition", required=True, help="Partition JSON file")
    canonize.add_argument("--m", type=_positive, required=True, help="Witness length")
    mode = canonize.add_mutually_exclusive_group()
    mode.add_argument("--fast-k1", action="store_true", help="Classifier-equation fast path (k=1)")
    mode.add_argument("--symmetric", action="store_true", help="Fold onto disjointly supported sos's")

    estimate = sub.add_parser(CommandName.ESTIMATE_N.value, parents=[common], help="Empirical n(m)")
    estimate.add_argument("--m", type=_positive, required=True)
    estimate.add_argument("--trials", type=_nonnegative, required=True)
    estimate.add_argument("--max-n", type=_positive, default=None)

    net = sub.add_parser(CommandName.NET.value, parents=[common], help="c0 net parameters and checks")
    net.add_argument("--delta", type=float, default=None)
    net.add_argument("--dim", type=_positive, default=6)
    net.add_argument("--samples", type=_positive, default=10000)
    net.add_argument("--verify", action="store_true")
    net.add_argument("--point", default=None, help="JSON array of nonnegative entries to round")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        int: Exit code (0 success, 2 usage, 3 not found, 4 domain error)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    config = load_config(args.config)
    level = "WARNING" if args.quiet else config["global"]["logging_level"]
    configure_logging(level, config["global"].get("log_file"))

    name = CommandName(args.command)
    if args.k < 1 and name != CommandName.COUNT:
        print(json.dumps({"error": "USAGE", "message": "k must be at least 1"}))
        return 2

    progress = bool(config["search"]["progress"]) and not args.quiet
    service = CommandService(config, progress=progress)
    result = service.execute(name, args)
    print(json.dumps(result.payload, sort_keys=False))
    return result.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
