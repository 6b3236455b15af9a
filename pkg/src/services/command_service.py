#!/usr/bin/env python3
"""
Command Service for the fink CLI.

This module dispatches parsed subcommands to the algorithmic services,
turns their results into JSON payloads and maps errors to exit codes.
"""

import json
import logging
import time
from argparse import Namespace
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from src.models.command import CommandName, CommandResult, CommandStatus
from src.models.errors import FinkError, GridError, NotFoundError, UsageError
from src.models.net import NetParams, PositiveVector
from src.models.staircase import StaircaseValues
from src.models.vectors import BlockSequence, parse_vector
from src.services import counting
from src.services.blockspace import required_generators, sos_build, standard_basis
from src.services.c0net import (
    delta_for_k,
    level_intervals,
    params_from_delta,
    round_gamma,
    theta,
    verify_net,
)
from src.services.canonize import (
    canonize_bruteforce,
    canonize_symmetric,
    canonize_taylor,
    estimate_n,
    load_partition,
)
from src.services.equations import decide, parse_equation
from src.services.kvector import is_sos
from src.services.staircase import enumerate_linked_free, enumerate_staircase, enumerate_symmetric

logger = logging.getLogger(__name__)

COUNTERS: Dict[str, Callable[[int], int]] = {
    "a": counting.count_a,
    "c": counting.count_c,
    "t": counting.count_t,
    "s": counting.count_s,
    "fib": counting.count_linked_free,
}


def _read_json(path: str) -> Any:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e.msg}") from None


class CommandService:
    """
    Service responsible for running one CLI command.

    Library calls receive their knobs explicitly; this service is the only
    place where configuration values flow into them.
    """

    def __init__(self, config: Dict[str, Any], progress: bool = False):
        """
        Initialize the Command Service.

        Args:
            config: Resolved configuration (see src.utils.config)
            progress: Show progress bars on stderr
        """
        self.config = config
        self.progress = progress
        self.start_time: Optional[float] = None
        self.handlers: Dict[CommandName, Callable[[Namespace], Dict[str, Any]]] = {
            CommandName.COUNT: self.count,
            CommandName.ENUMERATE: self.enumerate,
            CommandName.SOS_BUILD: self.sos_build,
            CommandName.SOS_CHECK: self.sos_check,
            CommandName.DECIDE: self.decide,
            CommandName.CANONIZE: self.canonize,
            CommandName.ESTIMATE_N: self.estimate_n,
            CommandName.NET: self.net,
        }

    def start_command_timer(self) -> None:
        self.start_time = time.time()

    def end_command_timer(self) -> float:
        """
        End the command timer and return the elapsed time.

        Returns:
            float: Elapsed time in seconds
        """
        if self.start_time:
            elapsed = time.time() - self.start_time
            self.start_time = None
            return elapsed
        return 0.0

    def execute(self, name: CommandName, args: Namespace) -> CommandResult:
        """
        Run a command and capture its outcome.

        Args:
            name: The subcommand
            args: Parsed arguments

        Returns:
            CommandResult: Payload on success, error object otherwise
        """
        self.start_command_timer()
        logger.info(f"Running {name.value} with k={args.k}")
        try:
            payload = self.handlers[name](args)
            result = CommandResult(command=name, payload=payload)
        except NotFoundError as e:
            logger.error(f"{name.value} found nothing: {e.message}")
            result = CommandResult(command=name, status=CommandStatus.NOT_FOUND,
                                   exit_code=e.exit_code, payload=e.to_json(), error=e.message)
        except FinkError as e:
            logger.error(f"{name.value} failed: {e.message}")
            result = CommandResult(command=name, status=CommandStatus.FAILED,
                                   exit_code=e.exit_code, payload=e.to_json(), error=e.message)
        except (ValidationError, ValueError, KeyError) as e:
            logger.error(f"{name.value} rejected its input: {str(e)}")
            payload = {"error": "INVALID_INPUT", "message": str(e)}
            result = CommandResult(command=name, status=CommandStatus.FAILED,
                                   exit_code=4, payload=payload, error=str(e))
        result.elapsed = self.end_command_timer()
        logger.info(f"Command {name.value} {result.status} in {result.elapsed:.2f} seconds")
        return result

    def _seed(self, args: Namespace) -> int:
        seed = getattr(args, "seed", None)
        return self.config["global"].get("seed", 0) if seed is None else seed

    def count(self, args: Namespace) -> Dict[str, Any]:
        if args.which in ("s", "fib") and args.k < 1:
            raise UsageError(f"count {args.which} needs k >= 1")
        if args.k < 0:
            raise UsageError("k must be nonnegative")
        return {"k": args.k, args.which: COUNTERS[args.which](args.k)}

    def enumerate(self, args: Namespace) -> Dict[str, Any]:
        if args.symmetric and args.linked_free:
            raise UsageError("--symmetric and --linked-free exclude each other")
        if args.symmetric:
            values = enumerate_symmetric(args.k)
        elif args.linked_free:
            values = enumerate_linked_free(args.k)
        else:
            values = enumerate_staircase(args.k)
        return {"k": args.k, "count": len(values), "values": [v.to_json() for v in values]}

    def sos_build(self, args: Namespace) -> Dict[str, Any]:
        basis = standard_basis(args.k, args.generators)
        sequence = sos_build(basis, args.length)
        return {
            "k": args.k,
            "required_generators": required_generators(args.k, args.length),
            "terms": sequence.to_json()["terms"],
        }

    def sos_check(self, args: Namespace) -> Dict[str, Any]:
        vector = parse_vector(args.vector, args.k)
        return {"sos": vector.level == args.k and is_sos(vector)}

    def decide(self, args: Namespace) -> Dict[str, Any]:
        equation = parse_equation(args.equation, args.k)
        oracle = None
        if args.values is not None:
            relation: Any = StaircaseValues.from_json(json.loads(args.values), args.k)
        elif args.partition is not None:
            oracle = load_partition(_read_json(args.partition))
            relation = oracle
        else:
            raise UsageError("decide needs --values or --partition")
        if args.sequence is not None:
            alpha = BlockSequence.from_json(_read_json(args.sequence))
        elif args.length is not None:
            alpha = standard_basis(args.k, args.length)
        elif oracle is not None:
            alpha = oracle.generators
        else:
            alpha = standard_basis(args.k, equation.arity + 2)
        decision = decide(equation, alpha, relation)
        return {"equation": str(equation), **decision.to_json()}

    def canonize(self, args: Namespace) -> Dict[str, Any]:
        oracle = load_partition(_read_json(args.partition))
        if oracle.k != args.k:
            raise UsageError(f"partition file has k={oracle.k}, command has k={args.k}")
        workers = int(self.config["commands"]["canonize"]["workers"] or 1)
        if args.fast_k1:
            result = canonize_taylor(oracle, args.m, progress=self.progress)
        elif args.symmetric:
            result = canonize_symmetric(oracle, args.m, workers=workers, progress=self.progress)
        else:
            result = canonize_bruteforce(oracle, args.m, workers=workers, progress=self.progress)
        return result.to_json()

    def estimate_n(self, args: Namespace) -> Dict[str, Any]:
        settings = self.config["commands"]["estimate_n"]
        max_n = args.max_n if args.max_n is not None else int(settings["max_n"])
        report = estimate_n(args.k, args.m, args.trials, seed=self._seed(args), max_n=max_n,
                            workers=int(settings["workers"] or 1), progress=self.progress)
        return report.to_json()

    def net(self, args: Namespace) -> Dict[str, Any]:
        tolerances = self.config["tolerances"]
        if args.delta is not None:
            params = params_from_delta(args.delta, tolerance=float(tolerances["root_residual"]))
            if params.k != args.k:
                raise UsageError(f"delta={args.delta} belongs to k={params.k}, not k={args.k}")
        else:
            params = delta_for_k(args.k, tolerance=float(tolerances["root_residual"]))
        if args.verify:
            payload = verify_net(params, args.dim, args.samples, seed=self._seed(args),
                                 chunk=int(self.config["net"]["sample_chunk"]),
                                 tolerance=float(tolerances["norm"]), progress=self.progress).to_json()
        else:
            payload = {"k": params.k, "delta": params.delta, "eps": params.eps,
                       "gammas": list(level_intervals(params).gammas)}
        if args.point is not None:
            payload["point"] = self._locate(params, args.point)
        return payload

    def _locate(self, params: NetParams, text: str) -> Dict[str, Any]:
        """Gamma of a positive vector, and Theta when it lies on the grid."""
        try:
            point = PositiveVector(entries=json.loads(text))
        except json.JSONDecodeError as e:
            raise UsageError(f"--point is not a JSON array: {e.msg}") from None
        snap = float(self.config["tolerances"]["grid_snap"])
        try:
            on_grid: Optional[List[int]] = theta(params, point, tolerance=snap).to_json()
        except GridError:
            on_grid = None
        return {
            "entries": point.to_json(),
            "on_sphere": point.on_sphere(float(self.config["tolerances"]["norm"])),
            "gamma": round_gamma(params, point, tolerance=snap).to_json(),
            "theta": on_grid,
        }
