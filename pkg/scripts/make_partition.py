#!/usr/bin/env python3
"""
Write partition files for `fink canonize` and `fink decide`.

The partition lives on <e_0..e_n> and comes from a staircase tuple, the
parity of the support size, or one of the random distributions used by
estimate-n.
"""

import argparse
import json
import logging
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.models.staircase import StaircaseValues  # noqa: E402
from src.services.blockspace import standard_basis  # noqa: E402
from src.services.canonize import oracle_from_function, oracle_from_values, sample_oracle  # noqa: E402

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)


def named_values(k: int, name: str) -> StaircaseValues:
    """
    The k=1 relations by name, and min/max at any level.
    """
    full = tuple(range(1, k + 1))
    if name == "all":
        return StaircaseValues(k=k)
    if name == "min":
        return StaircaseValues(k=k, I0=full)
    if name == "max":
        return StaircaseValues(k=k, I1=full)
    if name == "minmax":
        return StaircaseValues(k=k, I0=full, I1=full)
    if name == "equality":
        if k != 1:
            raise ValueError("the named equality relation is defined for k=1")
        return StaircaseValues(k=1, I0=(1,), I1=(1,), l2=1)
    raise ValueError(f"unknown relation {name!r}")


def main():
    parser = argparse.ArgumentParser(description="Write a partition JSON file")
    parser.add_argument('--k', type=int, required=True, help='Ambient level')
    parser.add_argument('--n', type=int, required=True, help='Domain is <e_0..e_n>')
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--named', choices=['all', 'min', 'max', 'minmax', 'equality'])
    source.add_argument('--values', help='StaircaseValues as JSON')
    source.add_argument('--parity', action='store_true', help='Class = parity of the support size')
    source.add_argument('--random', choices=['refined', 'uniform'])
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--output', required=True, help='Output file')

    args = parser.parse_args()
    generators = standard_basis(args.k, args.n + 1)

    try:
        if args.named:
            oracle = oracle_from_values(generators, named_values(args.k, args.named))
        elif args.values:
            oracle = oracle_from_values(generators, StaircaseValues.from_json(json.loads(args.values), args.k))
        elif args.parity:
            oracle = oracle_from_function(generators, lambda s: len(s.support) % 2)
        else:
            oracle = sample_oracle(args.k, generators, random.Random(args.seed), args.random)
    except Exception as e:
        logger.error(f"Failed to build the partition: {str(e)}")
        sys.exit(4)

    with open(args.output, 'w') as f:
        json.dump(oracle.to_json(), f, indent=2)
    classes = len(set(oracle.classes.values()))
    logger.info(f"Wrote {len(oracle.classes)} vectors in {classes} classes to {args.output}")


if __name__ == "__main__":
    main()
