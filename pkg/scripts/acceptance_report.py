#!/usr/bin/env python3
"""
Print an acceptance summary: exact counts, enumeration sizes, the k=1
relations, partition distinctness and the net checks.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.services import counting  # noqa: E402
from src.services.c0net import delta_for_k, verify_net  # noqa: E402
from src.services.staircase import (  # noqa: E402
    distinguishing_subspace,
    enumerate_linked_free,
    enumerate_staircase,
    enumerate_symmetric,
)
from src.utils.config import load_config  # noqa: E402

# Configure logging
logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)

EXPECTED_T = [1, 5, 43, 619, 13829, 446881, 19790815]


def report_counts():
    print("\n=== Counts ===")
    for k, expected in enumerate(EXPECTED_T):
        got = counting.count_t(k)
        closed = counting.count_t_closed(k)
        status = "ok" if got == expected == closed else "MISMATCH"
        print(f"  t_{k} = {got} (closed form {closed}, expected {expected}) {status}")


def report_enumeration(max_k):
    print("\n=== Enumeration ===")
    for k in range(1, max_k + 1):
        sizes = (len(enumerate_staircase(k)), len(enumerate_symmetric(k)), len(enumerate_linked_free(k)))
        expected = (counting.count_t(k), counting.count_s(k), counting.count_linked_free(k))
        status = "ok" if sizes == expected else "MISMATCH"
        print(f"  k={k}: staircase/symmetric/linked-free {sizes}, expected {expected} {status}")


def report_distinctness(max_k, max_generators):
    print("\n=== Distinct partitions ===")
    for k in range(1, max_k + 1):
        start = time.time()
        try:
            m, _ = distinguishing_subspace(k, max_generators=max_generators)
            print(f"  k={k}: all tuples separated with {m} sos generators ({time.time() - start:.1f}s)")
        except Exception as e:
            logger.error(f"Distinctness check failed at k={k}: {str(e)}")
            print(f"  k={k}: FAILED")


def report_net(samples, config):
    print("\n=== Net geometry ===")
    tolerances = config["tolerances"]
    for k in (1, 2, 3):
        params = delta_for_k(k, tolerance=float(tolerances["root_residual"]))
        report = verify_net(params, dim=6, samples=samples, seed=int(config["global"]["seed"]),
                            chunk=int(config["net"]["sample_chunk"]), tolerance=float(tolerances["norm"]))
        status = "ok" if report.within_delta else "VIOLATED"
        print(f"  k={k}: delta={report.delta:.10f} max distance {report.max_distance:.6f} {status}")


def main():
    parser = argparse.ArgumentParser(description="Acceptance summary for the fink toolkit")
    parser.add_argument('--max-k', type=int, default=3, help='Largest k for enumeration checks')
    parser.add_argument('--distinct-k', type=int, default=2, help='Largest k for the distinctness check')
    parser.add_argument('--samples', type=int, default=10000, help='Monte-Carlo samples per net check')
    parser.add_argument('--config', default=None, help='Path to the YAML configuration')

    args = parser.parse_args()
    config = load_config(args.config)

    try:
        report_counts()
        report_enumeration(args.max_k)
        report_distinctness(args.distinct_k, int(config["search"]["distinctness_max_generators"]))
        report_net(args.samples, config)
    except KeyboardInterrupt:
        print("\nReport interrupted.")
    print("\n=== End of Acceptance Summary ===\n")


if __name__ == "__main__":
    main()
