#!/usr/bin/env python3
"""
Finite canonization: find a block subsequence on whose subspace a given
equivalence relation coincides with a staircase relation.

The brute-force engine scans sos candidates by increasing support span and
compares the restricted partition against every staircase tuple. A staircase
relation is transported unchanged between sos subspaces of the same length,
so the signatures of all tuples are computed once per (k, m) on a reference
sos sequence and looked up by hash. Every hit is verified pairwise on the
candidate's own subspace.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from src.models.equation import Verdict
from src.models.errors import BudgetExhaustedError, NotFoundError, OracleDomainError, UsageError
from src.models.partition import (
    CanonizationResult,
    EstimateReport,
    PartitionOracle,
    SymmetricCanonizationResult,
)
from src.models.staircase import ZERO_COMPONENT, StaircaseValues, linked
from src.models.vectors import BlockSequence, DisjointFamily, LeKVector, parse_vector
from src.services.blockspace import (
    block_chains,
    family_elements,
    required_generators,
    sos_build,
    standard_basis,
    subspace_elements,
    subspace_rows,
)
from src.services.equations import decide, taylor_equations
from src.services.kvector import is_sos, join
from src.services.staircase import (
    enumerate_staircase,
    eval_staircase,
    partition_signature,
    staircase_signature,
)
from src.utils.union_find import UnionFind

logger = logging.getLogger(__name__)

Chain = Tuple[LeKVector, ...]


def oracle_from_function(generators: BlockSequence,
                         fn: Callable[[LeKVector], Hashable]) -> PartitionOracle:
    """Tabulate fn on <generators>; equal values share a class."""
    labels: Dict[Hashable, int] = {}
    classes = {}
    for s in subspace_elements(generators):
        classes[s.key()] = labels.setdefault(fn(s), len(labels))
    return PartitionOracle(k=generators.k, generators=generators, classes=classes)


def oracle_from_values(generators: BlockSequence, v: StaircaseValues) -> PartitionOracle:
    return oracle_from_function(generators, lambda s: eval_staircase(v, s))


def load_partition(data: Dict[str, Any]) -> PartitionOracle:
    """
    Build an oracle from {"k": K, "n": N, "classes": {...}} (domain
    <e_0..e_N>) or {"k": K, "generators": [...], "classes": {...}}.

    Raises:
        OracleDomainError: If some vector of the domain has no class
    """
    k = int(data["k"])
    if "generators" in data:
        generators = BlockSequence(k=k, terms=data["generators"])
    else:
        generators = standard_basis(k, int(data["n"]) + 1)
    classes = {parse_vector(key, k).key(): int(label) for key, label in data["classes"].items()}
    for s in subspace_elements(generators):
        if s.key() not in classes:
            raise OracleDomainError(f"partition has no class for {s.key()}", s.key())
    return PartitionOracle(k=k, generators=generators, classes=classes)


def sample_oracle(k: int, generators: BlockSequence, rng: random.Random,
                  kind: str = "refined") -> PartitionOracle:
    """
    Draw a random equivalence relation on <generators>.

    kind="refined": a uniformly chosen staircase relation, with each class
    independently (probability 1/2) split by a random bit per vector.
    kind="uniform": singletons merged by a uniformly chosen number (0..size)
    of random union-find merges.
    """
    elements = subspace_elements(generators)
    if kind == "refined":
        v = rng.choice(enumerate_staircase(k))
        base = [eval_staircase(v, s) for s in elements]
        split = {label: rng.random() < 0.5 for label in dict.fromkeys(base)}
        labels: List[Hashable] = [(label, rng.randrange(2) if split[label] else 0) for label in base]
    elif kind == "uniform":
        forest = UnionFind()
        for index in range(len(elements)):
            forest.find(index)
        for _ in range(rng.randrange(len(elements) + 1)):
            forest.union(rng.randrange(len(elements)), rng.randrange(len(elements)))
        labels = [forest.find(index) for index in range(len(elements))]
    else:
        raise ValueError(f"unknown oracle distribution {kind!r}")
    signature = partition_signature(labels)
    classes = {s.key(): label for s, label in zip(elements, signature)}
    return PartitionOracle(k=k, generators=generators, classes=classes)


def verify_pairs(labels: Sequence[Hashable], fingerprints: Sequence[Hashable]) -> Optional[int]:
    """
    Check all pairs: labels agree iff fingerprints agree.

    Returns:
        int: Number of verified pairs, or None on the first disagreement
    """
    checked = 0
    for i, j in combinations(range(len(labels)), 2):
        if (labels[i] == labels[j]) != (fingerprints[i] == fingerprints[j]):
            return None
        checked += 1
    return checked


@lru_cache(maxsize=32)
def _signature_table(k: int, m: int) -> Dict[Tuple[int, ...], StaircaseValues]:
    """First staircase tuple per partition signature of a reference sos subspace."""
    reference = sos_build(standard_basis(k, required_generators(k, m)), m)
    elements = subspace_elements(reference)
    table: Dict[Tuple[int, ...], StaircaseValues] = {}
    for v in enumerate_staircase(k):
        table.setdefault(staircase_signature(v, elements), v)
    logger.debug(f"signature table k={k}, m={m}: {len(table)} distinct partitions")
    return table


def _match(oracle: PartitionOracle, terms: Chain) -> Optional[Tuple[BlockSequence, StaircaseValues, int]]:
    witness = BlockSequence(k=oracle.k, terms=terms)
    elements = subspace_elements(witness)
    labels = [oracle.class_id(s) for s in elements]
    signature = partition_signature(labels)
    values = _signature_table(oracle.k, len(terms)).get(signature)
    if values is None:
        return None
    checked = verify_pairs(labels, [eval_staircase(values, s) for s in elements])
    if checked is not None:
        return witness, values, checked
    logger.warning(f"reference signature disagrees on {witness.to_json()}; comparing directly")
    for v in enumerate_staircase(oracle.k):
        if staircase_signature(v, elements) == signature:
            checked = verify_pairs(labels, [eval_staircase(v, s) for s in elements])
            if checked is not None:
                return witness, v, checked
    return None


def _chain_order(chain: Sequence) -> Tuple:
    first, last = chain[0][3], chain[-1][3]
    return (last.max_support - first.min_support, tuple(c for row in chain for c in row[0]))


def sos_candidates(oracle: PartitionOracle, m: int) -> Tuple[List[Chain], int]:
    """
    Length-m sos block subsequences of the oracle's generators, ordered by
    support span, then lexicographically by coefficients.

    Returns:
        tuple: (candidate term tuples, number of sos elements in the subspace)
    """
    rows = subspace_rows(oracle.generators, predicate=is_sos)
    chains = sorted(block_chains(rows, len(oracle.generators), m), key=_chain_order)
    return [tuple(row[3] for row in chain) for chain in chains], len(rows)


def _scan_chunk(task: Tuple[PartitionOracle, int, List[Chain]]):
    oracle, offset, chunk = task
    for index, terms in enumerate(chunk):
        found = _match(oracle, terms)
        if found is not None:
            return offset + index, found
    return None


def canonize_bruteforce(oracle: PartitionOracle, m: int, workers: int = 1,
                        progress: bool = False) -> CanonizationResult:
    """
    Find the first sos witness of length m on which the oracle is a
    staircase relation.

    Args:
        oracle: The relation to canonize
        m: Witness length
        workers: Process workers; 1 scans in-process
        progress: Show a progress bar on stderr

    Returns:
        CanonizationResult: The verified witness and values tuple

    Raises:
        NotFoundError: If no candidate matches
        OracleDomainError: If the oracle misses a needed vector
    """
    if m < 1:
        raise UsageError("witness length must be at least 1")
    candidates, sos_elements = sos_candidates(oracle, m)
    logger.info(f"Scanning {len(candidates)} sos candidates of length {m} at k={oracle.k}")

    hit = None
    if workers <= 1 or len(candidates) < 2 * workers:
        for index, terms in enumerate(tqdm(candidates, desc="canonize", disable=not progress)):
            found = _match(oracle, terms)
            if found is not None:
                hit = (index, found)
                break
    else:
        size = -(-len(candidates) // (4 * workers))
        tasks = [(oracle, start, candidates[start:start + size])
                 for start in range(0, len(candidates), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = [result for result in pool.map(_scan_chunk, tasks) if result is not None]
        if hits:
            hit = min(hits, key=lambda result: result[0])

    if hit is None:
        stats = {"candidates": len(candidates), "sos_elements": sos_elements,
                 "generators": len(oracle.generators), "m": m}
        logger.error(f"No staircase match among {len(candidates)} candidates")
        raise NotFoundError(f"no sos witness of length {m} carries a staircase relation", stats)

    index, (witness, values, checked) = hit
    logger.info(f"Canonized at candidate {index + 1} with {checked} verified pairs")
    return CanonizationResult(witness=witness, values=values, checked_pairs=checked,
                              candidates_tried=index + 1)


def _taylor_values(verdicts: Sequence[str]) -> StaircaseValues:
    same, keeps_left, keeps_right, interior = (verdict == Verdict.TRUE for verdict in verdicts)
    if same:
        return StaircaseValues(k=1)
    if keeps_left:
        return StaircaseValues(k=1, I0=(1,))
    if keeps_right:
        return StaircaseValues(k=1, I1=(1,))
    if interior:
        return StaircaseValues(k=1, I0=(1,), I1=(1,))
    return StaircaseValues(k=1, I0=(1,), I1=(1,), l2=1)


def canonize_taylor(oracle: PartitionOracle, m: int, progress: bool = False) -> CanonizationResult:
    """
    k=1 fast path: decide the four classifier equations on block
    subsequences of length max(m, 4) and read off the relation.
    """
    if oracle.k != 1:
        raise UsageError("the Taylor fast path needs k=1")
    length = max(m, 4)
    rows = subspace_rows(oracle.generators)
    chains = sorted(block_chains(rows, len(oracle.generators), length), key=_chain_order)
    equations = taylor_equations()
    for index, chain in enumerate(tqdm(chains, desc="taylor", disable=not progress)):
        witness = BlockSequence(k=1, terms=tuple(row[3] for row in chain))
        verdicts = [decide(eq, witness, oracle).verdict for eq in equations]
        if Verdict.UNDECIDED in verdicts:
            continue
        values = _taylor_values(verdicts)
        elements = subspace_elements(witness)
        labels = [oracle.class_id(s) for s in elements]
        checked = verify_pairs(labels, [eval_staircase(values, s) for s in elements])
        if checked is None:
            continue
        logger.info(f"Taylor case decided at candidate {index + 1}: {values.to_json()}")
        return CanonizationResult(witness=witness, values=values, checked_pairs=checked,
                                  candidates_tried=index + 1, method="taylor")
    raise NotFoundError(f"no block subsequence of length {length} decides the classifier equations",
                        {"candidates": len(chains), "m": length})


def symmetrize(witness: BlockSequence) -> DisjointFamily:
    """Fold b_0..b_{2m-1} into a_i = b_i + b_{2m-1-i}."""
    if len(witness) % 2:
        raise ValueError("symmetrize needs an even number of terms")
    terms = witness.terms
    half = len(terms) // 2
    return DisjointFamily(k=witness.k, terms=tuple(join(terms[i], terms[-1 - i]) for i in range(half)))


def symmetric_values(v: StaircaseValues) -> StaircaseValues:
    """
    The symmetric tuple that v induces on a fold: I = I0 ∪ I1, and on each
    j the finer of the two theta parameters.
    """
    indices = tuple(sorted(set(v.I0) | set(v.I1)))
    left, right = v.l0_map(), v.l1_map()
    params = {}
    for j in linked(indices):
        defined = [l for l in (left.get(j, ZERO_COMPONENT), right.get(j, ZERO_COMPONENT))
                   if l != ZERO_COMPONENT]
        params[j] = min(defined) if defined else ZERO_COMPONENT
    return StaircaseValues(k=v.k, I0=indices, l0=params, I1=indices, l1=params, l2=v.l2)


def canonize_symmetric(oracle: PartitionOracle, m: int, workers: int = 1,
                       progress: bool = False) -> SymmetricCanonizationResult:
    """
    Canonize at length 2m, fold the witness and verify that the oracle is
    the symmetric staircase relation on the span of the fold.
    """
    result = canonize_bruteforce(oracle, 2 * m, workers=workers, progress=progress)
    family = symmetrize(result.witness)
    values = symmetric_values(result.values)
    elements = family_elements(family)
    labels = [oracle.class_id(s) for s in elements]
    checked = verify_pairs(labels, [eval_staircase(values, s) for s in elements])
    if checked is None:
        raise NotFoundError("the folded relation is not the symmetric staircase relation",
                            {"witness": result.witness.to_json()})
    return SymmetricCanonizationResult(witness=result.witness, family=family,
                                       source_values=result.values, values=values,
                                       checked_pairs=checked)


def lower_bound_n(k: int, m: int) -> int:
    return m * (2 * k - 1)


def minimal_feasible_n(k: int, m: int, max_n: int) -> int:
    """Least n such that <e_0..e_n> holds an sos block sequence of length m."""
    for n in range(lower_bound_n(k, m), max_n + 1):
        generators = standard_basis(k, n + 1)
        rows = subspace_rows(generators, predicate=is_sos)
        if next(block_chains(rows, len(generators), m), None) is not None:
            return n
    raise BudgetExhaustedError(f"no sos sequence of length {m} below n={max_n}", {"max_n": max_n})


def estimate_n(k: int, m: int, trials: int, seed: int = 0, max_n: int = 12,
               workers: int = 1, progress: bool = False) -> EstimateReport:
    """
    Smallest n such that `trials` sampled relations on <e_0..e_n> all
    canonize at length m. Trials alternate between the "refined" and
    "uniform" distributions of sample_oracle; trial t at size n draws
    from Random(f"{seed}-{n}-{t}").

    Raises:
        BudgetExhaustedError: If some trial still fails at max_n
    """
    lower = lower_bound_n(k, m)
    if trials <= 0:
        return EstimateReport(k=k, m=m, trials=0, n=lower, lower_bound=lower, seed=seed,
                              note="lower bound from sos feasibility")
    previous: List[Dict[str, Any]] = []
    for n in tqdm(range(lower, max_n + 1), desc="estimate-n", disable=not progress):
        generators = standard_basis(k, n + 1)
        failures = []
        for trial in range(trials):
            kind = "refined" if trial % 2 == 0 else "uniform"
            oracle = sample_oracle(k, generators, random.Random(f"{seed}-{n}-{trial}"), kind)
            try:
                canonize_bruteforce(oracle, m, workers=workers)
            except NotFoundError as exc:
                failures.append({"trial": trial, "kind": kind,
                                 "classes": len(set(oracle.classes.values())),
                                 "candidates": exc.stats.get("candidates", 0)})
        logger.info(f"estimate_n: n={n}, {len(failures)} of {trials} trials failed")
        if not failures:
            return EstimateReport(k=k, m=m, trials=trials, n=n, lower_bound=lower, seed=seed,
                                  failures_below=previous)
        previous = failures
    raise BudgetExhaustedError(f"sampled relations still fail at n={max_n}",
                               {"max_n": max_n, "failures": previous})
