#!/usr/bin/env python3
"""
Block sequences and the finite combinatorial subspaces they generate.

For a block sequence alpha = (a_0, ..., a_{m-1}) the subspace <alpha>_i
collects every sum T^{k-c_0} a_0 + ... + T^{k-c_{m-1}} a_{m-1} whose
coefficient tuple c attains i. Elements are enumerated in lexicographic
order of c; block subsequences in lexicographic order of their flattened
coefficient matrices.
"""

import logging
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from src.models.errors import AmbientMismatchError, GeneratorShortageError, NotInSubspaceError
from src.models.vectors import (
    BlockSequence,
    Coefficients,
    DisjointFamily,
    KVector,
    LeKVector,
    make_vector,
)
from src.services.kvector import is_sos, join_all, tetris

logger = logging.getLogger(__name__)

# (coefficient tuple, first used generator, last used generator, vector)
Row = Tuple[Tuple[int, ...], int, int, LeKVector]


@lru_cache(maxsize=4096)
def _sparse(term: LeKVector) -> Tuple[Tuple[int, int], ...]:
    return tuple((n, c) for n, c in enumerate(term.coeffs) if c)


def standard_basis(k: int, n: int) -> BlockSequence:
    """The generators e_0, ..., e_{n-1}, with e_i = k at position i."""
    terms = [make_vector(k, (0,) * i + (k,)) for i in range(n)]
    return BlockSequence(k=k, terms=terms)


def compose(k: int, terms: Sequence[LeKVector], coeffs: Sequence[int]) -> LeKVector:
    """
    Sum of T^{k-c_n} terms[n] over disjointly supported terms.
    """
    size = 0
    for term, c in zip(terms, coeffs):
        if c and len(term.coeffs) > size:
            size = len(term.coeffs)
    out = [0] * size
    for term, c in zip(terms, coeffs):
        if not c:
            continue
        drop = k - c
        for n, value in _sparse(term):
            if value > drop:
                out[n] = value - drop
    return make_vector(k, out)


def coefficient_tuples(m: int, level: int) -> List[Tuple[int, ...]]:
    if m == 0:
        return []
    return [c for c in product(range(level + 1), repeat=m) if max(c) == level]


def subspace_elements(alpha: BlockSequence, level: Optional[int] = None) -> List[LeKVector]:
    """
    Enumerate <alpha>_level, the level-vectors of the subspace.

    Args:
        alpha: Generating block sequence
        level: Level in 1..k; defaults to k

    Returns:
        list: (k+1)^m - k^m vectors at the top level, in lexicographic
        order of their coefficient tuples
    """
    level = alpha.k if level is None else level
    if not 1 <= level <= alpha.k:
        raise ValueError(f"level {level} outside [1, {alpha.k}]")
    return [compose(alpha.k, alpha.terms, c) for c in coefficient_tuples(len(alpha), level)]


def family_elements(family: DisjointFamily, level: Optional[int] = None) -> List[LeKVector]:
    """Same enumeration as subspace_elements over a disjoint, non-block family."""
    level = family.k if level is None else level
    if not 1 <= level <= family.k:
        raise ValueError(f"level {level} outside [1, {family.k}]")
    return [compose(family.k, family.terms, c) for c in coefficient_tuples(len(family), level)]


def embed(alpha: BlockSequence, c: LeKVector) -> LeKVector:
    """
    The lattice isomorphism generated by e_n -> alpha[n], applied to a
    (≤k)-vector c living on the first m positions.
    """
    if c.k != alpha.k:
        raise AmbientMismatchError(f"ambient levels differ: {c.k} != {alpha.k}")
    if len(c.coeffs) > len(alpha):
        raise ValueError(f"vector has {len(c.coeffs)} positions, alpha only {len(alpha)} generators")
    return compose(alpha.k, alpha.terms, c.coeffs)


def decompose(alpha: BlockSequence, a: LeKVector) -> Tuple[int, ...]:
    """
    Recover the coefficients of a over alpha. Each generator is read at a
    position where it attains k, which forces its coefficient; the rest of
    the generator's support must then agree.

    Raises:
        NotInSubspaceError: If some support point of a cannot be matched
    """
    if a.k != alpha.k:
        raise AmbientMismatchError(f"ambient levels differ: {a.k} != {alpha.k}")
    k = alpha.k
    values = []
    covered = set()
    for index, term in enumerate(alpha.terms):
        items = _sparse(term)
        top = next(n for n, value in items if value == k)
        r = a.value(top)
        drop = k - r
        for n, value in items:
            expected = value - drop if value > drop else 0
            if a.value(n) != expected:
                raise NotInSubspaceError(
                    f"position {n} of generator {index} carries {a.value(n)}, expected {expected}"
                )
            covered.add(n)
        values.append(r)
    for n in a.support:
        if n not in covered:
            raise NotInSubspaceError(f"position {n} lies outside every generator")
    return tuple(values)


def canonical_decomposition(alpha: BlockSequence, a: LeKVector) -> Coefficients:
    if a.level != alpha.k:
        raise NotInSubspaceError(f"vector of level {a.level} is not a {alpha.k}-vector")
    return Coefficients(k=alpha.k, values=decompose(alpha, a))


def contains(alpha: BlockSequence, a: LeKVector) -> bool:
    """Membership in <alpha> (the top level)."""
    if a.level != alpha.k:
        return False
    try:
        decompose(alpha, a)
    except NotInSubspaceError:
        return False
    return True


def subspace_rows(alpha: BlockSequence,
                  predicate: Optional[Callable[[LeKVector], bool]] = None) -> List[Row]:
    """Top-level elements of <alpha> with their coefficient rows, filtered by predicate."""
    rows = []
    for c in coefficient_tuples(len(alpha), alpha.k):
        vector = compose(alpha.k, alpha.terms, c)
        if predicate is not None and not predicate(vector):
            continue
        used = [i for i, x in enumerate(c) if x]
        rows.append((c, used[0], used[-1], vector))
    return rows


def block_chains(rows: Sequence[Row], n_generators: int, m: int) -> Iterator[Tuple[Row, ...]]:
    """
    Depth-first enumeration of length-m chains of rows with strictly
    increasing generator ranges. Preserves the order of rows, so
    lexicographically sorted rows give lexicographic chains.
    """
    if m < 1:
        return
    by_start = [[row for row in rows if row[1] >= j] for j in range(n_generators + 1)]

    def extend(chain: Tuple[Row, ...], after: int) -> Iterator[Tuple[Row, ...]]:
        remaining = m - len(chain)
        if remaining == 0:
            yield chain
            return
        start = after + 1
        if start > n_generators:
            return
        for row in by_start[start]:
            # leave one generator for every later term
            if row[2] > n_generators - remaining:
                continue
            yield from extend(chain + (row,), row[2])

    yield from extend((), -1)


def block_subsequences(alpha: BlockSequence, m: int,
                       predicate: Optional[Callable[[LeKVector], bool]] = None) -> List[BlockSequence]:
    """
    All length-m block sequences inside <alpha>, optionally restricted to
    terms satisfying predicate.
    """
    if m < 1:
        raise ValueError("block subsequences need m >= 1")
    if m > len(alpha):
        return []
    rows = subspace_rows(alpha, predicate)
    return [
        BlockSequence(k=alpha.k, terms=tuple(row[3] for row in chain))
        for chain in block_chains(rows, len(alpha), m)
    ]


def is_subsequence(beta: BlockSequence, alpha: BlockSequence) -> bool:
    """beta ⪯ alpha: every term of beta lies in <alpha>."""
    if beta.k != alpha.k:
        raise AmbientMismatchError(f"ambient levels differ: {beta.k} != {alpha.k}")
    return all(contains(alpha, term) for term in beta.terms)


def span(sequence: BlockSequence) -> int:
    """Total support span of a nonempty block sequence."""
    return sequence.terms[-1].max_support - sequence.terms[0].min_support + 1


def required_generators(k: int, length: int) -> int:
    """
    Generators sos_build needs for `length` output terms. Every output
    term consumes (3k-1)(2k-1) generators and only every second generator
    is used.
    """
    if length <= 0:
        return 0
    return 2 * (3 * k - 1) * (2 * k - 1) * length - 1


def sos_build(alpha: BlockSequence, length: int) -> BlockSequence:
    """
    Build an sos block subsequence of alpha.

    Stage one forms ladders c_n with levels 1, ..., k, ..., 1 from
    consecutive generators; stage two joins 3k-1 ladders at levels
    1..k, 1..k, k-1..1 into b_n. Generators are taken two apart so that
    neighbouring blocks are separated by a zero.

    Args:
        alpha: Source block sequence
        length: Number of sos terms wanted

    Returns:
        BlockSequence: (b_0, ..., b_{length-1}), each term an sos

    Raises:
        GeneratorShortageError: If alpha is too short
    """
    k = alpha.k
    if length <= 0:
        return BlockSequence(k=k)
    need = required_generators(k, length)
    if len(alpha) < need:
        raise GeneratorShortageError(
            f"sos_build of length {length} at k={k} needs {need} generators, got {len(alpha)}",
            required=need,
            available=len(alpha),
        )
    spaced = alpha.terms[::2]

    ladders = []
    for n in range((3 * k - 1) * length):
        base = (2 * k - 1) * n
        parts = [tetris(spaced[base + j - 1], k - j) for j in range(1, k + 1)]
        parts += [tetris(spaced[base + k - 1 + j], j) for j in range(1, k)]
        ladders.append(join_all(k, parts))

    terms = []
    for n in range(length):
        base = (3 * k - 1) * n
        parts = [tetris(ladders[base + j - 1], k - j) for j in range(1, k + 1)]
        parts += [tetris(ladders[base + k - 1 + j], k - j) for j in range(1, k + 1)]
        parts += [tetris(ladders[base + 2 * k - 1 + j], j) for j in range(1, k)]
        term = join_all(k, parts)
        if not is_sos(term):
            logger.error(f"sos_build produced a non-sos term at index {n}: {term}")
            raise ValueError(f"constructed term {n} is not an sos")
        terms.append(term)

    logger.debug(f"sos_build: {length} terms at k={k} from {len(alpha)} generators")
    return BlockSequence(k=k, terms=tuple(terms))
