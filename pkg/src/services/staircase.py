#!/usr/bin/env python3
"""
Staircase functions: evaluation of the family F, the induced equivalence
relations and the exhaustive enumeration of value tuples.

A staircase function is the join of min_{I0}, max_{I1}, the theta0/theta1
members selected by l0 and l1, and theta2_{l2}. Two k-vectors are related
by it iff it takes the same value on both.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from src.models.errors import AmbientMismatchError, NotFoundError
from src.models.staircase import ZERO_COMPONENT, FamilyMember, MemberKind, StaircaseValues
from src.models.vectors import BlockSequence, LeKVector, make_vector, zero_vector
from src.services.blockspace import required_generators, sos_build, standard_basis, subspace_elements
from src.services.kvector import join_all, max_level, min_level

logger = logging.getLogger(__name__)

# (I, parameter pairs) of a min- or max-relation
Half = Tuple[Tuple[int, ...], Tuple[Tuple[int, int], ...]]


def _point(k: int, position: int, value: int) -> LeKVector:
    return make_vector(k, (0,) * position + (value,))


def _level_positions(s: LeKVector, low: Optional[int], high: Optional[int], l: int) -> LeKVector:
    """Value-l positions of s strictly between low and high, valued l."""
    if low is None or high is None or high - low < 2:
        return zero_vector(s.k)
    coeffs = [0] * high
    for n in range(low + 1, high):
        if s.coeffs[n] == l:
            coeffs[n] = l
    return make_vector(s.k, coeffs)


def eval_member(member: FamilyMember, s: LeKVector) -> LeKVector:
    """
    Evaluate a family member. Where a needed landmark min_i / max_i is
    undefined the value is 0, which extends members beyond sos vectors.
    """
    if member.k != s.k:
        raise AmbientMismatchError(f"ambient levels differ: {member.k} != {s.k}")
    k, kind, i, l = s.k, member.kind, member.i, member.l
    if kind == MemberKind.ZERO:
        return zero_vector(k)
    if kind == MemberKind.MIN:
        n = min_level(s, i)
        return zero_vector(k) if n is None else _point(k, n, i)
    if kind == MemberKind.MAX:
        n = max_level(s, i)
        return zero_vector(k) if n is None else _point(k, n, i)
    if kind == MemberKind.THETA0:
        return _level_positions(s, min_level(s, i - 1), min_level(s, i), l)
    if kind == MemberKind.THETA1:
        return _level_positions(s, max_level(s, i), max_level(s, i - 1), l)
    return _level_positions(s, min_level(s, k), max_level(s, k), l)


@lru_cache(maxsize=None)
def members(v: StaircaseValues) -> Tuple[FamilyMember, ...]:
    """The nonzero component members of a staircase function."""
    k = v.k
    out = [FamilyMember(k=k, kind=MemberKind.MIN, i=i) for i in v.I0]
    out += [FamilyMember(k=k, kind=MemberKind.THETA0, i=j, l=l) for j, l in v.l0 if l != ZERO_COMPONENT]
    if v.l2 != ZERO_COMPONENT:
        out.append(FamilyMember(k=k, kind=MemberKind.THETA2, l=v.l2))
    out += [FamilyMember(k=k, kind=MemberKind.MAX, i=i) for i in v.I1]
    out += [FamilyMember(k=k, kind=MemberKind.THETA1, i=j, l=l) for j, l in v.l1 if l != ZERO_COMPONENT]
    return tuple(out)


def eval_staircase(v: StaircaseValues, s: LeKVector) -> LeKVector:
    if v.k != s.k:
        raise AmbientMismatchError(f"ambient levels differ: {v.k} != {s.k}")
    return join_all(s.k, (eval_member(member, s) for member in members(v)))


def relate(v: StaircaseValues, s: LeKVector, t: LeKVector) -> bool:
    if s.k != t.k:
        raise AmbientMismatchError(f"ambient levels differ: {s.k} != {t.k}")
    return eval_staircase(v, s) == eval_staircase(v, t)


def partition_signature(labels: Iterable[Hashable]) -> Tuple[int, ...]:
    """
    Restricted growth string of a labelling: each element gets the index
    of the first element carrying its label. Equal signatures over the same
    element order mean equal partitions.
    """
    first: Dict[Hashable, int] = {}
    return tuple(first.setdefault(label, len(first)) for label in labels)


def staircase_signature(v: StaircaseValues, elements: Sequence[LeKVector]) -> Tuple[int, ...]:
    return partition_signature(eval_staircase(v, s) for s in elements)


@lru_cache(maxsize=None)
def _halves(k: int) -> Tuple[Half, ...]:
    """
    Min-relations at level k, grown from level k-1: keep every old one,
    add k to those without k-1, and add k with each theta0_{k,l} (l = -1
    or 1..k-1) to those containing k-1.
    """
    if k == 0:
        return (((), ()),)
    previous = _halves(k - 1)
    grown = list(previous)
    for indices, params in previous:
        if k - 1 not in indices:
            grown.append((indices + (k,), params))
    for indices, params in previous:
        if k - 1 in indices:
            for l in (ZERO_COMPONENT, *range(1, k)):
                grown.append((indices + (k,), params + ((k, l),)))
    return tuple(grown)


def _theta2_choices(k: int, I0: Tuple[int, ...], I1: Tuple[int, ...]) -> Tuple[int, ...]:
    if k in I0 and k in I1:
        return (ZERO_COMPONENT, *range(1, k + 1))
    return (ZERO_COMPONENT,)


def enumerate_min_relations(k: int) -> List[StaircaseValues]:
    if k < 1:
        raise ValueError("k must be at least 1")
    return [StaircaseValues(k=k, I0=indices, l0=params) for indices, params in _halves(k)]


def enumerate_max_relations(k: int) -> List[StaircaseValues]:
    if k < 1:
        raise ValueError("k must be at least 1")
    return [StaircaseValues(k=k, I1=indices, l1=params) for indices, params in _halves(k)]


def enumerate_staircase(k: int) -> List[StaircaseValues]:
    """
    Every staircase value tuple at level k, as min-relation x max-relation
    pairs with theta2 attached when k lies in both I0 and I1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    halves = _halves(k)
    out = []
    for I0, l0 in halves:
        for I1, l1 in halves:
            for l2 in _theta2_choices(k, I0, I1):
                out.append(StaircaseValues(k=k, I0=I0, l0=l0, I1=I1, l1=l1, l2=l2))
    logger.info(f"Enumerated {len(out)} staircase tuples for k={k}")
    return out


def is_symmetric(v: StaircaseValues) -> bool:
    return v.I0 == v.I1 and v.l0 == v.l1


def enumerate_symmetric(k: int) -> List[StaircaseValues]:
    if k < 1:
        raise ValueError("k must be at least 1")
    out = []
    for indices, params in _halves(k):
        for l2 in _theta2_choices(k, indices, indices):
            out.append(StaircaseValues(k=k, I0=indices, l0=params, I1=indices, l1=params, l2=l2))
    return out


def _unlinked_subsets(k: int) -> List[Tuple[int, ...]]:
    out = []
    for size in range(k + 1):
        for subset in combinations(range(1, k + 1), size):
            if all(b - a > 1 for a, b in zip(subset, subset[1:])):
                out.append(subset)
    return out


def is_linked_free(v: StaircaseValues) -> bool:
    return not v.J0 and not v.J1 and not (v.k in v.I0 and v.k in v.I1)


def enumerate_linked_free(k: int) -> List[StaircaseValues]:
    """Tuples with no consecutive members in I0 or I1 and k not in both."""
    if k < 1:
        raise ValueError("k must be at least 1")
    singles = _unlinked_subsets(k)
    return [
        StaircaseValues(k=k, I0=I0, I1=I1)
        for I0 in singles
        for I1 in singles
        if not (k in I0 and k in I1)
    ]


def special_max(k: int, l: int) -> StaircaseValues:
    """
    Values of max_k^l: I0 = {l..k}, l0 = l on {l+1..k}, l2 = l, I1 = {k}.
    """
    if not 1 <= l <= k:
        raise ValueError(f"l must lie in 1..{k}")
    return StaircaseValues(k=k, I0=range(l, k + 1), l0={j: l for j in range(l + 1, k + 1)},
                           I1=(k,), l2=l)


def special_min(k: int, l: int) -> StaircaseValues:
    if not 1 <= l <= k:
        raise ValueError(f"l must lie in 1..{k}")
    return StaircaseValues(k=k, I1=range(l, k + 1), l1={j: l for j in range(l + 1, k + 1)},
                           I0=(k,), l2=l)


def truncation_max(s: LeKVector, l: int) -> LeKVector:
    """(max_k^l s)(n) = s(n) if n <= max_k(s) and s(n) >= l, else 0."""
    last = max_level(s, s.k)
    if last is None:
        return zero_vector(s.k)
    return make_vector(s.k, [c if c >= l else 0 for c in s.coeffs[:last + 1]])


def truncation_min(s: LeKVector, l: int) -> LeKVector:
    first = min_level(s, s.k)
    if first is None:
        return zero_vector(s.k)
    return make_vector(s.k, [c if n >= first and c >= l else 0 for n, c in enumerate(s.coeffs)])


def distinguishing_subspace(k: int, max_generators: int = 6,
                            progress: bool = False) -> Tuple[int, BlockSequence]:
    """
    Grow an sos subspace until every staircase tuple at level k induces
    its own partition.

    Returns:
        tuple: (number of sos generators used, the sos block sequence)

    Raises:
        NotFoundError: If the cap is reached with some partitions still equal
    """
    tuples = enumerate_staircase(k)
    basis = standard_basis(k, required_generators(k, max_generators))
    full = sos_build(basis, max_generators)
    best = 0
    for m in tqdm(range(1, max_generators + 1), desc="distinctness", disable=not progress):
        beta = BlockSequence(k=k, terms=full.terms[:m])
        elements = subspace_elements(beta)
        signatures = {staircase_signature(v, elements) for v in tuples}
        best = len(signatures)
        logger.debug(f"k={k}, m={m}: {best} of {len(tuples)} partitions distinct")
        if best == len(tuples):
            return m, beta
    raise NotFoundError(
        f"staircase partitions at k={k} not separated within {max_generators} generators",
        {"distinct": best, "tuples": len(tuples)},
    )
