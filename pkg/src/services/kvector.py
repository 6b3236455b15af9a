#!/usr/bin/env python3
"""
Lattice algebra of (≤k)-vectors.

Join and meet are pointwise max and min, the tetris map T lowers every
coefficient by one (floored at 0), and lift S is its inverse on the
support. The module also holds the block orderings and the sos predicate.
"""

import logging
from itertools import zip_longest
from typing import Iterable, Optional

from src.models.errors import AmbientMismatchError, BlockOrderError, UndefinedOnZeroError
from src.models.vectors import KVector, LeKVector, make_vector

logger = logging.getLogger(__name__)


def _same_ambient(s: LeKVector, t: LeKVector) -> int:
    if s.k != t.k:
        raise AmbientMismatchError(f"ambient levels differ: {s.k} != {t.k}")
    return s.k


def join(s: LeKVector, t: LeKVector) -> LeKVector:
    k = _same_ambient(s, t)
    return make_vector(k, [max(a, b) for a, b in zip_longest(s.coeffs, t.coeffs, fillvalue=0)])


def meet(s: LeKVector, t: LeKVector) -> LeKVector:
    k = _same_ambient(s, t)
    return make_vector(k, [min(a, b) for a, b in zip(s.coeffs, t.coeffs)])


def join_all(k: int, vectors: Iterable[LeKVector]) -> LeKVector:
    """Join of a possibly empty family; the empty join is 0."""
    coeffs = []
    for vector in vectors:
        if vector.k != k:
            raise AmbientMismatchError(f"ambient levels differ: {vector.k} != {k}")
        if len(vector.coeffs) > len(coeffs):
            coeffs.extend([0] * (len(vector.coeffs) - len(coeffs)))
        for n, c in enumerate(vector.coeffs):
            if c > coeffs[n]:
                coeffs[n] = c
    return make_vector(k, coeffs)


def tetris(s: LeKVector, i: int = 1) -> LeKVector:
    """
    Apply T^i: every coefficient is reduced by i and floored at 0.

    Args:
        s: The vector to lower
        i: Number of applications, i >= 0

    Returns:
        LeKVector: T^i(s) at the same ambient level
    """
    if i < 0:
        raise ValueError("tetris exponent must be nonnegative")
    if i == 0:
        return s
    return make_vector(s.k, [c - i if c > i else 0 for c in s.coeffs])


def lift(s: LeKVector) -> KVector:
    """
    The inverse S of T: +1 on the support, ambient level raised by one.
    """
    if s.is_zero:
        raise UndefinedOnZeroError("lift is undefined on the zero vector")
    if s.level != s.k:
        raise ValueError(f"lift expects a {s.k}-vector, got level {s.level}")
    return make_vector(s.k + 1, [c + 1 if c else 0 for c in s.coeffs])


def relevel(s: LeKVector, k: int) -> LeKVector:
    """Embed s into ambient level k; k must not be below the level of s."""
    if k < s.level or k < 1:
        raise AmbientMismatchError(f"cannot embed a vector of level {s.level} at ambient level {k}")
    return make_vector(k, s.coeffs)


def restrict(s: LeKVector, positions: Iterable[int]) -> LeKVector:
    """s↾X: keep the values of s on X, zero elsewhere."""
    keep = set(positions)
    return make_vector(s.k, [c if n in keep else 0 for n, c in enumerate(s.coeffs)])


def block_less(s: LeKVector, t: LeKVector) -> bool:
    """max supp s < min supp t; false when either vector is 0."""
    if s.is_zero or t.is_zero:
        return False
    return s.max_support < t.min_support


def sqsubseteq(s: LeKVector, t: LeKVector) -> bool:
    """t restricted to the support of s equals s."""
    _same_ambient(s, t)
    return all(t.value(n) == c for n, c in enumerate(s.coeffs) if c)


def perp(s: LeKVector, t: LeKVector) -> bool:
    """s(n) != t(n) on every common support point."""
    _same_ambient(s, t)
    return all(s.value(n) != t.value(n) for n in set(s.support) & set(t.support))


def lattice_leq(s: LeKVector, t: LeKVector) -> bool:
    return meet(s, t) == s


def disjoint_sum(s: LeKVector, t: LeKVector) -> LeKVector:
    """s + t, defined only when s < t."""
    _same_ambient(s, t)
    if not block_less(s, t):
        raise BlockOrderError("disjoint_sum requires max supp s < min supp t")
    return join(s, t)


def min_level(s: LeKVector, i: int) -> Optional[int]:
    """Least position carrying the value i, or None when i is not in the range."""
    for n, c in enumerate(s.coeffs):
        if c == i:
            return n
    return None


def max_level(s: LeKVector, i: int) -> Optional[int]:
    for n in range(len(s.coeffs) - 1, -1, -1):
        if s.coeffs[n] == i:
            return n
    return None


def is_sos(s: LeKVector) -> bool:
    """
    Decide whether s is a system of staircases at its own level.

    With top = level(s):
      1. every value 1..top occurs;
      2. min_1 < ... < min_top < max_top < ... < max_1;
      3. the ranges of s on [min_{i-1}, min_i] and on [max_i, max_{i-1}]
         are {0..i} for 2 <= i <= top, and the range on [min_top, max_top]
         is {0..top}.

    Applied to T(s) this judges the (k-1)-vector at level k-1.
    """
    top = s.level
    if top == 0:
        return False
    coeffs = s.coeffs
    mins = {}
    maxs = {}
    for n, c in enumerate(coeffs):
        if c:
            mins.setdefault(c, n)
            maxs[c] = n
    if len(mins) != top:
        return False
    if not mins[top] < maxs[top]:
        return False
    for i in range(1, top):
        if not (mins[i] < mins[i + 1] and maxs[i + 1] < maxs[i]):
            return False
    for i in range(2, top + 1):
        expected = set(range(i + 1))
        if set(coeffs[mins[i - 1]:mins[i] + 1]) != expected:
            return False
        if set(coeffs[maxs[i]:maxs[i - 1] + 1]) != expected:
            return False
    return set(coeffs[mins[top]:maxs[top] + 1]) == set(range(top + 1))
