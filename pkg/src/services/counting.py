#!/usr/bin/env python3
"""
Exact counts of staircase relations.

a_k counts min-relations (equally max-relations), c_k = a_{k-1} those
without k in I0, t_k all staircase relations, s_k the symmetric ones.
Every quantity is an exact Python integer.
"""

from math import factorial
from typing import Tuple


def _check(k: int, least: int = 0) -> None:
    if k < least:
        raise ValueError(f"k must be at least {least}")


def count_a(k: int) -> int:
    """a_k = (k+1) a_{k-1} - (k-1) a_{k-2}, a_0 = 1, a_1 = 2."""
    _check(k)
    previous, current = 1, 2
    if k == 0:
        return previous
    for j in range(2, k + 1):
        previous, current = current, (j + 1) * current - (j - 1) * previous
    return current


def count_a_closed(k: int) -> int:
    """k! e_k(1) = sum over j <= k of k!/j!."""
    _check(k)
    return sum(factorial(k) // factorial(j) for j in range(k + 1))


def count_c(k: int) -> int:
    _check(k)
    return 1 if k == 0 else count_a(k - 1)


def count_t(k: int) -> int:
    """t_k = k (a_k - a_{k-1})^2 + a_k^2."""
    _check(k)
    a = count_a(k)
    if k == 0:
        return a * a
    return k * (a - count_a(k - 1)) ** 2 + a * a


def count_t_closed(k: int) -> int:
    """t_k = (k! e_k(1))^2 + k (k! e_k(1) - (k-1)! e_{k-1}(1))^2."""
    _check(k)
    current = count_a_closed(k)
    if k == 0:
        return current * current
    return current * current + k * (current - count_a_closed(k - 1)) ** 2


def construction_sizes(k: int) -> Tuple[int, int, int, int]:
    """
    Sizes (a_k, b_k, c_k, d_k) of the sets grown level by level: A and B
    hold the min- and max-relations, C (resp. D) those without k in I0
    (resp. I1).

    A_j keeps A_{j-1}, adds j to every member of C_{j-1}, and adds j with
    each of the j choices of theta0_{j,l} to every member of A_{j-1} \\ C_{j-1};
    C_j = A_{j-1}. B and D grow the same way on the max side.
    """
    _check(k)
    a, b, c, d = 1, 1, 1, 1
    for j in range(1, k + 1):
        a, c = a + c + j * (a - c), a
        b, d = b + d + j * (b - d), b
    return a, b, c, d


def count_t_from_set_sizes(k: int) -> int:
    """
    t_k = |A x B| - |(A \\ C) x (B \\ D)| + (k+1) |(A \\ C) x (B \\ D)|:
    pairs with k on both sides carry the k+1 choices of theta2.
    """
    a, b, c, d = construction_sizes(k)
    both = (a - c) * (b - d)
    return a * b - both + (k + 1) * both


def e_gamma(n: int) -> int:
    """e * Gamma(n, 1) = (n-1)! e_{n-1}(1), an integer for n >= 1."""
    _check(n, 1)
    return count_a_closed(n - 1)


def count_t_gamma(k: int) -> int:
    """t_k = e^2 [k (Gamma(k,1) - Gamma(k+1,1))^2 + Gamma(k+1,1)^2]."""
    _check(k)
    upper = e_gamma(k + 1)
    if k == 0:
        return upper * upper
    return k * (e_gamma(k) - upper) ** 2 + upper * upper


def count_s(k: int) -> int:
    """s_k = c_k + (a_k - c_k)(k+1)."""
    _check(k, 1)
    a, c = count_a(k), count_c(k)
    return c + (a - c) * (k + 1)


def count_s_closed(k: int) -> int:
    """s_k = (k+1)! e_k(1) - k! e_{k-1}(1)."""
    _check(k, 1)
    return (k + 1) * count_a_closed(k) - k * count_a_closed(k - 1)


def fibonacci(n: int) -> int:
    """F_0 = 0, F_1 = F_2 = 1."""
    _check(n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def count_linked_free(k: int) -> int:
    _check(k, 1)
    return fibonacci(2 * k + 2)
