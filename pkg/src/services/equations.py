#!/usr/bin/env python3
"""
Free k-terms and k-equations: parsing, substitution, composition and
deciding over finite block sequences.

An equation p ~ q is true in alpha when every substitution of a block
subsequence of alpha relates both sides, false when none does, and
undecided otherwise.
"""

import logging
import re
from typing import Callable, Hashable, List, Optional, Sequence, Tuple, Union

from src.models.equation import Decision, FreeTerm, KEquation, Verdict
from src.models.errors import AmbientMismatchError, ArityError, BlockOrderError
from src.models.partition import PartitionOracle
from src.models.staircase import StaircaseValues
from src.models.vectors import BlockSequence, LeKVector, parse_vector, zero_vector
from src.services.blockspace import block_chains, compose as compose_vectors, subspace_rows
from src.services.kvector import block_less, join
from src.services.staircase import eval_staircase

logger = logging.getLogger(__name__)

Relation = Union[StaircaseValues, PartitionOracle, Callable[[LeKVector], Hashable]]

_SUMMAND = re.compile(r"^(?:T(?:\^(\d+))?\s*)?x(\d+)$")
_CONSTANT = re.compile(r"^([st])\s*=\s*(.+)$")


def parse_term(text: str, k: int, arity: Optional[int] = None) -> FreeTerm:
    """
    Parse "x0 + T x1 + T^2 x2". Variables that do not occur get
    exponent 0, i.e. T^k x_i.
    """
    found = {}
    for raw in text.split("+"):
        summand = " ".join(raw.split())
        match = _SUMMAND.match(summand)
        if not match:
            raise ValueError(f"cannot parse summand {summand!r}")
        power = 0
        if summand.startswith("T"):
            power = int(match.group(1)) if match.group(1) else 1
        if power > k:
            raise ValueError(f"T^{power} exceeds level {k}")
        index = int(match.group(2))
        if index in found:
            raise ValueError(f"variable x{index} occurs twice")
        found[index] = k - power
    width = max(found) + 1 if arity is None else arity
    if width <= max(found):
        raise ArityError(f"term uses x{max(found)} but arity is {width}")
    return FreeTerm(k=k, exps=tuple(found.get(i, 0) for i in range(width)))


def format_term(p: FreeTerm) -> str:
    return str(p)


def _split_side(text: str, symbol: str) -> Tuple[str, Optional[str]]:
    """Strip a leading or trailing constant symbol; report its placement."""
    summands = [part.strip() for part in text.split("+")]
    if summands and summands[0] == symbol:
        return " + ".join(summands[1:]), "prefix"
    if summands and summands[-1] == symbol:
        return " + ".join(summands[:-1]), "suffix"
    return text, None


def parse_equation(text: str, k: int) -> KEquation:
    """
    Parse "x0 + T x1 ~ x0", optionally with constants, e.g.
    "s + x0 ~ t + x0 ; s=[1,0,1] ; t=[1]".
    """
    main, *clauses = [part.strip() for part in text.split(";")]
    constants = {"s": zero_vector(k), "t": zero_vector(k)}
    for clause in clauses:
        match = _CONSTANT.match(clause)
        if not match:
            raise ValueError(f"cannot parse constant clause {clause!r}")
        constants[match.group(1)] = parse_vector(match.group(2), k)
    if main.count("~") != 1:
        raise ValueError("an equation has exactly one '~'")
    left_text, right_text = (side.strip() for side in main.split("~"))
    left_text, left_place = _split_side(left_text, "s")
    right_text, right_place = _split_side(right_text, "t")
    places = {place for place in (left_place, right_place) if place}
    if len(places) > 1:
        raise ValueError("constants must both lead or both trail")
    left = parse_term(left_text, k)
    right = parse_term(right_text, k)
    pair = (constants["s"], constants["t"])
    place = places.pop() if places else None
    return KEquation(
        k=k,
        left=left,
        right=right,
        prefix=pair if place == "prefix" else None,
        suffix=pair if place == "suffix" else None,
    )


def taylor_equations() -> List[KEquation]:
    """The four k=1 classifier equations."""
    return [
        parse_equation(text, 1)
        for text in ("x0 ~ x1", "x0 + x1 ~ x0", "x0 + x1 ~ x1", "x0 + x1 + x2 ~ x0 + x2")
    ]


def substitute(p: FreeTerm, args: Union[BlockSequence, Sequence[LeKVector]]) -> LeKVector:
    """
    p(a_0, ..., a_n) = T^{k-m_0} a_0 + ... + T^{k-m_n} a_n.

    Raises:
        ArityError: If the argument count differs from the term's arity
        BlockOrderError: If the arguments are not block-ordered
    """
    terms = tuple(args.terms) if isinstance(args, BlockSequence) else tuple(args)
    if len(terms) != p.arity:
        raise ArityError(f"term has {p.arity} variables, got {len(terms)} arguments")
    for term in terms:
        if term.k != p.k:
            raise AmbientMismatchError(f"ambient levels differ: {term.k} != {p.k}")
    for index in range(len(terms) - 1):
        if not block_less(terms[index], terms[index + 1]):
            raise BlockOrderError(f"arguments {index} and {index + 1} are not block-ordered")
    return compose_vectors(p.k, terms, p.exps)


def compose(p: FreeTerm, terms: Sequence[FreeTerm]) -> FreeTerm:
    """
    p(t_0, ..., t_n) as a single term: T^a T^b = T^{min(a+b, k)} on each
    variable, joined over the summands.
    """
    if len(terms) != p.arity:
        raise ArityError(f"term has {p.arity} variables, got {len(terms)} terms")
    if any(term.k != p.k for term in terms):
        raise AmbientMismatchError("all terms must share the level of p")
    k = p.k
    width = max(term.arity for term in terms)
    exps = [0] * width
    for m, term in zip(p.exps, terms):
        drop = k - m
        for index, e in enumerate(term.exps):
            value = e - drop if e > drop else 0
            if value > exps[index]:
                exps[index] = value
    return FreeTerm(k=k, exps=tuple(exps))


def relation_key(rel: Relation) -> Callable[[LeKVector], Hashable]:
    """Map a relation oracle to a function whose fibers are its classes."""
    if isinstance(rel, StaircaseValues):
        return lambda s: eval_staircase(rel, s)
    if isinstance(rel, PartitionOracle):
        return rel.class_id
    if callable(rel):
        return rel
    raise TypeError(f"unsupported relation oracle {type(rel).__name__}")


def _precedes(constant: LeKVector, term: LeKVector) -> bool:
    return constant.is_zero or block_less(constant, term)


def _follows(constant: LeKVector, term: LeKVector) -> bool:
    return constant.is_zero or block_less(term, constant)


def decide(eq: KEquation, alpha: BlockSequence, rel: Relation) -> Decision:
    """
    Decide an equation over the finite block sequence alpha.

    Args:
        eq: The equation
        alpha: Block sequence whose subsequences are substituted
        rel: StaircaseValues, PartitionOracle or a key function

    Returns:
        Decision: verdict plus the number of substitutions checked

    Raises:
        OracleDomainError: If the oracle lacks a substituted vector
    """
    if eq.k != alpha.k:
        raise AmbientMismatchError(f"ambient levels differ: {eq.k} != {alpha.k}")
    key = relation_key(rel)
    k = eq.k
    rows = subspace_rows(alpha)
    checked = 0
    related = unrelated = False
    for chain in block_chains(rows, len(alpha), eq.arity):
        terms = [row[3] for row in chain]
        left_const = right_const = None
        if eq.prefix is not None:
            left_const, right_const = eq.prefix
            if not (_precedes(left_const, terms[0]) and _precedes(right_const, terms[0])):
                continue
        elif eq.suffix is not None:
            left_const, right_const = eq.suffix
            if not (_follows(left_const, terms[-1]) and _follows(right_const, terms[-1])):
                continue
        left = compose_vectors(k, terms, eq.left.exps)
        right = compose_vectors(k, terms, eq.right.exps)
        if left_const is not None:
            left = join(left_const, left)
            right = join(right_const, right)
        checked += 1
        if key(left) == key(right):
            related = True
        else:
            unrelated = True
        if related and unrelated:
            return Decision(verdict=Verdict.UNDECIDED, checked=checked, note="mixed outcomes")
    if checked == 0:
        logger.debug(f"no admissible substitution for {eq}")
        return Decision(verdict=Verdict.UNDECIDED, checked=0, note="empty substitution set")
    return Decision(verdict=Verdict.TRUE if related else Verdict.FALSE, checked=checked)
