#!/usr/bin/env python3
"""
Tests for free terms, equations and the decide procedure.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.equation import FreeTerm, KEquation, Verdict
from src.models.errors import ArityError, BlockOrderError, OracleDomainError
from src.models.vectors import BlockSequence, make_vector
from src.services.blockspace import canonical_decomposition, standard_basis
from src.services.canonize import oracle_from_values
from src.services.kvector import join, tetris
from src.services.equations import (
    compose,
    decide,
    format_term,
    parse_equation,
    parse_term,
    substitute,
    taylor_equations,
)
from src.services.staircase import enumerate_staircase
from tests.conftest import K1_RELATIONS, build_sos


def test_parse_and_format_term():
    p = parse_term("x0 + T x1 + T^2 x2", 2)
    assert p.exps == (2, 1, 0)
    assert format_term(p) == "x0 + T x1"
    assert parse_term("T x1", 2, arity=3).exps == (0, 1, 0)
    with pytest.raises(ArityError):
        parse_term("x3", 2, arity=2)
    with pytest.raises(ValueError):
        parse_term("x0 + x0", 2)


def test_parse_equation_with_constants():
    eq = parse_equation("s + x0 ~ t + T x0 ; s=[1,0,1] ; t=[2]", 2)
    assert eq.prefix == (make_vector(2, (1, 0, 1)), make_vector(2, (2,)))
    assert eq.suffix is None
    eq = parse_equation("T x0 + s ~ x0 + t ; s=[0,0,0,2]", 2)
    assert eq.suffix is not None and eq.prefix is None
    assert eq.suffix[1].is_zero


def test_equation_sides_are_padded():
    eq = parse_equation("x0 + x1 ~ x0", 1)
    assert eq.arity == 2
    assert eq.right.exps == (1, 0)


def test_equation_needs_free_terms_without_constants():
    with pytest.raises(ValueError):
        parse_equation("T x0 ~ x0", 2)


def test_substitute_examples():
    args = BlockSequence(k=2, terms=[[2], [0, 2]])
    assert substitute(parse_term("x0 + T x1", 2), args) == make_vector(2, (2, 1))
    assert substitute(FreeTerm(k=2, exps=(2,)), [args.terms[1]]) == args.terms[1]
    assert substitute(FreeTerm(k=2, exps=(0, 2)), args) == args.terms[1]
    with pytest.raises(ArityError):
        substitute(FreeTerm(k=2, exps=(2,)), args)
    with pytest.raises(BlockOrderError):
        substitute(FreeTerm(k=2, exps=(2, 2)), [args.terms[1], args.terms[0]])


def test_compose_examples():
    identity = compose(parse_term("x0 + x1", 2), [parse_term("x0", 2, 2), parse_term("x1", 2, 2)])
    assert identity == parse_term("x0 + x1", 2)
    assert compose(parse_term("T x0", 2), [parse_term("x0 + x1", 2)]) == FreeTerm(k=2, exps=(1, 1))


powers = st.integers(1, 3).flatmap(
    lambda k: st.tuples(st.just(k), st.integers(0, k - 1), st.integers(0, k - 1)))


@settings(max_examples=100)
@given(powers)
def test_compose_adds_powers(case):
    k, a, b = case
    composed = compose(FreeTerm(k=k, exps=(k - a,)), [FreeTerm(k=k, exps=(k - b,))])
    assert composed.exps == (max(k - a - b, 0),)
    alpha = standard_basis(k, 1)
    assert substitute(composed, alpha) == tetris(alpha.terms[0], min(a + b, k))


def test_compose_agrees_with_substitution():
    k = 2
    alpha = build_sos(k, 2)
    p = parse_term("x0 + T x1", k)
    terms = [parse_term("x0 + T x1", k, 2), parse_term("T x0 + x1", k, 2)]
    inner = [substitute(t, alpha) for t in terms]
    direct = join(tetris(inner[0], k - p.exps[0]), tetris(inner[1], k - p.exps[1]))
    composed = compose(p, terms)
    assert composed.exps == (2, 1)
    assert substitute(composed, alpha) == direct
    assert canonical_decomposition(alpha, direct).values == composed.exps


def _decide(text, k, rel, alpha):
    return decide(parse_equation(text, k), alpha, rel)


def test_decide_examples():
    alpha = standard_basis(1, 4)
    oracle = oracle_from_values(alpha, K1_RELATIONS["min"])
    assert _decide("x0 + x1 ~ x0", 1, oracle, alpha).verdict == Verdict.TRUE
    assert _decide("x0 + x1 ~ x1", 1, oracle, alpha).verdict == Verdict.FALSE
    everything = oracle_from_values(alpha, K1_RELATIONS["all"])
    for eq in taylor_equations():
        assert decide(eq, alpha, everything).verdict == Verdict.TRUE


def test_decide_reports_checked_count():
    alpha = standard_basis(1, 3)
    decision = _decide("x0 ~ x1", 1, K1_RELATIONS["min"], alpha)
    assert decision.verdict == "false"
    assert decision.checked == 5
    assert decision.to_json() == {"verdict": "false", "checked": 5}


def test_decide_undecided_on_mixed_outcomes():
    alpha = standard_basis(1, 4)
    decision = _decide("x0 ~ x1", 1, lambda s: len(s.support) % 2, alpha)
    assert decision.verdict == Verdict.UNDECIDED
    assert decision.note == "mixed outcomes"


def test_suffix_equation_with_no_admissible_substitution():
    alpha = standard_basis(1, 3)
    decision = _decide("x0 + s ~ x0 + t ; s=[1] ; t=[1]", 1, K1_RELATIONS["min"], alpha)
    assert decision.verdict == Verdict.UNDECIDED
    assert decision.checked == 0
    assert decision.note == "empty substitution set"


def test_prefix_equation_filters_substitutions():
    alpha = BlockSequence(k=1, terms=[[0, 0, 1], [0, 0, 0, 1]])
    decision = _decide("s + x0 ~ t + x0 ; s=[1] ; t=[0,1]", 1, K1_RELATIONS["max"], alpha)
    assert decision.verdict == Verdict.TRUE
    assert decision.checked == 3
    decision = _decide("s + x0 ~ t + x0 ; s=[1] ; t=[0,1]", 1, K1_RELATIONS["min"], alpha)
    assert decision.verdict == Verdict.FALSE


def test_decide_outside_oracle_domain():
    alpha = standard_basis(1, 3)
    oracle = oracle_from_values(alpha, K1_RELATIONS["min"])
    with pytest.raises(OracleDomainError):
        _decide("s + x0 ~ t + x0 ; s=[1] ; t=[1]", 1, oracle, BlockSequence(k=1, terms=[[0, 0, 0, 1]]))


@pytest.mark.parametrize("name", sorted(K1_RELATIONS))
def test_taylor_equations_are_decided_on_sos_sequences(name, sos_k1):
    for eq in taylor_equations():
        assert decide(eq, sos_k1, K1_RELATIONS[name]).verdict != Verdict.UNDECIDED


def _free_terms(k, arity):
    return [FreeTerm(k=k, exps=exps) for exps in itertools.product(range(k + 1), repeat=arity) if max(exps) == k]


def test_verdicts_do_not_depend_on_the_sos_sequence():
    k = 2
    first = build_sos(k, 3)
    second = BlockSequence(k=k, terms=first.terms[:1] + first.terms[2:])
    third = build_sos(k, 4)
    terms = _free_terms(k, 3)
    assert len(terms) == 19
    equations = [KEquation(k=k, left=p, right=q) for p, q in itertools.combinations_with_replacement(terms, 2)]
    for v in enumerate_staircase(k):
        for eq in equations:
            verdicts = {decide(eq, alpha, v).verdict for alpha in (first, second, third)}
            verdicts.discard(Verdict.UNDECIDED)
            assert len(verdicts) <= 1


def test_truth_transfers_to_lower_powers():
    k = 2
    equations = {
        i: parse_equation(f"x0 + T^{k - i} x1 + x2 ~ x0 + x2", k) for i in range(k + 1)
    }
    transferred = 0
    for alpha in (build_sos(k, 3), build_sos(k, 4)):
        for v in enumerate_staircase(k):
            verdicts = {i: decide(eq, alpha, v).verdict for i, eq in equations.items()}
            for i in range(k + 1):
                if verdicts[i] == Verdict.TRUE:
                    assert all(verdicts[j] == Verdict.TRUE for j in range(i))
            transferred += verdicts[k] == Verdict.TRUE
    assert transferred > 0


def test_decided_verdicts_survive_passing_to_subsequences():
    k = 1
    alpha = build_sos(k, 4)
    beta = BlockSequence(k=k, terms=alpha.terms[1:])
    for v in K1_RELATIONS.values():
        for eq in taylor_equations():
            outer = decide(eq, alpha, v).verdict
            if outer != Verdict.UNDECIDED:
                assert decide(eq, beta, v).verdict == outer
