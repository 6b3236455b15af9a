#!/usr/bin/env python3
"""
Tests for the delta-net correspondence with the positive sphere of c_0.
"""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.errors import AmbientMismatchError, DegenerateInputError, GridError, NetDomainError
from src.models.net import LevelIntervals, NetParams, PositiveVector
from src.models.staircase import FamilyMember, MemberKind, StaircaseValues
from src.models.vectors import make_vector
from src.services.blockspace import compose, standard_basis, subspace_elements
from src.services.c0net import (
    approximant_sequence,
    delta_for_k,
    extend_f0,
    extend_f1,
    gamma_approximant,
    level_intervals,
    member_f1,
    params_from_delta,
    pull_back_oracle,
    push_forward,
    random_delta_sos,
    random_scale,
    round_gamma,
    snap_to_grid,
    theta,
    theta_inv,
    verify_net,
)
from src.services.canonize import oracle_from_values
from src.services.kvector import is_sos, join, tetris
from src.services.staircase import enumerate_staircase, eval_staircase
from tests.conftest import build_sos

GOLDEN = (math.sqrt(5) - 1) / 2


@pytest.fixture(scope="module")
def p2():
    return delta_for_k(2)


def test_delta_for_k():
    assert delta_for_k(1).delta == 1.0
    assert delta_for_k(1).eps == 0.5
    assert delta_for_k(2).delta == pytest.approx(GOLDEN, abs=1e-10)
    d = delta_for_k(3).delta
    assert abs(d * (1 + d) ** 2 - 1) < 1e-9
    with pytest.raises(ValueError):
        delta_for_k(0)


def test_params_from_delta():
    assert params_from_delta(1.0).k == 1
    assert params_from_delta(0.5).k == 3
    for bad in (0.0, 1.5, -0.2):
        with pytest.raises(NetDomainError):
            params_from_delta(bad)


def test_params_need_the_least_level():
    with pytest.raises(ValueError):
        NetParams(k=1, delta=0.5)
    with pytest.raises(ValueError):
        NetParams(k=3, delta=1.0)
    with pytest.raises(ValueError):
        NetParams(k=4, delta=0.5)
    assert NetParams(k=3, delta=0.5).k == 3
    for k in (1, 2, 3, 4):
        p = delta_for_k(k)
        assert params_from_delta(p.delta).k == k


def test_level_intervals(p2):
    intervals = level_intervals(p2)
    assert intervals.gammas == pytest.approx((0.0, 0.5, (1 + GOLDEN) / 2, 1.0), abs=1e-9)
    assert intervals.contains(2, 1.0)
    assert not intervals.contains(1, intervals.gammas[2])
    with pytest.raises(ValueError):
        LevelIntervals(k=2, gammas=(0.0, 0.6, 0.5, 1.0))


def test_theta_example(p2):
    assert theta(p2, [1.0, 0.0, p2.eps]) == make_vector(2, (2, 0, 1))
    with pytest.raises(GridError) as info:
        theta(p2, [1.0, 0.5])
    assert info.value.index == 1


def test_theta_inv(p2):
    x = theta_inv(p2, make_vector(2, (2, 0, 1)))
    assert x.entries == pytest.approx((1.0, 0.0, p2.eps))
    assert theta_inv(p2, make_vector(2, (2,)), dim=3).entries == (1.0, 0.0, 0.0)
    with pytest.raises(NetDomainError):
        theta_inv(p2, make_vector(2, (0, 0, 2)), dim=2)
    with pytest.raises(AmbientMismatchError):
        theta_inv(p2, make_vector(1, (1,)))


def test_round_gamma_example(p2):
    assert round_gamma(p2, [0.4, 0.7, 0.9]) == make_vector(2, (0, 1, 2))
    with pytest.raises(NetDomainError):
        round_gamma(p2, [0.4, 1.2])


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), st.lists(st.integers(0, k), max_size=8))))
def test_gamma_inverts_theta(case):
    k, coeffs = case
    p = delta_for_k(k)
    s = make_vector(k, coeffs)
    x = theta_inv(p, s)
    assert round_gamma(p, x) == s
    assert theta(p, x) == s


@settings(max_examples=100)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=6),
       st.lists(st.floats(0.0, 1.0), min_size=1, max_size=6))
def test_gamma_is_additive_on_disjoint_supports(left, right):
    p = delta_for_k(2)
    x = np.concatenate([left, np.zeros(len(right))])
    y = np.concatenate([np.zeros(len(left)), right])
    assert round_gamma(p, x + y) == join(round_gamma(p, x), round_gamma(p, y))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_scaling_acts_as_tetris(k):
    p = delta_for_k(k)
    rng = np.random.default_rng(k)
    for s in subspace_elements(standard_basis(k, 3)):
        x = theta_inv(p, s).as_array()
        for i in range(k + 1):
            rho = random_scale(p, i, rng)
            assert level_intervals(p).contains(i, rho)
            assert round_gamma(p, rho * x) == tetris(s, k - i)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_verify_net(k):
    p = delta_for_k(k)
    report = verify_net(p, dim=6, samples=10000, seed=4)
    assert report.within_delta
    assert 0.0 < report.max_distance <= p.delta + 1e-9
    assert report.samples == 10000
    assert verify_net(p, dim=6, samples=10000, seed=4) == report


def test_verify_net_arguments(p2):
    assert verify_net(p2, dim=5, samples=3000, seed=4, chunk=500) == verify_net(p2, 5, 3000, seed=4, chunk=500)
    with pytest.raises(ValueError):
        verify_net(p2, dim=0, samples=10)
    with pytest.raises(ValueError):
        verify_net(p2, dim=3, samples=0)


def test_grid_vectors_snap_to_themselves(p2):
    x = theta_inv(p2, make_vector(2, (1, 0, 2, 0, 1))).as_array()
    assert np.array_equal(snap_to_grid(p2, x), x)


def test_positive_vector():
    x = PositiveVector(entries=[0.0, 1.0, 0.25])
    assert x.dim == 3
    assert x.norm == 1.0
    assert x.on_sphere()
    assert x.support() == (1, 2)
    with pytest.raises(ValueError):
        PositiveVector(entries=[0.5, -0.1])


def test_extensions_on_delta_sos(p2, sos_k2):
    rng = np.random.default_rng(9)
    tuples = enumerate_staircase(2)
    for trial in range(1000):
        x = random_delta_sos(p2, sos_k2, rng)
        rounded = round_gamma(p2, x)
        f = tuples[int(rng.integers(len(tuples)))]
        image = extend_f0(f, p2, x)
        assert image == eval_staircase(f, rounded)
        kept = extend_f1(f, p2, x)
        assert round_gamma(p2, kept) == image
        assert set(kept.support()) == set(image.support)
        assert all(kept.entries[n] == x.entries[n] for n in kept.support())


def test_delta_sos_rounds_into_the_subspace(p2, sos_k2):
    rng = np.random.default_rng(2)
    elements = set(subspace_elements(sos_k2))
    for _ in range(10):
        assert round_gamma(p2, random_delta_sos(p2, sos_k2, rng)) in elements


def test_extension_rejects_non_sos(p2):
    f = StaircaseValues(k=2, I0=(1, 2))
    with pytest.raises(DegenerateInputError):
        extend_f0(f, p2, theta_inv(p2, make_vector(2, (2,))))
    with pytest.raises(AmbientMismatchError):
        extend_f1(StaircaseValues(k=1), p2, [1.0])


@pytest.mark.parametrize("i", [1, 2])
def test_approximants_reach_the_member(p2, i):
    x = theta_inv(p2, make_vector(2, (0, 1, 0, 2, 0, 2, 0, 1)))
    member = member_f1(FamilyMember(k=2, kind=MemberKind.MIN, i=i), p2, x)
    sequence = approximant_sequence(p2, i, x, 100)
    assert sequence[-1] == member
    assert len(sequence) == 100


def test_approximant_arguments(p2):
    with pytest.raises(ValueError):
        gamma_approximant(p2, 0, [1.0], 1)
    with pytest.raises(ValueError):
        gamma_approximant(p2, 1, [1.0], 0)


def test_push_forward_and_pull_back(p2, sos_k2):
    images = push_forward(p2, sos_k2)
    assert len({x.dim for x in images}) == 1
    assert [round_gamma(p2, x) for x in images] == list(sos_k2.terms)
    f = StaircaseValues(k=2, I0=(1, 2), I1=(2,))
    pulled = pull_back_oracle(p2, sos_k2, lambda x: eval_staircase(f, round_gamma(p2, x)).key())
    assert pulled.classes == oracle_from_values(sos_k2, f).classes


def test_delta_sos_matches_composition(p2, sos_k2):
    terms = sos_k2.terms
    x = sum(rho * theta_inv(p2, term, terms[-1].max_support + 1).as_array()
            for rho, term in zip((1.0, 0.9 * level_intervals(p2).gammas[2], 0.0), terms))
    assert round_gamma(p2, x) == compose(2, terms, (2, 1, 0))


def _midpoint(p, i):
    low, high = level_intervals(p).interval(i)
    return (low + high) / 2


def _delta_sos_family(p, basis):
    """Every sum of rho_n Theta^{-1}(b_n) with rho_0 = 1 and the other rho_n at a level midpoint."""
    dim = basis.terms[-1].max_support + 1
    images = [theta_inv(p, term, dim).as_array() for term in basis.terms]
    out = []
    for levels in itertools.product(range(p.k + 1), repeat=len(images) - 1):
        x = images[0].copy()
        for i, image in zip(levels, images[1:]):
            x = x + _midpoint(p, i) * image
        out.append(x)
    return out


@pytest.mark.parametrize("k", [1, 2, 3])
def test_extension_stays_within_delta_of_the_net(k):
    p = delta_for_k(k)
    basis = build_sos(k, 3)
    tuples = enumerate_staircase(k)
    rng = np.random.default_rng(k)
    for _ in range(1000):
        x = random_delta_sos(p, basis, rng)
        f = tuples[int(rng.integers(len(tuples)))]
        grid_image = theta_inv(p, extend_f0(f, p, x), x.dim).as_array()
        assert np.abs(grid_image - extend_f1(f, p, x).as_array()).max() <= p.delta + 1e-9


def test_equal_f1_forces_equal_f0(p2, sos_k2):
    family = _delta_sos_family(p2, sos_k2)
    related = 0
    for f in enumerate_staircase(2):
        images = [(extend_f1(f, p2, x), extend_f0(f, p2, x)) for x in family]
        for (f1x, f0x), (f1y, f0y) in itertools.combinations(images, 2):
            if f1x == f1y:
                related += 1
                assert f0x == f0y
    assert related > 0


def test_extensions_agree_with_f_on_the_net(p2, sos_k2):
    dim = sos_k2.terms[-1].max_support + 1
    elements = [s for s in subspace_elements(sos_k2) if s.level == 2 and is_sos(s)]
    assert elements
    for s in elements:
        x = theta_inv(p2, s, dim)
        for f in enumerate_staircase(2):
            image = eval_staircase(f, s)
            assert extend_f0(f, p2, x) == image
            assert extend_f1(f, p2, x) == theta_inv(p2, image, dim)


@pytest.mark.parametrize("kind", [MemberKind.MIN, MemberKind.MAX])
def test_landmark_members_are_constant_between_related_vectors(p2, sos_k2, kind):
    family = _delta_sos_family(p2, sos_k2)
    rng = np.random.default_rng(3)
    related = 0
    for i in (1, 2):
        member = FamilyMember(k=2, kind=kind, i=i)
        images = [member_f1(member, p2, x) for x in family]
        for (x, fx), (y, fy) in itertools.combinations(zip(family, images), 2):
            if fx != fy:
                continue
            related += 1
            low, high = np.minimum(x, y), np.maximum(x, y)
            for _ in range(5):
                z = low + rng.random(low.shape) * (high - low)
                assert member_f1(member, p2, z) == fx
    assert related > 0
