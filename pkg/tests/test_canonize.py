#!/usr/bin/env python3
"""
Tests for partition oracles, canonization and the size estimate.
"""

import random

import pytest

from src.models.errors import BudgetExhaustedError, NotFoundError, OracleDomainError, UsageError
from src.models.staircase import StaircaseValues
from src.models.vectors import BlockSequence, make_vector
from src.services.blockspace import standard_basis, subspace_elements
from src.services.canonize import (
    canonize_bruteforce,
    canonize_symmetric,
    canonize_taylor,
    estimate_n,
    load_partition,
    lower_bound_n,
    minimal_feasible_n,
    oracle_from_function,
    oracle_from_values,
    sample_oracle,
    symmetric_values,
    symmetrize,
    verify_pairs,
)
from src.services.kvector import is_sos
from src.services.staircase import (
    enumerate_staircase,
    enumerate_symmetric,
    eval_staircase,
    is_symmetric,
    partition_signature,
    staircase_signature,
)
from tests.conftest import K1_RELATIONS


@pytest.fixture(scope="module")
def wide_k1_oracles():
    """The five k=1 relations on <e_0..e_8>, room for three sos terms."""
    generators = standard_basis(1, 9)
    return {name: oracle_from_values(generators, v) for name, v in K1_RELATIONS.items()}


def test_verify_pairs():
    assert verify_pairs([0, 0, 1], ["a", "a", "b"]) == 3
    assert verify_pairs([0, 0, 1], ["a", "b", "b"]) is None


def test_taylor_fast_path_examples(k1_oracles):
    result = canonize_taylor(k1_oracles["min"], 2)
    assert result.values == K1_RELATIONS["min"]
    assert result.method == "taylor"
    # narrowest span first, then smallest coefficient rows
    assert result.witness == BlockSequence(k=1, terms=standard_basis(1, 6).terms[2:])
    assert result.candidates_tried == 1
    assert canonize_taylor(k1_oracles["equality"], 2).values.l2 == 1
    everything = canonize_taylor(k1_oracles["all"], 3).values
    assert (everything.I0, everything.I1, everything.l2) == ((), (), -1)


@pytest.mark.parametrize("name", sorted(K1_RELATIONS))
def test_taylor_recovers_each_relation(name, k1_oracles):
    assert canonize_taylor(k1_oracles[name], 2).values == K1_RELATIONS[name]


def test_taylor_rejects_other_levels():
    oracle = oracle_from_values(standard_basis(2, 3), StaircaseValues(k=2))
    with pytest.raises(UsageError):
        canonize_taylor(oracle, 2)


def test_taylor_not_found_when_undecided():
    oracle = oracle_from_function(standard_basis(1, 4), lambda s: len(s.support))
    with pytest.raises(NotFoundError):
        canonize_taylor(oracle, 2)


def test_bruteforce_max_example(k1_oracles):
    result = canonize_bruteforce(k1_oracles["max"], 2)
    assert result.values == K1_RELATIONS["max"]
    assert result.witness.terms == (make_vector(1, (1, 0, 1)), make_vector(1, (0, 0, 0, 1, 0, 1)))
    assert result.candidates_tried == 1
    assert result.checked_pairs == 3


@pytest.mark.parametrize("name", sorted(K1_RELATIONS))
def test_bruteforce_agrees_with_taylor(name, wide_k1_oracles):
    oracle = wide_k1_oracles[name]
    brute = canonize_bruteforce(oracle, 3)
    fast = canonize_taylor(oracle, 3)
    assert brute.values == fast.values == K1_RELATIONS[name]


@pytest.mark.parametrize("name", sorted(K1_RELATIONS))
def test_witness_carries_the_relation(name, k1_oracles):
    oracle = k1_oracles[name]
    result = canonize_bruteforce(oracle, 2)
    elements = subspace_elements(result.witness)
    labels = [oracle.class_id(s) for s in elements]
    assert partition_signature(labels) == staircase_signature(result.values, elements)


def test_injective_oracle_canonizes_to_equality(wide_k1_oracles):
    generators = wide_k1_oracles["all"].generators
    elements = subspace_elements(generators)
    labels = dict(zip((s.key() for s in elements), random.Random(5).sample(range(10 ** 6), len(elements))))
    oracle = oracle_from_function(generators, lambda s: labels[s.key()])
    assert canonize_bruteforce(oracle, 3).values == K1_RELATIONS["equality"]


def test_relabeling_does_not_change_the_result(wide_k1_oracles):
    generators = wide_k1_oracles["all"].generators
    for name, v in K1_RELATIONS.items():
        shuffled = oracle_from_function(generators, lambda s: ("class", eval_staircase(v, s).key()))
        assert canonize_bruteforce(shuffled, 3).values == v


def test_seeded_random_oracles_canonize():
    generators = standard_basis(1, 8)
    tuples = enumerate_staircase(1)
    for seed in range(50):
        rng = random.Random(seed)
        v = rng.choice(tuples)
        labels = {}
        oracle = oracle_from_function(
            generators, lambda s: labels.setdefault(eval_staircase(v, s).key(), rng.random()))
        brute = canonize_bruteforce(oracle, 2)
        fast = canonize_taylor(oracle, 2)
        assert fast.values == v
        elements = subspace_elements(brute.witness)
        assert staircase_signature(brute.values, elements) == staircase_signature(fast.values, elements)


def _carries(oracle, result):
    elements = subspace_elements(result.witness)
    labels = [oracle.class_id(s) for s in elements]
    return partition_signature(labels) == staircase_signature(result.values, elements)


@pytest.mark.parametrize("kind", ["refined", "uniform"])
def test_sampled_oracles_canonize(kind):
    generators = standard_basis(1, 8)
    for seed in range(25):
        oracle = sample_oracle(1, generators, random.Random(f"{kind}-{seed}"), kind)
        brute = canonize_bruteforce(oracle, 2)
        assert all(is_sos(term) for term in brute.witness.terms)
        assert _carries(oracle, brute)
        try:
            fast = canonize_taylor(oracle, 2)
        except NotFoundError:
            continue
        assert len(fast.witness) == 4
        assert _carries(oracle, fast)


def test_k2_bruteforce_on_staircase_oracles(sos_k2):
    rng = random.Random(11)
    for v in rng.sample(enumerate_staircase(2), 6):
        oracle = oracle_from_values(sos_k2, v)
        result = canonize_bruteforce(oracle, 2)
        elements = subspace_elements(result.witness)
        assert staircase_signature(result.values, elements) == staircase_signature(v, elements)


def test_k2_single_term_is_trivially_canonical():
    generators = standard_basis(2, 9)
    oracle = oracle_from_values(generators, StaircaseValues(k=2, I0=(1, 2)))
    result = canonize_bruteforce(oracle, 1)
    assert result.witness.terms[0] == make_vector(2, (0, 0, 1, 0, 2, 0, 2, 0, 1))
    assert result.checked_pairs == 0


def test_bruteforce_not_found(k1_oracles):
    oracle = oracle_from_function(k1_oracles["all"].generators, lambda s: len(s.support))
    with pytest.raises(NotFoundError) as info:
        canonize_bruteforce(oracle, 2)
    assert info.value.exit_code == 3
    assert info.value.stats["candidates"] == 1
    assert info.value.stats["generators"] == 6
    assert info.value.stats["m"] == 2


def test_bruteforce_rejects_empty_length(k1_oracles):
    with pytest.raises(UsageError):
        canonize_bruteforce(k1_oracles["min"], 0)


def test_canonization_is_idempotent(wide_k1_oracles):
    first = canonize_bruteforce(wide_k1_oracles["minmax"], 3)
    restricted = oracle_from_function(first.witness, wide_k1_oracles["minmax"].class_id)
    second = canonize_bruteforce(restricted, 3)
    assert second.witness == first.witness
    assert second.values == first.values


def test_parallel_scan_matches_sequential(wide_k1_oracles):
    oracle = wide_k1_oracles["max"]
    sequential = canonize_bruteforce(oracle, 2)
    parallel = canonize_bruteforce(oracle, 2, workers=2)
    assert parallel.witness == sequential.witness
    assert parallel.values == sequential.values
    assert parallel.candidates_tried == sequential.candidates_tried


def test_symmetrize():
    family = symmetrize(standard_basis(1, 4))
    assert family.terms == (make_vector(1, (1, 0, 0, 1)), make_vector(1, (0, 1, 1)))
    with pytest.raises(ValueError):
        symmetrize(standard_basis(1, 3))


def test_symmetric_values():
    assert symmetric_values(K1_RELATIONS["min"]) == K1_RELATIONS["minmax"]
    assert symmetric_values(K1_RELATIONS["equality"]) == K1_RELATIONS["equality"]
    for v in enumerate_symmetric(2):
        assert symmetric_values(v) == v
    assert all(is_symmetric(symmetric_values(v)) for v in enumerate_staircase(2))


def test_canonize_symmetric():
    oracle = oracle_from_values(standard_basis(1, 12), K1_RELATIONS["min"])
    result = canonize_symmetric(oracle, 2)
    assert result.source_values == K1_RELATIONS["min"]
    assert result.values == K1_RELATIONS["minmax"]
    assert len(result.family) == 2
    assert result.checked_pairs == 3


def test_load_partition_round_trip(k1_oracles):
    oracle = k1_oracles["minmax"]
    payload = oracle.to_json()
    assert payload["n"] == 5
    loaded = load_partition(payload)
    assert loaded.classes == oracle.classes
    assert loaded.generators == oracle.generators


def test_load_partition_with_generators():
    generators = BlockSequence(k=1, terms=[[1, 0, 1], [0, 0, 0, 1]])
    payload = oracle_from_values(generators, K1_RELATIONS["max"]).to_json()
    assert "generators" in payload
    assert load_partition(payload).generators == generators


def test_load_partition_requires_every_vector(k1_oracles):
    payload = k1_oracles["min"].to_json()
    payload["classes"].pop(next(iter(payload["classes"])))
    with pytest.raises(OracleDomainError):
        load_partition(payload)


@pytest.mark.parametrize("kind", ["refined", "uniform"])
def test_sample_oracle_is_deterministic(kind):
    generators = standard_basis(2, 3)
    first = sample_oracle(2, generators, random.Random("7"), kind)
    second = sample_oracle(2, generators, random.Random("7"), kind)
    assert first.classes == second.classes
    assert set(first.classes) == {s.key() for s in subspace_elements(generators)}


def test_sample_oracle_unknown_kind():
    with pytest.raises(ValueError):
        sample_oracle(1, standard_basis(1, 2), random.Random(0), "other")


def test_size_bounds():
    assert lower_bound_n(2, 3) == 9
    assert minimal_feasible_n(1, 1, 5) == 2
    assert minimal_feasible_n(1, 2, 10) == 5
    with pytest.raises(BudgetExhaustedError):
        minimal_feasible_n(1, 3, 4)


def test_estimate_without_trials():
    report = estimate_n(2, 3, 0)
    assert report.n == 9
    assert report.note == "lower bound from sos feasibility"


def test_estimate_with_trials():
    report = estimate_n(1, 1, 2, seed=3)
    assert report.n == 2
    assert report.lower_bound == 1
    assert len(report.failures_below) == 2
    assert report == estimate_n(1, 1, 2, seed=3)
    with pytest.raises(BudgetExhaustedError):
        estimate_n(1, 1, 2, max_n=1)
