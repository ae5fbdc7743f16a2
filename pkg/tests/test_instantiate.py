from __future__ import annotations

import logging
import random

import pytest

from arginst.formula import And, Atom, Neg, Or, parse_formula
from arginst.instantiate import (
    Argument,
    ClaimSet,
    KnowledgeBase,
    KnowledgeBaseTooLarge,
    candidate_supports,
    enumerate_arguments,
    is_argument,
    is_minimal_support,
    mask_members,
)
from arginst.logic import AtomCapExceeded, entails, is_consistent

import oracles
from running_example import RUNNING_ARGS, RUNNING_CLAIMS, RUNNING_KB

a, b = Atom("a"), Atom("b")


def as_pairs(args, kb, cs):
    return {(frozenset(x.support_formulas(kb)), x.claim_formula(cs)) for x in args}


def test_candidate_supports_order():
    assert list(candidate_supports([a, b])) == [0b01, 0b10, 0b11]
    assert list(candidate_supports([a])) == [0b1]
    three = list(candidate_supports([a, b, Atom("c")]))
    assert three == [0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
    assert list(candidate_supports([])) == []


def test_candidate_supports_cap():
    with pytest.raises(KnowledgeBaseTooLarge):
        list(candidate_supports([Atom(f"x{i}") for i in range(5)], kb_cap=4))


def test_is_minimal_support_examples(backend):
    kb = [a, parse_formula("a -> b"), Neg(b)]
    assert is_minimal_support(kb, 0b011, b)
    assert not is_minimal_support([a, Neg(b)], 0b11, a)
    assert not is_minimal_support([a], 0b1, Or(a, Neg(a)))


def test_reference_arguments(backend):
    args = enumerate_arguments(RUNNING_KB, RUNNING_CLAIMS)
    assert as_pairs(args, RUNNING_KB, RUNNING_CLAIMS) == set(RUNNING_ARGS.values())
    assert len(args) == 6
    # ids follow claim index, then support mask
    assert [(x.claim, x.support) for x in args] == [(0, 1), (1, 2), (2, 4), (3, 6), (4, 3), (5, 5)]
    assert [x.id for x in args] == [1, 2, 3, 4, 5, 6]


def test_small_examples(backend):
    assert enumerate_arguments([a], [a]) == [Argument(1, 1, 0)]
    assert enumerate_arguments([a, b], [And(a, b)]) == [Argument(1, 0b11, 0)]
    assert enumerate_arguments([a, b], []) == []
    assert enumerate_arguments([a], [Or(a, Neg(a))]) == []


def test_multiple_minimal_supports_for_one_claim(backend):
    kb = [a, b, parse_formula("a -> c"), parse_formula("b -> c")]
    args = enumerate_arguments(kb, [Atom("c")])
    assert [mask_members(x.support) for x in args] == [(0, 2), (1, 3)]


def test_against_brute_force_oracle(backend):
    rng = random.Random(2024)
    for _ in range(120):
        kb, cs = oracles.random_instance(rng)
        args = enumerate_arguments(kb, cs)
        got = {(mask_members(x.support), x.claim) for x in args}
        assert got == oracles.arguments(kb, cs), (kb, cs)


def test_soundness_and_invariants(backend):
    rng = random.Random(99)
    for _ in range(80):
        kb, cs = oracles.random_instance(rng)
        for x in enumerate_arguments(kb, cs):
            support = x.support_formulas(kb)
            claim = x.claim_formula(cs)
            assert support
            assert is_consistent(support)
            assert entails(support, claim)
            assert is_minimal_support(kb, x.support, claim)
            assert is_argument(kb, x.support, claim)
            assert not entails([], claim)


def test_deterministic_ids(backend):
    rng = random.Random(1)
    kb, cs = oracles.random_instance(rng, max_kb=4, max_claims=6)
    assert enumerate_arguments(kb, cs) == enumerate_arguments(kb, cs)


def test_caps():
    with pytest.raises(KnowledgeBaseTooLarge):
        enumerate_arguments([Atom(f"x{i}") for i in range(4)], [a], kb_cap=3)
    with pytest.raises(AtomCapExceeded):
        enumerate_arguments([Atom(f"x{i}") for i in range(4)], [a], atom_cap=4)


def test_duplicates_dropped_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        kb = KnowledgeBase([a, b, a])
        cs = ClaimSet([b, b])
    assert list(kb) == [a, b]
    assert list(cs) == [b]
    assert sum("duplicate" in r.message for r in caplog.records) == 2


def test_argument_accessors():
    x = Argument(3, 0b101, 1)
    assert x.members == (0, 2)
    assert x.support_formulas([a, b, Neg(b)]) == (a, Neg(b))
    assert x.claim_formula([a, b]) == b
