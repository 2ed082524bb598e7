from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from prolam.definability import def_set
from prolam.errors import MismatchError
from prolam.model import Den, den, interpret
from prolam.reglang import (
    Explicit,
    RegLanguage,
    atom_language,
    boolean_op,
    embed,
    empty_language,
    equivalent,
    full_language,
    intersect_across,
    member,
    pullback,
)
from prolam.relations import PartialSurjection
from prolam.syntax import arrow_types, closed_normal_forms, normalize, parse_term, parse_type

DEPTH2 = tuple(arrow_types(2))
PAIR = parse_type("o -> o -> o")
P1 = parse_term(r"\x:o. \y:o. x")
P2 = parse_term(r"\x:o. \y:o. y")


def corpus(ty, n=8):
    return list(closed_normal_forms(ty, n))


def random_language(ty, q, rng):
    d = Den(ty, q)
    return RegLanguage(ty, q, Explicit(frozenset(i for i in range(d.size) if rng.random() < 0.5)))


# --- membership ---------------------------------------------------------------------------


def test_full_language_accepts_everything():
    for ty in DEPTH2:
        full = full_language(ty, 2)
        assert all(member(full, m) for m in corpus(ty))


def test_projection_atom_membership():
    lang = atom_language(PAIR, 2, interpret(P1, 2))
    assert member(lang, P1)
    assert not member(lang, P2)
    assert [m for m in corpus(PAIR) if member(lang, m)] == [P1]


def test_member_errors():
    lang = full_language(PAIR, 2)
    with pytest.raises(MismatchError):
        member(lang, parse_term(r"\x:o. x"))
    with pytest.raises(MismatchError):
        member(lang, parse_term("x", ctx=[("x", PAIR)]))
    with pytest.raises(MismatchError):
        lang.accepts_element(interpret(P1, 3))


def test_atom_outside_def_is_empty():
    ty = parse_type("(o -> o) -> o -> o")
    defs = set(def_set(ty, 2).elements)
    outside = next(x for x in den(ty, 2).elements() if x.index not in defs)
    lang = atom_language(ty, 2, outside)
    assert not any(member(lang, m) for m in corpus(ty, 11))
    with pytest.raises(MismatchError):
        atom_language(PAIR, 2, interpret(P1, 3))


@pytest.mark.parametrize("ty", DEPTH2, ids=str)
@pytest.mark.parametrize("q", [1, 2, 3])
def test_atoms_partition_terms(ty, q):
    if Den(ty, q).size > 1 << 12:
        pytest.skip("too many points to list every atom")
    atoms = [atom_language(ty, q, x) for x in Den(ty, q).elements()]
    for m in corpus(ty):
        assert sum(member(a, m) for a in atoms) == 1


@pytest.mark.parametrize("ty", DEPTH2, ids=str)
@pytest.mark.parametrize("q", [1, 2, 3])
def test_atom_bijection(ty, q):
    defs = def_set(ty, q)
    assert defs.exact
    inhabited = {interpret(m, q).index for m in closed_normal_forms(ty, 17)}
    assert inhabited == set(defs.elements)


@pytest.mark.parametrize("ty", DEPTH2, ids=str)
def test_membership_is_beta_eta_invariant(ty):
    rng = random.Random(5)
    langs = [random_language(ty, q, rng) for q in (1, 2)]
    for m in oracles.closed_terms_upto(ty, 8, DEPTH2):
        for lang in langs:
            assert member(lang, m) == member(lang, normalize(m))


def test_membership_depends_only_on_atoms():
    rng = random.Random(2)
    ty = parse_type("(o -> o) -> o -> o")
    lang = random_language(ty, 2, rng)
    atoms, exact = lang.normalized_atoms()
    assert exact
    trimmed = RegLanguage(ty, 2, Explicit(atoms))
    assert all(member(lang, m) == member(trimmed, m) for m in corpus(ty, 13))
    assert equivalent(lang, trimmed) == (True, True)


# --- Boolean operations ----------------------------------------------------------------------


def test_excluded_middle_and_disjoint_atoms():
    lang = atom_language(PAIR, 2, interpret(P1, 2))
    whole = lang | ~lang
    assert whole.accepting_indices() == frozenset(range(16))
    other = atom_language(PAIR, 2, interpret(P2, 2))
    assert (lang & other).accepting_indices() == frozenset()
    assert boolean_op("complement", ~lang).accepting_indices() == lang.accepting_indices()


def test_boolean_op_errors():
    a = full_language(PAIR, 2)
    with pytest.raises(MismatchError):
        boolean_op("union", a, full_language(PAIR, 3))
    with pytest.raises(MismatchError):
        boolean_op("intersection", a)
    with pytest.raises(ValueError):
        boolean_op("xor", a, a)


@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2]))
@settings(max_examples=20, deadline=None)
def test_de_morgan_on_random_terms(seed, q):
    rng = random.Random(seed)
    ty = rng.choice(DEPTH2)
    a, b = random_language(ty, q, rng), random_language(ty, q, rng)
    terms = oracles.closed_terms_upto(ty, 8, DEPTH2)
    for m in rng.sample(terms, min(100, len(terms))):
        lhs = member(~(a | b), m)
        assert lhs == member(~a & ~b, m) == (not member(a, m) and not member(b, m))
        assert member(~(a & b), m) == member(~a | ~b, m)


# --- embeddings ------------------------------------------------------------------------------------


def test_embed_full_and_identity():
    full = full_language(PAIR, 2)
    assert all(member(embed(full, 3), m) for m in corpus(PAIR))
    assert embed(full, 2) is full
    with pytest.raises(MismatchError):
        embed(full, 1)


def test_embed_projection_atom():
    lang = embed(atom_language(PAIR, 2, interpret(P1, 2)), 3)
    atoms, exact = lang.normalized_atoms()
    assert exact and atoms == {interpret(P1, 3).index}
    # the preimage also holds points that no term denotes
    assert len(lang.accepting_indices()) > 1


@pytest.mark.parametrize("ty", DEPTH2, ids=str)
def test_embed_preserves_membership(ty):
    rng = random.Random(9)
    for q2 in (1, 2):
        for q in range(q2 + 1, 4):
            lang = random_language(ty, q2, rng)
            big = embed(lang, q)
            for m in corpus(ty):
                assert member(big, m) == member(lang, m)


@pytest.mark.parametrize("ty", DEPTH2, ids=str)
def test_pullback_along_any_psurj_preserves_membership(ty):
    rng = random.Random(4)
    lang = random_language(ty, 2, rng)
    for f in PartialSurjection.all(3, 2):
        back = pullback(lang, f)
        for m in corpus(ty):
            assert member(back, m) == member(lang, m)


def test_directedness_maps():
    for q1 in (1, 2):
        for q2 in (1, 2):
            for side in (0, 1):
                f = PartialSurjection.coproduct_projection(q1, q2, side)
                assert f.q == q1 + q2 and f.q2 == (q1, q2)[side]


def test_intersect_with_full():
    lang = atom_language(PAIR, 2, interpret(P1, 2))
    both = intersect_across(lang, full_language(PAIR, 2))
    assert both.q == 4
    assert [member(both, m) for m in corpus(PAIR)] == [member(lang, m) for m in corpus(PAIR)]


def test_projection_atoms_intersect_to_empty():
    a = atom_language(PAIR, 2, interpret(P1, 2))
    b = atom_language(PAIR, 2, interpret(P2, 2))
    both = intersect_across(a, b)
    atoms, exact = both.normalized_atoms()
    assert exact and atoms == frozenset()
    assert equivalent(both, empty_language(PAIR, 2)) == (True, True)


@pytest.mark.parametrize("ty", DEPTH2, ids=str)
def test_intersect_across_is_conjunction(ty):
    rng = random.Random(13)
    for _ in range(4):
        a = random_language(ty, 2, rng)
        b = random_language(ty, rng.choice([1, 2]), rng)
        both = intersect_across(a, b)
        for m in corpus(ty):
            assert member(both, m) == (member(a, m) and member(b, m))


def test_intersect_across_type_mismatch():
    with pytest.raises(MismatchError):
        intersect_across(full_language(PAIR, 2), full_language(parse_type("o -> o"), 2))


# --- equality and serialization ------------------------------------------------------------------


def test_equivalence_across_levels():
    lang = atom_language(PAIR, 2, interpret(P1, 2))
    assert equivalent(lang, atom_language(PAIR, 3, interpret(P1, 3))) == (True, True)
    assert equivalent(lang, atom_language(PAIR, 3, interpret(P2, 3)))[0] is False
    assert equivalent(lang, full_language(parse_type("o -> o"), 2)) == (False, True)


def test_json_roundtrip_explicit_and_symbolic():
    lang = ~atom_language(PAIR, 2, interpret(P1, 2))
    js = lang.to_json()
    assert js["accepting"] == [str(i) for i in range(16) if i != 12]
    assert RegLanguage.from_json(js).accepting_indices() == lang.accepting_indices()
    ty = parse_type("(o -> o -> o) -> o -> o")
    big = ~RegLanguage(ty, 3, Explicit(frozenset([5])), cap=10)
    js = big.to_json()
    assert "accepting_expr" in js
    back = RegLanguage.from_json(js, cap=10)
    assert 5 not in back.accepting and 6 in back.accepting
