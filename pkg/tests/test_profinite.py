from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from prolam.definability import def_set
from prolam.errors import DefinabilityError, MismatchError
from prolam.model import Den, compose_elements, den, from_table, interpret
from prolam.profinite import (
    DEFERRED,
    WITNESS,
    Approximant,
    apply_omega,
    apply_term_to_approximant,
    approximant,
    check_natural,
    check_parametric,
    compose,
    congruent,
    identity_approximant,
    iota,
    omega_approximant,
    omega_element,
    omega_exponent,
    separate,
    word_omega,
)
from prolam.relations import PartialSurjection
from prolam.syntax import (
    O,
    Alphabet,
    App,
    Arrow,
    Lam,
    Var,
    arrow_types,
    beta_eta_equal,
    church_term,
    church_type,
    closed_normal_forms,
    normalize,
    parse_term,
    parse_type,
)

DEPTH2 = tuple(arrow_types(2))
ENDO = Arrow(O, O)
PAIR = parse_type("o -> o -> o")
P1 = parse_term(r"\x:o. \y:o. x")
P2 = parse_term(r"\x:o. \y:o. y")
PAIR_ENDO = Arrow(PAIR, PAIR)


def numeral(n):
    return parse_term(r"\f:o->o. \x:o. " + "f (" * n + "x" + ")" * n)


def endo(q, table):
    return from_table(den(ENDO, q), table)


# --- iota and construction ----------------------------------------------------------------


def test_iota_identity():
    theta = iota(parse_term(r"\x:o. x"), 3)
    assert theta.components == (0, 2, 21)
    assert [den(ENDO, q).element(c).table() for q, c in enumerate(theta.components, 1)] == [[0], [0, 1], [0, 1, 2]]
    assert theta == identity_approximant(O, 3)
    assert theta.fully_witnessed


def test_iota_of_a_word_acts_by_composition():
    sigma = Alphabet.of("ab")
    theta = iota(church_term("ab", sigma), 2)
    x = theta.component(2)
    for fa in den(ENDO, 2).elements():
        for fb in den(ENDO, 2).elements():
            assert x(fa)(fb) == compose_elements(fa, fb)


def test_approximant_rejects_swap():
    swap = endo(2, [1, 0])
    with pytest.raises(DefinabilityError):
        approximant(ENDO, [0, swap])
    with pytest.raises(DefinabilityError):
        approximant(ENDO, [0, swap], defer=True)


def test_approximant_finds_and_checks_witnesses():
    theta = approximant(PAIR, [0, interpret(P1, 2)])
    assert theta.evidence == (WITNESS, WITNESS)
    assert theta.witness(2) == P1
    with pytest.raises(DefinabilityError):
        approximant(PAIR, [0, interpret(P1, 2)], witnesses=[None, P2])
    with pytest.raises(DefinabilityError):
        approximant(PAIR, [0, interpret(P1, 2)], witnesses=[None, parse_term(r"\x:o. x")])


def test_approximant_defers_when_def_is_out_of_reach():
    ty = church_type(2)
    low = iota(church_term("ab", Alphabet.of("ab")), 3).components
    with pytest.raises(DefinabilityError):
        approximant(ty, low, cap=1 << 9)
    theta = approximant(ty, low, defer=True, cap=1 << 9)
    assert theta.evidence[2] == DEFERRED and not theta.fully_witnessed


def test_approximant_shape_errors():
    with pytest.raises(ValueError):
        Approximant(ENDO, 2, (0,), (None,), (WITNESS,))
    with pytest.raises(ValueError):
        Approximant(ENDO, 1, (5,), (None,), (WITNESS,))
    with pytest.raises(MismatchError):
        iota(P1, 2).component(3)
    with pytest.raises(MismatchError):
        iota(parse_term("x", ctx=[("x", O)]), 2)


def test_truncate_and_json():
    theta = iota(church_term("aba", Alphabet.of("ab")), 2)
    assert theta.truncate(1).components == theta.components[:1]
    back = Approximant.from_json(theta.to_json())
    assert back == theta and back.witnesses == theta.witnesses
    js = apply_omega(iota(parse_term(r"\p:o->o->o. p"), 2)).to_json()
    assert js["evidence"] == {"1": WITNESS, "2": DEFERRED}
    assert Approximant.from_json(js).evidence == (WITNESS, DEFERRED)


# --- naturality and parametricity ---------------------------------------------------------------


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_iota_is_natural_and_parametric(seed):
    rng = random.Random(seed)
    ty = rng.choice(DEPTH2[1:])
    terms = list(closed_normal_forms(ty, 9))
    if not terms:
        return
    theta = iota(rng.choice(terms), 3)
    res = check_natural(theta)
    assert res and res.approximant.checked_natural
    assert check_parametric(theta, samples=64, seed=seed)


def test_projection_families():
    assert check_natural(approximant(PAIR, [0, interpret(P1, 2)]))
    assert check_natural(approximant(PAIR, [0, interpret(P2, 2)]))
    mixed = approximant(PAIR, [0, interpret(P1, 2), interpret(P2, 3)])
    res = check_natural(mixed)
    assert not res
    q, q2, f = res.counterexample
    assert (q, q2) == (3, 2) and isinstance(f, PartialSurjection)
    assert not check_parametric(mixed)


def test_checked_flag_only_from_check_natural():
    theta = approximant(PAIR, [0, interpret(P1, 2)])
    assert not theta.checked_natural
    assert not check_parametric(theta).approximant.checked_natural


def test_parametric_exhaustiveness_policy():
    theta = iota(P1, 3)
    assert check_parametric(theta, samples=512).exhaustive
    res = check_parametric(theta, samples=64)
    assert res and not res.exhaustive
    assert res.checked == check_parametric(theta, samples=64).checked


def _families(ty, k):
    """Every choice of definable component at each level ``1..k`` (all DefSets exact)."""
    levels = []
    for q in range(1, k + 1):
        ds = def_set(ty, q)
        assert ds.exact
        levels.append(ds.elements)
    for comps in itertools.product(*levels):
        yield approximant(ty, list(comps))


@pytest.mark.parametrize("ty", DEPTH2 + (parse_type("o -> o -> o -> o"),), ids=str)
def test_naturality_equals_parametricity_at_two(ty):
    for theta in _families(ty, 2):
        assert bool(check_natural(theta)) == bool(check_parametric(theta))


def test_naturality_equals_parametricity_at_three_with_failures():
    verdicts = []
    for theta in _families(PAIR, 3):
        nat = bool(check_natural(theta))
        assert nat == bool(check_parametric(theta, samples=512))
        verdicts.append(nat)
    assert verdicts.count(True) == 2 and verdicts.count(False) == 2


# --- composition ------------------------------------------------------------------------


def _pair_endos():
    return list(closed_normal_forms(PAIR_ENDO, 11))


# (object A, cutoff): endomorphisms of A are composed at levels 1..k
OBJECTS = [(PAIR, 2), (ENDO, 3), (church_type(1), 2)]


@pytest.mark.parametrize("a, k", OBJECTS[:2], ids=str)
def test_compose_matches_syntactic_composite(a, k):
    forms = list(closed_normal_forms(Arrow(a, a), 11))
    rng = random.Random(1)
    for _ in range(25):
        f, g = rng.choice(forms), rng.choice(forms)
        comp = Lam(a, App(g, App(f, Var(0))), "x")
        got = compose(iota(f, k), iota(g, k))
        assert got == iota(comp, k)
        assert all(interpret(got.witness(q), q).index == got.components[q - 1] for q in range(1, k + 1))


@pytest.mark.parametrize("a, k", OBJECTS, ids=str)
def test_compose_laws(a, k):
    forms = list(closed_normal_forms(Arrow(a, a), 11))
    rng = random.Random(8)
    ident = identity_approximant(a, k)
    for _ in range(20):
        x, y, z = (iota(rng.choice(forms), k) for _ in range(3))
        assert compose(ident, x) == x == compose(x, ident)
        assert compose(compose(x, y), z) == compose(x, compose(y, z))
        assert check_natural(compose(x, y))


def test_compose_errors():
    with pytest.raises(MismatchError):
        compose(iota(P1, 2), iota(P1, 2))
    with pytest.raises(MismatchError):
        compose(identity_approximant(O, 2), identity_approximant(O, 3))
    with pytest.raises(MismatchError):
        compose(identity_approximant(O, 2), identity_approximant(PAIR, 2))


def test_apply_identity_term():
    theta = iota(P2, 3)
    assert apply_term_to_approximant(parse_term(r"\x:o->o->o. x"), theta) == theta


def test_apply_term_shifts_words():
    sigma = Alphabet.of("a")
    shift = parse_term(r"\u:(o->o)->o->o. \f:o->o. \c:o. u f (f c)")
    for n in range(5):
        got = apply_term_to_approximant(shift, iota(church_term("a" * n, sigma), 3))
        assert got == iota(church_term("a" * (n + 1), sigma), 3)
        assert beta_eta_equal(got.witness(3), church_term("a" * (n + 1), sigma))


def test_apply_term_preserves_naturality():
    rng = random.Random(21)
    forms = _pair_endos()
    args = list(closed_normal_forms(PAIR, 8))
    for _ in range(50):
        out = apply_term_to_approximant(rng.choice(forms), iota(rng.choice(args), 3))
        assert check_natural(out)


def test_apply_term_errors():
    with pytest.raises(MismatchError):
        apply_term_to_approximant(parse_term(r"\x:o. x"), iota(P1, 2))


# --- idempotent powers ----------------------------------------------------------------------


def test_omega_element_examples():
    assert omega_element(O, 2, endo(2, [1, 0])).table() == [0, 1]
    assert omega_element(O, 3, endo(3, [1, 2, 0])).table() == [0, 1, 2]
    const = endo(3, [2, 2, 2])
    assert omega_element(O, 3, const) == const
    with pytest.raises(MismatchError):
        omega_element(O, 3, endo(2, [0, 1]))


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_omega_element_is_the_idempotent_power(q):
    for f in den(ENDO, q).elements():
        e = omega_element(O, q, f)
        assert compose_elements(e, e) == e
        powers, g = [], f
        for _ in range(2 * q + 2):
            powers.append(g)
            g = compose_elements(g, f)
        assert e in powers
        # the power with the uniform exponent agrees
        g = f
        for _ in range(omega_exponent(q) - 1):
            g = compose_elements(g, f)
        assert g == e


def test_omega_exponent():
    assert [omega_exponent(n) for n in range(1, 6)] == [1, 2, 6, 12, 60]
    assert omega_exponent(0) == 1


def test_omega_on_endo_of_pairs():
    d = den(PAIR, 2)
    rng = random.Random(6)
    for _ in range(20):
        f = Den(Arrow(PAIR, PAIR), 2).element(rng.randrange(16**16))
        e = omega_element(PAIR, 2, f)
        assert compose_elements(e, e) == e


def test_omega_approximant_at_base():
    theta = omega_approximant(O, 3)
    assert theta.components[0] == 0
    assert theta.fully_witnessed
    assert check_natural(theta)
    assert check_parametric(theta, samples=128)
    assert theta.witness(3) == parse_term(r"\u:o->o. \x:o. " + "u (" * 6 + "x" + ")" * 6)


def test_omega_applied_to_identity():
    ident = identity_approximant(O, 3)
    assert apply_omega(ident) == ident
    assert apply_term_to_approximant(omega_approximant(O, 3).witness(3), ident).components[2] == ident.components[2]


def test_omega_is_idempotent_on_numerals():
    for n in range(5):
        theta = iota(numeral(n), 3)
        w = apply_omega(theta)
        assert compose(w, w) == w
        assert check_natural(w)
        # the uniform exponent at q=3 is lcm(1..27), far past the witness limit
        assert w.evidence == (WITNESS, WITNESS, DEFERRED)
        for q in (1, 2):
            assert interpret(w.witness(q), q).index == w.components[q - 1]


def test_omega_is_idempotent_on_pair_endos():
    rng = random.Random(17)
    forms = _pair_endos()
    for _ in range(20):
        w = apply_omega(iota(rng.choice(forms), 2))
        assert compose(w, w) == w
        assert w.evidence[1] == DEFERRED


def test_word_omega_examples():
    sigma = Alphabet.of("a")
    theta = word_omega(iota(church_term("a", sigma), 3))
    cycle = endo(3, [1, 2, 0])
    assert theta.component(3)(cycle).table() == [0, 1, 2]
    eps = iota(church_term("", sigma), 3)
    assert word_omega(eps) == eps
    assert check_natural(theta)


def test_word_omega_two_letters():
    sigma = Alphabet.of("ab")
    theta = word_omega(iota(church_term("ab", sigma), 2))
    assert check_natural(theta)
    x = theta.component(2)
    for fa in den(ENDO, 2).elements():
        for fb in den(ENDO, 2).elements():
            assert x(fa)(fb) == omega_element(O, 2, compose_elements(fa, fb))
    with pytest.raises(MismatchError):
        word_omega(iota(P1, 2))


def test_word_omega_monoid_law():
    square = parse_term(r"\u:(o->o)->o->o. \f:o->o. \c:o. u f (u f c)")
    sigma = Alphabet.of("a")
    for w in ["", "a", "aa", "aaa"]:
        e = word_omega(iota(church_term(w, sigma), 3))
        assert apply_term_to_approximant(square, e) == e


# --- congruences -------------------------------------------------------------------------------


def test_congruence_examples():
    assert congruent(1, P1, P2) and not congruent(2, P1, P2)
    m = parse_term(r"(\f:o->o. f) (\x:o. x)")
    assert all(congruent(q, m, normalize(m)) for q in (1, 2, 3))
    with pytest.raises(MismatchError):
        congruent(2, P1, parse_term(r"\x:o. x"))


def test_separate_examples():
    assert separate(P1, P2, 4) == 2
    assert separate(numeral(1), numeral(2), 4) == 2
    assert separate(numeral(1), numeral(3), 4) == 3
    m = parse_term(r"\f:o->o. (\g:o->o. g) f")
    assert separate(m, normalize(m), 3) is None


def test_congruence_respects_composition():
    forms = _pair_endos()
    rng = random.Random(12)
    for q in (1, 2):
        classes: dict[int, list] = {}
        for f in forms:
            classes.setdefault(interpret(f, q).index, []).append(f)
        groups = list(classes.values())
        for _ in range(30):
            fs, gs = rng.choice(groups), rng.choice(groups)
            f, f2, g, g2 = rng.choice(fs), rng.choice(fs), rng.choice(gs), rng.choice(gs)
            gf = Lam(PAIR, App(g, App(f, Var(0))))
            gf2 = Lam(PAIR, App(g2, App(f2, Var(0))))
            assert congruent(q, gf, gf2)


def test_faithfulness_on_small_corpus(normal_corpus):
    by_type: dict = {}
    for ty, m in normal_corpus:
        by_type.setdefault(ty, []).append(m)
    for terms in by_type.values():
        for m, n in itertools.combinations(terms, 2):
            assert separate(m, n, 3) is not None
