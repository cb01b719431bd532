import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouppack.cocf.grammar import Grammar, GrammarError, cfg_image, words_up_to
from grouppack.cocf.parikh import parikh_image, parikh_vector
from grouppack.cocf.pipeline import (
    build_knapsack_language,
    coword_grammar,
    decide_cocf_knapsack,
    load_fixture,
    validate_coword_grammar,
)
from grouppack.cocf.pushdown import cfg_intersect_regular, cfg_inverse_hom
from grouppack.cocf.semilinear import (
    LinearSet,
    SemilinearSet,
    box,
    box_points,
    contejean_devie,
    intersect,
    semilinear_complement,
    semilinear_member,
    union,
)
from grouppack.groups import DInf, Zn
from grouppack.linear import solve_nat_1d
from grouppack.rational import Automaton


def G(prods, start="S"):
    nts = {a for a, _ in prods} | {start}
    terms = {s for _, r in prods for s in r} - nts
    return Grammar(frozenset(nts), frozenset(terms), tuple((a, tuple(r)) for a, r in prods), start)


ANBN = G([("S", []), ("S", ["a", "S", "b"])])
ASTAR = G([("S", []), ("S", ["a", "S"])])
DYCK = G([("S", []), ("S", ["(", "S", ")", "S"])])
Z_FIXTURE = load_fixture("z")
Z2_FIXTURE = load_fixture("z2")


def L(base, *periods):
    return LinearSet(tuple(base), tuple(map(tuple, periods)))


def S(k, *components):
    return SemilinearSet(k, tuple(components))


# ---------------------------------------------------------------- grammars


def test_grammar_validation():
    with pytest.raises(GrammarError):
        Grammar(frozenset({"S"}), frozenset({"S"}), (), "S")
    with pytest.raises(GrammarError):
        Grammar(frozenset({"S"}), frozenset({"a"}), (("S", ("b",)),), "S")


def test_grammar_json_round_trip():
    for g in (ANBN, DYCK, Z_FIXTURE):
        back = Grammar.from_json(g.to_json())
        assert words_up_to(back, 5) == words_up_to(g, 5)


def test_image_identity_and_examples():
    assert words_up_to(cfg_image(ANBN, {"a": ("a",), "b": ("b",)}), 6) == words_up_to(ANBN, 6)
    img = cfg_image(ANBN, {"a": ("c",), "b": ()})
    assert words_up_to(img, 6) == {("c",) * n for n in range(7)}
    assert words_up_to(cfg_image(ANBN, {"a": (), "b": ()}), 6) == {()}
    with pytest.raises(GrammarError):
        cfg_image(ANBN, {"a": ("a",)})


def test_inverse_hom_examples():
    ident = cfg_inverse_hom(ANBN, {"a": ("a",), "b": ("b",)})
    assert words_up_to(ident, 6) == words_up_to(ANBN, 6)
    balanced = cfg_inverse_hom(Z_FIXTURE, {"b": ("1", "-1")})
    assert words_up_to(balanced, 5) == set()
    ab = cfg_inverse_hom(ANBN, {"c": ("a", "b")})
    # (ab)^n lies in a^n b^n only for n <= 1
    assert words_up_to(ab, 5) == {(), ("c",)}


def test_inverse_hom_random_against_definition():
    rng = random.Random(2)
    base = words_up_to(DYCK, 10)
    for _ in range(10):
        hom = {y: tuple(rng.choice("()") for _ in range(rng.randint(0, 2))) for y in "xy"}
        got = words_up_to(cfg_inverse_hom(DYCK, hom), 4)
        want = {w for n in range(5) for w in itertools.product("xy", repeat=n)
                if tuple(s for y in w for s in hom[y]) in base}
        assert got == want


def _dfa(n, finals, trans):
    return Automaton(n, 0, frozenset(finals), tuple((p, (a,), q) for p, a, q in trans))


def test_intersect_regular_examples():
    everything = _dfa(1, {0}, [(0, "a", 0), (0, "b", 0)])
    assert words_up_to(cfg_intersect_regular(ANBN, everything), 6) == words_up_to(ANBN, 6)
    a_plus_b = _dfa(3, {2}, [(0, "a", 1), (1, "a", 1), (1, "b", 2)])
    assert words_up_to(cfg_intersect_regular(ANBN, a_plus_b), 8) == {("a", "b")}
    a_star = _dfa(1, {0}, [(0, "a", 0)])
    assert words_up_to(cfg_intersect_regular(ANBN, a_star), 8) == {()}


def test_intersect_regular_random():
    rng = random.Random(6)
    base = words_up_to(DYCK, 6)
    for _ in range(20):
        trans = [(p, rng.choice("()"), rng.randint(0, 2)) for p in range(3) for _ in range(2)]
        dfa = _dfa(3, {rng.randint(0, 2)}, trans)
        got = words_up_to(cfg_intersect_regular(DYCK, dfa), 6)
        accepted = set()
        for n in range(7):
            for w in itertools.product("()", repeat=n):
                states = {0}
                for c in w:
                    states = {q for p, a, q in trans if p in states and a == c}
                if states & dfa.finals:
                    accepted.add(w)
        assert got == base & accepted


@pytest.mark.parametrize("n", [1, 2])
def test_coword_fixtures_are_valid(n):
    g = load_fixture("z" if n == 1 else "z2")
    validate_coword_grammar(g, Zn(n), 6 if n == 1 else 4)
    assert words_up_to(g, 4) == words_up_to(coword_grammar(n), 4)


def test_validation_catches_wrong_grammar():
    with pytest.raises(GrammarError):
        validate_coword_grammar(Z_FIXTURE, Zn(2), 3)
    with pytest.raises(GrammarError):
        validate_coword_grammar(Z_FIXTURE, DInf(), 3)


# ---------------------------------------------------------------- knapsack language


def test_knapsack_language_examples():
    m = build_knapsack_language(Z_FIXTURE, [[1]], [1, 1])
    assert words_up_to(m, 6) == {("a1",) * e for e in range(7) if e != 2}
    m = build_knapsack_language(Z_FIXTURE, [], [])
    assert words_up_to(m, 4) == set()
    m = build_knapsack_language(Z_FIXTURE, [[1, 1]], [1])
    assert words_up_to(m, 6) == {("a1",) * e for e in range(7)}


# ---------------------------------------------------------------- Parikh


def _parikh_matches(g, letters, bound):
    img = parikh_image(g, letters)
    words = words_up_to(g, bound * len(letters))
    want = {v for v in (parikh_vector(w, letters) for w in words) if max(v, default=0) <= bound}
    return box_points(img, bound) == want


def test_parikh_examples():
    assert parikh_image(ASTAR, ["a"]) == S(1, L([0], [1]))
    assert _parikh_matches(ANBN, ["a", "b"], 6)
    img = parikh_image(ANBN, ["a", "b"])
    assert box_points(img, 6) == {(n, n) for n in range(7)}
    m = build_knapsack_language(Z_FIXTURE, [[1]], [1, 1])
    assert box_points(parikh_image(m, ["a1"]), 8) == {(e,) for e in range(9) if e != 2}


@pytest.mark.parametrize("g,letters", [
    (ASTAR, ["a"]), (ANBN, ["a", "b"]), (DYCK, ["(", ")"]),
    (Z_FIXTURE, ["1", "-1"]),
], ids=["astar", "anbn", "dyck", "z"])
def test_parikh_fixture_grammars(g, letters):
    assert _parikh_matches(g, letters, 6)


def test_parikh_z2_fixture():
    letters = ["1", "-1", "2", "-2"]
    img = parikh_image(Z2_FIXTURE, letters)
    want = {v for v in itertools.product(range(4), repeat=4) if v[0] != v[1] or v[2] != v[3]}
    assert box_points(img, 3) == want


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_parikh_random_grammars(seed):
    rng = random.Random(seed)
    nts = ["S", "A", "B"][:rng.randint(1, 3)]
    prods = [(n, tuple(rng.choice(nts + ["a", "b", "a", "b"]) for _ in range(rng.randint(0, 3))))
             for n in nts for _ in range(rng.randint(1, 3))]
    g = Grammar(frozenset(nts), frozenset({"a", "b"}), tuple(prods), "S")
    img = parikh_image(g, ["a", "b"])
    want = {parikh_vector(w, ["a", "b"]) for w in words_up_to(g, 9)}
    want = {v for v in want if max(v) <= 4}
    assert {v for v in box_points(img, 4) if sum(v) <= 9} == want


# ---------------------------------------------------------------- semilinear sets


def test_member_examples():
    diag = S(2, L([0, 0], [1, 1]))
    assert semilinear_member(diag, (3, 3))
    assert not semilinear_member(diag, (2, 3))
    assert not semilinear_member(SemilinearSet.empty(2), (0, 0))
    with pytest.raises(ValueError):
        semilinear_member(diag, (1,))


def test_complement_examples():
    assert semilinear_complement(S(1, L([0], [1]))).is_empty()
    odd = semilinear_complement(S(1, L([0], [2])))
    assert box_points(odd, 10) == {(n,) for n in range(1, 11, 2)}
    diag = S(2, L([0, 0], [1, 1]))
    assert box_points(semilinear_complement(diag), 6) == box(2, 6) - {(n, n) for n in range(7)}
    assert box_points(semilinear_complement(SemilinearSet.empty(2)), 6) == box(2, 6)


def test_zero_dimensional_sets():
    assert box_points(semilinear_complement(SemilinearSet.empty(0)), 3) == {()}
    assert semilinear_complement(SemilinearSet.point(())).is_empty()


def _random_set(rng, k):
    comps = []
    for _ in range(rng.randint(0, 3)):
        base = [rng.randint(0, 3) for _ in range(k)]
        periods = [[rng.randint(0, 2) for _ in range(k)] for _ in range(rng.randint(0, 3))]
        comps.append(L(base, *periods))
    return SemilinearSet(k, tuple(comps))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_complement_and_intersection_laws(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    s, t = _random_set(rng, k), _random_set(rng, k)
    bound = 10
    ps, pt = box_points(s, bound), box_points(t, bound)
    pc = box_points(semilinear_complement(s), bound)
    assert not ps & pc
    assert ps | pc == box(k, bound)
    assert box_points(intersect(s, t), bound) == ps & pt
    assert box_points(union(s, t), bound) == ps | pt


def test_contejean_devie_minimal_solutions():
    # x + y - 2z = 0: minimal solutions (2,0,1), (0,2,1), (1,1,1)
    sols = set(contejean_devie([[1, 1, -2]], 3))
    assert sols == {(2, 0, 1), (0, 2, 1), (1, 1, 1)}


def test_semilinear_json_round_trip():
    rng = random.Random(1)
    for _ in range(30):
        s = _random_set(rng, 2)
        assert SemilinearSet.from_json(s.to_json()) == s


# ---------------------------------------------------------------- decider


def test_decider_examples():
    d = decide_cocf_knapsack(Z_FIXTURE, [[1], [1, 1]], [1] * 5, Zn(1))
    assert d.answer and d.witness is not None
    assert d.witness[0] + 2 * d.witness[1] == 5
    assert not decide_cocf_knapsack(Z_FIXTURE, [[1, 1]], [1] * 3, Zn(1)).answer
    d = decide_cocf_knapsack(Z_FIXTURE, [], [], Zn(1))
    assert d.answer and d.witness == ()


def test_decider_rejects_foreign_letters():
    with pytest.raises(GrammarError):
        decide_cocf_knapsack(Z_FIXTURE, [[2]], [])


def test_decider_random_z():
    rng = random.Random(21)
    for _ in range(40):
        k = rng.randint(0, 2)
        words = [[rng.choice([1, -1]) for _ in range(rng.randint(0, 3))] for _ in range(k)]
        target = [rng.choice([1, -1]) for _ in range(rng.randint(0, 3))]
        d = decide_cocf_knapsack(Z_FIXTURE, words, target, Zn(1))
        exact = solve_nat_1d([sum(w) for w in words], sum(target))
        assert d.answer == (exact is not None)
