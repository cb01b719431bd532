import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grouppack.groups import (
    ALPHA,
    DInf,
    GAlpha,
    GroupMismatchError,
    HeisZ,
    IntMatrix,
    Product,
    QuadInt,
    QuadMatrix,
    UT,
    WordError,
    Zn,
    element_from_json,
    evaluate_word,
    group_from_json,
    heisenberg_mul,
    heisenberg_power,
    invert_word,
    quad_compare,
    ut_norm,
)

small = st.integers(-3, 3)


def test_heisenberg_product_example():
    h = HeisZ(0)
    assert (h.elem((1, 0, 0)) * h.elem((0, 1, 0))).value == (1, 1, 1)


def test_heisenberg_law_matches_matrices():
    rng = random.Random(1)
    for _ in range(500):
        x = tuple(rng.randint(-5, 5) for _ in range(3))
        y = tuple(rng.randint(-5, 5) for _ in range(3))
        m = IntMatrix.heisenberg(*x) @ IntMatrix.heisenberg(*y)
        assert m.to_heisenberg() == heisenberg_mul(x, y)


def test_dihedral_examples():
    d = DInf()
    assert (d.elem((0, 1)) * d.elem((1, 0))).value == (-1, 1)
    assert d.elem((3, 1)).inverse().value == (3, 1)


def test_ut_inverse_example():
    g = UT(3)
    m = g.from_heisenberg(2, 4, 3)
    assert m.inverse().value.to_heisenberg() == (-2, -4, 5)
    assert (m * m.inverse()).is_identity
    assert g.identity().inverse().is_identity


def test_identity_is_unit():
    g = UT(3)
    m = g.from_heisenberg(4, -1, 7)
    assert g.identity() * m == m == m * g.identity()


def test_evaluate_word_examples():
    assert evaluate_word((), GAlpha()).is_identity
    assert evaluate_word((1, 2, -1), GAlpha()).value == QuadMatrix.shear(ALPHA)
    assert evaluate_word((1, 2, -1, -2), HeisZ(0)).value == (0, 0, 1)


def test_evaluate_word_rejects_bad_index():
    with pytest.raises(WordError):
        evaluate_word((3,), DInf())
    with pytest.raises(WordError):
        evaluate_word((0,), Zn(2))


def test_mismatch_is_typed():
    with pytest.raises(GroupMismatchError):
        Zn(1).identity() * Zn(2).identity()


def test_heisenberg_power_examples():
    assert heisenberg_power((5, -2, 7), 0) == (0, 0, 0)
    assert heisenberg_power((1, 1, 0), 3) == (3, 3, 3)
    assert heisenberg_power((0, 0, 5), 2) == (0, 0, 10)


@given(small, small, small, st.integers(0, 20), st.integers(0, 20))
def test_heisenberg_power_is_additive(a, b, c, m, n):
    assert heisenberg_power((a, b, c), m + n) == heisenberg_mul(
        heisenberg_power((a, b, c), m), heisenberg_power((a, b, c), n))


def test_ut_norm_examples():
    assert ut_norm(IntMatrix.identity(3)) == 3
    assert ut_norm(IntMatrix.heisenberg(1, 1, 0)) == 5
    assert ut_norm(IntMatrix.heisenberg(-2, -4, 5)) == 14


def test_quad_compare_examples():
    assert quad_compare(QuadInt(1, 1), QuadInt(1, 1)) == 0
    assert quad_compare(QuadInt(5, 0), ALPHA ** 3) < 0
    assert ALPHA ** 3 == QuadInt(7, 5)
    assert quad_compare(QuadInt(3, -2), QuadInt(0, 0)) > 0


def test_quad_zero_only_at_origin():
    for p in range(-50, 51):
        for q in range(-50, 51):
            assert (quad_compare(QuadInt(p, q), QuadInt(0, 0)) == 0) == (p == 0 and q == 0)


@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40))
def test_quad_order_matches_floats_away_from_ties(p, q, r, s):
    diff = (p - r) + (q - s) * 2 ** 0.5
    if abs(diff) > 1e-6:
        assert quad_compare(QuadInt(p, q), QuadInt(r, s)) == (1 if diff > 0 else -1)


def _random_word(rng, ngens, n):
    return tuple(rng.choice([1, -1]) * rng.randint(1, ngens) for _ in range(n))


GROUPS = [UT(3), UT(4), HeisZ(1), GAlpha(), DInf(), Zn(2),
          Product((HeisZ(0), Zn(1), DInf()))]


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.name)
def test_group_axioms_sampled(group):
    rng = random.Random(7)
    trials = 10_000 if not isinstance(group, (GAlpha, UT)) else 2_000
    for _ in range(trials):
        x, y, z = (evaluate_word(_random_word(rng, group.ngens, rng.randint(0, 4)), group)
                   for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert (x * x.inverse()).is_identity and (x.inverse() * x).is_identity


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.name)
def test_word_times_inverse_is_identity(group):
    rng = random.Random(3)
    for _ in range(200):
        w = _random_word(rng, group.ngens, rng.randint(0, 30))
        assert evaluate_word(w + invert_word(w), group).is_identity


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_unitriangular_flag_is_truthful(d):
    rng = random.Random(d)
    g = UT(d)
    for _ in range(300):
        x = evaluate_word(_random_word(rng, g.ngens, rng.randint(0, 12)), g).value
        y = x.unitriangular_inverse()
        for m in (x, y, x @ y):
            assert m.unitriangular
            assert all(m.rows[i][j] == 0 for i in range(d) for j in range(i))


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.name)
def test_group_and_element_json_round_trip(group):
    assert group_from_json(group.to_json()) == group
    rng = random.Random(11)
    for _ in range(30):
        x = evaluate_word(_random_word(rng, group.ngens, 6), group)
        assert element_from_json(group, {"value": x.to_json()}) == x


def test_named_group_descriptors():
    assert group_from_json("dinf") == DInf()
    assert group_from_json({"type": "heis_ze", "e": 2}) == HeisZ(2)
