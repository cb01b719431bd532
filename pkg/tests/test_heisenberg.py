import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouppack.groups import GroupError, HeisZ, Zn
from grouppack.heisenberg import (
    Decision,
    DiophantineSystem,
    decide_knapsack_h3,
    knapsack_to_diophantine,
    random_heis_instance,
    verify_certificate,
    verify_decision,
)
from grouppack.knapsack import KnapsackInstance, int_exponents_to_nat, nat_witness_to_int
from grouppack.oracles import bounded_membership, enumerate_box_solutions

H = HeisZ(0)


def _inst(bases, target, group=H):
    return KnapsackInstance(group, tuple(group.elem(b) for b in bases), group.elem(target))


def test_reduction_example_single_base():
    s = knapsack_to_diophantine(_inst([(1, 1, 0)], (2, 2, 1)))
    assert s.linear == (((1,), 2), ((1,), 2))
    assert s.quad_square == (1,) and s.quad_linear == (0,) and s.quad_const == 1
    assert list(s.solutions_in_box(10)) == [(2,)]


def test_reduction_example_noncommuting_pair():
    inst = _inst([(1, 0, 0), (0, 1, 0)], (1, 1, 0))
    s = knapsack_to_diophantine(inst)
    assert s.quad_cross == (((0, 1), 1),)
    assert not list(s.solutions_in_box(5))
    assert not enumerate_box_solutions(inst, 5)


def test_reduction_identity_instance():
    inst = _inst([(0, 0, 0), (0, 0, 0)], (0, 0, 0))
    s = knapsack_to_diophantine(inst)
    assert all(s.is_solution(x) for x in itertools.product(range(4), repeat=2))
    assert decide_knapsack_h3(inst, 3) == Decision("yes", (0, 0))


def test_reduction_rejects_other_groups():
    with pytest.raises(GroupError):
        knapsack_to_diophantine(KnapsackInstance(Zn(1), (), Zn(1).identity()))


def test_decider_examples():
    d = decide_knapsack_h3(_inst([(1, 1, 0)], (2, 2, 1)), 10)
    assert d.decision == "yes" and d.witness == (2,)
    inst = _inst([(2, 0, 0)], (1, 0, 0))
    d = decide_knapsack_h3(inst, 10)
    assert d.decision == "no" and verify_decision(inst, d)


def test_decider_unknown_when_budget_too_small():
    # x1 - x2 = 7 has no single-sign bound; the witness (7, 0) is outside budget 3
    inst = _inst([(1, 0, 0), (-1, 0, 0)], (7, 0, 0))
    assert decide_knapsack_h3(inst, 3).decision == "unknown"
    assert decide_knapsack_h3(inst, 7).decision == "yes"


def test_modular_certificate_with_custom_moduli():
    # c-equation: x(x-1)/2 * 4 + 2x = 1 is odd on the right, even on the left
    inst = _inst([(2, 2, 0), (-2, -2, 0)], (0, 0, 1))
    d = decide_knapsack_h3(inst, 2, moduli=(2,))
    assert d.decision in ("no", "unknown")
    assert verify_decision(inst, d)


def test_bad_certificates_rejected():
    inst = _inst([(1, 1, 0)], (2, 2, 1))
    s = knapsack_to_diophantine(inst)
    assert not verify_certificate(s, {"type": "modular", "modulus": 2})
    assert not verify_certificate(s, {"type": "bounded", "bounds": [5]})
    assert not verify_certificate(s, {"type": "nonsense"})
    assert not verify_decision(inst, Decision("yes", (3,)))


def test_system_json_round_trip():
    rng = random.Random(4)
    for _ in range(50):
        s = knapsack_to_diophantine(random_heis_instance(rng, 3, e=1))
        assert DiophantineSystem.from_json(s.to_json()) == s


def test_decision_json_round_trip():
    for d in (Decision("yes", (1, 2)), Decision("no", None, {"type": "modular", "modulus": 3}),
              Decision("unknown")):
        assert Decision.from_json(d.to_json()) == d


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000))
def test_decider_is_sound(seed):
    rng = random.Random(seed)
    inst = random_heis_instance(rng, rng.randint(1, 3), e=rng.randint(0, 1))
    d = decide_knapsack_h3(inst, 4)
    assert verify_decision(inst, d)
    brute = enumerate_box_solutions(inst, 4)
    if d.decision == "no":
        assert not brute
    if brute:
        assert d.decision == "yes"


def test_int_exponents_examples():
    z = Zn(1)
    empty = KnapsackInstance(z, (), z.identity())
    assert int_exponents_to_nat(empty) == empty
    inst = int_exponents_to_nat(KnapsackInstance(z, (z.elem((1,)),), z.elem((-2,))))
    assert inst.is_solution((0, 2))
    inst = int_exponents_to_nat(_inst([(1, 0, 0)], (-3, 0, 0)))
    assert inst.is_solution((0, 3))
    assert nat_witness_to_int((0, 3)) == (-3,)


def test_int_exponents_preserve_solvability():
    rng = random.Random(9)
    for _ in range(500):
        k = rng.randint(1, 2)
        inst = random_heis_instance(rng, k, e=0, spread=1)
        over_z = bounded_membership(inst, -5, 5) is not None
        nat = int_exponents_to_nat(inst)
        over_n = bounded_membership(nat, 0, 5) is not None
        assert over_z == over_n
