"""Acceptance suite: one check per criterion, each with its time limit.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import dataclass, field

import pytest

from grouppack.alpha_subsetsum import check_digit_uniqueness, cnf_to_subsetsum, tail_inequality_holds
from grouppack.cnf import formula_family, random_cnf
from grouppack.cocf.pipeline import decide_cocf_knapsack, load_fixture
from grouppack.cocf.semilinear import box_points
from grouppack.expressions import (
    ExponentialExpression,
    equation_expression,
    expression_to_knapsack,
)
from grouppack.extension import (
    decide_gkp,
    dihedral_gkp_exact,
    dihedral_oracle,
    purify,
    random_dihedral_gkp,
)
from grouppack.groups import DInf, GAlpha, HeisZ, IntMatrix, UT, Zn, evaluate_word, heisenberg_power
from grouppack.heisenberg import (
    decide_knapsack_h3,
    knapsack_to_diophantine,
    random_heis_instance,
    verify_decision,
)
from grouppack.knapsack import KnapsackInstance
from grouppack.linear import solve_nat_1d, solve_nat_2d
from grouppack.oracles import bounded_membership, brute_force_subsetsum
from grouppack.rational import (
    acyclic_membership,
    dihedral_coset_table,
    enumerate_accepting_words,
    path_elements,
    random_acyclic_automaton,
    transfer_to_subgroup,
)


@dataclass
class Outcome:
    ok: bool
    seconds: float
    limit: float
    detail: str
    # soundness bookkeeping for the final criterion
    yes_verified: int = 0
    no_certified: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.limit and not self.violations


RESULTS: dict = {}


def _timed(number: int, title: str, limit: float):
    def wrap(fn):
        @functools.lru_cache(maxsize=None)
        def run() -> Outcome:
            start = time.perf_counter()
            out = fn()
            out.seconds = time.perf_counter() - start
            out.limit = limit
            RESULTS[number] = (title, out)
            return out
        return run
    return wrap


def _outcome(ok, detail, **kw) -> Outcome:
    return Outcome(bool(ok), 0.0, 0.0, detail, **kw)


# ---------------------------------------------------------------------------


@_timed(1, "closed-form Heisenberg powers", 1.0)
def criterion_1() -> Outcome:
    bad = 0
    cases = 0
    for a, b, c in itertools.product(range(-3, 4), repeat=3):
        acc = IntMatrix.identity(3)
        m = IntMatrix.heisenberg(a, b, c)
        for n in range(21):
            cases += 1
            bad += heisenberg_power((a, b, c), n) != acc.to_heisenberg()
            acc = acc @ m
    return _outcome(bad == 0 and cases == 7 ** 3 * 21, f"{cases} cases, {bad} mismatches")


def _matrix_solvable(inst: KnapsackInstance, box: int) -> bool:
    """Evaluate products as 3x3 integer matrices plus the free abelian part."""
    powers = []
    for g in inst.bases:
        m = IntMatrix.heisenberg(*g.value[:3])
        acc, row = IntMatrix.identity(3), []
        for _ in range(box + 1):
            row.append(acc)
            acc = acc @ m
        powers.append(row)
    t = inst.target.value
    want = IntMatrix.heisenberg(*t[:3])
    for xs in itertools.product(range(box + 1), repeat=inst.k):
        z = tuple(sum(g.value[3 + i] * x for g, x in zip(inst.bases, xs)) for i in range(len(t) - 3))
        if z != tuple(t[3:]):
            continue
        acc = IntMatrix.identity(3)
        for p, x in zip(powers, xs):
            acc = acc @ p[x]
        if acc == want:
            return True
    return False


@_timed(2, "Heisenberg reduction vs matrix brute force", 30.0)
def criterion_2() -> Outcome:
    rng = random.Random(2024)
    mismatches, solvable = 0, 0
    out = _outcome(True, "")
    for _ in range(1000):
        inst = random_heis_instance(rng, rng.randint(1, 3), e=1, spread=2)
        system = knapsack_to_diophantine(inst)
        via_system = next(system.solutions_in_box(6), None) is not None
        via_matrix = _matrix_solvable(inst, 6)
        mismatches += via_system != via_matrix
        solvable += via_matrix
        d = decide_knapsack_h3(inst, 6)
        if d.decision == "yes":
            out.yes_verified += 1
        elif d.decision == "no":
            out.no_certified += 1
        if not verify_decision(inst, d) or (d.decision == "no" and via_matrix):
            out.violations.append(("knapsack-h3", inst.to_json(), d.to_json()))
    out.ok = mismatches == 0
    out.detail = f"1000 instances, {solvable} solvable in box, {mismatches} mismatches"
    return out


@_timed(3, "digit-string uniqueness and tail inequality", 5.0)
def criterion_3() -> Outcome:
    unique = check_digit_uniqueness(4)
    tails = all(tail_inequality_holds(n) for n in range(1, 7))
    return _outcome(unique and tails, f"uniqueness(<=4)={unique}, inequality(n<=6)={tails}")


@_timed(4, "3CNF satisfiability vs subset sum over G_alpha", 60.0)
def criterion_4() -> Outcome:
    rng = random.Random(4)
    formulas = list(formula_family(3, 2))
    formulas += [random_cnf(rng, rng.randint(1, 3), rng.randint(1, 2)) for _ in range(200)]
    g = GAlpha()
    out = _outcome(True, "")
    mismatches = 0
    for f in formulas:
        enc = cnf_to_subsetsum(f)
        inst = KnapsackInstance.from_words(g, enc.words, enc.target_word)
        w = brute_force_subsetsum(inst)
        if w is not None:
            if inst.is_solution(w):
                out.yes_verified += 1
            else:
                out.violations.append(("ssp", f))
        else:
            out.no_certified += 1  # exhaustive over {0,1}^k
        mismatches += f.is_satisfiable() != (w is not None)
    out.ok = mismatches == 0
    out.detail = f"{len(formulas)} formulas, {mismatches} mismatches"
    return out


@_timed(5, "product equation characterization", 1.0)
def criterion_5() -> Outcome:
    expr, target = equation_expression(("mul", "x", "y", "z"))
    bad = sum((expr.evaluate({"x": x, "y": y, "z": z}) == target) != (x * y == z)
              for x, y, z in itertools.product(range(-5, 6), repeat=3))
    return _outcome(bad == 0, f"1331 triples, {bad} mismatches")


def _random_expression(rng):
    h = HeisZ(0)
    names = ["x", "y", "z"]
    terms = tuple((h.elem(tuple(rng.randint(-1, 1) for _ in range(3))), rng.choice(names))
                  for _ in range(rng.randint(0, 4)))
    expr = ExponentialExpression(h, terms)
    if rng.random() < 0.5:
        nu = {v: rng.randint(-4, 4) for v in names}
        target = expr.evaluate(nu)
    else:
        target = h.elem(tuple(rng.randint(-3, 3) for _ in range(3)))
    return expr, target


@_timed(6, "expression solutions vs cyclic-product membership", 60.0)
def criterion_6() -> Outcome:
    rng = random.Random(6)
    mismatches, solvable = 0, 0
    out = _outcome(True, "")
    for _ in range(200):
        expr, target = _random_expression(rng)
        sol = next(iter(expr.solutions_in_box(target, 4)), None)
        kp, variables = expression_to_knapsack(expr, target)
        member = bounded_membership(kp, -4, 4)
        if member is not None and not kp.is_solution(member):
            out.violations.append(("membership", expr.to_json()))
        mismatches += (sol is not None) != (member is not None)
        solvable += sol is not None
    out.ok = mismatches == 0
    out.detail = f"200 expressions, {solvable} solvable in [-4,4], {mismatches} mismatches"
    return out


@_timed(7, "acyclic rational membership vs path enumeration", 60.0)
def criterion_7() -> Outcome:
    rng = random.Random(7)
    out = _outcome(True, "")
    mismatches = 0
    total = 0
    for group in (UT(3), Zn(2), DInf()):
        letters = [s * i for i in range(1, group.ngens + 1) for s in (1, -1)]
        for _ in range(500):
            a = random_acyclic_automaton(rng, rng.randint(1, 8), letters)
            image = path_elements(a, group)
            if image and rng.random() < 0.5:
                x = rng.choice(list(enumerate_accepting_words(a)))
            else:
                x = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
            # check_growth raises if any intermediate UT_3 norm exceeds the bound
            got = acyclic_membership(a, x, group, check_growth=True)
            want = evaluate_word(x, group).value in image
            mismatches += got != want
            total += 1
            if got:
                out.yes_verified += 1
            else:
                out.no_certified += 1  # the set-valued DP is exact
    out.ok = mismatches == 0
    out.detail = f"{total} automata over UT_3, Z^2, D_inf; {mismatches} mismatches"
    return out


@_timed(8, "finite-index transfer preserves answers", 30.0)
def criterion_8() -> Outcome:
    rng = random.Random(8)
    table = dihedral_coset_table()
    d, z = DInf(), Zn(1)
    mismatches, members = 0, 0
    for _ in range(200):
        a = random_acyclic_automaton(rng, rng.randint(1, 6), [1, -1, 2, -2])
        x = tuple(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 4)))
        before = evaluate_word(x, d).value in path_elements(a, d)
        b, y = transfer_to_subgroup(a, x, table)
        after = evaluate_word(y, z).value in path_elements(b, z)
        mismatches += before != after
        members += before
    return _outcome(mismatches == 0, f"200 instances, {members} members, {mismatches} mismatches")


@_timed(9, "purification over D_inf vs exact decision", 60.0)
def criterion_9() -> Outcome:
    rng = random.Random(9)
    oracle = dihedral_oracle()
    out = _outcome(True, "")
    mismatches = impure = nondecreasing = 0
    for _ in range(300):
        inst = random_dihedral_gkp(rng, rng.randint(0, 3))
        trace: list = []
        leaves = purify(inst, oracle, trace)
        impure += sum(leaf.instance.impurity(oracle) != 0 for leaf in leaves)
        nondecreasing += sum(child >= parent for parent, child in trace)
        got = decide_gkp(inst, oracle)
        exact = dihedral_gkp_exact(inst)
        mismatches += got.answer != (exact is not None)
        if got.answer:
            if inst.is_solution(got.witness):
                out.yes_verified += 1
            else:
                out.violations.append(("gkp", inst.to_json()))
        else:
            out.no_certified += 1  # purification plus the exact Z decider
    out.ok = mismatches == impure == nondecreasing == 0
    out.detail = (f"300 instances, {mismatches} mismatches, {impure} impure leaves, "
                  f"{nondecreasing} non-decreasing steps")
    return out


def _cocf_suite(rng, out, fixture, group, letters, vec, exact, count):
    mismatches = box_errors = 0
    for _ in range(count):
        k = rng.randint(0, 3)
        words = [[rng.choice(letters) for _ in range(rng.randint(0, 3))] for _ in range(k)]
        target = [rng.choice(letters) for _ in range(rng.randint(0, 3))]
        d = decide_cocf_knapsack(fixture, words, target, group)
        want = exact([vec(w) for w in words], vec(target))
        mismatches += d.answer != (want is not None)
        cols = [vec(w) for w in words]
        goal = vec(target)

        def hits(e):
            """Whether exponents ``e`` reach the target, by direct evaluation."""
            return all(sum(c[i] * x for c, x in zip(cols, e)) == goal[i] for i in range(len(goal)))

        in_image = {e for e in itertools.product(range(7), repeat=k) if not hits(e)}
        in_comp = {e for e in itertools.product(range(11), repeat=k) if hits(e)}
        box_errors += box_points(d.parikh, 6) != in_image
        box_errors += box_points(d.complement, 10) != in_comp
        if d.answer:
            word = [x for w, e in zip(words, d.witness) for x in tuple(w) * e]
            if evaluate_word(word, group) == evaluate_word(target, group):
                out.yes_verified += 1
            else:
                out.violations.append(("cocf", words, target))
        else:
            out.no_certified += 1  # the complement is exactly empty
    return mismatches, box_errors


@_timed(10, "co-context-free pipeline vs exact linear oracles", 600.0)
def criterion_10() -> Outcome:
    rng = random.Random(10)
    out = _outcome(True, "")

    def z_vec(w):
        return (w.count(1) - w.count(-1),)

    def z2_vec(w):
        return (w.count(1) - w.count(-1), w.count(2) - w.count(-2))

    def z_exact(vectors, t):
        return solve_nat_1d([v[0] for v in vectors], t[0])

    m1, b1 = _cocf_suite(rng, out, load_fixture("z"), Zn(1), [1, -1], z_vec, z_exact, 200)
    m2, b2 = _cocf_suite(rng, out, load_fixture("z2"), Zn(2), [1, -1, 2, -2], z2_vec, solve_nat_2d, 50)
    out.ok = m1 == m2 == b1 == b2 == 0
    out.detail = (f"Z: 200 instances, {m1} mismatches, {b1} box errors; "
                  f"Z^2: 50 instances, {m2} mismatches, {b2} box errors")
    return out


@_timed(11, "soundness of every yes and no", float("inf"))
def criterion_11() -> Outcome:
    suites = [criterion_2, criterion_4, criterion_6, criterion_7, criterion_9, criterion_10]
    outs = [s() for s in suites]
    yes = sum(o.yes_verified for o in outs)
    no = sum(o.no_certified for o in outs)
    violations = [v for o in outs for v in o.violations]
    return _outcome(not violations and yes > 0 and no > 0,
                    f"{yes} verified yes, {no} certified or exact no, {len(violations)} violations")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def report_line(number: int) -> str:
    title, out = RESULTS[number]
    status = "PASS" if out.passed else "FAIL"
    limit = "" if out.limit == float("inf") else f" (limit {out.limit:g}s)"
    return f"[{status}] criterion {number}: {title}: {out.detail}; {out.seconds:.2f}s{limit}"


@pytest.mark.parametrize("number", range(1, 12), ids=lambda n: f"criterion_{n}")
def test_criterion(number):
    out = CRITERIA[number - 1]()
    print(report_line(number))
    assert out.ok, out.detail
    assert not out.violations, out.violations[:3]
    assert out.seconds < out.limit, f"took {out.seconds:.2f}s, limit {out.limit}s"


if __name__ == "__main__":
    for i, fn in enumerate(CRITERIA, start=1):
        fn()
        print(report_line(i), flush=True)
