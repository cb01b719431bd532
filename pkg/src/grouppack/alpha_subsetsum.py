"""3CNF satisfiability as subset sum in G_alpha = <g_alpha, h> with alpha = 1 + sqrt 2.

Numbers are written in base alpha^3 with digits 0..5; such expansions are
unique, so digit-wise reasoning about sums is exact. A number Y is carried by
the word w_Y, which evaluates to the shear [[1, Y], [0, 1]].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from grouppack.cnf import CNFFormula
from grouppack.groups import ALPHA, GAlpha, QuadInt, quad_compare

MAX_DIGIT = 5


def alpha_value(digits: Sequence[int]) -> QuadInt:
    """Exact value of sum digits[i] * alpha^(3i)."""
    total = QuadInt(0, 0)
    cube = ALPHA ** 3
    power = QuadInt(1, 0)
    for d in digits:
        if not 0 <= d <= MAX_DIGIT:
            raise ValueError(f"digit {d} outside 0..{MAX_DIGIT}")
        total = total + power * d
        power = power * cube
    return total


def tail_inequality_holds(n: int) -> bool:
    """5 * (1 + alpha^3 + ... + alpha^(3n-3)) < alpha^(3n)."""
    return quad_compare(alpha_value([MAX_DIGIT] * n), ALPHA ** (3 * n)) < 0


def check_digit_uniqueness(n_max: int) -> bool:
    """No two distinct digit strings of length <= n_max share a value.

    Shorter strings are covered by zero padding, which leaves both the value
    and the normalized (trailing-zero-free) form unchanged.
    """
    seen: dict = {}
    for digits in itertools.product(range(MAX_DIGIT + 1), repeat=n_max):
        v = alpha_value(digits)
        if v in seen:
            return False
        seen[v] = digits
    return all(tail_inequality_holds(n) for n in range(1, n_max + 1))


def shear_word(i: int) -> tuple:
    """w_i = g^i h g^-i, evaluating to [[1, alpha^i], [0, 1]]."""
    return (1,) * i + (2,) + (-1,) * i


def digits_word(digits: Sequence[int], stride: int = 3) -> tuple:
    """w_Y for Y = sum digits[p] * alpha^(stride * p), as a literal word."""
    word: list = []
    for p, d in enumerate(digits):
        word.extend(shear_word(stride * p) * d)
    return tuple(word)


@dataclass(frozen=True)
class SubsetSumEncoding:
    formula: CNFFormula
    u_digits: tuple  # one digit vector of length n + m per u_k
    t_digits: tuple

    @property
    def u_values(self) -> tuple:
        return tuple(alpha_value(d) for d in self.u_digits)

    @property
    def t_value(self) -> QuadInt:
        return alpha_value(self.t_digits)

    @property
    def words(self) -> tuple:
        return tuple(digits_word(d) for d in self.u_digits)

    @property
    def target_word(self) -> tuple:
        return digits_word(self.t_digits)

    def subset_value(self, subset: Sequence[int]) -> QuadInt:
        """Sum of u_k over 1-based indices k."""
        total = QuadInt(0, 0)
        for k in subset:
            total = total + self.u_values[k - 1]
        return total

    def to_json(self) -> dict:
        return {"kind": "ssp", "group": GAlpha().to_json(),
                "bases": [list(w) for w in self.words], "target": list(self.target_word)}


def cnf_to_subsetsum(formula: CNFFormula) -> SubsetSumEncoding:
    n, m = formula.n, formula.m
    width = n + m
    us: list = []
    for i in range(1, n + 1):
        for lit in (i, -i):
            d = [0] * width
            d[i - 1] = 1
            for k, clause in enumerate(formula.clauses):
                if lit in clause:
                    d[n + k] += 1
            us.append(tuple(d))
    for j in range(m):
        d = [0] * width
        d[n + j] = 1
        us.extend((tuple(d), tuple(d)))
    t = tuple([1] * n + [3] * m)
    return SubsetSumEncoding(formula, tuple(us), t)


def assignment_to_subset(assignment: Sequence[bool], formula: CNFFormula) -> frozenset:
    """The index set (1-based) induced by an assignment and its per-clause true counts.

    A clause with no true literal gets both fillers; the resulting sum then
    misses t in that clause's digit whatever the filler choice.
    """
    n = formula.n
    chosen = set()
    for i in range(1, n + 1):
        chosen.add(2 * i - 1 if assignment[i - 1] else 2 * i)
    for j, clause in enumerate(formula.clauses, start=1):
        gamma = sum(assignment[abs(l) - 1] == (l > 0) for l in clause)
        if gamma <= 2:
            chosen.add(2 * n + 2 * j - 1)
        if gamma <= 1:
            chosen.add(2 * n + 2 * j)
    return frozenset(chosen)


def subset_to_assignment(subset: Sequence[int], n: int) -> tuple:
    return tuple((2 * i - 1) in subset for i in range(1, n + 1))
