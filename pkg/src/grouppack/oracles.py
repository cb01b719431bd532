"""Brute-force reference oracles.

Oracles report "yes" with a witness or "no-within-box"; only the
subset-sum oracle, whose search space is finite, gives an unqualified no.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from grouppack.groups import Group
from grouppack.knapsack import KnapsackInstance


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    box: int = 6
    subset_cap: int = 1 << 22
    seconds: float | None = None

    def __post_init__(self) -> None:
        if self.box < 0 or self.subset_cap <= 0 or (self.seconds is not None and self.seconds <= 0):
            raise ValueError("oracle budgets must be positive")


def _half_products(group: Group, bases: Sequence) -> dict:
    """Map product value -> exponent tuple for every 0/1 choice over ``bases``."""
    out: dict = {group._identity(): ()}
    for g in bases:
        nxt: dict = {}
        for v, eps in out.items():
            nxt.setdefault(v, eps + (0,))
        for v, eps in out.items():
            nxt.setdefault(group._mul(v, g.value), eps + (1,))
        out = nxt
    return out


def brute_force_subsetsum(instance: KnapsackInstance,
                          budget: OracleBudget = OracleBudget()) -> tuple | None:
    """A 0/1 witness or None, searched exhaustively by meeting in the middle.

    Left products L and right products R are tabulated; x * y = t iff
    x = t * y^-1, which holds in any group.
    """
    k = instance.k
    if 2 ** k > budget.subset_cap:
        raise BudgetExceeded(f"2^{k} subsets exceed the cap {budget.subset_cap}")
    group = instance.group
    half = k // 2
    left = _half_products(group, instance.bases[:half])
    right = _half_products(group, instance.bases[half:])
    t = instance.target.value
    for v, eps in sorted(right.items(), key=lambda kv: kv[1]):
        need = group._mul(t, group._inv(v))
        if need in left:
            witness = left[need] + eps
            assert instance.is_solution(witness)
            return witness
    return None


def brute_force_knapsack(instance: KnapsackInstance,
                         budget: OracleBudget = OracleBudget()) -> tuple | None:
    """Lexicographically least witness in [0, box]^k, or None (no-within-box)."""
    k = instance.k
    if (budget.box + 1) ** k > budget.subset_cap:
        raise BudgetExceeded(f"box {budget.box}^{k} exceeds the cap {budget.subset_cap}")
    group = instance.group
    powers = [[group._pow(g.value, e) for e in range(budget.box + 1)] for g in instance.bases]
    t = instance.target.value

    def rec(i: int, acc) -> tuple | None:
        if i == k:
            return () if acc == t else None
        for e in range(budget.box + 1):
            sub = rec(i + 1, group._mul(acc, powers[i][e]))
            if sub is not None:
                return (e,) + sub
        return None

    return rec(0, group._identity())


def enumerate_box_solutions(instance: KnapsackInstance, box: int) -> list:
    return [x for x in itertools.product(range(box + 1), repeat=instance.k)
            if instance.is_solution(x)]


def bounded_membership(instance: KnapsackInstance, lo: int, hi: int) -> tuple | None:
    """Exponents in [lo, hi]^k solving the instance, by meeting in the middle."""
    group = instance.group
    k = instance.k
    half = k // 2
    rng = range(lo, hi + 1)

    def table(bases: Sequence) -> dict:
        out: dict = {group._identity(): ()}
        for g in bases:
            powers = [(e, group._pow(g.value, e)) for e in rng]
            nxt: dict = {}
            for v, es in out.items():
                for e, p in powers:
                    nxt.setdefault(group._mul(v, p), es + (e,))
            out = nxt
        return out

    left = table(instance.bases[:half])
    right = table(instance.bases[half:])
    t = instance.target.value
    for v, es in right.items():
        need = group._mul(t, group._inv(v))
        if need in left:
            witness = left[need] + es
            assert instance.is_solution(witness)
            return witness
    return None
