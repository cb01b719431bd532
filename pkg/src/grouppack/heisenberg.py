"""Knapsack over H3(Z) x Z^e as a Diophantine system, with a sound budgeted decider.

The system has one linear equation per abelian coordinate (a, b and each Z
factor) and one quadratic equation for the central coordinate c. The decider
answers yes with a witness, no with a checkable certificate, or unknown.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Iterator, Sequence

import numpy as np
from scipy.optimize import linprog

from grouppack.groups import GroupError, HeisZ
from grouppack.knapsack import KnapsackInstance
from grouppack.linear import gcd_all

DEFAULT_MODULI = (2, 3, 4, 5, 8, 9)
MODULAR_ENUMERATION_CAP = 250_000


@dataclass(frozen=True)
class DiophantineSystem:
    """Linear rows ``sum coeffs_i x_i = const`` plus one quadratic equation

    ``const = sum lin_i x_i + sum sq_i (x_i - 1) x_i / 2 + sum_{i<j} cross[i,j] x_i x_j``.
    """

    k: int
    linear: tuple  # of (coeffs tuple, const)
    quad_linear: tuple
    quad_square: tuple
    quad_cross: tuple  # of ((i, j), coefficient) with i < j, nonzero only
    quad_const: int

    def quadratic_value(self, x: Sequence[int]) -> int:
        v = sum(c * xi for c, xi in zip(self.quad_linear, x))
        v += sum(s * (xi - 1) * xi // 2 for s, xi in zip(self.quad_square, x))
        v += sum(c * x[i] * x[j] for (i, j), c in self.quad_cross)
        return v

    def residuals(self, x: Sequence[int]) -> tuple:
        lin = tuple(sum(c * xi for c, xi in zip(row, x)) - b for row, b in self.linear)
        return lin + (self.quadratic_value(x) - self.quad_const,)

    def is_solution(self, x: Sequence[int]) -> bool:
        return not any(self.residuals(x))

    def solutions_in_box(self, bound: int) -> Iterator[tuple]:
        for x in itertools.product(range(bound + 1), repeat=self.k):
            if self.is_solution(x):
                yield x

    def free_variables(self) -> set:
        """Variables with zero coefficient in every equation."""
        used = set()
        for row, _ in self.linear:
            used |= {i for i, c in enumerate(row) if c}
        used |= {i for i, c in enumerate(self.quad_linear) if c}
        used |= {i for i, c in enumerate(self.quad_square) if c}
        for (i, j), _ in self.quad_cross:
            used |= {i, j}
        return set(range(self.k)) - used

    def to_json(self) -> dict:
        return {"k": self.k,
                "linear": [{"coeffs": list(r), "const": b} for r, b in self.linear],
                "quadratic": {"linear": list(self.quad_linear), "square": list(self.quad_square),
                              "cross": [[i, j, c] for (i, j), c in self.quad_cross],
                              "const": self.quad_const}}

    @classmethod
    def from_json(cls, data: dict) -> DiophantineSystem:
        q = data["quadratic"]
        return cls(int(data["k"]),
                   tuple((tuple(r["coeffs"]), int(r["const"])) for r in data["linear"]),
                   tuple(q["linear"]), tuple(q["square"]),
                   tuple(((int(i), int(j)), int(c)) for i, j, c in q["cross"]),
                   int(q["const"]))


def _require_heis(instance: KnapsackInstance) -> HeisZ:
    if not isinstance(instance.group, HeisZ):
        raise GroupError(f"expected H3(Z) x Z^e, got {instance.group.name}")
    return instance.group


def knapsack_to_diophantine(instance: KnapsackInstance) -> DiophantineSystem:
    group = _require_heis(instance)
    coords = [g.value for g in instance.bases]
    t = instance.target.value
    k = len(coords)
    linear = [(tuple(g[pos] for g in coords), t[pos]) for pos in (0, 1)]
    linear += [(tuple(g[3 + z] for g in coords), t[3 + z]) for z in range(group.e)]
    cross = tuple(((i, j), coords[i][0] * coords[j][1])
                  for i in range(k) for j in range(i + 1, k) if coords[i][0] * coords[j][1])
    return DiophantineSystem(k, tuple(linear), tuple(g[2] for g in coords),
                             tuple(g[0] * g[1] for g in coords), cross, t[2])


# ---------------------------------------------------------------------------
# decision


@dataclass(frozen=True)
class Decision:
    decision: str  # "yes" | "no" | "unknown"
    witness: tuple | None = None
    certificate: dict | None = field(default=None, hash=False)

    def to_json(self) -> dict:
        out: dict = {"decision": self.decision}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    @classmethod
    def from_json(cls, data: dict) -> Decision:
        w = data.get("witness")
        return cls(data["decision"], None if w is None else tuple(w), data.get("certificate"))


def _exact_bounds(system: DiophantineSystem) -> list | None:
    """Upper bounds on every variable implied by single-sign linear rows, or None."""
    bounds: list = [None] * system.k
    for i in system.free_variables():
        bounds[i] = 0
    for row, b in system.linear:
        if all(c >= 0 for c in row) or all(c <= 0 for c in row):
            sign = 1 if any(c > 0 for c in row) else -1
            for i, c in enumerate(row):
                if c:
                    cap = max(-1, (sign * b) // (sign * c))
                    bounds[i] = cap if bounds[i] is None else min(bounds[i], cap)
    if any(v is None for v in bounds):
        return None
    return bounds


def _box_search(system: DiophantineSystem, caps: Sequence[int]) -> tuple | None:
    """Lexicographically least solution inside prod [0, caps_i], with linear pruning."""
    k = system.k
    if any(c < 0 for c in caps):
        return None
    rows = [(list(r), b) for r, b in system.linear]
    # suffix ranges of each linear row over the remaining variables
    lo = [[0] * (k + 1) for _ in rows]
    hi = [[0] * (k + 1) for _ in rows]
    for r, (row, _) in enumerate(rows):
        for i in range(k - 1, -1, -1):
            v = row[i] * caps[i]
            lo[r][i] = lo[r][i + 1] + min(0, v)
            hi[r][i] = hi[r][i + 1] + max(0, v)

    x = [0] * k
    partial = [0] * len(rows)

    def rec(i: int) -> bool:
        for r, (row, b) in enumerate(rows):
            rest = b - partial[r]
            if not lo[r][i] <= rest <= hi[r][i]:
                return False
        if i == k:
            return system.quadratic_value(x) == system.quad_const
        for v in range(caps[i] + 1):
            x[i] = v
            for r, (row, _) in enumerate(rows):
                partial[r] += row[i] * v
            ok = rec(i + 1)
            for r, (row, _) in enumerate(rows):
                partial[r] -= row[i] * v
            if ok:
                return True
        x[i] = 0
        return False

    return tuple(x) if rec(0) else None


def _modular_satisfiable(system: DiophantineSystem, m: int) -> bool | None:
    """Whether the system has a solution modulo m (None if too large to enumerate).

    The quadratic term (x-1)x/2 mod m depends on x mod 2m, so residues mod 2m
    are enumerated.
    """
    if (2 * m) ** system.k > MODULAR_ENUMERATION_CAP:
        return None
    for x in itertools.product(range(2 * m), repeat=system.k):
        if all(r % m == 0 for r in system.residuals(x)):
            return True
    return False


def _farkas_certificate(system: DiophantineSystem) -> list | None:
    """Integer y with y^T A >= 0 and y^T b < 0, proving no real x >= 0 solves Ax = b."""
    if not system.linear or system.k == 0:
        return None
    a = np.array([row for row, _ in system.linear], dtype=float)
    b = np.array([const for _, const in system.linear], dtype=float)
    n_rows = a.shape[0]
    res = linprog(np.zeros(n_rows), A_ub=-a.T, b_ub=np.zeros(a.shape[1]),
                  A_eq=b.reshape(1, -1), b_eq=[-1.0], bounds=[(None, None)] * n_rows,
                  method="highs")
    if res.status != 0:
        return None
    fr = [Fraction(float(v)).limit_denominator(10 ** 6) for v in res.x]
    scale = lcm(*[f.denominator for f in fr]) if fr else 1
    y = [int(f * scale) for f in fr]
    return y if _check_farkas(system, y) else None


def _check_farkas(system: DiophantineSystem, y: Sequence[int]) -> bool:
    if len(y) != len(system.linear):
        return False
    for i in range(system.k):
        if sum(yr * row[i] for yr, (row, _) in zip(y, system.linear)) < 0:
            return False
    return sum(yr * b for yr, (_, b) in zip(y, system.linear)) < 0


def _gcd_obstruction(system: DiophantineSystem) -> dict | None:
    for r, (row, b) in enumerate(system.linear):
        g = gcd_all(row)
        if (g == 0 and b != 0) or (g and b % g):
            return {"type": "gcd", "row": r, "gcd": g}
    return None


def decide_system(system: DiophantineSystem, budget: int,
                  moduli: Sequence[int] = DEFAULT_MODULI) -> Decision:
    bounds = _exact_bounds(system)
    caps = [budget] * system.k
    exhaustive = bounds is not None and all(c <= budget for c in bounds)
    if exhaustive:
        caps = list(bounds)
    witness = _box_search(system, caps)
    if witness is not None:
        return Decision("yes", witness)
    if exhaustive:
        return Decision("no", certificate={"type": "bounded", "bounds": list(bounds)})
    cert = _gcd_obstruction(system)
    if cert is not None:
        return Decision("no", certificate=cert)
    for m in moduli:
        if _modular_satisfiable(system, m) is False:
            return Decision("no", certificate={"type": "modular", "modulus": m})
    y = _farkas_certificate(system)
    if y is not None:
        return Decision("no", certificate={"type": "farkas", "multipliers": y})
    return Decision("unknown")


def decide_knapsack_h3(instance: KnapsackInstance, budget: int,
                       moduli: Sequence[int] = DEFAULT_MODULI) -> Decision:
    """Three-valued knapsack decision over H3(Z) x Z^e."""
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    system = knapsack_to_diophantine(instance)
    decision = decide_system(system, budget, moduli)
    if decision.decision == "yes" and not instance.is_solution(decision.witness):
        raise AssertionError("witness from the Diophantine system fails group evaluation")
    return decision


def verify_certificate(system: DiophantineSystem, certificate: dict) -> bool:
    """Independently re-check a "no" certificate against the system."""
    kind = certificate.get("type")
    if kind == "bounded":
        bounds = list(certificate["bounds"])
        implied = _exact_bounds(system)
        if implied is None or any(b < i for b, i in zip(bounds, implied)):
            return False
        if any(b < 0 for b in bounds):
            return True
        return not any(system.is_solution(x) for x in
                       itertools.product(*[range(b + 1) for b in bounds]))
    if kind == "gcd":
        row, b = system.linear[certificate["row"]]
        g = gcd_all(row)
        return (g == 0 and b != 0) or (g != 0 and b % g != 0)
    if kind == "modular":
        m = int(certificate["modulus"])
        for x in itertools.product(range(2 * m), repeat=system.k):
            if all(r % m == 0 for r in system.residuals(x)):
                return False
        return True
    if kind == "farkas":
        return _check_farkas(system, certificate["multipliers"])
    return False


def verify_decision(instance: KnapsackInstance, decision: Decision) -> bool:
    if decision.decision == "yes":
        return decision.witness is not None and instance.is_solution(decision.witness)
    if decision.decision == "no":
        return (decision.certificate is not None
                and verify_certificate(knapsack_to_diophantine(instance), decision.certificate))
    return decision.decision == "unknown"


def random_heis_instance(rng: Any, k: int, e: int = 1, spread: int = 2,
                         solvable_bias: float = 0.5) -> KnapsackInstance:
    """Random instance; with probability ``solvable_bias`` the target is a product of powers."""
    group = HeisZ(e)
    bases = tuple(group.elem(tuple(rng.randint(-spread, spread) for _ in range(3 + e)))
                  for _ in range(k))
    if rng.random() < solvable_bias:
        inst = KnapsackInstance(group, bases, group.identity())
        target = inst.evaluate([rng.randint(0, 6) for _ in range(k)])
    else:
        target = group.elem(tuple(rng.randint(-3 * spread, 3 * spread) for _ in range(3 + e)))
    return KnapsackInstance(group, bases, target)
