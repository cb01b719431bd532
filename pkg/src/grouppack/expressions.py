"""Exponential expressions and the chain polynomial -> equation system ->
expression over H3(Z)^d x Z^e -> knapsack over G x Z^l / four abelian subgroups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from grouppack.groups import (
    Group,
    GroupElement,
    GroupMismatchError,
    HeisZ,
    Product,
    Zn,
    element_from_json,
    group_from_json,
)
from grouppack.knapsack import KnapsackInstance

COEFFICIENT_SUM_GUARD = 16


class BlockError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomial systems


@dataclass(frozen=True)
class Polynomial:
    """sum coefficient * prod(variables); a monomial lists its variables with repetition."""

    terms: tuple  # of (coefficient, tuple of variable names)

    @classmethod
    def parse(cls, data: Any) -> Polynomial:
        raw = data["terms"] if isinstance(data, Mapping) else data
        terms = []
        for coeff, mono in raw:
            if isinstance(mono, Mapping):
                names = tuple(v for v, p in sorted(mono.items()) for _ in range(int(p)))
            else:
                names = tuple(mono)
            terms.append((int(coeff), names))
        return cls(tuple(terms))

    @property
    def variables(self) -> tuple:
        return tuple(sorted({v for _, m in self.terms for v in m}))

    def evaluate(self, nu: Mapping[str, int]) -> int:
        total = 0
        for c, mono in self.terms:
            p = c
            for v in mono:
                p *= nu[v]
            total += p
        return total

    def to_json(self) -> dict:
        return {"terms": [[c, list(m)] for c, m in self.terms]}


@dataclass(frozen=True)
class PolyEquationSystem:
    """Equations ("mul", x, y, z) for x*y = z, ("add", x, y, z) for x+y = z,
    ("const", x, c) for x = c. ``inputs`` are the variables the rest depend on."""

    equations: tuple
    x0: str
    a: int
    inputs: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "equations", tuple(tuple(e) for e in self.equations))
        pins = [e for e in self.equations if e[0] == "const" and e[1] == self.x0]
        if len(pins) != 1 or pins[0][2] != self.a:
            raise ValueError(f"exactly one equation {self.x0} = {self.a} is required")
        for e in self.equations:
            if e[0] not in ("mul", "add", "const"):
                raise ValueError(f"unknown equation kind {e[0]!r}")

    @property
    def variables(self) -> tuple:
        seen: dict = {}
        for e in self.equations:
            for v in (e[1:] if e[0] != "const" else e[1:2]):
                seen.setdefault(v, None)
        return tuple(seen)

    def is_solution(self, nu: Mapping[str, int]) -> bool:
        for e in self.equations:
            if e[0] == "mul" and nu[e[1]] * nu[e[2]] != nu[e[3]]:
                return False
            if e[0] == "add" and nu[e[1]] + nu[e[2]] != nu[e[3]]:
                return False
            if e[0] == "const" and nu[e[1]] != e[2]:
                return False
        return True

    def propagate(self, inputs: Mapping[str, int]) -> dict | None:
        """Extend an input assignment through forced equations; None if stuck."""
        nu = dict(inputs)
        progress = True
        while progress:
            progress = False
            for e in self.equations:
                kind, args = e[0], e[1:]
                if kind == "const":
                    if args[0] not in nu:
                        nu[args[0]] = args[1]
                        progress = True
                    continue
                x, y, z = args
                known = [v in nu for v in (x, y, z)]
                if kind == "mul" and known[0] and known[1] and not known[2]:
                    nu[z] = nu[x] * nu[y]
                    progress = True
                elif kind == "add" and sum(known) == 2:
                    if not known[2]:
                        nu[z] = nu[x] + nu[y]
                    elif not known[0]:
                        nu[x] = nu[z] - nu[y]
                    else:
                        nu[y] = nu[z] - nu[x]
                    progress = True
        if any(v not in nu for v in self.variables):
            return None
        return nu

    def to_json(self) -> dict:
        return {"kind": "system", "x0": self.x0, "a": self.a, "inputs": list(self.inputs),
                "equations": [list(e) for e in self.equations]}

    @classmethod
    def from_json(cls, data: dict) -> PolyEquationSystem:
        return cls(tuple(tuple(e) for e in data["equations"]), data["x0"], int(data["a"]),
                   tuple(data.get("inputs", ())))


def polynomial_to_system(poly: Polynomial, a: int) -> PolyEquationSystem:
    """Flatten P(x) = a into product, sum and constant equations.

    Coefficients c with |c| <= COEFFICIENT_SUM_GUARD become repeated sums
    (after a negation ``n + v = zero`` if c < 0); larger ones go through a
    constant variable and one product.
    """
    taken = set(poly.variables)
    counter = itertools.count(1)

    def fresh(stem: str) -> str:
        while True:
            name = f"_{stem}{next(counter)}"
            if name not in taken:
                taken.add(name)
                return name

    zero = "zero" if "zero" not in taken else fresh("zero")
    x0 = "x0" if "x0" not in taken else fresh("x0")
    taken |= {zero, x0}
    eqs: list = [("const", zero, 0), ("const", x0, a)]
    summands: list = []
    for coeff, mono in poly.terms:
        if coeff == 0:
            continue
        if not mono:
            k = fresh("k")
            eqs.append(("const", k, coeff))
            summands.append(k)
            continue
        v = mono[0]
        for y in mono[1:]:
            p = fresh("p")
            eqs.append(("mul", v, y, p))
            v = p
        if abs(coeff) > COEFFICIENT_SUM_GUARD:
            k, p = fresh("k"), fresh("p")
            eqs += [("const", k, coeff), ("mul", k, v, p)]
            summands.append(p)
            continue
        if coeff < 0:
            n = fresh("n")
            eqs.append(("add", n, v, zero))
            v = n
        acc = v
        for _ in range(abs(coeff) - 1):
            s = fresh("s")
            eqs.append(("add", acc, v, s))
            acc = s
        summands.append(acc)
    acc = summands[0] if summands else zero
    for t in summands[1:]:
        s = fresh("s")
        eqs.append(("add", acc, t, s))
        acc = s
    eqs.append(("add", acc, zero, x0))
    return PolyEquationSystem(tuple(eqs), x0, a, poly.variables)


def system_solvable_in_box(system: PolyEquationSystem, box: int) -> dict | None:
    """Search inputs in [-box, box] and propagate the rest."""
    names = system.inputs
    for vals in itertools.product(range(-box, box + 1), repeat=len(names)):
        nu = system.propagate(dict(zip(names, vals)))
        if nu is not None and system.is_solution(nu):
            return nu
    return None


# ---------------------------------------------------------------------------
# exponential expressions


@dataclass(frozen=True)
class ExponentialExpression:
    """g_1^{x_1} ... g_l^{x_l}; ``blocks`` optionally partitions it into runs."""

    group: Group
    terms: tuple  # of (GroupElement, variable name)
    blocks: tuple | None = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple((g, str(x)) for g, x in self.terms))
        for g, _ in self.terms:
            if g.group != self.group:
                raise GroupMismatchError(f"{g.group.name} base in a {self.group.name} expression")
        if self.blocks is not None:
            object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
            if sum(self.blocks) != len(self.terms) or min(self.blocks, default=1) < 1:
                raise BlockError("block lengths must be positive and cover the expression")

    @property
    def length(self) -> int:
        return len(self.terms)

    @property
    def variables(self) -> tuple:
        return tuple(dict.fromkeys(x for _, x in self.terms))

    def evaluate(self, nu: Mapping[str, int]) -> GroupElement:
        acc = self.group.identity()
        for g, x in self.terms:
            acc = acc * g ** nu[x]
        return acc

    def block_terms(self) -> list:
        out, pos = [], 0
        for b in self.blocks or ():
            out.append(self.terms[pos:pos + b])
            pos += b
        return out

    def check_blocks(self) -> None:
        if self.blocks is None:
            raise BlockError("expression has no block structure")
        blocks = self.block_terms()
        if any(len(b) > 4 for b in blocks):
            raise BlockError("blocks may have at most four terms")
        for i, j in itertools.combinations(range(len(blocks)), 2):
            for g, _ in blocks[i]:
                for h, _ in blocks[j]:
                    if not g.commutes_with(h):
                        raise BlockError(f"bases of blocks {i} and {j} do not commute")

    def solutions_in_box(self, target: GroupElement, box: int,
                         variables: Sequence[str] | None = None) -> Iterable[dict]:
        names = tuple(variables) if variables is not None else self.variables
        for vals in itertools.product(range(-box, box + 1), repeat=len(names)):
            nu = dict(zip(names, vals))
            if self.evaluate(nu) == target:
                yield nu

    def to_json(self) -> dict:
        out = {"kind": "expression", "group": self.group.to_json(),
               "terms": [[{"value": g.to_json()}, x] for g, x in self.terms]}
        if self.blocks is not None:
            out["blocks"] = list(self.blocks)
        return out

    @classmethod
    def from_json(cls, data: dict) -> ExponentialExpression:
        group = group_from_json(data["group"])
        terms = tuple((element_from_json(group, g), x) for g, x in data["terms"])
        return cls(group, terms, tuple(data["blocks"]) if "blocks" in data else None)


def combine_expressions(parts: Sequence[tuple]) -> tuple:
    """Direct-product combination of (expression, target) pairs.

    Each factor's bases are embedded in its own coordinate and the
    expressions concatenated; block structures concatenate as well.
    """
    group = Product(tuple(e.group for e, _ in parts))
    offsets, pos = [], 0
    for e, _ in parts:
        offsets.append(pos)
        pos += _factor_count(e.group)
    terms: list = []
    blocks: list = []
    targets: list = []
    has_blocks = all(e.blocks is not None for e, _ in parts)
    for (e, g), off in zip(parts, offsets):
        for base, x in e.terms:
            terms.append((_embed(group, off, base), x))
        targets.extend(_split(e.group, g.value))
        if has_blocks:
            blocks.extend(e.blocks)
    target = GroupElement(group, tuple(targets))
    expr = ExponentialExpression(group, tuple(terms), tuple(blocks) if has_blocks else None)
    return expr, target


def _factor_count(group: Group) -> int:
    return len(group.factors) if isinstance(group, Product) else 1


def _split(group: Group, value: Any) -> list:
    return list(value) if isinstance(group, Product) else [value]


def _embed(product: Product, offset: int, g: GroupElement) -> GroupElement:
    value = list(product._identity())
    parts = _split(g.group, g.value)
    value[offset:offset + len(parts)] = parts
    return GroupElement(product, tuple(value))


H3 = HeisZ(0)
Z1 = Zn(1)
# bases for x*y = z: the product evaluates to (0, 0, z - xy)
PRODUCT_BASES = ((0, 1, 0), (1, 0, 0), (0, -1, 0), (-1, 0, 0), (0, 0, 1))


def equation_expression(eq: tuple) -> tuple:
    """(expression, target) for a single equation, with its block structure."""
    kind = eq[0]
    if kind == "mul":
        x, y, z = eq[1:]
        terms = tuple((H3.elem(b), v) for b, v in zip(PRODUCT_BASES, (x, y, x, y, z)))
        return ExponentialExpression(H3, terms, (4, 1)), H3.identity()
    if kind == "add":
        x, y, z = eq[1:]
        terms = ((Z1.elem((1,)), x), (Z1.elem((1,)), y), (Z1.elem((-1,)), z))
        return ExponentialExpression(Z1, terms, (3,)), Z1.identity()
    x, c = eq[1:]
    return ExponentialExpression(Z1, ((Z1.elem((1,)), x),), (1,)), Z1.elem((c,))


def system_to_expression(system: PolyEquationSystem) -> tuple:
    """Expression over H3(Z)^d x Z^e whose solutions are exactly the system's."""
    ordered = ([e for e in system.equations if e[0] == "mul"]
               + [e for e in system.equations if e[0] != "mul"])
    return combine_expressions([equation_expression(e) for e in ordered])


# ---------------------------------------------------------------------------
# knapsack and four-subgroup encodings


def _with_vector(group: Group, g_value: Any, vec: tuple) -> tuple:
    return tuple(_split(group, g_value)) + (vec,)


def expression_to_knapsack(expr: ExponentialExpression, target: GroupElement) -> tuple:
    """Integer-exponent knapsack over G x Z^l: bases h_x (one per variable) then h_i.

    h_x = (1, e_x) with e_x the indicator of x's positions; h_i = (g_i, -e_i).
    Returns ``(instance, variables)``; a solution nu maps to exponents
    (nu(x) for x in variables) followed by (nu(x_i) for each position i).
    """
    l = expr.length
    big = Product((expr.group, Zn(l)))
    ident = expr.group._identity()
    variables = expr.variables
    bases = []
    for x in variables:
        vec = tuple(1 if xi == x else 0 for _, xi in expr.terms)
        bases.append(GroupElement(big, _with_vector(expr.group, ident, vec)))
    for i, (g, _) in enumerate(expr.terms):
        vec = tuple(-1 if j == i else 0 for j in range(l))
        bases.append(GroupElement(big, _with_vector(expr.group, g.value, vec)))
    goal = GroupElement(big, _with_vector(expr.group, target.value, (0,) * l))
    return KnapsackInstance(big, tuple(bases), goal), variables


def solution_to_exponents(expr: ExponentialExpression, nu: Mapping[str, int]) -> tuple:
    return tuple(nu[x] for x in expr.variables) + tuple(nu[x] for _, x in expr.terms)


def exponents_to_solution(expr: ExponentialExpression, exponents: Sequence[int]) -> dict:
    return dict(zip(expr.variables, exponents))


@dataclass(frozen=True)
class FourSubgroups:
    """Is target in G_1 G_2 G_3 G_4, with G_i generated by ``generators[i]``?"""

    group: Group
    generators: tuple  # four tuples of GroupElements
    target: GroupElement

    def flat_bases(self) -> tuple:
        return tuple(g for gens in self.generators for g in gens)

    def to_json(self) -> dict:
        return {"kind": "four-subgroups", "group": self.group.to_json(),
                "subgroups": [[{"value": g.to_json()} for g in gens] for gens in self.generators],
                "target": {"value": self.target.to_json()}}


def blocks_to_four_subgroups(expr: ExponentialExpression, target: GroupElement) -> FourSubgroups:
    """G_i is generated by the i-th base of every block."""
    expr.check_blocks()
    gens: list = [[], [], [], []]
    for block in expr.block_terms():
        for i, (g, _) in enumerate(block):
            gens[i].append(g)
    return FourSubgroups(expr.group, tuple(tuple(g) for g in gens), target)


def blocks_in_position_order(expr: ExponentialExpression) -> tuple:
    """Bases reordered position-major; equal as a product of cyclic subgroups."""
    blocks = expr.block_terms()
    return tuple(b[i][0] for i in range(4) for b in blocks if i < len(b))
