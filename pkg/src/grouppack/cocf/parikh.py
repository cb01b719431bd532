"""Parikh images of context-free grammars as semilinear sets.

The commutative image of a grammar is the least solution of a polynomial
system over the semiring of semilinear sets (union, Minkowski sum). In a
commutative idempotent semiring, Newton iteration reaches that solution after
as many rounds as there are variables, and each round only needs the star of
a linear system. The system is solved one strongly connected component at a
time.
"""

from __future__ import annotations

from typing import Hashable, Sequence

import networkx as nx

from grouppack.cocf.grammar import Grammar, trim
from grouppack.cocf.semilinear import SemilinearSet, minkowski, simplify, star, union


def _zero(k: int) -> SemilinearSet:
    return SemilinearSet.empty(k)


def _add(a: SemilinearSet, b: SemilinearSet) -> SemilinearSet:
    if a.is_empty():
        return b
    if b.is_empty():
        return a
    return union(a, b)


def _mul(a: SemilinearSet, b: SemilinearSet) -> SemilinearSet:
    if a.is_empty() or b.is_empty():
        return SemilinearSet.empty(a.k)
    return minkowski(a, b)


def _solve_linear(variables: Sequence[Hashable], eqs: dict, k: int) -> dict:
    """Least solution of X = c + sum_j M_j X_j by elimination with stars."""
    eqs = {x: (c, dict(m)) for x, (c, m) in eqs.items()}
    order = list(variables)
    for x in order:
        c, m = eqs[x]
        loop = m.pop(x, None)
        if loop is not None:
            s = star(loop)
            c = _mul(s, c)
            m = {y: _mul(s, v) for y, v in m.items()}
        eqs[x] = (c, m)
        for y in order:
            if y == x:
                continue
            cy, my = eqs[y]
            if x not in my:
                continue
            f = my.pop(x)
            cy = _add(cy, _mul(f, c))
            for z, v in m.items():
                my[z] = _add(my[z], _mul(f, v)) if z in my else _mul(f, v)
            eqs[y] = (cy, my)
    # back substitution: after elimination each equation only mentions later variables
    sol: dict = {}
    for x in reversed(order):
        c, m = eqs[x]
        for y, v in m.items():
            c = _add(c, _mul(v, sol[y]))
        sol[x] = c
    return sol


def parikh_image(g: Grammar, letters: Sequence[str] | None = None) -> SemilinearSet:
    """Semilinear set of letter-count vectors of L(g), coordinates in ``letters`` order."""
    if letters is None:
        letters = sorted(g.terminals)
    letters = list(letters)
    k = len(letters)
    index = {a: i for i, a in enumerate(letters)}
    missing = g.terminals - set(index)
    if missing:
        raise ValueError(f"letters {sorted(missing)} have no coordinate")
    g = trim(g)
    if g.start not in {lhs for lhs, _ in g.productions}:
        return _zero(k)

    # each production as (terminal count vector, list of nonterminals)
    rules: dict = {n: [] for n in g.nonterminals}
    for lhs, rhs in g.productions:
        v = [0] * k
        nts = []
        for s in rhs:
            if s in g.terminals:
                v[index[s]] += 1
            else:
                nts.append(s)
        rules[lhs].append((SemilinearSet.point(tuple(v)), nts))

    dep = nx.DiGraph()
    dep.add_nodes_from(g.nonterminals)
    for lhs, rhs in g.productions:
        dep.add_edges_from((lhs, s) for s in rhs if s in g.nonterminals)
    cond = nx.condensation(dep)
    value: dict = {}
    for comp in reversed(list(nx.topological_sort(cond))):
        members = sorted(cond.nodes[comp]["members"], key=repr)
        _solve_component(members, rules, value, k)
    return simplify(value[g.start])


def _solve_component(members: list, rules: dict, value: dict, k: int) -> None:
    inside = set(members)

    def f(nu: dict) -> dict:
        out = {}
        for x in members:
            acc = _zero(k)
            for const, nts in rules[x]:
                term = const
                for y in nts:
                    term = _mul(term, nu[y] if y in inside else value[y])
                acc = _add(acc, term)
            out[x] = acc
        return out

    def differential(nu: dict) -> dict:
        """Coefficient of X_y in the derivative of x's right side at nu."""
        out: dict = {x: {} for x in members}
        for x in members:
            for const, nts in rules[x]:
                for pos, y in enumerate(nts):
                    if y not in inside:
                        continue
                    term = const
                    for j, z in enumerate(nts):
                        if j != pos:
                            term = _mul(term, nu[z] if z in inside else value[z])
                    if term.is_empty():
                        continue
                    out[x][y] = _add(out[x][y], term) if y in out[x] else term
        return out

    recursive = any(y in inside for x in members for _, nts in rules[x] for y in nts)
    if not recursive:
        value.update(f({}))
        return
    nu = f({x: _zero(k) for x in members})
    for _ in range(len(members)):
        base = f(nu)
        d = differential(nu)
        nu_next = _solve_linear(members, {x: (base[x], d[x]) for x in members}, k)
        if nu_next == nu:
            break
        nu = nu_next
    value.update(nu)


def parikh_vector(word: Sequence[str], letters: Sequence[str]) -> tuple:
    index = {a: i for i, a in enumerate(letters)}
    v = [0] * len(letters)
    for a in word:
        v[index[a]] += 1
    return tuple(v)

