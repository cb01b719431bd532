"""Membership of group elements in images of acyclic automata.

Automata carry words as transition labels. For group instances a letter is
a signed generator index; the context-free pipeline reuses the same class
with string letters.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from math import comb
from typing import Any, Iterator, Sequence

from grouppack.groups import (
    DInf,
    Group,
    GroupElement,
    HeisZ,
    IntMatrix,
    UT,
    Zn,
    element_from_json,
    evaluate_word,
    group_from_json,
)


class NotAcyclicError(ValueError):
    pass


class GrowthBoundViolation(RuntimeError):
    """An intermediate UT_d product exceeded the polynomial entry bound."""


class CosetTableError(ValueError):
    pass


@dataclass(frozen=True)
class Automaton:
    n_states: int
    initial: int
    finals: frozenset
    transitions: tuple  # of (p, label, q); label is a tuple of letters

    def __post_init__(self) -> None:
        trans = tuple((int(p), tuple(w), int(q)) for p, w, q in self.transitions)
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "finals", frozenset(self.finals))
        states = range(self.n_states)
        if self.initial not in states or not self.finals <= set(states):
            raise ValueError("initial/final state out of range")
        for p, _, q in trans:
            if p not in states or q not in states:
                raise ValueError(f"transition ({p}, {q}) uses an unknown state")

    def _graph(self) -> dict:
        graph: dict = {s: set() for s in range(self.n_states)}
        for p, _, q in self.transitions:
            graph[q].add(p)
        return graph

    @property
    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except NotAcyclicError:
            return False
        return True

    def topological_order(self) -> list:
        try:
            return list(graphlib.TopologicalSorter(self._graph()).static_order())
        except graphlib.CycleError as exc:
            raise NotAcyclicError("automaton has a directed cycle") from exc

    def outgoing(self) -> dict:
        out: dict = {s: [] for s in range(self.n_states)}
        for p, w, q in self.transitions:
            out[p].append((w, q))
        return out

    def letters(self) -> set:
        return {a for _, w, _ in self.transitions for a in w}

    def to_json(self) -> dict:
        return {"states": self.n_states, "initial": self.initial,
                "finals": sorted(self.finals),
                "transitions": [[p, list(w), q] for p, w, q in self.transitions]}

    @classmethod
    def from_json(cls, data: dict) -> Automaton:
        return cls(int(data["states"]), int(data.get("initial", 0)),
                   frozenset(data["finals"]),
                   tuple((p, tuple(w), q) for p, w, q in data["transitions"]))


def split_transitions(automaton: Automaton) -> Automaton:
    """Equivalent automaton whose labels have length at most one."""
    n = automaton.n_states
    trans = []
    for p, w, q in automaton.transitions:
        if len(w) <= 1:
            trans.append((p, w, q))
            continue
        prev = p
        for a in w[:-1]:
            trans.append((prev, (a,), n))
            prev, n = n, n + 1
        trans.append((prev, (w[-1],), q))
    return Automaton(n, automaton.initial, automaton.finals, tuple(trans))


def subsetsum_to_automaton(g_words: Sequence[Sequence[int]],
                           target: Sequence[int]) -> tuple:
    """Chain automaton 0 -> 1 -> ... -> k with an epsilon and a g_i edge per step."""
    trans = []
    for i, w in enumerate(g_words):
        trans.append((i, (), i + 1))
        trans.append((i, tuple(w), i + 1))
    k = len(g_words)
    return Automaton(k + 1, 0, frozenset({k}), tuple(trans)), tuple(target)


def entry_growth_bound(d: int, m: int, n: int) -> int:
    """Norm bound for a product of n matrices of UT_d(Z) of norm at most m."""
    if d < 1 or m < 0 or n < 2 * d:
        raise ValueError(f"entry_growth_bound needs d >= 1, m >= 0, n >= 2d (got {d}, {m}, {n})")
    if d == 1:
        return 1
    return d + (d - 1) * comb(n, d - 1) * d ** (2 * (d - 2)) * m ** (d - 1)


def _ut_norm_fn(group: Group):
    """(dimension, norm function on payloads) when ``group`` is unitriangular."""
    if isinstance(group, UT):
        return group.d, IntMatrix.norm
    if isinstance(group, HeisZ) and group.e == 0:
        return 3, lambda v: 3 + abs(v[0]) + abs(v[1]) + abs(v[2])
    return None


def reachable_sets(automaton: Automaton, group: Group, *,
                   check_growth: bool = True) -> tuple:
    """Per-state element sets plus back-pointers, by DP in topological order.

    Returns ``(reach, back)`` where ``reach[q]`` is the set of payloads that
    label some path from the initial state to ``q`` and ``back[q][v]`` is a
    ``(p, u, label)`` predecessor (``None`` at the initial state).
    """
    a = split_transitions(automaton)
    order = a.topological_order()
    out = a.outgoing()
    letter_vals: dict = {}

    def letter(w: tuple) -> Any:
        if w not in letter_vals:
            letter_vals[w] = evaluate_word(w, group).value
        return letter_vals[w]

    ut = _ut_norm_fn(group) if check_growth else None
    bound = None
    if ut is not None:
        d, norm = ut
        labels = {w for _, w, _ in a.transitions}
        m = max([d] + [norm(letter(w)) for w in labels])
        bound = entry_growth_bound(d, m, max(a.n_states, 2 * d))

    back: dict = {s: {} for s in range(a.n_states)}
    back[a.initial][group._identity()] = None
    mul = group._mul
    for p in order:
        here = back[p]
        if not here:
            continue
        for w, q in out[p]:
            g = letter(w)
            target = back[q]
            for v in here:
                u = mul(v, g) if w else v
                if u not in target:
                    target[u] = (p, v, w)
        if bound is not None:
            for v in here:
                if norm(v) > bound:
                    raise GrowthBoundViolation(f"norm {norm(v)} exceeds bound {bound}")
    reach = {s: set(back[s]) for s in range(automaton.n_states)}
    return reach, back


def find_accepting_path(automaton: Automaton, x: Sequence[int], group: Group, *,
                        check_growth: bool = True) -> list | None:
    """Labels of an accepting path evaluating to ``x`` in ``group``, or None."""
    if not automaton.is_acyclic:
        raise NotAcyclicError("acyclic membership needs an acyclic automaton")
    target = evaluate_word(x, group).value
    _, back = reachable_sets(automaton, group, check_growth=check_growth)
    for f in sorted(automaton.finals):
        if target in back[f]:
            labels = []
            state, value = f, target
            while back[state][value] is not None:
                p, v, w = back[state][value]
                if w:
                    labels.append(w)
                state, value = p, v
            return labels[::-1]
    return None


def acyclic_membership(automaton: Automaton, x: Sequence[int], group: Group, *,
                       check_growth: bool = True) -> bool:
    """Decide whether ``x`` equals in ``group`` the label of some accepting path."""
    return find_accepting_path(automaton, x, group, check_growth=check_growth) is not None


def enumerate_accepting_words(automaton: Automaton) -> Iterator[tuple]:
    """Every accepting path label, by plain depth-first path enumeration."""
    if not automaton.is_acyclic:
        raise NotAcyclicError("path enumeration needs an acyclic automaton")
    out = automaton.outgoing()

    def walk(state: int, prefix: tuple) -> Iterator[tuple]:
        if state in automaton.finals:
            yield prefix
        for w, q in out[state]:
            yield from walk(q, prefix + w)

    yield from walk(automaton.initial, ())


# ---------------------------------------------------------------------------
# finite-index transfer


@dataclass(frozen=True)
class CosetTable:
    """Rewriting data for right cosets of H in G.

    ``rewrite[(i, a)] = (w, j)`` states ``g_i * a = w * g_j`` in G, where ``a``
    is a signed generator of G and ``w`` a word over the generators of H
    (mapped into G by ``embedding``).
    """

    group: Group
    subgroup: Group
    embedding: tuple
    representatives: tuple
    rewrite: dict = field(hash=False)

    def embed_word(self, w: Sequence[int]) -> GroupElement:
        acc = self.group.identity()
        for a in w:
            g = self.embedding[abs(a) - 1]
            acc = acc * (g if a > 0 else g.inverse())
        return acc

    def validate(self) -> None:
        reps = self.representatives
        if not reps or not reps[0].is_identity:
            raise CosetTableError("first representative must be the identity")
        if len(set(reps)) != len(reps):
            raise CosetTableError("representatives must be distinct")
        if len(self.embedding) != self.subgroup.ngens:
            raise CosetTableError("embedding must image every generator of H")
        letters = [s * a for a in range(1, self.group.ngens + 1) for s in (1, -1)]
        for i, g in enumerate(reps):
            for a in letters:
                if (i, a) not in self.rewrite:
                    raise CosetTableError(f"rewrite missing for ({i}, {a})")
                w, j = self.rewrite[(i, a)]
                if not 0 <= j < len(reps):
                    raise CosetTableError(f"rewrite ({i}, {a}) names coset {j}")
                if g * self.group.generator(a) != self.embed_word(w) * reps[j]:
                    raise CosetTableError(f"rewrite ({i}, {a}) -> ({w}, {j}) is false")

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "subgroup": self.subgroup.to_json(),
                "embedding": [{"value": g.to_json()} for g in self.embedding],
                "representatives": [{"value": g.to_json()} for g in self.representatives],
                "rewrite": [[i, a, list(w), j] for (i, a), (w, j) in sorted(self.rewrite.items())]}

    @classmethod
    def from_json(cls, data: dict) -> CosetTable:
        g = group_from_json(data["group"])
        h = group_from_json(data["subgroup"])
        table = cls(g, h, tuple(element_from_json(g, e) for e in data["embedding"]),
                    tuple(element_from_json(g, e) for e in data["representatives"]),
                    {(int(i), int(a)): (tuple(w), int(j)) for i, a, w, j in data["rewrite"]})
        table.validate()
        return table


def dihedral_coset_table() -> CosetTable:
    """D_inf over H = <t> (identified with Z), representatives {1, s}."""
    g = DInf()
    rewrite = {
        (0, 1): ((1,), 0), (0, -1): ((-1,), 0), (0, 2): ((), 1), (0, -2): ((), 1),
        (1, 1): ((-1,), 1), (1, -1): ((1,), 1), (1, 2): ((), 0), (1, -2): ((), 0),
    }
    return CosetTable(g, Zn(1), (g.generator(1),), (g.identity(), g.generator(2)), rewrite)


def integer_coset_table(n: int) -> CosetTable:
    """Z over H = nZ, representatives 0, 1, ..., n-1."""
    g = Zn(1)
    rewrite = {}
    for i in range(n):
        rewrite[(i, 1)] = ((), i + 1) if i + 1 < n else ((1,), 0)
        rewrite[(i, -1)] = ((), i - 1) if i > 0 else ((-1,), n - 1)
    reps = tuple(g.elem((i,)) for i in range(n))
    return CosetTable(g, Zn(1), (g.elem((n,)),), reps, rewrite)


def decompose_coset(x: Sequence[int], table: CosetTable) -> tuple:
    """Return ``(y, s)`` with ``x = y * g_s`` in G, y a word over H."""
    i = 0
    y: list = []
    for a in x:
        w, i = table.rewrite[(i, a)]
        y.extend(w)
    return tuple(y), i


def transfer_to_subgroup(automaton: Automaton, x: Sequence[int],
                         table: CosetTable) -> tuple:
    """Instance over H with the same answer: ``x in_G L(A)`` iff ``y in_H L(B)``."""
    a = split_transitions(automaton)
    if not a.is_acyclic:
        raise NotAcyclicError("transfer needs an acyclic automaton")
    r = len(table.representatives)
    trans = []
    for p, w, q in a.transitions:
        for i in range(r):
            if not w:
                trans.append((p * r + i, (), q * r + i))
            else:
                y, j = table.rewrite[(i, w[0])]
                trans.append((p * r + i, y, q * r + j))
    y, s = decompose_coset(x, table)
    b = Automaton(a.n_states * r, a.initial * r, frozenset(f * r + s for f in a.finals),
                  tuple(trans))
    return b, y


def random_acyclic_automaton(rng, n_states: int, letters: Sequence[int], *,
                             max_out: int = 2, max_label: int = 2) -> Automaton:
    """Random acyclic automaton whose edges go from lower to higher states."""
    trans = []
    for p in range(n_states - 1):
        for _ in range(rng.randint(0, max_out)):
            q = rng.randint(p + 1, n_states - 1)
            label = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_label)))
            trans.append((p, label, q))
    finals = frozenset(s for s in range(n_states) if rng.random() < 0.4) or frozenset({n_states - 1})
    return Automaton(n_states, 0, finals, tuple(trans))


def path_elements(automaton: Automaton, group: Group) -> set:
    """Brute-force image set: evaluate every accepting path label."""
    return {evaluate_word(w, group).value for w in enumerate_accepting_words(automaton)}


__all__ = [
    "Automaton", "CosetTable", "CosetTableError", "GrowthBoundViolation", "NotAcyclicError",
    "acyclic_membership", "decompose_coset", "dihedral_coset_table", "entry_growth_bound",
    "enumerate_accepting_words", "find_accepting_path", "integer_coset_table", "path_elements",
    "random_acyclic_automaton", "reachable_sets", "split_transitions", "subsetsum_to_automaton",
    "transfer_to_subgroup",
]
