"""Pushdown automata: grammar conversion, buffered inverse homomorphism,
product with finite automata, and the triple construction back to grammars.

Acceptance is by empty stack in a final state. Transitions pop exactly one
symbol and push at most two.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from grouppack.cocf.grammar import Grammar, binarize, trim
from grouppack.rational import Automaton, split_transitions

BOTTOM = ("bottom",)


@dataclass(frozen=True)
class PDA:
    initial: Hashable
    bottom: Hashable
    finals: frozenset
    alphabet: frozenset
    transitions: tuple  # of (state, letter or None, pop, state, push tuple)

    def __post_init__(self) -> None:
        for t in self.transitions:
            if len(t[4]) > 2:
                raise ValueError("transitions push at most two symbols")


def grammar_to_pda(g: Grammar) -> PDA:
    """Expand/match automaton with a bottom marker, so letters that need no
    stack change can still be simulated after the derivation has finished."""
    g = binarize(g)
    trans = [("start", None, BOTTOM, "main", (g.start, BOTTOM))]
    trans += [("main", None, lhs, "main", rhs) for lhs, rhs in g.productions]
    trans += [("main", a, a, "main", ()) for a in g.terminals]
    trans.append(("main", None, BOTTOM, "end", ()))
    return PDA("start", BOTTOM, frozenset({"end"}), g.terminals, tuple(trans))


def pda_inverse_hom(p: PDA, hom: Mapping[str, Sequence[str]]) -> PDA:
    """PDA for h^-1(L(p)): a letter y loads h(y) into a buffer that is then
    consumed by the simulated letter moves."""
    buffers = {()}
    for word in hom.values():
        word = tuple(word)
        buffers |= {word[i:] for i in range(len(word))}
    states = {t[0] for t in p.transitions} | {t[3] for t in p.transitions} | {p.initial}
    stack_syms = {t[2] for t in p.transitions} | {s for t in p.transitions for s in t[4]}
    trans = []
    for q, a, x, r, push in p.transitions:
        if a is None:
            trans += [((q, buf), None, x, (r, buf), push) for buf in buffers]
        else:
            trans += [((q, buf), None, x, (r, buf[1:]), push) for buf in buffers if buf and buf[0] == a]
    for q in states:
        for y, word in hom.items():
            trans += [((q, ()), y, x, (q, tuple(word)), (x,)) for x in stack_syms]
    return PDA((p.initial, ()), p.bottom, frozenset((f, ()) for f in p.finals),
               frozenset(hom), tuple(trans))


def pda_intersect(p: PDA, a: Automaton) -> PDA:
    """Product with a finite automaton whose labels have length <= 1."""
    a = split_transitions(a)
    letter_moves = defaultdict(list)
    eps_moves = defaultdict(list)
    for s, w, s2 in a.transitions:
        (letter_moves[s] if w else eps_moves[s]).append((w[0] if w else None, s2))
    stack_syms = {t[2] for t in p.transitions} | {x for t in p.transitions for x in t[4]}
    trans = []
    for s in range(a.n_states):
        for q, letter, x, r, push in p.transitions:
            if letter is None:
                trans.append(((q, s), None, x, (r, s), push))
            else:
                trans += [((q, s), letter, x, (r, s2), push)
                          for l2, s2 in letter_moves[s] if l2 == letter]
        qs = {t[0] for t in p.transitions}
        for _, s2 in eps_moves[s]:
            trans += [((q, s), None, x, (q, s2), (x,)) for q in qs for x in stack_syms]
    finals = frozenset((f, s) for f in p.finals for s in a.finals)
    return PDA((p.initial, a.initial), p.bottom, finals, p.alphabet, tuple(trans))


def pda_to_grammar(p: PDA, start: Hashable = "S") -> Grammar:
    """Triple construction restricted to reachable, productive summaries.

    Nonterminal (q, X, r) derives exactly the inputs read while popping X
    from state q and ending in state r.
    """
    by_pop = defaultdict(list)
    for t in p.transitions:
        by_pop[(t[0], t[2])].append(t)

    summaries: set = set()
    ends = defaultdict(set)          # (q, X) -> {r}
    waiting1 = defaultdict(list)     # (r, Y) -> [(q, X)]: push (Y,)
    waiting2 = defaultdict(list)     # (r, Y) -> [(q, X, Z)]: push (Y, Z), Y pending
    waiting_tail = defaultdict(list) # (s, Z) -> [(q, X)]: Y done, Z pending
    reached: set = set()
    pending = deque()
    todo = deque()

    def reach(q: Hashable, x: Hashable) -> None:
        if (q, x) not in reached:
            reached.add((q, x))
            todo.append((q, x))

    def found(q: Hashable, x: Hashable, r: Hashable) -> None:
        if (q, x, r) not in summaries:
            summaries.add((q, x, r))
            ends[(q, x)].add(r)
            pending.append((q, x, r))

    def tail(q: Hashable, x: Hashable, s: Hashable, z: Hashable) -> None:
        waiting_tail[(s, z)].append((q, x))
        reach(s, z)
        for r in list(ends[(s, z)]):
            found(q, x, r)

    reach(p.initial, p.bottom)
    while todo or pending:
        while todo:
            q, x = todo.popleft()
            for _, _, _, r, push in by_pop[(q, x)]:
                if not push:
                    found(q, x, r)
                elif len(push) == 1:
                    waiting1[(r, push[0])].append((q, x))
                    reach(r, push[0])
                    for s in list(ends[(r, push[0])]):
                        found(q, x, s)
                else:
                    waiting2[(r, push[0])].append((q, x, push[1]))
                    reach(r, push[0])
                    for s in list(ends[(r, push[0])]):
                        tail(q, x, s, push[1])
        while pending and not todo:
            r, y, s = pending.popleft()
            for q, x in list(waiting1[(r, y)]):
                found(q, x, s)
            for q, x, z in list(waiting2[(r, y)]):
                tail(q, x, s, z)
            for q, x in list(waiting_tail[(r, y)]):
                found(q, x, s)

    prods = []
    for (q, x, r) in summaries:
        for _, letter, _, r1, push in by_pop[(q, x)]:
            lead = (letter,) if letter is not None else ()
            if not push:
                if r1 == r:
                    prods.append(((q, x, r), lead))
            elif len(push) == 1:
                if (r1, push[0], r) in summaries:
                    prods.append(((q, x, r), lead + ((r1, push[0], r),)))
            else:
                for s in ends[(r1, push[0])]:
                    if (s, push[1], r) in summaries:
                        prods.append(((q, x, r), lead + ((r1, push[0], s), (s, push[1], r))))
    for f in p.finals:
        if (p.initial, p.bottom, f) in summaries:
            prods.append((start, ((p.initial, p.bottom, f),)))
    nts = frozenset(summaries) | {start}
    return trim(Grammar(nts, p.alphabet, tuple(prods), start))


def cfg_inverse_hom(g: Grammar, hom: Mapping[str, Sequence[str]]) -> Grammar:
    return pda_to_grammar(pda_inverse_hom(grammar_to_pda(g), hom))


def cfg_intersect_regular(g: Grammar, a: Automaton) -> Grammar:
    return pda_to_grammar(pda_intersect(grammar_to_pda(g), a))
