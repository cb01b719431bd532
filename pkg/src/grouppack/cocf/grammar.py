"""Context-free grammars with hashable nonterminals and string terminals."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Sequence


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset
    terminals: frozenset
    productions: tuple  # of (lhs, rhs tuple)
    start: Hashable

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        prods = tuple(dict.fromkeys((a, tuple(r)) for a, r in self.productions))
        object.__setattr__(self, "productions", prods)
        if self.nonterminals & self.terminals:
            raise GrammarError(f"symbols both terminal and nonterminal: {self.nonterminals & self.terminals}")
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        symbols = self.nonterminals | self.terminals
        for lhs, rhs in prods:
            if lhs not in self.nonterminals:
                raise GrammarError(f"left side {lhs!r} is not a nonterminal")
            for s in rhs:
                if s not in symbols:
                    raise GrammarError(f"unknown symbol {s!r} in {lhs!r} -> {rhs!r}")

    def by_lhs(self) -> dict:
        out: dict = defaultdict(list)
        for lhs, rhs in self.productions:
            out[lhs].append(rhs)
        return out

    def is_terminal(self, s: Any) -> bool:
        return s in self.terminals

    def size(self) -> int:
        return sum(1 + len(r) for _, r in self.productions)

    def to_json(self) -> dict:
        names = {n: _nt_name(n) for n in self.nonterminals}
        if len(set(names.values())) != len(names):
            names = {n: f"N{i}" for i, n in enumerate(sorted(self.nonterminals, key=repr))}
        return {"nonterminals": sorted(names.values()), "terminals": sorted(self.terminals),
                "start": names[self.start],
                "productions": [[names[a], [names.get(s, s) for s in r]]
                                for a, r in self.productions]}

    @classmethod
    def from_json(cls, data: Mapping) -> Grammar:
        return cls(frozenset(data["nonterminals"]), frozenset(str(t) for t in data["terminals"]),
                   tuple((a, tuple(str(s) for s in r)) for a, r in data["productions"]),
                   data["start"])


def _nt_name(n: Any) -> str:
    return n if isinstance(n, str) else repr(n)


def productive_nonterminals(g: Grammar) -> set:
    productive: set = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in productive and all(s in g.terminals or s in productive for s in rhs):
                productive.add(lhs)
                changed = True
    return productive


def trim(g: Grammar) -> Grammar:
    """Drop unproductive and unreachable nonterminals (the start symbol is kept)."""
    productive = productive_nonterminals(g)
    prods = [(a, r) for a, r in g.productions
             if a in productive and all(s in g.terminals or s in productive for s in r)]
    by = defaultdict(list)
    for a, r in prods:
        by[a].append(r)
    reach = {g.start}
    stack = [g.start]
    while stack:
        a = stack.pop()
        for r in by[a]:
            for s in r:
                if s in g.nonterminals and s not in reach:
                    reach.add(s)
                    stack.append(s)
    prods = [(a, r) for a, r in prods if a in reach]
    return Grammar(frozenset(reach), g.terminals, tuple(prods), g.start)


def is_empty(g: Grammar) -> bool:
    return g.start not in productive_nonterminals(g)


def binarize(g: Grammar) -> Grammar:
    """Equivalent grammar whose right sides have length at most two."""
    nts = set(g.nonterminals)
    prods = []
    for idx, (lhs, rhs) in enumerate(g.productions):
        if len(rhs) <= 2:
            prods.append((lhs, rhs))
            continue
        prev = lhs
        for pos in range(len(rhs) - 2):
            fresh = ("bin", idx, pos)
            nts.add(fresh)
            prods.append((prev, (rhs[pos], fresh)))
            prev = fresh
        prods.append((prev, rhs[-2:]))
    return Grammar(frozenset(nts), g.terminals, tuple(prods), g.start)


def words_up_to(g: Grammar, max_len: int) -> set:
    """All words of L(g) with length <= max_len, as tuples of terminals."""
    lang: dict = {n: set() for n in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            acc = {()}
            for s in rhs:
                options = {(s,)} if s in g.terminals else lang[s]
                acc = {u + v for u in acc for v in options if len(u) + len(v) <= max_len}
                if not acc:
                    break
            new = acc - lang[lhs]
            if new:
                lang[lhs] |= new
                changed = True
    return lang[g.start]


def cfg_image(g: Grammar, hom: Mapping[str, Sequence[str]]) -> Grammar:
    """Grammar for h(L(g)), replacing each terminal by its image word."""
    missing = g.terminals - set(hom)
    if missing:
        raise GrammarError(f"homomorphism undefined on {sorted(missing)}")
    terms = frozenset(itertools.chain.from_iterable(hom[t] for t in g.terminals))
    prods = []
    for lhs, rhs in g.productions:
        new: list = []
        for s in rhs:
            new.extend(hom[s] if s in g.terminals else (s,))
        prods.append((lhs, tuple(new)))
    clash = terms & g.nonterminals
    if clash:
        raise GrammarError(f"image letters collide with nonterminals: {sorted(clash)}")
    return Grammar(g.nonterminals, terms, tuple(prods), g.start)


def union_grammar(grammars: Iterable[Grammar], start: Hashable = "S") -> Grammar:
    """Union with nonterminals tagged by component index."""
    nts = {start}
    terms: set = set()
    prods = []
    for i, g in enumerate(grammars):
        tag = {n: (i, n) for n in g.nonterminals}
        nts |= set(tag.values())
        terms |= g.terminals
        prods.append((start, (tag[g.start],)))
        prods += [(tag[a], tuple(tag.get(s, s) if s in tag else s for s in r))
                  for a, r in g.productions]
    return Grammar(frozenset(nts), frozenset(terms), tuple(prods), start)
