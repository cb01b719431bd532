"""Knapsack for groups whose co-word problem is context-free.

Given a grammar W for the non-identity words, the words a_1^e_1 ... a_k^e_k
whose image differs from the target form a context-free language M. The
instance is solvable iff some exponent vector lies outside the Parikh image
of M.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from grouppack.cocf.grammar import Grammar, GrammarError, cfg_image, words_up_to
from grouppack.cocf.parikh import parikh_image
from grouppack.cocf.pushdown import grammar_to_pda, pda_intersect, pda_inverse_hom, pda_to_grammar
from grouppack.cocf.semilinear import SemilinearSet, semilinear_complement
from grouppack.groups import Group, evaluate_word, invert_word
from grouppack.rational import Automaton

END = "a"


def exponent_letters(k: int) -> list:
    return [f"a{i + 1}" for i in range(k)]


def word_letters(word: Sequence[int]) -> tuple:
    return tuple(str(int(x)) for x in word)


def build_knapsack_language(w: Grammar, g_words: Sequence[Sequence[int]],
                            target: Sequence[int]) -> Grammar:
    """Grammar for {a_1^e_1 ... a_k^e_k : g_1^e_1 ... g_k^e_k != target}."""
    k = len(g_words)
    letters = exponent_letters(k)
    hom_eval = {x: word_letters(g) for x, g in zip(letters, g_words)}
    hom_eval[END] = word_letters(invert_word(tuple(target)))
    for x, img in hom_eval.items():
        unknown = set(img) - w.terminals
        if unknown:
            raise GrammarError(f"letters {sorted(unknown)} of the image of {x} are not in the grammar")
    pda = pda_intersect(pda_inverse_hom(grammar_to_pda(w), hom_eval), knapsack_filter(k))
    g = pda_to_grammar(pda)
    hom_erase = {x: (x,) for x in letters}
    hom_erase[END] = ()
    return cfg_image(g, hom_erase)


def knapsack_filter(k: int) -> Automaton:
    """DFA for a_1* ... a_k* a; after reading a_j the state is j, so only a_j.. may follow."""
    letters = exponent_letters(k)
    trans = []
    for i in range(k + 1):
        for j in range(max(i, 1), k + 1):
            trans.append((i, (letters[j - 1],), j))
        trans.append((i, (END,), k + 1))
    return Automaton(k + 2, 0, frozenset({k + 1}), tuple(trans))


@dataclass(frozen=True)
class CocfDecision:
    answer: bool
    witness: tuple | None
    parikh: SemilinearSet
    complement: SemilinearSet
    language_size: int = field(default=0)

    def to_json(self) -> dict:
        return {"decision": "yes" if self.answer else "no",
                "witness": list(self.witness) if self.witness is not None else None,
                "parikh_image": self.parikh.to_json(),
                "complement": self.complement.to_json()}


def decide_cocf_knapsack(w: Grammar, g_words: Sequence[Sequence[int]], target: Sequence[int],
                         group: Group | None = None) -> CocfDecision:
    """Solvable iff N^k minus the Parikh image of M is nonempty.

    Any base of the complement is an exponent vector solving the instance;
    when ``group`` is given it is re-checked by evaluating the words.
    """
    k = len(g_words)
    m = build_knapsack_language(w, g_words, target)
    image = parikh_image(m, exponent_letters(k))
    comp = semilinear_complement(image)
    witness = min((c.base for c in comp.components), key=lambda b: (sum(b), b), default=None)
    if witness is not None and group is not None:
        word = [x for g, e in zip(g_words, witness) for x in tuple(g) * e]
        if evaluate_word(word, group) != evaluate_word(tuple(target), group):
            raise AssertionError(f"complement base {witness} does not solve the instance")
    return CocfDecision(witness is not None, witness, image, comp, m.size())


def validate_coword_grammar(w: Grammar, group: Group, max_len: int = 6) -> None:
    """Check that W derives exactly the non-identity words up to ``max_len``."""
    gens = [str(s * i) for i in range(1, group.ngens + 1) for s in (1, -1)]
    if set(w.terminals) - set(gens):
        raise GrammarError(f"terminals {sorted(set(w.terminals) - set(gens))} are not generator letters")
    derived = words_up_to(w, max_len)
    for n in range(max_len + 1):
        for word in itertools.product(gens, repeat=n):
            nonidentity = not evaluate_word([int(x) for x in word], group).is_identity
            if nonidentity != (word in derived):
                kind = "misses" if nonidentity else "wrongly derives"
                raise GrammarError(f"grammar {kind} the word {' '.join(word) or 'ε'}")


def coword_grammar(n: int) -> Grammar:
    """Non-identity words of Z^n: some coordinate has unequal +/- counts.

    For each coordinate i, B_i derives words balanced in letter i with the
    other letters free, and P_i / N_i add a positive / negative excess.
    """
    prods: list = []
    nts = {"S"}
    letters = [(str(i), str(-i)) for i in range(1, n + 1)]
    for i, (pos, neg) in enumerate(letters, start=1):
        b, p, q = f"B{i}", f"P{i}", f"N{i}"
        nts |= {b, p, q, f"S{i}"}
        prods += [(b, ()), (b, (pos, b, neg, b)), (b, (neg, b, pos, b))]
        prods += [(b, (x, b)) for j, pair in enumerate(letters, start=1) if j != i for x in pair]
        prods += [(p, (b, pos, b)), (p, (b, pos, p)), (q, (b, neg, b)), (q, (b, neg, q))]
        prods += [(f"S{i}", (p,)), (f"S{i}", (q,)), ("S", (f"S{i}",))]
    terms = frozenset(x for pair in letters for x in pair)
    return Grammar(frozenset(nts), terms, tuple(prods), "S")


def load_fixture(name: str) -> Grammar:
    """Shipped co-word grammar by name ("z" or "z2")."""
    path = resources.files("grouppack") / "fixtures" / f"{name}.json"
    return Grammar.from_json(json.loads(path.read_text()))
