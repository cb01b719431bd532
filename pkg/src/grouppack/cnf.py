"""CNF formulas: DIMACS parsing, truth tables and random generation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence


class CNFError(ValueError):
    pass


@dataclass(frozen=True)
class CNFFormula:
    n: int
    clauses: tuple  # tuples of nonzero signed variable indices

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if not clauses:
            raise CNFError("a formula needs at least one clause")
        for c in clauses:
            if not c or len(c) > 3:
                raise CNFError(f"clause {c} must have 1 to 3 literals")
            if len(set(c)) != len(c):
                raise CNFError(f"clause {c} repeats a literal")
            if any(l == 0 or abs(l) > self.n for l in c):
                raise CNFError(f"clause {c} names a variable outside 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def assignments(self) -> Iterator[tuple]:
        return itertools.product((False, True), repeat=self.n)

    def is_satisfiable(self) -> bool:
        return any(self.satisfied_by(a) for a in self.assignments())

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CNFFormula:
    n = None
    clauses: list = []
    current: list = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise CNFError(f"bad problem line {line!r}")
            n = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if n is None:
        n = max((abs(l) for c in clauses for l in c), default=0)
    return CNFFormula(n, tuple(clauses))


def all_clauses(n: int) -> list:
    lits = [v for i in range(1, n + 1) for v in (i, -i)]
    return [c for size in (1, 2, 3) for c in itertools.combinations(lits, size)]


def formula_family(max_n: int, max_m: int) -> Iterator[CNFFormula]:
    """Every formula with n <= max_n variables and m <= max_m clauses (ordered)."""
    for n in range(1, max_n + 1):
        clauses = all_clauses(n)
        for m in range(1, max_m + 1):
            for combo in itertools.product(clauses, repeat=m):
                yield CNFFormula(n, combo)


def random_cnf(rng, n: int, m: int) -> CNFFormula:
    clauses = []
    for _ in range(m):
        size = rng.randint(1, min(3, n))
        vars_ = rng.sample(range(1, n + 1), size)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CNFFormula(n, tuple(clauses))
