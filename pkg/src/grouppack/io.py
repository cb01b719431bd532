"""Instance files: one JSON schema with a "kind" discriminator."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from grouppack.cnf import CNFFormula, parse_dimacs
from grouppack.expressions import ExponentialExpression, PolyEquationSystem
from grouppack.extension import GKPInstance
from grouppack.groups import Group, GroupElement, element_from_json, group_from_json
from grouppack.knapsack import KnapsackInstance
from grouppack.rational import Automaton

KINDS = ("ssp", "kp", "gkp", "aratmp", "cocf", "expression", "system", "cnf")


class InputError(ValueError):
    """Unreadable or malformed input; the CLI maps it to exit code 3."""


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def read_json(path: str | Path) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


@dataclass(frozen=True)
class AratmpInstance:
    group: Group
    automaton: Automaton
    word: tuple

    def to_json(self) -> dict:
        return {"kind": "aratmp", "group": self.group.to_json(),
                "automaton": self.automaton.to_json(), "word": list(self.word)}

    @classmethod
    def from_json(cls, data: dict) -> AratmpInstance:
        return cls(group_from_json(data["group"]), Automaton.from_json(data["automaton"]),
                   tuple(int(x) for x in data.get("word", ())))


@dataclass(frozen=True)
class CocfInstance:
    """Knapsack over a group given by a co-word grammar; ``group`` is optional and
    only used to re-check witnesses and validate the grammar."""

    words: tuple
    target: tuple
    group: Group | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": "cocf", "words": [list(w) for w in self.words],
                     "target": list(self.target)}
        if self.group is not None:
            out["group"] = self.group.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> CocfInstance:
        group = group_from_json(data["group"]) if "group" in data else None
        return cls(tuple(tuple(int(x) for x in w) for w in data["words"]),
                   tuple(int(x) for x in data.get("target", ())), group)


@dataclass(frozen=True)
class ExpressionInstance:
    expression: ExponentialExpression
    target: GroupElement

    def to_json(self) -> dict:
        out = self.expression.to_json()
        out["target"] = {"value": self.target.to_json()}
        return out

    @classmethod
    def from_json(cls, data: dict) -> ExpressionInstance:
        expr = ExponentialExpression.from_json(data)
        return cls(expr, element_from_json(expr.group, data.get("target", [])))


def cnf_to_json(formula: CNFFormula) -> dict:
    return {"kind": "cnf", "n": formula.n, "clauses": [list(c) for c in formula.clauses]}


def cnf_from_json(data: dict) -> CNFFormula:
    if "dimacs" in data:
        return parse_dimacs(data["dimacs"])
    return CNFFormula(int(data["n"]), tuple(tuple(c) for c in data["clauses"]))


def load_instance(data: Any, expected: Sequence[str] | None = None) -> Any:
    """Parse an instance document into the matching object."""
    if not isinstance(data, dict):
        raise InputError("an instance must be a JSON object")
    kind = data.get("kind")
    if kind is None and expected and len(expected) == 1:
        kind = expected[0]
    if kind not in KINDS:
        raise InputError(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")
    if expected and kind not in expected:
        raise InputError(f"expected a {' or '.join(expected)} instance, got {kind!r}")
    try:
        if kind in ("ssp", "kp"):
            return KnapsackInstance.from_json(data)
        if kind == "gkp":
            return GKPInstance.from_json(data)
        if kind == "aratmp":
            return AratmpInstance.from_json(data)
        if kind == "cocf":
            return CocfInstance.from_json(data)
        if kind == "expression":
            return ExpressionInstance.from_json(data)
        if kind == "system":
            return PolyEquationSystem.from_json(data)
        return cnf_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed {kind} instance: {exc}") from exc


def instance_to_json(obj: Any, kind: str | None = None) -> dict:
    if isinstance(obj, KnapsackInstance):
        return obj.to_json(kind or "kp")
    if isinstance(obj, CNFFormula):
        return cnf_to_json(obj)
    return obj.to_json()


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)
