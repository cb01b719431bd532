"""Knapsack and subset-sum instances over any supported group."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from grouppack.groups import (
    Group,
    GroupElement,
    GroupMismatchError,
    element_from_json,
    group_from_json,
)


@dataclass(frozen=True)
class KnapsackInstance:
    """Is ``target`` equal to bases[0]^e_1 ... bases[k-1]^e_k for naturals e_i?"""

    group: Group
    bases: tuple
    target: GroupElement

    def __post_init__(self) -> None:
        object.__setattr__(self, "bases", tuple(self.bases))
        for g in self.bases + (self.target,):
            if g.group != self.group:
                raise GroupMismatchError(f"{g.group.name} element in a {self.group.name} instance")

    @property
    def k(self) -> int:
        return len(self.bases)

    def evaluate(self, exponents: Sequence[int]) -> GroupElement:
        if len(exponents) != self.k:
            raise ValueError(f"expected {self.k} exponents, got {len(exponents)}")
        acc = self.group.identity()
        for g, e in zip(self.bases, exponents):
            acc = acc * g ** e
        return acc

    def is_solution(self, exponents: Sequence[int]) -> bool:
        return self.evaluate(exponents) == self.target

    def to_json(self, kind: str = "kp") -> dict:
        return {"kind": kind, "group": self.group.to_json(),
                "bases": [{"value": g.to_json()} for g in self.bases],
                "target": {"value": self.target.to_json()}}

    @classmethod
    def from_json(cls, data: dict) -> KnapsackInstance:
        group = group_from_json(data["group"])
        return cls(group, tuple(element_from_json(group, g) for g in data["bases"]),
                   element_from_json(group, data.get("target", [])))

    @classmethod
    def from_words(cls, group: Group, words: Sequence[Sequence[int]],
                   target: Sequence[int]) -> KnapsackInstance:
        return cls(group, tuple(group.evaluate(w) for w in words), group.evaluate(target))


def int_exponents_to_nat(instance: KnapsackInstance) -> KnapsackInstance:
    """Integer exponents become natural ones by adding each base's inverse."""
    bases: list = []
    for g in instance.bases:
        bases.extend((g, g.inverse()))
    return KnapsackInstance(instance.group, tuple(bases), instance.target)


def nat_witness_to_int(witness: Sequence[int]) -> tuple:
    return tuple(witness[2 * i] - witness[2 * i + 1] for i in range(len(witness) // 2))


def parse_instance(data: Any) -> KnapsackInstance:
    return KnapsackInstance.from_json(data)
