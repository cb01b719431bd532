"""Exact decision procedures and reduction compilers for subset sum and
knapsack over finitely generated groups."""

from grouppack.alpha_subsetsum import cnf_to_subsetsum
from grouppack.cocf.pipeline import decide_cocf_knapsack, load_fixture
from grouppack.expressions import expression_to_knapsack, polynomial_to_system, system_to_expression
from grouppack.extension import GKPInstance, decide_gkp, dihedral_oracle, integer_oracle
from grouppack.groups import (
    DInf,
    GAlpha,
    GroupElement,
    GroupError,
    GroupMismatchError,
    HeisZ,
    IntMatrix,
    Product,
    QuadInt,
    UT,
    Zn,
    evaluate_word,
    group_from_json,
)
from grouppack.heisenberg import decide_knapsack_h3
from grouppack.knapsack import KnapsackInstance
from grouppack.rational import Automaton, acyclic_membership

__all__ = [
    "Automaton",
    "DInf",
    "GAlpha",
    "GKPInstance",
    "GroupElement",
    "GroupError",
    "GroupMismatchError",
    "HeisZ",
    "IntMatrix",
    "KnapsackInstance",
    "Product",
    "QuadInt",
    "UT",
    "Zn",
    "acyclic_membership",
    "cnf_to_subsetsum",
    "decide_cocf_knapsack",
    "decide_gkp",
    "decide_knapsack_h3",
    "dihedral_oracle",
    "evaluate_word",
    "expression_to_knapsack",
    "group_from_json",
    "integer_oracle",
    "load_fixture",
    "polynomial_to_system",
    "system_to_expression",
]

__version__ = "0.1.0"
