"""Command line front end.

Every subcommand prints one JSON document. Exit codes: 0 yes, 1 no,
2 unknown or no-within-box, 3 and above for errors.
"""

from __future__ import annotations

import argparse
import functools
import json
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from grouppack import io
from grouppack.alpha_subsetsum import cnf_to_subsetsum
from grouppack.cnf import CNFError, parse_dimacs, random_cnf
from grouppack.cocf.grammar import Grammar, GrammarError
from grouppack.cocf.pipeline import decide_cocf_knapsack, validate_coword_grammar
from grouppack.expressions import (
    BlockError,
    Polynomial,
    blocks_to_four_subgroups,
    expression_to_knapsack,
    polynomial_to_system,
    system_to_expression,
)
from grouppack.extension import (
    GKPInstance,
    PreconditionError,
    decide_gkp,
    dihedral_oracle,
    integer_oracle,
    random_dihedral_gkp,
)
from grouppack.groups import GroupError, HeisZ, group_from_json
from grouppack.heisenberg import DEFAULT_MODULI, decide_knapsack_h3, random_heis_instance, verify_decision
from grouppack.knapsack import KnapsackInstance
from grouppack.oracles import (
    BudgetExceeded,
    OracleBudget,
    bounded_membership,
    brute_force_knapsack,
    brute_force_subsetsum,
)
from grouppack.rational import (
    Automaton,
    GrowthBoundViolation,
    NotAcyclicError,
    find_accepting_path,
    random_acyclic_automaton,
    subsetsum_to_automaton,
)

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2, 3
_CODES = {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN, "no-within-box": EXIT_UNKNOWN}


def _emit(result: dict) -> int:
    print(json.dumps(result, sort_keys=True))
    return _CODES.get(result.get("decision"), EXIT_YES)


def _json_arg(value: str) -> Any:
    """A JSON file path, or inline JSON, or a bare name."""
    path = Path(value)
    if path.suffix == ".json" or path.exists():
        return io.read_json(path)
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return value


def _instance(path: str, expected: Sequence[str]) -> Any:
    return io.load_instance(io.read_json(path), expected)


# ---------------------------------------------------------------------------
# subcommands


def cmd_ssp(args: argparse.Namespace) -> int:
    raw = io.read_json(args.instance)
    inst = io.load_instance(raw, ("ssp", "kp"))
    words = raw.get("bases", [])
    target = raw.get("target", [])
    as_words = all(isinstance(w, list) for w in words) and isinstance(target, list)
    if args.method == "dp" and as_words:
        automaton, x = subsetsum_to_automaton(words, target)
        labels = find_accepting_path(automaton, x, inst.group, check_growth=args.check_growth)
        witness = None if labels is None else _subset_from_labels(words, labels)
        method = "dp"
    else:
        witness = brute_force_subsetsum(inst, OracleBudget(subset_cap=args.cap))
        method = "mitm"
    if witness is not None and not inst.is_solution(witness):
        raise AssertionError("subset-sum witness fails group evaluation")
    return _emit({"decision": "yes" if witness is not None else "no",
                  "witness": list(witness) if witness is not None else None,
                  "method": method})


def _subset_from_labels(words: list, labels: list) -> tuple:
    """0/1 choice over ``words`` whose concatenation spells the accepted path."""
    spelled = tuple(x for w in labels for x in w)
    words = [tuple(w) for w in words]

    @functools.lru_cache(maxsize=None)
    def rec(i: int, pos: int) -> tuple | None:
        if i == len(words):
            return () if pos == len(spelled) else None
        w = words[i]
        if w and spelled[pos:pos + len(w)] == w:
            sub = rec(i + 1, pos + len(w))
            if sub is not None:
                return (1,) + sub
        sub = rec(i + 1, pos)
        return None if sub is None else (0,) + sub

    out = rec(0, 0)
    if out is None:
        raise AssertionError("accepted path does not split into the subset-sum words")
    return out


def cmd_knapsack_h3(args: argparse.Namespace) -> int:
    inst = _instance(args.instance, ("kp", "ssp"))
    if not isinstance(inst.group, HeisZ):
        raise GroupError(f"knapsack-h3 needs a heis_ze group, got {inst.group.name}")
    moduli = tuple(int(m) for m in args.moduli.split(",")) if args.moduli else DEFAULT_MODULI
    decision = decide_knapsack_h3(inst, args.budget, moduli)
    if not verify_decision(inst, decision):
        raise AssertionError("decision failed independent verification")
    return _emit(decision.to_json())


def cmd_gkp(args: argparse.Namespace) -> int:
    inst = _instance(args.instance, ("gkp", "kp"))
    if isinstance(inst, KnapsackInstance):
        inst = GKPInstance.from_knapsack(inst)
    if args.group == "dinf":
        oracle = dihedral_oracle()
    elif args.group == "z":
        oracle = integer_oracle(args.index)
    else:
        raise GroupError(f"no extension oracle for group {args.group!r} (use dinf or z)")
    if inst.group != oracle.group:
        raise GroupError(f"instance group {inst.group.name} does not match --group {args.group}")
    return _emit(decide_gkp(inst, oracle).to_json())


def cmd_aratmp(args: argparse.Namespace) -> int:
    if args.instance:
        inst = _instance(args.instance, ("aratmp",))
    else:
        if not (args.group and args.automaton and args.word is not None):
            raise io.InputError("aratmp needs --instance or all of --group, --automaton, --word")
        inst = io.AratmpInstance(group_from_json(_json_arg(args.group)),
                                 Automaton.from_json(_json_arg(args.automaton)),
                                 tuple(_json_arg(args.word)))
    labels = find_accepting_path(inst.automaton, inst.word, inst.group,
                                 check_growth=args.check_growth)
    return _emit({"decision": "yes" if labels is not None else "no",
                  "path_labels": None if labels is None else [list(w) for w in labels]})


def cmd_cocf(args: argparse.Namespace) -> int:
    grammar = Grammar.from_json(io.read_json(args.grammar))
    inst = _instance(args.instance, ("cocf",))
    if inst.group is not None and args.validate > 0:
        validate_coword_grammar(grammar, inst.group, args.validate)
    return _emit(decide_cocf_knapsack(grammar, inst.words, inst.target, inst.group).to_json())


def cmd_reduce_3cnf(args: argparse.Namespace) -> int:
    formula = parse_dimacs(io.read_text(args.file))
    print(json.dumps(cnf_to_subsetsum(formula).to_json(), sort_keys=True))
    return EXIT_YES


def _poly_system(args: argparse.Namespace):
    return polynomial_to_system(Polynomial.parse(io.read_json(args.poly)), args.a)


def cmd_encode_poly(args: argparse.Namespace) -> int:
    system = _poly_system(args)
    expr, target = system_to_expression(system)
    knapsack, variables = expression_to_knapsack(expr, target)
    print(json.dumps({"system": system.to_json(),
                      "expression": io.ExpressionInstance(expr, target).to_json(),
                      "knapsack": knapsack.to_json("kp"),
                      "knapsack_variables": list(variables)}, sort_keys=True))
    return EXIT_YES


def cmd_emit_4subgroups(args: argparse.Namespace) -> int:
    if args.expression:
        inst = _instance(args.expression, ("expression",))
        expr, target = inst.expression, inst.target
    elif args.poly:
        expr, target = system_to_expression(_poly_system(args))
    else:
        raise io.InputError("emit-4subgroups needs --expression or --poly with --a")
    print(json.dumps(blocks_to_four_subgroups(expr, target).to_json(), sort_keys=True))
    return EXIT_YES


def cmd_oracle(args: argparse.Namespace) -> int:
    budget = OracleBudget(box=args.box, subset_cap=args.cap)
    if args.problem == "ssp":
        inst = _instance(args.instance, ("ssp", "kp"))
        w = brute_force_subsetsum(inst, budget)
        # the 0/1 search space is finite, so an empty search is a proof
        return _emit({"decision": "yes" if w is not None else "no",
                      "witness": None if w is None else list(w), "exhaustive": True})
    if args.problem == "kp":
        inst = _instance(args.instance, ("kp", "ssp"))
        w = brute_force_knapsack(inst, budget)
    else:
        inst = _instance(args.instance, ("gkp", "kp"))
        if isinstance(inst, KnapsackInstance):
            inst = GKPInstance.from_knapsack(inst)
        w = _gkp_box_search(inst, args.box)
    return _emit({"decision": "yes" if w is not None else "no-within-box",
                  "witness": None if w is None else list(w), "box": args.box})


def _gkp_box_search(inst: GKPInstance, box: int) -> tuple | None:
    from grouppack.extension import gkp_normalize
    return bounded_membership(gkp_normalize(inst), 0, box)


def cmd_generate(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    k = args.k
    if args.kind == "heis":
        doc = random_heis_instance(rng, k, e=1).to_json("kp")
    elif args.kind == "gkp":
        doc = random_dihedral_gkp(rng, k).to_json()
    elif args.kind == "cnf":
        doc = io.cnf_to_json(random_cnf(rng, 3, 2))
    elif args.kind == "aratmp":
        from grouppack.groups import UT
        automaton = random_acyclic_automaton(rng, 6, [1, -1, 2, -2])
        word = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 4))]
        doc = io.AratmpInstance(UT(3), automaton, tuple(word)).to_json()
    else:
        n = 1 if args.kind == "cocf-z" else 2
        letters = [s * i for i in range(1, n + 1) for s in (1, -1)]
        word = lambda: tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))  # noqa: E731
        from grouppack.groups import Zn
        doc = io.CocfInstance(tuple(word() for _ in range(k)), word(), Zn(n)).to_json()
    print(json.dumps(doc, sort_keys=True))
    return EXIT_YES


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grouppack", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ssp", help="subset sum in a group")
    s.add_argument("--instance", required=True)
    s.add_argument("--method", choices=("dp", "mitm"), default="dp",
                   help="dp: acyclic-automaton reachability; mitm: meet in the middle")
    s.add_argument("--cap", type=int, default=1 << 22, help="subset cap for mitm")
    s.add_argument("--no-growth-check", dest="check_growth", action="store_false")
    s.set_defaults(func=cmd_ssp)

    s = sub.add_parser("knapsack-h3", help="knapsack over H3(Z) x Z^e")
    s.add_argument("--instance", required=True)
    s.add_argument("--budget", type=int, default=10)
    s.add_argument("--moduli", default="")
    s.set_defaults(func=cmd_knapsack_h3)

    s = sub.add_parser("gkp", help="generalized knapsack through a finite-index subgroup")
    s.add_argument("--group", default="dinf")
    s.add_argument("--index", type=int, default=2, help="index n of nZ when --group z")
    s.add_argument("--instance", required=True)
    s.set_defaults(func=cmd_gkp)

    s = sub.add_parser("aratmp", help="acyclic rational subset membership")
    s.add_argument("--instance")
    s.add_argument("--group")
    s.add_argument("--automaton")
    s.add_argument("--word")
    s.add_argument("--no-growth-check", dest="check_growth", action="store_false")
    s.set_defaults(func=cmd_aratmp)

    s = sub.add_parser("cocf", help="knapsack from a co-word grammar")
    s.add_argument("--grammar", required=True)
    s.add_argument("--instance", required=True)
    s.add_argument("--validate", type=int, default=4,
                   help="check the grammar on words up to this length when the instance names a group")
    s.set_defaults(func=cmd_cocf)

    s = sub.add_parser("reduce-3cnf", help="3CNF (DIMACS) to subset sum over G_alpha")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce_3cnf)

    s = sub.add_parser("encode-poly", help="polynomial equation to system, expression and knapsack")
    s.add_argument("--poly", required=True)
    s.add_argument("--a", type=int, required=True)
    s.set_defaults(func=cmd_encode_poly)

    s = sub.add_parser("emit-4subgroups", help="four commuting-block subgroups for a product membership")
    s.add_argument("--expression")
    s.add_argument("--poly")
    s.add_argument("--a", type=int, default=0)
    s.set_defaults(func=cmd_emit_4subgroups)

    s = sub.add_parser("oracle", help="brute-force reference oracles")
    s.add_argument("problem", choices=("ssp", "kp", "gkp"))
    s.add_argument("--instance", required=True)
    s.add_argument("--box", type=int, default=6)
    s.add_argument("--cap", "--budget", dest="cap", type=int, default=1 << 22)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("generate", help="seeded random instances")
    s.add_argument("kind", choices=("heis", "gkp", "cnf", "aratmp", "cocf-z", "cocf-z2"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k", type=int, default=3)
    s.set_defaults(func=cmd_generate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args)
    except io.InputError as exc:
        print(f"grouppack: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (GroupError, GrammarError, CNFError, BlockError, PreconditionError, NotAcyclicError,
            ValueError, KeyError, TypeError) as exc:
        print(f"grouppack: invalid input: {exc}", file=sys.stderr)
        return 4
    except (BudgetExceeded, GrowthBoundViolation, OverflowError) as exc:
        print(f"grouppack: {exc}", file=sys.stderr)
        return 5
    except AssertionError as exc:
        print(f"grouppack: internal check failed: {exc}", file=sys.stderr)
        return 6


cli_run = main


if __name__ == "__main__":
    sys.exit(main())
