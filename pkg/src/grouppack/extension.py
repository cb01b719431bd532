"""Knapsack over G from a knapsack decider for a finite-index subgroup H.

A generalized instance f_0 g_1^n_1 f_1 ... g_k^n_k f_k = 1 is purified into
finitely many instances whose constants and bases (except the last constant)
lie in H; each carries an affine map back to the original exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from grouppack.groups import DInf, Group, GroupElement, GroupMismatchError, Zn, element_from_json, group_from_json
from grouppack.knapsack import KnapsackInstance
from grouppack.linear import solve_nat_1d


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class GKPInstance:
    group: Group
    fs: tuple  # f_0 .. f_k
    gs: tuple  # g_1 .. g_k

    def __post_init__(self) -> None:
        object.__setattr__(self, "fs", tuple(self.fs))
        object.__setattr__(self, "gs", tuple(self.gs))
        if len(self.fs) != len(self.gs) + 1:
            raise ValueError("a generalized instance needs k + 1 constants for k bases")
        for x in self.fs + self.gs:
            if x.group != self.group:
                raise GroupMismatchError(f"{x.group.name} element in a {self.group.name} instance")

    @property
    def k(self) -> int:
        return len(self.gs)

    def evaluate(self, exponents: Sequence[int]) -> GroupElement:
        acc = self.fs[0]
        for g, f, n in zip(self.gs, self.fs[1:], exponents):
            acc = acc * g ** n * f
        return acc

    def is_solution(self, exponents: Sequence[int]) -> bool:
        return len(exponents) == self.k and min(exponents, default=0) >= 0 \
            and self.evaluate(exponents).is_identity

    def purity(self, oracle: ExtensionOracle) -> int:
        j = 0
        while j < self.k and oracle.in_subgroup(self.fs[j]) and oracle.in_subgroup(self.gs[j]):
            j += 1
        return j

    def impurity(self, oracle: ExtensionOracle) -> int:
        return self.k - self.purity(oracle)

    def to_json(self) -> dict:
        return {"kind": "gkp", "group": self.group.to_json(),
                "f": [{"value": x.to_json()} for x in self.fs],
                "g": [{"value": x.to_json()} for x in self.gs]}

    @classmethod
    def from_json(cls, data: dict) -> GKPInstance:
        group = group_from_json(data["group"])
        return cls(group, tuple(element_from_json(group, x) for x in data["f"]),
                   tuple(element_from_json(group, x) for x in data["g"]))

    @classmethod
    def from_knapsack(cls, instance: KnapsackInstance) -> GKPInstance:
        ident = instance.group.identity()
        return cls(instance.group, (instance.target.inverse(),) + (ident,) * instance.k,
                   instance.bases)


@dataclass(frozen=True)
class ExtensionOracle:
    """Coset data for H <= G plus an exact natural-exponent knapsack decider for H.

    ``decompose(g)`` returns ``(h, r)`` with g = h * r, h in H, r in
    ``representatives``; ``to_subgroup`` maps an element of H (inside G) to
    the group ``subgroup`` the decider works in.
    """

    group: Group
    representatives: tuple
    decompose: Callable[[GroupElement], tuple]
    subgroup: Group
    to_subgroup: Callable[[GroupElement], GroupElement]
    decide_subgroup: Callable[[KnapsackInstance], Any]

    def rho(self, g: GroupElement) -> GroupElement:
        return self.decompose(g)[1]

    def in_subgroup(self, g: GroupElement) -> bool:
        return self.rho(g).is_identity


def dihedral_oracle() -> ExtensionOracle:
    """D_inf with H = {(n, 0)} = Z and representatives (0,0), (0,1)."""
    g = DInf()
    z = Zn(1)
    reps = (g.identity(), g.generator(2))

    def decompose(x: GroupElement) -> tuple:
        n, flip = x.value
        return g.elem((n, 0)), reps[flip]

    def to_z(x: GroupElement) -> GroupElement:
        if x.value[1]:
            raise PreconditionError(f"{x} is not in H")
        return z.elem((x.value[0],))

    return ExtensionOracle(g, reps, decompose, z, to_z, decide_z_knapsack)


def integer_oracle(n: int) -> ExtensionOracle:
    """Z with H = nZ (identified with Z by division) and representatives 0..n-1."""
    if n < 1:
        raise ValueError("index must be positive")
    z = Zn(1)
    reps = tuple(z.elem((i,)) for i in range(n))

    def decompose(x: GroupElement) -> tuple:
        v = x.value[0]
        return z.elem((v - v % n,)), reps[v % n]

    def to_z(x: GroupElement) -> GroupElement:
        if x.value[0] % n:
            raise PreconditionError(f"{x} is not in {n}Z")
        return z.elem((x.value[0] // n,))

    return ExtensionOracle(z, reps, decompose, z, to_z, decide_z_knapsack)


def decide_z_knapsack(instance: KnapsackInstance) -> tuple | None:
    """Exact knapsack over Z^1: one linear equation over N."""
    return solve_nat_1d([g.value[0] for g in instance.bases], instance.target.value[0])


# ---------------------------------------------------------------------------


def gkp_normalize(instance: GKPInstance) -> KnapsackInstance:
    """Move every interior constant left by conjugation, working from the right."""
    fs = list(instance.fs)
    gs = list(instance.gs)
    for i in range(instance.k, 0, -1):
        f = fs[i]
        fs[i - 1] = fs[i - 1] * f
        gs[i - 1] = gs[i - 1].conjugate_by(f)
        fs[i] = instance.group.identity()
    return KnapsackInstance(instance.group, tuple(gs), fs[0].inverse())


def find_period(r: GroupElement, g: GroupElement, oracle: ExtensionOracle) -> tuple:
    """Least m, then least l >= 1, with rho(r g^m) = rho(r g^(m+l))."""
    seen: dict = {}
    x = r
    i = 0
    while True:
        key = oracle.rho(x)
        if key in seen:
            return seen[key], i - seen[key]
        seen[key] = i
        x = key * g
        i += 1


def move_right(g1: GroupElement, g2: GroupElement, oracle: ExtensionOracle) -> tuple:
    """(h1, h2, r) with g1 g2^t = h1 h2^t r for all t >= 0."""
    h1, r = oracle.decompose(g1)
    if oracle.rho(g1 * g2) != r:
        raise PreconditionError("move_right needs rho(g1 g2) = rho(g1)")
    h2, r2 = oracle.decompose(r * g2)
    assert r2 == r
    return h1, h2, r


@dataclass(frozen=True)
class PureInstance:
    """A pure instance and, per original exponent, (index or None, multiplier, offset):
    n_orig = offset + multiplier * n_new[index], or just offset when index is None."""

    instance: GKPInstance
    var_map: tuple

    def lift(self, exponents: Sequence[int]) -> tuple:
        return tuple(off if idx is None else off + mult * exponents[idx]
                     for idx, mult, off in self.var_map)


def _compose(outer: tuple, inner: tuple) -> tuple:
    """outer maps original -> mid; inner maps mid -> new."""
    out = []
    for idx, mult, off in outer:
        if idx is None:
            out.append((None, 1, off))
            continue
        idx2, mult2, off2 = inner[idx]
        if idx2 is None:
            out.append((None, 1, off + mult * off2))
        else:
            out.append((idx2, mult * mult2, off + mult * off2))
    return tuple(out)


def purify_step(instance: GKPInstance, oracle: ExtensionOracle) -> list:
    """One split at the leftmost impure position: list of (instance, map to the parent)."""
    j = instance.purity(oracle)
    fs, gs = instance.fs, instance.gs
    g = gs[j]
    h, r = oracle.decompose(fs[j])
    m, ell = find_period(r, g, oracle)
    h1, h2, r_tail = move_right(r * g ** m, g ** ell, oracle)
    for t in range(4):
        assert r * g ** (m + t * ell) == h1 * h2 ** t * r_tail
    out = []
    ident = tuple((i, 1, 0) for i in range(instance.k))
    for s in range(m):
        new_fs = fs[:j] + (fs[j] * g ** s * fs[j + 1],) + fs[j + 2:]
        new_gs = gs[:j] + gs[j + 1:]
        var_map = tuple((i if i < j else i - 1, 1, 0) if i != j else (None, 1, s)
                        for i in range(instance.k))
        out.append((GKPInstance(instance.group, new_fs, new_gs), var_map))
    for s in range(ell):
        new_fs = fs[:j] + (h * h1, r_tail * g ** s * fs[j + 1]) + fs[j + 2:]
        new_gs = gs[:j] + (h2,) + gs[j + 1:]
        var_map = ident[:j] + ((j, ell, m + s),) + ident[j + 1:]
        out.append((GKPInstance(instance.group, new_fs, new_gs), var_map))
    return out


def purify(instance: GKPInstance, oracle: ExtensionOracle,
           trace: list | None = None) -> list:
    """Pure instances whose lifted solution sets cover the solutions of ``instance``.

    ``trace``, when given, collects (parent impurity, child impurity) pairs.
    """
    ident = tuple((i, 1, 0) for i in range(instance.k))
    work = [(instance, ident)]
    done = []
    while work:
        inst, var_map = work.pop()
        imp = inst.impurity(oracle)
        if imp == 0:
            done.append(PureInstance(inst, var_map))
            continue
        for child, child_map in purify_step(inst, oracle):
            if trace is not None:
                trace.append((imp, child.impurity(oracle)))
            work.append((child, _compose(var_map, child_map)))
    return done[::-1]


@dataclass(frozen=True)
class GKPDecision:
    answer: bool
    witness: tuple | None
    leaves: int

    def to_json(self) -> dict:
        return {"decision": "yes" if self.answer else "no",
                "witness": None if self.witness is None else list(self.witness),
                "pure_instances": self.leaves}


def decide_gkp(instance: GKPInstance, oracle: ExtensionOracle) -> GKPDecision:
    leaves = purify(instance, oracle)
    for leaf in leaves:
        inst = leaf.instance
        if not oracle.in_subgroup(inst.fs[-1]):
            continue
        kp = gkp_normalize(inst)
        sub = KnapsackInstance(oracle.subgroup, tuple(oracle.to_subgroup(b) for b in kp.bases),
                               oracle.to_subgroup(kp.target))
        w = oracle.decide_subgroup(sub)
        if w is None:
            continue
        witness = leaf.lift(w)
        if not instance.is_solution(witness):
            raise AssertionError(f"lifted witness {witness} does not solve the instance")
        return GKPDecision(True, witness, len(leaves))
    return GKPDecision(False, None, len(leaves))


def decide_knapsack_extension(instance: KnapsackInstance, oracle: ExtensionOracle) -> GKPDecision:
    return decide_gkp(GKPInstance.from_knapsack(instance), oracle)


def dihedral_gkp_exact(instance: GKPInstance) -> tuple | None:
    """Independent exact decision over D_inf by parity patterns.

    A reflection base contributes g^n = g^(n mod 2); translations contribute
    a signed multiple of their shift, leaving one linear equation over N.
    """
    refl = [i for i, g in enumerate(instance.gs) if g.value[1]]
    for bits in range(1 << len(refl)):
        parity = {i: (bits >> p) & 1 for p, i in enumerate(refl)}
        const, flip = instance.fs[0].value
        coeffs = [0] * instance.k
        for i, (g, f) in enumerate(zip(instance.gs, instance.fs[1:])):
            sign = -1 if flip else 1
            if i in parity:
                if parity[i]:
                    const += sign * g.value[0]
                    flip ^= 1
            else:
                coeffs[i] = sign * g.value[0]
            sign = -1 if flip else 1
            const += sign * f.value[0]
            flip ^= f.value[1]
        if flip:
            continue
        sol = solve_nat_1d([coeffs[i] for i in range(instance.k) if i not in parity], -const)
        if sol is None:
            continue
        it = iter(sol)
        witness = tuple(parity[i] if i in parity else next(it) for i in range(instance.k))
        assert instance.is_solution(witness)
        return witness
    return None


def random_dihedral_gkp(rng, k: int, spread: int = 3) -> GKPInstance:
    g = DInf()

    def elem() -> GroupElement:
        return g.elem((rng.randint(-spread, spread), rng.randint(0, 1)))

    return GKPInstance(g, tuple(elem() for _ in range(k + 1)), tuple(elem() for _ in range(k)))
