"""Semilinear subsets of N^k: union, sum, star, intersection and complement.

Intersections and complements reduce to linear Diophantine systems over N,
solved by Contejean-Devie completion, which returns the minimal solutions
(a Hilbert basis for the homogeneous part).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

Vec = tuple


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: int, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def leq(u: Vec, v: Vec) -> bool:
    return all(a <= b for a, b in zip(u, v))


@lru_cache(maxsize=200_000)
def in_monoid(v: Vec, periods: tuple) -> bool:
    """Is v a natural combination of ``periods`` (all nonzero, nonnegative)?"""
    if not any(v):
        return True
    if not periods or min(v) < 0:
        return False
    p, rest = periods[0], periods[1:]
    cap = min((a // b for a, b in zip(v, p) if b), default=0)
    for c in range(cap, -1, -1):
        if in_monoid(vsub(v, vscale(c, p)), rest):
            return True
    return False


@dataclass(frozen=True)
class LinearSet:
    base: Vec
    periods: tuple

    def __post_init__(self) -> None:
        base = tuple(int(b) for b in self.base)
        periods = tuple(sorted({tuple(int(x) for x in p) for p in self.periods if any(p)}))
        if min(base, default=0) < 0 or any(min(p) < 0 for p in periods):
            raise ValueError("linear sets live in N^k")
        if any(len(p) != len(base) for p in periods):
            raise ValueError("period dimension mismatch")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "periods", periods)

    @property
    def k(self) -> int:
        return len(self.base)

    def contains(self, v: Sequence[int]) -> bool:
        d = vsub(tuple(v), self.base)
        return min(d, default=0) >= 0 and in_monoid(d, self.periods)

    def reduced(self) -> LinearSet:
        """Drop periods that are natural combinations of the others."""
        periods = list(self.periods)
        i = 0
        while i < len(periods):
            others = tuple(periods[:i] + periods[i + 1:])
            if in_monoid(periods[i], others):
                periods.pop(i)
            else:
                i += 1
        return LinearSet(self.base, tuple(periods))

    def subset_of(self, other: LinearSet) -> bool:
        """Sufficient test: base inside ``other`` and every period in its period monoid."""
        return other.contains(self.base) and all(in_monoid(p, other.periods) for p in self.periods)

    def points(self, bound: int) -> Iterator[Vec]:
        """Members with every coordinate <= bound."""
        seen = set()

        def rec(v: Vec, i: int) -> Iterator[Vec]:
            if i == len(self.periods):
                if v not in seen:
                    seen.add(v)
                    yield v
                return
            p = self.periods[i]
            while max(v, default=0) <= bound:
                yield from rec(v, i + 1)
                v = vadd(v, p)

        if max(self.base, default=0) <= bound:
            yield from rec(self.base, 0)

    def to_json(self) -> dict:
        return {"base": list(self.base), "periods": [list(p) for p in self.periods]}


@dataclass(frozen=True)
class SemilinearSet:
    k: int
    components: tuple

    def __post_init__(self) -> None:
        comps = tuple(dict.fromkeys(self.components))
        for c in comps:
            if c.k != self.k:
                raise ValueError(f"component of dimension {c.k} in a dimension-{self.k} set")
        object.__setattr__(self, "components", comps)

    @classmethod
    def empty(cls, k: int) -> SemilinearSet:
        return cls(k, ())

    @classmethod
    def point(cls, v: Sequence[int]) -> SemilinearSet:
        return cls(len(v), (LinearSet(tuple(v), ()),))

    @classmethod
    def everything(cls, k: int) -> SemilinearSet:
        return cls(k, (LinearSet((0,) * k, tuple(unit(k, i) for i in range(k))),))

    def is_empty(self) -> bool:
        return not self.components

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.k:
            raise ValueError(f"dimension mismatch: {len(v)} vs {self.k}")
        return any(c.contains(v) for c in self.components)

    def points(self, bound: int) -> set:
        return {p for c in self.components for p in c.points(bound)}

    def to_json(self) -> dict:
        return {"k": self.k, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> SemilinearSet:
        return cls(int(data["k"]), tuple(LinearSet(tuple(c["base"]), tuple(map(tuple, c["periods"])))
                                         for c in data["components"]))


def unit(k: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(k))


def semilinear_member(s: SemilinearSet, v: Sequence[int]) -> bool:
    return s.contains(tuple(v))


# ---------------------------------------------------------------------------
# algebra


def simplify(s: SemilinearSet) -> SemilinearSet:
    comps = {c.reduced() for c in s.components}
    # (b, P) u (b + p, P + {p}) = (b, P + {p}), found by hashing the smaller partner
    work = sorted(comps, key=lambda c: (len(c.periods), c.base))
    while work:
        c = work.pop()
        if c not in comps:
            continue
        for p in c.periods:
            b = vsub(c.base, p)
            if min(b, default=0) < 0:
                continue
            a = LinearSet(b, tuple(q for q in c.periods if q != p))
            if a in comps:
                comps -= {a, c}
                merged = LinearSet(b, c.periods).reduced()
                comps.add(merged)
                work.append(merged)
                break
    keep: list = []
    for c in sorted(comps, key=lambda c: (-len(c.periods), sum(c.base), c.base)):
        if not any(leq(d.base, c.base) and c.subset_of(d) for d in keep):
            keep.append(c)
    keep.sort(key=lambda c: (c.base, c.periods))
    return SemilinearSet(s.k, tuple(keep))


def union(*sets: SemilinearSet) -> SemilinearSet:
    k = sets[0].k
    return simplify(SemilinearSet(k, tuple(c for s in sets for c in s.components)))


def minkowski(a: SemilinearSet, b: SemilinearSet) -> SemilinearSet:
    comps = tuple(LinearSet(vadd(x.base, y.base), x.periods + y.periods)
                  for x in a.components for y in b.components)
    return simplify(SemilinearSet(a.k, comps))


def star(s: SemilinearSet) -> SemilinearSet:
    """(b + P*)* = {0} u (b + (P u {b})*), and (A u B)* = A* + B*."""
    result = SemilinearSet.point((0,) * s.k)
    for c in s.components:
        if any(c.base):
            part = SemilinearSet(s.k, (LinearSet((0,) * s.k, ()),
                                       LinearSet(c.base, c.periods + (c.base,))))
        else:
            part = SemilinearSet(s.k, (LinearSet(c.base, c.periods),))
        result = minkowski(result, part)
    return result


# ---------------------------------------------------------------------------
# linear Diophantine systems over N


def solve_nat(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple:
    """Minimal solutions of A y = c over N.

    Returns ``(inhomogeneous, homogeneous)``: every solution is one
    inhomogeneous minimal solution plus a natural combination of the
    homogeneous basis. The search runs on [A | -c] with the extra
    coordinate held at most 1.
    """
    n = len(rows[0]) if rows else 0
    ext = [list(r) + [-c] for r, c in zip(rows, rhs)]
    sols = contejean_devie(ext, n + 1, cap_last=1)
    inhom = [s[:n] for s in sols if s[n] == 1]
    hom = [s[:n] for s in sols if s[n] == 0]
    return inhom, hom


def contejean_devie(rows: Sequence[Sequence[int]], n: int, cap_last: int | None = None,
                    stop_when_last: bool = False) -> list:
    """All minimal nonzero y in N^n with A y = 0, by Contejean-Devie completion.

    With ``stop_when_last`` the search returns as soon as one solution with a
    positive last coordinate appears.
    """
    cols = [tuple(r[j] for r in rows) for j in range(n)]
    found: list = []
    frontier = {}
    for j in range(n):
        v = unit(n, j)
        frontier[v] = cols[j]
    while frontier:
        nxt: dict = {}
        for v, av in frontier.items():
            if not any(av):
                if not any(leq(b, v) for b in found):
                    found.append(v)
                    if stop_when_last and v[-1]:
                        return [v]
                continue
        for v, av in frontier.items():
            if not any(av):
                continue
            for j in range(n):
                if sum(x * y for x, y in zip(av, cols[j])) >= 0:
                    continue
                if cap_last is not None and j == n - 1 and v[j] >= cap_last:
                    continue
                w = v[:j] + (v[j] + 1,) + v[j + 1:]
                if w in nxt or any(leq(b, w) for b in found):
                    continue
                nxt[w] = vadd(av, cols[j])
        frontier = nxt
    return found


def intersect_linear(a: LinearSet, b: LinearSet) -> SemilinearSet:
    """a.base + P l = b.base + Q m over N, projected through l."""
    k = a.k
    p, q = list(a.periods), list(b.periods)
    rows = [[pi[d] for pi in p] + [-qi[d] for qi in q] for d in range(k)]
    rhs = [b.base[d] - a.base[d] for d in range(k)]
    if not p and not q:
        return SemilinearSet(k, (a,)) if a.base == b.base else SemilinearSet.empty(k)
    inhom, hom = solve_nat(rows, rhs)

    def image(lam: Sequence[int]) -> Vec:
        v = (0,) * k
        for c, pi in zip(lam, p):
            v = vadd(v, vscale(c, pi))
        return v

    periods = tuple(image(h[:len(p)]) for h in hom)
    comps = tuple(LinearSet(vadd(a.base, image(m[:len(p)])), periods) for m in inhom)
    return simplify(SemilinearSet(k, comps))


# ---------------------------------------------------------------------------
# complement


def _kernel_vector(cols: Sequence[Vec]) -> list | None:
    """A nonzero integer vector z with sum z_i cols_i = 0, or None if independent."""
    n = len(cols)
    if n == 0:
        return None
    k = len(cols[0])
    m = [[Fraction(cols[j][i]) for j in range(n)] for i in range(k)]
    pivots: list = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, k) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(k):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    f = free[0]
    z = [Fraction(0)] * n
    z[f] = Fraction(1)
    for row, c in enumerate(pivots):
        z[c] = -m[row][f]
    den = 1
    for x in z:
        den = den * x.denominator // gcd(den, x.denominator)
    zi = [int(x * den) for x in z]
    g = 0
    for x in zi:
        g = gcd(g, x)
    return [x // g for x in zi]


def _minimal_circuit(periods: Sequence[Vec]) -> list | None:
    """Kernel vector supported on a minimal dependent subset, or None."""
    for size in range(2, len(periods) + 1):
        for idx in itertools.combinations(range(len(periods)), size):
            z = _kernel_vector([periods[i] for i in idx])
            if z is not None and all(z):
                full = [0] * len(periods)
                for i, v in zip(idx, z):
                    full[i] = v
                return full
    return None


def split_independent(ls: LinearSet) -> list:
    """Linear sets with linearly independent periods whose union is ``ls``.

    With a circuit sum_{C+} z_p p = sum_{C-} z_q q, any representation can be
    rewritten until some p in C+ has coefficient below z_p, so
    b + P* = U_{p in C+} U_{c < z_p} (b + c p) + (P - {p})*.
    """
    z = _minimal_circuit(list(ls.periods))
    if z is None:
        return [ls]
    if all(v <= 0 for v in z if v):
        z = [-v for v in z]
    out: list = []
    for i, zi in enumerate(z):
        if zi <= 0:
            continue
        p = ls.periods[i]
        rest = ls.periods[:i] + ls.periods[i + 1:]
        for c in range(zi):
            out.extend(split_independent(LinearSet(vadd(ls.base, vscale(c, p)), rest)))
    return out


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(n) if m[0][j])


def _adjugate(m: Sequence[Sequence[int]]) -> list:
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(m) if r != i]
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return adj


# constraints: ("eq", a, c): a.x = c; ("ge", a, c): a.x >= c; ("cong", a, c, m): a.x = c mod m


def independent_constraints(ls: LinearSet) -> list:
    """Constraints on x in N^k equivalent to membership in ``ls`` (independent periods)."""
    k, b = ls.k, ls.base
    r = len(ls.periods)
    if r == 0:
        return [("eq", unit(k, i), b[i]) for i in range(k)]
    pm = [[p[i] for p in ls.periods] for i in range(k)]  # k x r
    for rows in itertools.combinations(range(k), r):
        q = [pm[i] for i in rows]
        d = _det(q)
        if d:
            break
    else:
        raise ValueError("periods are not independent")
    adj = _adjugate(q)
    sign = 1 if d > 0 else -1
    cons = []

    def lift(coeffs_on_rows: Sequence[int]) -> Vec:
        v = [0] * k
        for i, c in zip(rows, coeffs_on_rows):
            v[i] += c
        return tuple(v)

    def dot(a: Vec, x: Vec) -> int:
        return sum(u * w for u, w in zip(a, x))

    # lambda = adj (x - b)_R / d
    lam_rows = [lift(adj[j]) for j in range(r)]
    for i in range(k):
        if i in rows:
            continue
        # d x_i - sum_j P_ij (adj (x - b)_R)_j = d b_i
        a = [0] * k
        a[i] += d
        for j in range(r):
            for col, val in enumerate(lam_rows[j]):
                a[col] -= pm[i][j] * val
        cons.append(("eq", tuple(a), dot(tuple(a), b)))
    for j in range(r):
        a = lam_rows[j]
        if abs(d) > 1:
            cons.append(("cong", a, dot(a, b) % abs(d), abs(d)))
        cons.append(("ge", vscale(sign, a), sign * dot(a, b)))
    return cons


def negate(con: tuple) -> list:
    kind = con[0]
    if kind == "eq":
        _, a, c = con
        return [("ge", vscale(-1, a), -c + 1), ("ge", a, c + 1)]
    if kind == "ge":
        _, a, c = con
        return [("ge", vscale(-1, a), -c + 1)]
    _, a, c, m = con
    return [("cong", a, r, m) for r in range(m) if r != c % m]


def normalize_atom(atom: tuple) -> tuple | bool:
    """Canonical form of one constraint on x in N^k, or True/False when decided."""
    kind, a = atom[0], tuple(atom[1])
    if kind == "cong":
        m = atom[3]
        a, c = tuple(x % m for x in a), atom[2] % m
        g = m
        for x in a:
            g = gcd(g, x)
        if c % g:
            return False
        a, c, m = tuple(x // g for x in a), c // g, m // g
        return True if m == 1 else ("cong", a, c, m)
    c = atom[2]
    if not any(a):
        return 0 >= c if kind == "ge" else c == 0
    g = 0
    for x in a:
        g = gcd(g, x)
    if kind == "eq":
        if c % g:
            return False
        a, c = tuple(x // g for x in a), c // g
        if next(x for x in a if x) < 0:
            a, c = vscale(-1, a), -c
        if (min(a) >= 0 and c < 0) or (max(a) <= 0 and c > 0):
            return False
        return ("eq", a, c)
    a, c = tuple(x // g for x in a), -((-c) // g)
    if min(a) >= 0 and c <= 0:
        return True
    if max(a) <= 0 and c > 0:
        return False
    return ("ge", a, c)


def conjoin(conj: frozenset, atom: tuple) -> frozenset | None:
    """Add an atom, or None on a contradiction visible between atom pairs."""
    kind, a = atom[0], atom[1]
    for other in conj:
        if kind == "ge" and other[0] == "ge" and other[1] == vscale(-1, a) and atom[2] + other[2] > 0:
            return None
        if kind == "cong" and other[0] == "cong" and other[1] == a and other[3] == atom[3] \
                and other[2] != atom[2]:
            return None
        if kind == "ge" and other[0] == "ge" and other[1] == a:
            if other[2] >= atom[2]:
                return conj
            return (conj - {other}) | {atom}
    return conj | {atom}


def _solve_exact(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list | None:
    """Unique rational solution of a square system, or None if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(c)] for r, c in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col] / m[col][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _polyhedron_rows(atoms: Iterable[tuple], k: int) -> tuple:
    """(equalities, inequalities) over R^k, inequalities including x >= 0."""
    eqs = [(t[1], t[2]) for t in atoms if t[0] == "eq"]
    ges = [(t[1], t[2]) for t in atoms if t[0] == "ge"] + [(unit(k, i), 0) for i in range(k)]
    return eqs, ges


def _vertices(eqs: list, ges: list, k: int) -> list:
    rows = eqs + ges
    out = set()
    for idx in itertools.combinations(range(len(rows)), k):
        sol = _solve_exact([rows[i][0] for i in idx], [rows[i][1] for i in idx])
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(r, sol)) == c for r, c in eqs) and \
                all(sum(a * x for a, x in zip(r, sol)) >= c for r, c in ges):
            out.add(tuple(sol))
    return sorted(out)


def _extreme_rays(eqs: list, ges: list, congs: list, k: int) -> list:
    """Extreme rays of the recession cone, scaled into the congruence lattice."""
    if k == 1:
        candidates = [(Fraction(1),)]
    else:
        candidates = []
        rows = [r for r, _ in eqs] + [r for r, _ in ges]
        for idx in itertools.combinations(range(len(rows)), k - 1):
            z = _kernel_vector([tuple(rows[i][j] for i in idx) for j in range(k)])
            if z is None:
                continue
            candidates += [tuple(Fraction(x) for x in z), tuple(Fraction(-x) for x in z)]
    rays = set()
    for d in candidates:
        if not any(d):
            continue
        if all(sum(a * x for a, x in zip(r, d)) == 0 for r, _ in eqs) and \
                all(sum(a * x for a, x in zip(r, d)) >= 0 for r, _ in ges):
            ints = [int(x) for x in d]
            g = 0
            for x in ints:
                g = gcd(g, x)
            v = tuple(x // g for x in ints)
            t = 1
            for a, m in congs:
                r = sum(x * y for x, y in zip(a, v)) % m
                step = m // gcd(m, r) if r else 1
                t = t * step // gcd(t, step)
            rays.add(vscale(t, v))
    return sorted(rays)


MAX_BOX_POINTS = 4_000_000


def _conjunction_parts(atoms: frozenset, k: int) -> tuple:
    """(irreducible solutions F, rays G) with solution set F + G*."""
    import numpy as np

    atoms = sorted(atoms)
    eqs, ges = _polyhedron_rows(atoms, k)
    congs = [(t[1], t[3]) for t in atoms if t[0] == "cong"]
    verts = _vertices(eqs, ges, k)
    if not verts:
        return [], []
    rays = _extreme_rays(eqs, ges, congs, k)
    # at most k independent rays carry the fractional part of a solution
    bound = [int(max(v[i] for v in verts)) + sum(sorted((r[i] for r in rays), reverse=True)[:k])
             for i in range(k)]
    size = 1
    for b in bound:
        size *= b + 1
    if size > MAX_BOX_POINTS:
        raise OverflowError(f"enumeration box of {size} points is too large")
    grid = np.indices([b + 1 for b in bound], dtype=np.int64)
    mask = np.ones(grid.shape[1:], dtype=bool)
    for t in atoms:
        val = sum(int(a) * grid[i] for i, a in enumerate(t[1]) if a)
        if isinstance(val, int):
            val = np.full(mask.shape, val, dtype=np.int64)
        if t[0] == "eq":
            mask &= val == t[2]
        elif t[0] == "ge":
            mask &= val >= t[2]
        else:
            mask &= (val - t[2]) % t[3] == 0
    reducible = np.zeros_like(mask)
    for r in rays:
        dst = tuple(slice(ri, None) for ri in r)
        src = tuple(slice(0, b + 1 - ri) for b, ri in zip(bound, r))
        reducible[dst] |= mask[src]
    base = np.argwhere(mask & ~reducible)
    return [tuple(int(x) for x in row) for row in base], rays


@lru_cache(maxsize=20_000)
def conjunction_set(atoms: frozenset, k: int) -> SemilinearSet:
    """{x in N^k satisfying every atom}.

    The solutions form F + G* with G the extreme rays of the recession cone
    (scaled into the congruence lattice) and F the solutions from which no
    ray can be subtracted. Writing the recession part of a solution over at
    most k independent rays shows F lies within the vertex bound plus the
    ray sum, so F is found by enumerating that box.
    """
    if not atoms:
        return SemilinearSet.everything(k)
    base, rays = _conjunction_parts(atoms, k)
    return simplify(SemilinearSet(k, tuple(LinearSet(b, tuple(rays)) for b in base)))


@lru_cache(maxsize=20_000)
def conjunction_satisfiable(atoms: frozenset, k: int) -> bool:
    if not atoms:
        return True
    base, _ = _conjunction_parts(atoms, k)
    return bool(base)


def piece_atoms(piece: LinearSet) -> frozenset | None:
    """Membership in a linear set with independent periods as one conjunction
    (None when the set is empty)."""
    conj: frozenset | None = frozenset()
    for con in independent_constraints(piece):
        atom = normalize_atom(con)
        if atom is False:
            return None
        if atom is not True:
            conj = conjoin(conj, atom)
            if conj is None:
                return None
    return conj


def _negated_atoms(piece: LinearSet) -> list | None:
    """Atoms whose disjunction is the complement of ``piece``; None if the piece is empty."""
    alts: list = []
    for con in independent_constraints(piece):
        for neg in negate(con):
            atom = normalize_atom(neg)
            if atom is True:
                return None
            if atom is not False:
                alts.append(atom)
    return alts


def _prune(dnf: Iterable[frozenset], k: int) -> list:
    """Drop unsatisfiable conjunctions and those implied by a weaker one."""
    uniq = sorted(set(dnf), key=lambda c: (len(c), sorted(c)))
    keep: list = []
    for c in uniq:
        if any(d <= c for d in keep):
            continue
        if conjunction_satisfiable(c, k):
            keep.append(c)
    return keep


def complement_atoms(s: SemilinearSet) -> list:
    """N^k minus ``s`` as a pruned disjunction of atom conjunctions.

    Pieces are removed one at a time; a conjunction that does not meet the
    piece is kept whole instead of being split along the negated atoms.
    """
    k = s.k
    dnf = [frozenset()]
    pieces = []
    for comp in s.components:
        for piece in split_independent(comp):
            pos, alts = piece_atoms(piece), _negated_atoms(piece)
            if pos is not None and alts is not None:
                pieces.append((pos, alts))
    pieces.sort(key=lambda pa: len(pa[1]))
    for pos, alts in pieces:
        new = []
        for conj in dnf:
            meet: frozenset | None = conj
            for atom in pos:
                meet = conjoin(meet, atom)
                if meet is None:
                    break
            if meet is None or not conjunction_satisfiable(meet, k):
                new.append(conj)
                continue
            for atom in alts:
                c = conjoin(conj, atom)
                if c is not None:
                    new.append(c)
        dnf = _prune(new, k)
        if not dnf:
            break
    return dnf


def complement_linear(ls: LinearSet) -> SemilinearSet:
    """N^k minus a linear set."""
    return semilinear_complement(SemilinearSet(ls.k, (ls,)))


def semilinear_complement(s: SemilinearSet) -> SemilinearSet:
    """N^k minus ``s``.

    Each component splits into linear sets with independent periods, each of
    those is an exact conjunction of equations, inequalities and congruences,
    and the complement is the disjunctive normal form of their negations.
    Each surviving conjunction becomes a semilinear set through one
    Hilbert-basis computation.
    """
    parts = [conjunction_set(c, s.k) for c in complement_atoms(s)]
    return union(*parts) if parts else SemilinearSet.empty(s.k)


def complement_is_empty(s: SemilinearSet) -> bool:
    return not complement_atoms(s)


def intersect(s: SemilinearSet, t: SemilinearSet) -> SemilinearSet:
    comps: list = []
    for a in s.components:
        for b in t.components:
            comps.extend(intersect_linear(a, b).components)
    return simplify(SemilinearSet(s.k, tuple(comps)))


def box_points(s: SemilinearSet, bound: int) -> set:
    return s.points(bound)


def box(k: int, bound: int) -> set:
    return set(itertools.product(range(bound + 1), repeat=k))


def from_vectors(vectors: Iterable[Vec], k: int) -> SemilinearSet:
    return SemilinearSet(k, tuple(LinearSet(tuple(v), ()) for v in vectors))
