"""Exact solving of one linear equation sum c_i x_i = t over the naturals."""

from __future__ import annotations

import heapq
from math import gcd
from typing import Sequence


def _ext_gcd(a: int, b: int) -> tuple:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def integer_solution(coeffs: Sequence[int], target: int) -> list | None:
    """Some x in Z^k with sum c_i x_i = target, or None."""
    g, x = 0, []
    for c in coeffs:
        g2, u, v = _ext_gcd(g, c)
        x = [xi * u for xi in x] + [v]
        g = g2
    if g == 0:
        return [0] * len(coeffs) if target == 0 else None
    if target % g:
        return None
    return [xi * (target // g) for xi in x]


def _mixed_signs(coeffs: list, target: int) -> list | None:
    x = integer_solution(coeffs, target)
    if x is None:
        return None
    p = next(i for i, c in enumerate(coeffs) if c > 0)
    q = next(i for i, c in enumerate(coeffs) if c < 0)
    # a kernel vector that is strictly positive on every coordinate
    kern = [0] * len(coeffs)
    for i, c in enumerate(coeffs):
        if c > 0:
            kern[i] += -coeffs[q]
            kern[q] += c
        else:
            kern[i] += coeffs[p]
            kern[p] += -c
    lam = max(0, max(-(xi // ki) for xi, ki in zip(x, kern)))
    return [xi + lam * ki for xi, ki in zip(x, kern)]


def _single_sign(coeffs: list, target: int) -> list | None:
    """All coefficients positive: shortest paths over residues mod the least one."""
    if target < 0:
        return None
    mi = min(range(len(coeffs)), key=lambda i: coeffs[i])
    m = coeffs[mi]
    dist = {0: 0}
    pred: dict = {0: None}
    heap = [(0, 0)]
    done = set()
    while heap:
        d, r = heapq.heappop(heap)
        if r in done:
            continue
        done.add(r)
        for i, c in enumerate(coeffs):
            nd, nr = d + c, (r + c) % m
            if nr not in dist or nd < dist[nr]:
                dist[nr] = nd
                pred[nr] = (r, i)
                heapq.heappush(heap, (nd, nr))
    r = target % m
    if r not in dist or dist[r] > target:
        return None
    x = [0] * len(coeffs)
    x[mi] += (target - dist[r]) // m
    while pred[r] is not None:
        r, i = pred[r]
        x[i] += 1
    return x


def solve_nat_1d(coeffs: Sequence[int], target: int) -> tuple | None:
    """A witness x in N^k of sum c_i x_i = target, or None when none exists."""
    coeffs = [int(c) for c in coeffs]
    live = [i for i, c in enumerate(coeffs) if c]
    sub = [coeffs[i] for i in live]
    if not sub:
        return tuple([0] * len(coeffs)) if target == 0 else None
    if any(c > 0 for c in sub) and any(c < 0 for c in sub):
        y = _mixed_signs(sub, target)
    elif sub[0] > 0:
        y = _single_sign(sub, target)
    else:
        y = _single_sign([-c for c in sub], -target)
    if y is None:
        return None
    x = [0] * len(coeffs)
    for i, v in zip(live, y):
        x[i] = v
    assert sum(c * v for c, v in zip(coeffs, x)) == target and min(x) >= 0
    return tuple(x)


def gcd_all(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def solve_nat_2d(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> tuple | None:
    """A witness x in N^k of sum x_i v_i = target for v_i in Z^2, k <= 3.

    With two independent vectors v_i, v_j and the remaining exponent s free,
    Cramer's rule makes x_i, x_j affine in s over the determinant D, so the
    conditions are an interval for s plus a congruence mod |D|; scanning one
    period past the lower end of the interval is enough.
    """
    vecs = [tuple(int(a) for a in v) for v in vectors]
    t = tuple(int(a) for a in target)
    k = len(vecs)
    pair = next(((i, j) for i in range(k) for j in range(i + 1, k)
                 if vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0]), None)
    if pair is None:
        return _solve_rank_one(vecs, t)
    if k > 3:
        raise ValueError("rank-two systems are supported for at most three vectors")
    i, j = pair
    (a, c), (b, d) = vecs[i], vecs[j]
    det = a * d - b * c
    free = [f for f in range(k) if f not in pair]

    def pair_for(s: int) -> tuple | None:
        r = t
        if free:
            r = (t[0] - s * vecs[free[0]][0], t[1] - s * vecs[free[0]][1])
        ui, uj = d * r[0] - b * r[1], -c * r[0] + a * r[1]
        if ui % det or uj % det or ui // det < 0 or uj // det < 0:
            return None
        return ui // det, uj // det

    def assemble(s: int, xy: tuple) -> tuple:
        x = [0] * k
        x[i], x[j] = xy
        if free:
            x[free[0]] = s
        return tuple(x)

    if not free:
        xy = pair_for(0)
        return None if xy is None else assemble(0, xy)
    f = vecs[free[0]]
    lo, hi = 0, None
    # x_i(s) * det = u - s * w for u, w below; the sign of det fixes the direction
    for u, w in ((d * t[0] - b * t[1], d * f[0] - b * f[1]),
                 (-c * t[0] + a * t[1], -c * f[0] + a * f[1])):
        u, w = (u, w) if det > 0 else (-u, -w)
        if w > 0:
            hi = u // w if hi is None else min(hi, u // w)
        elif w < 0:
            lo = max(lo, -(u // -w))
        elif u < 0:
            return None
    stop = lo + abs(det) - 1 if hi is None else hi
    for s in range(lo, stop + 1):
        xy = pair_for(s)
        if xy is not None:
            return assemble(s, xy)
    return None


def _solve_rank_one(vecs: list, t: tuple) -> tuple | None:
    nonzero = next((v for v in vecs if any(v)), None)
    if nonzero is None:
        return tuple([0] * len(vecs)) if not any(t) else None
    g = gcd(nonzero[0], nonzero[1])
    u = (nonzero[0] // g, nonzero[1] // g)
    if t[0] * u[1] - t[1] * u[0]:
        return None
    axis = 0 if u[0] else 1
    if t[axis] % u[axis]:
        return None
    coeffs = [v[axis] // u[axis] for v in vecs]
    return solve_nat_1d(coeffs, t[axis] // u[axis])
