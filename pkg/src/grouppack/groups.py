"""Exact arithmetic for the concrete groups used throughout the package.

Every group is an immutable descriptor object; elements are
:class:`GroupElement` values pairing a descriptor with a hashable payload.
All arithmetic is over Python integers, so nothing ever overflows.

Generating sets (the input convention for words):

=============  ==========================================================
``ut`` d       elementary matrices I + E[i][j], j > i, ordered by (j - i, i)
``heis_ze`` e  (1,0,0), (0,1,0), (0,0,1), then the unit vectors of Z^e
``galpha``     g_alpha = [[1+sqrt2, 0], [0, 1]], h = [[1, 1], [0, 1]]
``dinf``       t = (1, 0) (translation), s = (0, 1) (reflection)
``z`` n        unit vectors
``product``    the generators of each factor in turn, embedded
=============  ==========================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any, Iterable, Sequence


class GroupError(Exception):
    """Base class for group-level failures."""


class GroupMismatchError(GroupError):
    """Raised when combining elements of different groups."""


class WordError(GroupError):
    """Raised for a generator index that does not exist in the group."""


Word = tuple  # tuple of nonzero signed generator indices


def invert_word(word: Sequence[int]) -> tuple:
    """Formal inverse: reverse the word and invert every letter."""
    return tuple(-a for a in reversed(word))


def _check_word(word: Sequence[int]) -> tuple:
    w = tuple(word)
    for a in w:
        if not isinstance(a, int) or isinstance(a, bool) or a == 0:
            raise WordError(f"invalid letter {a!r} in word")
    return w


# ---------------------------------------------------------------------------
# Z[sqrt 2]


@total_ordering
@dataclass(frozen=True)
class QuadInt:
    """The real number ``p + q*sqrt(2)`` with integer ``p``, ``q``."""

    p: int = 0
    q: int = 0

    def __add__(self, other: QuadInt) -> QuadInt:
        return QuadInt(self.p + other.p, self.q + other.q)

    def __sub__(self, other: QuadInt) -> QuadInt:
        return QuadInt(self.p - other.p, self.q - other.q)

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.p, -self.q)

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(self.p * other, self.q * other)
        return QuadInt(self.p * other.p + 2 * self.q * other.q,
                       self.p * other.q + self.q * other.p)

    __rmul__ = __mul__

    def conjugate(self) -> QuadInt:
        return QuadInt(self.p, -self.q)

    def norm(self) -> int:
        return self.p * self.p - 2 * self.q * self.q

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def sign(self) -> int:
        p, q = self.p, self.q
        if p >= 0 and q >= 0:
            return 0 if p == 0 and q == 0 else 1
        if p <= 0 and q <= 0:
            return -1
        # mixed signs: compare p^2 with 2 q^2
        d = p * p - 2 * q * q
        s = (d > 0) - (d < 0)
        return s if p > 0 else -s

    def unit_inverse(self) -> QuadInt:
        """Inverse of a unit of Z[sqrt 2] (norm +-1)."""
        n = self.norm()
        if n not in (1, -1):
            raise GroupError(f"{self} is not a unit of Z[sqrt 2]")
        c = self.conjugate()
        return c if n == 1 else -c

    def __lt__(self, other: QuadInt) -> bool:
        return (self - other).sign() < 0

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result, base = QuadInt(1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self) -> str:
        return f"QuadInt({self.p}, {self.q})"


ALPHA = QuadInt(1, 1)


def quad_compare(x: QuadInt, y: QuadInt) -> int:
    """-1, 0 or 1 as the real value of ``x`` is below, equal to or above ``y``."""
    return (x - y).sign()


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix; ``unitriangular`` is tracked alongside the rows."""

    rows: tuple
    unitriangular: bool = field(default=None, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise GroupError("IntMatrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)
        if self.unitriangular is None:
            object.__setattr__(self, "unitriangular", _is_unitriangular(rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, d: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), True)

    @classmethod
    def heisenberg(cls, a: int, b: int, c: int) -> IntMatrix:
        return cls(((1, a, c), (0, 1, b), (0, 0, 1)), True)

    def to_heisenberg(self) -> tuple:
        if self.dim != 3 or not _is_unitriangular(self.rows):
            raise GroupError("not an element of H3(Z)")
        return (self.rows[0][1], self.rows[1][2], self.rows[0][2])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        d = self.dim
        if other.dim != d:
            raise GroupError("dimension mismatch")
        a, b = self.rows, other.rows
        if self.unitriangular and other.unitriangular:
            rows = tuple(
                tuple(sum(a[i][l] * b[l][j] for l in range(i, j + 1)) if j >= i else 0
                      for j in range(d))
                for i in range(d)
            )
            return IntMatrix(rows, True)
        rows = tuple(tuple(sum(a[i][l] * b[l][j] for l in range(d)) for j in range(d))
                     for i in range(d))
        return IntMatrix(rows, _is_unitriangular(rows))

    def unitriangular_inverse(self) -> IntMatrix:
        if not self.unitriangular:
            raise GroupError("only unitriangular matrices are inverted exactly")
        d, m = self.dim, self.rows
        inv = [[int(i == j) for j in range(d)] for i in range(d)]
        # back substitution on M X = I, column by column
        for j in range(d):
            for i in range(j - 1, -1, -1):
                inv[i][j] = -sum(m[i][l] * inv[l][j] for l in range(i + 1, j + 1))
        return IntMatrix(tuple(map(tuple, inv)), True)

    def norm(self) -> int:
        return sum(abs(v) for r in self.rows for v in r)


def _is_unitriangular(rows: tuple) -> bool:
    d = len(rows)
    return all(rows[i][j] == (1 if i == j else 0) for i in range(d) for j in range(i + 1))


def ut_norm(m: IntMatrix) -> int:
    """Sum of absolute values of all entries."""
    return m.norm()


@dataclass(frozen=True)
class QuadMatrix:
    """2x2 matrix [[a, b], [c, d]] over Z[sqrt 2]."""

    a: QuadInt
    b: QuadInt
    c: QuadInt
    d: QuadInt

    def __matmul__(self, o: QuadMatrix) -> QuadMatrix:
        return QuadMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def det(self) -> QuadInt:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> QuadMatrix:
        k = self.det().unit_inverse()
        return QuadMatrix(self.d * k, -self.b * k, -self.c * k, self.a * k)

    @classmethod
    def shear(cls, y: QuadInt) -> QuadMatrix:
        one, zero = QuadInt(1, 0), QuadInt(0, 0)
        return cls(one, y, zero, one)


# ---------------------------------------------------------------------------
# groups and elements


@dataclass(frozen=True)
class GroupElement:
    group: "Group"
    value: Any

    def _same(self, other: GroupElement) -> None:
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatchError(
                f"cannot combine elements of {self.group} and "
                f"{getattr(other, 'group', type(other).__name__)}")

    def __mul__(self, other: GroupElement) -> GroupElement:
        self._same(other)
        return GroupElement(self.group, self.group._mul(self.value, other.value))

    def inverse(self) -> GroupElement:
        return GroupElement(self.group, self.group._inv(self.value))

    def __pow__(self, n: int) -> GroupElement:
        if n < 0:
            return GroupElement(self.group, self.group._pow(self.group._inv(self.value), -n))
        return GroupElement(self.group, self.group._pow(self.value, n))

    def conjugate_by(self, f: GroupElement) -> GroupElement:
        """``f^-1 * self * f``."""
        return f.inverse() * self * f

    def commutes_with(self, other: GroupElement) -> bool:
        return self * other == other * self

    @property
    def is_identity(self) -> bool:
        return self.value == self.group._identity()

    def to_json(self) -> Any:
        return self.group.value_to_json(self.value)

    def __repr__(self) -> str:
        return f"<{self.group.name} {self.value!r}>"


class Group:
    """Common machinery; subclasses supply payload arithmetic."""

    name = "group"

    # payload level -------------------------------------------------------
    def _identity(self) -> Any:
        raise NotImplementedError

    def _mul(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def _inv(self, x: Any) -> Any:
        raise NotImplementedError

    def _gen(self, i: int) -> Any:
        raise NotImplementedError

    def _pow(self, x: Any, n: int) -> Any:
        if n < 0:
            x, n = self._inv(x), -n
        result, base = self._identity(), x
        while n:
            if n & 1:
                result = self._mul(result, base)
            n >>= 1
            if n:
                base = self._mul(base, base)
        return result

    def _check(self, value: Any) -> Any:
        return value

    # element level -------------------------------------------------------
    @property
    def ngens(self) -> int:
        raise NotImplementedError

    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity())

    def elem(self, value: Any) -> GroupElement:
        return GroupElement(self, self._check(value))

    def generator(self, i: int) -> GroupElement:
        if not 1 <= abs(i) <= self.ngens:
            raise WordError(f"generator index {i} out of range for {self.name} "
                            f"({self.ngens} generators)")
        g = self._gen(abs(i))
        return GroupElement(self, g if i > 0 else self._inv(g))

    def evaluate(self, word: Iterable[int]) -> GroupElement:
        return evaluate_word(word, self)

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        raise NotImplementedError

    def value_to_json(self, value: Any) -> Any:
        return list(value)

    def value_from_json(self, data: Any) -> Any:
        return self._check(tuple(int(v) for v in data))


def evaluate_word(word: Iterable[int], group: Group) -> GroupElement:
    """Left-to-right product of the generators (and inverses) named by ``word``."""
    w = _check_word(word)
    gens: dict = {}
    acc = group._identity()
    for a in w:
        g = gens.get(a)
        if g is None:
            g = gens[a] = group.generator(a).value
        acc = group._mul(acc, g)
    return GroupElement(group, acc)


@dataclass(frozen=True)
class UT(Group):
    """The unitriangular group UT_d(Z)."""

    d: int = 3

    def __post_init__(self) -> None:
        if self.d < 1:
            raise GroupError("UT_d needs d >= 1")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"UT_{self.d}(Z)"

    @property
    def positions(self) -> list:
        d = self.d
        return sorted(((i, j) for i in range(d) for j in range(i + 1, d)),
                      key=lambda ij: (ij[1] - ij[0], ij[0]))

    @property
    def ngens(self) -> int:
        return self.d * (self.d - 1) // 2

    def _identity(self) -> IntMatrix:
        return IntMatrix.identity(self.d)

    def _mul(self, x: IntMatrix, y: IntMatrix) -> IntMatrix:
        return x @ y

    def _inv(self, x: IntMatrix) -> IntMatrix:
        return x.unitriangular_inverse()

    def _gen(self, i: int) -> IntMatrix:
        r, c = self.positions[i - 1]
        rows = [[int(a == b) for b in range(self.d)] for a in range(self.d)]
        rows[r][c] = 1
        return IntMatrix(tuple(map(tuple, rows)), True)

    def _check(self, value: Any) -> IntMatrix:
        m = value if isinstance(value, IntMatrix) else IntMatrix(tuple(map(tuple, value)))
        if m.dim != self.d or not _is_unitriangular(m.rows):
            raise GroupError(f"matrix is not in {self.name}")
        return IntMatrix(m.rows, True)

    def from_heisenberg(self, a: int, b: int, c: int) -> GroupElement:
        if self.d != 3:
            raise GroupError("Heisenberg coordinates need d = 3")
        return GroupElement(self, IntMatrix.heisenberg(a, b, c))

    def to_json(self) -> dict:
        return {"type": "ut", "d": self.d}

    def value_to_json(self, value: IntMatrix) -> Any:
        return [list(r) for r in value.rows]

    def value_from_json(self, data: Any) -> IntMatrix:
        return self._check(data)


def heisenberg_mul(x: tuple, y: tuple) -> tuple:
    a1, b1, c1 = x[0], x[1], x[2]
    return (a1 + y[0], b1 + y[1], c1 + y[2] + a1 * y[1])


def heisenberg_power(coord: Sequence[int], n: int) -> tuple:
    """Closed form of ``(a, b, c)^n`` for n >= 0."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    a, b, c = coord[0], coord[1], coord[2]
    return (a * n, b * n, c * n + a * b * (n - 1) * n // 2)


@dataclass(frozen=True)
class HeisZ(Group):
    """H3(Z) x Z^e in coordinates (a, b, c, z_1, ..., z_e)."""

    e: int = 0

    @property
    def name(self) -> str:  # type: ignore[override]
        return "H3(Z)" if self.e == 0 else f"H3(Z)xZ^{self.e}"

    @property
    def ngens(self) -> int:
        return 3 + self.e

    def _identity(self) -> tuple:
        return (0,) * (3 + self.e)

    def _mul(self, x: tuple, y: tuple) -> tuple:
        if self.e == 0:
            return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])
        return heisenberg_mul(x, y) + tuple(u + v for u, v in zip(x[3:], y[3:]))

    def _inv(self, x: tuple) -> tuple:
        a, b, c = x[0], x[1], x[2]
        return (-a, -b, a * b - c) + tuple(-v for v in x[3:])

    def _pow(self, x: tuple, n: int) -> tuple:
        if n < 0:
            x, n = self._inv(x), -n
        return heisenberg_power(x, n) + tuple(v * n for v in x[3:])

    def _gen(self, i: int) -> tuple:
        v = [0] * (3 + self.e)
        v[i - 1] = 1
        return tuple(v)

    def _check(self, value: Any) -> tuple:
        v = tuple(int(x) for x in value)
        if len(v) != 3 + self.e:
            raise GroupError(f"{self.name} elements have {3 + self.e} coordinates")
        return v

    def to_json(self) -> dict:
        return {"type": "heis_ze", "e": self.e}


@dataclass(frozen=True)
class GAlpha(Group):
    """The subgroup of GL_2(R) generated by diag(1+sqrt2, 1) and the unit shear."""

    name = "G_alpha"

    @property
    def ngens(self) -> int:
        return 2

    def _identity(self) -> QuadMatrix:
        one, zero = QuadInt(1, 0), QuadInt(0, 0)
        return QuadMatrix(one, zero, zero, one)

    def _mul(self, x: QuadMatrix, y: QuadMatrix) -> QuadMatrix:
        return x @ y

    def _inv(self, x: QuadMatrix) -> QuadMatrix:
        return x.inverse()

    def _gen(self, i: int) -> QuadMatrix:
        one, zero = QuadInt(1, 0), QuadInt(0, 0)
        if i == 1:
            return QuadMatrix(ALPHA, zero, zero, one)
        return QuadMatrix(one, one, zero, one)

    def _check(self, value: Any) -> QuadMatrix:
        if isinstance(value, QuadMatrix):
            return value
        return QuadMatrix(*(QuadInt(int(p), int(q)) for p, q in value))

    def to_json(self) -> dict:
        return {"type": "galpha"}

    def value_to_json(self, value: QuadMatrix) -> Any:
        return [[x.p, x.q] for x in (value.a, value.b, value.c, value.d)]

    def value_from_json(self, data: Any) -> QuadMatrix:
        return self._check(data)


@dataclass(frozen=True)
class DInf(Group):
    """Infinite dihedral group; (n, s) is x -> (-1)^s x + n."""

    name = "D_inf"

    @property
    def ngens(self) -> int:
        return 2

    def _identity(self) -> tuple:
        return (0, 0)

    def _mul(self, x: tuple, y: tuple) -> tuple:
        return (x[0] - y[0] if x[1] else x[0] + y[0], x[1] ^ y[1])

    def _inv(self, x: tuple) -> tuple:
        return x if x[1] else (-x[0], 0)

    def _pow(self, x: tuple, n: int) -> tuple:
        if x[1]:
            return x if n & 1 else (0, 0)
        return (x[0] * n, 0)

    def _gen(self, i: int) -> tuple:
        return (1, 0) if i == 1 else (0, 1)

    def _check(self, value: Any) -> tuple:
        n, s = value
        if s not in (0, 1):
            raise GroupError("dihedral flip bit must be 0 or 1")
        return (int(n), int(s))

    def to_json(self) -> dict:
        return {"type": "dinf"}


@dataclass(frozen=True)
class Zn(Group):
    """Free abelian group Z^n, written additively inside the payload."""

    n: int = 1

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"Z^{self.n}"

    @property
    def ngens(self) -> int:
        return self.n

    def _identity(self) -> tuple:
        return (0,) * self.n

    def _mul(self, x: tuple, y: tuple) -> tuple:
        return tuple(u + v for u, v in zip(x, y))

    def _inv(self, x: tuple) -> tuple:
        return tuple(-u for u in x)

    def _pow(self, x: tuple, k: int) -> tuple:
        return tuple(u * k for u in x)

    def _gen(self, i: int) -> tuple:
        return tuple(int(j == i - 1) for j in range(self.n))

    def _check(self, value: Any) -> tuple:
        v = tuple(int(x) for x in value)
        if len(v) != self.n:
            raise GroupError(f"Z^{self.n} elements have {self.n} coordinates")
        return v

    def to_json(self) -> dict:
        return {"type": "z", "n": self.n}


@dataclass(frozen=True)
class Product(Group):
    """Flat direct product of the given factor groups."""

    factors: tuple = ()

    def __post_init__(self) -> None:
        flat: list = []
        for f in self.factors:
            if isinstance(f, Product):
                flat.extend(f.factors)
            else:
                flat.append(f)
        object.__setattr__(self, "factors", tuple(flat))

    @property
    def name(self) -> str:  # type: ignore[override]
        return " x ".join(f.name for f in self.factors) or "1"

    @property
    def ngens(self) -> int:
        return sum(f.ngens for f in self.factors)

    def _identity(self) -> tuple:
        return tuple(f._identity() for f in self.factors)

    def _mul(self, x: tuple, y: tuple) -> tuple:
        return tuple(f._mul(u, v) for f, u, v in zip(self.factors, x, y))

    def _inv(self, x: tuple) -> tuple:
        return tuple(f._inv(u) for f, u in zip(self.factors, x))

    def _pow(self, x: tuple, n: int) -> tuple:
        return tuple(f._pow(u, n) for f, u in zip(self.factors, x))

    def _gen(self, i: int) -> tuple:
        ident = list(self._identity())
        for pos, f in enumerate(self.factors):
            if i <= f.ngens:
                ident[pos] = f._gen(i)
                return tuple(ident)
            i -= f.ngens
        raise WordError("generator index out of range")

    def _check(self, value: Any) -> tuple:
        value = tuple(value)
        if len(value) != len(self.factors):
            raise GroupError("wrong number of product coordinates")
        return tuple(f._check(v) for f, v in zip(self.factors, value))

    def embed(self, index: int, g: GroupElement) -> GroupElement:
        """Place ``g`` at factor ``index`` with identities elsewhere."""
        if g.group != self.factors[index]:
            raise GroupMismatchError(f"{g.group.name} is not factor {index} of {self.name}")
        v = list(self._identity())
        v[index] = g.value
        return GroupElement(self, tuple(v))

    def tuple_of(self, parts: Sequence[GroupElement]) -> GroupElement:
        if len(parts) != len(self.factors):
            raise GroupError("wrong number of product coordinates")
        for f, p in zip(self.factors, parts):
            if p.group != f:
                raise GroupMismatchError(f"{p.group.name} is not {f.name}")
        return GroupElement(self, tuple(p.value for p in parts))

    def to_json(self) -> dict:
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}

    def value_to_json(self, value: tuple) -> Any:
        return [f.value_to_json(v) for f, v in zip(self.factors, value)]

    def value_from_json(self, data: Any) -> tuple:
        return tuple(f.value_from_json(v) for f, v in zip(self.factors, data))


_NAMED = {"galpha": GAlpha, "dinf": DInf}


def group_from_json(data: Any) -> Group:
    """Build a descriptor from its JSON form (a dict, or a bare type name)."""
    if isinstance(data, str):
        data = {"type": data}
    if not isinstance(data, dict) or "type" not in data:
        raise GroupError(f"malformed group descriptor {data!r}")
    kind = data["type"]
    if kind == "ut":
        return UT(int(data.get("d", 3)))
    if kind == "heis_ze":
        return HeisZ(int(data.get("e", 0)))
    if kind == "z":
        return Zn(int(data.get("n", 1)))
    if kind == "product":
        return Product(tuple(group_from_json(f) for f in data["factors"]))
    if kind in _NAMED:
        return _NAMED[kind]()
    raise GroupError(f"unknown group type {kind!r}")


def element_from_json(group: Group, data: Any) -> GroupElement:
    """An element given either as a word (JSON array) or as ``{"value": ...}``."""
    if isinstance(data, dict):
        if "word" in data:
            return evaluate_word(data["word"], group)
        return GroupElement(group, group.value_from_json(data["value"]))
    return evaluate_word(data, group)
