"""Exact arithmetic: rationals, quadratic extensions, projective points,
sparse Laurent polynomials and truncated power series in ``t``.

Rationals are ``gmpy2.mpq`` (aliased :data:`Rat`); plain ints and
:class:`fractions.Fraction` are accepted wherever a rational is expected.
All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

import gmpy2

Rat = gmpy2.mpq
RATIONAL_TYPES = (int, Fraction, type(gmpy2.mpq()), type(gmpy2.mpz()))
Scalar = Union[int, Fraction, "gmpy2.mpq"]


def rat(value) -> Rat:
    """Parse ``"p/q"``, ``"p"`` or an exact number into a rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, RATIONAL_TYPES):
        return Rat(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            num, _, den = text.partition("/")
            q = Rat(int(num), int(den)) if den else Rat(int(num))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not an exact rational: {value!r}") from None
        return q
    raise TypeError(f"cannot build a rational from {type(value).__name__}")


def format_rat(q) -> str:
    """Serialize as ``"p/q"`` (reduced, ``q > 0``) or ``"p"`` for integers."""
    return str(Rat(q))


# ---------------------------------------------------------------------------
# quadratic extensions Q(sqrt(D))

_TRIAL_BOUND = 1 << 16


def _square_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s * f**2`` and ``s`` free of small squares.

    Trial division runs up to 2**16; a leftover cofactor is removed when it is
    itself a perfect square.
    """
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, f = 1, 1
    p = 2
    while p * p <= n and p < _TRIAL_BOUND:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            f *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    if gmpy2.is_square(n):
        f *= int(gmpy2.isqrt(n))
    else:
        s *= n
    return sign * s, f


def is_rational_square(q) -> bool:
    q = Rat(q)
    if q < 0:
        return False
    return _is_square(q.numerator) and _is_square(q.denominator)


def _is_square(n) -> bool:
    return n >= 0 and bool(gmpy2.is_square(n))


def rational_sqrt(q) -> Rat:
    q = Rat(q)
    if not is_rational_square(q):
        raise ValueError(f"{q} is not a square in Q")
    return Rat(gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator))


@dataclass(frozen=True)
class QuadField:
    """The field Q(sqrt(radicand)) with a square-free integer radicand."""

    radicand: int

    def __post_init__(self) -> None:
        if isinstance(self.radicand, bool) or Rat(self.radicand).denominator != 1:
            raise ValueError(f"radicand {self.radicand} must be an integer")
        object.__setattr__(self, "radicand", int(self.radicand))
        if self.radicand == 1 or self.radicand == 0 or (
            self.radicand > 0 and _is_square(self.radicand)
        ):
            raise ValueError(f"radicand {self.radicand} is a rational square")

    @classmethod
    def containing_sqrt(cls, D: Scalar) -> tuple["QuadField", Rat]:
        """Field holding sqrt(D) plus the scale ``c`` with sqrt(D) = c*sqrt(radicand)."""
        D = Rat(D)
        if is_rational_square(D):
            raise ValueError(f"{D} is a rational square")
        # D = p/q = p*q / q**2
        s, f = _square_split(int(D.numerator * D.denominator))
        return cls(s), Rat(f, D.denominator)

    def __call__(self, a: Scalar, b: Scalar = 0) -> "QuadExt":
        return QuadExt(Rat(a), Rat(b), self)

    def sqrt(self) -> "QuadExt":
        return QuadExt(Rat(0), Rat(1), self)


class QuadExt:
    """``a + b*sqrt(D)`` in a fixed :class:`QuadField`.

    Stored as integers ``(A + B*sqrt(D)) / den`` with ``den > 0`` and
    ``gcd(A, B, den) == 1``; the representation is unique, and a product
    costs a single gcd reduction.
    """

    __slots__ = ("_A", "_B", "_den", "field")

    def __init__(self, a, b, field: QuadField) -> None:
        a, b = Rat(a), Rat(b)
        den = gmpy2.lcm(a.denominator, b.denominator)
        self._A = a.numerator * (den // a.denominator)
        self._B = b.numerator * (den // b.denominator)
        self._den = den
        self.field = field

    @classmethod
    def _raw(cls, A, B, den, field: QuadField) -> "QuadExt":
        if den < 0:
            A, B, den = -A, -B, -den
        g = gmpy2.gcd(gmpy2.gcd(A, B), den)
        if g != 1:
            A, B, den = A // g, B // g, den // g
        z = cls.__new__(cls)
        z._A, z._B, z._den, z.field = A, B, den, field
        return z

    @property
    def a(self) -> Rat:
        return Rat(self._A, self._den)

    @property
    def b(self) -> Rat:
        return Rat(self._B, self._den)

    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.field != self.field:
                raise ValueError("mixing elements of different quadratic fields")
            return other
        if isinstance(other, RATIONAL_TYPES):
            q = Rat(other)
            return QuadExt._raw(q.numerator, gmpy2.mpz(0), q.denominator, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt._raw(
            self._A * o._den + o._A * self._den,
            self._B * o._den + o._B * self._den,
            self._den * o._den,
            self.field,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self) -> "QuadExt":
        return QuadExt._raw(-self._A, -self._B, self._den, self.field)

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            q = Rat(other)
            return QuadExt._raw(
                self._A * q.numerator, self._B * q.numerator, self._den * q.denominator, self.field
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = self.field.radicand
        return QuadExt._raw(
            self._A * o._A + D * self._B * o._B,
            self._A * o._B + self._B * o._A,
            self._den * o._den,
            self.field,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt._raw(self._A, -self._B, self._den, self.field)

    def norm(self) -> Rat:
        return Rat(
            self._A * self._A - self.field.radicand * self._B * self._B,
            self._den * self._den,
        )

    def inverse(self) -> "QuadExt":
        n = self._A * self._A - self.field.radicand * self._B * self._B
        if n == 0:
            raise ZeroDivisionError("inverse of zero in quadratic field")
        # den / (A + B sqrt D) = den (A - B sqrt D) / n
        return QuadExt._raw(self._den * self._A, -self._den * self._B, n, self.field)

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            q = Rat(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / q)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "QuadExt":
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt._raw(gmpy2.mpz(1), gmpy2.mpz(0), gmpy2.mpz(1), self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self._A) or bool(self._B)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            if self._B == 0 and other._B == 0:
                return self._A == other._A and self._den == other._den
            return (
                self.field == other.field
                and self._A == other._A
                and self._B == other._B
                and self._den == other._den
            )
        if isinstance(other, RATIONAL_TYPES):
            return self._B == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._B == 0:
            return hash(self.a)
        return hash((self._A, self._B, self._den, self.field.radicand))

    def is_rational(self) -> bool:
        return self._B == 0

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b}, D={self.field.radicand})"

    def __str__(self) -> str:
        if self._B == 0:
            return format_rat(self.a)
        return f"{format_rat(self.a)}+({format_rat(self.b)})*sqrt({self.field.radicand})"


FieldElt = Union[Rat, QuadExt]


def quad_field_solve(A: Scalar, B: Scalar, C: Scalar) -> tuple[FieldElt, FieldElt]:
    """Both roots of ``A*y**2 + B*y + C`` in Q or Q(sqrt(B**2 - 4AC)).

    Rational roots come back as plain rationals. The "+" root is listed first.
    """
    A, B, C = Rat(A), Rat(B), Rat(C)
    if A == 0:
        raise ValueError("degenerate quadratic: leading coefficient is zero")
    disc = B * B - 4 * A * C
    if is_rational_square(disc):
        r = rational_sqrt(disc)
        return (-B + r) / (2 * A), (-B - r) / (2 * A)
    field, scale = QuadField.containing_sqrt(disc)
    half = scale / (2 * A)
    return field(-B / (2 * A), half), field(-B / (2 * A), -half)


# ---------------------------------------------------------------------------
# projective line


def _is_zero(v) -> bool:
    return not v


@dataclass(frozen=True)
class ProjPoint:
    """A point ``[c0 : c1]`` of P^1, stored with its last nonzero coordinate 1."""

    c0: FieldElt
    c1: FieldElt

    @classmethod
    def of(cls, c0, c1) -> "ProjPoint":
        if isinstance(c0, RATIONAL_TYPES):
            c0 = Rat(c0)
        if isinstance(c1, RATIONAL_TYPES):
            c1 = Rat(c1)
        if _is_zero(c1):
            if _is_zero(c0):
                raise ValueError("[0:0] is not a projective point")
            return cls(Rat(1), Rat(0))
        return cls(c0 / c1, Rat(1))

    @classmethod
    def affine(cls, v) -> "ProjPoint":
        return cls.of(v, Rat(1))

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(Rat(1), Rat(0))

    @property
    def is_infinity(self) -> bool:
        return _is_zero(self.c1)

    @property
    def value(self) -> FieldElt:
        """Affine coordinate; raises at infinity."""
        if self.is_infinity:
            raise ValueError("affine value of the point at infinity")
        return self.c0

    def is_rational(self) -> bool:
        return not isinstance(self.c0, QuadExt) or self.c0.is_rational()

    def to_json(self) -> list[str]:
        return [str(self.c0), str(self.c1)]

    def __str__(self) -> str:
        return f"[{self.c0}:{self.c1}]"


# ---------------------------------------------------------------------------
# Laurent polynomials in x, y


class LaurentPoly(Mapping):
    """Sparse Laurent polynomial ``sum c[i,j] x**i y**j`` with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | Iterable = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], Rat] = {}
        for key, c in items:
            c = Rat(c)
            if c:
                acc[key] = acc.get(key, Rat(0)) + c
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({(i, j): c})

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls({(0, 0): c})

    def __getitem__(self, key: tuple[int, int]) -> Rat:
        return self._terms[key]

    def coeff(self, i: int, j: int) -> Rat:
        return self._terms.get((i, j), Rat(0))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, RATIONAL_TYPES):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, RATIONAL_TYPES):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, Rat(0)) + v
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, RATIONAL_TYPES):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, RATIONAL_TYPES):
            return LaurentPoly({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[tuple[int, int], Rat] = {}
        for (i1, j1), a in self._terms.items():
            for (i2, j2), b in other._terms.items():
                key = (i1 + i2, j1 + j2)
                acc[key] = acc.get(key, Rat(0)) + a * b
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def substitute_monomials(self, i_map, j_map) -> "LaurentPoly":
        """Apply a monomial change of variables ``x^i y^j -> x^i' y^j'``.

        ``i_map(i, j)`` and ``j_map(i, j)`` give the new exponents.
        """
        return LaurentPoly(
            ((i_map(i, j), j_map(i, j)), c) for (i, j), c in self._terms.items()
        )

    def swap(self) -> "LaurentPoly":
        """Exchange the roles of ``x`` and ``y``."""
        return self.substitute_monomials(lambda i, j: j, lambda i, j: i)

    def evaluate(self, x, y):
        total = Rat(0)
        for (i, j), c in self._terms.items():
            total = total + c * (x**i) * (y**j)
        return total

    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._terms.items()))!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0] - kv[0][1], -kv[0][0])):
            mono = "*".join(
                s for s in (_power("x", i), _power("y", j)) if s
            )
            coeff = format_rat(c)
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _power(name: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{e}"


# ---------------------------------------------------------------------------
# truncated series in t


class TruncSeries:
    """Power series in ``t`` truncated at order ``N`` (inclusive), with
    :class:`LaurentPoly` coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[LaurentPoly] = ()) -> None:
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = list(coeffs)[: order + 1]
        cs += [LaurentPoly()] * (order + 1 - len(cs))
        self.order = order
        self.coeffs: tuple[LaurentPoly, ...] = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls(order)

    @classmethod
    def const(cls, order: int, p: LaurentPoly | Scalar) -> "TruncSeries":
        """The t-constant series ``p``."""
        if not isinstance(p, LaurentPoly):
            p = LaurentPoly.constant(p)
        return cls(order, [p])

    @classmethod
    def from_terms(cls, order: int, terms: Iterable[tuple[int, int, int, Scalar]]) -> "TruncSeries":
        buckets: list[dict] = [dict() for _ in range(order + 1)]
        for n, i, j, c in terms:
            if 0 <= n <= order:
                b = buckets[n]
                b[(i, j)] = b.get((i, j), Rat(0)) + Rat(c)
        return cls(order, [LaurentPoly(b) for b in buckets])

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.coeffs[n]

    def _check(self, other: "TruncSeries") -> None:
        if other.order != self.order:
            raise ValueError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def _lift(self, other) -> "TruncSeries | None":
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if isinstance(other, RATIONAL_TYPES + (LaurentPoly,)):
            return TruncSeries.const(self.order, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncSeries(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncSeries(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES + (LaurentPoly,)):
            return TruncSeries(self.order, [a * other for a in self.coeffs])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return series_mul(self, o)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``t**k`` (``k >= 0``), dropping what falls past the order."""
        if k < 0:
            raise ValueError("negative shifts leave the power-series ring")
        return TruncSeries(self.order, [LaurentPoly()] * k + list(self.coeffs))

    def map_coeffs(self, fn) -> "TruncSeries":
        return TruncSeries(self.order, [fn(c) for c in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> Iterator[tuple[int, int, int, Rat]]:
        """``(n, i, j, coeff)`` in sorted order."""
        for n, poly in enumerate(self.coeffs):
            for (i, j) in sorted(poly):
                yield n, i, j, poly[(i, j)]

    def first_nonzero(self) -> tuple[int, int, int, Rat] | None:
        return next(self.terms(), None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [
                {"n": n, "i": i, "j": j, "coeff": format_rat(c)}
                for n, i, j, c in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "TruncSeries":
        return cls.from_terms(
            int(doc["order"]),
            ((t["n"], t["i"], t["j"], rat(t["coeff"])) for t in doc["terms"]),
        )

    def __repr__(self) -> str:
        return f"TruncSeries(order={self.order}, terms={len(list(self.terms()))})"


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    N = a.order
    out = []
    for n in range(N + 1):
        acc = LaurentPoly()
        for k in range(n + 1):
            if a.coeffs[k] and b.coeffs[n - k]:
                acc = acc + a.coeffs[k] * b.coeffs[n - k]
        out.append(acc)
    return TruncSeries(N, out)
