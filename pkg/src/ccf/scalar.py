"""Exact arithmetic in the real quadratic field Q(sqrt 2)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

Rational = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting an exact zero (scalar or quaternion)."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class ScalarQ:
    """The number ``a + b*sqrt(2)`` with ``a``, ``b`` exact rationals.

    Stored as integers ``(p + q*sqrt(2)) / d`` with ``d > 0`` and
    ``gcd(p, q, d) = 1``, so equality is a tuple comparison.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        a, b = Fraction(a), Fraction(b)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p: int, q: int, d: int) -> None:
        g = gcd(p, q, d)
        if g != 1:
            p, q, d = p // g, q // g, d // g
        self.p, self.q, self.d = p, q, d

    @classmethod
    def raw(cls, p: int, q: int, d: int) -> "ScalarQ":
        """``(p + q*sqrt(2)) / d`` for integers with ``d > 0``."""
        x = object.__new__(cls)
        x._set(p, q, d)
        return x

    @classmethod
    def coerce(cls, x: "ScalarQ | Rational") -> "ScalarQ":
        return x if isinstance(x, ScalarQ) else cls(x)

    @property
    def a(self) -> Fraction:
        return Fraction(self.p, self.d)

    @property
    def b(self) -> Fraction:
        return Fraction(self.q, self.d)

    # field operations

    def __add__(self, other):
        if not isinstance(other, ScalarQ):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ScalarQ(other)
        d1, d2 = self.d, other.d
        return ScalarQ.raw(self.p * d2 + other.p * d1, self.q * d2 + other.q * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "ScalarQ":
        return ScalarQ.raw(-self.p, -self.q, self.d)

    def __sub__(self, other):
        if not isinstance(other, ScalarQ):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ScalarQ(other)
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if not isinstance(other, ScalarQ):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ScalarQ(other)
        p1, q1, p2, q2 = self.p, self.q, other.p, other.q
        return ScalarQ.raw(p1 * p2 + 2 * q1 * q2, p1 * q2 + q1 * p2, self.d * other.d)

    __rmul__ = __mul__

    def conjugate(self) -> "ScalarQ":
        """Galois conjugate ``a - b*sqrt(2)``."""
        return ScalarQ.raw(self.p, -self.q, self.d)

    def field_norm(self) -> Fraction:
        return Fraction(self.p * self.p - 2 * self.q * self.q, self.d * self.d)

    def inverse(self) -> "ScalarQ":
        if not self:
            raise DivisionByZero("inverse of zero in Q(sqrt 2)")
        # d / (p + q r) = d (p - q r) / (p^2 - 2 q^2)
        n = self.p * self.p - 2 * self.q * self.q
        p, q = self.d * self.p, -self.d * self.q
        if n < 0:
            p, q, n = -p, -q, -n
        return ScalarQ.raw(p, q, n)

    def __truediv__(self, other):
        other = ScalarQ.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ScalarQ.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ScalarQ":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(2)`` as a real number."""
        sa, sb = _sign(self.p), _sign(self.q)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: the larger of a^2 and 2 b^2 decides
        return sa if self.p * self.p > 2 * self.q * self.q else sb

    def __eq__(self, other):
        if isinstance(other, ScalarQ):
            return self.p == other.p and self.q == other.q and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and Fraction(self.p, self.d) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.d))

    def __bool__(self) -> bool:
        return bool(self.p) or bool(self.q)

    def __lt__(self, other):
        return cmp(self, ScalarQ.coerce(other)) < 0

    def __le__(self, other):
        return cmp(self, ScalarQ.coerce(other)) <= 0

    def __gt__(self, other):
        return cmp(self, ScalarQ.coerce(other)) > 0

    def __ge__(self, other):
        return cmp(self, ScalarQ.coerce(other)) >= 0

    def __float__(self) -> float:
        return (self.p + self.q * 2 ** 0.5) / self.d

    # display / serialization

    def is_rational(self) -> bool:
        return self.q == 0

    def to_json(self) -> dict:
        return {
            "a": [self.a.numerator, self.a.denominator],
            "b": [self.b.numerator, self.b.denominator],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ScalarQ":
        (an, ad), (bn, bd) = obj["a"], obj["b"]
        if ad <= 0 or bd <= 0:
            raise ValueError("denominators must be positive")
        return cls(Fraction(an, ad), Fraction(bn, bd))

    def __repr__(self) -> str:
        return f"ScalarQ({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        if not self.q:
            return str(self.a)
        root = _sqrt2_term(self.b)
        if not self.p:
            return root
        sep = "" if root.startswith("-") else "+"
        return f"{self.a}{sep}{root}"


def _sqrt2_term(b: Fraction) -> str:
    sign = "-" if b < 0 else ""
    n, d = abs(b.numerator), b.denominator
    head = "√2" if n == 1 else f"{n}√2"
    return f"{sign}{head}" if d == 1 else f"{sign}{head}/{d}"


def cmp(x: ScalarQ, y: ScalarQ) -> int:
    """Total order of the real embedding: -1, 0 or 1."""
    return (x - y).sign()


def scalar_arith(op: str, x: ScalarQ, y: ScalarQ) -> ScalarQ:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown scalar operation {op!r}")


def scalar_inv(x: ScalarQ) -> ScalarQ:
    return x.inverse()


ZERO = ScalarQ(0)
ONE = ScalarQ(1)
HALF = ScalarQ(Fraction(1, 2))
SQRT2 = ScalarQ(0, 1)
INV_SQRT2 = ScalarQ(0, Fraction(1, 2))
