"""Hamilton quaternions with coordinates in Q(sqrt 2)."""
from __future__ import annotations

import enum
from math import gcd, lcm

from .scalar import HALF, ZERO, DivisionByZero, ScalarQ

BASIS_NAMES = ("1", "i", "j", "k")


class RatioConvention(enum.Enum):
    """How the Jordan ratio ``{u:v}`` treats its second argument.

    STAR conjugates it, ``{u, v*}``; PLAIN does not, ``{u, v}``.
    """

    PLAIN = "plain"
    STAR = "star"


class Quat:
    """``q0 + q1 i + q2 j + q3 k`` with coordinates in Q(sqrt 2).

    Internally eight integers ``(p_n, r_n)`` over one positive denominator
    ``d``, coordinate ``n`` being ``(p_n + r_n sqrt 2) / d``; the tuple is
    reduced so equality and hashing are structural.
    """

    __slots__ = ("n", "d", "_hash")

    def __init__(self, q0=ZERO, q1=ZERO, q2=ZERO, q3=ZERO) -> None:
        cs = [ScalarQ.coerce(c) for c in (q0, q1, q2, q3)]
        d = lcm(*(c.d for c in cs))
        nums = []
        for c in cs:
            m = d // c.d
            nums += (c.p * m, c.q * m)
        self._set(nums, d)

    def _set(self, nums, d: int) -> None:
        g = gcd(d, *nums)
        if g != 1:
            nums = [x // g for x in nums]
            d //= g
        self.n = tuple(nums)
        self.d = d
        self._hash = hash((self.n, d))

    @classmethod
    def raw(cls, nums, d: int) -> "Quat":
        x = object.__new__(cls)
        x._set(nums, d)
        return x

    @classmethod
    def basis(cls, name: str) -> "Quat":
        nums = [0] * 8
        nums[2 * BASIS_NAMES.index(name)] = 1
        return cls.raw(nums, 1)

    @property
    def q(self) -> tuple[ScalarQ, ...]:
        n, d = self.n, self.d
        return tuple(ScalarQ.raw(n[2 * m], n[2 * m + 1], d) for m in range(4))

    def __iter__(self):
        return iter(self.q)

    def __getitem__(self, m: int) -> ScalarQ:
        return ScalarQ.raw(self.n[2 * m], self.n[2 * m + 1], self.d)

    def __eq__(self, other):
        if not isinstance(other, Quat):
            return NotImplemented
        return self.n == other.n and self.d == other.d

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return any(self.n)

    def __lt__(self, other: "Quat") -> bool:
        return self.q < other.q

    def __add__(self, other: "Quat") -> "Quat":
        d1, d2 = self.d, other.d
        return Quat.raw([x * d2 + y * d1 for x, y in zip(self.n, other.n)], d1 * d2)

    def __sub__(self, other: "Quat") -> "Quat":
        d1, d2 = self.d, other.d
        return Quat.raw([x * d2 - y * d1 for x, y in zip(self.n, other.n)], d1 * d2)

    def __neg__(self) -> "Quat":
        return Quat.raw([-x for x in self.n], self.d)

    def scale(self, s) -> "Quat":
        s = ScalarQ.coerce(s)
        p, r = s.p, s.q
        n = self.n
        out = []
        for m in range(0, 8, 2):
            x, y = n[m], n[m + 1]
            out += (x * p + 2 * y * r, x * r + y * p)
        return Quat.raw(out, self.d * s.d)

    def __mul__(self, other):
        if not isinstance(other, Quat):
            return self.scale(other)
        a0, b0, a1, b1, a2, b2, a3, b3 = self.n
        c0, e0, c1, e1, c2, e2, c3, e3 = other.n

        # (a + b r)(c + e r) with r^2 = 2, as a pair
        def m(a, b, c, e):
            return a * c + 2 * b * e, a * e + b * c

        t = [[m(x, y, z, w) for z, w in ((c0, e0), (c1, e1), (c2, e2), (c3, e3))]
             for x, y in ((a0, b0), (a1, b1), (a2, b2), (a3, b3))]
        signs = (
            ((0, 0, 1), (1, 1, -1), (2, 2, -1), (3, 3, -1)),
            ((0, 1, 1), (1, 0, 1), (2, 3, 1), (3, 2, -1)),
            ((0, 2, 1), (1, 3, -1), (2, 0, 1), (3, 1, 1)),
            ((0, 3, 1), (1, 2, 1), (2, 1, -1), (3, 0, 1)),
        )
        out = []
        for row in signs:
            p = r = 0
            for x, y, sg in row:
                u, v = t[x][y]
                p += sg * u
                r += sg * v
            out += (p, r)
        return Quat.raw(out, self.d * other.d)

    def __rmul__(self, s) -> "Quat":
        return self.scale(s)

    def conj(self) -> "Quat":
        n = self.n
        return Quat.raw(n[:2] + tuple(-x for x in n[2:]), self.d)

    def norm2(self) -> ScalarQ:
        n = self.n
        p = r = 0
        for m in range(0, 8, 2):
            x, y = n[m], n[m + 1]
            p += x * x + 2 * y * y
            r += 2 * x * y
        return ScalarQ.raw(p, r, self.d * self.d)

    def inverse(self) -> "Quat":
        n = self.norm2()
        if not n:
            raise DivisionByZero("inverse of the zero quaternion")
        return self.conj().scale(n.inverse())

    def __pow__(self, n: int) -> "Quat":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE_Q, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_json(self) -> list:
        return [c.to_json() for c in self.q]

    @classmethod
    def from_json(cls, obj: list) -> "Quat":
        return cls(*(ScalarQ.from_json(c) for c in obj))

    def __repr__(self) -> str:
        return f"Quat({label(self)})"

    def __str__(self) -> str:
        return label(self)


ZERO_Q = Quat()
ONE_Q = Quat.basis("1")
I = Quat.basis("i")
J = Quat.basis("j")
K = Quat.basis("k")


def quat_linear(op: str, u: Quat, v) -> Quat:
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "scale":
        return u.scale(v)
    raise ValueError(f"unknown linear operation {op!r}")


def quat_mul(u: Quat, v: Quat) -> Quat:
    return u * v


def quat_conj(q: Quat) -> Quat:
    return q.conj()


def quat_norm2(q: Quat) -> ScalarQ:
    return q.norm2()


def quat_inv(q: Quat) -> Quat:
    return q.inverse()


def jordan_product(u: Quat, v: Quat) -> Quat:
    """Symmetrised product ``(uv + vu)/2``."""
    return (u * v + v * u).scale(HALF)


def jordan_ratio(u: Quat, v: Quat, convention: RatioConvention = RatioConvention.PLAIN) -> Quat:
    if convention is RatioConvention.STAR:
        v = v.conj()
    return jordan_product(u, v)


# -- display labels ---------------------------------------------------------


def _combination(coeffs) -> str:
    """Integer combination of 1, i, j, k, e.g. ``1-i`` or ``2j+k``."""
    out = ""
    for c, name in zip(coeffs, BASIS_NAMES):
        if not c:
            continue
        mag = abs(c)
        if name == "1":
            term = str(mag)
        else:
            term = name if mag == 1 else f"{mag}{name}"
        if c < 0:
            out += "-" + term
        else:
            out += ("+" if out else "") + term
    return out or "0"


def _over(coeffs, denom: str) -> str:
    """``coeffs`` divided by a denominator string, sign pulled out front."""
    nonzero = [c for c in coeffs if c]
    sign = ""
    if nonzero[0] < 0:
        sign, coeffs = "-", [-c for c in coeffs]
    body = _combination(coeffs)
    if len(nonzero) > 1:
        body = f"({body})"
    return f"{sign}{body}/{denom}"


def label(q: Quat) -> str:
    """Deterministic human-readable label, e.g. ``(1+i)/√2`` or ``(1-i-j-k)/2``."""
    coords = q.q
    if all(c.b == 0 for c in coords):
        vals = [c.a for c in coords]
        d = lcm(*(v.denominator for v in vals))
        nums = [int(v * d) for v in vals]
        if d == 1 or not any(nums):
            return _combination(nums)
        return _over(nums, str(d))
    if all(c.a == 0 for c in coords):
        # b*sqrt2 == (2b)/sqrt2
        vals = [2 * c.b for c in coords]
        d = lcm(*(v.denominator for v in vals))
        nums = [int(v * d) for v in vals]
        if d == 1 and all(n % 2 == 0 for n in nums):
            halves = [n // 2 for n in nums]
            if sum(1 for h in halves if h) > 1:
                return f"√2({_combination(halves)})"
            n = next(n for n, h in enumerate(halves) if h)
            h = halves[n]
            mag = "" if abs(h) == 1 else str(abs(h))
            name = "" if n == 0 else BASIS_NAMES[n]
            return f"{'-' if h < 0 else ''}{mag}√2{name}"
        return _over(nums, "√2" if d == 1 else f"({d}√2)")
    terms = []
    for c, name in zip(coords, BASIS_NAMES):
        if not c:
            continue
        s = f"({c})"
        terms.append(s if name == "1" else f"{s}{name}")
    return "+".join(terms)
