"""The three-strand braid group via words and the reduced Burau representation.

Word equality is decided by comparing Burau matrices; the reduced Burau
representation of B3 is faithful, so this is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

GENERATORS = ("a", "b")


class BraidSyntaxError(ValueError):
    def __init__(self, message: str, position: int, token_index: int):
        self.position = position
        self.token_index = token_index
        super().__init__(f"{message} at token {token_index} (offset {position})")


# letters: (generator, exponent sign)
Letter = tuple[str, int]


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "BraidWord":
        base = self if n >= 0 else self.inverse()
        return BraidWord(base.letters * abs(n))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(g if e > 0 else g.upper() for g, e in self.letters)


def _reduce(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


_TOKEN = re.compile(r"\s*(?:([ab])(?:\^(-?1))?|([AB]))")


def parse_braid(text: str) -> BraidWord:
    """Parse ``"abA"`` or ``"a b^-1 a"`` style words (free reduction applied)."""
    letters: list[Letter] = []
    pos, n = 0, 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        n += 1
        m = _TOKEN.match(text, pos)
        if not m:
            offset = len(text) - len(text[pos:].lstrip())
            raise BraidSyntaxError(f"unexpected {text[offset]!r}", offset, n)
        lower, exp, upper = m.groups()
        if upper:
            letters.append((upper.lower(), -1))
        else:
            letters.append((lower, -1 if exp == "-1" else 1))
        pos = m.end()
    return BraidWord(tuple(letters))


def word(text: str) -> BraidWord:
    return parse_braid(text)


def full_twist(k: int = 1) -> BraidWord:
    """``((aba)^2)^k``; negative ``k`` gives the inverse."""
    return parse_braid("abaaba") ** k


# -- Laurent polynomials in t ------------------------------------------------


class LaurentPoly:
    """Finitely supported ``{exponent: integer}``; zero coefficients are dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {e: c for e, c in sorted((coeffs or {}).items()) if c}

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def mono(cls, c: int, e: int) -> "LaurentPoly":
        return cls({e: c})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def evaluate(self, t: int) -> int:
        """Value at ``t = ±1`` (the only points where negative powers stay integral)."""
        if t not in (1, -1):
            raise ValueError("Laurent polynomials are evaluated at t = ±1 only")
        return sum(c * t ** (e % 2) for e, c in self.coeffs.items())

    def to_json(self) -> dict:
        return {str(e): c for e, c in self.coeffs.items()}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in self.coeffs.items():
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                terms.append(("-" if c < 0 else "+") + mono)
            else:
                terms.append(f"{c:+d}{mono}")
        return "".join(terms).lstrip("+")


Matrix = tuple  # 2x2 row-major: (m00, m01, m10, m11)


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


_ONE, _ZERO = LaurentPoly.const(1), LaurentPoly()
_t, _mt, _mtinv, _tinv = LaurentPoly.mono(1, 1), LaurentPoly.mono(-1, 1), LaurentPoly.mono(-1, -1), LaurentPoly.mono(1, -1)

IDENTITY: Matrix = (_ONE, _ZERO, _ZERO, _ONE)
BURAU_GENERATORS: dict[Letter, Matrix] = {
    ("a", 1): (_mt, _ONE, _ZERO, _ONE),
    ("a", -1): (_mtinv, _tinv, _ZERO, _ONE),
    ("b", 1): (_ONE, _ZERO, _t, _mt),
    ("b", -1): (_ONE, _ZERO, _ONE, _mtinv),
}


def burau(w: BraidWord) -> Matrix:
    """Reduced Burau matrix: a -> [[-t,1],[0,1]], b -> [[1,0],[t,-t]]."""
    m = IDENTITY
    for letter in w.letters:
        m = mat_mul(m, BURAU_GENERATORS[letter])
    return m


def braid_equal(w1: BraidWord, w2: BraidWord) -> bool:
    return burau(w1) == burau(w2)


def sl2_image(w: BraidWord) -> tuple[int, int, int, int]:
    """Integer matrix at ``t = -1``; a -> [[1,1],[0,1]], b -> [[1,0],[-1,1]]."""
    return tuple(p.evaluate(-1) for p in burau(w))


def braid_permutation(w: BraidWord) -> tuple[int, int, int]:
    """Strand permutation (0-based images); a swaps strands 1,2 and b swaps 2,3.

    Composition runs left to right, matching the catalog's symmetric groups.
    """
    swaps = {"a": (1, 0, 2), "b": (0, 2, 1)}
    p = (0, 1, 2)
    for g, _ in w.letters:
        s = swaps[g]
        p = tuple(s[x] for x in p)
    return p


def int_mat_mul(x, y):
    return mat_mul(x, y)


def matrix_json(m: Matrix) -> list:
    rows = [m[:2], m[2:]]
    return [[e.to_json() if isinstance(e, LaurentPoly) else e for e in row] for row in rows]
