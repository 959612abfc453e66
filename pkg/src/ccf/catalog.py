"""Named groups: cyclic, symmetric, Klein four, quaternionic, and SL2 over F_p."""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache

from .groups import FiniteGroup, closure, direct_product, from_multiplication, isomorphic
from .quaternion import ONE_Q, Quat, label as quat_label
from .scalar import HALF, INV_SQRT2, ScalarQ

MAX_SYM = 5
SL2_PRIMES = (2, 3, 5)


class UnknownGroup(KeyError):
    pass


# -- realizations -----------------------------------------------------------


def _perm_mul(p: tuple, q: tuple) -> tuple:
    """Apply ``p`` first, then ``q``."""
    return tuple(q[x] for x in p)


def cycle_label(p: tuple) -> str:
    """1-based cycle notation, e.g. ``(1 2)(3 4)``; identity is ``()``."""
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def perm_from_cycles(n: int, *cycles) -> tuple:
    """Permutation of ``range(n)`` from 1-based cycles."""
    p = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b - 1
    return tuple(p)


def parity(p: tuple) -> int:
    inversions = sum(1 for a, b in itertools.combinations(range(len(p)), 2) if p[a] > p[b])
    return inversions % 2


def _mat_mul(p: int):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    return mul


def mat_label(m: tuple) -> str:
    a, b, c, d = m
    return f"[[{a},{b}],[{c},{d}]]"


V_LABELS = {(1, 1, 1): "1", (1, -1, -1): "I", (-1, 1, -1): "J", (-1, -1, 1): "K"}


def _sign_mul(x, y):
    return tuple(a * b for a, b in zip(x, y))


def special_elements() -> list[Quat]:
    """The 24 units ``(±e_r ± e_s)/√2`` with exactly two nonzero coordinates."""
    out = []
    for r, s in itertools.combinations(range(4), 2):
        for sr, ss in itertools.product((1, -1), repeat=2):
            coords = [ScalarQ(0)] * 4
            coords[r] = INV_SQRT2 * sr
            coords[s] = INV_SQRT2 * ss
            out.append(Quat(*coords))
    return sorted(out)


def lipschitz_units() -> list[Quat]:
    out = []
    for n in range(4):
        for s in (1, -1):
            coords = [ScalarQ(0)] * 4
            coords[n] = ScalarQ(s)
            out.append(Quat(*coords))
    return out


def hurwitz_units() -> list[Quat]:
    halves = [Quat(*(HALF * s for s in signs)) for signs in itertools.product((1, -1), repeat=4)]
    return lipschitz_units() + halves


def _quat_group(name: str, elements) -> FiniteGroup:
    return from_multiplication(elements, Quat.__mul__, name=name, key=lambda q: q.q, label=quat_label, kind="quaternion")


# -- constructors -----------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("C(n) needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(f"C{n}", list(range(n)), table, kind="residue")


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= MAX_SYM:
        raise ValueError(f"Sym(n) supports 1 <= n <= {MAX_SYM}")
    perms = list(itertools.permutations(range(n)))
    return from_multiplication(perms, _perm_mul, name=f"S{n}", key=lambda p: p, label=cycle_label, kind="permutation")


def alternating4() -> FiniteGroup:
    perms = [p for p in itertools.permutations(range(4)) if parity(p) == 0]
    return from_multiplication(perms, _perm_mul, name="A4", key=lambda p: p, label=cycle_label, kind="permutation")


def klein_four() -> FiniteGroup:
    """V = {1, I, J, K}: sign changes of (i, j, k) by conjugation in Q."""
    return from_multiplication(
        list(V_LABELS), _sign_mul, name="V", key=lambda s: V_LABELS[s], label=V_LABELS.__getitem__, kind="sign-diagonal"
    )


def sl2(p: int) -> FiniteGroup:
    if p not in SL2_PRIMES:
        raise ValueError(f"SL2(p) supports p in {SL2_PRIMES}")
    mats = [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]
    return from_multiplication(mats, _mat_mul(p), name=f"SL2({p})", key=lambda m: m, label=mat_label, kind="matrix")


def binary_octahedral_by_closure() -> FiniteGroup:
    """Independent construction of 2·O from ``(1+i)/√2`` and ``(1+i+j+k)/2``.

    ``i`` and ``(1+i)/√2`` alone only generate a cyclic group of order 8.
    """
    g = (ONE_Q + Quat.basis("i")).scale(INV_SQRT2)
    h = (ONE_Q + Quat.basis("i") + Quat.basis("j") + Quat.basis("k")).scale(HALF)
    return closure([g, h], Quat.__mul__, name="2O", key=lambda q: q.q, label=quat_label, kind="quaternion")


_NAME = re.compile(r"^(?:C\(?(\d+)\)?|(?:S|Sym)\(?(\d)\)?|SL2\((\d)\)|V|Q|A4|T2|2T|O2|2O)$")

ALIASES = {"T2": "2T", "O2": "2O"}


def canonical_name(name: str) -> str:
    name = name.strip()
    m = _NAME.match(name)
    if not m:
        raise UnknownGroup(name)
    c, s, p = m.groups()
    if c is not None:
        return f"C{int(c)}"
    if s is not None:
        return f"S{int(s)}"
    if p is not None:
        return f"SL2({p})"
    return ALIASES.get(name, name)


@lru_cache(maxsize=None)
def _build(name: str) -> FiniteGroup:
    if name == "Q":
        return _quat_group("Q", lipschitz_units())
    if name == "2T":
        return _quat_group("2T", hurwitz_units())
    if name == "2O":
        return _quat_group("2O", hurwitz_units() + special_elements())
    if name == "V":
        return klein_four()
    if name == "A4":
        return alternating4()
    if name.startswith("SL2("):
        return sl2(int(name[4:-1]))
    if name.startswith("C"):
        return cyclic(int(name[1:]))
    if name.startswith("S"):
        return symmetric(int(name[1:]))
    raise UnknownGroup(name)


def build(name: str) -> FiniteGroup:
    """Construct a catalog group by name, e.g. ``Q``, ``2O``, ``S4``, ``C3``, ``SL2(3)``."""
    try:
        return _build(canonical_name(name))
    except ValueError as exc:
        raise UnknownGroup(f"{name}: {exc}") from exc


CATALOG = [
    ("C<n>", "n", "residue"),
    ("S1..S5", "n!", "permutation"),
    ("V", "4", "sign-diagonal"),
    ("S3", "6", "permutation"),
    ("Q", "8", "quaternion"),
    ("A4", "12", "permutation"),
    ("S4", "24", "permutation"),
    ("2T", "24", "quaternion"),
    ("2O", "48", "quaternion"),
    ("SL2(2)", "6", "matrix"),
    ("SL2(3)", "24", "matrix"),
    ("SL2(5)", "120", "matrix"),
]


def catalog_lines() -> list[str]:
    return [f"{name:<8} order {order:<4} {kind}" for name, order, kind in CATALOG]


_IDENTIFY_CANDIDATES = ("C1", "C2", "C3", "C4", "V", "C5", "C6", "S3", "C8", "Q", "C12", "A4", "C24", "S4", "2T")


@lru_cache(maxsize=None)
def product_group(left: str, right: str) -> FiniteGroup:
    """Direct product of two catalog groups, named ``left×right``."""
    return direct_product(build(left), build(right), f"{left}×{right}").group


def identify(G: FiniteGroup) -> str | None:
    """Name of an isomorphic catalog group (order <= 24, or a few of order 48)."""
    for name in _IDENTIFY_CANDIDATES:
        H = build(name)
        if H.order == G.order and isomorphic(G, H):
            return name
    if G.order == 48:
        for H in (build("2O"), product_group("C2", "S4"), product_group("C2", "2T")):
            if isomorphic(G, H):
                return H.name
    if G.order <= 24 and G.order not in (1, 2, 3, 5) and G.is_abelian() and max(G.element_orders) == G.order:
        return f"C{G.order}"
    return None


def q_inner_sign(q: Quat) -> tuple[int, int, int]:
    """Signs by which conjugation by ``q`` acts on i, j, k (``q`` in Q)."""
    signs = []
    for name in "ijk":
        e = Quat.basis(name)
        image = q * e * q.inverse()
        signs.append(1 if image == e else -1)
    return tuple(signs)


def is_special(q: Quat) -> bool:
    nonzero = [c for c in q if c]
    return len(nonzero) == 2 and all(c.a == 0 and abs(c.b) == Fraction(1, 2) for c in nonzero)
