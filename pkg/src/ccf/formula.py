"""The valence map, the anti-automorphism lambda, and the canonical-formula identity.

Values live in the Lipschitz units Q = {±1, ±i, ±j, ±k}; valences
``phi(x, a) = (x - a)/√2`` land in the special elements of 2·O.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import catalog
from .groups import FiniteGroup, GroupHom, automorphism_group, hom_from_generators
from .quaternion import ONE_Q, Quat, RatioConvention, jordan_ratio, label
from .scalar import HALF, INV_SQRT2

PLAIN, STAR = RatioConvention.PLAIN, RatioConvention.STAR

I, J, K = Quat.basis("i"), Quat.basis("j"), Quat.basis("k")


class DegenerateValence(ValueError):
    pass


class InadmissibleQuadruple(ValueError):
    def __init__(self, pair: tuple[str, str], quad):
        super().__init__(pair, quad)
        self.pair = pair
        self.quad = quad

    def __str__(self) -> str:
        # built lazily: scans raise thousands of these
        labels = ", ".join(label(q) for q in self.quad)
        return f"inadmissible quadruple ({labels}): {self.pair[0]} = ±{self.pair[1]}"


def q_units() -> list[Quat]:
    """Elements of Q in the catalog's id order."""
    return list(catalog.build("Q").elements)


def in_q(q: Quat) -> bool:
    return q in catalog.build("Q").index


@dataclass(frozen=True)
class Valence:
    value: Quat
    x: Quat
    a: Quat


def phi(x: Quat, a: Quat) -> Valence:
    """``(x - a)/√2``; requires ``x != ±a`` so the result is a unit of 2·O."""
    if x == a or x == -a:
        raise DegenerateValence(f"phi({label(x)}, {label(a)}) is not a unit")
    v = (x - a).scale(INV_SQRT2)
    if in_q(x) and in_q(a) and not catalog.is_special(v):
        raise AssertionError("valence outside the special elements")
    return Valence(v, x, a)


# -- lambda -----------------------------------------------------------------

LAMBDA_BASIS = {"1": ONE_Q, "i": K, "j": -I, "k": J}


def _linear(images: tuple[Quat, Quat, Quat, Quat], q: Quat) -> Quat:
    out = Quat()
    for c, img in zip(q.q, images):
        if c:
            out = out + img.scale(c)
    return out


def lambda_map(q: Quat) -> Quat:
    """Anti-automorphism with 1 -> 1, i -> k, j -> -i, k -> j, extended linearly."""
    n, d = q.n, q.d
    # q0 + q1 i + q2 j + q3 k  ->  q0 - q2 i + q3 j + q1 k
    return Quat.raw(n[0:2] + (-n[4], -n[5]) + n[6:8] + n[2:4], d)


def sigma(q: Quat) -> Quat:
    """Cyclic automorphism i -> j -> k -> i."""
    n = q.n
    return Quat.raw(n[0:2] + n[6:8] + n[2:6], q.d)


def inner(h: Quat):
    def alpha(q: Quat) -> Quat:
        return h * q * h.inverse()

    return alpha


def lambda_by_composition(q: Quat) -> Quat:
    """``sigma^2``, then conjugation by ``i`` (the automorphism I), then ``*``."""
    return inner(I)(sigma(sigma(q))).conj()


# -- the formula ------------------------------------------------------------


def check_admissible(x: Quat, a: Quat, y: Quat, b: Quat) -> None:
    a_inv = a.inverse()
    for (u, nu), (v, nv) in (((x, "x"), (a, "a")), ((y, "y"), (b, "b")), ((x, "x"), (b, "b")), ((a_inv, "a^-1"), (y, "y"))):
        if u == v or u == -v:
            raise InadmissibleQuadruple((nu, nv), (x, a, y, b))


def cf_sides(x: Quat, a: Quat, y: Quat, b: Quat, convention: RatioConvention = PLAIN) -> tuple[Quat, Quat]:
    """``{phi_x(a) : phi_y(b)}`` and ``{phi_x(b) : phi_{a^-1}(y)}``."""
    check_admissible(x, a, y, b)
    lhs = _valence_ratio(x, a, y, b, convention)
    rhs = _valence_ratio(x, b, a.inverse(), y, convention)
    return lhs, rhs


@lru_cache(maxsize=8192)
def _valence_ratio(x, a, y, b, convention) -> Quat:
    return jordan_ratio(phi(x, a).value, phi(y, b).value, convention)


@dataclass(frozen=True)
class CFResult:
    holds: bool
    lhs: Quat
    rhs: Quat
    transported: Quat

    def describe(self) -> str:
        return f"{'true' if self.holds else 'false'}; lhs={label(self.lhs)} rhs={label(self.rhs)}"


def cf_check(x: Quat, a: Quat, y: Quat, b: Quat, convention: RatioConvention = PLAIN, lam=lambda_map) -> CFResult:
    lhs, rhs = cf_sides(x, a, y, b, convention)
    moved = lam(lhs)
    return CFResult(moved == rhs, lhs, rhs, moved)


def ratio_expansion_check(x: Quat, a: Quat, y: Quat, b: Quat, convention: RatioConvention = PLAIN) -> bool:
    """Direct ratio against ``½[({x:y} + {a:b}) - ({a:y} + {x:b})]``."""
    check_admissible(x, a, y, b)
    r = lambda u, v: jordan_ratio(u, v, convention)
    direct = r(phi(x, a).value, phi(y, b).value)
    expanded = ((r(x, y) + r(a, b)) - (r(a, y) + r(x, b))).scale(HALF)
    return direct == expanded


@dataclass
class ScanReport:
    convention: RatioConvention
    inadmissible: int = 0
    fails: int = 0
    holds: list[tuple[Quat, Quat, Quat, Quat]] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        return {"inadmissible": self.inadmissible, "holds": len(self.holds), "fails": self.fails}

    def to_json(self) -> dict:
        return {
            "convention": self.convention.value,
            "counts": self.counts,
            "holds": [[label(q) for q in quad] for quad in self.holds],
        }


def cf_scan(convention: RatioConvention = PLAIN, lam=lambda_map) -> ScanReport:
    """Classify all 8^4 quadruples over Q (catalog id order)."""
    report = ScanReport(convention)
    for quad in itertools.product(q_units(), repeat=4):
        try:
            result = cf_check(*quad, convention, lam=lam)
        except InadmissibleQuadruple:
            report.inadmissible += 1
            continue
        if result.holds:
            report.holds.append(quad)
        else:
            report.fails += 1
    return report


# -- Aut(Q) -------------------------------------------------------------------


@lru_cache(maxsize=None)
def aut_q() -> FiniteGroup:
    return automorphism_group(catalog.build("Q"))


@lru_cache(maxsize=None)
def _basis_images(alpha: tuple[int, ...]) -> tuple[Quat, ...]:
    Q = catalog.build("Q")
    return tuple(Q.elements[alpha[Q.id_of(e)]] for e in (ONE_Q, I, J, K))


def aut_q_action(alpha: tuple[int, ...], q: Quat) -> Quat:
    """Linear extension to all quaternions of an automorphism of Q given as an id map."""
    return _linear(_basis_images(alpha), q)


def aut_q_element(images: dict[str, str]) -> int:
    """Id in Aut(Q) of the automorphism with the given images, e.g. ``{"i": "j", "j": "k"}``."""
    Q, A = catalog.build("Q"), aut_q()
    for n, alpha in enumerate(A.elements):
        if all(Q.labels[alpha[Q.by_label(src)]] == dst for src, dst in images.items()):
            return n
    raise KeyError(images)


def cyclic_to_aut_q() -> GroupHom | None:
    """C3 -> Aut(Q) sending the generator to the cycle (ijk)."""
    C3, A = catalog.build("C3"), aut_q()
    return hom_from_generators(C3, A, [1], [aut_q_element({"i": "j", "j": "k", "k": "i"})], "sigma")


def holds_set_stabilizer(report: ScanReport) -> list[int]:
    """Ids of automorphisms of Q mapping the holds-set onto itself."""
    A = aut_q()
    holds = set(report.holds)
    out = []
    for n, alpha in enumerate(A.elements):
        moved = {tuple(aut_q_action(alpha, q) for q in quad) for quad in holds}
        if moved == holds:
            out.append(n)
    return out


def conjugated_lambda(alpha: tuple[int, ...]):
    """``alpha o lambda o alpha^-1`` as a function on quaternions."""
    A = aut_q()
    inv = A.elements[A.inverse[A.id_of(alpha)]]
    return lambda q: aut_q_action(alpha, lambda_map(aut_q_action(inv, q)))
