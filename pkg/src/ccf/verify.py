"""Every mechanical check of the model, grouped by scope, and the run report."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from . import __version__, braid, catalog, formula
from .groups import (
    FiniteGroup,
    GroupHom,
    automorphism_group,
    center,
    find_section,
    hom_from_generators,
    inner_automorphism_group,
    is_exact,
    is_normal,
    isomorphic,
    quotient,
    semidirect_product,
)
from .quaternion import ONE_Q, Quat, RatioConvention, jordan_product, jordan_ratio, label
from .scalar import HALF, ScalarQ

PLAIN, STAR = RatioConvention.PLAIN, RatioConvention.STAR
I, J, K = Quat.basis("i"), Quat.basis("j"), Quat.basis("k")

STATUSES = ("pass", "fail", "discrepancy", "skipped")
SCOPES = ("cf", "sequences", "aut", "braid", "matrix-iso", "jordan")


@dataclass
class CheckResult:
    id: str
    status: str
    summary: str
    payload: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {"id": self.id, "status": self.status, "summary": self.summary, "payload": self.payload}
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class RunReport:
    scope: str
    conventions: list[str]
    checks: list[CheckResult]
    version: str = __version__

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def counts(self) -> dict[str, int]:
        return {s: sum(1 for c in self.checks if c.status == s) for s in STATUSES}

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "tool_version": self.version,
            "scope": self.scope,
            "conventions": self.conventions,
            "counts": self.counts(),
            "checks": [c.to_json(timing) for c in self.checks],
        }
        if timing:
            out["total_seconds"] = round(sum(c.seconds for c in self.checks), 4)
        return out

    def markdown(self) -> str:
        lines = [
            f"# ccf verify {self.scope}",
            "",
            f"conventions: {', '.join(self.conventions)}; "
            + ", ".join(f"{n} {s}" for s, n in self.counts().items() if n),
        ]
        for c in self.checks:
            lines.append(f"- {c.id}: {c.status}. {c.summary}")
        flagged = [c for c in self.checks if c.status in ("discrepancy", "fail")]
        if flagged:
            lines += ["", "## Discrepancies and failures", ""]
            for c in flagged:
                lines.append(f"- **{c.id}** ({c.status}): {c.summary}")
        return "\n".join(lines) + "\n"


def _result(id: str, ok: bool, summary: str, payload: dict | None = None, bad: str = "fail") -> CheckResult:
    return CheckResult(id, "pass" if ok else bad, summary, payload or {})


# registry: (scope, per-convention?, function)
_CHECKS: list[tuple[str, bool, Callable]] = []


def check(scope: str, per_convention: bool = False):
    def register(fn):
        _CHECKS.append((scope, per_convention, fn))
        return fn

    return register


def _hom_payload(f: GroupHom) -> dict:
    return dict(sorted(f.as_dict().items()))


def _ids_labels(G: FiniteGroup, ids: Iterable[int]) -> list[str]:
    return [G.labels[g] for g in sorted(ids)]


# -- jordan -------------------------------------------------------------------


@check("jordan")
def jordan_table():
    cases = [(ONE_Q, ONE_Q, ONE_Q)] + [(e, e, -ONE_Q) for e in (I, J, K)] + [(I, J, Quat()), (J, K, Quat()), (K, I, Quat())]
    ok = all(jordan_product(u, v) == w and jordan_product(v, u) == w for u, v, w in cases)
    return _result("jordan.product.table", ok, "{1,1}=1, {i,i}={j,j}={k,k}=-1, {i,j}={j,k}={k,i}=0")


@check("jordan")
def anti_hom():
    O = catalog.build("2O").elements
    ok = all((u * v).conj() == v.conj() * u.conj() for u in O for v in O)
    return _result("jordan.conjugation.anti-hom", ok, "(uv)* = v*u* on all 48x48 pairs of 2O")


@check("jordan", per_convention=True)
def conj_transport(conv):
    O = catalog.build("2O").elements
    ok = all(jordan_ratio(u, v, conv).conj() == jordan_ratio(u.conj(), v.conj(), conv) for u in O for v in O)
    return _result(f"jordan.ratio.conj-transport.{conv.value}", ok, "{u:v}* = {u*:v*} on all 2O pairs")


@check("jordan", per_convention=True)
def bilinear(conv):
    O = catalog.build("2O").elements
    n = len(O)
    ok = True
    for a, u in enumerate(O):
        u2 = O[(a * 7 + 5) % n]
        for v in O:
            r = lambda x, y: jordan_ratio(x, y, conv)
            ok &= r(u + u2, v) == r(u, v) + r(u2, v)
            ok &= r(v, u + u2) == r(v, u) + r(v, u2)
    return _result(f"jordan.ratio.bilinear.{conv.value}", ok, "additive in both arguments on all 2O pairs")


def random_quat(rng: random.Random) -> Quat:
    def coord():
        return ScalarQ(Fraction(rng.randint(-9, 9), rng.randint(1, 6)), Fraction(rng.randint(-9, 9), rng.randint(1, 6)))

    return Quat(coord(), coord(), coord(), coord())


@check("jordan")
def ratio_identity():
    rng = random.Random(2020)
    corrected = inverse_exp = 0
    witness = None
    for _ in range(1000):
        u, v = random_quat(rng), random_quat(rng)
        while not v:
            v = random_quat(rng)
        lhs = jordan_product(u, v.conj())
        if lhs == jordan_product(u, v.inverse()).scale(v.norm2()):
            corrected += 1
        if lhs == jordan_product(u, v.inverse()).scale(v.norm2().inverse()):
            inverse_exp += 1
        elif witness is None:
            witness = (label(u), label(v))
    return [
        _result(
            "jordan.ratio-identity.corrected",
            corrected == 1000,
            f"{{u,v*}} = |v|^2 {{u,v^-1}} on {corrected}/1000 random nonzero quaternions",
        ),
        CheckResult(
            "jordan.ratio-identity.inverse-exponent",
            "discrepancy" if inverse_exp < 1000 else "pass",
            f"the form {{u,v*}} = |v|^-2 {{u,v^-1}} holds on {inverse_exp}/1000 samples; it needs |v| = 1",
            {"witness_u_v": list(witness) if witness else None},
        ),
    ]


@check("jordan")
def nonassociative():
    for u, v, w in itertools.product((ONE_Q, I, J, K), repeat=3):
        a = jordan_product(u, jordan_product(v, w))
        b = jordan_product(jordan_product(u, v), w)
        if a != b:
            return _result(
                "jordan.nonassociative",
                True,
                f"{{{label(u)},{{{label(v)},{label(w)}}}}} = {label(a)} but {{{{{label(u)},{label(v)}}},{label(w)}}} = {label(b)}",
                {"triple": [label(u), label(v), label(w)]},
            )
    return _result("jordan.nonassociative", False, "no witness triple found in Q")


@check("jordan", per_convention=True)
def expansion(conv):
    total = good = 0
    for quad in itertools.product(formula.q_units(), repeat=4):
        try:
            ok = formula.ratio_expansion_check(*quad, conv)
        except formula.InadmissibleQuadruple:
            continue
        total += 1
        good += ok
    return _result(f"jordan.expansion.{conv.value}", good == total, f"bilinear expansion holds on {good}/{total} admissible quadruples")


@check("jordan")
def ratio_sign():
    one = ONE_Q
    ref_lhs, ref_rhs = (J - K).scale(HALF), -(I + J).scale(HALF)
    plain = formula.cf_sides(one, I, J, K, PLAIN)
    star = formula.cf_sides(one, I, J, K, STAR)
    consistent = plain == (ref_lhs, ref_rhs) and star == (-ref_lhs, -ref_rhs)
    return CheckResult(
        "jordan.ratio-sign",
        "discrepancy" if consistent else "fail",
        "reference values (j-k)/2 and -(i+j)/2 come from the unconjugated ratio; the conjugated one flips both signs",
        {
            "plain": [label(x) for x in plain],
            "star": [label(x) for x in star],
            "reference": [label(ref_lhs), label(ref_rhs)],
        },
    )


# -- cf -----------------------------------------------------------------------


@check("cf", per_convention=True)
def quadruple_1ijk(conv):
    r = formula.cf_check(ONE_Q, I, J, K, conv)
    ok = r.holds
    if conv is PLAIN:
        ok &= r.lhs == (J - K).scale(HALF) and r.rhs == -(I + J).scale(HALF)
    return _result(
        f"cf.quadruple.1ijk.{conv.value}",
        ok,
        r.describe() + f"; lambda(lhs)={label(r.transported)}",
        {"lhs": label(r.lhs), "rhs": label(r.rhs)},
    )


@check("cf")
def lambda_table():
    got = {n: label(formula.lambda_map(Quat.basis(n))) for n in ("1", "i", "j", "k")}
    ok = got == {"1": "1", "i": "k", "j": "-i", "k": "j"}
    return _result("cf.lambda.table", ok, ", ".join(f"λ({n})={v}" for n, v in got.items()))


@check("cf")
def lambda_composition():
    O = catalog.build("2O").elements
    ok = all(formula.lambda_map(q) == formula.lambda_by_composition(q) for q in O)
    return _result("cf.lambda.composition", ok, "λ equals σ², then I, then * on all of 2O")


@check("cf")
def lambda_anti():
    O = catalog.build("2O").elements
    lam = formula.lambda_map
    ok = all(lam(u * v) == lam(v) * lam(u) for u in O for v in O)
    return _result("cf.lambda.anti-automorphism", ok, "λ(uv) = λ(v)λ(u) on all 48x48 pairs of 2O")


@check("cf")
def lambda_preserves():
    G = catalog.build("2O")
    specials = set(catalog.special_elements())
    perm = [G.id_of(formula.lambda_map(q)) if q in G.index else None for q in G.elements]
    ok = None not in perm and {formula.lambda_map(s) for s in specials} == specials
    order = 1
    if ok:
        x = perm[:]
        while x != list(range(G.order)):
            x = [perm[y] for y in x]
            order += 1
    return _result(
        "cf.lambda.preserves",
        ok,
        f"λ permutes 2O and the 24 special elements; order {order} as a permutation of 2O",
        {"order": order},
    )


@check("cf", per_convention=True)
def ratio_transport(conv):
    O = catalog.build("2O").elements
    lam = formula.lambda_map
    ok = all(lam(jordan_ratio(u, v, conv)) == jordan_ratio(lam(u), lam(v), conv) for u in O for v in O)
    return _result(f"cf.lambda.ratio-transport.{conv.value}", ok, "λ{u:v} = {λu:λv} on all 2O pairs")


@check("cf")
def sigma_extends():
    f = formula.cyclic_to_aut_q()
    Q = catalog.build("Q")
    A = formula.aut_q()
    inner_I = formula.inner(I)
    ok = f is not None and inner_I(I) == I and inner_I(J) == -J and inner_I(K) == -K
    sigma = A.elements[f.images[1]] if f else None
    ok &= sigma is not None and [Q.labels[sigma[Q.by_label(n)]] for n in "ijk"] == ["j", "k", "i"]
    return _result("cf.sigma-extends", ok, "I fixes i and negates j, k; σ ↦ (ijk) extends to a homomorphism C3 → Aut(Q)")


@lru_cache(maxsize=None)
def _scan(conv: RatioConvention) -> formula.ScanReport:
    return formula.cf_scan(conv)


@check("cf", per_convention=True)
def scan(conv):
    rep = _scan(conv)
    one = (ONE_Q, I, J, K)
    ok = one in rep.holds and rep.inadmissible + rep.fails + len(rep.holds) == 4096
    return _result(
        f"cf.scan.{conv.value}",
        ok,
        f"4096 quadruples: {rep.inadmissible} inadmissible, {len(rep.holds)} hold, {rep.fails} fail; (1,i,j,k) holds",
        rep.counts,
    )


@check("cf", per_convention=True)
def scan_equivariance(conv):
    rep = _scan(conv)
    A = formula.aut_q()
    stab = formula.holds_set_stabilizer(rep)
    holds = set(rep.holds)
    commuting = [
        n for n, alpha in enumerate(A.elements)
        if all(formula.aut_q_action(alpha, formula.lambda_map(q)) == formula.lambda_map(formula.aut_q_action(alpha, q))
               for q in (I, J, K))
    ]
    witness = None
    for n, alpha in enumerate(A.elements):
        if n in stab:
            continue
        for quad in rep.holds:
            moved = tuple(formula.aut_q_action(alpha, q) for q in quad)
            if moved not in holds:
                witness = {"automorphism": A.labels[n], "quadruple": [label(q) for q in quad], "image": [label(q) for q in moved]}
                break
        break
    summary = f"holds-set is fixed by {len(stab)} of 24 automorphisms of Q"
    if witness:
        summary += f"; e.g. {witness['automorphism']} sends holding ({','.join(witness['quadruple'])}) to failing ({','.join(witness['image'])})"
    return _result(
        f"cf.scan.equivariance.{conv.value}",
        len(stab) == A.order,
        summary,
        {
            "stabilizer": [A.labels[n] for n in stab],
            "stabilizer_is_centralizer_of_lambda": stab == commuting,
            "witness": witness,
        },
    )


# -- groups and sequences -----------------------------------------------------


def _onto(G: FiniteGroup, N, K: FiniteGroup, name: str) -> GroupHom:
    """Projection ``G -> G/N`` followed by an isomorphism onto ``K``."""
    Qg, proj = quotient(G, N)
    iso = isomorphic(Qg, K)
    if not iso:
        raise AssertionError(f"{G.name}/N is not isomorphic to {K.name}: {iso.reason}")
    f = proj.then(iso)
    return GroupHom(f.source, f.target, f.images, name)


def _inclusion(H: FiniteGroup, G: FiniteGroup, name: str = "inclusion") -> GroupHom:
    return GroupHom(H, G, tuple(G.id_of(h) for h in H.elements), name)


def _minus_one(G: FiniteGroup) -> GroupHom:
    C2 = catalog.build("C2")
    return GroupHom(C2, G, (0, G.id_of(-ONE_Q)), "±1")


def _seq_check(id: str, maps: list[GroupHom], text: str) -> CheckResult:
    rep = is_exact(maps)
    return _result(id, rep.exact, f"{text}: {rep.summary()}")


def _split_check(id: str, psi: GroupHom, expect_split: bool) -> CheckResult:
    rho = find_section(psi)
    if rho:
        return _result(id, expect_split, f"section {psi.target.name} → {psi.source.name} found", {"section": _hom_payload(rho)})
    if rho.assignments_checked:
        why = f"all {rho.assignments_checked} generator-image assignments fail"
    else:
        why = "some generator has no preimage of compatible order"
    return _result(
        id,
        not expect_split,
        f"no section: {why}",
        {"generators": _ids_labels(psi.target, rho.generators), "assignments_checked": rho.assignments_checked},
    )


def _iso_check(id: str, G: FiniteGroup, H: FiniteGroup) -> CheckResult:
    f = isomorphic(G, H)
    if f:
        return _result(id, True, f"{G.name} ≅ {H.name} (explicit isomorphism)", {"generator_images": _gen_images(f)})
    return _result(id, False, f"{G.name} ≇ {H.name}: {f.reason}")


def _gen_images(f: GroupHom) -> dict:
    from .groups import minimal_generating_sequence

    return {f.source.labels[g]: f.target.labels[f.images[g]] for g in minimal_generating_sequence(f.source)}


def twist_c3_on_v():
    V, C3 = catalog.build("V"), catalog.build("C3")
    AutV = automorphism_group(V)
    cyc = AutV.id_of(tuple(V.by_label(x) for x in ("1", "J", "K", "I")))
    return hom_from_generators(C3, AutV, [1], [cyc], "σ: I→J→K")


def v_semidirect_c3():
    V, C3 = catalog.build("V"), catalog.build("C3")
    return semidirect_product(V, C3, twist_c3_on_v(), "V⋊C3")


@check("sequences")
def catalog_orders():
    names = {"Q": 8, "2T": 24, "2O": 48, "V": 4, "S3": 6, "A4": 12, "S4": 24, "SL2(2)": 6, "SL2(3)": 24, "SL2(5)": 120}
    got = {n: catalog.build(n).order for n in names}
    cyc = all(catalog.build(f"C{n}").order == n and max(catalog.build(f"C{n}").element_orders) == n for n in range(1, 9))
    return _result("catalog.orders", got == names and cyc, ", ".join(f"|{n}|={v}" for n, v in got.items()) + "; C1..C8 cyclic", got)


@check("sequences")
def decomposition():
    T = set(catalog.build("2T").elements)
    S = catalog.special_elements()
    O = catalog.build("2O")
    ok = len(S) == 24 and not (T & set(S)) and T | set(S) == set(O.elements) and all(s.norm2() == 1 for s in S)
    closed = all(u * v in O.index for u in O.elements for v in O.elements)
    by_closure = catalog.binary_octahedral_by_closure()
    same = set(by_closure.elements) == set(O.elements)
    return [
        _result("catalog.2O.decomposition", ok and closed, "2O = 2T ⊔ 24 special unit elements; closed under multiplication (48x48)"),
        _result("catalog.2O.closure-cross-check", same, "closure of (1+i)/√2 and (1+i+j+k)/2 gives the same 48 elements"),
    ]


@check("sequences")
def v_is_c2_squared():
    V = catalog.build("V")
    P = catalog.product_group("C2", "C2")
    images = {(0, 0): "1", (1, 0): "I", (0, 1): "J", (1, 1): "K"}
    f = GroupHom(P, V, tuple(V.by_label(images[p]) for p in P.elements), "C2×C2 → V")
    return _result("table.row.V.c2-squared", f.is_isomorphism(), "C2×C2 → V, (1,0)↦I, (0,1)↦J, (1,1)↦K is an isomorphism")


@check("sequences")
def v_semidirect_square():
    P = v_semidirect_c3()
    V = catalog.build("V")
    x = P.pair(V.by_label("I"), 2)
    got = P.group.mul(x, x)
    want = P.pair(V.by_label("J"), 1)
    return _result("table.v-semidirect-c3.square", got == want, f"(I,σ²)·(I,σ²) = {P.group.labels[got]} in V⋊C3")


@check("sequences")
def row_s3():
    C3, S3, C2 = (catalog.build(n) for n in ("C3", "S3", "C2"))
    into = hom_from_generators(C3, S3, [1], [S3.id_of(catalog.perm_from_cycles(3, [1, 2, 3]))], "C3→S3")
    sign = GroupHom(S3, C2, tuple(catalog.parity(p) for p in S3.elements), "sign")
    AutC3 = automorphism_group(C3)
    inversion = AutC3.id_of((0, 2, 1))
    twist = hom_from_generators(C2, AutC3, [1], [inversion], "inversion")
    return [
        _seq_check("table.row.S3.sequence", [into, sign], "1 → C3 → S3 → C2 → 1"),
        _split_check("table.row.S3.split", sign, True),
        _iso_check("table.row.S3.semidirect", semidirect_product(C3, C2, twist, "C3⋊C2").group, S3),
    ]


@check("sequences")
def row_q():
    Q, V = catalog.build("Q"), catalog.build("V")
    inner = GroupHom(Q, V, tuple(V.id_of(catalog.q_inner_sign(q)) for q in Q.elements), "q ↦ α_q")
    return [
        _seq_check("table.row.Q.sequence", [_minus_one(Q), inner], "1 → C2 → Q → V → 1"),
        _split_check("table.row.Q.nonsplit", inner, False),
    ]


def _v_into(G: FiniteGroup) -> GroupHom:
    V = catalog.build("V")
    n = len(G.elements[0])
    a = G.id_of(catalog.perm_from_cycles(n, [1, 2], [3, 4]))
    b = G.id_of(catalog.perm_from_cycles(n, [1, 3], [2, 4]))
    return hom_from_generators(V, G, [V.by_label("I"), V.by_label("J")], [a, b], "V→" + G.name)


@check("sequences")
def row_a4():
    A4, C3 = catalog.build("A4"), catalog.build("C3")
    v = _v_into(A4)
    p = _onto(A4, v.image(), C3, "A4→C3")
    return [
        _seq_check("table.row.A4.sequence", [v, p], "1 → V → A4 → C3 → 1"),
        _split_check("table.row.A4.split", p, True),
        _iso_check("table.row.A4.semidirect", v_semidirect_c3().group, A4),
    ]


@check("sequences")
def row_s4():
    S4, S3, V = catalog.build("S4"), catalog.build("S3"), catalog.build("V")
    v = _v_into(S4)
    p = _onto(S4, v.image(), S3, "S4→S3")
    AutV = automorphism_group(V)
    twist = isomorphic(S3, AutV)
    return [
        _seq_check("table.row.S4.sequence", [v, p], "1 → V → S4 → S3 → 1"),
        _split_check("table.row.S4.split", p, True),
        _iso_check("table.row.S4.semidirect", semidirect_product(V, S3, twist, "V⋊S3").group, S4),
    ]


@check("sequences")
def row_2t():
    Q, T, A4, C3 = (catalog.build(n) for n in ("Q", "2T", "A4", "C3"))
    qin = _inclusion(Q, T)
    p3 = _onto(T, qin.image(), C3, "2T→C3")
    pa = _onto(T, center(T), A4, "2T→A4")
    twist = formula.cyclic_to_aut_q()
    seq = is_exact([_minus_one(T), pa])
    sec = find_section(pa)
    return [
        _seq_check("table.row.2T.Q-sequence", [qin, p3], "1 → Q → 2T → C3 → 1"),
        _split_check("table.row.2T.split", p3, True),
        _iso_check("table.row.2T.semidirect", semidirect_product(Q, C3, twist, "Q⋊C3").group, T),
        _result(
            "table.row.2T.sequence",
            seq.exact,
            f"1 → C2 → 2T → A4 → 1: {seq.summary()}; {'split' if sec else 'non-split'} (computed)",
            {"split": bool(sec)},
        ),
    ]


@check("sequences")
def row_2o():
    Q, O, S3, T = (catalog.build(n) for n in ("Q", "2O", "S3", "2T"))
    Z = center(O)
    quo, proj = quotient(O, Z)
    to_t = isomorphic(quo, T)
    kind = catalog.identify(quo)
    qin = _inclusion(Q, O)
    p = _onto(O, qin.image(), S3, "2O→S3")
    only_c2 = list(_order2_normal(O))
    return [
        CheckResult(
            "table.row.2O.sequence",
            "pass" if to_t else "discrepancy",
            f"1 → C2 → 2O → 2T → 1: the only normal C2 is the centre; 2O/C2 ≅ {kind}, "
            + ("≅ 2T" if to_t else f"not 2T ({to_t.reason})"),
            {
                "normal_order2_subgroups": len(only_c2),
                "quotient_type": kind,
                "isomorphic_to_2T": bool(to_t),
                "c2_to_2O_exact_into_projection": is_exact([_minus_one(O), proj]).exact,
            },
        ),
        _seq_check("table.row.2O.Q-sequence", [qin, p], "1 → Q → 2O → S3 → 1"),
        _split_check("table.row.2O.nonsplit", p, False),
    ]


def _order2_normal(G: FiniteGroup):
    for g in range(G.order):
        if G.element_orders[g] == 2 and is_normal(G, {0, g}):
            yield frozenset({0, g})


# -- automorphisms ------------------------------------------------------------


@check("aut")
def aut_q_type():
    A = formula.aut_q()
    return _iso_check("aut.Q.order-and-type", A, catalog.build("S4"))


@check("aut")
def inner_q():
    Q = catalog.build("Q")
    In, conj = inner_automorphism_group(Q)
    A = formula.aut_q()
    inner_ids = {A.id_of(alpha) for alpha in In.elements}
    normal = is_normal(A, inner_ids)
    iso = isomorphic(In, catalog.build("V"))
    ok = bool(iso) and normal and conj.kernel() == center(Q)
    return _result("aut.Q.inner", ok, f"In(Q) has order {In.order}, ≅ V, kernel of q ↦ α_q is the centre {{±1}}, normal in Aut(Q)")


@check("aut")
def aut_v():
    return _iso_check("aut.V.order-and-type", automorphism_group(catalog.build("V")), catalog.build("S3"))


@check("aut")
def aut_2t():
    return _iso_check("aut.2T.order-and-type", automorphism_group(catalog.build("2T")), catalog.build("S4"))


@check("aut")
def aut_2o():
    A = automorphism_group(catalog.build("2O"))
    claim = isomorphic(A, catalog.product_group("C2", "2T"))
    alt = isomorphic(A, catalog.product_group("C2", "S4"))
    if claim:
        status, summary = "pass", f"|Aut(2O)| = {A.order}, ≅ C2×2T as stated"
    else:
        status = "discrepancy"
        summary = f"|Aut(2O)| = {A.order}; not ≅ C2×2T ({claim.reason}); " + ("≅ C2×S4 (explicit isomorphism)" if alt else "not ≅ C2×S4")
    payload = {"order": A.order, "iso_C2xT2": bool(claim), "iso_C2xS4": bool(alt)}
    if alt:
        payload["witness_C2xS4"] = _gen_images(alt)
    return CheckResult("aut.2O.paper-claim", status, summary, payload)


@check("aut", per_convention=True)
def aut_preserves(conv):
    A = formula.aut_q()
    specials = catalog.special_elements()
    sset = set(specials)
    ratios = {(u, v): jordan_ratio(u, v, conv) for u in specials for v in specials}
    ok = True
    for alpha in A.elements:
        act = {s: formula.aut_q_action(alpha, s) for s in specials}
        ok &= set(act.values()) == sset
        if not ok:
            break
        for (u, v), r in ratios.items():
            ok &= formula.aut_q_action(alpha, r) == ratios[act[u], act[v]]
    return _result(
        f"aut.Q.preserves-specials-and-ratios.{conv.value}",
        ok,
        "all 24 automorphisms of Q permute the special elements and preserve their Jordan ratios",
    )


# -- matrices and braids ------------------------------------------------------


@check("matrix-iso")
def sl2_isos():
    return [
        _iso_check("matrix.SL2(2).iso-S3", catalog.build("SL2(2)"), catalog.build("S3")),
        _iso_check("matrix.SL2(3).iso-2T", catalog.build("SL2(3)"), catalog.build("2T")),
        _result("matrix.SL2(5).order", catalog.build("SL2(5)").order == 120, "|SL2(F5)| = 120 (constructor only)"),
    ]


def sl2_mod2_to_s3() -> GroupHom:
    """SL2(F2) → S3 sending the images of a and b to (1 2) and (2 3)."""
    M, S3 = catalog.build("SL2(2)"), catalog.build("S3")
    a = M.id_of(tuple(x % 2 for x in braid.sl2_image(braid.word("a"))))
    b = M.id_of(tuple(x % 2 for x in braid.sl2_image(braid.word("b"))))
    f = hom_from_generators(M, S3, [a, b], [S3.id_of(catalog.perm_from_cycles(3, [1, 2])), S3.id_of(catalog.perm_from_cycles(3, [2, 3]))])
    if f is None or not f.is_isomorphism():
        raise AssertionError("generator assignment does not give an isomorphism")
    return f


def random_word(rng: random.Random, max_len: int = 12) -> braid.BraidWord:
    letters = [(rng.choice("ab"), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]
    return braid.BraidWord(tuple(letters))


@check("braid")
def braid_checks():
    w = braid.word
    A, B = braid.burau(w("a")), braid.burau(w("b"))
    tw = braid.burau(braid.full_twist(1))
    central = braid.mat_mul(tw, A) == braid.mat_mul(A, tw) and braid.mat_mul(tw, B) == braid.mat_mul(B, tw)
    minus_id, ident = (-1, 0, 0, -1), (1, 0, 0, 1)
    rng = random.Random(3)
    rep_ok = True
    for _ in range(50):
        u, v = random_word(rng), random_word(rng)
        rep_ok &= braid.burau(u * v) == braid.mat_mul(braid.burau(u), braid.burau(v))
        rep_ok &= braid.sl2_image(u * v) == braid.int_mat_mul(braid.sl2_image(u), braid.sl2_image(v))
    f = sl2_mod2_to_s3()
    M, S3 = f.source, f.target
    agree = 0
    for _ in range(100):
        x = random_word(rng, 20)
        m = M.id_of(tuple(e % 2 for e in braid.sl2_image(x)))
        agree += S3.elements[f.images[m]] == braid.braid_permutation(x)
    twist_img = braid.sl2_image(braid.full_twist(1))
    return [
        _result("braid.relation", braid.burau(w("aba")) == braid.burau(w("bab")), "burau(aba) = burau(bab)"),
        _result("braid.full-twist.words", braid.braid_equal(w("abaaba"), w("ababab")), "(aba)² = (ab)³"),
        _result("braid.full-twist.central", central, "Burau image of the full twist commutes with both generators"),
        _result("braid.representation", rep_ok, "Burau and SL2(Z) maps are multiplicative on 50 random word pairs"),
        _result("braid.sl2.full-twist", braid.sl2_image(w("ab") ** 3) == minus_id, f"sl2((ab)³) = {list(braid.sl2_image(w('ab') ** 3))} = -I"),
        _result("braid.sl2.full-twist-squared", braid.sl2_image(w("ab") ** 6) == ident, "sl2((ab)⁶) = I"),
        _result(
            "braid.sl2.generators",
            braid.sl2_image(w("a")) == (1, 1, 0, 1) and braid.sl2_image(w("B")) == (1, 0, 1, 1),
            "a ↦ [[1,1],[0,1]] and b⁻¹ ↦ [[1,0],[1,1]], the standard generators of SL2(Z)",
        ),
        _result("braid.composite-S3", agree == 100, f"B3 → SL2(Z) → SL2(F2) ≅ S3 agrees with the strand permutation on {agree}/100 random words"),
        CheckResult(
            "braid.kernel.paper-claim",
            "discrepancy" if twist_img != ident else "pass",
            f"full twist maps to {list(twist_img)}, so it is not in the kernel of B3 → SL2(Z); its square maps to I",
            {"full_twist_image": list(twist_img), "square_image": list(braid.sl2_image(braid.full_twist(2)))},
        ),
    ]


# -- running ------------------------------------------------------------------


def conventions_for(flag: str) -> list[RatioConvention]:
    return {"plain": [PLAIN], "star": [STAR], "both": [PLAIN, STAR]}[flag]


def run(scope: str = "all", convention: str = "both") -> RunReport:
    if scope != "all" and scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    convs = conventions_for(convention)
    results: list[CheckResult] = []
    for sc, per_conv, fn in _CHECKS:
        if scope != "all" and sc != scope:
            continue
        calls = [(fn, (c,)) for c in convs] if per_conv else [(fn, ())]
        for f, args in calls:
            start = time.perf_counter()
            out = f(*args)
            elapsed = time.perf_counter() - start
            out = out if isinstance(out, list) else [out]
            for r in out:
                r.seconds = elapsed / len(out)
            results.extend(out)
    results.sort(key=lambda r: r.id)
    ids = [r.id for r in results]
    if len(set(ids)) != len(ids):
        raise AssertionError("duplicate check ids")
    return RunReport(scope, [c.value for c in convs], results)
