"""Acceptance criteria 1-12, one test each.

Each test prints a ``criterion N: PASS|FAIL`` line (collected again in the
terminal summary). Timed blocks must finish in 1 s each (5 s for Aut(2O))
and in 10 s together.
"""
import itertools
import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from ccf import braid, catalog, formula, verify
from ccf.groups import automorphism_group, inner_automorphism_group, isomorphic
from ccf.quaternion import I, J, K, ONE_Q, RatioConvention, jordan_product, jordan_ratio
from ccf.scalar import HALF

PLAIN, STAR = RatioConvention.PLAIN, RatioConvention.STAR
GOLDEN = Path(__file__).parent / "golden"
TOTAL_BUDGET = 10.0

RESULTS: dict[int, str] = {}
TIMINGS: list[float] = []


class Criterion:
    def __init__(self, number: int):
        self.number = number
        self.notes: list[str] = []

    def timed(self, what: str, fn, limit: float = 1.0):
        start = time.perf_counter()
        value = fn()
        elapsed = time.perf_counter() - start
        TIMINGS.append(elapsed)
        self.notes.append(f"{what} {elapsed:.2f}s")
        assert elapsed < limit, f"{what} took {elapsed:.2f}s (limit {limit}s)"
        return value


@contextmanager
def criterion(number: int, title: str):
    c = Criterion(number)
    try:
        yield c
    except BaseException as exc:
        line = f"criterion {number}: FAIL  {title}  ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        RESULTS[number] = line
        print(line)
        raise
    line = f"criterion {number}: PASS  {title}  [{', '.join(c.notes)}]"
    RESULTS[number] = line
    print(line)


def statuses(report):
    return {c.id: c for c in report.checks}


# 1 -------------------------------------------------------------------------------


def test_criterion_01_worked_example():
    with criterion(1, "cf(1,i,j,k) values and both conventions") as c:
        lhs, rhs = c.timed("cf_sides", lambda: formula.cf_sides(ONE_Q, I, J, K, PLAIN))
        assert lhs == (J - K).scale(HALF)
        assert rhs == -(I + J).scale(HALF)
        assert formula.lambda_map(lhs) == rhs
        for conv in (PLAIN, STAR):
            assert c.timed(f"cf_check {conv.value}", lambda: formula.cf_check(ONE_Q, I, J, K, conv)).holds


# 2 -------------------------------------------------------------------------------


def test_criterion_02_lambda():
    with criterion(2, "lambda table and anti-multiplicativity on 2O") as c:
        lam = formula.lambda_map
        assert (lam(I), lam(J), lam(K), lam(ONE_Q)) == (K, -I, J, ONE_Q)
        O = catalog.build("2O").elements
        assert c.timed("48x48 anti-hom", lambda: all(lam(u * v) == lam(v) * lam(u) for u in O for v in O))


# 3 -------------------------------------------------------------------------------


def test_criterion_03_semidirect_square():
    with criterion(3, "(I,σ²)·(I,σ²) = (J,σ) in V⋊C3") as c:
        P = c.timed("build V⋊C3", verify.v_semidirect_c3)
        V = catalog.build("V")
        x = P.pair(V.by_label("I"), 2)
        assert P.group.mul(x, x) == P.pair(V.by_label("J"), 1)


# 4 -------------------------------------------------------------------------------


def test_criterion_04_orders_and_decomposition():
    with criterion(4, "orders, 24 special elements, 2T ⊔ specials = 2O, closure") as c:
        Q, T, O = (c.timed(f"build {n}", lambda n=n: catalog.build(n)) for n in ("Q", "2T", "2O"))
        assert (Q.order, T.order, O.order) == (8, 24, 48)
        S = catalog.special_elements()
        assert len(set(S)) == 24
        assert not set(T.elements) & set(S)
        assert set(T.elements) | set(S) == set(O.elements)
        assert c.timed("48x48 closure", lambda: all(u * v in O.index for u in O.elements for v in O.elements))


# 5 -------------------------------------------------------------------------------


def test_criterion_05_automorphisms():
    with criterion(5, "Aut(Q) ≅ S4, In(Q) ≅ V, Aut(2T) ≅ S4, Aut(2O) decided") as c:
        S4 = catalog.build("S4")
        AQ = c.timed("Aut(Q)", lambda: automorphism_group(catalog.build("Q")))
        assert AQ.order == 24 and c.timed("Aut(Q) ≅ S4", lambda: isomorphic(AQ, S4))
        In, _ = inner_automorphism_group(catalog.build("Q"))
        assert isomorphic(In, catalog.build("V"))
        AT = c.timed("Aut(2T)", lambda: automorphism_group(catalog.build("2T")))
        assert AT.order == 24 and isomorphic(AT, S4)

        def aut_2o():
            A = automorphism_group(catalog.build("2O"))
            return A, isomorphic(A, catalog.product_group("C2", "2T")), isomorphic(A, catalog.product_group("C2", "S4"))

        A, vs_c2t, vs_c2s4 = c.timed("Aut(2O) vs C2×2T and C2×S4", aut_2o, limit=5.0)
        assert A.order == 48
        # a definitive answer: exactly one candidate holds, with a witness; the other is refuted
        assert bool(vs_c2t) != bool(vs_c2s4)
        witness = vs_c2t or vs_c2s4
        assert witness.is_isomorphism()
        refuted = vs_c2s4 if not vs_c2s4 else vs_c2t
        assert refuted.reason
        c.notes.append(f"Aut(2O) ≅ {witness.target.name}; not {'C2×S4' if vs_c2t else 'C2×2T'} ({refuted.reason})")


# 6 -------------------------------------------------------------------------------


def test_criterion_06_table():
    with criterion(6, "exact sequences, splittings, non-splittings, 2O/C2 type") as c:
        report = c.timed("sequences scope", lambda: verify.run("sequences"), limit=TOTAL_BUDGET)
        by_id = statuses(report)
        must_pass = [
            "table.row.S3.sequence", "table.row.S3.split", "table.row.S3.semidirect",
            "table.row.Q.sequence", "table.row.Q.nonsplit",
            "table.row.A4.sequence", "table.row.A4.split", "table.row.A4.semidirect",
            "table.row.S4.sequence", "table.row.S4.split", "table.row.S4.semidirect",
            "table.row.2T.Q-sequence", "table.row.2T.split", "table.row.2T.semidirect", "table.row.2T.sequence",
            "table.row.2O.Q-sequence", "table.row.2O.nonsplit", "table.row.V.c2-squared",
        ]
        for cid in must_pass:
            assert by_id[cid].status == "pass", f"{cid}: {by_id[cid].summary}"
        for cid in ("table.row.S3.split", "table.row.A4.split", "table.row.S4.split", "table.row.2T.split"):
            assert "section" in by_id[cid].payload
        row = by_id["table.row.2O.sequence"]
        assert row.status in ("pass", "discrepancy")
        assert row.payload["quotient_type"] == "S4" and row.payload["isomorphic_to_2T"] is False
        c.notes.append(f"2O/C2 ≅ {row.payload['quotient_type']}")


# 7 -------------------------------------------------------------------------------


def test_criterion_07_matrix_groups():
    with criterion(7, "SL2(F2) ≅ S3, SL2(F3) ≅ 2T with witnesses") as c:
        f = c.timed("SL2(2) ≅ S3", lambda: isomorphic(catalog.build("SL2(2)"), catalog.build("S3")))
        g = c.timed("SL2(3) ≅ 2T", lambda: isomorphic(catalog.build("SL2(3)"), catalog.build("2T")))
        assert f and f.is_isomorphism()
        assert g and g.is_isomorphism()


# 8 -------------------------------------------------------------------------------


def test_criterion_08_braids():
    with criterion(8, "braid relation, full twist, SL2(Z) images, S3 composite") as c:
        w = braid.word

        def run():
            assert braid.burau(w("aba")) == braid.burau(w("bab"))
            assert braid.braid_equal(w("abaaba"), w("ababab"))
            assert braid.sl2_image(w("ab") ** 3) == (-1, 0, 0, -1)
            assert braid.sl2_image(w("ab") ** 6) == (1, 0, 0, 1)
            tw = braid.burau(braid.full_twist(1))
            for g in "ab":
                m = braid.burau(w(g))
                assert braid.mat_mul(tw, m) == braid.mat_mul(m, tw)
            f = verify.sl2_mod2_to_s3()
            rng = random.Random(2024)
            for _ in range(100):
                x = verify.random_word(rng, 20)
                m = f.source.id_of(tuple(e % 2 for e in braid.sl2_image(x)))
                assert f.target.elements[f(m)] == braid.braid_permutation(x)

        c.timed("braid suite", run)


# 9 -------------------------------------------------------------------------------


def test_criterion_09_scan():
    with criterion(9, "cf scan: classification, goldens, Aut(Q)-invariance of holds-set") as c:
        A = formula.aut_q()
        reports = {}
        for conv in (PLAIN, STAR):
            rep = c.timed(f"scan {conv.value}", lambda: formula.cf_scan(conv))
            assert rep.inadmissible + rep.fails + len(rep.holds) == 4096
            assert (ONE_Q, I, J, K) in rep.holds
            text = json.dumps(rep.to_json(), indent=2, ensure_ascii=False, sort_keys=True) + "\n"
            assert text == (GOLDEN / f"cf_scan_{conv.value}.json").read_text(encoding="utf-8")
            reports[conv] = rep

        failures = []
        for conv, rep in reports.items():
            holds = set(rep.holds)

            def moved_off():
                bad = []
                for n, alpha in enumerate(A.elements):
                    moved = {tuple(formula.aut_q_action(alpha, q) for q in quad) for quad in holds}
                    if moved != holds:
                        bad.append(A.labels[n])
                return bad

            bad = c.timed(f"Aut(Q) invariance {conv.value}", moved_off)
            if bad:
                failures.append(f"{conv.value}: moved by {len(bad)} of {A.order} automorphisms, e.g. {bad[0]}")
        assert not failures, "holds-set not Aut(Q)-invariant; " + "; ".join(failures)


# 10 ------------------------------------------------------------------------------


def test_criterion_10_algebra():
    with criterion(10, "expansion, conjugation identities, corrected identity, nonassociativity") as c:
        Q8 = catalog.build("Q").elements
        O = catalog.build("2O").elements

        for conv in (PLAIN, STAR):
            def expansion():
                n = 0
                for quad in itertools.product(Q8, repeat=4):
                    try:
                        assert formula.ratio_expansion_check(*quad, conv), quad
                        n += 1
                    except formula.InadmissibleQuadruple:
                        pass
                return n

            assert c.timed(f"expansion {conv.value}", expansion) > 0
            assert c.timed(
                f"ratio conj {conv.value}",
                lambda: all(jordan_ratio(u, v, conv).conj() == jordan_ratio(u.conj(), v.conj(), conv) for u in O for v in O),
            )
        assert c.timed("(uv)* = v*u*", lambda: all((u * v).conj() == v.conj() * u.conj() for u in O for v in O))

        def corrected():
            rng = random.Random(7)
            for _ in range(1000):
                u, v = verify.random_quat(rng), verify.random_quat(rng)
                if not v:
                    continue
                assert jordan_product(u, v.conj()) == jordan_product(u, v.inverse()).scale(v.norm2())
            return True

        c.timed("corrected identity x1000", corrected)
        u, v, w = I, I, J
        assert jordan_product(jordan_product(u, v), w) != jordan_product(u, jordan_product(v, w))
        found = statuses(verify.run("jordan", "plain"))["jordan.nonassociative"]
        assert found.status == "pass" and found.payload["triple"]
        c.notes.append("witness " + ",".join(found.payload["triple"]))


# 11 ------------------------------------------------------------------------------


def test_criterion_11_parser():
    import test_expr

    with criterion(11, "parser round-trip, fuzz, STAR oracle, ccf eval cf(1,i,j,k)"):
        test_expr.test_round_trip()
        test_expr.test_fuzz_no_panic()
        test_expr.test_fuzz_bytes()
        test_expr.test_star_oracle()
        proc = subprocess.run([sys.executable, "-m", "ccf.cli", "eval", "cf(1,i,j,k)"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.strip() == "true; lhs=(j-k)/2 rhs=-(i+j)/2"


# 12 ------------------------------------------------------------------------------


def _strip(text: str) -> dict:
    d = json.loads(text)
    d.pop("total_seconds", None)
    for check in d["checks"]:
        check.pop("seconds", None)
    return d


def test_criterion_12_determinism(tmp_path):
    with criterion(12, "ccf verify all --json stable modulo timing"):
        texts = []
        for n in range(2):
            path = tmp_path / f"run{n}.json"
            subprocess.run([sys.executable, "-m", "ccf.cli", "verify", "all", "--json", str(path)], capture_output=True)
            texts.append(path.read_text(encoding="utf-8"))
        a, b = (_strip(t) for t in texts)
        assert a == b
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
        assert a == json.loads((GOLDEN / "verify_all.json").read_text(encoding="utf-8"))


def test_time_budget():
    """Sum of the timed blocks above (run after them in file order)."""
    if len(RESULTS) < 10:
        pytest.skip("run the whole acceptance module to check the total budget")
    total = sum(TIMINGS)
    print(f"timed blocks total {total:.2f}s")
    assert total < TOTAL_BUDGET
