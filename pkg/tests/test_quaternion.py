from fractions import Fraction

import pytest
from hypothesis import given

from ccf.quaternion import (
    I, J, K, ONE_Q, ZERO_Q, Quat, RatioConvention, jordan_product, jordan_ratio, label, quat_conj, quat_inv, quat_mul,
)
from ccf.scalar import HALF, INV_SQRT2, SQRT2, DivisionByZero, ScalarQ

from conftest import quats

PLAIN, STAR = RatioConvention.PLAIN, RatioConvention.STAR


def hamilton(u, v):
    # textbook component formula
    a1, b1, c1, d1 = u.q
    a2, b2, c2, d2 = v.q
    return Quat(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def test_basis_products():
    assert I * I == J * J == K * K == -ONE_Q
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K
    assert I * J * K == -ONE_Q


@given(quats(), quats())
def test_mul_matches_component_formula(u, v):
    assert quat_mul(u, v) == hamilton(u, v)


@given(quats(), quats(), quats())
def test_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(quats(), quats())
def test_conjugation_reverses_products(u, v):
    assert quat_conj(u * v) == quat_conj(v) * quat_conj(u)
    assert (u * v).norm2() == u.norm2() * v.norm2()


@given(quats(nonzero=True))
def test_inverse(q):
    assert q * quat_inv(q) == ONE_Q == quat_inv(q) * q


def test_zero_inverse():
    with pytest.raises(DivisionByZero):
        ZERO_Q.inverse()


def test_root_of_i():
    g = (ONE_Q + I).scale(INV_SQRT2)
    assert g * g == I
    assert g**8 == ONE_Q and g**4 == -ONE_Q


@given(quats(), quats())
def test_jordan_symmetric_bilinear(u, v):
    assert jordan_product(u, v) == jordan_product(v, u)
    assert jordan_product(u, v) == (u * v + v * u).scale(HALF)
    assert jordan_product(u + v, v) == jordan_product(u, v) + jordan_product(v, v)


@given(quats(), quats())
def test_ratio_conventions(u, v):
    assert jordan_ratio(u, v, PLAIN) == jordan_product(u, v)
    assert jordan_ratio(u, v, STAR) == jordan_product(u, v.conj())
    assert jordan_ratio(u, v, STAR).conj() == jordan_ratio(u.conj(), v.conj(), STAR)


@given(quats(), quats(nonzero=True))
def test_corrected_star_identity(u, v):
    assert jordan_product(u, v.conj()) == jordan_product(u, v.inverse()).scale(v.norm2())


def test_inverse_exponent_witness():
    u, v = ONE_Q, ONE_Q.scale(ScalarQ(2))
    assert jordan_product(u, v.conj()) != jordan_product(u, v.inverse()).scale(v.norm2().inverse())


def test_nonassociative_witness():
    assert jordan_product(jordan_product(I, I), J) == -J
    assert jordan_product(I, jordan_product(I, J)) == ZERO_Q


@pytest.mark.parametrize(
    "q, text",
    [
        (ONE_Q, "1"),
        (-I, "-i"),
        (ZERO_Q, "0"),
        ((ONE_Q + I).scale(INV_SQRT2), "(1+i)/√2"),
        ((ONE_Q - I - J - K).scale(HALF), "(1-i-j-k)/2"),
        (-(I + J).scale(HALF), "-(i+j)/2"),
        (ONE_Q.scale(SQRT2), "√2"),
        (I.scale(ScalarQ(1, 1)), "(1+√2)i"),
        ((I + J).scale(INV_SQRT2 * HALF), "(i+j)/(2√2)"),
    ],
)
def test_labels(q, text):
    assert label(q) == text


@given(quats())
def test_json_round_trip(q):
    assert Quat.from_json(q.to_json()) == q
    assert hash(Quat.from_json(q.to_json())) == hash(q)


def test_rational_coordinates():
    q = Quat(Fraction(1, 3), 0, Fraction(-2, 5), 7)
    assert q.q[2] == ScalarQ(Fraction(-2, 5))


def test_ratio_examples():
    assert jordan_ratio(ONE_Q, J, PLAIN) == J
    assert jordan_ratio(I, I, STAR) == ONE_Q
    assert jordan_ratio(I, I, PLAIN) == -ONE_Q


@given(quats(), quats(), quats())
def test_ratio_bilinear_random(u, v, w):
    for conv in (PLAIN, STAR):
        assert jordan_ratio(u + v, w, conv) == jordan_ratio(u, w, conv) + jordan_ratio(v, w, conv)
        assert jordan_ratio(w, u + v, conv) == jordan_ratio(w, u, conv) + jordan_ratio(w, v, conv)
