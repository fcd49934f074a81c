import random
from fractions import Fraction

import pytest

from toroidalg.cycfield import (
    Cyc, CycDivisionError, CycDomainError, cyclotomic_poly, euler_phi,
    field_arith, multiplicative_order, root_of_unity,
)


def test_cyclotomic_polys_small():
    # ascending coefficients
    assert list(cyclotomic_poly(1)) == [-1, 1]
    assert list(cyclotomic_poly(2)) == [1, 1]
    assert list(cyclotomic_poly(4)) == [1, 0, 1]       # x^2 + 1
    assert list(cyclotomic_poly(3)) == [1, 1, 1]
    assert list(cyclotomic_poly(12)) == [1, 0, -1, 0, 1]


def test_root_of_unity_trivial():
    assert root_of_unity(1, 0) == Cyc.rational(1)
    assert root_of_unity(2, 1) == Cyc.rational(-1)


def test_i_squared_is_minus_one():
    # i*i in Q(i), cross-checked against the minimal polynomial x^2 + 1:
    # the product must be the residue of x^2, i.e. -1.
    i = root_of_unity(4, 1)
    assert i * i == Cyc.rational(-1)
    assert i * i + 1 == Cyc.rational(0)


def test_root_of_unity_orders():
    for n in (1, 2, 3, 4, 8, 12):
        z = root_of_unity(n)
        assert multiplicative_order(z) == n
    assert multiplicative_order(root_of_unity(12, 8)) == 3  # 12/gcd(12,8)


def test_zero_conductor_rejected():
    with pytest.raises(CycDomainError):
        root_of_unity(0, 1)


def test_additive_inverse_and_rational_inverse():
    i = Cyc.zeta(4)
    assert field_arith(i, -i, "add").is_zero()
    assert field_arith(Cyc.rational(Fraction(1, 2)), Cyc.rational(2), "mul") == 1


def test_division_golden():
    # 1/(1+i) = (1-i)/2, verified by multiplying back
    i = Cyc.zeta(4)
    q = Cyc.rational(1) / (1 + i)
    assert q == (1 - i) * Fraction(1, 2)
    assert q * (1 + i) == 1


def test_division_by_zero_carries_operands():
    i = Cyc.zeta(4)
    with pytest.raises(CycDivisionError) as exc:
        _ = i / Cyc.rational(0)
    assert exc.value.num == i


def _random_scalar(rng, n):
    phi = euler_phi(n)
    return Cyc(n, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(phi)])


def test_field_axioms_random():
    rng = random.Random(20240817)
    for n in (1, 2, 3, 4, 8, 12):
        for _ in range(25):
            a, b, c = (_random_scalar(rng, n) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == 0
            if not a.is_zero():
                assert a * a.inv() == 1


def test_embedding_commutes_with_arithmetic():
    rng = random.Random(7)
    for n, m in ((2, 4), (3, 12), (4, 8), (4, 12)):
        for _ in range(20):
            a, b = _random_scalar(rng, n), _random_scalar(rng, n)
            assert (a + b).embed(m) == a.embed(m) + b.embed(m)
            assert (a * b).embed(m) == a.embed(m) * b.embed(m)
            if not b.is_zero():
                assert (a / b).embed(m) == a.embed(m) / b.embed(m)


def test_mixed_conductor_promotion():
    z3 = Cyc.zeta(3)
    i = Cyc.zeta(4)
    w = z3 * i
    assert w.n == 12
    assert w ** 12 == 1
    assert multiplicative_order(w) == 12


def test_power_no_smaller_period():
    for n in (3, 4, 8, 12):
        z = root_of_unity(n)
        acc = Cyc.rational(1)
        for k in range(1, n):
            acc = acc * z
            assert acc != 1
        assert acc * z == 1


def test_json_shape():
    x = Cyc.zeta(4) * Fraction(3, 2)
    d = x.to_json()
    assert d == {"conductor": 4, "coeffs": ["0/1", "3/2"]}
