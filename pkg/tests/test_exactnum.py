import cmath
import random
from fractions import Fraction

import pytest

from weylskew.exactnum import (
    Cyclotomic,
    CycMatrix,
    IncompatibleOrders,
    ParseError,
    SingularMatrix,
    cyc_embed,
    cyclotomic_polynomial,
    nullspace,
    parse_scalar,
    rank,
    zeta,
)

ORDERS = list(range(1, 25))


def random_cyc(rng: random.Random, order: int) -> Cyclotomic:
    terms = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(1, order + 1))]
    out = Cyclotomic.rational(0, order)
    for k, c in enumerate(terms):
        out = out + zeta(order, k) * Cyclotomic.rational(c)
    return out


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-8 * max(1.0, abs(a), abs(b))


def test_zeta_squared_is_minus_one():
    assert zeta(4) * zeta(4) == -1


def test_inverse_of_root_of_unity():
    for n in ORDERS:
        assert zeta(n).inverse() == zeta(n, n - 1)


def test_sum_of_fifth_roots_vanishes():
    total = sum((zeta(5, k) for k in range(5)), Cyclotomic.rational(0))
    assert total.is_zero()


def test_embedding_examples():
    assert cyc_embed(4, zeta(2)) == zeta(4, 2)
    half = cyc_embed(6, Cyclotomic.rational(Fraction(3, 2)))
    assert half.coeffs[0] == Fraction(3, 2) and not any(half.coeffs[1:])
    assert cyc_embed(12, zeta(3)) ** 3 == 1


def test_embedding_needs_divisibility():
    with pytest.raises(IncompatibleOrders):
        cyc_embed(4, zeta(3))


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.rational(0).inverse()


def test_cyclotomic_polynomial_values():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    # degree is Euler phi
    for n in ORDERS:
        phi = sum(1 for k in range(1, n + 1) if __import__("math").gcd(k, n) == 1)
        assert len(cyclotomic_polynomial(n)) - 1 == phi


def test_field_axioms_against_complex_evaluation():
    rng = random.Random(1234)
    checked = 0
    for _ in range(1200):
        n = rng.choice(ORDERS)
        m = rng.choice(ORDERS)
        a, b, c = random_cyc(rng, n), random_cyc(rng, m), random_cyc(rng, n)
        za, zb = a.to_complex(), b.to_complex()
        assert close((a * b).to_complex(), za * zb)
        assert close((a + b).to_complex(), za + zb)
        assert close(a.conj().to_complex(), za.conjugate())
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == 1
            assert close(a.inverse().to_complex(), 1 / za)
        checked += 1
    assert checked >= 1000


def test_embedding_preserves_value():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.choice(ORDERS)
        k = rng.randint(1, 3)
        x = random_cyc(rng, n)
        y = cyc_embed(n * k, x)
        assert y == x and close(y.to_complex(), x.to_complex())


def test_zeta_matches_exponential():
    for n in ORDERS:
        for k in range(n):
            assert close(zeta(n, k).to_complex(), cmath.exp(2j * cmath.pi * k / n))


def test_scalar_text_round_trip():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.choice(ORDERS)
        x = random_cyc(rng, n)
        assert parse_scalar(str(x), max(n, 1)) == x


def test_scalar_parse_errors():
    with pytest.raises(ParseError):
        parse_scalar("w + 1", 4)
    with pytest.raises(ParseError):
        parse_scalar("z", 1)


def test_matrix_examples():
    assert CycMatrix([[0, 1], [-1, 0]]).det() == 1
    assert CycMatrix.diag([-1, -1]).eigenvalue_one_test() is False
    assert CycMatrix.diag([1, -1]).eigenvalue_one_test() is True


def test_singular_inverse():
    with pytest.raises(SingularMatrix):
        CycMatrix([[1, 2], [2, 4]]).inverse()


def random_matrix(rng, size, order):
    return CycMatrix([[random_cyc(rng, order) if rng.random() < 0.6 else 0 for _ in range(size)] for _ in range(size)])


def test_determinant_is_multiplicative():
    rng = random.Random(99)
    for _ in range(60):
        size = rng.randint(1, 4)
        order = rng.choice([1, 3, 4, 8, 12])
        a, b = random_matrix(rng, size, order), random_matrix(rng, size, order)
        assert (a * b).det() == a.det() * b.det()
        if not a.det().is_zero():
            assert a * a.inverse() == CycMatrix.identity(size)


def test_rank_and_nullspace():
    cols = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1}]
    assert rank(cols) == 2
    kernel = nullspace(cols)
    assert len(kernel) == 1
    for vec in kernel:
        combo = {}
        for j, c in vec.items():
            for r, v in cols[j].items():
                combo[r] = combo.get(r, 0) + c * v
        assert all(Cyclotomic.rational(0) == v for v in combo.values())
