import random
from fractions import Fraction
from math import comb

import pytest

from weylskew.exactnum import ParseError
from weylskew.ncalg import (
    AlgebraError,
    AlgebraMismatch,
    TerminationError,
    UngradedError,
    center_basis,
    confluence_check,
    graded_dimension,
    multiply,
    normal_form,
    normal_monomials,
    polynomial_ring,
    preset_algebra,
    presentation_from_text,
    specialize_z,
)

KINDS = ("B_n", "C_n", "Exterior_n", "CnShriek", "BnShriek", "A_n")


def random_poly(rng, P, max_deg=2, terms=3):
    out = P.zero()
    gens = P.generators
    for _ in range(rng.randint(1, terms)):
        word = [rng.choice(gens) for _ in range(rng.randint(0, max_deg))]
        out = out + normal_form(word, P, rng.randint(-3, 3))
    return out


# differential operator model of B_1: X = x, Y = -z^2 d/dx, Z = z, acting on Q[x, z]
def _op(name, poly):
    out = {}
    for (i, j), c in poly.items():
        if name == "X":
            key, val = (i + 1, j), c
        elif name == "Z":
            key, val = (i, j + 1), c
        else:
            if i == 0:
                continue
            key, val = (i - 1, j + 2), -c * i
        out[key] = out.get(key, 0) + val
    return {k: v for k, v in out.items() if v}


def apply_word(word, poly):
    for name in reversed(word):
        poly = _op(name, poly)
    return poly


def apply_poly(p, f):
    total = {}
    for word, c in p.terms.items():
        img = apply_word([p.algebra.generators[i] for i in word], f)
        for k, v in img.items():
            total[k] = total.get(k, 0) + Fraction(int(c.coeffs[0].numerator), int(c.coeffs[0].denominator)) * v
    return {k: v for k, v in total.items() if v}


def test_preset_b1_rules():
    B = preset_algebra("B_n", 1)
    assert B.generators == ("X", "Y", "Z")
    assert str(normal_form(["Y", "X"], B)) == "X*Y - Z^2"
    assert str(normal_form(["Z", "X"], B)) == "X*Z"
    assert str(normal_form(["Z", "Y"], B)) == "Y*Z"


def test_preset_polynomial_two_pairs():
    C = preset_algebra("C_n", 2)
    assert len(C.generators) == 4 and not C.power_rules
    for rhs in C.swap_rules.values():
        assert len(rhs) == 1 and rhs[0][0] == 1


def test_preset_shriek_rules():
    S = preset_algebra("BnShriek", 1)
    assert str(normal_form(["Y", "X"], S)) == "-X*Y"
    assert str(normal_form(["Z", "X"], S)) == "-X*Z"
    assert normal_form(["X", "X"], S).is_zero()
    assert normal_form(["Y", "Y"], S).is_zero()
    assert str(normal_form(["Z", "Z"], S)) == "-X*Y"


def test_normal_form_examples():
    B = preset_algebra("B_n", 1)
    assert str(normal_form(["Y", "Y", "X"], B)) == "X*Y^2 - 2*Y*Z^2"
    assert normal_form(["X", "X"], preset_algebra("Exterior_n", 1)).is_zero()


def test_multiply_examples():
    B = preset_algebra("B_n", 1)
    X, Y = B.gen("X"), B.gen("Y")
    assert str(X * Y) == "X*Y"
    assert str(Y * X) == "X*Y - Z^2"
    a = B.parse("X*Y + 3*Z")
    assert B.one() * a == a
    C = polynomial_ring(["X", "Y"])
    assert str(C.parse("(X+Y)^2")) == "X^2 + 2*X*Y + Y^2"


def test_errors():
    with pytest.raises(ParseError):
        preset_algebra("B_n", 1).parse("Q*X")
    with pytest.raises(AlgebraMismatch):
        multiply(preset_algebra("B_n", 1).gen("X"), polynomial_ring(["X"]).gen("X"))
    with pytest.raises(UngradedError):
        graded_dimension(preset_algebra("A_n", 1), 2)
    with pytest.raises(AlgebraError):
        preset_algebra("B_n", 0)


def test_termination_guard_rejects_cyclic_rules():
    with pytest.raises(TerminationError):
        presentation_from_text(["X", "Y"], {"Y*X": "X*Y", "X*Y": "2*Y*X"})


def test_confluence_examples():
    assert confluence_check(preset_algebra("B_n", 2))["resolved"]
    assert confluence_check(preset_algebra("BnShriek", 1))["resolved"]


def test_graded_dimension_examples():
    assert graded_dimension(preset_algebra("B_n", 1), 2) == 6
    assert [graded_dimension(preset_algebra("BnShriek", 1), d) for d in range(5)] == [1, 3, 3, 1, 0]
    assert [graded_dimension(preset_algebra("Exterior_n", 2), d) for d in range(5)] == [1, 4, 6, 4, 1]


def test_pbw_count_matches_monomial_count():
    for n in (1, 2):
        P = preset_algebra("B_n", n)
        for d in range(6):
            assert len(normal_monomials(P, d)) == comb(d + 2 * n, 2 * n)


def test_center_examples():
    B1, B2 = preset_algebra("B_n", 1), preset_algebra("B_n", 2)
    assert [str(b) for b in center_basis(B1, 2)] == ["Z^2"]
    assert [str(b) for b in center_basis(B2, 1)] == ["Z"]
    C = preset_algebra("C_n", 1)
    for d in range(4):
        assert len(center_basis(C, d)) == graded_dimension(C, d)


def test_specialize_examples():
    B = preset_algebra("B_n", 1)
    yx = B.parse("Y*X")
    one = specialize_z(yx, 1)
    assert str(one) == "X*Y - 1" and one.algebra.kind == "A_n"
    zero = specialize_z(yx, 0)
    assert str(zero) == "X*Y" and zero.algebra.kind == "C_n"
    assert str(specialize_z(B.parse("Z^3"), 5)) == "125"


def random_homogeneous(rng, P, d, terms=3):
    out = P.zero()
    for _ in range(rng.randint(1, terms)):
        word = [rng.choice(P.generators) for _ in range(d)]
        out = out + normal_form(word, P, rng.randint(-3, 3))
    return out


@pytest.mark.parametrize("kind", KINDS)
def test_associativity_random_triples(kind):
    rng = random.Random(KINDS.index(kind))
    for i in range(500):
        P = preset_algebra(kind, 1 + i % 2)
        degs = rng.choice([(1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 1), (0, 2, 2), (2, 2, 0)])
        a, b, c = (random_homogeneous(rng, P, d) for d in degs)
        assert (a * b) * c == a * (b * c)


def test_specialization_is_multiplicative():
    rng = random.Random(5)
    count = 0
    for n in (1, 2):
        B = preset_algebra("B_n", n)
        for _ in range(90):
            a, b = random_poly(rng, B), random_poly(rng, B)
            for c in (0, 1, -2):
                assert specialize_z(a * b, c) == specialize_z(a, c) * specialize_z(b, c)
                count += 1
    assert count >= 500


def test_normal_form_is_idempotent():
    rng = random.Random(8)
    for kind in KINDS:
        P = preset_algebra(kind, 2)
        for _ in range(40):
            word = [rng.choice(P.generators) for _ in range(rng.randint(0, 5))]
            p = normal_form(word, P)
            for w, c in p.terms.items():
                assert P.is_normal(w)
                assert normal_form([P.generators[i] for i in w], P, c) == P.monomial(w).scale(c)


def test_normal_forms_agree_with_operator_model():
    # an independent faithful representation of B_1 on Q[x, z]
    rng = random.Random(21)
    B = preset_algebra("B_n", 1)
    probes = [{(0, 0): 1}, {(3, 1): 2}, {(5, 0): 1, (1, 2): -3}]
    for _ in range(150):
        word = [rng.choice("XYZ") for _ in range(rng.randint(1, 6))]
        nf = normal_form(word, B)
        for f in probes:
            assert apply_poly(nf, f) == apply_word(word, f)
