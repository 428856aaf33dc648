import random
from math import comb

import pytest

from weylskew.exactnum import CycMatrix, zeta
from weylskew.grouprep import builtin_group, group_closure
from weylskew.ncalg import normal_monomials, polynomial_ring, preset_algebra
from weylskew.skewalg import (
    ActionError,
    NotAnAutomorphism,
    SkewElement,
    action_from_matrices,
    averaging,
    check_substitution,
    corner_basis,
    corner_product_check,
    fixed_subspace_basis,
    ideal_growth_probe,
    invariants_basis,
    perm_skew_center,
    reynolds_idempotent,
    skew_center_truncated,
    skew_multiply,
    trivial_action,
)


def scalar_action(n, k):
    names = [f"X{i + 1}" for i in range(k)]
    G = group_closure([CycMatrix.diag([zeta(n)] * k)])
    return action_from_matrices(polynomial_ring(names), G, names)


def plane(group="cyclic:2"):
    return action_from_matrices(preset_algebra("C_n", 1), builtin_group(group), ["X", "Y"])


def b1(group="cyclic:2"):
    return action_from_matrices(preset_algebra("B_n", 1), builtin_group(group), ["X", "Y"], ["Z"])


def random_skew(rng, action, terms=4, max_deg=2):
    P = action.algebra
    out = SkewElement(action, {})
    for _ in range(rng.randint(2, terms)):
        d = rng.randint(0, max_deg)
        word = rng.choice(normal_monomials(P, d))
        g = rng.randrange(action.group.size)
        out = out + SkewElement.word(action, word, g, rng.choice([-2, -1, 1, 3]))
    return out


def test_valid_actions():
    plane()
    b1("binary_dihedral:2")
    b1("binary_tetrahedral")


def test_non_automorphism_is_named():
    B = preset_algebra("B_n", 1)
    with pytest.raises(NotAnAutomorphism, match="Y\\*X"):
        check_substitution(B, CycMatrix.diag([2, 1]), ["X", "Y"], ["Z"])
    check_substitution(B, CycMatrix([[0, 1], [-1, 0]]), ["X", "Y"], ["Z"])


def test_swapping_x_and_y_breaks_the_weyl_relation():
    B = preset_algebra("B_n", 1)
    G = group_closure([CycMatrix([[0, 1], [1, 0]])])
    with pytest.raises(NotAnAutomorphism):
        action_from_matrices(B, G, ["X", "Y"], ["Z"])


def test_action_shape_errors():
    P = preset_algebra("B_n", 1)
    with pytest.raises(ActionError):
        action_from_matrices(P, builtin_group("cyclic:2"), ["X", "Y"])
    with pytest.raises(ActionError):
        action_from_matrices(P, builtin_group("cyclic:2"), ["X"], ["Y", "Z"])


def test_twist_rule_examples():
    act = scalar_action(2, 1)
    g = act.group.index_of(CycMatrix.diag([-1]))
    xg = SkewElement.word(act, (0,), g)
    assert skew_multiply(xg, xg) == SkewElement.from_poly(act, act.algebra.parse("-X1^2"))
    q = plane("binary_dihedral:2")
    for a in range(8):
        for b in range(8):
            lhs = SkewElement.group_element(q, a) * SkewElement.group_element(q, b)
            assert lhs == SkewElement.group_element(q, q.group.mul(a, b))
    act = b1()
    minus = act.group.index_of(CycMatrix.diag([-1, -1]))
    x = SkewElement.from_poly(act, act.algebra.gen("X"))
    g = SkewElement.group_element(act, minus)
    assert g * x == (x * g).scale(-1)


def test_reynolds_examples():
    triv = trivial_action(polynomial_ring(["X"]), builtin_group("cyclic:1"))
    assert reynolds_idempotent(triv) == SkewElement.group_element(triv, 0)
    act = b1()
    e = reynolds_idempotent(act)
    assert len(e.data) == 2 and e * e == e
    q = plane("binary_dihedral:2")
    e = reynolds_idempotent(q)
    assert len(e.data) == 8
    assert all(c == zeta(1) / 8 for c in e.data.values())
    for h in range(8):
        assert e * SkewElement.group_element(q, h) == e
        assert SkewElement.group_element(q, h) * e == e


def test_invariants_examples():
    assert [str(p) for p in invariants_basis(plane(), 2)] == ["X^2", "X*Y", "Y^2"]
    for act in (plane(), b1("cyclic:3"), scalar_action(3, 1)):
        assert [str(p) for p in invariants_basis(act, 0)] == ["1"]
    act = scalar_action(3, 1)
    assert [len(invariants_basis(act, d)) for d in range(1, 6)] == [0, 0, 1, 0, 0]


@pytest.mark.parametrize("group", ["cyclic:3", "cyclic:4", "binary_dihedral:2", "binary_tetrahedral"])
def test_invariants_agree_with_fixed_subspace(group):
    for act in (plane(group), b1(group)):
        for d in range(5):
            assert [str(p) for p in invariants_basis(act, d)] == [str(p) for p in fixed_subspace_basis(act, d)]


def test_averaging_is_a_projection():
    rng = random.Random(4)
    act = b1("binary_dihedral:2")
    P = act.algebra
    for _ in range(40):
        d = rng.randint(0, 4)
        p = P.zero()
        for _ in range(3):
            p = p + P.monomial(rng.choice(normal_monomials(P, d))).scale(rng.randint(-3, 3))
        avg = averaging(act, p)
        assert averaging(act, avg) == avg
        assert all(act.act(g, avg) == avg for g in range(act.group.size))


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_scalar_invariant_counts(n, k):
    act = scalar_action(n, k)
    for D in range(9 if k < 3 else 7):
        want = comb(D + k - 1, k - 1) if D % n == 0 else 0
        assert len(invariants_basis(act, D)) == want


def test_skew_associativity():
    rng = random.Random(17)
    actions = [b1("cyclic:4"), plane("binary_dihedral:2"), scalar_action(3, 2)]
    count = nonzero = 0
    for _ in range(110):
        for act in actions:
            a, b, c = (random_skew(rng, act) for _ in range(3))
            left = (a * b) * c
            assert left == a * (b * c)
            count += 1
            nonzero += bool(left)
    assert count >= 300 and nonzero > 250


def test_action_is_multiplicative():
    assert b1("binary_dihedral:3").check_multiplicative()
    assert plane("binary_tetrahedral").check_multiplicative()


def test_corner_examples():
    act = plane()
    for d in range(7):
        assert len(corner_basis(act, d)) == len(invariants_basis(act, d))
    triv = trivial_action(preset_algebra("C_n", 1), builtin_group("cyclic:1"))
    assert [len(corner_basis(triv, d)) for d in range(4)] == [1, 2, 3, 4]
    assert len(corner_basis(b1(), 2)) == 4
    assert corner_product_check(b1("cyclic:3"), 4)["pass"]


def test_center_examples():
    assert len(skew_center_truncated(plane(), 2)) == 3
    triv = trivial_action(preset_algebra("C_n", 1), builtin_group("cyclic:1"))
    assert len(skew_center_truncated(triv, 1)) == 2
    # trivial action of a nontrivial group: everything is central
    CX = polynomial_ring(["X"])
    flat = trivial_action(CX, builtin_group("cyclic:2"))
    assert len(skew_center_truncated(flat, 2)) == 2
    assert not flat.is_fixed_point_free()


def test_center_matches_invariants_for_sign_action():
    act = plane()
    for d in range(7):
        assert len(skew_center_truncated(act, d)) == len(invariants_basis(act, d))


def test_ideal_growth_examples():
    r = ideal_growth_probe(scalar_action(2, 1), 4)
    assert r["quotient_dims"] == [1, 0, 0, 0, 0]
    assert r["quotient_total"] <= 1 and r["stabilized_zero"] and r["first_zero_degree"] == 1
    triv = trivial_action(polynomial_ring(["X"]), builtin_group("cyclic:1"))
    assert ideal_growth_probe(triv, 3)["quotient_dims"] == [0, 0, 0, 0]
    r = ideal_growth_probe(plane(), 6)
    assert r["stabilized_zero"] and r["theorem_applies"]


def test_ideal_growth_when_other_generators_are_fixed():
    r = ideal_growth_probe(b1(), 4)
    assert r["fixes_other_generators"] and r["fixed_point_free"]
    assert r["quotient_dims"] == [1, 1, 0, 0, 0]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_permutation_skew_center(n):
    r = perm_skew_center(n)
    assert r["center_dim"] == 1
    assert r["simple"] and not r["proper_ideal_found"]
