from math import comb

import pytest

from weylskew.exactnum import Cyclotomic, CycMatrix, zeta
from weylskew.grouprep import builtin_group, group_closure
from weylskew.ncalg import graded_dimension, polynomial_ring, preset_algebra
from weylskew.skewalg import GroupAction, action_from_matrices, trivial_action
from weylskew.structchk import (
    HypothesisError,
    NotGradeCompatible,
    automorphism_minor_check,
    automorphism_oracle,
    eta_map,
    group_algebra_tensor_iso,
    invariants_product_check,
    module_generation_witness,
    sample_automorphism_inputs,
    shriek_decomposition_check,
    skew_tensor_iso_check,
    symplectic_form,
    tensor_quotient_iso_check,
)
from weylskew.suite import scalar_group, weyl_action

ONE = Cyclotomic.rational(1)


def sign_on_line():
    return action_from_matrices(polynomial_ring(["X"]), scalar_group(2, 1), ["X"])


def test_minor_check_examples():
    assert automorphism_minor_check(CycMatrix.identity(2), [0, 0], 1, 1).passed
    r = automorphism_minor_check(CycMatrix([[0, 1], [-1, 0]]), [0, 0], 1, 1)
    assert r.passed and r.details["oracle_agreement"]
    r = automorphism_minor_check(CycMatrix.diag([2, 1]), [0, 0], 1, 1)
    assert not r.passed and r.details["oracle_agreement"]
    assert r.details["failures"] == [{"family": "xy_same", "columns": [1, 2], "value": "2", "expected": "1"}]


def test_minor_check_shape_error():
    with pytest.raises(ValueError):
        automorphism_minor_check(CycMatrix.identity(3), [0, 0], 1, 1)


def test_scaled_symplectic_matrices_are_automorphisms():
    for n in (1, 2):
        for lam in (ONE, ONE * 2, zeta(3)):
            # any matrix with A^T J A = lam^2 J works, e.g. lam times the identity
            A = CycMatrix([[lam if i == j else 0 for j in range(2 * n)] for i in range(2 * n)])
            r = automorphism_minor_check(A, [0] * (2 * n), lam, n)
            assert r.passed and automorphism_oracle(A, [0] * (2 * n), lam, n)
    assert symplectic_form(1) == CycMatrix([[0, 1], [-1, 0]])


def test_oracle_agreement_on_other_seeds():
    samples = sample_automorphism_inputs(60, seed=5)
    verdicts = [automorphism_minor_check(*s) for s in samples]
    assert all(r.details["oracle_agreement"] for r in verdicts)
    assert any(r.passed for r in verdicts) and any(not r.passed for r in verdicts)


def test_eta_examples():
    B1 = preset_algebra("B_n", 1)
    report, lam = eta_map(weyl_action("B_n", 4))
    assert report.passed and set(lam.values()) == {ONE}
    report, lam = eta_map(action_from_matrices(B1, scalar_group(4, 3), ["X", "Y", "Z"]))
    assert report.passed and report.details["image_order"] == 4 and report.details["kernel"] == [0]
    G = group_closure([CycMatrix.diag([zeta(4), zeta(4, 3), -1])])
    report, lam = eta_map(action_from_matrices(B1, G, ["X", "Y", "Z"]))
    assert report.passed and sorted(str(v) for v in set(lam.values())) == ["-1", "1"]
    assert report.details["kernel_index"] == 2


def test_eta_rejects_non_graded_images():
    B1 = preset_algebra("B_n", 1)
    fixed = [{(0,): ONE}, {(1,): ONE}, {(2,): ONE}]
    moved = [{(0,): ONE}, {(1,): ONE}, {(2,): ONE, (0,): ONE}]
    act = GroupAction(B1, builtin_group("cyclic:2"), [fixed, moved], check=False)
    with pytest.raises(NotGradeCompatible):
        eta_map(act)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2)])
def test_tensor_quotient(n, m):
    r = tensor_quotient_iso_check(n, m, 4)
    assert r.passed
    rows = r.details["degrees"]
    assert rows[0]["quotient_dim"] == 1
    assert [row["quotient_dim"] for row in rows] == [comb(d + 2 * (n + m), 2 * (n + m)) for d in range(5)]
    assert [row["target_dim"] for row in rows] == [graded_dimension(preset_algebra("B_n", n + m), d) for d in range(5)]


def test_group_algebra_tensor_examples():
    Z2, Q8, one = builtin_group("cyclic:2"), builtin_group("binary_dihedral:2"), builtin_group("cyclic:1")
    r = group_algebra_tensor_iso(Z2, Z2)
    assert r.passed and r.details["comparisons"] == 16
    assert group_algebra_tensor_iso(Z2, Q8).passed
    assert group_algebra_tensor_iso(one, Q8).passed


def test_skew_tensor_examples():
    line = sign_on_line()
    assert skew_tensor_iso_check(line, line, 4).passed
    assert skew_tensor_iso_check(line, trivial_action(polynomial_ring(["X"]), builtin_group("cyclic:1")), 3).passed
    assert skew_tensor_iso_check(weyl_action("B_n", 2), line, 3).passed


def test_invariants_product_examples():
    act = weyl_action("B_n", 2)
    r = invariants_product_check(act, act, 4)
    assert r.passed and r.details["degrees"][1]["invariants_dim"] == 1
    triv = trivial_action(preset_algebra("B_n", 1), builtin_group("cyclic:1"))
    r = invariants_product_check(triv, triv, 3)
    assert r.passed
    assert [row["invariants_dim"] for row in r.details["degrees"]] == [1, 5, 15, 35]
    with pytest.raises(HypothesisError):
        invariants_product_check(sign_on_line(), sign_on_line(), 2)


def test_shriek_decomposition_examples():
    r = shriek_decomposition_check(1, 4)
    rows = r.details["degrees"]
    assert r.passed
    assert [row["shriek_dim"] for row in rows[:4]] == [1, 3, 3, 1]
    assert [row["exterior_dim"] for row in rows[:4]] == [1, 2, 1, 0]
    assert [row["shifted_dim"] for row in rows[:4]] == [0, 1, 2, 1]
    assert shriek_decomposition_check(2, 5).passed


def test_module_generation_examples():
    B1 = preset_algebra("B_n", 1)
    r = module_generation_witness(trivial_action(B1, builtin_group("cyclic:1")), 4)
    assert r.passed and r.details["generators"] == ["1"]
    r = module_generation_witness(weyl_action("B_n", 2), 5)
    assert r.passed and r.details["generators"] == ["1", "X", "Y"]
    line3 = action_from_matrices(polynomial_ring(["X"]), scalar_group(3, 1), ["X"])
    r = module_generation_witness(line3, 5)
    assert r.passed and r.details["generators"] == ["1", "X", "X^2"]


def test_module_generation_inconclusive_is_skipped():
    r = module_generation_witness(weyl_action("B_n", 4), 5, bound=1)
    assert r.details["status"] == "inconclusive" and r.details["skipped"]
