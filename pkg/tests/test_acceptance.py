"""The thirteen acceptance criteria, each at its stated bounds.

A summary line per criterion is printed at the end of the pytest run.
"""
import time

import pytest

from weylskew import suite
from weylskew.ncalg import confluence_check, preset_algebra
from weylskew.structchk import group_algebra_tensor_iso
from weylskew.grouprep import builtin_group


@pytest.mark.criterion(1, "PBW dimensions of B_n, n <= 3, d <= 8")
def test_pbw_dimensions():
    start = time.perf_counter()
    r = suite.pbw_dimensions(n=3, dmax=8)
    elapsed = time.perf_counter() - start
    assert r.passed, r.details["mismatches"]
    assert elapsed < 10


@pytest.mark.criterion(2, "confluence of every preset, n <= 3")
def test_confluence():
    for kind in ("B_n", "C_n", "Exterior_n", "CnShriek", "BnShriek"):
        for n in (1, 2, 3):
            r = confluence_check(preset_algebra(kind, n))
            assert r["resolved"] and r["failing_overlaps"] == [], (kind, n)


@pytest.mark.criterion(3, "center of B_n is spanned by Z^d, n <= 2, d <= 6")
def test_center():
    r = suite.center(n=2, dmax=6)
    assert r.passed
    assert len(r.details["degrees"]) == 2 * 7
    assert all(row["basis"] == [("Z^%d" % row["degree"]) if row["degree"] > 1 else ("Z" if row["degree"] else "1")]
               for row in r.details["degrees"])


@pytest.mark.criterion(4, "character tables and McKay quivers, |G| <= 48")
def test_mckay_suite():
    start = time.perf_counter()
    r = suite.mckay_suite()
    elapsed = time.perf_counter() - start
    assert r.passed, r.details
    groups = r.details["groups"]
    assert len(groups) == 8 + 3 + 2
    assert groups["binary_dihedral:2"]["type"] == "D~4"
    for n in range(2, 9):
        assert groups[f"cyclic:{n}"]["type"] == f"A~{n - 1}"
    assert max(g["order"] for g in groups.values()) == 48
    assert elapsed <= 120


@pytest.mark.criterion(5, "corner dimension equals invariant dimension, Z_n with n <= 4, d <= 6")
def test_corner_invariants():
    r = suite.corner_invariants(n=4, dmax=6)
    assert r.passed
    assert len(r.details["rows"]) == 2 * 4 * 7


@pytest.mark.criterion(6, "extracted corner quiver is McKay (plus one loop per vertex for B_1), n <= 4")
def test_quiver_shape():
    r = suite.quiver_shape(n=4)
    assert r.passed, r.details


@pytest.mark.criterion(7, "mesh, homogenized and deformed relations vanish in the corner, Z_2 and Z_3")
def test_presentations():
    r = suite.presentations(n=3, dmax=4)
    assert r.passed, r.details
    assert {(row["group"], row["family"]) for row in r.details["rows"]} == {
        (g, f) for g in ("cyclic:2", "cyclic:3") for f in ("mesh", "homogenized", "deformed")
    }


@pytest.mark.criterion(8, "B_{n+m} as a quotient of B_n (x) B_m, d <= 4")
def test_tensor_quotient():
    for n, m in ((1, 1), (1, 2)):
        r = suite.tensor_quotient_iso(n=n, m=m, dmax=4)
        assert r.passed, (n, m)
        rows = r.details["degrees"]
        assert len(rows) == 5
        assert all(row["dimension_match"] and row["surjective"] and row["kernel_equals_ideal"] for row in rows)


@pytest.mark.criterion(9, "group algebra and skew group algebra tensor isomorphisms")
def test_tensor_isomorphisms():
    Z2, Q8 = builtin_group("cyclic:2"), builtin_group("binary_dihedral:2")
    for G, H in ((Z2, Z2), (Z2, Q8)):
        r = group_algebra_tensor_iso(G, H)
        assert r.passed and r.details["comparisons"] == (G.size * H.size) ** 2
    r = suite.skew_tensor_iso(dmax=4)
    assert r.passed and r.details["d_max"] == 4


@pytest.mark.criterion(10, "permutation skew group algebra has a one-dimensional center and is simple, n <= 4")
def test_perm_skew_center():
    r = suite.perm_center(n=4)
    assert r.passed
    assert sorted(r.details) == ["1", "2", "3", "4"]


@pytest.mark.criterion(11, "quotient by the ideal of e vanishes by degree |G| (fixed-point-free actions)")
def test_ideal_growth():
    r = suite.ideal_growth()
    assert r.passed, r.details
    assert len(r.details) == 3 * 2 + 1
    for row in r.details.values():
        assert row["quotient_dims"][-1] == 0


@pytest.mark.criterion(12, "minor equations agree with the relation oracle on 200 samples")
def test_automorphism_oracle():
    r = suite.automorphism_oracle(samples=200, seed=0)
    assert r.passed and r.details["disagreements"] == []
    verdicts = r.details["verdicts"]
    assert verdicts["automorphism"] + verdicts["not_automorphism"] == 200
    assert verdicts["automorphism"] > 0 and verdicts["not_automorphism"] > 0


@pytest.mark.criterion(13, "Koszul dual splits as C_n^! plus Z C_n^!, n <= 2, d <= 5")
def test_shriek_decomposition():
    r = suite.shriek_decomposition(n=2, dmax=5)
    assert r.passed
    assert [len(per["degrees"]) for per in r.details["per_n"]] == [6, 6]
