import json

import pytest

from weylskew.exactnum import CycMatrix, zeta
from weylskew.grouprep import (
    GroupError,
    InvalidGeneratorError,
    NotFiniteError,
    builtin_group,
    character_table,
    euclidean_type,
    group_closure,
    load_group,
    mckay_quiver,
    natural_character,
    sl2_subgroup,
    structure_checks,
)


def brute_classes(G):
    mats = G.elements
    inverse = [m.inverse() for m in mats]
    seen, classes = set(), []
    for i, x in enumerate(mats):
        if i in seen:
            continue
        cls = {G.index_of(mats[g] * x * inverse[g]) for g in range(G.size)}
        seen |= cls
        classes.append(cls)
    return classes


def complex_row(table, i):
    return [table.value(i, g).to_complex() for g in range(table.group.size)]


def test_closure_examples():
    assert group_closure([CycMatrix.diag([-1, -1])]).size == 2
    assert group_closure(sl2_subgroup("binary_dihedral", 2)).size == 8
    with pytest.raises(NotFiniteError):
        group_closure([CycMatrix.diag([2])])
    with pytest.raises(InvalidGeneratorError):
        group_closure([CycMatrix([[1, 1], [1, 1]])])


def test_sl2_generators():
    gens = sl2_subgroup("cyclic", 4)
    assert gens == [CycMatrix.diag([zeta(4), zeta(4, 3)])]
    assert group_closure(gens).size == 4
    tetra = group_closure(sl2_subgroup("binary_tetrahedral"))
    assert tetra.size == 24 and all(d == 1 for d in tetra.determinants())
    with pytest.raises(GroupError):
        sl2_subgroup("dodecahedral")


@pytest.mark.parametrize(
    "name,order",
    [("cyclic:5", 5), ("binary_dihedral:3", 12), ("binary_tetrahedral", 24), ("binary_octahedral", 48), ("binary_icosahedral", 120)],
)
def test_classical_orders(name, order):
    G = builtin_group(name)
    assert G.size == order
    assert all(d == 1 for d in G.determinants())


def test_cyclic_three_characters():
    G = group_closure([CycMatrix.diag([zeta(3)])])
    table = character_table(G)
    g = G.index_of(CycMatrix.diag([zeta(3)]))
    values = sorted(str(table.value(i, g)) for i in range(len(table)))
    assert values == sorted(str(zeta(3, k)) for k in range(3))
    assert table.degrees == [1, 1, 1]


def test_quaternion_degrees_and_trivial_group():
    assert sorted(character_table(builtin_group("binary_dihedral:2")).degrees) == [1, 1, 1, 1, 2]
    trivial = character_table(builtin_group("cyclic:1"))
    assert trivial.rows == [[1]]


@pytest.mark.parametrize("name", ["cyclic:6", "binary_dihedral:2", "binary_dihedral:4", "binary_tetrahedral", "binary_octahedral"])
def test_table_against_brute_force(name):
    G = builtin_group(name)
    table = character_table(G)
    classes = brute_classes(G)
    assert len(table) == len(classes)
    assert sum(d * d for d in table.degrees) == G.size
    for i in range(len(table)):
        row = complex_row(table, i)
        for cls in classes:
            vals = [row[g] for g in cls]
            assert all(abs(v - vals[0]) < 1e-9 for v in vals)
        for j in range(len(table)):
            other = complex_row(table, j)
            inner = sum(a * b.conjugate() for a, b in zip(row, other)) / G.size
            assert abs(inner - (1 if i == j else 0)) < 1e-9


def test_natural_character_values():
    G = builtin_group("binary_dihedral:2")
    chi = dict(zip(G.class_reps, natural_character(G)))
    assert chi[G.index_of(CycMatrix.identity(2))] == 2
    minus = G.index_of(CycMatrix.diag([-1, -1]))
    rot = G.index_of(CycMatrix([[0, 1], [-1, 0]]))
    by_element = {}
    for cls in brute_classes(G):
        rep = next(r for r in G.class_reps if r in cls)
        for g in cls:
            by_element[g] = chi[rep]
    assert by_element[minus] == -2
    assert by_element[rot] == 0


def test_two_element_mckay():
    mq = mckay_quiver(group_closure([CycMatrix.diag([-1, -1])]))
    assert mq.arrow_counts == [[0, 2], [2, 0]]
    assert mq.loops() == 0 and mq.is_symmetric()


@pytest.mark.parametrize("n", range(3, 9))
def test_cyclic_mckay_is_a_cycle(n):
    G = builtin_group(f"cyclic:{n}")
    # oracle: characters of Z_n are k -> zeta^(jk); count via inner products by hand
    gen = G.index_of(CycMatrix.diag([zeta(n), zeta(n, n - 1)]))
    counts = mckay_quiver(G).arrow_counts
    table = character_table(G)
    label = [next(k for k in range(n) if table.value(i, gen) == zeta(n, k)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            want = 1 if (label[i] - label[j]) % n in (1, n - 1) else 0
            assert counts[i][j] == want
    assert euclidean_type(mckay_quiver(G)) == f"A~{n - 1}"


@pytest.mark.parametrize(
    "name,kind",
    [("binary_dihedral:2", "D~4"), ("binary_dihedral:3", "D~5"), ("binary_dihedral:4", "D~6"),
     ("binary_tetrahedral", "E~6"), ("binary_octahedral", "E~7"), ("binary_icosahedral", "E~8")],
)
def test_nonabelian_mckay_types(name, kind):
    mq = mckay_quiver(builtin_group(name))
    assert euclidean_type(mq) == kind
    assert mq.loops() == 0 and mq.is_symmetric() and mq.is_connected()


def test_structure_checks_boundaries():
    trivial = builtin_group("cyclic:1")
    reports = {r.name: r for r in structure_checks(character_table(trivial), mckay_quiver(trivial))}
    assert reports["no_loops"].details["skipped"] and reports["no_loops"].details["loops"] == 2
    sign = group_closure([CycMatrix.diag([-1])])
    mq = mckay_quiver(sign)
    assert mq.arrow_counts == [[0, 1], [1, 0]]
    reports = structure_checks(character_table(sign), mq)
    assert all(r.passed for r in reports)
    q8 = builtin_group("binary_dihedral:2")
    reports = {r.name: r for r in structure_checks(character_table(q8), mckay_quiver(q8))}
    assert reports["no_loops"].passed and not reports["no_loops"].details["skipped"]


def test_load_group_files(tmp_path):
    js = tmp_path / "g.json"
    js.write_text(json.dumps({"cyclotomic_order": 4, "generators": [[["z", "0"], ["0", "-z"]], [["0", "1"], ["-1", "0"]]]}))
    assert load_group(str(js)).size == 8
    ym = tmp_path / "g.yaml"
    ym.write_text("generators:\n  - [['-1', '0'], ['0', '-1']]\n")
    assert load_group(str(ym)).size == 2
    assert load_group("builtin:cyclic:3").size == 3
    with pytest.raises(GroupError):
        load_group(str(tmp_path / "missing.json"))
