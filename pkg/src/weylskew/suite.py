"""Named end-to-end checks, each returning a CheckReport.

These bundle the library's verifiers into reproducible scenarios so the
command line (``structcheck --name ...``) can reach every one of them.
"""
from __future__ import annotations

from math import comb
from typing import Callable

from .exactnum import CycMatrix, zeta
from .grouprep import (
    builtin_group,
    character_table,
    euclidean_type,
    group_closure,
    mckay_quiver,
    structure_checks,
)
from .ncalg import (
    center_basis,
    confluence_check,
    graded_dimension,
    polynomial_ring,
    preset_algebra,
)
from .quiverpres import (
    corner_algebra,
    deformed_preprojective_presentation,
    doubled_from_counts,
    homogenized_presentations,
    preprojective_presentation,
    verify_presentation,
)
from .report import CheckReport
from .skewalg import (
    action_from_matrices,
    corner_basis,
    ideal_growth_probe,
    invariants_basis,
    perm_skew_center,
)
from .structchk import (
    automorphism_minor_check,
    eta_map,
    group_algebra_tensor_iso,
    invariants_product_check,
    module_generation_witness,
    sample_automorphism_inputs,
    shriek_decomposition_check,
    skew_tensor_iso_check,
    tensor_quotient_iso_check,
)

MCKAY_GROUPS = (
    [f"cyclic:{n}" for n in range(1, 9)]
    + [f"binary_dihedral:{n}" for n in range(2, 5)]
    + ["binary_tetrahedral", "binary_octahedral"]
)


def scalar_group(n: int, k: int):
    """Z_n acting by the scalar z_n on k coordinates."""
    return group_closure([CycMatrix.diag([zeta(n)] * k)])


def weyl_action(kind: str, n: int):
    """Z_n inside SL(2) acting on X, Y of a one-pair preset, Z fixed when present."""
    P = preset_algebra(kind, 1)
    G = builtin_group(f"cyclic:{n}")
    fixed = ["Z"] if "Z" in P.generators else []
    return action_from_matrices(P, G, ["X", "Y"], fixed)


def pbw_dimensions(n: int = 3, dmax: int = 8, **_) -> CheckReport:
    bad = []
    for k in range(1, n + 1):
        P = preset_algebra("B_n", k)
        for d in range(dmax + 1):
            got, want = graded_dimension(P, d), comb(d + 2 * k, 2 * k)
            if got != want:
                bad.append({"n": k, "degree": d, "got": got, "expected": want})
    return CheckReport("pbw_dimensions", not bad, {"n_max": n, "d_max": dmax, "mismatches": bad})


def confluence(n: int = 3, **_) -> CheckReport:
    out = {}
    ok = True
    for kind in ("B_n", "C_n", "Exterior_n", "CnShriek", "BnShriek", "A_n"):
        for k in range(1, n + 1):
            r = confluence_check(preset_algebra(kind, k))
            out[f"{kind}({k})"] = len(r["failing_overlaps"])
            ok &= r["resolved"]
    return CheckReport("confluence", ok, {"failing_overlap_counts": out})


def center(n: int = 2, dmax: int = 6, **_) -> CheckReport:
    rows = []
    ok = True
    for k in range(1, n + 1):
        P = preset_algebra("B_n", k)
        z = P.index("Z")
        for d in range(dmax + 1):
            basis = center_basis(P, d)
            good = len(basis) == 1 and basis[0].terms == {(z,) * d: 1}
            ok &= good
            rows.append({"n": k, "degree": d, "basis": [str(b) for b in basis], "is_power_of_z": good})
    return CheckReport("center", ok, {"degrees": rows})


def mckay_suite(**_) -> CheckReport:
    rows = {}
    ok = True
    expected = {"binary_dihedral:2": "D~4"}
    for name in MCKAY_GROUPS:
        G = builtin_group(name)
        table = character_table(G)
        mq = mckay_quiver(G, table)
        checks = structure_checks(table, mq)
        failed = [c.name for c in checks if not c.passed and not c.details.get("skipped")]
        kind = euclidean_type(mq)
        if name.startswith("cyclic:"):
            n = int(name.split(":")[1])
            want = "A~0" if n == 1 else f"A~{n - 1}"
        else:
            want = expected.get(name, kind)
        good = not failed and kind == want
        ok &= good
        rows[name] = {"order": G.size, "degrees": table.degrees, "type": kind, "failed_checks": failed, "pass": good}
    return CheckReport("mckay_suite", ok, {"groups": rows})


def corner_invariants(n: int = 4, dmax: int = 6, **_) -> CheckReport:
    rows = []
    ok = True
    for kind in ("C_n", "B_n"):
        for k in range(1, n + 1):
            act = weyl_action(kind, k)
            for d in range(dmax + 1):
                a, b = len(corner_basis(act, d)), len(invariants_basis(act, d))
                ok &= a == b
                rows.append({"algebra": kind, "group": f"cyclic:{k}", "degree": d, "corner": a, "invariants": b})
    return CheckReport("corner_invariants", ok, {"rows": rows})


def quiver_shape(n: int = 4, **_) -> CheckReport:
    rows = []
    ok = True
    for k in range(1, n + 1):
        G = builtin_group(f"cyclic:{k}")
        mck = mckay_quiver(G).arrow_counts
        for kind in ("C_n", "B_n"):
            counts = corner_algebra(weyl_action(kind, k)).extracted_quiver().arrow_counts()
            want = [[mck[i][j] + (1 if i == j and kind == "B_n" else 0) for j in range(k)] for i in range(k)]
            ok &= counts == want
            rows.append({"algebra": kind, "group": f"cyclic:{k}", "corner_counts": counts, "expected": want})
    return CheckReport("quiver_shape", ok, {"rows": rows})


FAMILIES = {
    "mesh": ("C_n", lambda q, s: preprojective_presentation(q, s)),
    "homogenized": ("B_n", lambda q, s: homogenized_presentations(q, s)[1]),
    "dual": ("BnShriek", lambda q, s: homogenized_presentations(q, s)[0]),
    "deformed": ("A_n", lambda q, s: deformed_preprojective_presentation(q, s)),
}


def presentation_report(n: int, family: str, dmax: int = 4, signed: bool = True):
    kind, build = FAMILIES[family]
    act = weyl_action(kind, n)
    q = doubled_from_counts(mckay_quiver(act.group).arrow_counts)
    pres = build(q, signed)
    return pres, verify_presentation(pres, corner_algebra(act), d_max=dmax)


def presentations(n: int = 3, dmax: int = 4, **_) -> CheckReport:
    rows = []
    ok = True
    for k in range(2, n + 1):
        for family in ("mesh", "homogenized", "deformed"):
            _, r = presentation_report(k, family, dmax)
            ok &= r.passed
            rows.append({"group": f"cyclic:{k}", "family": family, "pass": r.passed, "z_scale": r.details["z_scale"]})
    return CheckReport("presentations", ok, {"rows": rows})


def tensor_quotient_iso(n: int = 1, m: int = 1, dmax: int = 4, **_) -> CheckReport:
    return tensor_quotient_iso_check(n, m, dmax)


def group_algebra_iso(**_) -> CheckReport:
    Z2, Q8, one = builtin_group("cyclic:2"), builtin_group("binary_dihedral:2"), builtin_group("cyclic:1")
    rows = {}
    ok = True
    for name, G, H in (("Z2xZ2", Z2, Z2), ("Z2xQ8", Z2, Q8), ("1xQ8", one, Q8)):
        r = group_algebra_tensor_iso(G, H)
        ok &= r.passed
        rows[name] = r.details
    return CheckReport("group_algebra_tensor_iso", ok, rows)


def skew_tensor_iso(dmax: int = 4, **_) -> CheckReport:
    CX = polynomial_ring(["X"])
    act = action_from_matrices(CX, scalar_group(2, 1), ["X"])
    return skew_tensor_iso_check(act, act, dmax)


def perm_center(n: int = 4, **_) -> CheckReport:
    rows = {}
    ok = True
    for k in range(1, n + 1):
        r = perm_skew_center(k)
        good = r["center_dim"] == 1 and r["radical_dim"] == 0 and not r["proper_ideal_found"]
        ok &= good
        rows[str(k)] = {key: r[key] for key in ("center_dim", "radical_dim", "proper_ideal_found", "simple")}
    return CheckReport("perm_skew_center", ok, rows)


def ideal_growth_cases():
    for n in (1, 2, 3):
        for k in (1, 2):
            names = [f"X{i + 1}" for i in range(k)]
            yield f"C[{','.join(names)}] scalar z{n}", action_from_matrices(polynomial_ring(names), scalar_group(n, k), names)
    yield "B_1 with -I", action_from_matrices(preset_algebra("B_n", 1), builtin_group("cyclic:2"), ["X", "Y"], ["Z"])


def ideal_growth(**_) -> CheckReport:
    rows = {}
    ok = True
    for label, act in ideal_growth_cases():
        size = act.group.size
        r = ideal_growth_probe(act, 2 * size)
        good = r["theorem_applies"] and r["stabilized_zero"] and r["first_zero_degree"] <= size
        ok &= good
        rows[label] = {"quotient_dims": r["quotient_dims"], "first_zero_degree": r["first_zero_degree"], "pass": good}
    return CheckReport("ideal_growth", ok, rows)


def automorphism_oracle(samples: int = 200, seed: int = 0, **_) -> CheckReport:
    disagreements = []
    verdicts = {"automorphism": 0, "not_automorphism": 0}
    for i, sample in enumerate(sample_automorphism_inputs(samples, seed)):
        r = automorphism_minor_check(*sample)
        verdicts["automorphism" if r.passed else "not_automorphism"] += 1
        if not r.details["oracle_agreement"]:
            disagreements.append(i)
    return CheckReport(
        "automorphism_oracle",
        not disagreements,
        {"samples": samples, "seed": seed, "verdicts": verdicts, "disagreements": disagreements},
    )


def shriek_decomposition(n: int = 2, dmax: int = 5, **_) -> CheckReport:
    reports = [shriek_decomposition_check(k, dmax) for k in range(1, n + 1)]
    return CheckReport("shriek_decomposition", all(reports), {"per_n": [r.details for r in reports]})


def invariants_product(dmax: int = 4, **_) -> CheckReport:
    act = weyl_action("B_n", 2)
    return invariants_product_check(act, act, dmax)


def module_generation(dmax: int = 5, **_) -> CheckReport:
    return module_generation_witness(weyl_action("B_n", 2), dmax)


def eta(**_) -> CheckReport:
    B1 = preset_algebra("B_n", 1)
    G = group_closure([CycMatrix.diag([-1, 1, zeta(4)])])
    return eta_map(action_from_matrices(B1, G, ["X", "Y", "Z"]))[0]


SUITE: dict[str, Callable[..., CheckReport]] = {
    "pbw_dimensions": pbw_dimensions,
    "confluence": confluence,
    "center": center,
    "mckay_suite": mckay_suite,
    "corner_invariants": corner_invariants,
    "quiver_shape": quiver_shape,
    "presentations": presentations,
    "tensor_quotient_iso": tensor_quotient_iso,
    "group_algebra_tensor_iso": group_algebra_iso,
    "skew_tensor_iso": skew_tensor_iso,
    "perm_skew_center": perm_center,
    "ideal_growth": ideal_growth,
    "automorphism_oracle": automorphism_oracle,
    "shriek_decomposition": shriek_decomposition,
    "invariants_product": invariants_product,
    "module_generation": module_generation,
    "eta_map": eta,
}


def run_named(name: str, **opts) -> CheckReport:
    try:
        fn = SUITE[name]
    except KeyError:
        raise KeyError(f"unknown check {name!r}; known checks: {', '.join(sorted(SUITE))}") from None
    return fn(**{k: v for k, v in opts.items() if v is not None})
