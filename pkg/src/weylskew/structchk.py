"""Verifiers for automorphism criteria, tensor/quotient isomorphisms and module decompositions.

Every check is a finite, degreewise exact rank computation and returns a CheckReport.
"""
from __future__ import annotations

import random
from typing import Sequence

from .exactnum import Cyclotomic, CycMatrix, Echelon, as_cyc, rank, zeta
from .grouprep import MatrixGroup, direct_product
from .ncalg import (
    QuadraticPresentation,
    _acc,
    graded_dimension,
    normal_monomials,
    preset_algebra,
    tensor_presentation,
)
from .report import CheckReport
from .skewalg import GroupAction, SkewElement, invariants_basis

__all__ = [
    "HypothesisError",
    "NotGradeCompatible",
    "symplectic_form",
    "automorphism_minor_check",
    "automorphism_oracle",
    "sample_automorphism_inputs",
    "eta_map",
    "tensor_quotient_iso_check",
    "group_algebra_tensor_iso",
    "product_action",
    "skew_tensor_iso_check",
    "invariants_product_check",
    "shriek_decomposition_check",
    "module_generation_witness",
]

ONE = Cyclotomic.rational(1)
ZERO = Cyclotomic.rational(0)


class HypothesisError(ValueError):
    pass


class NotGradeCompatible(ValueError):
    pass


# ----------------------------------------------------------------------
# automorphisms of B_n
#
# Matrix layout: row/column 2i <-> X_{i+1}, 2i+1 <-> Y_{i+1} (0-based).
# Column j holds the image of the j-th coordinate generator.


def _layout_to_generator(n: int) -> list[int]:
    """Matrix coordinate -> preset generator index."""
    out = []
    for i in range(n):
        out += [i, n + i]
    return out


def symplectic_form(n: int) -> CycMatrix:
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return CycMatrix(rows)


def _check_shape(A: CycMatrix, rho: Sequence, n: int) -> None:
    if A.rows != 2 * n or A.cols != 2 * n:
        raise ValueError(f"matrix must be {2 * n}x{2 * n}, got {A.rows}x{A.cols}")
    if len(rho) != 2 * n:
        raise ValueError(f"rho must have {2 * n} entries, got {len(rho)}")


def _minor_sum(A: CycMatrix, j: int, k: int, n: int) -> Cyclotomic:
    """Sum over i of the 2x2 minors of A in rows (X_i, Y_i), columns (j, k)."""
    s = ZERO
    for i in range(n):
        x, y = 2 * i, 2 * i + 1
        s = s + A.entries[x][j] * A.entries[y][k] - A.entries[y][j] * A.entries[x][k]
    return s


def automorphism_oracle(A: CycMatrix, rho: Sequence, lam, n: int) -> bool:
    """Direct test: images preserve every defining rule of B_n and the map is invertible."""
    lam = as_cyc(lam)
    rho = [as_cyc(r) for r in rho]
    P = preset_algebra("B_n", n)
    gen_of = _layout_to_generator(n)
    z = 2 * n
    images: list[dict] = [None] * (2 * n + 1)
    for col in range(2 * n):
        img: dict = {}
        for row in range(2 * n):
            c = A.entries[row][col]
            if c:
                img[(gen_of[row],)] = c
        if rho[col]:
            img[(z,)] = rho[col]
        images[gen_of[col]] = img
    images[z] = {(z,): lam} if lam else {}

    def image(word) -> dict:
        out = {(): ONE}
        for letter in word:
            nxt: dict = {}
            for u, a in out.items():
                for v, b in images[letter].items():
                    for w, c in P.reduce_word(u + v).items():
                        _acc(nxt, w, a * b * c)
            out = nxt
        return out

    for (a, b), rhs in P.rules.items():
        right: dict = {}
        for c, w in rhs:
            for m, x in image(w).items():
                _acc(right, m, c * x)
        if image((a, b)) != right:
            return False
    full = [list(r) + [0] for r in A.entries] + [list(rho) + [lam]]
    return not CycMatrix(full).det().is_zero()


def automorphism_minor_check(A: CycMatrix, rho: Sequence, lam, n: int) -> CheckReport:
    """The four minor-sum families (X-X, Y-Y, X_j-Y_j, X_j-Y_k with j != k)."""
    lam = as_cyc(lam)
    if not lam:
        raise ValueError("lambda must be nonzero")
    _check_shape(A, rho, n)
    target = lam * lam
    failures = []
    counts = {"xx": 0, "yy": 0, "xy_same": 0, "xy_cross": 0}
    for j in range(n):
        for k in range(n):
            checks = []
            if j < k:
                checks.append(("xx", 2 * j, 2 * k, ZERO))
                checks.append(("yy", 2 * j + 1, 2 * k + 1, ZERO))
            if j == k:
                checks.append(("xy_same", 2 * j, 2 * j + 1, target))
            else:
                checks.append(("xy_cross", 2 * j, 2 * k + 1, ZERO))
            for family, c1, c2, want in checks:
                counts[family] += 1
                got = _minor_sum(A, c1, c2, n)
                if got != want:
                    failures.append(
                        {"family": family, "columns": [c1 + 1, c2 + 1], "value": str(got), "expected": str(want)}
                    )
    minors_hold = not failures
    oracle = automorphism_oracle(A, rho, lam, n)
    return CheckReport(
        "automorphism_minor_check",
        minors_hold,
        {
            "n": n,
            "lambda": str(lam),
            "equations_checked": counts,
            "failures": failures,
            "oracle_verdict": oracle,
            "oracle_agreement": oracle == minors_hold,
        },
    )


def _block_matrix(blocks: dict, n: int) -> CycMatrix:
    """Identity except the 2x2 blocks {(i, j): [[a, b], [c, d]]} on pair coordinates."""
    rows = [[ONE if r == c else ZERO for c in range(2 * n)] for r in range(2 * n)]
    for (i, j), blk in blocks.items():
        for a in range(2):
            for b in range(2):
                rows[2 * i + a][2 * j + b] = as_cyc(blk[a][b])
    return CycMatrix(rows)


def _symplectic_generators(n: int, entries: Sequence[Cyclotomic]) -> list[CycMatrix]:
    gens = []
    for i in range(n):
        for c in entries:
            if c:
                gens.append(_block_matrix({(i, i): [[1, c], [0, 1]]}, n))
                gens.append(_block_matrix({(i, i): [[1, 0], [c, 1]]}, n))
        gens.append(_block_matrix({(i, i): [[0, 1], [-1, 0]]}, n))
        gens.append(_block_matrix({(i, i): [[zeta(4), 0], [0, -zeta(4)]]}, n))
    if n >= 2:
        for c in entries:
            if c:
                # X_1 -> X_1 + c X_2 needs Y_2 -> Y_2 - c Y_1
                gens.append(_block_matrix({(0, 0): [[1, 0], [0, 1]], (0, 1): [[0, 0], [0, -c]], (1, 0): [[c, 0], [0, 0]]}, n))
    return gens


def sample_automorphism_inputs(count: int = 200, seed: int = 0, n_values: Sequence[int] = (1, 2)) -> list[tuple]:
    """(A, rho, lambda, n) samples with entries in {0, +-1, +-z4}: raw, structured, perturbed."""
    rng = random.Random(seed)
    entries = [ZERO, ONE, -ONE, zeta(4), -zeta(4)]
    lambdas = [ONE, -ONE, zeta(4), -zeta(4)]
    out = []
    for t in range(count):
        n = n_values[t % len(n_values)]
        rho = [rng.choice(entries) for _ in range(2 * n)]
        lam = rng.choice(lambdas)
        mode = t % 3
        if mode == 0:
            A = CycMatrix([[rng.choice(entries) for _ in range(2 * n)] for _ in range(2 * n)], order=4)
        else:
            gens = _symplectic_generators(n, entries)
            S = CycMatrix.identity(2 * n, 4)
            for _ in range(rng.randint(1, 4)):
                S = S * rng.choice(gens)
            A = CycMatrix([[lam * x for x in row] for row in S.entries], order=4)
            if mode == 2:
                rows = [list(r) for r in A.entries]
                r, c = rng.randrange(2 * n), rng.randrange(2 * n)
                rows[r][c] = rng.choice(entries)
                A = CycMatrix(rows, order=4)
        out.append((A, rho, lam, n))
    return out


# ----------------------------------------------------------------------
# the scalar character on Z


def eta_map(action: GroupAction) -> tuple[CheckReport, dict]:
    P = action.algebra
    if "Z" not in P.generators:
        raise NotGradeCompatible("the algebra has no Z generator")
    z = P.index("Z")
    G = action.group
    lam = {}
    for g in range(G.size):
        img = action.images[g][z]
        if set(img) - {(z,)} or not img:
            raise NotGradeCompatible(f"group element {g} does not send Z to a multiple of Z")
        lam[g] = img[(z,)]
    failures = []
    for g in range(G.size):
        for h in range(G.size):
            if lam[G.table[g][h]] != lam[g] * lam[h]:
                failures.append([g, h])
    orders_ok = all(lam[g] ** G.size == ONE for g in range(G.size))
    image = []
    for v in lam.values():
        if v not in image:
            image.append(v)
    kernel = [g for g in range(G.size) if lam[g] == ONE]
    cyclic = any(len({v**k for k in range(len(image))}) == len(image) for v in image)
    report = CheckReport(
        "eta_map",
        not failures and orders_ok and cyclic,
        {
            "lambdas": {str(g): str(v) for g, v in lam.items()},
            "homomorphism_failures": failures,
            "roots_of_unity": orders_ok,
            "image_order": len(image),
            "image_cyclic": cyclic,
            "kernel": kernel,
            "kernel_index": G.size // len(kernel),
        },
    )
    return report, lam


# ----------------------------------------------------------------------
# B_n (x) B_m / (Z - Z') = B_{n+m}


def _merge_map(n: int, m: int) -> list[int]:
    """Generator index in B_n (x) B_m -> generator index in B_{n+m}."""
    k = n + m
    out = [i for i in range(n)] + [k + i for i in range(n)] + [2 * k]
    out += [n + j for j in range(m)] + [k + n + j for j in range(m)] + [2 * k]
    return out


def _map_word(word: tuple, mapping: Sequence[int], target: QuadraticPresentation) -> dict:
    return target.reduce_word(tuple(mapping[i] for i in word))


def tensor_quotient_iso_check(n: int, m: int, d_max: int = 4) -> CheckReport:
    Bn, Bm, Bk = preset_algebra("B_n", n), preset_algebra("B_n", m), preset_algebra("B_n", n + m)
    T = tensor_presentation(Bn, Bm)
    mapping = _merge_map(n, m)
    z1, z2 = 2 * n, 2 * n + 1 + 2 * m
    rows = []
    ok = True
    for d in range(d_max + 1):
        basis = normal_monomials(T, d)
        images = [_map_word(w, mapping, Bk) for w in basis]
        image_rank = rank(images)
        target_dim = graded_dimension(Bk, d)
        kernel_dim = len(basis) - image_rank
        ideal = []
        if d >= 1:
            for w in normal_monomials(T, d - 1):
                vec: dict = {}
                for c, zz in ((ONE, z1), (-ONE, z2)):
                    for u, x in T.reduce_word((zz,) + w).items():
                        _acc(vec, u, c * x)
                ideal.append(vec)
        ideal_dim = rank(ideal)
        in_kernel = all(not _apply_map(vec, mapping, Bk) for vec in ideal)
        quotient = len(basis) - ideal_dim
        row = {
            "degree": d,
            "tensor_dim": len(basis),
            "target_dim": target_dim,
            "quotient_dim": quotient,
            "image_rank": image_rank,
            "kernel_dim": kernel_dim,
            "ideal_dim": ideal_dim,
            "dimension_match": quotient == target_dim,
            "surjective": image_rank == target_dim,
            "kernel_equals_ideal": in_kernel and ideal_dim == kernel_dim,
        }
        ok &= row["dimension_match"] and row["surjective"] and row["kernel_equals_ideal"]
        rows.append(row)
    return CheckReport("tensor_quotient_iso", ok, {"n": n, "m": m, "d_max": d_max, "degrees": rows})


def _apply_map(vec: dict, mapping, target) -> dict:
    out: dict = {}
    for w, c in vec.items():
        for u, x in _map_word(w, mapping, target).items():
            _acc(out, u, c * x)
    return out


# ----------------------------------------------------------------------
# group algebras and skew products


def group_algebra_tensor_iso(G: MatrixGroup, H: MatrixGroup) -> CheckReport:
    """(g, h) -> g (x) h is multiplicative on all basis pairs of K(G x H)."""
    P, pairs = direct_product(G, H)
    back = {p: gh for gh, p in pairs.items()}
    bijective = len(back) == G.size * H.size == P.size
    failures = []
    comparisons = 0
    for p1 in range(P.size):
        g1, h1 = back[p1]
        for p2 in range(P.size):
            g2, h2 = back[p2]
            comparisons += 1
            if back[P.table[p1][p2]] != (G.table[g1][g2], H.table[h1][h2]):
                failures.append([p1, p2])
    return CheckReport(
        "group_algebra_tensor_iso",
        bijective and not failures,
        {"order": P.size, "bijective": bijective, "comparisons": comparisons, "failures": failures[:10]},
    )


def product_action(act1: GroupAction, act2: GroupAction) -> tuple[GroupAction, dict]:
    """(g, h) acting on Lambda (x) Gamma factorwise; returns the action and the pair map."""
    T = tensor_presentation(act1.algebra, act2.algebra)
    P, pairs = direct_product(act1.group, act2.group)
    back = {p: gh for gh, p in pairs.items()}
    off = len(act1.algebra.generators)
    images = []
    for p in range(P.size):
        g, h = back[p]
        per = [dict(img) for img in act1.images[g]]
        for img in act2.images[h]:
            per.append({tuple(i + off for i in w): c for w, c in img.items()})
        images.append(per)
    moving = list(act1.moving) + [i + off for i in act2.moving]
    return GroupAction(T, P, images, moving=moving), pairs


def skew_tensor_iso_check(act1: GroupAction, act2: GroupAction, d_max: int = 3) -> CheckReport:
    """(l (x) m)(g, h) -> (l g) (x) (m h) is multiplicative on degreewise bases."""
    big, pairs = product_action(act1, act2)
    back = {p: gh for gh, p in pairs.items()}
    off = len(act1.algebra.generators)
    T = big.algebra

    def split(w):
        return tuple(i for i in w if i < off), tuple(i - off for i in w if i >= off)

    def psi(x: SkewElement) -> dict:
        out: dict = {}
        for (p, w), c in x.data.items():
            g, h = back[p]
            a, b = split(w)
            _acc(out, (g, a, h, b), c)
        return out

    def tensor_mul(u: dict, v: dict) -> dict:
        out: dict = {}
        for (g1, a1, h1, b1), c1 in u.items():
            for (g2, a2, h2, b2), c2 in v.items():
                left = SkewElement(act1, {(g1, a1): ONE}) * SkewElement(act1, {(g2, a2): ONE})
                right = SkewElement(act2, {(h1, b1): ONE}) * SkewElement(act2, {(h2, b2): ONE})
                for (g, a), x in left.data.items():
                    for (h, b), y in right.data.items():
                        _acc(out, (g, a, h, b), c1 * c2 * x * y)
        return out

    basis = {d: [(p, w) for w in normal_monomials(T, d) for p in range(big.group.size)] for d in range(d_max + 1)}
    failures = []
    checked = 0
    for d1 in range(d_max + 1):
        for d2 in range(d_max + 1 - d1):
            for x in basis[d1]:
                ex = SkewElement(big, {x: ONE})
                px = psi(ex)
                for y in basis[d2]:
                    ey = SkewElement(big, {y: ONE})
                    checked += 1
                    if psi(ex * ey) != tensor_mul(px, psi(ey)):
                        failures.append([str(ex), str(ey)])
    return CheckReport(
        "skew_tensor_iso",
        not failures,
        {"d_max": d_max, "group_order": big.group.size, "products_checked": checked, "failures": failures[:10]},
    )


# ----------------------------------------------------------------------
# invariants of B_{n+m} under G x H


def _fixes_z(action: GroupAction) -> bool:
    P = action.algebra
    if "Z" not in P.generators:
        return False
    z = P.index("Z")
    return all(action.images[g][z] == {(z,): ONE} for g in range(action.group.size))


def invariants_product_check(act1: GroupAction, act2: GroupAction, d_max: int = 4) -> CheckReport:
    if not (_fixes_z(act1) and _fixes_z(act2)):
        raise HypothesisError("both actions must fix Z")
    n, m = act1.algebra.n, act2.algebra.n
    if act1.algebra.kind != "B_n" or act2.algebra.kind != "B_n":
        raise HypothesisError("both actions must be on homogenized Weyl algebras")
    Bk = preset_algebra("B_n", n + m)
    mapping = _merge_map(n, m)
    tensor_act, pairs = product_action(act1, act2)
    T = tensor_act.algebra
    # the same group acting on B_{n+m} through the merge map
    images = []
    for p in range(tensor_act.group.size):
        per: list = [None] * len(Bk.generators)
        for i, img in enumerate(tensor_act.images[p]):
            per[mapping[i]] = {tuple(mapping[j] for j in w): c for w, c in img.items()}
        images.append(per)
    merged = GroupAction(Bk, tensor_act.group, images)
    off = len(act1.algebra.generators)
    z1, z2 = 2 * n, off + 2 * m
    inv1 = {d: invariants_basis(act1, d) for d in range(d_max + 1)}
    inv2 = {d: invariants_basis(act2, d) for d in range(d_max + 1)}

    def tensor_inv(d):
        out = []
        for a in range(d + 1):
            for u in inv1[a]:
                for v in inv2[d - a]:
                    vec: dict = {}
                    for w1, c1 in u.terms.items():
                        for w2, c2 in v.terms.items():
                            _acc(vec, w1 + tuple(i + off for i in w2), c1 * c2)
                    out.append(vec)
        return out

    rows = []
    ok = True
    for d in range(d_max + 1):
        left = invariants_basis(merged, d)
        right = tensor_inv(d)
        right_dim = rank(right)
        ideal = []
        if d >= 1:
            for vec in tensor_inv(d - 1):
                out: dict = {}
                for c, zz in ((ONE, z1), (-ONE, z2)):
                    for w, x in vec.items():
                        for u, y in T.reduce_word((zz,) + w).items():
                            _acc(out, u, c * x * y)
                ideal.append(out)
        quotient = right_dim - rank(ideal)
        image_rank = rank(_apply_map(v, mapping, Bk) for v in right)
        row = {
            "degree": d,
            "invariants_dim": len(left),
            "tensor_invariants_dim": right_dim,
            "quotient_dim": quotient,
            "map_onto_invariants": image_rank == len(left),
            "match": quotient == len(left),
        }
        ok &= row["match"] and row["map_onto_invariants"]
        rows.append(row)
    return CheckReport("invariants_product", ok, {"n": n, "m": m, "d_max": d_max, "degrees": rows})


# ----------------------------------------------------------------------
# B_n^! = C_n^! + Z C_n^!


def shriek_decomposition_check(n: int, d_max: int = 5) -> CheckReport:
    B = preset_algebra("BnShriek", n)
    C = preset_algebra("CnShriek", n)
    z = B.index("Z")
    rows = []
    ok = True
    for d in range(d_max + 1):
        lower = normal_monomials(C, d)
        shifted = normal_monomials(C, d - 1) if d >= 1 else []
        vecs = [B.reduce_word(m) for m in lower] + [B.reduce_word((z,) + m) for m in shifted]
        independent = rank(vecs) == len(vecs)
        dim_b = graded_dimension(B, d)
        row = {
            "degree": d,
            "shriek_dim": dim_b,
            "exterior_dim": len(lower),
            "shifted_dim": len(shifted),
            "sum_matches": dim_b == len(lower) + len(shifted),
            "independent": independent,
        }
        ok &= row["sum_matches"] and independent
        rows.append(row)
    return CheckReport("shriek_decomposition", ok, {"n": n, "d_max": d_max, "degrees": rows})


# ----------------------------------------------------------------------
# B_n as a finitely generated module over its invariants


def _is_commutative(P: QuadraticPresentation) -> bool:
    return all(a > b and rhs == ((ONE, (b, a)),) for (a, b), rhs in P.rules.items())


def module_generation_witness(action: GroupAction, d_max: int = 5, bound: int | None = None) -> CheckReport:
    """Find module generators over the commutative quotient and check that they generate through d_max."""
    P = action.algebra
    if P.kind == "B_n":
        if not _fixes_z(action):
            raise HypothesisError("the action must fix Z")
        n = P.n
        C = preset_algebra("C_n", n)
        base = GroupAction(C, action.group, [imgs[: 2 * n] for imgs in action.images], moving=action.moving)
        for g in range(action.group.size):
            for img in base.images[g]:
                if any(2 * n in w for w in img):
                    raise HypothesisError("images of X and Y must not involve Z")
    elif _is_commutative(P):
        base = action
    else:
        raise HypothesisError("module generation is only computed for B_n or commutative algebras")
    C = base.algebra
    bound = bound if bound is not None else max(d_max, action.group.size) + 1
    inv = {}
    gens: dict[int, list[tuple]] = {}
    saturation = None
    for d in range(bound + 1):
        inv[d] = invariants_basis(base, d)
        span = Echelon()
        for a in range(1, d + 1):
            for u in inv[a]:
                for g in gens.get(d - a, []):
                    vec: dict = {}
                    for w, c in u.terms.items():
                        for x, y in C.reduce_word(w + g).items():
                            _acc(vec, x, c * y)
                    span.add(vec)
        new = []
        for mono in normal_monomials(C, d):
            if span.add({mono: ONE}) is None:
                new.append(mono)
        gens[d] = new
        if d >= 1 and not new:
            saturation = d
            break
    generators = [g for d in sorted(gens) for g in gens[d]]
    if saturation is None:
        return CheckReport(
            "module_generation",
            False,
            {"status": "inconclusive", "skipped": True, "bound": bound, "generators": [C.word_str(g) for g in generators]},
        )
    # lift: the words are normal in P as well; check the span degree by degree in P
    rows = []
    ok = True
    for d in range(d_max + 1):
        span = Echelon()
        for a in range(d + 1):
            invs = invariants_basis(action, a)
            for u in invs:
                for g in generators:
                    if len(g) != d - a:
                        continue
                    vec: dict = {}
                    for w, c in u.terms.items():
                        for x, y in P.reduce_word(w + g).items():
                            _acc(vec, x, c * y)
                    span.add(vec)
        total = len(normal_monomials(P, d))
        row = {"degree": d, "span_rank": len(span), "dimension": total, "spans": len(span) == total}
        ok &= row["spans"]
        rows.append(row)
    return CheckReport(
        "module_generation",
        ok,
        {
            "status": "verified" if ok else "failed",
            "generators": [P.word_str(g) for g in generators],
            "saturation_degree": saturation,
            "d_max": d_max,
            "degrees": rows,
        },
    )
