"""Skew group algebras, group actions, invariants and ideal-growth probes."""
from __future__ import annotations

from typing import Iterable, Sequence

from .exactnum import Cyclotomic, CycMatrix, Echelon, as_cyc, nullspace, rank
from .grouprep import MatrixGroup
from .ncalg import (
    AlgebraMismatch,
    NCPoly,
    QuadraticPresentation,
    canonical_basis,
    normal_monomials,
    _acc,
)

__all__ = [
    "ActionError",
    "NotAnAutomorphism",
    "GroupAction",
    "SkewElement",
    "action_from_matrices",
    "check_substitution",
    "trivial_action",
    "skew_multiply",
    "reynolds_idempotent",
    "averaging",
    "invariants_basis",
    "fixed_subspace_basis",
    "corner_basis",
    "corner_product_check",
    "skew_basis",
    "skew_center_truncated",
    "ideal_growth_probe",
    "perm_skew_center",
]

ONE = Cyclotomic.rational(1)


class ActionError(ValueError):
    pass


class NotAnAutomorphism(ActionError):
    pass


class GroupAction:
    """A finite group acting linearly on the generators of a presentation.

    ``images[g][i]`` is the image of generator i under element g, a dict
    from words of length <= 1 to coefficients.  ``moving`` lists the
    generators the defining matrices act on; the others are fixed.
    """

    def __init__(
        self,
        algebra: QuadraticPresentation,
        group: MatrixGroup,
        images: list[list[dict]],
        moving: Sequence[int] = (),
        check: bool = True,
    ):
        self.algebra = algebra
        self.group = group
        self.images = images
        self.moving = tuple(moving)
        self._cache: dict = {}
        self._inv_size = Cyclotomic.rational(1) / group.size
        if check:
            self.verify()

    def act_word(self, g: int, word: tuple) -> dict:
        """g applied to a normal word, as a normalized dict."""
        key = (g, word)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        P = self.algebra
        if not word:
            result = {(): ONE}
        elif g == 0:
            result = {word: ONE}
        else:
            head = self.act_word(g, word[:-1])
            img = self.images[g][word[-1]]
            result = {}
            for u, a in head.items():
                for v, b in img.items():
                    ab = a * b
                    for w, c in P.reduce_word(u + v).items():
                        _acc(result, w, ab * c)
        self._cache[key] = result
        return result

    def act(self, g: int, p: NCPoly) -> NCPoly:
        if p.algebra is not self.algebra:
            raise AlgebraMismatch("polynomial is over a different presentation")
        out: dict = {}
        for w, c in p.terms.items():
            for m, x in self.act_word(g, w).items():
                _acc(out, m, c * x)
        return NCPoly(self.algebra, out)

    def verify(self) -> None:
        """Every element must map each rule's two sides to the same normal form."""
        for g in range(1, self.group.size):
            problem = _rule_violation(self.algebra, self.images[g])
            if problem:
                raise NotAnAutomorphism(f"group element {g} does not preserve the rule {problem}")

    def check_multiplicative(self) -> bool:
        """images(gh) = images(g) o images(h) on generators, for all pairs."""
        G = self.group
        P = self.algebra
        for g in range(G.size):
            for h in range(G.size):
                gh = G.table[g][h]
                for i in range(len(P.generators)):
                    comp: dict = {}
                    for w, c in self.images[h][i].items():
                        for m, x in self.act_word(g, w).items():
                            _acc(comp, m, c * x)
                    if comp != self.images[gh][i]:
                        return False
        return True

    def moving_matrix(self, g: int) -> CycMatrix | None:
        if not self.moving:
            return None
        rows = []
        for i in self.moving:
            rows.append([self.images[g][j].get((i,), Cyclotomic.rational(0)) for j in self.moving])
        return CycMatrix(rows)

    def fixes_others(self) -> bool:
        others = [i for i in range(len(self.algebra.generators)) if i not in self.moving]
        return all(self.images[g][i] == {(i,): ONE} for g in range(self.group.size) for i in others)

    def is_fixed_point_free(self) -> bool:
        """No nonidentity element has eigenvalue 1 on the moving generators."""
        if not self.moving:
            return self.group.size == 1
        return all(not self.moving_matrix(g).eigenvalue_one_test() for g in range(1, self.group.size))


def _free_image(P: QuadraticPresentation, images: list[dict], word: tuple) -> dict:
    # image of an arbitrary (possibly non-normal) word
    out = {(): ONE}
    for letter in word:
        nxt: dict = {}
        for u, a in out.items():
            for v, b in images[letter].items():
                for w, c in P.reduce_word(u + v).items():
                    _acc(nxt, w, a * b * c)
        out = nxt
    return out


def _rule_violation(P: QuadraticPresentation, images: list[dict]) -> str | None:
    """Describe the first rule whose two sides have different images, if any."""
    for (a, b), rhs in P.rules.items():
        lhs_img = _free_image(P, images, (a, b))
        rhs_img: dict = {}
        for c, w in rhs:
            for m, x in _free_image(P, images, w).items():
                _acc(rhs_img, m, c * x)
        if lhs_img != rhs_img:
            rule = f"{P.word_str((a, b))} -> " + (" + ".join(f"({c})*{P.word_str(w)}" for c, w in rhs) or "0")
            return f"{rule}: {NCPoly(P, lhs_img)} != {NCPoly(P, rhs_img)}"
    return None


def _matrix_images(P: QuadraticPresentation, m: CycMatrix, moving: Sequence[int]) -> list[dict]:
    per = []
    for i in range(len(P.generators)):
        if i in moving:
            col = moving.index(i)
            img = {}
            for r, v in enumerate(moving):
                c = m.entries[r][col]
                if c:
                    img[(v,)] = c
            per.append(img)
        else:
            per.append({(i,): ONE})
    return per


def check_substitution(
    P: QuadraticPresentation,
    matrix: CycMatrix,
    variable_map: Sequence[str],
    fixed: Iterable[str] = (),
) -> None:
    """Raise NotAnAutomorphism unless the linear substitution respects every rule.

    Works for a single matrix, so it also covers substitutions of infinite order.
    """
    moving = [P.index(v) for v in variable_map]
    for v in fixed:
        P.index(v)
    if len(moving) != len(matrix.entries):
        raise ActionError(f"matrix has degree {len(matrix.entries)} but variable_map has {len(moving)} generators")
    problem = _rule_violation(P, _matrix_images(P, matrix, moving))
    if problem:
        raise NotAnAutomorphism(f"substitution does not preserve the rule {problem}")


def action_from_matrices(
    P: QuadraticPresentation,
    G: MatrixGroup,
    variable_map: Sequence[str],
    fixed: Iterable[str] = (),
) -> GroupAction:
    """Let matrix g act by g(v_j) = sum_i g[i][j] v_i on the listed generators."""
    moving = [P.index(v) for v in variable_map]
    fixed_idx = [P.index(v) for v in fixed]
    if len(set(moving)) != len(moving):
        raise ActionError("variable_map lists a generator twice")
    if G.degree != len(moving):
        raise ActionError(f"matrices have degree {G.degree} but variable_map has {len(moving)} generators")
    uncovered = [P.generators[i] for i in range(len(P.generators)) if i not in moving and i not in fixed_idx]
    if uncovered:
        raise ActionError(f"generators {uncovered} are neither acted on nor fixed")
    if set(moving) & set(fixed_idx):
        raise ActionError("a generator cannot be both acted on and fixed")
    images = [_matrix_images(P, m, moving) for m in G.elements]
    return GroupAction(P, G, images, moving=moving)


def trivial_action(P: QuadraticPresentation, G: MatrixGroup) -> GroupAction:
    images = [[{(i,): ONE} for i in range(len(P.generators))] for _ in range(G.size)]
    return GroupAction(P, G, images, moving=(), check=False)


class SkewElement:
    """sum of a_g * g, stored flat as {(g, word): coefficient}."""

    __slots__ = ("action", "data")

    def __init__(self, action: GroupAction, data: dict):
        self.action = action
        self.data = data

    @staticmethod
    def from_poly(action: GroupAction, p: NCPoly, g: int = 0) -> "SkewElement":
        return SkewElement(action, {(g, w): c for w, c in p.terms.items()})

    @staticmethod
    def group_element(action: GroupAction, g: int, coeff=1) -> "SkewElement":
        return SkewElement(action, {(g, ()): as_cyc(coeff)})

    @staticmethod
    def word(action: GroupAction, word: tuple, g: int = 0, coeff=1) -> "SkewElement":
        return SkewElement(action, {(g, tuple(word)): as_cyc(coeff)})

    @staticmethod
    def from_group_algebra(action: GroupAction, coeffs: dict) -> "SkewElement":
        return SkewElement(action, {(g, ()): as_cyc(c) for g, c in coeffs.items() if as_cyc(c)})

    @property
    def terms(self) -> dict[int, NCPoly]:
        out: dict[int, dict] = {}
        for (g, w), c in self.data.items():
            out.setdefault(g, {})[w] = c
        return {g: NCPoly(self.action.algebra, t) for g, t in sorted(out.items())}

    def _check(self, other):
        if other.action is not self.action:
            raise AlgebraMismatch("skew elements belong to different actions")

    def __bool__(self):
        return bool(self.data)

    def is_zero(self) -> bool:
        return not self.data

    def __add__(self, other):
        self._check(other)
        out = dict(self.data)
        for k, c in other.data.items():
            _acc(out, k, c)
        return SkewElement(self.action, out)

    def __neg__(self):
        return SkewElement(self.action, {k: -c for k, c in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SkewElement":
        c = as_cyc(c)
        if not c:
            return SkewElement(self.action, {})
        return SkewElement(self.action, {k: x * c for k, x in self.data.items()})

    def __mul__(self, other):
        if isinstance(other, SkewElement):
            return skew_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.action is other.action and self.data == other.data

    def __hash__(self):
        return hash(frozenset(self.data))

    def degree(self) -> int:
        return max((len(w) for _, w in self.data), default=-1)

    def right_group(self, g: int) -> "SkewElement":
        """self * g, which only relabels group indices."""
        t = self.action.group.table
        return SkewElement(self.action, {(t[h][g], w): c for (h, w), c in self.data.items()})

    def __str__(self):
        parts = []
        for g, p in self.terms.items():
            parts.append(f"({p})*g{g}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"SkewElement({self})"


def skew_multiply(u: SkewElement, v: SkewElement) -> SkewElement:
    """(a g)(b h) = a g(b) gh."""
    u._check(v)
    action = u.action
    P = action.algebra
    table = action.group.table
    out: dict = {}
    for (g, w1), a in u.data.items():
        for (h, w2), b in v.data.items():
            gh = table[g][h]
            ab = a * b
            for w3, c in action.act_word(g, w2).items():
                abc = ab * c
                for w, d in P.reduce_word(w1 + w3).items():
                    _acc(out, (gh, w), abc * d)
    return SkewElement(action, out)


def reynolds_idempotent(action: GroupAction) -> SkewElement:
    """e = (1/|G|) sum_g g."""
    c = action._inv_size
    return SkewElement(action, {(g, ()): c for g in range(action.group.size)})


def averaging(action: GroupAction, p: NCPoly) -> NCPoly:
    """Reynolds projection (1/|G|) sum_g g(p)."""
    out: dict = {}
    for g in range(action.group.size):
        for w, c in p.terms.items():
            for m, x in action.act_word(g, w).items():
                _acc(out, m, c * x)
    return NCPoly(action.algebra, out).scale(action._inv_size)


def _require_graded(action: GroupAction):
    if not action.algebra.graded:
        from .ncalg import UngradedError

        raise UngradedError("this operation needs a graded algebra")


def invariants_basis(action: GroupAction, d: int) -> list[NCPoly]:
    """Basis of the degree-d invariants, by averaging monomials."""
    _require_graded(action)
    P = action.algebra
    monos = normal_monomials(P, d)
    ech = Echelon()
    kept = []
    for m in monos:
        avg = averaging(action, NCPoly(P, {m: ONE}))
        if avg and ech.add(avg.terms) is None:
            kept.append(avg.terms)
    return [NCPoly(P, b) for b in canonical_basis(kept, key_order=monos)]


def fixed_subspace_basis(action: GroupAction, d: int) -> list[NCPoly]:
    """Independent oracle: common kernel of (g - 1) over the group generators."""
    _require_graded(action)
    P = action.algebra
    monos = normal_monomials(P, d)
    gens = action.group.generators
    columns = []
    for m in monos:
        col: dict = {}
        for s in gens:
            for w, c in action.act_word(s, m).items():
                _acc(col, (s, w), c)
            _acc(col, (s, m), -ONE)
        columns.append(col)
    kernel = nullspace(columns)
    vecs = [{monos[j]: c for j, c in v.items()} for v in kernel]
    return [NCPoly(P, b) for b in canonical_basis(vecs, key_order=monos)]


def corner_basis(action: GroupAction, d: int) -> list[SkewElement]:
    """Independent elements e*m*e spanning the degree-d part of e(A*G)e."""
    _require_graded(action)
    e = reynolds_idempotent(action)
    ech = Echelon()
    basis = []
    for m in normal_monomials(action.algebra, d):
        x = e * SkewElement.word(action, m) * e
        if x and ech.add(x.data) is None:
            basis.append(x)
    return basis


def corner_product_check(action: GroupAction, d_max: int) -> dict:
    """Check p -> e p e = p e on invariants and (u e)(v e) = (uv) e on basis pairs."""
    e = reynolds_idempotent(action)
    inv = {d: invariants_basis(action, d) for d in range(d_max + 1)}
    failures = []
    pairs = 0
    for a in range(d_max + 1):
        for u in inv[a]:
            ue = SkewElement.from_poly(action, u) * e
            if e * SkewElement.from_poly(action, u) * e != ue:
                failures.append({"kind": "epe", "element": str(u)})
            for b in range(d_max + 1 - a):
                for v in inv[b]:
                    ve = SkewElement.from_poly(action, v) * e
                    pairs += 1
                    if ue * ve != SkewElement.from_poly(action, u * v) * e:
                        failures.append({"kind": "product", "left": str(u), "right": str(v)})
    return {"pass": not failures, "pairs": pairs, "failures": failures}


def skew_basis(action: GroupAction, d: int) -> list[tuple[int, tuple]]:
    return [(g, m) for m in normal_monomials(action.algebra, d) for g in range(action.group.size)]


def skew_center_truncated(action: GroupAction, d: int) -> list[SkewElement]:
    """Degree-d elements commuting with every generator and every group generator."""
    _require_graded(action)
    P = action.algebra
    probes = [("x", SkewElement.word(action, (i,))) for i in range(len(P.generators))]
    probes += [("g", SkewElement.group_element(action, s)) for s in action.group.generators]
    basis = skew_basis(action, d)
    columns = []
    for g, m in basis:
        b = SkewElement(action, {(g, m): ONE})
        col: dict = {}
        for k, (tag, s) in enumerate(probes):
            comm = b * s - s * b
            for key, c in comm.data.items():
                col[(k, key)] = c
        columns.append(col)
    kernel = nullspace(columns)
    vecs = [{basis[j]: c for j, c in v.items()} for v in kernel]
    return [SkewElement(action, v) for v in canonical_basis(vecs, key_order=basis)]


def ideal_growth_probe(action: GroupAction, d_max: int) -> dict:
    """Degreewise dimensions of the two-sided ideal generated by e and of the quotient."""
    _require_graded(action)
    P = action.algebra
    G = action.group
    c = action._inv_size
    ideal_dims, quotient_dims, ambient = [], [], []
    for d in range(d_max + 1):
        total = G.size * len(normal_monomials(P, d))
        ech = Echelon()
        done = False
        for d1 in range(d + 1):
            if done:
                break
            for m1 in normal_monomials(P, d1):
                if done:
                    break
                for m2 in normal_monomials(P, d - d1):
                    # m1 * e * m2 = (1/|G|) sum_h m1 h(m2) h
                    base: dict = {}
                    for h in range(G.size):
                        for w3, x in action.act_word(h, m2).items():
                            for w, y in P.reduce_word(m1 + w3).items():
                                _acc(base, (h, w), c * x * y)
                    if not base:
                        continue
                    elem = SkewElement(action, base)
                    for g in range(G.size):
                        ech.add(elem.right_group(g).data)
                        if len(ech) == total:
                            done = True
                            break
                    if done:
                        break
        ambient.append(total)
        ideal_dims.append(len(ech))
        quotient_dims.append(total - len(ech))
    first_zero = None
    for d in range(d_max + 1):
        if all(q == 0 for q in quotient_dims[d:]):
            first_zero = d
            break
    ffree = action.is_fixed_point_free()
    others = action.fixes_others()
    return {
        "ambient_dims": ambient,
        "ideal_dims": ideal_dims,
        "quotient_dims": quotient_dims,
        "quotient_total": sum(quotient_dims),
        "stabilized_zero": first_zero is not None,
        "first_zero_degree": first_zero,
        "fixed_point_free": ffree,
        "fixes_other_generators": others,
        "theorem_applies": ffree and others,
        "group_order": G.size,
        "d_max": d_max,
    }


# ----------------------------------------------------------------------
# S = C^n permuted cyclically by Z_n


def perm_skew_center(n: int) -> dict:
    """Center, radical and two-sided ideals of C^n * Z_n (shift action)."""
    if n < 1:
        raise ValueError("n must be positive")
    dim = n * n

    def idx(i, a):
        return i * n + a

    # (v_i s^a)(v_j s^b) = v_i v_{j+a} s^{a+b}
    def mult(x: int, y: int):
        i, a = divmod(x, n)
        j, b = divmod(y, n)
        if i != (j + a) % n:
            return None
        return idx(i, (a + b) % n)

    def times(u: dict, v: dict) -> dict:
        out: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                z = mult(x, y)
                if z is not None:
                    _acc(out, z, a * b)
        return out

    basis = [{k: ONE} for k in range(dim)]
    columns = []
    for k in range(dim):
        col: dict = {}
        for t in range(dim):
            for z, c in times(basis[k], basis[t]).items():
                _acc(col, (t, z), c)
            for z, c in times(basis[t], basis[k]).items():
                _acc(col, (t, z), -c)
        columns.append(col)
    center = nullspace(columns)
    # trace form tr(L_{xy})
    def trace_left(x: int) -> int:
        return sum(1 for y in range(dim) if mult(x, y) == y)

    gram = []
    for a in range(dim):
        row = {}
        for b in range(dim):
            z = mult(a, b)
            if z is not None:
                t = trace_left(z)
                if t:
                    row[b] = Cyclotomic.rational(t)
        gram.append(row)
    radical_dim = dim - rank(gram)
    ideal_dims = []
    for k in range(dim):
        ech = Echelon()
        for u in range(dim):
            left = times(basis[u], basis[k])
            if not left:
                continue
            for w in range(dim):
                v = times(left, basis[w])
                if v:
                    ech.add(v)
        ideal_dims.append(len(ech))
    invariants = 1  # sum of the v_i spans the fixed vectors of a transitive permutation action
    return {
        "n": n,
        "dimension": dim,
        "center_dim": len(center),
        "center_basis": [
            {f"v{z // n}*s^{z % n}": str(c) for z, c in sorted(v.items())} for v in canonical_basis(center)
        ],
        "radical_dim": radical_dim,
        "invariant_dim": invariants,
        "ideal_dims_from_basis": ideal_dims,
        "proper_ideal_found": any(0 < x < dim for x in ideal_dims),
        "simple": len(center) == 1 and radical_dim == 0 and all(x == dim for x in ideal_dims),
    }
