"""Finite matrix groups, exact character tables and McKay quivers."""
from __future__ import annotations

import json
from collections import deque
from math import gcd, isqrt
from pathlib import Path
from typing import Sequence

from .exactnum import Cyclotomic, CycMatrix, as_cyc, cyc_embed, zeta
from .report import CheckReport

__all__ = [
    "GroupError",
    "NotFiniteError",
    "InvalidGeneratorError",
    "GroupSizeError",
    "ConsistencyError",
    "MatrixGroup",
    "CharacterTable",
    "McKayQuiver",
    "group_closure",
    "direct_product",
    "character_table",
    "natural_character",
    "mckay_quiver",
    "sl2_subgroup",
    "structure_checks",
    "builtin_group",
    "load_group",
    "euclidean_type",
]


class GroupError(ValueError):
    pass


class NotFiniteError(GroupError):
    pass


class InvalidGeneratorError(GroupError):
    pass


class GroupSizeError(GroupError):
    pass


class ConsistencyError(GroupError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class MatrixGroup:
    """A finite group of matrices with its multiplication table.

    Elements are numbered in breadth-first order from the generators, the
    identity being element 0.
    """

    def __init__(self, elements, table, generators, order):
        self.elements: list[CycMatrix] = elements
        self.table: list[list[int]] = table
        self.generators: list[int] = generators
        self.cyc_order = order
        self.degree = elements[0].rows
        self.identity = 0
        n = len(elements)
        self.inverse = [0] * n
        for i in range(n):
            row = table[i]
            for j in range(n):
                if row[j] == 0:
                    self.inverse[i] = j
                    break
        self._index = {m.key(): i for i, m in enumerate(elements)}
        self.element_orders = [self._element_order(i) for i in range(n)]
        self.exponent = 1
        for o in self.element_orders:
            self.exponent = _lcm(self.exponent, o)
        self.classes, self.class_of = self._conjugacy_classes()

    def __len__(self):
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def power(self, i: int, k: int) -> int:
        out = 0
        for _ in range(k % self.element_orders[i]):
            out = self.table[out][i]
        return out

    def index_of(self, m: CycMatrix) -> int:
        m = m.embed(self.cyc_order) if m.order != self.cyc_order else m
        try:
            return self._index[m.key()]
        except KeyError:
            raise GroupError("matrix is not an element of the group") from None

    def _element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def _conjugacy_classes(self):
        n = len(self.elements)
        class_of = [-1] * n
        raw = []
        gens = self.generators or [0]
        for x in range(n):
            if class_of[x] >= 0:
                continue
            orbit = [x]
            class_of[x] = len(raw)
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for s in gens:
                    z = self.table[self.table[s][y]][self.inverse[s]]
                    if class_of[z] < 0:
                        class_of[z] = len(raw)
                        orbit.append(z)
                        queue.append(z)
            raw.append(sorted(orbit))
        raw.sort(key=lambda c: (len(c), c[0]))
        class_of = [0] * n
        for ci, c in enumerate(raw):
            for x in c:
                class_of[x] = ci
        return raw, class_of

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.generators for b in self.generators)

    def determinants(self) -> list[Cyclotomic]:
        return [m.det() for m in self.elements]

    def __repr__(self):
        return f"MatrixGroup(order={self.size}, degree={self.degree})"


def group_closure(generators: Sequence[CycMatrix], max_order: int = 200, order: int | None = None) -> MatrixGroup:
    """Close a list of invertible matrices under multiplication."""
    gens = [g if isinstance(g, CycMatrix) else CycMatrix(g) for g in generators]
    if not gens:
        raise InvalidGeneratorError("at least one generator is required")
    size = gens[0].rows
    n = order or 1
    for g in gens:
        if g.rows != g.cols or g.rows != size:
            raise InvalidGeneratorError("generators must be square matrices of equal size")
        n = _lcm(n, g.order)
    n = 1 if n == 2 else n
    gens = [g.embed(n) for g in gens]
    for k, g in enumerate(gens):
        if g.det().is_zero():
            raise InvalidGeneratorError(f"generator {k} is not invertible")
    ident = CycMatrix.identity(size, n)
    elements = [ident]
    index = {ident.key(): 0}
    parent: list[tuple[int, int]] = [(-1, -1)]
    right: list[list[int]] = []
    i = 0
    while i < len(elements):
        row = []
        for s, g in enumerate(gens):
            m = elements[i] * g
            key = m.key()
            j = index.get(key)
            if j is None:
                if len(elements) >= max_order:
                    raise NotFiniteError(f"closure exceeds max_order={max_order}")
                j = len(elements)
                index[key] = j
                elements.append(m)
                parent.append((i, s))
            row.append(j)
        right.append(row)
        i += 1
    gen_idx = [index[g.key()] for g in gens]
    total = len(elements)
    # g*h from the Cayley graph: h = parent(h) * gen
    table = [[0] * total for _ in range(total)]
    for g in range(total):
        row = table[g]
        row[0] = g
        for h in range(1, total):
            p, s = parent[h]
            row[h] = right[row[p]][s]
    seen = []
    for k in gen_idx:
        if k not in seen:
            seen.append(k)
    return MatrixGroup(elements, table, seen, n)


def direct_product(G: MatrixGroup, H: MatrixGroup, max_order: int = 400) -> tuple[MatrixGroup, dict]:
    """Block-diagonal G x H and the map (g, h) -> element index."""
    n = _lcm(G.cyc_order, H.cyc_order)

    def block(a: CycMatrix, b: CycMatrix) -> CycMatrix:
        rows = []
        for r in a.entries:
            rows.append(list(r) + [0] * b.cols)
        for r in b.entries:
            rows.append([0] * a.cols + list(r))
        return CycMatrix(rows, n)

    idG = CycMatrix.identity(G.degree)
    idH = CycMatrix.identity(H.degree)
    gens = [block(G.elements[g], idH) for g in G.generators] + [block(idG, H.elements[h]) for h in H.generators]
    P = group_closure(gens, max_order=max_order, order=n)
    pairs = {}
    for g in range(G.size):
        for h in range(H.size):
            pairs[(g, h)] = P.index_of(block(G.elements[g], H.elements[h]))
    return P, pairs


# ----------------------------------------------------------------------
# character tables (Dixon's modular method)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, isqrt(p) + 1))


def _dixon_prime(exponent: int, size: int) -> int:
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * size):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1


def _nullspace_mod(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -m[i][f] % p
        basis.append(v)
    return basis


class CharacterTable:
    """Irreducible characters as rows of class values in Q(zeta_exponent)."""

    def __init__(self, group: MatrixGroup, rows: list[list[Cyclotomic]], order: int):
        self.group = group
        self.rows = rows
        self.cyc_order = order
        self.degrees = [int(r[0].rational_value()) for r in rows]

    def __len__(self):
        return len(self.rows)

    def value(self, i: int, element: int) -> Cyclotomic:
        return self.rows[i][self.group.class_of[element]]

    def inner(self, a: Sequence[Cyclotomic], b: Sequence[Cyclotomic]) -> Cyclotomic:
        """(1/|G|) sum_g a(g) conj(b(g)) for class functions."""
        G = self.group
        acc = Cyclotomic.rational(0)
        for c, cls in enumerate(G.classes):
            acc = acc + a[c] * b[c].conj() * len(cls)
        return acc / G.size

    def is_linear(self) -> bool:
        return all(d == 1 for d in self.degrees)


def character_table(G: MatrixGroup, bound: int = 200) -> CharacterTable:
    if G.size > bound:
        raise GroupSizeError(f"group of order {G.size} exceeds the character table bound {bound}")
    cached = getattr(G, "_char_table", None)
    if cached is not None:
        return cached
    size = G.size
    k = len(G.classes)
    e = G.exponent
    p = _dixon_prime(e, size)
    class_of = G.class_of
    reps = G.class_reps
    csize = [len(c) for c in G.classes]
    inv = G.inverse
    table = G.table
    # c[r][s][t] = #{x in C_r : x^-1 z_t in C_s}
    const = [[[0] * k for _ in range(k)] for _ in range(k)]
    for r, cls in enumerate(G.classes):
        cr = const[r]
        for t, z in enumerate(reps):
            for x in cls:
                cr[class_of[table[inv[x]][z]]][t] += 1
    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    for r in range(1, k):
        if all(len(s) == 1 for s in spaces):
            break
        M = const[r]
        new_spaces = []
        for S in spaces:
            if len(S) == 1:
                new_spaces.append(S)
                continue
            images = [[sum(M[s][t] * v[t] for t in range(k)) % p for s in range(k)] for v in S]
            found = 0
            for lam in range(p):
                # coefficients c with (M - lam) sum c_i v_i = 0
                cols = [[(images[i][s] - lam * S[i][s]) % p for i in range(len(S))] for s in range(k)]
                kern = _nullspace_mod(cols, len(S), p)
                if kern:
                    new_spaces.append(
                        [[sum(c[i] * S[i][t] for i in range(len(S))) % p for t in range(k)] for c in kern]
                    )
                    found += len(kern)
                    if found == len(S):
                        break
            if found != len(S):
                raise ConsistencyError("class matrices are not simultaneously diagonalizable mod p")
        spaces = new_spaces
    if len(spaces) != k or any(len(s) != 1 for s in spaces):
        raise ConsistencyError("failed to split the class algebra into characters")
    star = [class_of[inv[z]] for z in reps]
    omega = pow(_primitive_root(p), (p - 1) // e, p)
    out_order = 1 if e <= 2 else e
    rows = []
    for (w,) in spaces:
        w0 = pow(w[0], p - 2, p)
        w = [x * w0 % p for x in w]
        norm = sum(w[t] * w[star[t]] * pow(csize[t], p - 2, p) for t in range(k)) % p
        deg_sq = size * pow(norm, p - 2, p) % p
        deg = next((d for d in range(1, isqrt(size) + 1) if d * d % p == deg_sq), None)
        if deg is None:
            raise ConsistencyError("no valid character degree found")
        vals_p = [w[t] * deg * pow(csize[t], p - 2, p) % p for t in range(k)]
        row = []
        inv_e = pow(e, p - 2, p)
        for t, x in enumerate(reps):
            powers = [class_of[G.power(x, l)] for l in range(e)]
            poly = []
            for kk in range(e):
                m = sum(vals_p[powers[l]] * pow(omega, (-kk * l) % (p - 1), p) for l in range(e)) * inv_e % p
                if m > deg:
                    raise ConsistencyError("eigenvalue multiplicity out of range while lifting")
                poly.append(m)
            if sum(poly) != deg:
                raise ConsistencyError("lifted multiplicities do not sum to the degree")
            row.append(Cyclotomic.from_poly(e, poly))
        rows.append([cyc_embed(out_order, v) if v.order != out_order else v for v in row])
    rows.sort(key=lambda r: (int(r[0].rational_value()), tuple(v.coeffs for v in r)))
    ct = CharacterTable(G, rows, out_order)
    G._char_table = ct
    return ct


def natural_character(G: MatrixGroup) -> list[Cyclotomic]:
    """Trace of each class representative."""
    return [G.elements[r].trace() for r in G.class_reps]


class McKayQuiver:
    """Arrow counts a[i][j] = multiplicity of S_i in M (x) S_j, arrows i -> j."""

    def __init__(self, table: CharacterTable, counts: list[list[int]]):
        self.table = table
        self.counts = counts
        self.vertices = [str(i) for i in range(len(counts))]

    @property
    def arrow_counts(self) -> list[list[int]]:
        return self.counts

    def arrows(self) -> list[tuple[str, str, str]]:
        out = []
        for i, row in enumerate(self.counts):
            for j, a in enumerate(row):
                for k in range(a):
                    out.append((f"a{i}_{j}_{k}", self.vertices[i], self.vertices[j]))
        return out

    def loops(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.counts)))

    def is_symmetric(self) -> bool:
        n = len(self.counts)
        return all(self.counts[i][j] == self.counts[j][i] for i in range(n) for j in range(n))

    def is_connected(self) -> bool:
        n = len(self.counts)
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j not in seen and (self.counts[i][j] or self.counts[j][i]):
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n


def mckay_quiver(G: MatrixGroup, table: CharacterTable | None = None) -> McKayQuiver:
    table = table or character_table(G)
    chi_m = natural_character(G)
    k = len(table.rows)
    counts = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            prod = [a * b for a, b in zip(chi_m, table.rows[j])]
            val = table.inner(prod, table.rows[i])
            if not val.is_rational():
                raise ConsistencyError(f"multiplicity a[{i}][{j}] = {val} is not rational")
            q = val.rational_value()
            if q.denominator != 1 or q < 0:
                raise ConsistencyError(f"multiplicity a[{i}][{j}] = {q} is not a nonnegative integer")
            counts[i][j] = int(q)
    return McKayQuiver(table, counts)


def euclidean_type(mq: McKayQuiver) -> str | None:
    """Name of the extended Dynkin diagram of a symmetric loop-free McKay quiver."""
    a = mq.counts
    n = len(a)
    if n == 1:
        return "A~0" if a[0][0] == 2 else None
    if not mq.is_symmetric() or mq.loops() or not mq.is_connected():
        return None
    if n == 2:
        return "A~1" if a[0][1] == 2 else None
    if any(x > 1 for row in a for x in row):
        return None
    deg = [sum(row) for row in a]
    edges = sum(deg) // 2
    if edges == n and all(d == 2 for d in deg):
        return f"A~{n - 1}"
    if edges != n - 1:
        return None
    branch = [v for v in range(n) if deg[v] >= 3]
    if len(branch) == 1 and deg[branch[0]] == 4 and n == 5:
        return "D~4"
    if len(branch) == 2 and all(deg[v] == 3 for v in branch):
        return f"D~{n - 1}" if all(sum(1 for u in range(n) if a[v][u] and deg[u] == 1) == 2 for v in branch) else None
    if len(branch) == 1 and deg[branch[0]] == 3:
        c = branch[0]
        arms = []
        for start in range(n):
            if not a[c][start]:
                continue
            length, prev, cur = 1, c, start
            while deg[cur] == 2:
                nxt = next(u for u in range(n) if a[cur][u] and u != prev)
                prev, cur = cur, nxt
                length += 1
            arms.append(length)
        arms.sort()
        return {(2, 2, 2): "E~6", (1, 3, 3): "E~7", (1, 2, 5): "E~8"}.get(tuple(arms))
    return None


# ----------------------------------------------------------------------
# SL(2, C) subgroups


def _quaternion(a, b, c, d, order: int) -> CycMatrix:
    i = zeta(4)
    a, b, c, d = (as_cyc(x) for x in (a, b, c, d))
    return CycMatrix([[a + b * i, c + d * i], [-c + d * i, a - b * i]], order)


def sl2_subgroup(kind: str, n: int | None = None) -> list[CycMatrix]:
    """Generators of a finite subgroup of SL(2, C) of the given type."""
    kind = kind.strip().lower()
    if kind in ("cyclic", "binary_dihedral") and (n is None or n < 1):
        raise GroupError(f"{kind} needs a positive integer parameter n")
    if kind == "cyclic":
        return [CycMatrix.diag([zeta(n), zeta(n, -1)])]
    if kind == "binary_dihedral":
        return [CycMatrix.diag([zeta(2 * n), zeta(2 * n, -1)]), CycMatrix([[0, 1], [-1, 0]])]
    half = Cyclotomic.rational(1) / 2
    if kind == "binary_tetrahedral":
        return [_quaternion(0, 1, 0, 0, 4), _quaternion(0, 0, 1, 0, 4), _quaternion(-half, half, half, half, 4)]
    if kind == "binary_octahedral":
        r = zeta(8) - zeta(8, 3)  # sqrt 2
        h = r.inverse()
        return [_quaternion(-half, half, half, half, 8), _quaternion(h, h, 0, 0, 8)]
    if kind == "binary_icosahedral":
        e = zeta(5)
        s5 = e - e**2 - e**3 + e**4  # sqrt 5
        inv = s5.inverse()
        S = CycMatrix.diag([-(e**3), -(e**2)])
        T = CycMatrix(
            [[-(e - e**4) * inv, (e**2 - e**3) * inv], [(e**2 - e**3) * inv, (e - e**4) * inv]]
        )
        return [S, T]
    raise GroupError(f"unknown subgroup kind {kind!r}")


_CLASSICAL_ORDER = {
    "cyclic": lambda n: n,
    "binary_dihedral": lambda n: 4 * n,
    "binary_tetrahedral": lambda n: 24,
    "binary_octahedral": lambda n: 48,
    "binary_icosahedral": lambda n: 120,
}


def builtin_group(name: str, max_order: int = 200) -> MatrixGroup:
    """Groups named like ``cyclic:4``, ``binary_dihedral:3``, ``binary_tetrahedral``."""
    parts = name.strip().split(":")
    kind = parts[0].lower()
    if kind not in _CLASSICAL_ORDER:
        raise GroupError(f"unknown builtin group {name!r}")
    n = None
    if len(parts) > 1:
        try:
            n = int(parts[1])
        except ValueError:
            raise GroupError(f"bad parameter in builtin group {name!r}") from None
    G = group_closure(sl2_subgroup(kind, n), max_order=max_order)
    expected = _CLASSICAL_ORDER[kind](n)
    if G.size != expected:
        raise ConsistencyError(f"{name} closed to order {G.size}, expected {expected}")
    return G


def load_group(source: str, max_order: int = 200) -> MatrixGroup:
    """``builtin:<name>`` or a path to a JSON/YAML generator file."""
    if source.startswith("builtin:"):
        return builtin_group(source[len("builtin:") :], max_order)
    path = Path(source[len("file:") :] if source.startswith("file:") else source)
    if not path.exists():
        raise GroupError(f"group file {str(path)!r} does not exist")
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        import yaml

        data = yaml.safe_load(text)
    if not isinstance(data, dict) or "generators" not in data:
        raise GroupError("group file needs a 'generators' field")
    order = int(data.get("cyclotomic_order", 1))
    gens = [CycMatrix.parse(m, order) for m in data["generators"]]
    return group_closure(gens, max_order=max_order, order=order)


# ----------------------------------------------------------------------
# structure checks


def structure_checks(table: CharacterTable, mq: McKayQuiver | None = None) -> list[CheckReport]:
    G = table.group
    size = G.size
    k = len(table.rows)
    reports = []
    reports.append(CheckReport("row_count", k == len(G.classes), {"rows": k, "classes": len(G.classes)}))
    bad = [(i, j, str(table.inner(table.rows[i], table.rows[j]))) for i in range(k) for j in range(k)
           if table.inner(table.rows[i], table.rows[j]) != (1 if i == j else 0)]
    reports.append(CheckReport("row_orthogonality", not bad, {"violations": bad}))
    col_bad = []
    for a in range(k):
        for b in range(k):
            s = Cyclotomic.rational(0)
            for row in table.rows:
                s = s + row[a] * row[b].conj()
            want = Cyclotomic.rational(size, 1) / len(G.classes[a]) if a == b else 0
            if s != want:
                col_bad.append((a, b, str(s)))
    reports.append(CheckReport("column_orthogonality", not col_bad, {"violations": col_bad}))
    reports.append(CheckReport(
        "degree_divides_order",
        all(size % d == 0 for d in table.degrees),
        {"degrees": table.degrees, "order": size},
    ))
    reports.append(CheckReport(
        "sum_of_squared_degrees",
        sum(d * d for d in table.degrees) == size,
        {"sum": sum(d * d for d in table.degrees), "order": size},
    ))
    if mq is not None:
        chi_m = natural_character(G)
        deg_m = int(chi_m[0].rational_value())
        dim_ok = all(
            sum(mq.counts[i][j] * table.degrees[j] for j in range(k)) == deg_m * table.degrees[i] for i in range(k)
        )
        reports.append(CheckReport("dimension_count", dim_ok, {"natural_degree": deg_m}))
        armed = G.degree == 2 and size > 1 and all(G.elements[g].det() == 1 for g in G.generators)
        reports.append(CheckReport(
            "no_loops",
            mq.loops() == 0 if armed else True,
            {"loops": mq.loops(), "armed": armed,
             "skipped": not armed, "reason": None if armed else "requires a nontrivial subgroup of SL(2)"},
        ))
        reports.append(CheckReport("symmetric", mq.is_symmetric() if armed else True,
                                   {"symmetric": mq.is_symmetric(), "armed": armed}))
        reports.append(CheckReport("connected", mq.is_connected() if armed else True,
                                   {"connected": mq.is_connected(), "armed": armed}))
        reports.append(CheckReport("euclidean_type", True, {"type": euclidean_type(mq)}))
    return reports
