"""Quadratic algebras given by ordered generators and normal-ordering rules.

Monomials are words (tuples of generator indices).  A word is normal when no
adjacent pair is the left side of a rule; for the presets this means the
letters are sorted and nilpotent letters appear at most once.  Rewriting
always applies the leftmost rule; confluence makes the result canonical.
"""
from __future__ import annotations

from math import comb
from typing import Iterable, Mapping, Sequence

from .exactnum import Cyclotomic, ExprParser, ParseError, as_cyc, nullspace, zeta, Echelon

__all__ = [
    "AlgebraError",
    "TerminationError",
    "UngradedError",
    "AlgebraMismatch",
    "QuadraticPresentation",
    "NCPoly",
    "preset_algebra",
    "polynomial_ring",
    "exterior_algebra",
    "tensor_presentation",
    "normal_form",
    "multiply",
    "confluence_check",
    "graded_dimension",
    "normal_monomials",
    "center_basis",
    "specialize_z",
    "parse_poly",
    "canonical_basis",
    "pbw_dimension",
    "presentation_from_text",
    "canonical_kind",
]

ONE = Cyclotomic.rational(1)

KINDS = ("B_n", "A_n", "C_n", "Exterior_n", "CnShriek", "BnShriek", "custom")

_KIND_ALIASES = {
    "b": "B_n", "b_n": "B_n", "bn": "B_n",
    "a": "A_n", "a_n": "A_n", "an": "A_n",
    "c": "C_n", "c_n": "C_n", "cn": "C_n",
    "e": "Exterior_n", "ext": "Exterior_n", "exterior": "Exterior_n", "exterior_n": "Exterior_n",
    "cs": "CnShriek", "cnshriek": "CnShriek", "c!": "CnShriek",
    "bs": "BnShriek", "bnshriek": "BnShriek", "b!": "BnShriek",
}


class AlgebraError(ValueError):
    pass


class TerminationError(AlgebraError):
    pass


class UngradedError(AlgebraError):
    pass


class AlgebraMismatch(AlgebraError):
    pass


def _acc(d: dict, key, val) -> None:
    old = d.get(key)
    new = val if old is None else old + val
    if new:
        d[key] = new
    elif old is not None:
        del d[key]


class QuadraticPresentation:
    """Generators plus rewrite rules ``(a, b) -> [(coeff, word), ...]``.

    Rules with a > b are swap rules, rules with a == b are power rules.
    ``weights`` refines the degree-lexicographic order used by the
    termination guard: words compare by (length, total weight, letters).
    """

    def __init__(
        self,
        generators: Sequence[str],
        rules: Mapping[tuple[int, int], Sequence[tuple]],
        kind: str = "custom",
        n: int | None = None,
        weights: Sequence[int] | None = None,
        aliases: Mapping[str, str] | None = None,
        check: bool = True,
    ):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise AlgebraError("generator names must be distinct")
        self.kind = kind
        self.n = n
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.generators)
        self.rules = {
            (int(a), int(b)): tuple((as_cyc(c), tuple(w)) for c, w in rhs if as_cyc(c))
            for (a, b), rhs in rules.items()
        }
        self._index = {g: i for i, g in enumerate(self.generators)}
        for alias, target in (aliases or {}).items():
            self._index.setdefault(alias, self._index[target])
        self._nf: dict[tuple, dict] = {}
        self._monomials: dict[int, list] = {}
        self.graded = all(len(w) == 2 for rhs in self.rules.values() for _, w in rhs)
        if check:
            self._termination_guard()

    # ------------------------------------------------------------------
    def order_key(self, word: tuple) -> tuple:
        return (len(word), sum(self.weights[i] for i in word), word)

    def is_normal(self, word: tuple) -> bool:
        rules = self.rules
        return not any((word[i], word[i + 1]) in rules for i in range(len(word) - 1))

    def _termination_guard(self) -> None:
        for (a, b), rhs in self.rules.items():
            for i in (a, b):
                if not 0 <= i < len(self.generators):
                    raise AlgebraError(f"rule refers to unknown generator index {i}")
            lhs = (a, b)
            for _, w in rhs:
                if len(w) > 2:
                    raise AlgebraError(f"rule {self.word_str(lhs)} has a right side of degree > 2")
                if not self.is_normal(w):
                    raise TerminationError(
                        f"rule {self.word_str(lhs)} -> ... contains {self.word_str(w)}, which is not normal"
                    )
                if not self.order_key(w) < self.order_key(lhs):
                    raise TerminationError(
                        f"rule {self.word_str(lhs)} -> ... does not decrease the monomial order ({self.word_str(w)})"
                    )

    @property
    def swap_rules(self) -> dict:
        return {k: v for k, v in self.rules.items() if k[0] > k[1]}

    @property
    def power_rules(self) -> dict:
        return {k: v for k, v in self.rules.items() if k[0] == k[1]}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown generator {name!r}; generators are {', '.join(self.generators)}") from None

    def word_str(self, word: tuple) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.generators[word[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def __repr__(self):
        tag = f"{self.kind}({self.n})" if self.n is not None else self.kind
        return f"QuadraticPresentation<{tag}: {', '.join(self.generators)}>"

    # ------------------------------------------------------------------
    def reduce_word(self, word: tuple) -> dict:
        """Normal form of a word as a dict word -> coefficient (memoized)."""
        cached = self._nf.get(word)
        if cached is not None:
            return cached
        rules = self.rules
        rhs = None
        for i in range(len(word) - 1):
            rhs = rules.get((word[i], word[i + 1]))
            if rhs is not None:
                break
        if rhs is None:
            result = {word: ONE}
        else:
            result = {}
            prefix, suffix = word[:i], word[i + 2 :]
            for c, w in rhs:
                for m, x in self.reduce_word(prefix + w + suffix).items():
                    _acc(result, m, c * x)
        self._nf[word] = result
        return result

    # element constructors
    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): ONE})

    def scalar(self, c) -> "NCPoly":
        c = as_cyc(c)
        return NCPoly(self, {(): c} if c else {})

    def gen(self, name) -> "NCPoly":
        i = name if isinstance(name, int) else self.index(name)
        return NCPoly(self, {(i,): ONE})

    def monomial(self, word: Iterable) -> "NCPoly":
        return normal_form(word, self)

    def parse(self, text: str, order: int = 1) -> "NCPoly":
        return parse_poly(self, text, order)


class NCPoly:
    """A linear combination of normal words of a presentation."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: QuadraticPresentation, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _check(self, other: "NCPoly"):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("polynomials belong to different presentations")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = self.algebra.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return NCPoly(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = as_cyc(c)
        if not c:
            return NCPoly(self.algebra, {})
        return NCPoly(self.algebra, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        P = self.algebra
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                ab = a * b
                for w, c in P.reduce_word(u + v).items():
                    _acc(out, w, ab * c)
        return NCPoly(P, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.algebra is other.algebra and self.terms == other.terms
        try:
            return self == self.algebra.scalar(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "NCPoly":
        return NCPoly(self.algebra, {w: c for w, c in self.terms.items() if len(w) == d})

    def coefficient(self, word) -> Cyclotomic:
        return self.terms.get(tuple(word), Cyclotomic.rational(0))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NCPoly({self})"


def format_poly(p: NCPoly) -> str:
    P = p.algebra
    pieces = []
    for w, c in p.sorted_terms():
        mono = P.word_str(w) if w else ""
        if c.is_single_term():
            s = str(c)
            neg = s.startswith("-")
            body = s[1:] if neg else s
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
        else:
            neg = False
            body = f"({c})*{mono}" if mono else f"({c})"
        pieces.append((neg, body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# ----------------------------------------------------------------------
# presets


def _preset_names(n: int, with_z: bool) -> tuple[list[str], dict]:
    if n == 1:
        names = ["X", "Y"]
        aliases = {"X1": "X", "Y1": "Y"}
    else:
        names = [f"X{i}" for i in range(1, n + 1)] + [f"Y{i}" for i in range(1, n + 1)]
        aliases = {}
    if with_z:
        names.append("Z")
    return names, aliases


def canonical_kind(kind: str) -> str:
    if kind in KINDS:
        return kind
    key = str(kind).strip().lower()
    if key in _KIND_ALIASES:
        return _KIND_ALIASES[key]
    raise AlgebraError(f"unknown algebra kind {kind!r}")


def preset_algebra(kind: str, n: int) -> QuadraticPresentation:
    """One of the standard presentations with n pairs of generators."""
    kind = canonical_kind(kind)
    if kind == "custom":
        raise AlgebraError("custom presentations are built with QuadraticPresentation directly")
    if not isinstance(n, int) or n <= 0:
        raise AlgebraError(f"n must be a positive integer, got {n!r}")
    with_z = kind in ("B_n", "BnShriek")
    names, aliases = _preset_names(n, with_z)
    k = len(names)
    X = list(range(n))
    Y = list(range(n, 2 * n))
    z = 2 * n
    rules: dict = {}
    weights = [1] * k
    if kind in ("B_n", "A_n", "C_n"):
        for b in range(k):
            for a in range(b):
                rhs = [(1, (a, b))]
                if kind != "C_n" and a in X and b in Y and b - n == a:
                    rhs.append((-1, (z, z) if kind == "B_n" else ()))
                rules[(b, a)] = rhs
        if kind == "B_n":
            weights[z] = 0
    elif kind in ("Exterior_n", "CnShriek", "BnShriek"):
        for b in range(k):
            for a in range(b):
                rules[(b, a)] = [(-1, (a, b))]
        for a in X + Y:
            rules[(a, a)] = []
        if kind == "BnShriek":
            rules[(z, z)] = [(-1, (X[i], Y[i])) for i in range(n)]
    return QuadraticPresentation(names, rules, kind=kind, n=n, weights=weights, aliases=aliases)


def polynomial_ring(names: Sequence[str]) -> QuadraticPresentation:
    k = len(names)
    rules = {(b, a): [(1, (a, b))] for b in range(k) for a in range(b)}
    return QuadraticPresentation(names, rules, kind="custom")


def exterior_algebra(names: Sequence[str]) -> QuadraticPresentation:
    k = len(names)
    rules = {(b, a): [(-1, (a, b))] for b in range(k) for a in range(b)}
    rules.update({(a, a): [] for a in range(k)})
    return QuadraticPresentation(names, rules, kind="custom")


def tensor_presentation(P: QuadraticPresentation, Q: QuadraticPresentation, suffix: str = "'") -> QuadraticPresentation:
    """P (x) Q: the generators of Q come after those of P and commute with them."""
    offset = len(P.generators)
    names = list(P.generators)
    for g in Q.generators:
        name = g
        while name in names:
            name += suffix
        names.append(name)
    rules = dict(P.rules)
    for (a, b), rhs in Q.rules.items():
        rules[(a + offset, b + offset)] = [(c, tuple(i + offset for i in w)) for c, w in rhs]
    for b in range(offset, len(names)):
        for a in range(offset):
            rules[(b, a)] = [(1, (a, b))]
    return QuadraticPresentation(names, rules, kind="custom", weights=P.weights + Q.weights)


def presentation_from_text(generators: Sequence[str], rules: Mapping[str, str], weights=None, order: int = 1) -> QuadraticPresentation:
    """Build a custom presentation from rules like ``{"Y*X": "X*Y - Z^2"}``.

    Right sides are taken literally (no rewriting), so the termination guard
    sees exactly what was written.
    """
    index = {g: i for i, g in enumerate(generators)}
    parsed = {}
    for lhs, rhs in rules.items():
        lw = _free_parse(lhs, index, order)
        if len(lw.terms) != 1:
            raise ParseError(f"rule left side {lhs!r} must be a single word")
        (word, c), = lw.terms.items()
        if len(word) != 2 or c != 1:
            raise ParseError(f"rule left side {lhs!r} must be a product of two generators")
        parsed[word] = [(c2, w) for w, c2 in _free_parse(rhs, index, order).terms.items()]
    return QuadraticPresentation(generators, parsed, kind="custom", weights=weights)


class _Free:
    # free-algebra element used only while reading rule text
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms

    def __add__(self, o):
        out = dict(self.terms)
        for w, c in o.terms.items():
            _acc(out, w, c)
        return _Free(out)

    def __neg__(self):
        return _Free({w: -c for w, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in o.terms.items():
                _acc(out, u + v, a * b)
        return _Free(out)


def _free_parse(text: str, index: dict, order: int) -> _Free:
    def symbol(name):
        if name == "z":
            return _Free({(): zeta(order)})
        if name not in index:
            raise ParseError(f"unknown generator {name!r}")
        return _Free({(index[name],): ONE})

    return ExprParser(
        text,
        number=lambda k: _Free({(): Cyclotomic.rational(k)} if k else {}),
        symbol=symbol,
        scale=lambda v, q: _Free({w: c * q for w, c in v.terms.items()}),
    ).parse()


# ----------------------------------------------------------------------
# operations


def normal_form(word: Iterable, P: QuadraticPresentation, coeff=1) -> NCPoly:
    """Normal form of ``coeff * word``; letters are names or indices."""
    idx = tuple(w if isinstance(w, int) else P.index(w) for w in word)
    for i in idx:
        if not 0 <= i < len(P.generators):
            raise ParseError(f"generator index {i} out of range")
    c = as_cyc(coeff)
    return NCPoly(P, {m: x * c for m, x in P.reduce_word(idx).items()}) if c else P.zero()


def multiply(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def confluence_check(P: QuadraticPresentation) -> dict:
    """Resolve every overlap a*b*c where both a*b and b*c are rule left sides."""
    failing = []
    overlaps = 0
    for (a, b), rhs1 in sorted(P.rules.items()):
        for (b2, c), rhs2 in sorted(P.rules.items()):
            if b2 != b:
                continue
            overlaps += 1
            left: dict = {}
            for k, w in rhs1:
                for m, x in P.reduce_word(w + (c,)).items():
                    _acc(left, m, k * x)
            right: dict = {}
            for k, w in rhs2:
                for m, x in P.reduce_word((a,) + w).items():
                    _acc(right, m, k * x)
            if left != right:
                failing.append(
                    {
                        "word": P.word_str((a, b, c)),
                        "left": str(NCPoly(P, left)),
                        "right": str(NCPoly(P, right)),
                    }
                )
    return {"resolved": not failing, "overlaps": overlaps, "failing_overlaps": failing}


def _require_graded(P: QuadraticPresentation) -> None:
    if not P.graded:
        raise UngradedError(f"{P!r} is not graded (inhomogeneous rules)")


def graded_dimension(P: QuadraticPresentation, d: int) -> int:
    """Number of normal words of degree d."""
    _require_graded(P)
    if d < 0:
        return 0
    if d == 0:
        return 1
    k = len(P.generators)
    forbidden = set(P.rules)
    counts = [1] * k
    for _ in range(d - 1):
        counts = [sum(counts[a] for a in range(k) if (a, b) not in forbidden) for b in range(k)]
    return sum(counts)


def pbw_dimension(n: int, d: int) -> int:
    """C(d + 2n, 2n): number of monomials X^a Y^b Z^k of total degree d."""
    return comb(d + 2 * n, 2 * n)


def normal_monomials(P: QuadraticPresentation, d: int) -> list[tuple]:
    """Normal words of length d in lexicographic order."""
    cached = P._monomials.get(d)
    if cached is not None:
        return cached
    k = len(P.generators)
    rules = P.rules
    out: list[tuple] = []

    def extend(word):
        if len(word) == d:
            out.append(word)
            return
        for b in range(k):
            if word and (word[-1], b) in rules:
                continue
            extend(word + (b,))

    extend(())
    P._monomials[d] = out
    return out


def canonical_basis(vectors: Sequence[dict], key_order: Sequence | None = None) -> list[dict]:
    """Reduced row echelon basis of the span, pivots chosen by ``key_order``."""
    ech = Echelon()
    pos = {k: i for i, k in enumerate(key_order)} if key_order is not None else None
    rows = []
    for v in vectors:
        v2 = {pos[k] if pos else k: c for k, c in v.items()}
        if ech.add(v2) is None:
            pass
    # back-substitute to the unique reduced form
    rows = [(piv, dict(row)) for piv, row, _ in ech.rows]
    rows.sort(key=lambda t: t[0])
    for i in range(len(rows) - 1, -1, -1):
        piv, row = rows[i]
        for j in range(i):
            pj, rj = rows[j]
            c = rj.get(piv)
            if c:
                for k2, x in row.items():
                    _acc(rj, k2, -(c * x))
    inv = list(key_order) if key_order is not None else None
    return [{(inv[k] if inv else k): c for k, c in row.items()} for _, row in rows]


def center_basis(P: QuadraticPresentation, d: int) -> list[NCPoly]:
    """Basis of the degree-d central elements (commuting with every generator)."""
    _require_graded(P)
    monos = normal_monomials(P, d)
    gens = [((g,), ONE) for g in range(len(P.generators))]
    columns = []
    for m in monos:
        col: dict = {}
        for g, _ in gens:
            for w, c in P.reduce_word(m + g).items():
                _acc(col, (g[0], w), c)
            for w, c in P.reduce_word(g + m).items():
                _acc(col, (g[0], w), -c)
        columns.append(col)
    kernel = nullspace(columns)
    vecs = [{monos[j]: c for j, c in v.items()} for v in kernel]
    basis = canonical_basis(vecs, key_order=monos)
    return [NCPoly(P, b) for b in basis]


def specialize_z(p: NCPoly, c) -> NCPoly:
    """Image of p under Z -> c: into A_n when c != 0, C_n when c = 0.

    For c != 0 the quotient B_n/(Z - c) has [X_i, Y_i] = c^2, so it is identified
    with A_n through X_i -> c^2 X_i.  That keeps the map multiplicative for every
    c and is the plain substitution when c^2 = 1.
    """
    P = p.algebra
    if P.kind != "B_n":
        raise AlgebraError("specialize_z expects a polynomial over a B_n presentation")
    c = as_cyc(c)
    target = _specialization_target(P.n, bool(c))
    z = 2 * P.n
    out: dict = {}
    for w, x in p.terms.items():
        k = w.count(z)
        rest = tuple(i for i in w if i != z)
        coef = x * (c**k) if k else x
        if c:
            xs = sum(1 for i in rest if i < P.n)
            if xs:
                coef = coef * c ** (2 * xs)
        if coef:
            for m, y in target.reduce_word(rest).items():
                _acc(out, m, coef * y)
    return NCPoly(target, out)


_targets: dict = {}


def _specialization_target(n: int, nonzero: bool) -> QuadraticPresentation:
    key = (n, nonzero)
    if key not in _targets:
        _targets[key] = preset_algebra("A_n" if nonzero else "C_n", n)
    return _targets[key]


def parse_poly(P: QuadraticPresentation, text: str, order: int = 1) -> NCPoly:
    """Read a polynomial such as ``3/2*X1*Y2*Z^3`` or ``-z^2*X1``."""

    def symbol(name):
        if name == "z":
            if order <= 2:
                raise ParseError("scalar symbol z needs --order > 2")
            return P.scalar(zeta(order))
        return P.gen(P.index(name))

    return ExprParser(
        str(text),
        number=lambda k: P.scalar(Cyclotomic.rational(k, order)),
        symbol=symbol,
        scale=lambda v, q: v.scale(q),
    ).parse()
