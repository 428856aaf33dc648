"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as its reduced residue modulo the N-th
cyclotomic polynomial, in the power basis 1, z, ..., z^(phi(N)-1).  Rational
coefficients are gmpy2 ``mpq`` values.  Elements of different orders can be
combined; the result lives in the lcm order.
"""
from __future__ import annotations

import re
import threading
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "Cyclotomic",
    "CycMatrix",
    "IncompatibleOrders",
    "SingularMatrix",
    "ParseError",
    "cyclotomic_polynomial",
    "cyc_embed",
    "zeta",
    "as_cyc",
    "parse_scalar",
    "Echelon",
    "nullspace",
    "rank",
]


class IncompatibleOrders(ValueError):
    pass


class SingularMatrix(ZeroDivisionError):
    pass


class ParseError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


_phi_lock = threading.Lock()


@lru_cache(maxsize=None)
def _cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    # x^n - 1 divided by every Phi_d with d a proper divisor of n
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_divide(num, list(_cyclotomic_polynomial(d)))
    return tuple(num)


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    with _phi_lock:
        return _cyclotomic_polynomial(n)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for i, di in enumerate(den):
                num[k - dn + i] -= c * di
    assert not any(num), "cyclotomic division left a remainder"
    return quot


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(poly: list, n: int) -> tuple:
    """Residue of ``poly`` (list, low degree first) modulo Phi_n."""
    phi_poly = cyclotomic_polynomial(n)
    f = len(phi_poly) - 1
    if len(poly) <= f:
        return tuple(poly) + (mpq(0),) * (f - len(poly))
    poly = list(poly)
    for k in range(len(poly) - 1, f - 1, -1):
        c = poly[k]
        if c:
            base = k - f
            for i in range(f):
                pi = phi_poly[i]
                if pi:
                    poly[base + i] -= c * pi
    return tuple(poly[:f])


def _small_order(n: int) -> int:
    # Q(zeta_2) = Q, so order 2 is stored as order 1
    return 1 if n == 2 else n


class Cyclotomic:
    """An element of Q(zeta_N)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence):
        # coeffs must already be a reduced residue of length phi(order)
        self.order = order
        self.coeffs = tuple(coeffs)

    # constructors
    @staticmethod
    def rational(q, order: int = 1) -> "Cyclotomic":
        q = mpq(q)
        if order <= 2:
            return Cyclotomic(1, (q,))
        return Cyclotomic(order, (q,) + (mpq(0),) * (_phi(order) - 1))

    @staticmethod
    def from_poly(order: int, poly: Iterable) -> "Cyclotomic":
        """Reduce an arbitrary polynomial in z (low degree first)."""
        vals = [mpq(c) for c in poly]
        if order == 2:
            # z = -1
            return Cyclotomic(1, (sum((c if k % 2 == 0 else -c for k, c in enumerate(vals)), mpq(0)),))
        if not vals:
            vals = [mpq(0)]
        return Cyclotomic(order, _reduce(vals, order))

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # coercion
    def embed(self, order: int) -> "Cyclotomic":
        return cyc_embed(order, self)

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = as_cyc(other)
        n1, n2 = self.order, other.order
        if n1 == n2:
            return self, other
        if n2 == 1:
            return self, Cyclotomic.rational(other.coeffs[0], n1)
        if n1 == 1:
            return Cyclotomic.rational(self.coeffs[0], n2), other
        n = _lcm(n1, n2)
        return cyc_embed(n, self), cyc_embed(n, other)

    # arithmetic
    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                q = mpq(other)
            except TypeError:
                return NotImplemented
            return Cyclotomic(self.order, tuple(x * q for x in self.coeffs))
        if other.order == 1:
            q = other.coeffs[0]
            return Cyclotomic(self.order, tuple(x * q for x in self.coeffs))
        if self.order == 1:
            q = self.coeffs[0]
            return Cyclotomic(other.order, tuple(x * q for x in other.coeffs))
        a, b = self._pair(other)
        ac, bc = a.coeffs, b.coeffs
        f = len(ac)
        prod = [mpq(0)] * (2 * f - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.order, _reduce(prod, a.order))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.coeffs[0], self.order)
        inv = _poly_inverse_mod(list(self.coeffs), list(cyclotomic_polynomial(self.order)))
        return Cyclotomic(self.order, _reduce(inv, self.order))

    def __truediv__(self, other):
        if not isinstance(other, Cyclotomic):
            q = mpq(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.order, tuple(x / q for x in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_cyc(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "Cyclotomic":
        """Complex conjugate: z -> z^-1."""
        n = self.order
        if n == 1:
            return self
        poly = [mpq(0)] * n
        for k, c in enumerate(self.coeffs):
            poly[(-k) % n] += c
        return Cyclotomic(n, _reduce(poly, n))

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = as_cyc(other)
            except TypeError:
                return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal values of different orders must hash alike; only rationals
        # are cheap to canonicalize, so irrational values share one bucket
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash("irrational-cyclotomic")

    def sort_key(self) -> tuple:
        return (self.order, tuple(self.coeffs))

    def to_complex(self) -> complex:
        import cmath

        w = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * w**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self})"

    def __str__(self):
        return format_scalar(self)

    def is_single_term(self) -> bool:
        return sum(1 for c in self.coeffs if c) <= 1


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [mpq(0)], a
    q = [mpq(0)] * (len(a) - len(b) + 1)
    lead = mpq(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for i, bi in enumerate(b):
                a[k + i] -= c * bi
    rem = _poly_trim(a[: len(b) - 1] or [mpq(0)])
    return q, rem


def _poly_mul(a: list, b: list) -> list:
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [mpq(0)] * (n - len(a))
    b = list(b) + [mpq(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list, m: list) -> list:
    # extended Euclid: s*a = r (mod m)
    r0, r1 = _poly_trim([mpq(c) for c in m]), _poly_trim([mpq(c) for c in a])
    s0, s1 = [mpq(0)], [mpq(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if r1[0] == 0:
        raise ZeroDivisionError("element is not invertible")
    return [c / r1[0] for c in s1]


def as_cyc(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    try:
        return Cyclotomic(1, (mpq(x),))
    except (TypeError, ValueError):
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number") from None


def zeta(order: int, k: int = 1) -> Cyclotomic:
    """The root of unity exp(2 pi i k / order)."""
    k %= order
    poly = [mpq(0)] * order
    poly[k] = mpq(1)
    return Cyclotomic.from_poly(order, poly)


def cyc_embed(order: int, x: Cyclotomic) -> Cyclotomic:
    """View ``x`` (of order M) as an element of Q(zeta_order); M must divide order."""
    x = as_cyc(x)
    m = x.order
    if order == m:
        return x
    if order % m:
        raise IncompatibleOrders(f"order {m} does not divide {order}")
    if m == 1:
        return Cyclotomic.rational(x.coeffs[0], order)
    step = order // m
    poly = [mpq(0)] * ((len(x.coeffs) - 1) * step + 1)
    for k, c in enumerate(x.coeffs):
        poly[k * step] = c
    return Cyclotomic.from_poly(order, poly)


# ----------------------------------------------------------------------
# text syntax


def _format_rational(q) -> str:
    return str(mpq(q))


def format_scalar(x: Cyclotomic) -> str:
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        a = abs(c)
        if k == 0:
            body = _format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_rational(a)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2)))
        else:
            op = m.group(3)
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class ExprParser:
    """Recursive-descent parser for sums of products with ^ and rational /.

    ``number`` maps an integer literal to a value, ``symbol`` maps a name.
    Values must support +, -, unary -, * and ``scale(q)`` is used for
    division by an integer literal.
    """

    def __init__(self, text: str, number: Callable, symbol: Callable, scale: Callable):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.number = number
        self.symbol = symbol
        self.scale = scale

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            if op == "*":
                val = val * self.unary()
            else:
                kind, tok = self.take()
                if kind != "num":
                    raise ParseError(f"division only by integer literals in {self.text!r}")
                if int(tok) == 0:
                    raise ParseError("division by zero literal")
                val = self.scale(val, mpq(1, int(tok)))
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, tok = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            k = int(tok)
            result = None
            for _ in range(k):
                result = base if result is None else result * base
            if result is None:
                result = self.number(1)
            return result
        return base

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return self.number(int(tok))
        if kind == "name":
            return self.symbol(tok)
        if (kind, tok) == ("op", "("):
            val = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return val
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_scalar(text: str, order: int = 1) -> Cyclotomic:
    """Parse e.g. ``1/2 - 1/2*z^3`` with z = exp(2 pi i / order)."""

    def symbol(name):
        if name != "z":
            raise ParseError(f"unknown symbol {name!r} in scalar {text!r}")
        if order == 1:
            raise ParseError("symbol z needs a cyclotomic order > 1")
        return zeta(order)

    val = ExprParser(
        str(text),
        number=lambda k: Cyclotomic.rational(k, order),
        symbol=symbol,
        scale=lambda v, q: v * q,
    ).parse()
    return val


# ----------------------------------------------------------------------
# matrices


class CycMatrix:
    """Dense matrix with cyclotomic entries."""

    __slots__ = ("rows", "cols", "entries", "_key")

    def __init__(self, entries: Sequence[Sequence], order: int | None = None):
        rows = [[as_cyc(x) for x in row] for row in entries]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows must be nonempty and of equal length")
        n = order or 1
        for row in rows:
            for x in row:
                n = _lcm(n, x.order)
        n = _small_order(n)
        self.entries = tuple(tuple(cyc_embed(n, x) if x.order != n else x for x in row) for row in rows)
        self.rows = len(rows)
        self.cols = len(rows[0])
        self._key = None

    @property
    def order(self) -> int:
        return self.entries[0][0].order

    @staticmethod
    def identity(n: int, order: int = 1) -> "CycMatrix":
        one, zero = Cyclotomic.rational(1, order), Cyclotomic.rational(0, order)
        return CycMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def diag(values: Sequence) -> "CycMatrix":
        n = len(values)
        return CycMatrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def parse(rows: Sequence[Sequence[str]], order: int = 1) -> "CycMatrix":
        return CycMatrix([[parse_scalar(str(x), order) for x in row] for row in rows], order)

    def embed(self, order: int) -> "CycMatrix":
        return CycMatrix(self.entries, order)

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(x.coeffs for row in self.entries for x in row)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))

    def __hash__(self):
        return hash(self.key())

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other: "CycMatrix") -> "CycMatrix":
        if not isinstance(other, CycMatrix):
            c = as_cyc(other)
            return CycMatrix([[c * x for x in row] for row in self.entries])
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = None
                for k, a in enumerate(row):
                    if a:
                        b = other.entries[k][j]
                        if b:
                            t = a * b
                            acc = t if acc is None else acc + t
                new.append(acc if acc is not None else Cyclotomic.rational(0, self.order))
            out.append(new)
        return CycMatrix(out)

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def transpose(self) -> "CycMatrix":
        return CycMatrix([list(col) for col in zip(*self.entries)])

    def trace(self) -> Cyclotomic:
        self._require_square()
        acc = Cyclotomic.rational(0, self.order)
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def _require_square(self):
        if self.rows != self.cols:
            raise ValueError("square matrix required")

    def det(self) -> Cyclotomic:
        """Determinant by Bareiss fraction-free elimination."""
        self._require_square()
        n = self.rows
        m = [list(row) for row in self.entries]
        sign = 1
        prev = Cyclotomic.rational(1, self.order)
        for k in range(n - 1):
            if not m[k][k]:
                swap = next((i for i in range(k + 1, n) if m[i][k]), None)
                if swap is None:
                    return Cyclotomic.rational(0, self.order)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pk = m[k][k]
            inv_prev = prev.inverse()
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pk - m[i][k] * m[k][j]) * inv_prev
            prev = pk
        d = m[n - 1][n - 1]
        return d if sign > 0 else -d

    def inverse(self) -> "CycMatrix":
        self._require_square()
        n = self.rows
        one = Cyclotomic.rational(1, self.order)
        zero = Cyclotomic.rational(0, self.order)
        m = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.entries)]
        for col in range(n):
            piv = next((i for i in range(col, n) if m[i][col]), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            m[col], m[piv] = m[piv], m[col]
            inv = m[col][col].inverse()
            m[col] = [x * inv for x in m[col]]
            for i in range(n):
                if i != col and m[i][col]:
                    c = m[i][col]
                    m[i] = [a - c * b for a, b in zip(m[i], m[col])]
        return CycMatrix([row[n:] for row in m])

    def eigenvalue_one_test(self) -> bool:
        """True iff 1 is an eigenvalue, i.e. det(m - I) = 0."""
        self._require_square()
        return (self - CycMatrix.identity(self.rows, self.order)).det().is_zero()

    def to_text(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    def __repr__(self):
        return f"CycMatrix({self.to_text()})"


# ----------------------------------------------------------------------
# sparse linear algebra over cyclotomics; vectors are dicts key -> Cyclotomic


def _axpy(v: dict, c: Cyclotomic, row: dict) -> None:
    """v -= c * row, in place, dropping zeros."""
    for k, x in row.items():
        t = v.get(k)
        t = -(c * x) if t is None else t - c * x
        if t:
            v[k] = t
        else:
            v.pop(k, None)


class Echelon:
    """Incremental row echelon form; optionally tracks combinations.

    Rows are stored with pivot coefficient 1.  ``add`` returns None when the
    vector was independent, else the combination of previously added vectors
    (by insertion index) that reproduces it, if tracking is on.
    """

    def __init__(self, track: bool = False):
        self.rows: list[tuple[object, dict, dict | None]] = []
        self.pivots: dict = {}
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> tuple[dict, dict | None]:
        v = {k: x for k, x in vec.items() if x}
        combo = {} if self.track else None
        for piv, row, hist in self.rows:
            c = v.get(piv)
            if c:
                _axpy(v, c, row)
                if combo is not None:
                    _axpy(combo, c, hist)
        return v, combo

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: dict):
        index = self.count
        self.count += 1
        v, combo = self.reduce(vec)
        if not v:
            if combo is None:
                return {}
            # vec - sum(combo) = 0  => dependency
            return {k: -c for k, c in combo.items()}
        piv = min(v, key=_sort_token)
        inv = v[piv].inverse()
        row = {k: x * inv for k, x in v.items()}
        hist = None
        if combo is not None:
            combo = dict(combo)
            combo[index] = combo.get(index, Cyclotomic.rational(0)) + 1
            hist = {k: x * inv for k, x in combo.items() if x}
        self.rows.append((piv, row, hist))
        self.pivots[piv] = len(self.rows) - 1
        return None


def _sort_token(k):
    return repr(k) if not isinstance(k, (int, tuple)) else (0, k) if isinstance(k, int) else (1, k)


def _coerce(vec: dict) -> dict:
    return {k: as_cyc(c) for k, c in vec.items() if c}


def rank(vectors: Iterable[dict]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(_coerce(v))
    return len(ech)


def nullspace(columns: Sequence[dict]) -> list[dict]:
    """Kernel of the linear map sending unknown j to ``columns[j]``.

    Returns basis vectors as dicts j -> coefficient.
    """
    ech = Echelon(track=True)
    kernel = []
    for j, col in enumerate(columns):
        dep = ech.add(_coerce(col))
        if dep is not None:
            # col_j = sum dep[i] col_i  -> e_j - sum dep[i] e_i in kernel
            vec = {j: Cyclotomic.rational(1)}
            for i, c in dep.items():
                if i != j:
                    vec[i] = -c
            kernel.append(vec)
    return kernel
