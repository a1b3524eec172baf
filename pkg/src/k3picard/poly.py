"""Sparse exact multivariate polynomials over F_q, Z and Q.

Terms live in a dict mapping exponent tuples to nonzero coefficients.  The
coefficient ring is one of :data:`ZZ`, :data:`QQ` or a
:class:`~k3picard.ffield.FieldDescriptor`; all of them expose the same small
protocol (``add``, ``mul``, ``neg``, ``inv`` ...).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NonSquare,
    NotDivisible,
    OutOfRange,
    ParseError,
    ZeroDivisor,
    ZeroForm,
    ZeroLine,
)
from .ffield import FieldDescriptor, FqElem, make_field


class IntegerRing:
    tag = "ZZ"
    is_field = False
    characteristic = 0
    zero = 0
    one = 1

    def __repr__(self):
        return "ZZ"

    def __reduce__(self):
        return "ZZ"

    def from_int(self, a):
        return int(a)

    def coerce(self, a):
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise TypeError("%s is not an integer" % a)
            return a.numerator
        return int(a)

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a ** e

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NotDivisible("%d is not a unit in ZZ" % a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        qt, r = divmod(a, b)
        if r:
            raise NotDivisible("%d / %d" % (a, b))
        return qt

    def fmt(self, a):
        return str(a)

    def parse_coeff(self, s):
        if "/" in s:
            return self.coerce(Fraction(s))
        return int(s)


class RationalField:
    tag = "QQ"
    is_field = True
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"

    def from_int(self, a):
        return Fraction(a)

    def coerce(self, a):
        return Fraction(a)

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a ** e

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def fmt(self, a):
        return str(a)

    def parse_coeff(self, s):
        return Fraction(s)


ZZ = IntegerRing()
QQ = RationalField()


def ring_from_tag(tag: str):
    """Inverse of ``ring.tag``: 'ZZ', 'QQ', 'GF(p)' or 'GF(p^n)'."""
    if tag == "ZZ":
        return ZZ
    if tag == "QQ":
        return QQ
    m = re.fullmatch(r"GF\((\d+)(?:\^(\d+))?\)", tag)
    if not m:
        raise ParseError("unknown ring tag %r" % tag)
    return make_field(int(m.group(1)), int(m.group(2) or 1))


def _fast_mod(ring):
    """Return (kind, modulus): 'int' for ZZ/QQ, 'mod' for prime fields, 'gen' otherwise."""
    if ring is ZZ or ring is QQ:
        return "int", 0
    if isinstance(ring, FieldDescriptor) and ring.n == 1:
        return "mod", ring.p
    return "gen", 0


VARIABLE_ALPHABETS = {
    1: ("t",),
    2: ("s", "t"),
    3: ("u", "v", "w"),
    5: tuple("x%d" % i for i in range(5)),
    6: tuple("x%d" % i for i in range(6)),
}


def default_names(nvars: int) -> tuple[str, ...]:
    if nvars in VARIABLE_ALPHABETS:
        return VARIABLE_ALPHABETS[nvars]
    return tuple("x%d" % i for i in range(nvars))


def grevlex_key(e: Sequence[int]):
    return (sum(e), tuple(-x for x in reversed(e)))


class MPoly:
    """Immutable sparse polynomial; do not mutate ``terms`` after construction."""

    __slots__ = ("ring", "nvars", "terms")

    def __init__(self, ring, nvars: int, terms=None, *, _clean=False):
        self.ring = ring
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            t = {}
            for e, c in dict(terms).items():
                e = tuple(e)
                if len(e) != nvars:
                    raise DimensionMismatch("exponent %r has wrong length for %d variables" % (e, nvars))
                c = ring.coerce(c)
                if not ring.is_zero(c):
                    t[e] = c
            self.terms = t

    # constructors --------------------------------------------------------
    @classmethod
    def const(cls, ring, nvars, c):
        c = ring.coerce(c)
        if ring.is_zero(c):
            return cls(ring, nvars, {}, _clean=True)
        return cls(ring, nvars, {(0,) * nvars: c}, _clean=True)

    @classmethod
    def from_codes(cls, ring, nvars, terms):
        """Build from coefficients already in the ring's internal representation.

        The plain constructor reads Python ints as integers; over F_{p^n} that
        would reduce element codes mod p, so internal code paths use this.
        """
        return cls(ring, nvars, {tuple(e): c for e, c in terms.items() if not ring.is_zero(c)}, _clean=True)

    @classmethod
    def zero(cls, ring, nvars):
        return cls(ring, nvars, {}, _clean=True)

    @classmethod
    def one(cls, ring, nvars):
        return cls.const(ring, nvars, 1)

    @classmethod
    def var(cls, ring, nvars, i):
        if not 0 <= i < nvars:
            raise IndexOutOfRange("variable %d of %d" % (i, nvars))
        e = [0] * nvars
        e[i] = 1
        return cls(ring, nvars, {tuple(e): ring.one}, _clean=True)

    @classmethod
    def gens(cls, ring, nvars):
        return [cls.var(ring, nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, ring, nvars, exps, c=1):
        return cls(ring, nvars, {tuple(exps): c})

    # basic queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def coeff(self, exps) -> object:
        return self.terms.get(tuple(exps), self.ring.zero)

    def constant_coeff(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def sorted_terms(self):
        """Terms in descending graded reverse lexicographic order."""
        return sorted(self.terms.items(), key=lambda it: grevlex_key(it[0]), reverse=True)

    def leading_term(self):
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    # arithmetic ------------------------------------------------------------
    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatch("%d vs %d variables" % (self.nvars, other.nvars))
        if self.ring is not other.ring and self.ring != other.ring:
            raise TypeError("ring mismatch: %r vs %r" % (self.ring, other.ring))

    def _lift(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(self.ring, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        ring = self.ring
        t = dict(self.terms)
        for e, c in other.terms.items():
            if e in t:
                s = ring.add(t[e], c)
                if ring.is_zero(s):
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = c
        return MPoly(ring, self.nvars, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return MPoly(ring, self.nvars, {e: ring.neg(c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        ring = self.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return MPoly.zero(ring, self.nvars)
        t = {}
        for e, a in self.terms.items():
            v = ring.mul(a, c)
            if not ring.is_zero(v):
                t[e] = v
        return MPoly(ring, self.nvars, t, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        kind, p = _fast_mod(ring)
        acc: dict = {}
        if kind == "gen":
            add, mul = ring.add, ring.mul
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = mul(c1, c2)
                    acc[e] = add(acc[e], v) if e in acc else v
            out = {e: c for e, c in acc.items() if c != 0}
        else:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc[e] = acc.get(e, 0) + c1 * c2
            if kind == "mod":
                out = {}
                for e, c in acc.items():
                    c %= p
                    if c:
                        out[e] = c
            else:
                out = {e: c for e, c in acc.items() if c != 0}
        return MPoly(ring, self.nvars, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.one(self.ring, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.const(self.ring, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return "MPoly(%s, %s)" % (self.ring.tag, self.to_str())

    def __str__(self):
        return self.to_str()

    # transformations -------------------------------------------------------
    def change_ring(self, ring):
        """Coerce coefficients into another ring (e.g. reduce Z -> F_p)."""
        t = {}
        for e, c in self.terms.items():
            v = ring.coerce(c)
            if not ring.is_zero(v):
                t[e] = v
        return MPoly(ring, self.nvars, t, _clean=True)

    def lift_centered(self):
        """F_p -> Z using representatives in (-p/2, p/2)."""
        ring = self.ring
        if not isinstance(ring, FieldDescriptor) or ring.n != 1:
            raise TypeError("centered lift needs a prime field")
        p = ring.p
        return MPoly(ZZ, self.nvars, {e: (c if c <= p // 2 else c - p) for e, c in self.terms.items()}, _clean=True)

    def map_coeffs(self, fn, ring=None):
        ring = ring or self.ring
        return MPoly(ring, self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def evaluate(self, point):
        ring = self.ring
        if len(point) != self.nvars:
            raise DimensionMismatch("point has %d coordinates, need %d" % (len(point), self.nvars))
        pt = [ring.coerce(x) if not isinstance(x, FqElem) else x.code for x in point]
        kind, p = _fast_mod(ring)
        if kind != "gen":
            total = 0
            for e, c in self.terms.items():
                v = c
                for x, k in zip(pt, e):
                    if k:
                        v = v * x ** k
                        if kind == "mod":
                            v %= p
                total += v
            return total % p if kind == "mod" else total
        total = ring.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = ring.mul(v, ring.pow(x, k))
            total = ring.add(total, v)
        return total

    def subs(self, images: Sequence["MPoly"]) -> "MPoly":
        """Compose: replace variable i by images[i] (all images share ring/nvars)."""
        if len(images) != self.nvars:
            raise DimensionMismatch("need %d images" % self.nvars)
        if not images:
            return self
        target = images[0]
        ring, nv = target.ring, target.nvars
        powers: list[dict[int, MPoly]] = [{0: MPoly.one(ring, nv), 1: im} for im in images]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                half = pw(i, k // 2)
                sq = half * half
                cache[k] = sq * images[i] if k % 2 else sq
            return cache[k]

        acc = MPoly.zero(ring, nv)
        for e, c in self.sorted_terms():
            # c is already a code of self.ring; only foreign coefficients are coerced
            c = c if ring is self.ring else ring.coerce(c)
            term = MPoly.from_codes(ring, nv, {(0,) * nv: c})
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            acc = acc + term
        return acc

    def derivative(self, i: int) -> "MPoly":
        return partial_derivative(self, i)

    def homogeneous_components(self) -> dict[int, "MPoly"]:
        comps: dict[int, dict] = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: MPoly(self.ring, self.nvars, t, _clean=True) for d, t in comps.items()}

    def content(self):
        """gcd of the numerators / lcm of denominators, for ZZ and QQ."""
        from math import gcd

        g = 0
        for c in self.terms.values():
            g = gcd(g, Fraction(c).numerator)
        return g

    def primitive(self) -> "MPoly":
        """Scale a ZZ/QQ polynomial to coprime integer coefficients, positive leading term."""
        from math import gcd, lcm

        if not self.terms:
            return MPoly.zero(ZZ, self.nvars)
        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        ints = {e: int(Fraction(c) * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        lead = ints[max(ints, key=grevlex_key)]
        if lead < 0:
            g = -g
        return MPoly(ZZ, self.nvars, {e: c // g for e, c in ints.items()}, _clean=True)

    # serialization ---------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                names[i] if k == 1 else "%s^%d" % (names[i], k) for i, k in enumerate(e) if k
            )
            neg = False
            if isinstance(c, (int, Fraction)) and c < 0:
                neg, c = True, -c
            cs = self.ring.fmt(c)
            if mono:
                body = mono if cs == "1" else "%s*%s" % (cs, mono)
            else:
                body = cs
            if idx == 0:
                parts.append("-" + body if neg else body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, ring, names: Sequence[str] | int) -> MPoly:
    """Parse the canonical text form (also tolerant of extra spaces)."""
    if isinstance(names, int):
        names = default_names(names)
    index = {n: i for i, n in enumerate(names)}
    nv = len(names)
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return MPoly.zero(ring, nv)
    pos = 0
    acc: dict = {}
    for m in _TERM_RE.finditer(s):
        if m.start() != pos and s[pos : m.start()].strip():
            raise ParseError("unexpected text %r" % s[pos : m.start()])
        pos = m.end()
        sign, body = m.group(1), m.group(2).strip()
        if not body:
            raise ParseError("dangling sign in %r" % text)
        coeff = ring.one
        exps = [0] * nv
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError("empty factor in %r" % body)
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff = ring.mul(coeff, ring.parse_coeff(factor))
                continue
            fm = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", factor)
            if not fm or fm.group(1) not in index:
                raise ParseError("bad factor %r" % factor)
            exps[index[fm.group(1)]] += int(fm.group(2) or 1)
        if sign == "-":
            coeff = ring.neg(coeff)
        e = tuple(exps)
        acc[e] = ring.add(acc[e], coeff) if e in acc else coeff
    if s[pos:].strip():
        raise ParseError("trailing text %r" % s[pos:])
    return MPoly.from_codes(ring, nv, acc)


# --- matrices -------------------------------------------------------------

class PolyMatrix:
    """Square (or rectangular, for Jacobians) matrix of MPoly over a common ring."""

    def __init__(self, rows: Sequence[Sequence[MPoly]]):
        self.rows = [list(r) for r in rows]
        if not self.rows or not self.rows[0]:
            raise DimensionMismatch("empty matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise DimensionMismatch("ragged matrix")
        first = self.rows[0][0]
        self.ring = first.ring
        self.nvars = first.nvars

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def transpose(self) -> "PolyMatrix":
        n, m = self.shape
        return PolyMatrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DimensionMismatch("%dx%d @ %dx%d" % (n, k, k2, m))
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = MPoly.zero(self.ring, self.nvars)
                for t in range(k):
                    a, b = self.rows[i][t], other.rows[t][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def minor(self, i: int, j: int) -> "PolyMatrix":
        return PolyMatrix([r[:j] + r[j + 1 :] for k, r in enumerate(self.rows) if k != i])

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(x) for x in r] for r in self.rows])

    @classmethod
    def identity(cls, ring, nvars, n):
        return cls([[MPoly.one(ring, nvars) if i == j else MPoly.zero(ring, nvars) for j in range(n)] for i in range(n)])

    def det(self) -> MPoly:
        return det(self)

    def adjugate(self) -> "PolyMatrix":
        return adjugate(self)


def exact_divide(a: MPoly, b: MPoly) -> MPoly:
    """Multivariate exact division; raises NotDivisible if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    ring = a.ring
    be, bc = b.leading_term()
    q: dict = {}
    rem = a
    while rem.terms:
        re_, rc = rem.leading_term()
        diff = tuple(x - y for x, y in zip(re_, be))
        if min(diff) < 0:
            raise NotDivisible("leading monomial not divisible")
        c = ring.div(rc, bc)
        q[diff] = c
        rem = rem - MPoly(ring, a.nvars, {diff: c}, _clean=True) * b
    return MPoly(ring, a.nvars, q, _clean=True)


def _cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    first = rows[0][0]
    acc = MPoly.zero(first.ring, first.nvars)
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        sub = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _cofactor_det(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def det(m: PolyMatrix) -> MPoly:
    """Exact determinant: cofactor expansion up to 4x4, Bareiss beyond."""
    n, k = m.shape
    if n != k:
        raise NonSquare("%dx%d matrix" % (n, k))
    if n <= 4:
        return _cofactor_det(m.rows)
    a = [list(r) for r in m.rows]
    ring, nv = m.ring, m.nvars
    sign = 1
    prev = MPoly.one(ring, nv)
    for kk in range(n - 1):
        if not a[kk][kk]:
            swap = next((i for i in range(kk + 1, n) if a[i][kk]), None)
            if swap is None:
                return MPoly.zero(ring, nv)
            a[kk], a[swap] = a[swap], a[kk]
            sign = -sign
        piv = a[kk][kk]
        for i in range(kk + 1, n):
            for j in range(kk + 1, n):
                num = a[i][j] * piv - a[i][kk] * a[kk][j]
                a[i][j] = exact_divide(num, prev) if kk else num
            a[i][kk] = MPoly.zero(ring, nv)
        prev = piv
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def adjugate(m: PolyMatrix) -> PolyMatrix:
    n, k = m.shape
    if n != k:
        raise NonSquare("%dx%d matrix" % (n, k))
    if n == 1:
        return PolyMatrix([[MPoly.one(m.ring, m.nvars)]])
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(m.minor(j, i))
            out[i][j] = c if (i + j) % 2 == 0 else -c
    return PolyMatrix(out)


def bordered(m: PolyMatrix, v: Sequence[MPoly]) -> PolyMatrix:
    """The matrix [[0, v^t], [v, m]]."""
    n = m.shape[0]
    z = MPoly.zero(m.ring, m.nvars)
    rows = [[z] + list(v)]
    for i in range(n):
        rows.append([v[i]] + list(m.rows[i]))
    return PolyMatrix(rows)


def quadratic_form_value(m: PolyMatrix, v: Sequence[MPoly]) -> MPoly:
    """v^t m v."""
    n = m.shape[0]
    acc = MPoly.zero(m.ring, m.nvars)
    for i in range(n):
        if not v[i]:
            continue
        inner = MPoly.zero(m.ring, m.nvars)
        for j in range(n):
            if v[j] and m.rows[i][j]:
                inner = inner + m.rows[i][j] * v[j]
        acc = acc + v[i] * inner
    return acc


def bordered_det_identity_check(m: PolyMatrix, v: Sequence[MPoly]) -> bool:
    """Check v^t adj(m) v + det([[0, v^t], [v, m]]) == 0 exactly."""
    n, k = m.shape
    if n != k or len(v) != n:
        raise DimensionMismatch("matrix %dx%d with vector of length %d" % (n, k, len(v)))
    lhs = quadratic_form_value(adjugate(m), v)
    return (lhs + det(bordered(m, v))).is_zero()


# --- lines, derivatives ---------------------------------------------------

def line_parametrization(ring, line: Sequence) -> list[MPoly]:
    """Images of (u, v, w) in (s, t) for the line a*u + b*v + c*w = 0.

    The pivot is the first nonzero coefficient; the other two coordinates, in
    order, become s and t.
    """
    coeffs = [ring.coerce(c) if not isinstance(c, FqElem) else c.code for c in line]
    if len(coeffs) != 3:
        raise DimensionMismatch("line needs 3 coefficients")
    piv = next((i for i, c in enumerate(coeffs) if not ring.is_zero(c)), None)
    if piv is None:
        raise ZeroLine("zero line vector")
    others = [i for i in range(3) if i != piv]
    s, t = MPoly.gens(ring, 2)
    inv = ring.inv(coeffs[piv])
    images: list = [None, None, None]
    images[others[0]] = s
    images[others[1]] = t
    images[piv] = MPoly.from_codes(
        ring, 2, {(1, 0): ring.neg(ring.mul(coeffs[others[0]], inv)), (0, 1): ring.neg(ring.mul(coeffs[others[1]], inv))}
    )
    return images


def restrict_to_line(f: MPoly, line: Sequence) -> MPoly:
    """Binary form f|L in (s, t) for the canonical parametrization of L."""
    if f.nvars != 3:
        raise DimensionMismatch("restrict_to_line expects a ternary form")
    ring = f.ring
    if ring is ZZ:
        f = f.change_ring(QQ)
        ring = QQ
    return f.subs(line_parametrization(ring, line))


def partial_derivative(f: MPoly, i: int) -> MPoly:
    if not 0 <= i < f.nvars:
        raise IndexOutOfRange("variable %d of %d" % (i, f.nvars))
    ring = f.ring
    t = {}
    for e, c in f.terms.items():
        k = e[i]
        if k:
            v = ring.mul(c, ring.from_int(k))
            if not ring.is_zero(v):
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = v
    return MPoly(ring, f.nvars, t, _clean=True)


def jacobian(fs: Sequence[MPoly]) -> PolyMatrix:
    return PolyMatrix([[partial_derivative(f, i) for i in range(f.nvars)] for f in fs])


# --- dense univariate arithmetic over a field ring -------------------------

def _utrim(a, ring):
    while a and ring.is_zero(a[-1]):
        a.pop()
    return a


def _usub(a, b, ring):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else ring.zero
        y = b[i] if i < len(b) else ring.zero
        out.append(ring.sub(x, y))
    return _utrim(out, ring)


def _umul(a, b, ring):
    if not a or not b:
        return []
    out = [ring.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if ring.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return _utrim(out, ring)


def _udivmod(a, b, ring):
    a = list(a)
    if not b:
        raise ZeroDivisor("division by zero polynomial")
    db = len(b) - 1
    inv = ring.inv(b[-1])
    q = [ring.zero] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = ring.mul(a[-1], inv)
        shift = len(a) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = ring.sub(a[shift + i], ring.mul(c, y))
        a.pop()
        _utrim(a, ring)
    return _utrim(q, ring), a


def _umonic(a, ring):
    inv = ring.inv(a[-1])
    return [ring.mul(x, inv) for x in a]


def _ugcd(a, b, ring):
    a, b = _utrim(list(a), ring), _utrim(list(b), ring)
    while b:
        a, b = b, _udivmod(a, b, ring)[1]
    return _umonic(a, ring) if a else a


def _uderiv(a, ring):
    return _utrim([ring.mul(c, ring.from_int(i)) for i, c in enumerate(a)][1:], ring)


def _pth_root(a, ring):
    """For a(x) = b(x^p) over F_q, return b with coefficients Frobenius^-1 applied."""
    p = ring.characteristic
    out = []
    for i in range(0, len(a), p):
        c = a[i]
        if ring.n > 1:
            c = ring.pow(c, ring.p ** (ring.n - 1))
        out.append(c)
    return _utrim(out, ring)


def _sqf_mults(f, ring) -> dict[int, int]:
    """Map multiplicity -> total degree of roots with that multiplicity."""
    res: dict[int, int] = {}
    if len(f) <= 1:
        return res
    f = _umonic(f, ring)
    d = _uderiv(f, ring)
    if not d:
        if ring.characteristic == 0:
            return res
        for m, deg in _sqf_mults(_pth_root(f, ring), ring).items():
            res[m * ring.characteristic] = res.get(m * ring.characteristic, 0) + deg
        return res
    c = _ugcd(f, d, ring)
    w = _udivmod(f, c, ring)[0]
    i = 1
    while len(w) > 1:
        y = _ugcd(w, c, ring)
        fac = _udivmod(w, y, ring)[0]
        if len(fac) > 1:
            res[i] = res.get(i, 0) + len(fac) - 1
        w = y
        c = _udivmod(c, y, ring)[0]
        i += 1
    if len(c) > 1:
        if ring.characteristic == 0:
            raise AssertionError("nonconstant cofactor in characteristic 0")
        p = ring.characteristic
        for m, deg in _sqf_mults(_pth_root(c, ring), ring).items():
            res[m * p] = res.get(m * p, 0) + deg
    return res


def squarefree_profile(b: MPoly) -> list[int]:
    """Sorted multiplicities of the roots of a binary form over the algebraic closure.

    Only the multiplicity structure is computed (gcd towers), never the roots.
    """
    if b.nvars != 2:
        raise DimensionMismatch("binary form expected")
    if b.is_zero():
        raise ZeroForm("zero binary form")
    ring = b.ring
    if ring is ZZ:
        b = b.change_ring(QQ)
        ring = QQ
    if not b.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    d = b.degree()
    # multiplicity of the root (1:0), i.e. the power of t dividing b
    e_inf = min(e[1] for e in b.terms)
    uni = [ring.zero] * (d - e_inf + 1)
    for (i, j), c in b.terms.items():
        uni[i] = c
    uni = _utrim(uni, ring)
    prof = []
    for m, nroots in _sqf_mults(uni, ring).items():
        prof.extend([m] * nroots)
    if e_inf:
        prof.append(e_inf)
    prof.sort()
    if sum(prof) != d:
        raise AssertionError("profile %s does not sum to %d" % (prof, d))
    return prof


# --- univariate polynomials in t over Z/Q ---------------------------------

def univariate(coeffs: Iterable, ring=ZZ) -> MPoly:
    """Build a 1-variable MPoly from coefficients listed constant term first."""
    return MPoly(ring, 1, {(i,): c for i, c in enumerate(coeffs)})


def uni_coeffs(f: MPoly) -> list:
    """Dense coefficient list (constant term first) of a univariate MPoly."""
    if f.nvars != 1:
        raise DimensionMismatch("univariate polynomial expected")
    d = f.degree()
    out = [f.ring.zero] * (d + 1)
    for (i,), c in f.terms.items():
        out[i] = c
    return out


def divide_exact(a: MPoly, b: MPoly) -> MPoly:
    """Quotient a/b over Q; raises NotDivisible if the remainder is nonzero."""
    if b.is_zero():
        raise ZeroDivisor("division by zero polynomial")
    if a.nvars != 1 or b.nvars != 1:
        raise DimensionMismatch("univariate polynomials expected")
    ac = [Fraction(c) for c in uni_coeffs(a)] if a else []
    bc = [Fraction(c) for c in uni_coeffs(b)]
    q, r = _udivmod(ac, bc, QQ)
    if r:
        raise NotDivisible("nonzero remainder")
    return univariate(q, QQ)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> MPoly:
    """The n-th cyclotomic polynomial, 1 <= n <= 66, with integer coefficients."""
    if not 1 <= n <= 66:
        raise OutOfRange("cyclotomic index %r outside [1, 66]" % (n,))
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, r = _udivmod(num, uni_coeffs(cyclotomic(d)), ZZ_AS_FIELD)
            if r:
                raise AssertionError("cyclotomic division failed")
    return univariate(num, ZZ)


class _IntDivRing(IntegerRing):
    """ZZ with division by monic polynomials allowed (inverse of +-1 only)."""


ZZ_AS_FIELD = _IntDivRing()


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result
