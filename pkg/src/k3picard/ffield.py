"""Finite fields F_p and F_{p^n} for odd p.

Elements are stored as integer *codes*: the residue itself for n == 1, and
sum(c_i * p**i) for the coefficient vector (c_0, ..., c_{n-1}) of the
polynomial representative otherwise.  A :class:`FieldDescriptor` doubles as
the coefficient ring used by :mod:`k3picard.poly`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DegreeOutOfRange, EvenCharacteristic, NotPrime

MAX_PRIME = 1 << 20
TABLE_LIMIT = 1 << 22
DEFAULT_ENUM_BUDGET = 1 << 34


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --- dense univariate helpers over F_p (coefficient lists, constant term first)

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, m, p):
    """a*b mod m over F_p; m monic."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _pmod(prod, m, p)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i, y in enumerate(m):
                a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
        _trim(a)
    return _trim(a)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [(x * inv) % p for x in b]
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod_x(e, m, p):
    """x**e mod m over F_p."""
    result = [1]
    base = _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """Ben-Or test: gcd(x^(p^i) - x, m) == 1 for i <= deg/2."""
    n = len(m) - 1
    if n == 1:
        return True
    xp = [0, 1]
    for _ in range(n // 2):
        # xp <- xp^p mod m
        res = [1]
        base = list(xp)
        e = p
        while e:
            if e & 1:
                res = _pmulmod(res, base, m, p)
            base = _pmulmod(base, base, m, p)
            e >>= 1
        xp = res
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(list(m), _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n (constant term first)."""
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=n):
        if low[0] == 0:
            continue
        m = list(low) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldDescriptor:
    p: int
    n: int
    modulus: tuple[int, ...]

    # ring protocol -----------------------------------------------------
    is_field = True
    zero = 0
    one = 1

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def tag(self) -> str:
        return "GF(%d)" % self.p if self.n == 1 else "GF(%d^%d)" % (self.p, self.n)

    def __repr__(self) -> str:
        return "FieldDescriptor(p=%d, n=%d)" % (self.p, self.n)

    def from_int(self, a: int) -> int:
        return a % self.p

    def coerce(self, a) -> int:
        if isinstance(a, FqElem):
            return a.code
        if isinstance(a, int):
            return a % self.p
        try:
            from fractions import Fraction

            if isinstance(a, Fraction):
                return (a.numerator % self.p) * pow(a.denominator % self.p, -1, self.p) % self.p
        except ZeroDivisionError:
            raise ZeroDivisionError("denominator divisible by %d" % self.p) from None
        raise TypeError("cannot coerce %r into %s" % (a, self.tag))

    def is_zero(self, a: int) -> bool:
        return a == 0

    def to_coeffs(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return out

    def from_coeffs(self, cs: Sequence[int]) -> int:
        p = self.p
        code = 0
        for c in reversed(list(cs)[: self.n]):
            code = code * p + (c % p)
        return code

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([x + y for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        return self.from_coeffs([-x for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a - b) % self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([x - y for x, y in zip(ca, cb)])

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        t = _tables(self)
        if t is not None:
            return int(t.exp[(t.log[a] + t.log[b]) % (self.q - 1)])
        return self.from_coeffs(
            _pmulmod(_trim(self.to_coeffs(a)), _trim(self.to_coeffs(b)), list(self.modulus), self.p)
        )

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.n == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        t = _tables(self)
        if t is not None:
            return int(t.exp[(int(t.log[a]) * e) % (self.q - 1)])
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %s" % self.tag)
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def fmt(self, a: int) -> str:
        return str(a)

    def parse_coeff(self, s: str) -> int:
        if "/" in s:
            num, den = s.split("/")
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(s)) if self.n == 1 else int(s)

    def is_prime_code(self, a: int) -> bool:
        """True when the element lies in the prime field."""
        return 0 <= a < self.p

    # convenience ------------------------------------------------------
    def elem(self, value) -> "FqElem":
        if isinstance(value, (list, tuple)):
            return FqElem(self, self.from_coeffs(value))
        return FqElem(self, self.coerce(value))

    def elements(self) -> range:
        return range(self.q)


@dataclass(frozen=True)
class FqElem:
    field: FieldDescriptor
    code: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.to_coeffs(self.code)

    def _other(self, b) -> int:
        if isinstance(b, FqElem):
            if b.field != self.field:
                raise TypeError("elements of different fields")
            return b.code
        return self.field.coerce(b)

    def __add__(self, b):
        return FqElem(self.field, self.field.add(self.code, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FqElem(self.field, self.field.sub(self.code, self._other(b)))

    def __rsub__(self, b):
        return FqElem(self.field, self.field.sub(self._other(b), self.code))

    def __mul__(self, b):
        return FqElem(self.field, self.field.mul(self.code, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FqElem(self.field, self.field.div(self.code, self._other(b)))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, b) -> bool:
        if isinstance(b, FqElem):
            return self.field == b.field and self.code == b.code
        if isinstance(b, int):
            return self.code == self.field.coerce(b)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.n, self.code))

    def __repr__(self) -> str:
        if self.field.n == 1:
            return "%d (mod %d)" % (self.code, self.field.p)
        return "%s in %s" % (self.coeffs, self.field.tag)


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldDescriptor:
    """Return the field F_{p^n} with its canonical (lex-smallest) modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime("%r is not prime" % (p,))
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if p >= MAX_PRIME:
        raise NotPrime("prime %d exceeds the supported bound 2^20" % p)
    if not 1 <= n <= 24:
        raise DegreeOutOfRange("extension degree %r outside [1, 24]" % (n,))
    if p ** n >= 1 << 128:
        raise DegreeOutOfRange("p^n = %d^%d does not fit in 128 bits" % (p, n))
    return FieldDescriptor(p, n, smallest_irreducible(p, n))


def quadratic_character(a: FqElem) -> int:
    """Legendre-type symbol in {-1, 0, 1}."""
    return character_of_code(a.field, a.code)


def character_of_code(field: FieldDescriptor, a: int) -> int:
    if a == 0:
        return 0
    if field.n == 1:
        r = pow(a, (field.p - 1) // 2, field.p)
        return 1 if r == 1 else -1
    t = _tables(field)
    if t is not None:
        return -1 if t.log[a] & 1 else 1
    return 1 if field.pow(a, (field.q - 1) // 2) == 1 else -1


def frobenius(a: FqElem) -> FqElem:
    return a ** a.field.p


def frobenius_code(field: FieldDescriptor, a: int, times: int = 1) -> int:
    for _ in range(times % field.n if field.n > 1 else 0):
        a = field.pow(a, field.p)
    return a


def projective_count(q: int, k: int) -> int:
    return (q ** (k + 1) - 1) // (q - 1)


def enumerate_projective(
    field: FieldDescriptor, k: int, budget: int = DEFAULT_ENUM_BUDGET
) -> Iterator[tuple[int, ...]]:
    """Yield every point of P^k(F_q) once, first nonzero coordinate equal to 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    q = field.q
    total = projective_count(q, k)
    if total > budget:
        raise BudgetExceeded("P^%d(F_%d) has %d points, budget %d" % (k, q, total, budget))
    return _enum(q, k)


def _enum(q, k):
    for lead in range(k + 1):
        prefix = (0,) * lead + (1,)
        for rest in itertools.product(range(q), repeat=k - lead):
            yield prefix + rest


# --- log / antilog tables ------------------------------------------------

class LogTables:
    """exp[k] = g^k (codes), log[code] (log[0] unused), zech[k] = log(1 + g^k) or -1."""

    def __init__(self, field: FieldDescriptor):
        self.field = field
        q, p, n = field.q, field.p, field.n
        order = q - 1
        g = primitive_element(field)
        if n == 1:
            exp = np.empty(order, dtype=np.int64)
            x = 1
            for k in range(order):
                exp[k] = x
                x = x * g % p
        else:
            exp = _powers_block(field, g, order)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        c0 = exp % p
        one_plus = exp - c0 + (c0 + 1) % p
        zech = np.where(one_plus == 0, -1, log[one_plus])
        self.generator = g
        self.exp = exp
        self.log = log
        self.zech = zech


def _mult_matrix(field: FieldDescriptor, c: int) -> np.ndarray:
    """Matrix of x -> c*x on the coefficient basis."""
    n = field.n
    cols = []
    for j in range(n):
        basis = [0] * n
        basis[j] = 1
        prod = _pmulmod(_trim(field.to_coeffs(c)), _trim(basis), list(field.modulus), field.p)
        cols.append(prod + [0] * (n - len(prod)))
    return np.array(cols, dtype=np.int64).T


def _powers_block(field: FieldDescriptor, g: int, order: int) -> np.ndarray:
    p, n = field.p, field.n
    block = min(order, 4096)
    vecs = np.zeros((n, block), dtype=np.int64)
    x = [1] + [0] * (n - 1)
    gl = _trim(field.to_coeffs(g))
    m = list(field.modulus)
    for k in range(block):
        vecs[:, k] = x
        nx = _pmulmod(_trim(list(x)), gl, m, p)
        x = nx + [0] * (n - len(nx))
    step = _mult_matrix(field, _code_from(x, p))
    chunks = [vecs]
    produced = block
    cur = vecs
    while produced < order:
        cur = (step @ cur) % p
        chunks.append(cur)
        produced += block
    allv = np.concatenate(chunks, axis=1)[:, :order]
    weights = np.array([p ** i for i in range(n)], dtype=np.int64)
    return weights @ allv


def _code_from(cs, p):
    code = 0
    for c in reversed(cs):
        code = code * p + c
    return code


def primitive_element(field: FieldDescriptor) -> int:
    """Smallest code generating the multiplicative group."""
    q = field.q
    fac = prime_factors(q - 1)
    for g in range(2 if field.n == 1 else field.p, q):
        if all(_slow_pow(field, g, (q - 1) // r) != 1 for r in fac):
            return g
    if q == 3:
        return 2
    raise AssertionError("no generator")  # unreachable


def _slow_pow(field, a, e):
    if field.n == 1:
        return pow(a, e, field.p)
    result, base = 1, a
    m = list(field.modulus)
    while e:
        if e & 1:
            result = field.from_coeffs(
                _pmulmod(_trim(field.to_coeffs(result)), _trim(field.to_coeffs(base)), m, field.p)
            )
        base = field.from_coeffs(
            _pmulmod(_trim(field.to_coeffs(base)), _trim(field.to_coeffs(base)), m, field.p)
        )
        e >>= 1
    return result


_TABLES: dict[tuple[int, int], LogTables | None] = {}


def _tables(field: FieldDescriptor) -> LogTables | None:
    key = (field.p, field.n)
    if key not in _TABLES:
        _TABLES[key] = LogTables(field) if field.n > 1 and field.q <= TABLE_LIMIT else None
    return _TABLES[key]


def log_tables(field: FieldDescriptor) -> LogTables:
    """Tables for vectorised kernels (built for prime fields too)."""
    key = (field.p, field.n, "vec")
    t = _TABLES.get(key)
    if t is None:
        if field.q > TABLE_LIMIT:
            raise BudgetExceeded("log tables only for q <= 2^22")
        t = _tables(field) if field.n > 1 else LogTables(field)
        _TABLES[key] = t
    return t
