"""Point counts, Weil polynomials and the cyclotomic Picard-rank bound.

Counting on P^2 and P^4 is vectorised with numpy.  Prime fields use plain
residues; extension fields use discrete logarithms with Zech tables, so that
multiplication is addition of logs and 0 is the sentinel -1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    EvenCharacteristic,
    InsufficientCounts,
    NoCandidate,
    NotSquarefree,
    NotWeil,
)
from .ffield import FieldDescriptor, log_tables, make_field, projective_count
from .poly import QQ, ZZ, MPoly, _sqf_mults, _udivmod, _ugcd, _uderiv, cyclotomic, euler_phi, uni_coeffs

DEFAULT_P2_BUDGET = 1 << 38
DEFAULT_P4_BUDGET = 1 << 36
_CHUNK = 1 << 20


# --- vectorised field arithmetic ------------------------------------------------

class VecField:
    """Elementwise arithmetic on numpy arrays of field elements."""

    def __init__(self, F: FieldDescriptor):
        self.F = F
        self.q = F.q
        if F.n == 1:
            self.mode = "mod"
            p = F.p
            chi = np.zeros(p, dtype=np.int64)
            sq = (np.arange(1, p, dtype=np.int64) ** 2) % p
            chi[1:] = -1
            chi[sq] = 1
            self._chi = chi
        else:
            self.mode = "log"
            t = log_tables(F)
            self.m = F.q - 1
            self._log = t.log.copy()
            self._log[0] = -1
            self._zech = t.zech

    def encode(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return codes if self.mode == "mod" else self._log[codes]

    def const(self, code: int):
        return int(self.encode(np.array([code]))[0])

    def mul(self, a, b):
        if self.mode == "mod":
            return (a * b) % self.F.p
        r = (a + b) % self.m
        return np.where((a < 0) | (b < 0), -1, r)

    def add(self, a, b):
        if self.mode == "mod":
            return (a + b) % self.F.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        d = (b - a) % self.m
        z = self._zech[d]
        r = np.where(z < 0, -1, (a + z) % self.m)
        return np.where(a < 0, b, np.where(b < 0, a, r))

    def pow(self, a, k: int):
        if k == 0:
            return np.zeros_like(a) + self.const(1)
        if self.mode == "mod":
            out = a
            for _ in range(k - 1):
                out = (out * a) % self.F.p
            return out
        return np.where(a < 0, -1, (a * k) % self.m)

    def is_zero(self, a):
        return a == 0 if self.mode == "mod" else a < 0

    def chi(self, a):
        if self.mode == "mod":
            return self._chi[a]
        return np.where(a < 0, 0, 1 - 2 * (a & 1))

    def zero(self):
        return 0 if self.mode == "mod" else -1


def _eval_form(vf: VecField, f: MPoly, coords: Sequence) -> np.ndarray:
    """Evaluate f at points whose coordinates are (broadcastable) encoded arrays."""
    cache: dict = {}

    def pw(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = vf.pow(coords[i], k)
        return cache[key]

    acc = None
    for e, c in f.terms.items():
        term = vf.const(c)
        for i, k in enumerate(e):
            if k:
                term = vf.mul(term, pw(i, k))
        acc = term if acc is None else vf.add(acc, term)
    if acc is None:
        return vf.zero()
    return acc


# --- double cover counts ----------------------------------------------------------

def _ternary_w_coeffs(g: MPoly) -> dict[int, MPoly]:
    """g(1, v, w) = sum_k a_k(v) w^k; a_k as univariate forms in v (nvars 1)."""
    out: dict[int, dict] = {}
    for (i, j, k), c in g.terms.items():
        out.setdefault(k, {})
        out[k][(j,)] = c
    return {k: MPoly.from_codes(g.ring, 1, t) for k, t in out.items()}


def character_sum_p2(g: MPoly, F: FieldDescriptor, partitions: int = 1, budget: int = DEFAULT_P2_BUDGET) -> int:
    """Sum over P^2(F_q) of chi(g(P)) for a form g of even degree."""
    if F.p == 2:
        raise EvenCharacteristic("characteristic 2")
    q = F.q
    if q * q > budget:
        raise BudgetExceeded("P^2(F_%d) needs %d evaluations, budget %d" % (q, q * q, budget))
    g = g.change_ring(F) if g.ring != F else g
    vf = VecField(F)
    allw = vf.encode(np.arange(q, dtype=np.int64))
    total = 0
    # chart (1 : v : w), Horner in w with coefficients depending on v
    coeffs = _ternary_w_coeffs(g)
    dw = max(coeffs) if coeffs else 0
    rows = max(1, min(q, _CHUNK // q))
    bounds = _partition(q, partitions)
    for lo, hi in bounds:
        for start in range(lo, hi, rows):
            stop = min(hi, start + rows)
            V = vf.encode(np.arange(start, stop, dtype=np.int64))
            ak = {k: _eval_form(vf, a, [V]) for k, a in coeffs.items()}
            acc = np.broadcast_to(np.asarray(ak.get(dw, vf.zero())), V.shape)[:, None]
            for k in range(dw - 1, -1, -1):
                acc = vf.mul(acc, allw[None, :])
                if k in ak:
                    acc = vf.add(acc, np.asarray(ak[k])[..., None] if np.ndim(ak[k]) else ak[k])
            acc = np.broadcast_to(acc, (stop - start, q))
            total += int(vf.chi(acc).sum())
    # chart (0 : 1 : w)
    one = vf.const(1)
    zero = vf.zero()
    val = _eval_form(vf, g, [zero, one, allw])
    total += int(np.broadcast_to(vf.chi(np.asarray(val)), (q,)).sum())
    # point (0 : 0 : 1)
    total += int(vf.chi(np.asarray(_eval_form(vf, g, [zero, zero, one]))))
    return total


def _partition(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    step = -(-n // parts)
    return [(i, min(n, i + step)) for i in range(0, n, step)]


def count_double_cover(model, n: int = 1, partitions: int = 1, budget: int = DEFAULT_P2_BUDGET) -> int:
    """#{s^2 = twist * g6(u, v, w)}(F_{p^n}) in P(1,1,1,3)."""
    ring = model.g6.ring
    if not isinstance(ring, FieldDescriptor):
        raise TypeError("counting needs a model over a finite field")
    if ring.n != 1:
        raise ValueError("model coefficients must lie in the prime field")
    F = make_field(ring.p, n)
    s = character_sum_p2(model.g6, F, partitions, budget)
    from .ffield import character_of_code

    # a prime-field scalar is a square in F_{p^n} for even n: chi_n = chi_1^n
    chi_l = character_of_code(ring, ring.coerce(model.twist)) ** n
    q = F.q
    return q * q + q + 1 + chi_l * s


# --- complete intersections in P^k --------------------------------------------------

def projective_zero_count(forms: Sequence[MPoly], F: FieldDescriptor, budget: int = DEFAULT_P4_BUDGET) -> int:
    """Number of points of P^k(F_q) on which every form vanishes."""
    k = forms[0].nvars - 1
    q = F.q
    total_pts = projective_count(q, k)
    if total_pts > budget:
        raise BudgetExceeded("P^%d(F_%d) has %d points, budget %d" % (k, q, total_pts, budget))
    forms = [f.change_ring(F) if f.ring != F else f for f in forms]
    vf = VecField(F)
    enc = vf.encode(np.arange(q, dtype=np.int64))
    one, zero = vf.const(1), vf.zero()
    count = 0
    for lead in range(k + 1):
        nfree = k - lead
        prefix = [zero] * lead + [one]
        if nfree == 0:
            if all(vf.is_zero(np.asarray(_eval_form(vf, f, prefix))) for f in forms):
                count += 1
            continue
        outer = nfree - 3 if nfree > 3 else 0
        inner = nfree - outer
        grids = [g.ravel() for g in np.meshgrid(*([enc] * inner), indexing="ij")]
        for head in np.ndindex(*([q] * outer)) if outer else [()]:
            coords = prefix + [enc[h] for h in head] + grids
            mask = None
            for f in forms:
                z = np.broadcast_to(vf.is_zero(np.asarray(_eval_form(vf, f, coords))), grids[0].shape)
                mask = z if mask is None else (mask & z)
                if not mask.any():
                    break
            count += int(mask.sum())
    return count


def count_complete_intersection_p4(pair, n: int = 1, budget: int = DEFAULT_P4_BUDGET) -> int:
    ring = pair.f2.ring
    F = make_field(ring.p, n)
    return projective_zero_count([pair.f2, pair.f3], F, budget)


@dataclass(frozen=True)
class TwistReport:
    direct_count: int
    character_sum: int
    nonresidue: int
    matches: tuple  # twists among (1, nonresidue) that reproduce the direct count

    @property
    def twist(self):
        return self.matches[0] if len(self.matches) == 1 else None


def smallest_nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise ValueError("no nonresidue mod %d" % p)


def determine_twist(pair, g6: MPoly, n: int = 1, budget: int = DEFAULT_P4_BUDGET) -> TwistReport:
    """Compare #X(F_q) with the two quadratic twists of s^2 = g6."""
    ring = g6.ring
    F = make_field(ring.p, n)
    direct = count_complete_intersection_p4(pair, n, budget)
    s = character_sum_p2(g6, F)
    q = F.q
    base = q * q + q + 1
    nr = smallest_nonresidue(ring.p)
    # chi of the prime-field nonresidue over F_{p^n} is (-1)^n
    chi_nr = -1 if n % 2 else 1
    matches = tuple(lam for lam, chi in ((1, 1), (nr, chi_nr)) if base + chi * s == direct)
    return TwistReport(direct, s, nr, matches)


# --- counts and traces ---------------------------------------------------------------

@dataclass
class PointCounts:
    p: int
    counts: dict = field(default_factory=dict)  # n -> N_n
    weight: int = 2  # N_n = 1 + q^weight + (trace on H^weight), q = p^n

    def add(self, n: int, N: int):
        if N < 0:
            raise ValueError("negative count")
        if n in self.counts and self.counts[n] != N:
            raise ValueError("conflicting counts for n=%d" % n)
        self.counts[n] = N

    def contiguous(self) -> int:
        m = 0
        while m + 1 in self.counts:
            m += 1
        return m


def traces_from_counts(counts: PointCounts) -> list[int]:
    """a_n = N_n - 1 - p^(2n) for n = 1 .. m (the contiguous prefix)."""
    p = counts.p
    return [counts.counts[n] - 1 - p ** (2 * n) for n in range(1, counts.contiguous() + 1)]


# --- Newton identities and functional equation --------------------------------------

def power_sums(coeffs_desc: Sequence[int], m: int) -> list[int]:
    """Power sums s_1..s_m of the roots of a monic polynomial t^d + r_1 t^(d-1) + ..."""
    r = list(coeffs_desc)
    d = len(r) - 1
    s = []
    for k in range(1, m + 1):
        val = -k * (r[k] if k <= d else 0)
        for i in range(1, k):
            val -= (r[i] if i <= d else 0) * s[k - 1 - i]
        s.append(val)
    return s


def coeffs_from_power_sums(s: Sequence[int], h: int) -> list[Fraction]:
    """r_1..r_h from power sums by Newton: k r_k = -(s_k + sum_{i<k} r_i s_{k-i})."""
    r = [Fraction(1)]
    for k in range(1, h + 1):
        acc = Fraction(s[k - 1])
        for i in range(1, k):
            acc += r[i] * s[k - 1 - i]
        r.append(-acc / k)
    return r


def required_traces(d: int, eps: int) -> int:
    """Traces needed to fix a degree-d factor with the given functional-equation sign."""
    h = d // 2
    if d % 2 == 0 and eps == -1:
        return h - 1 if h > 0 else 0
    return h


def complete_symmetric(half: Sequence, d: int, eps: int, wroot: int) -> list | None:
    """Fill r_0..r_d from r_0..r_h using r_{d-i} = eps * wroot^(d-2i) * r_i."""
    r = list(half) + [None] * (d + 1 - len(half))
    h = d // 2
    if d % 2 == 0 and eps == -1:
        if len(half) > h and half[h] != 0:
            return None
        r[h] = 0
    for i in range(0, (d + 1) // 2):
        r[d - i] = eps * wroot ** (d - 2 * i) * r[i]
    return r


def poly_mul_desc(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass
class WeilPolynomial:
    p: int
    coeffs: list  # c_0..c_22, constant term first
    eps: int = 1
    known_factor: list | None = None  # ascending coefficients

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def desc(self) -> list[int]:
        return list(reversed(self.coeffs))

    def to_poly(self) -> MPoly:
        return MPoly(ZZ, 1, {(i,): c for i, c in enumerate(self.coeffs)})

    def __str__(self):
        return self.to_poly().to_str(["t"])


def reconstruct_weil(
    counts: PointCounts,
    known_factor: Sequence[int] | None = None,
    eps: int | None = None,
    degree: int = 22,
) -> list[WeilPolynomial]:
    """Candidate Weil polynomials consistent with the counts.

    ``known_factor`` is given constant term first (default t - p).  Traces
    beyond the number needed are used as consistency checks.
    """
    p = counts.p
    K = list(known_factor) if known_factor is not None else [-p, 1]
    k = len(K) - 1
    d = degree - k
    Kdesc = list(reversed(K))
    if Kdesc[0] != 1:
        raise ValueError("known factor must be monic")
    eps_k = functional_equation_sign(K, p)
    if eps_k is None:
        raise ValueError("known factor does not satisfy a functional equation")
    traces = traces_from_counts(counts)
    signs = [eps] if eps is not None else [1, -1]
    need = max(required_traces(d, e * eps_k) for e in signs)
    if len(traces) < need:
        raise InsufficientCounts(need, len(traces))
    ks = power_sums(Kdesc, len(traces))
    b = [a - x for a, x in zip(traces, ks)]
    out = []
    for e in signs:
        e2 = e * eps_k
        h = d // 2
        use = min(h, len(b))
        r = coeffs_from_power_sums(b, use)
        if any(x.denominator != 1 for x in r):
            continue
        r = [int(x) for x in r]
        if use < h:
            r.append(0)  # middle coefficient forced to zero when e2 = -1
        full = complete_symmetric(r, d, e2, p)
        if full is None:
            continue
        # recheck every available trace
        if power_sums(full, len(b)) != b:
            continue
        P = poly_mul_desc(Kdesc, full)
        wp = WeilPolynomial(p, list(reversed(P)), e, list(K))
        if validate_weil(wp).ok:
            out.append(wp)
    if not out:
        raise NoCandidate("counts are inconsistent with a Weil polynomial of degree %d" % degree)
    return out


# --- validation ------------------------------------------------------------------------

@dataclass
class WeilValidation:
    eps: int | None
    functional_equation: bool
    hyperplane_factor: bool
    coefficient_bounds: bool
    unit_circle: bool | None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def functional_equation_sign(coeffs: Sequence[int], p: int) -> int | None:
    """eps with p^d P(t) = eps t^d P(p^2/t), i.e. c_{d-i} = eps p^(d-2i) c_i."""
    d = len(coeffs) - 1
    for eps in (1, -1):
        if all(coeffs[i] == eps * p ** (d - 2 * i) * coeffs[d - i] if d - 2 * i >= 0 else
               coeffs[d - i] == eps * p ** (2 * i - d) * coeffs[i] for i in range(d + 1)):
            return eps
    return None


def unitarized(coeffs: Sequence[int], p: int) -> list[Fraction]:
    """Coefficients of P(p t) / p^d, constant term first."""
    d = len(coeffs) - 1
    return [Fraction(c * p ** i, p ** d) for i, c in enumerate(coeffs)]


def validate_weil(P: WeilPolynomial, check_roots: bool = True) -> WeilValidation:
    c = list(P.coeffs)
    p = P.p
    d = len(c) - 1
    failures = []
    if c[-1] != 1:
        failures.append("not monic")
    eps = functional_equation_sign(c, p)
    fe = eps is not None
    if not fe:
        failures.append("functional equation")
    hp = sum(ci * p ** i for i, ci in enumerate(c)) == 0
    if not hp:
        failures.append("(t - p) does not divide")
    bounds = all(abs(c[d - i]) <= comb(d, i) * p ** i for i in range(d + 1))
    if not bounds:
        failures.append("coefficient bound")
    roots = None
    if check_roots:
        # a real polynomial with every root on |t| = p is closed under
        # t -> p^2/t, so a functional-equation failure already rules it out
        roots = fe and roots_on_unit_circle(unitarized(c, p))
        if not roots:
            failures.append("root magnitudes")
    return WeilValidation(eps, fe, hp, bounds, roots, failures)


def roots_on_unit_circle(N: Sequence[Fraction]) -> bool:
    """Exact test that every root of N has absolute value 1.

    N must satisfy N(t) = +-t^d N(1/t).  Factors t -+ 1 are removed, the
    palindromic rest is written as t^m Q(t + 1/t), and Sturm sequences check
    that Q has all its roots real and in [-2, 2].
    """
    a = [Fraction(x) for x in N]
    while a and a[-1] == 0:
        a.pop()
    if not a or a[0] == 0:
        return False
    for r in (1, -1):
        while len(a) > 1 and sum(x * r ** i for i, x in enumerate(a)) == 0:
            a, rem = _udivmod(a, [Fraction(-r), Fraction(1)], QQ)
            if rem:
                return False
    d = len(a) - 1
    if d == 0:
        return True
    if d % 2 or any(a[i] != a[d - i] for i in range(d + 1)):
        return False
    m = d // 2
    # t^k + t^-k as polynomials in x = t + 1/t
    T = [[Fraction(2)], [Fraction(0), Fraction(1)]]
    for k in range(2, m + 1):
        nxt = [Fraction(0)] + T[k - 1]
        for i, x in enumerate(T[k - 2]):
            nxt[i] -= x
        T.append(nxt)
    Q = [Fraction(0)] * (m + 1)
    Q[0] += a[m]
    for k in range(1, m + 1):
        for i, x in enumerate(T[k]):
            Q[i] += a[m + k] * x
    while Q and Q[-1] == 0:
        Q.pop()
    # squarefree part
    dq = _uderiv(Q, QQ)
    g = _ugcd(Q, dq, QQ) if dq else [Fraction(1)]
    S = _udivmod(Q, g, QQ)[0] if len(g) > 1 else Q
    return _sturm_count(S, Fraction(-2), Fraction(2)) == len(S) - 1


def _sturm_count(f: list, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of squarefree f in [lo, hi]."""
    seq = [f, _uderiv(f, QQ)]
    while len(seq[-1]) > 1:
        r = _udivmod(seq[-2], seq[-1], QQ)[1]
        if not r:
            break
        seq.append([-x for x in r])

    def ev(poly, x):
        acc = Fraction(0)
        for cf in reversed(poly):
            acc = acc * x + cf
        return acc

    def changes(x):
        vals = [ev(s, x) for s in seq]
        vals = [v for v in vals if v != 0]
        return sum(1 for u, v in zip(vals, vals[1:]) if (u < 0) != (v < 0))

    n = changes(lo) - changes(hi)
    if ev(f, lo) == 0:
        n += 1
    return n


# --- cyclotomic rank bound --------------------------------------------------------------

@dataclass
class CyclotomicReport:
    multiplicities: list  # (n, multiplicity)
    rank_bound: int
    label: str = "rank (Tate)"

    @property
    def odd(self) -> bool:
        return self.rank_bound % 2 == 1


def cyclotomic_rank_bound(P: WeilPolynomial) -> CyclotomicReport:
    c = list(P.coeffs)
    if functional_equation_sign(c, P.p) is None:
        raise NotWeil("functional equation fails")
    N = unitarized(c, P.p)
    deg = len(c) - 1
    mults = []
    for n in range(1, 67):
        if euler_phi(n) > deg:
            continue
        phi = [Fraction(x) for x in uni_coeffs(cyclotomic(n))]
        m = 0
        while len(N) - 1 >= len(phi) - 1:
            q, r = _udivmod(N, phi, QQ)
            if r:
                break
            N = q
            m += 1
        if m:
            mults.append((n, m))
    rank = sum(euler_phi(n) * m for n, m in mults)
    return CyclotomicReport(mults, rank)


# --- genus-2 oracle -------------------------------------------------------------------

def _uni_squarefree(f: list, F) -> bool:
    return set(_sqf_mults(list(f), F)) <= {1}


def count_genus2(f_coeffs: Sequence[int], p: int, n: int) -> int:
    """Points on the smooth model of y^2 = f(x) over F_{p^n}, deg f in {5, 6}."""
    F = make_field(p, n)
    d = len(f_coeffs) - 1
    vf = VecField(F)
    X = vf.encode(np.arange(F.q, dtype=np.int64))
    f = MPoly(F, 1, {(i,): F.coerce(c) for i, c in enumerate(f_coeffs)})
    vals = _eval_form(vf, f, [X])
    affine = F.q + int(np.asarray(vf.chi(np.asarray(vals))).sum())
    if d % 2:
        inf = 1
    else:
        from .ffield import character_of_code

        inf = 1 + character_of_code(F, F.coerce(f_coeffs[-1]))
    return affine + inf


def hyperelliptic_lpoly(f_coeffs: Sequence[int], p: int) -> list[int]:
    """L-polynomial 1 + a1 T + a2 T^2 + p a1 T^3 + p^2 T^4 of y^2 = f(x), genus 2."""
    if p == 2:
        raise EvenCharacteristic("characteristic 2")
    d = len(f_coeffs) - 1
    if d not in (5, 6) or f_coeffs[-1] % p == 0:
        raise ValueError("f must have degree 5 or 6 modulo p")
    F = make_field(p)
    if not _uni_squarefree([F.coerce(c) for c in f_coeffs], F):
        raise NotSquarefree("f is not squarefree mod %d" % p)
    counts = PointCounts(p, weight=1)
    for n in (1, 2):
        counts.add(n, count_genus2(f_coeffs, p, n))
    return lpoly_from_counts(counts)


def lpoly_from_counts(counts: PointCounts) -> list[int]:
    """Genus-2 reconstruction via Newton and the functional equation (eps = +1)."""
    p = counts.p
    # Frobenius eigenvalues alpha: N_n = p^n + 1 - sum alpha^n
    s = [p ** n + 1 - counts.counts[n] for n in (1, 2)]
    r = coeffs_from_power_sums(s, 2)
    r = [int(x) for x in r]
    full = [r[0], r[1], r[2], p * r[1], p * p]
    # char poly t^4 + r1 t^3 + ... ; L(T) = T^4 P(1/T) has the same coefficient list
    return full


def genus2_count_from_lpoly(L: Sequence[int], p: int, n: int) -> int:
    s = power_sums(L, n)
    return p ** n + 1 - s[n - 1]


# --- counts cache ------------------------------------------------------------------------

def load_counts_cache(path: str, p: int) -> PointCounts:
    pc = PointCounts(p)
    if not path or not os.path.exists(path):
        return pc
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if len(parts) != 3:
                continue
            pp, n, N = (int(x) for x in parts)
            if pp == p:
                pc.add(n, N)
    return pc


def append_count(path: str, p: int, n: int, N: int) -> None:
    """Append one "p n N" record with a single O_APPEND write."""
    data = ("%d %d %d\n" % (p, n, N)).encode()
    fd = os.open(path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
    try:
        os.write(fd, data)
        os.fsync(fd)
    finally:
        os.close(fd)


def count_series(model, nmax: int, cache: str | None = None, budget: int = DEFAULT_P2_BUDGET,
                 partitions: int = 1) -> PointCounts:
    """N_1..N_nmax for a double-cover model, resuming from a counts cache."""
    p = model.g6.ring.p
    pc = load_counts_cache(cache, p) if cache else PointCounts(p)
    missing = [n for n in range(1, nmax + 1) if n not in pc.counts]
    if missing and p ** (2 * max(missing)) > budget:
        # fail before spending hours on the feasible prefix
        raise BudgetExceeded("N_%d over F_%d^%d needs %d evaluations, budget %d"
                             % (max(missing), p, max(missing), p ** (2 * max(missing)), budget))
    for n in range(1, nmax + 1):
        if n in pc.counts:
            continue
        N = count_double_cover(model, n, partitions=partitions, budget=budget)
        pc.add(n, N)
        if cache:
            append_count(cache, p, n, N)
    return pc


def weil_from_eigen_multiset(p: int, factors: Iterable[Sequence[int]]) -> list[int]:
    """Multiply ascending integer factors into one ascending coefficient list."""
    out = [1]
    for f in factors:
        out = list(reversed(poly_mul_desc(list(reversed(out)), list(reversed(list(f))))))
    return out


def counts_from_weil(coeffs: Sequence[int], p: int, nmax: int) -> PointCounts:
    """Forward map: N_n = 1 + p^(2n) + (sum of n-th powers of the roots)."""
    s = power_sums(list(reversed(list(coeffs))), nmax)
    pc = PointCounts(p)
    for n in range(1, nmax + 1):
        pc.add(n, 1 + p ** (2 * n) + s[n - 1])
    return pc
