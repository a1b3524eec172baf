"""Buchberger's algorithm over Q and F_q, and the emptiness tests built on it.

Monomials are packed into Python ints so that grevlex comparison is integer
comparison, multiplication is addition and divisibility is a guard-bit test.
Pair selection uses the sugar strategy with Gebauer-Moeller pruning.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

try:  # GMP integers make the large-coefficient work over Q several times faster
    from gmpy2 import gcd as _zgcd, mpz as _mpz
except ImportError:  # pragma: no cover
    _zgcd, _mpz = gcd, int

from .errors import BudgetExceeded
from .ffield import FieldDescriptor
from .poly import QQ, ZZ, MPoly

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 40
DEFAULT_PAIR_CAP = 200_000
_W = 8
_MAXE = 127


class _Packer:
    def __init__(self, nvars: int):
        self.n = nvars
        self.shift = nvars * _W
        self.one = sum(_MAXE << (i * _W) for i in range(nvars))
        self.guard = sum(0x80 << (i * _W) for i in range(nvars))
        self.low = (1 << self.shift) - 1

    def pack(self, e) -> int:
        k = sum(e) << self.shift
        for i, x in enumerate(e):
            if x > _MAXE - 1:
                raise BudgetExceeded("exponent %d too large for the packed representation" % x)
            k |= (_MAXE - x) << (i * _W)
        return k

    def unpack(self, k: int) -> tuple[int, ...]:
        return tuple(_MAXE - ((k >> (i * _W)) & 0xFF) for i in range(self.n))

    def deg(self, k: int) -> int:
        return k >> self.shift

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return (((a & self.low) | g) - (b & self.low)) & g == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return all(not (x and y) for x, y in zip(ea, eb))


@dataclass
class IdealBasis:
    """Generators of an ideal; ``completed`` marks a reduced Groebner basis."""

    ring: object
    nvars: int
    generators: list
    order: str = "grevlex"
    completed: bool = False
    label: str = ""
    stats: dict = field(default_factory=dict)

    @classmethod
    def of(cls, gens: Sequence[MPoly], label: str = "") -> "IdealBasis":
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("need at least one nonzero generator (or pass ring/nvars explicitly)")
        return cls(gens[0].ring, gens[0].nvars, gens, label=label)

    def is_unit(self) -> bool:
        return self.completed and len(self.generators) == 1 and self.generators[0].is_constant()

    def __len__(self):
        return len(self.generators)


class _Elem:
    __slots__ = ("lm", "lc", "tail", "sugar", "terms")

    def __init__(self, terms: dict, sugar: int):
        self.terms = terms
        self.lm = max(terms)
        self.lc = terms[self.lm]
        self.tail = sorted(((k, c) for k, c in terms.items() if k != self.lm), reverse=True)
        self.sugar = sugar


class _Engine:
    """Shared Buchberger driver; subclasses provide coefficient arithmetic."""

    def __init__(self, nvars, degree_cap, pair_cap):
        self.pk = _Packer(nvars)
        self.degree_cap = degree_cap
        self.pair_cap = pair_cap
        self.elems: list[_Elem] = []
        self._reducer_cache: dict[int, tuple[int, int]] = {}
        self.stats = {"pairs": 0, "zero_reductions": 0, "max_sugar": 0}

    # subclass hooks: normalize(dict) -> dict ; reduce(dict, sugar) -> (dict, sugar) ; spoly

    def find_reducer(self, k: int) -> int:
        cache = self._reducer_cache
        n = len(self.elems)
        hit = cache.get(k)
        start = 0
        if hit is not None:
            upto, idx = hit
            if idx >= 0:
                return idx
            start = upto
        divides = self.pk.divides
        elems = self.elems
        for i in range(start, n):
            if divides(elems[i].lm, k):
                cache[k] = (n, i)
                return i
        cache[k] = (n, -1)
        return -1

    def add(self, terms: dict, sugar: int) -> int:
        self.elems.append(_Elem(terms, sugar))
        return len(self.elems) - 1

    def run(self, inputs: list[dict]):
        pk = self.pk
        G: set[int] = set()
        B: dict[tuple[int, int], tuple[int, int]] = {}
        # reduce inputs against each other as they are added, lowest degree first
        order = sorted(inputs, key=lambda d: (max(d), len(d)))
        for d in order:
            sugar = pk.deg(max(d))
            h, sugar = self.reduce(dict(d), sugar) if self.elems else (d, sugar)
            if not h:
                continue
            h = self.normalize(h)
            ih = self.add(h, sugar)
            if pk.deg(self.elems[ih].lm) == 0:
                return [ih]
            G, B = self.update(G, B, ih)
        while B:
            pair = min(B, key=B.__getitem__)
            psugar, plcm = B.pop(pair)
            self.stats["pairs"] += 1
            if self.stats["pairs"] > self.pair_cap:
                raise BudgetExceeded("pair cap %d exceeded" % self.pair_cap)
            if psugar > self.degree_cap:
                raise BudgetExceeded("sugar degree %d exceeds cap %d" % (psugar, self.degree_cap))
            self.stats["max_sugar"] = max(self.stats["max_sugar"], psugar)
            s = self.spoly(pair[0], pair[1], plcm)
            if not s:
                self.stats["zero_reductions"] += 1
                continue
            h, sugar = self.reduce(s, psugar)
            if not h:
                self.stats["zero_reductions"] += 1
                continue
            h = self.normalize(h)
            ih = self.add(h, sugar)
            if pk.deg(self.elems[ih].lm) == 0:
                return [ih]
            G, B = self.update(G, B, ih)
        return sorted(G, key=lambda i: self.elems[i].lm)

    def pair_entry(self, i, j):
        pk = self.pk
        ei, ej = self.elems[i], self.elems[j]
        l = pk.lcm(ei.lm, ej.lm)
        dl = pk.deg(l)
        sugar = max(ei.sugar - pk.deg(ei.lm), ej.sugar - pk.deg(ej.lm)) + dl
        return sugar, l

    def update(self, G: set, B: dict, ih: int):
        pk = self.pk
        lm = lambda i: self.elems[i].lm  # noqa: E731
        mh = lm(ih)
        C = set(G)
        D: set = set()
        while C:
            ig = C.pop()
            mg = lm(ig)
            lcm_hg = pk.lcm(mh, mg)

            def lcm_divides(ip):
                return pk.divides(pk.lcm(mh, lm(ip)), lcm_hg)

            if pk.coprime(mh, mg) or (
                not any(lcm_divides(ipx) for ipx in C) and not any(lcm_divides(pr[1]) for pr in D)
            ):
                D.add((ih, ig))
        E = set()
        for pr in D:
            if not pk.coprime(mh, lm(pr[1])):
                E.add(pr)
        B_new = {}
        for (i1, i2), val in B.items():
            lcm12 = val[1]
            if (
                not pk.divides(mh, lcm12)
                or pk.lcm(lm(i1), mh) == lcm12
                or pk.lcm(lm(i2), mh) == lcm12
            ):
                B_new[(i1, i2)] = val
        for ih_, ig in E:
            B_new[(ig, ih_)] = self.pair_entry(ig, ih_)
        G_new = {ig for ig in G if not pk.divides(mh, lm(ig))}
        G_new.add(ih)
        return G_new, B_new

    def interreduce(self, idxs: list[int]) -> list[dict]:
        """Tail-reduce a minimal basis into the reduced Groebner basis."""
        keep = [self.elems[i] for i in idxs]
        out = []
        for e in keep:
            others = [o for o in keep if o is not e]
            sub = _SubEngine(self, others)
            # the leading monomial is irreducible by the others in a minimal basis
            red, _ = sub.reduce(dict(e.terms), e.sugar)
            out.append(self.normalize(red))
        out.sort(key=max)
        return out


class _SubEngine:
    """Reduce against a fixed subset of another engine's elements."""

    def __init__(self, parent: _Engine, elems: list[_Elem]):
        self.__class__ = type("_Sub" + type(parent).__name__, (_SubEngine, type(parent)), {})
        self.__dict__.update(parent.__dict__)
        self.elems = list(elems)
        self._reducer_cache = {}


class _ModEngine(_Engine):
    def __init__(self, p, nvars, degree_cap, pair_cap):
        super().__init__(nvars, degree_cap, pair_cap)
        self.p = p

    def normalize(self, h: dict) -> dict:
        p = self.p
        lc = h[max(h)]
        if lc == 1:
            return h
        inv = pow(lc, p - 2, p)
        return {k: c * inv % p for k, c in h.items()}

    def spoly(self, i, j, l):
        p = self.p
        ei, ej = self.elems[i], self.elems[j]
        di, dj = l - ei.lm, l - ej.lm
        s = {}
        for k, c in ei.tail:
            s[k + di] = c
        for k, c in ej.tail:
            kk = k + dj
            v = (s.get(kk, 0) - c) % p
            if v:
                s[kk] = v
            else:
                s.pop(kk, None)
        return s

    def reduce(self, f: dict, sugar: int):
        p = self.p
        pk = self.pk
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem = {}
        elems = self.elems
        find = self.find_reducer
        deg = pk.deg
        push, pop = heapq.heappush, heapq.heappop
        while heap:
            k = -pop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            idx = find(k)
            if idx < 0:
                rem[k] = c
                continue
            r = elems[idx]
            d = k - r.lm
            s2 = r.sugar + deg(d + pk.one)
            if s2 > sugar:
                sugar = s2
            for kt, ct in r.tail:
                kk = kt + d
                old = f.get(kk)
                if old is None:
                    f[kk] = (-c * ct) % p
                    push(heap, -kk)
                else:
                    v = (old - c * ct) % p
                    if v:
                        f[kk] = v
                    else:
                        del f[kk]
        return rem, sugar


class _FieldEngine(_Engine):
    """Generic field coefficients through the ring protocol (used for F_{p^n})."""

    def __init__(self, ring, nvars, degree_cap, pair_cap):
        super().__init__(nvars, degree_cap, pair_cap)
        self.ring = ring

    def normalize(self, h):
        ring = self.ring
        inv = ring.inv(h[max(h)])
        return {k: ring.mul(c, inv) for k, c in h.items()}

    def spoly(self, i, j, l):
        ring = self.ring
        ei, ej = self.elems[i], self.elems[j]
        di, dj = l - ei.lm, l - ej.lm
        s = {}
        for k, c in ei.tail:
            s[k + di] = c
        for k, c in ej.tail:
            kk = k + dj
            v = ring.sub(s.get(kk, ring.zero), c)
            if ring.is_zero(v):
                s.pop(kk, None)
            else:
                s[kk] = v
        return s

    def reduce(self, f, sugar):
        ring = self.ring
        pk = self.pk
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            k = -heapq.heappop(heap)
            c = f.pop(k, None)
            if c is None or ring.is_zero(c):
                continue
            idx = self.find_reducer(k)
            if idx < 0:
                rem[k] = c
                continue
            r = self.elems[idx]
            d = k - r.lm
            sugar = max(sugar, r.sugar + pk.deg(d + pk.one))
            for kt, ct in r.tail:
                kk = kt + d
                old = f.get(kk)
                v = ring.mul(c, ct)
                if old is None:
                    f[kk] = ring.neg(v)
                    heapq.heappush(heap, -kk)
                else:
                    nv = ring.sub(old, v)
                    if ring.is_zero(nv):
                        del f[kk]
                    else:
                        f[kk] = nv
        return rem, sugar


class _IntEngine(_Engine):
    """Q coefficients handled fraction-free on primitive integer polynomials."""

    def normalize(self, h):
        g = 0
        for c in h.values():
            g = _zgcd(g, c)
            if g == 1:
                break
        if h[max(h)] < 0:
            g = -g
        if g == 1:
            return h
        return {k: c // g for k, c in h.items()}

    def spoly(self, i, j, l):
        ei, ej = self.elems[i], self.elems[j]
        a, b = ei.lc, ej.lc
        g = _zgcd(a, b)
        fa, fb = b // g, a // g
        di, dj = l - ei.lm, l - ej.lm
        s = {}
        for k, c in ei.tail:
            s[k + di] = c * fa
        for k, c in ej.tail:
            kk = k + dj
            v = s.get(kk, 0) - c * fb
            if v:
                s[kk] = v
            else:
                s.pop(kk, None)
        return self._prim(s)

    @staticmethod
    def _prim(s):
        g = 0
        for c in s.values():
            g = _zgcd(g, c)
            if g == 1:
                return s
        if g in (0, 1):
            return s
        return {k: c // g for k, c in s.items()}

    def reduce(self, f, sugar):
        pk = self.pk
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem = {}
        elems = self.elems
        steps = 0
        while heap:
            k = -heapq.heappop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            idx = self.find_reducer(k)
            if idx < 0:
                rem[k] = c
                continue
            r = elems[idx]
            a = r.lc
            g = _zgcd(a, c)
            ma, mc = a // g, c // g
            if ma != 1:
                if ma == -1:
                    # -f - mc*m*r is f + mc*m*r up to sign
                    ma, mc = 1, -mc
                else:
                    for kk in f:
                        f[kk] *= ma
                    for kk in rem:
                        rem[kk] *= ma
            d = k - r.lm
            sugar = max(sugar, r.sugar + pk.deg(d + pk.one))
            for kt, ct in r.tail:
                kk = kt + d
                old = f.get(kk)
                if old is None:
                    f[kk] = -mc * ct
                    heapq.heappush(heap, -kk)
                else:
                    v = old - mc * ct
                    if v:
                        f[kk] = v
                    else:
                        del f[kk]
            steps += 1
            if ma != 1 and steps % 8 == 0:
                self._shrink(f, rem)
        return rem, sugar

    @staticmethod
    def _shrink(f, rem):
        g = 0
        for c in itertools.chain(f.values(), rem.values()):
            g = _zgcd(g, c)
            if g == 1:
                return
        if g > 1:
            for kk in f:
                f[kk] //= g
            for kk in rem:
                rem[kk] //= g


def _engine_for(ring, nvars, degree_cap, pair_cap):
    if isinstance(ring, FieldDescriptor):
        if ring.n == 1:
            return _ModEngine(ring.p, nvars, degree_cap, pair_cap)
        return _FieldEngine(ring, nvars, degree_cap, pair_cap)
    if ring is QQ or ring is ZZ:
        return _IntEngine(nvars, degree_cap, pair_cap)
    raise TypeError("unsupported coefficient ring %r" % (ring,))


def _to_packed(f: MPoly, pk: _Packer, ring) -> dict:
    if ring is QQ or ring is ZZ:
        prim = f.primitive()
        return {pk.pack(e): _mpz(c) for e, c in prim.terms.items()}
    return {pk.pack(e): c for e, c in f.terms.items()}


def _from_packed(d: dict, pk: _Packer, ring, nvars) -> MPoly:
    if ring is QQ or ring is ZZ:
        return MPoly(QQ, nvars, {pk.unpack(k): int(c) for k, c in d.items()})
    return MPoly.from_codes(ring, nvars, {pk.unpack(k): c for k, c in d.items()})


def buchberger(
    gens: IdealBasis | Sequence[MPoly],
    degree_cap: int = DEFAULT_DEGREE_CAP,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> IdealBasis:
    """Reduced Groebner basis (grevlex) of the ideal generated by ``gens``."""
    ideal = gens if isinstance(gens, IdealBasis) else IdealBasis.of(gens)
    ring, nvars = ideal.ring, ideal.nvars
    if degree_cap > 2 * _MAXE // 3:
        raise ValueError("degree cap too large for packed monomials")
    nonzero = [g for g in ideal.generators if not g.is_zero()]
    if not nonzero:
        return IdealBasis(ring, nvars, [], completed=True, label=ideal.label)
    if nvars == 0 or any(g.is_constant() for g in nonzero):
        one = MPoly.one(QQ if ring is ZZ else ring, nvars)
        return IdealBasis(one.ring, nvars, [one], completed=True, label=ideal.label)
    for g in nonzero:
        if g.degree() > degree_cap:
            raise BudgetExceeded("generator degree %d exceeds cap %d" % (g.degree(), degree_cap))
    eng = _engine_for(ring, nvars, degree_cap, pair_cap)
    inputs = [_to_packed(g, eng.pk, ring) for g in nonzero]
    idxs = eng.run(inputs)
    basis = eng.interreduce(idxs)
    polys = [_from_packed(d, eng.pk, ring, nvars) for d in basis]
    if ring is QQ or ring is ZZ:
        # leading coefficient 1 over Q
        polys = [p.scale(QQ.inv(p.leading_term()[1])) for p in polys]
    out_ring = QQ if ring is ZZ else ring
    res = IdealBasis(out_ring, nvars, polys, completed=True, label=ideal.label)
    res.stats = dict(eng.stats, basis_size=len(polys))
    return res


def reduce_by(f: MPoly, basis: IdealBasis) -> MPoly:
    """Normal form of f with respect to a completed basis."""
    if f.is_zero():
        return f
    ring = basis.ring
    g0 = basis.generators
    eng = _engine_for(ring, basis.nvars, DEFAULT_DEGREE_CAP * 2, DEFAULT_PAIR_CAP)
    for g in g0:
        eng.add(_to_packed(g, eng.pk, ring), g.degree())
    if ring is QQ:
        prim = f.primitive()
        scale = f.leading_term()[1] / prim.leading_term()[1]
        red, _ = eng.reduce(_to_packed(prim, eng.pk, ring), f.degree())
        out = _from_packed(red, eng.pk, ring, f.nvars)
        return out if out.is_zero() else out.scale(scale)
    red, _ = eng.reduce(_to_packed(f, eng.pk, ring), f.degree())
    return _from_packed(red, eng.pk, ring, f.nvars)


def contains_one(gens: IdealBasis | Sequence[MPoly], **caps) -> bool:
    """True iff 1 lies in the ideal, i.e. the affine variety over the closure is empty."""
    return buchberger(gens, **caps).is_unit()


def dehomogenize(f: MPoly, i: int) -> MPoly:
    """Set x_i = 1 and drop that variable."""
    t: dict = {}
    ring = f.ring
    for e, c in f.terms.items():
        ne = e[:i] + e[i + 1 :]
        t[ne] = ring.add(t[ne], c) if ne in t else c
    return MPoly.from_codes(ring, f.nvars - 1, t)


def projective_is_empty(gens: IdealBasis | Sequence[MPoly], k: int | None = None, **caps) -> bool:
    """Projective zero locus in P^k over the closure is empty (all charts x_i = 1 empty)."""
    ideal = gens if isinstance(gens, IdealBasis) else IdealBasis.of(gens)
    k = ideal.nvars - 1 if k is None else k
    if k != ideal.nvars - 1:
        raise ValueError("ambient dimension must be nvars - 1")
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
    for i in range(k + 1):
        chart = [dehomogenize(g, i) for g in ideal.generators]
        if not contains_one(chart, **caps):
            log.debug("chart x%d = 1 has points", i)
            return False
    return True


# --- lines on complete intersections ---------------------------------------

def schubert_cells(m: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(m + 1), 2))


def cell_parametrization(ring, m: int, pivots: tuple[int, int]):
    """Rows of the 2 x (m+1) echelon matrix for a cell, over a 2(m-1)-variable ring."""
    npar = 2 * (m - 1)
    params = MPoly.gens(ring, npar)
    one, zero = MPoly.one(ring, npar), MPoly.zero(ring, npar)
    free = [c for c in range(m + 1) if c not in pivots]
    row0, row1 = [zero] * (m + 1), [zero] * (m + 1)
    row0[pivots[0]] = one
    row1[pivots[1]] = one
    for idx, c in enumerate(free):
        row0[c] = params[idx]
        row1[c] = params[idx + m - 1]
    return row0, row1


def line_restriction_coefficients(f: MPoly, row0, row1) -> list[MPoly]:
    """Coefficients (in the cell parameters) of f(s*row0 + t*row1) as a form in (s, t)."""
    ring = row0[0].ring
    npar = row0[0].nvars
    # work in npar + 2 variables: parameters then s, t
    nv = npar + 2
    emb = lambda p: MPoly(ring, nv, {e + (0, 0): c for e, c in p.terms.items()}, _clean=True)  # noqa: E731
    s = MPoly.var(ring, nv, npar)
    t = MPoly.var(ring, nv, npar + 1)
    images = [s * emb(a) + t * emb(b) for a, b in zip(row0, row1)]
    g = f.change_ring(ring).subs(images) if f.ring != ring else f.subs(images)
    coeffs: dict = {}
    for e, c in g.terms.items():
        key = e[npar:]
        coeffs.setdefault(key, {})[e[:npar]] = c
    return [MPoly.from_codes(ring, npar, coeffs[key]) for key in sorted(coeffs)]


def schubert_line_ideals(f_list: Sequence[MPoly], m: int) -> list[IdealBasis]:
    """One ideal per chart (pivot pair) of the Grassmannian of lines in P^m."""
    if m not in (3, 4):
        raise ValueError("ambient P^m must have m in {3, 4}")
    for f in f_list:
        if f.nvars != m + 1 or not f.is_homogeneous():
            raise ValueError("each form must be homogeneous in %d variables" % (m + 1))
    ring = f_list[0].ring
    if ring is ZZ:
        ring = QQ
    out = []
    for piv in schubert_cells(m):
        row0, row1 = cell_parametrization(ring, m, piv)
        gens = []
        for f in f_list:
            gens.extend(line_restriction_coefficients(f, row0, row1))
        ideal = IdealBasis(ring, 2 * (m - 1), [g for g in gens if not g.is_zero()], label="cell%d%d" % piv)
        out.append(ideal)
    return out


@dataclass
class LineFreeReport:
    free: bool
    cells: list = field(default_factory=list)  # (label, unit?)
    method: str = "direct"
    auxiliary_prime: int | None = None

    def __bool__(self):
        return self.free


def _cell_is_unit(ideal: IdealBasis, caps) -> bool:
    if not ideal.generators:
        return False
    try:
        return contains_one(ideal, **caps)
    except BudgetExceeded as exc:
        raise BudgetExceeded("cell %s: %s" % (ideal.label, exc)) from None


def lines_free_over_closure(
    f_list: Sequence[MPoly],
    m: int,
    *,
    method: str = "direct",
    auxiliary_primes: Sequence[int] = (101, 103, 107, 109, 113),
    report: bool = False,
    **caps,
):
    """True iff no line over the algebraic closure lies on V(f_list) in P^m.

    The default ``method='direct'`` computes every cell basis over the
    coefficient ring.  Over Q, ``'auto'`` first tries reductions modulo
    auxiliary primes: a line over the closure of Q reduces to a line on the
    reduction of the integral model (the Grassmannian is proper), so an empty
    line scheme over F_p-bar proves emptiness over Q-bar.  If no auxiliary
    prime succeeds it falls back to the direct computation.
    """
    ring = f_list[0].ring
    rational = ring is QQ or ring is ZZ
    if rational and method in ("auto", "reduction"):
        from .ffield import make_field

        integral = [f.primitive() for f in f_list]
        for p in auxiliary_primes:
            F = make_field(p)
            red = [f.change_ring(F) for f in integral]
            if any(r.is_zero() for r in red):
                continue
            ok = True
            cells = []
            for ideal in schubert_line_ideals(red, m):
                unit = _cell_is_unit(ideal, caps)
                cells.append((ideal.label, unit))
                if not unit:
                    ok = False
                    break
            if ok:
                rep = LineFreeReport(True, cells, "reduction", p)
                return rep if report else True
        if method == "reduction":
            raise BudgetExceeded("no auxiliary prime proved line-freeness; use method='direct'")
    cells = []
    for ideal in schubert_line_ideals(f_list, m):
        unit = _cell_is_unit(ideal, caps)
        cells.append((ideal.label, unit))
        if not unit:
            rep = LineFreeReport(False, cells, "direct")
            return rep if report else False
    rep = LineFreeReport(True, cells, "direct")
    return rep if report else True
