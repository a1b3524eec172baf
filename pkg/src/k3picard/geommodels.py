"""Degree-2 models of complete-intersection K3 surfaces.

Degree 8: the discriminant sextic of a net of quadrics in P^5.
Degree 6: projection from a line L = V(x0, x1, x2) on V(f2, f3) in P^4,
giving the tangency matrix A, the branch sextic det(A), the image cubic of L
and the degree-5 discriminant of the conic bundle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import (
    BadChart,
    BudgetExceeded,
    CommonComponent,
    EvenCharacteristic,
    LineNotContained,
    ParseError,
    WrongVariableCount,
    ZeroSextic,
)
from .ffield import FieldDescriptor, FqElem, character_of_code, enumerate_projective
from .groebner import IdealBasis, projective_is_empty
from .poly import (
    QQ,
    ZZ,
    MPoly,
    PolyMatrix,
    default_names,
    det,
    jacobian,
    parse_poly,
    restrict_to_line,
    ring_from_tag,
    squarefree_profile,
)

P2 = ("u", "v", "w")


class Provenance(str, Enum):
    DISCRIMINANT_OF_NET = "DiscriminantOfNet"
    PROJECTION_FROM_LINE = "ProjectionFromLine"
    DIRECT = "Direct"


def _check_char(ring):
    if isinstance(ring, FieldDescriptor) and ring.p == 2:
        raise EvenCharacteristic("characteristic 2")


# --- degree 8 ----------------------------------------------------------------

@dataclass(frozen=True)
class QuadricNet:
    quadrics: tuple

    def __post_init__(self):
        if len(self.quadrics) != 3:
            raise ValueError("a net has exactly three quadrics")
        for q in self.quadrics:
            if q.nvars != 6:
                raise WrongVariableCount("quadrics must be in 6 variables, got %d" % q.nvars)
            if not q.is_zero() and (q.degree() != 2 or not q.is_homogeneous()):
                raise ValueError("net members must be quadratic forms")
        _check_char(self.ring)

    @property
    def ring(self):
        return self.quadrics[0].ring

    def gram(self, i: int) -> list[list]:
        """Gram matrix: diagonal 2*coeff(x_i^2), off-diagonal coeff(x_i x_j)."""
        q = self.quadrics[i]
        ring = q.ring
        g = [[ring.zero] * 6 for _ in range(6)]
        for e, c in q.terms.items():
            idx = [k for k, x in enumerate(e) for _ in range(x)]
            a, b = idx
            if a == b:
                g[a][a] = ring.add(c, c)
            else:
                g[a][b] = g[b][a] = c
        return g

    def pencil_matrix(self) -> PolyMatrix:
        """x0*Q0 + x1*Q1 + x2*Q2 with entries linear forms in (u, v, w)."""
        ring = self.ring
        u = MPoly.gens(ring, 3)
        grams = [self.gram(i) for i in range(3)]
        rows = []
        for a in range(6):
            row = []
            for b in range(6):
                row.append(MPoly.from_codes(ring, 3, {(1, 0, 0): grams[0][a][b], (0, 1, 0): grams[1][a][b], (0, 0, 1): grams[2][a][b]}))
            rows.append(row)
        return PolyMatrix(rows)

    def reduce(self, F: FieldDescriptor) -> "QuadricNet":
        return QuadricNet(tuple(_to_field(q, F) for q in self.quadrics))


def _to_field(f: MPoly, F) -> MPoly:
    # rational coefficients must have denominators prime to p; coerce handles that
    return f.change_ring(F)


@dataclass
class DoubleCoverModel:
    """s^2 = twist * g6(u, v, w), weighted-homogeneous in P(1,1,1,3)."""

    g6: MPoly
    twist: object = 1
    provenance: Provenance = Provenance.DIRECT
    image_cubic: MPoly | None = None
    conic_discriminant: MPoly | None = None

    def __post_init__(self):
        if self.g6.nvars != 3:
            raise WrongVariableCount("branch sextic must be ternary")
        if self.g6.is_zero():
            raise ZeroSextic("zero branch sextic")
        if self.g6.degree() != 6 or not self.g6.is_homogeneous():
            raise ValueError("branch sextic must be homogeneous of degree 6")
        ring = self.g6.ring
        self.twist = ring.coerce(self.twist)
        if ring.is_zero(self.twist):
            raise ValueError("twist must be nonzero")

    @property
    def ring(self):
        return self.g6.ring


def disc_sextic(net: QuadricNet) -> DoubleCoverModel:
    """g6 = -det(u*Q0 + v*Q1 + w*Q2)."""
    g = -det(net.pencil_matrix())
    if g.is_zero():
        raise ZeroSextic("the net has identically singular members")
    return DoubleCoverModel(g, 1, Provenance.DISCRIMINANT_OF_NET)


# --- degree 6 ----------------------------------------------------------------

@dataclass(frozen=True)
class Degree6Pair:
    f2: MPoly
    f3: MPoly

    def __post_init__(self):
        for f, d in ((self.f2, 2), (self.f3, 3)):
            if f.nvars != 5:
                raise WrongVariableCount("forms on P^4 need 5 variables")
            if f.is_zero() or f.degree() != d or not f.is_homogeneous():
                raise ValueError("f%d must be a nonzero form of degree %d" % (d, d))
        _check_char(self.f2.ring)

    @property
    def ring(self):
        return self.f2.ring

    def forms(self) -> list[MPoly]:
        return [self.f2, self.f3]

    def reduce(self, F: FieldDescriptor) -> "Degree6Pair":
        return Degree6Pair(self.f2.change_ring(F), self.f3.change_ring(F))


@dataclass(frozen=True)
class LineDecomposition:
    """f2 = l0*y0 + l1*y1 + q and
    f3 = l00*y0^2 + l01*y0*y1 + l11*y1^2 + q0*y0 + q1*y1 + c, pieces in (u, v, w)."""

    l0: MPoly
    l1: MPoly
    l00: MPoly
    l01: MPoly
    l11: MPoly
    q: MPoly
    q0: MPoly
    q1: MPoly
    c: MPoly

    @property
    def ring(self):
        return self.l0.ring

    def pieces(self) -> dict[str, MPoly]:
        return {k: getattr(self, k) for k in ("l0", "l1", "l00", "l01", "l11", "q", "q0", "q1", "c")}

    def reassemble(self) -> Degree6Pair:
        ring = self.ring
        x = MPoly.gens(ring, 5)
        emb = [x[0], x[1], x[2]]
        y0, y1 = x[3], x[4]
        P = {k: f.subs(emb) for k, f in self.pieces().items()}
        f2 = P["l0"] * y0 + P["l1"] * y1 + P["q"]
        f3 = (
            P["l00"] * y0 * y0 + P["l01"] * y0 * y1 + P["l11"] * y1 * y1
            + P["q0"] * y0 + P["q1"] * y1 + P["c"]
        )
        return Degree6Pair(f2, f3)


_F2_SLOTS = {(1, 0): "l0", (0, 1): "l1", (0, 0): "q"}
_F3_SLOTS = {(2, 0): "l00", (1, 1): "l01", (0, 2): "l11", (1, 0): "q0", (0, 1): "q1", (0, 0): "c"}


def decompose_containing_line(pair: Degree6Pair) -> LineDecomposition:
    """Split (f2, f3) along y = (x3, x4); requires V(x0, x1, x2) on the surface."""
    ring = pair.ring
    buckets: dict[str, dict] = {k: {} for k in ("l0", "l1", "l00", "l01", "l11", "q", "q0", "q1", "c")}
    offending = []
    for f, slots, deg in ((pair.f2, _F2_SLOTS, 2), (pair.f3, _F3_SLOTS, 3)):
        for e, c in f.sorted_terms():
            ye = (e[3], e[4])
            if sum(ye) == deg:
                offending.append(MPoly.from_codes(ring, 5, {e: c}).to_str())
                continue
            buckets[slots[ye]][e[:3]] = c
    if offending:
        raise LineNotContained(offending)
    return LineDecomposition(**{k: MPoly.from_codes(ring, 3, t) for k, t in buckets.items()})


def tangency_matrix(dec: LineDecomposition) -> PolyMatrix:
    z = MPoly.zero(dec.ring, 3)
    two = lambda f: f + f  # noqa: E731
    return PolyMatrix(
        [
            [z, dec.l0, dec.l1, dec.q],
            [dec.l0, two(dec.l00), dec.l01, dec.q0],
            [dec.l1, dec.l01, two(dec.l11), dec.q1],
            [dec.q, dec.q0, dec.q1, two(dec.c)],
        ]
    )


def conic_matrix(dec: LineDecomposition) -> PolyMatrix:
    """Lower-right 3x3 block M of the tangency matrix."""
    A = tangency_matrix(dec)
    return PolyMatrix([row[1:] for row in A.rows[1:]])


def image_cubic(dec: LineDecomposition) -> MPoly:
    """Resultant of l0*y0 + l1*y1 and l00*y0^2 + l01*y0*y1 + l11*y1^2 in (y0, y1)."""
    return dec.l00 * dec.l1 * dec.l1 - dec.l01 * dec.l0 * dec.l1 + dec.l11 * dec.l0 * dec.l0


def conic_discriminant(dec: LineDecomposition) -> MPoly:
    return det(conic_matrix(dec))


def branch_sextic(dec: LineDecomposition) -> DoubleCoverModel:
    if dec.l0.is_zero() and dec.l1.is_zero():
        raise ZeroSextic("l0 = l1 = 0: projection from the line is not a double cover")
    g6 = det(tangency_matrix(dec))
    if g6.is_zero():
        raise ZeroSextic("det(A) vanishes identically")
    return DoubleCoverModel(
        g6,
        1,
        Provenance.PROJECTION_FROM_LINE,
        image_cubic=image_cubic(dec),
        conic_discriminant=conic_discriminant(dec),
    )


class FiberKind(str, Enum):
    TWO_POINTS = "TwoPoints"
    ONE_RAMIFIED = "OneRamified"
    INERT = "Inert"
    NON_FLAT_LINE = "NonFlatLineFiber"
    NON_FLAT_CONIC = "NonFlatConicFiber"
    CONTAINED_LINE = "ContainedLine"


@dataclass(frozen=True)
class FiberReport:
    kind: FiberKind
    points: int  # F_q-rational points of the fiber in the plane (y0 : y1 : z)
    line: tuple
    conic: tuple  # coefficients of y0^2, y0y1, y1^2, y0z, y1z, z^2


def fiber_at(dec: LineDecomposition, a: Sequence[int]) -> FiberReport:
    """Fiber of the blown-up projection over a point a of P^2(F_q)."""
    F = dec.ring
    if not isinstance(F, FieldDescriptor):
        raise TypeError("fiber_at needs finite-field coefficients")
    # a holds element codes; wrap them so evaluate does not read them as integers
    pt = [x if isinstance(x, FqElem) else FqElem(F, x) for x in a]
    ev = lambda f: f.evaluate(pt)  # noqa: E731
    line = (ev(dec.l0), ev(dec.l1), ev(dec.q))
    conic = tuple(ev(getattr(dec, k)) for k in ("l00", "l01", "l11", "q0", "q1", "c"))
    if all(x == 0 for x in line):
        return FiberReport(FiberKind.NON_FLAT_LINE, _conic_points(F, conic), line, conic)
    if all(x == 0 for x in conic):
        return FiberReport(FiberKind.NON_FLAT_CONIC, F.q + 1, line, conic)
    bq = _conic_on_line(F, conic, line)
    if all(x == 0 for x in bq):
        return FiberReport(FiberKind.CONTAINED_LINE, F.q + 1, line, conic)
    al, be, ga = bq
    disc = F.sub(F.mul(be, be), F.mul(F.from_int(4), F.mul(al, ga)))
    chi = character_of_code(F, disc)
    kind = {1: FiberKind.TWO_POINTS, 0: FiberKind.ONE_RAMIFIED, -1: FiberKind.INERT}[chi]
    return FiberReport(kind, 1 + chi, line, conic)


def _conic_on_line(F, conic, line):
    """Binary quadric (alpha, beta, gamma) of the conic restricted to the line."""
    X = MPoly.gens(F, 3)
    mons = ((2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2))
    form = MPoly.from_codes(F, 3, dict(zip(mons, conic)))
    b = restrict_to_line(form, [FqElem(F, x) for x in line])
    return (b.coeff((2, 0)), b.coeff((1, 1)), b.coeff((0, 2)))


def _conic_points(F, conic):
    n = 0
    for pt in enumerate_projective(F, 2):
        y0, y1, z = pt
        vals = (F.mul(y0, y0), F.mul(y0, y1), F.mul(y1, y1), F.mul(y0, z), F.mul(y1, z), F.mul(z, z))
        tot = 0
        for c, m in zip(conic, vals):
            tot = F.add(tot, F.mul(c, m))
        if tot == 0:
            n += 1
    return n


# --- tangency of the image cubic with the branch curve ----------------------

@dataclass(frozen=True)
class TangencyReport:
    profile: tuple
    tries: int

    @property
    def nine_tangencies(self) -> bool:
        return self.profile == (2,) * 9


def _random_change(ring, rng):
    if isinstance(ring, FieldDescriptor):
        pick = lambda: rng.randrange(ring.q)  # noqa: E731
    else:
        pick = lambda: rng.randint(-9, 9)  # noqa: E731
    return [[pick() for _ in range(3)] for _ in range(3)]


def _elem(ring, x):
    # random changes are drawn as element codes over finite fields
    return FqElem(ring, x) if isinstance(ring, FieldDescriptor) else x


def _apply_change(f: MPoly, T) -> MPoly:
    ring = f.ring
    X = MPoly.gens(ring, 3)
    images = []
    for i in range(3):
        acc = MPoly.zero(ring, 3)
        for j in range(3):
            acc = acc + X[j].scale(_elem(ring, T[i][j]))
        images.append(acc)
    return f.subs(images)


def _w_coeffs(f: MPoly) -> list[MPoly]:
    """Coefficients of w^k (k = 0..deg) as binary forms in (u, v)."""
    d = f.degree()
    out = [dict() for _ in range(d + 1)]
    for (a, b, c), v in f.terms.items():
        out[c][(a, b)] = v
    return [MPoly.from_codes(f.ring, 2, t) for t in out]


def binary_resultant_w(f: MPoly, g: MPoly) -> MPoly:
    """Res_w(f, g) as a binary form in (u, v) via the Sylvester determinant."""
    a = _w_coeffs(f)[::-1]  # leading first
    b = _w_coeffs(g)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MPoly.zero(f.ring, 2)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return det(PolyMatrix(rows))


def tangency_profile(g6: MPoly, g3: MPoly, seed: int = 0, tries: int = 20, samples: int = 3) -> TangencyReport:
    """Intersection multiplicities of V(g6) and V(g3) over the closure.

    After a random linear change making both forms monic in w, the resultant
    in w is a degree-18 binary form whose root multiplicities are the local
    intersection numbers, provided the projection from (0:0:1) separates the
    intersection points.  A bad projection can only merge roots, so the
    finest profile among ``samples`` good charts is reported.
    """
    ring = g6.ring
    if ring is ZZ:
        g6, g3, ring = g6.change_ring(QQ), g3.change_ring(QQ), QQ
    rng = random.Random(seed)
    best = None
    good = 0
    attempt = 0
    for attempt in range(1, tries + 1):
        T = _random_change(ring, rng)
        if det(PolyMatrix([[MPoly.const(ring, 1, _elem(ring, x)) for x in row] for row in T])).is_zero():
            continue
        A, B = _apply_change(g6, T), _apply_change(g3, T)
        if ring.is_zero(A.coeff((0, 0, 6))) or ring.is_zero(B.coeff((0, 0, 3))):
            continue
        res = binary_resultant_w(A, B)
        if res.is_zero():
            raise CommonComponent("the curves share a component")
        prof = tuple(squarefree_profile(res))
        if best is None or len(prof) > len(best):
            best = prof
        good += 1
        if good >= samples:
            break
    if best is None:
        raise BadChart("no admissible coordinate change in %d tries" % tries)
    return TangencyReport(best, attempt)


# --- smoothness ----------------------------------------------------------------

def jacobian_ideal(gens: Sequence[MPoly], k: int) -> list[MPoly]:
    """Generators plus all c x c minors of the Jacobian (c = number of forms)."""
    if any(g.nvars != k + 1 for g in gens):
        raise WrongVariableCount("forms must live in %d variables" % (k + 1))
    J = jacobian(gens)
    c = len(gens)
    out = list(gens)
    for cols in itertools.combinations(range(k + 1), c):
        sub = PolyMatrix([[J.rows[i][j] for j in cols] for i in range(c)])
        m = det(sub)
        if not m.is_zero():
            out.append(m)
    return out


def smoothness_check(gens: Sequence[MPoly], k: int, **caps) -> bool:
    """True iff V(gens) in P^k is smooth of codimension len(gens) over the closure."""
    ideal = jacobian_ideal(gens, k)
    ring = ideal[0].ring
    if ring is ZZ:
        ideal = [g.change_ring(QQ) for g in ideal]
    return projective_is_empty(IdealBasis.of(ideal), k, **caps)


# --- tritangent lines over Q ----------------------------------------------------

def tritangent_scheme_ideals(g6: MPoly) -> list[IdealBasis]:
    """12 ideals whose joint emptiness means no line L with g6|L = c*h^2, c != 0.

    Variables: a, b (the line), h's three free coefficients, c and a
    Rabinowitsch variable z.
    """
    if g6.nvars != 3 or g6.degree() != 6 or not g6.is_homogeneous():
        raise ValueError("ternary sextic expected")
    ring = QQ if g6.ring is ZZ else g6.ring
    g6 = g6.change_ring(ring)
    nv = 7
    V = MPoly.gens(ring, nv)
    a, b = V[0], V[1]
    c, z = V[5], V[6]
    one = MPoly.one(ring, nv)
    # bring g6 into the 7+2 variable ring: parameters then (s, t)
    out = []
    for piv in range(3):
        others = [i for i in range(3) if i != piv]
        big = nv + 2
        s = MPoly.var(ring, big, nv)
        t = MPoly.var(ring, big, nv + 1)
        emb = lambda p: MPoly(ring, big, {e + (0, 0): cc for e, cc in p.terms.items()}, _clean=True)  # noqa: E731
        images = [None, None, None]
        images[others[0]] = s
        images[others[1]] = t
        images[piv] = -(emb(a) * s + emb(b) * t)
        restricted = g6.subs(images)
        for lead in range(4):
            hvars = iter(V[2:5])
            hc = [one if i == lead else next(hvars) for i in range(4)]
            h = MPoly.zero(ring, big)
            for i, coef in enumerate(hc):
                h = h + emb(coef) * s ** (3 - i) * t ** i
            diff = restricted - emb(c) * h * h
            gens = _coeffs_in_st(diff, nv)
            gens.append(c * z - one)
            out.append(IdealBasis(ring, nv, [g for g in gens if not g.is_zero()], label="chart%d-lead%d" % (piv, lead)))
    return out


@dataclass
class TritangentFreeReport:
    free: bool
    charts: list = field(default_factory=list)  # (label, unit?)
    method: str = "direct"
    auxiliary_prime: int | None = None

    def __bool__(self):
        return self.free


def tritangent_free_over_closure(
    g6: MPoly,
    *,
    method: str = "direct",
    auxiliary_primes: Sequence[int] = (101, 103, 107, 109, 113),
    **caps,
) -> TritangentFreeReport:
    """Decide whether a rational plane sextic has a split tritangent over Q-bar.

    ``method='reduction'`` works modulo an auxiliary prime l where the sextic
    stays smooth: a tritangent over Q-bar reduces to a line whose restriction
    is c*h^2 with c*h^2 nonzero (a smooth sextic contains no line), hence to a
    tritangent mod l.  Unit ideals mod l therefore prove freeness over Q-bar.
    ``'auto'`` tries the reduction first and falls back to the direct basis
    computation over Q.
    """
    from .ffield import make_field
    from .groebner import contains_one

    ring = g6.ring
    rational = ring is QQ or ring is ZZ
    if rational and method in ("reduction", "auto"):
        integral = g6.primitive()
        for p in auxiliary_primes:
            F = make_field(p)
            red = integral.change_ring(F)
            if red.degree() != 6 or not smoothness_check([red], 2, **caps):
                continue
            charts = []
            ok = True
            for I in tritangent_scheme_ideals(red):
                unit = contains_one(I, **caps)
                charts.append((I.label, unit))
                if not unit:
                    ok = False
                    break
            if ok:
                return TritangentFreeReport(True, charts, "reduction", p)
        if method == "reduction":
            raise BudgetExceeded("no auxiliary prime proved tritangent-freeness; use method='direct'")
    charts = []
    for I in tritangent_scheme_ideals(g6):
        unit = contains_one(I, **caps)
        charts.append((I.label, unit))
        if not unit:
            return TritangentFreeReport(False, charts, "direct")
    return TritangentFreeReport(True, charts, "direct")


def _coeffs_in_st(f: MPoly, npar: int) -> list[MPoly]:
    groups: dict = {}
    for e, c in f.terms.items():
        groups.setdefault(e[npar:], {})[e[:npar]] = c
    return [MPoly.from_codes(f.ring, npar, groups[k]) for k in sorted(groups)]


# --- lattice stamp --------------------------------------------------------------

@dataclass(frozen=True)
class LatticeStamp:
    d: int
    e: int
    r: int

    def __post_init__(self):
        if self.d <= 0 or self.d % 2:
            raise ValueError("H^2 must be even and positive")

    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.d, self.e), (self.e, self.r))

    @property
    def discriminant(self) -> int:
        return self.d * self.r - self.e * self.e

    def __str__(self):
        return "((%d,%d),(%d,%d))" % (self.d, self.e, self.e, self.r)

    @classmethod
    def parse(cls, text: str) -> "LatticeStamp":
        nums = [int(x) for x in text.replace("(", " ").replace(")", " ").replace(",", " ").split()]
        if len(nums) != 4 or nums[1] != nums[2]:
            raise ParseError("bad lattice stamp %r" % text)
        return cls(nums[0], nums[1], nums[3])


# --- model files ----------------------------------------------------------------

@dataclass
class ModelRecord:
    kind: str
    ring: object
    provenance: str = Provenance.DIRECT.value
    twist: object = 1
    polys: dict = field(default_factory=dict)


def dump_record(rec: ModelRecord) -> str:
    lines = [
        "kind: %s" % rec.kind,
        "ring: %s" % rec.ring.tag,
        "provenance: %s" % rec.provenance,
        "twist: %s" % rec.ring.fmt(rec.ring.coerce(rec.twist)),
    ]
    for name, f in rec.polys.items():
        lines.append("%s[%d]: %s" % (name, f.nvars, f.to_str()))
    return "\n".join(lines) + "\n"


def load_record(text: str) -> ModelRecord:
    head: dict[str, str] = {}
    polys: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError("malformed model line %r" % line)
        key, val = (x.strip() for x in line.split(":", 1))
        if "[" in key:
            polys[key] = val
        else:
            head[key] = val
    for k in ("kind", "ring"):
        if k not in head:
            raise ParseError("model file lacks %r" % k)
    ring = ring_from_tag(head["ring"])
    rec = ModelRecord(head["kind"], ring, head.get("provenance", Provenance.DIRECT.value))
    rec.twist = ring.parse_coeff(head.get("twist", "1"))
    for key, val in polys.items():
        name, nv = key[:-1].split("[")
        nv = int(nv)
        rec.polys[name] = parse_poly(val, ring, default_names(nv))
    return rec


def model_to_record(model: DoubleCoverModel) -> ModelRecord:
    polys = {"g6": model.g6}
    if model.image_cubic is not None:
        polys["image_cubic"] = model.image_cubic
    if model.conic_discriminant is not None:
        polys["conic_discriminant"] = model.conic_discriminant
    return ModelRecord("double-cover", model.ring, model.provenance.value, model.twist, polys)


def record_to_model(rec: ModelRecord) -> DoubleCoverModel:
    if rec.kind != "double-cover" or "g6" not in rec.polys:
        raise ParseError("not a double-cover model record")
    return DoubleCoverModel(
        rec.polys["g6"],
        rec.twist,
        Provenance(rec.provenance),
        rec.polys.get("image_cubic"),
        rec.polys.get("conic_discriminant"),
    )
