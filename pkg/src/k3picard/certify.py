"""Search drivers, lifting and the two rank-1 certification pipelines.

A certificate is sectioned plain text ([model], [reduction], [evidence],
[conclusion]) closed by a sha256 line over the preceding bytes.  The
verifier re-runs every cheap link from the stored data; Groebner links are
recomputed with the recorded method and memoised per process.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import EqualPrimes, K3Error, NotPrime, ParseError
from .ffield import FieldDescriptor, character_of_code, is_prime, make_field
from .geommodels import (
    Degree6Pair,
    DoubleCoverModel,
    LatticeStamp,
    LineDecomposition,
    QuadricNet,
    branch_sextic,
    decompose_containing_line,
    disc_sextic,
    smoothness_check,
    tritangent_free_over_closure,
)
from .groebner import DEFAULT_DEGREE_CAP, DEFAULT_PAIR_CAP, lines_free_over_closure
from .linescan import LineInP2, is_split_tritangent, lines_on_surface_scan, tritangent_scan
from .poly import ZZ, MPoly, parse_poly, restrict_to_line, ring_from_tag
from .zeta import (
    DEFAULT_P2_BUDGET,
    PointCounts,
    WeilPolynomial,
    count_double_cover,
    count_series,
    counts_from_weil,
    cyclotomic_rank_bound,
    reconstruct_weil,
    smallest_nonresidue,
    validate_weil,
)

P2_NAMES = ("u", "v", "w")
P4_NAMES = ("x0", "x1", "x2", "x3", "x4")
P5_NAMES = ("x0", "x1", "x2", "x3", "x4", "x5")
HEADER = "k3picard-certificate 1"
SECTIONS = ("model", "reduction", "evidence", "conclusion")
DEFAULT_AUX_PRIMES = (101, 103, 107, 109, 113)

# --- seeded generator -------------------------------------------------------------
# splitmix64: state += GOLDEN; z = state; z = (z ^ z>>30) * MIX1;
# z = (z ^ z>>27) * MIX2; return z ^ z>>31, all modulo 2^64.

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
LIFT_SALT = 0x6C69667473616C74


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            z = self.next()
            if z < limit:
                return z % n

    def symmetric(self, k: int) -> int:
        return self.below(2 * k + 1) - k if k else 0


def derive_seed(seed: int, index: int) -> int:
    """Per-iteration seed, independent of scheduling."""
    return SplitMix64(seed ^ (((index + 1) * MIX2) & MASK64)).next()


@dataclass(frozen=True)
class SearchConfig:
    p: int
    seed: int = 0
    coeff_range: tuple | None = None  # residues sampled from [lo, hi); default [0, p)
    budget: int = DEFAULT_P2_BUDGET
    max_ext: int = 2
    degree_cap: int = DEFAULT_DEGREE_CAP
    pair_cap: int = DEFAULT_PAIR_CAP
    lift_spread: int = 0
    groebner_method: str = "auto"
    auxiliary_primes: tuple = DEFAULT_AUX_PRIMES
    counts_cache: str | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime("%r is not prime" % (self.p,))
        if self.p == 2:
            raise ValueError("p must be odd")
        if self.budget <= 0 or self.degree_cap <= 0 or self.pair_cap <= 0:
            raise ValueError("budgets must be positive")
        if self.lift_spread < 0 or self.max_ext < 1:
            raise ValueError("lift spread must be >= 0 and max_ext >= 1")
        if self.groebner_method not in ("direct", "auto", "reduction"):
            raise ValueError("unknown Groebner method %r" % (self.groebner_method,))

    @property
    def caps(self) -> dict:
        return {"degree_cap": self.degree_cap, "pair_cap": self.pair_cap}

    def _draw(self, rng: SplitMix64) -> int:
        lo, hi = self.coeff_range or (0, self.p)
        return (lo + rng.below(hi - lo)) % self.p


def monomials(nvars: int, deg: int) -> list[tuple]:
    """Exponent vectors of total degree deg, lexicographically descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def _random_form(cfg: SearchConfig, rng: SplitMix64, F, nvars: int, deg: int) -> MPoly:
    return MPoly(F, nvars, {e: cfg._draw(rng) for e in monomials(nvars, deg)})


def random_degree6_with_line(cfg: SearchConfig) -> Degree6Pair:
    """Random (f2, f3) over F_p containing V(x0, x1, x2), from the nine pieces."""
    F = make_field(cfg.p)
    rng = SplitMix64(cfg.seed)
    degs = (("l0", 1), ("l1", 1), ("l00", 1), ("l01", 1), ("l11", 1), ("q", 2), ("q0", 2), ("q1", 2), ("c", 3))
    while True:
        pieces = {name: _random_form(cfg, rng, F, 3, d) for name, d in degs}
        try:
            return LineDecomposition(**pieces).reassemble()
        except ValueError:
            continue


def random_net(cfg: SearchConfig) -> QuadricNet:
    F = make_field(cfg.p)
    rng = SplitMix64(cfg.seed)
    while True:
        qs = tuple(_random_form(cfg, rng, F, 6, 2) for _ in range(3))
        if all(not q.is_zero() for q in qs):
            return QuadricNet(qs)


def _lift_form(f: MPoly, deg: int, p: int, k: int, rng: SplitMix64) -> MPoly:
    terms = {}
    for e in monomials(f.nvars, deg):
        a = f.terms.get(e, 0)
        a = a - p if a > p // 2 else a
        terms[e] = a + p * rng.symmetric(k)
    return MPoly(ZZ, f.nvars, terms)


def lift_model(model, cfg: SearchConfig):
    """Centered lift plus p*r with r uniform in [-k, k] for every monomial."""
    rng = SplitMix64(cfg.seed ^ LIFT_SALT)
    p, k = cfg.p, cfg.lift_spread
    if isinstance(model, Degree6Pair):
        return Degree6Pair(_lift_form(model.f2, 2, p, k, rng), _lift_form(model.f3, 3, p, k, rng))
    if isinstance(model, QuadricNet):
        return QuadricNet(tuple(_lift_form(q, 2, p, k, rng) for q in model.quadrics))
    if isinstance(model, DoubleCoverModel):
        return DoubleCoverModel(_lift_form(model.g6, 6, p, k, rng))
    raise TypeError("cannot lift %r" % type(model).__name__)


def crt_interpolate_lift(x: Sequence[int], y: Sequence[int], p: int, q: int) -> list[int]:
    """Centered z with z = x mod p and z = y mod q."""
    if p == q:
        raise EqualPrimes("the two primes must differ")
    if len(x) != len(y):
        raise ValueError("vectors must have the same length")
    n = p * q
    ip = pow(p, -1, q)
    out = []
    for a, b in zip(x, y):
        z = (a + p * ((b - a) * ip % q)) % n
        out.append(z - n if z > n // 2 else z)
    return out


# --- Weil sources -------------------------------------------------------------------

PROVENANCES = ("reconstructed", "paper-supplied", "user-supplied")


@dataclass
class WeilSource:
    provenance: str
    coeffs: list | None = None  # constant term first

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError("unknown provenance %r" % (self.provenance,))
        if self.provenance != "reconstructed" and self.coeffs is None:
            raise ValueError("supplied Weil polynomial needs coefficients")

    @classmethod
    def reconstruct(cls):
        return cls("reconstructed")

    @classmethod
    def paper(cls, coeffs):
        return cls("paper-supplied", list(coeffs))

    @classmethod
    def user(cls, coeffs):
        return cls("user-supplied", list(coeffs))


def parse_weil_text(text: str) -> list[int]:
    """Either 23 integers (constant term first) or a polynomial in t."""
    body = " ".join(line.split("#")[0] for line in text.splitlines()).strip()
    try:
        ints = [int(x) for x in body.replace(",", " ").split()]
        return ints
    except ValueError:
        pass
    f = parse_poly(body, ZZ, ("t",))
    d = f.degree()
    return [f.terms.get((i,), 0) for i in range(d + 1)]


def read_weil_file(path: str) -> list[int]:
    with open(path) as fh:
        return parse_weil_text(fh.read())


# --- certificate ------------------------------------------------------------------------

@dataclass
class Certificate:
    degree: int
    sections: dict = field(default_factory=lambda: {s: {} for s in SECTIONS})

    def get(self, section: str, key: str, default=None):
        return self.sections[section].get(key, default)

    def set(self, section: str, key: str, value) -> None:
        self.sections[section][key] = str(value)

    @property
    def concluded(self) -> bool:
        return "rank" in self.sections["conclusion"]

    def body(self) -> str:
        out = [HEADER]
        for s in SECTIONS:
            out.append("[%s]" % s)
            for k, v in self.sections[s].items():
                out.append("%s = %s" % (k, v))
        return "\n".join(out) + "\n"

    def serialize(self) -> str:
        body = self.body()
        return body + "sha256 = %s\n" % hashlib.sha256(body.encode()).hexdigest()

    @classmethod
    def parse(cls, text: str) -> "Certificate":
        lines = text.splitlines()
        if not lines or lines[0] != HEADER:
            raise ParseError("missing certificate header")
        if not lines[-1].startswith("sha256 = "):
            raise ParseError("missing hash line")
        sections = {s: {} for s in SECTIONS}
        cur = None
        seen = []
        for ln in lines[1:-1]:
            if ln.startswith("[") and ln.endswith("]"):
                cur = ln[1:-1]
                if cur not in sections or cur in seen:
                    raise ParseError("unexpected section %r" % ln)
                seen.append(cur)
                continue
            if cur is None or " = " not in ln:
                raise ParseError("malformed line %r" % ln)
            k, v = ln.split(" = ", 1)
            if k in sections[cur]:
                raise ParseError("duplicate key %r" % k)
            sections[cur][k] = v
        if tuple(seen) != SECTIONS:
            raise ParseError("sections out of order or missing")
        try:
            degree = int(sections["model"]["degree"])
        except (KeyError, ValueError):
            raise ParseError("model degree missing") from None
        cert = cls(degree, sections)
        digest = lines[-1][len("sha256 = "):]
        if hashlib.sha256(cert.body().encode()).hexdigest() != digest:
            raise ParseError("content hash mismatch")
        return cert


def _ints(xs) -> str:
    return " ".join(str(int(x)) for x in xs)


def _parse_ints(s: str) -> list[int]:
    return [int(x) for x in s.split()]


def _counts_str(counts: dict) -> str:
    return " ".join("%d:%d" % (n, counts[n]) for n in sorted(counts))


def _parse_counts(s: str) -> dict:
    out = {}
    for tok in s.split():
        n, N = tok.split(":")
        if int(n) in out:
            raise ValueError("count for n=%s given twice" % n)
        out[int(n)] = int(N)
    return out


def _matrix_str(rows) -> str:
    return "; ".join(_ints(r) for r in rows)


def _parse_matrix(s: str) -> list[list[int]]:
    return [_parse_ints(r) for r in s.split(";")]


class StageFailure(Exception):
    def __init__(self, stage: str, message: str):
        super().__init__("%s: %s" % (stage, message))
        self.stage = stage


def _stage(name: str, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except StageFailure:
        raise
    except (K3Error, ValueError, ArithmeticError) as exc:
        raise StageFailure(name, "%s: %s" % (type(exc).__name__, exc)) from None


def _fail(cert: Certificate, exc: StageFailure) -> Certificate:
    cert.sections["conclusion"] = {"status": "incomplete", "failed_stage": exc.stage, "diagnosis": str(exc)}
    return cert


# --- shared links ---------------------------------------------------------------------------

def _standard_change(rows) -> list[list[int]]:
    """5 x 5 matrix T (x = T x') sending V(x0', x1', x2') onto the line spanned by rows."""
    m = len(rows[0])
    piv = [next(i for i, x in enumerate(r) if x) for r in rows]
    free = [c for c in range(m) if c not in piv]
    T = [[0] * m for _ in range(m)]
    for j, c in enumerate(free):
        T[c][j] = 1
    for i in range(m):
        T[i][m - 2] = rows[0][i]
        T[i][m - 1] = rows[1][i]
    return T


def _apply_change(f: MPoly, T) -> MPoly:
    F = f.ring
    n = f.nvars
    x = MPoly.gens(F, n)
    images = []
    for i in range(n):
        img = MPoly.zero(F, n)
        for j in range(n):
            if T[i][j]:
                img = img + x[j].scale(F.coerce(T[i][j]))
        images.append(img)
    return f.subs(images)


def _count_check(g6: MPoly, coeffs: Sequence[int], p: int, nmax: int, budget: int):
    """First counts implied by the Weil polynomial versus direct counts of s^2 = lambda*g6."""
    expected = counts_from_weil(coeffs, p, nmax).counts
    usable = [n for n in range(1, nmax + 1) if p ** (2 * n) <= budget]
    for lam in (1, smallest_nonresidue(p)):
        model = DoubleCoverModel(g6, lam)
        got = {n: count_double_cover(model, n, budget=budget) for n in usable}
        if all(got[n] == expected[n] for n in usable):
            return lam, got
    raise ValueError("Weil polynomial disagrees with direct counts for both twists")


def _weil_links(P: WeilPolynomial, known: Sequence[int]) -> "tuple":
    v = validate_weil(P)
    if not v.ok:
        raise ValueError("validation failed: %s" % ", ".join(v.failures))
    if v.eps != 1 and v.eps != -1:
        raise ValueError("no functional-equation sign")
    # known factor divides P
    from .poly import QQ, _udivmod
    from fractions import Fraction

    _, r = _udivmod([Fraction(c) for c in P.coeffs], [Fraction(c) for c in known], QQ)
    if r:
        raise ValueError("known factor does not divide the Weil polynomial")
    rep = cyclotomic_rank_bound(P)
    return v, rep


def _cyclo_str(rep) -> str:
    return " ".join("%d^%d" % (n, m) for n, m in rep.multiplicities)


def _obtain_weil(g6, p, cfg, source: WeilSource, known, nmax_check):
    """Weil polynomial, counts used and twist for the double cover s^2 = lambda*g6."""
    if source.provenance == "reconstructed":
        d = 22 - (len(known) - 1)
        need = d // 2
        # the twist does not change the geometric rank; count s^2 = g6 itself
        model = DoubleCoverModel(g6, 1)
        n = need
        pc = count_series(model, n, cfg.counts_cache, cfg.budget)
        cands = reconstruct_weil(pc, known)
        while len(cands) > 1:
            n += 1
            pc = count_series(model, n, cfg.counts_cache, cfg.budget)
            cands = reconstruct_weil(pc, known)
        return cands[0], dict(pc.counts), 1
    P = WeilPolynomial(p, list(source.coeffs), known_factor=list(known))
    lam, counts = _count_check(g6, P.coeffs, p, nmax_check, cfg.budget)
    return P, counts, lam


_GROEBNER_MEMO: dict = {}


def _memo(key, fn):
    if key not in _GROEBNER_MEMO:
        _GROEBNER_MEMO[key] = fn()
    return _GROEBNER_MEMO[key]


def _memo_report(kind, text, method, primes, caps, compute):
    ck = tuple(sorted(caps.items()))
    key = (kind, text, method, tuple(primes), ck)
    rep = _memo(key, compute)
    if rep.method == "direct":
        _GROEBNER_MEMO.setdefault((kind, text, "direct", tuple(primes), ck), rep)
    return rep


def _lines_free(forms, method, primes, caps):
    text = tuple(f.to_str(P4_NAMES) for f in forms)
    return _memo_report("lines", text, method, primes, caps, lambda: lines_free_over_closure(
        list(forms), 4, method=method, auxiliary_primes=primes, report=True, **caps))


def _tritangent_free(g6, method, primes, caps):
    return _memo_report("tri", g6.to_str(P2_NAMES), method, primes, caps, lambda: tritangent_free_over_closure(
        g6, method=method, auxiliary_primes=primes, **caps))


def _method_args(method: str, prime: str | None, cfg_primes):
    _check(method in ("direct", "reduction"), "evidence: Groebner method")
    # replay the producer's search: with 'auto' the first auxiliary prime that
    # succeeds is the recorded one, so any other prime is a broken link
    if method == "reduction":
        return "auto", cfg_primes
    return "direct", cfg_primes


# --- degree 6 --------------------------------------------------------------------------------

DEG6_THEOREM = (
    "X has no lines over Qbar; X_p is smooth, contains a line and has geometric Picard rank 2; "
    "hence the geometric Picard rank of X is 1"
)
DEG8_THEOREM = (
    "the branch sextic of Y has no tritangent over Qbar; mod p it is smooth with a split tritangent "
    "and rank(Y_p) = 2; hence rank(Y) = 1 and rank(X) = rank(Y) = 1"
)
RANK_TRANSFER = "external theorem: the geometric Picard ranks of X and of the discriminant double cover Y agree"


def _as_pair(model) -> Degree6Pair:
    if isinstance(model, Degree6Pair):
        return model
    f2, f3 = model
    return Degree6Pair(f2, f3)


def certify_degree6(pair, p: int, cfg: SearchConfig | None = None, weil_source: WeilSource | None = None) -> Certificate:
    cfg = cfg or SearchConfig(p)
    weil_source = weil_source or WeilSource.reconstruct()
    pair = _as_pair(pair)
    if pair.ring is not ZZ:
        raise TypeError("certify_degree6 expects integer coefficients")
    F = make_field(p)
    cert = Certificate(6)
    cert.set("model", "degree", 6)
    cert.set("model", "f2", pair.f2.to_str(P4_NAMES))
    cert.set("model", "f3", pair.f3.to_str(P4_NAMES))
    R = cert.sections["reduction"]
    E = cert.sections["evidence"]
    R["prime"] = str(p)
    try:
        red = _stage("stage 1 reduction", pair.reduce, F)
        if not _stage("stage 1 reduction", smoothness_check, red.forms(), 4, **cfg.caps):
            raise StageFailure("stage 1 reduction", "X_p is singular")
        R["smooth_surface"] = "true"

        def find_line():
            try:
                decompose_containing_line(red)
                return "standard", [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
            except K3Error:
                pass
            hits = lines_on_surface_scan(red.forms(), 4, 1, budget=cfg.budget)
            if not hits:
                raise ValueError("no line over F_p on X_p")
            return "scan", [list(r) for r in hits[0][1].rows]

        how, rows = _stage("stage 2 line", find_line)
        T = _standard_change(rows)
        R["line"] = _matrix_str(rows)
        R["line_search"] = how
        R["coordinate_change"] = _matrix_str(T)
        moved = Degree6Pair(_apply_change(red.f2, T), _apply_change(red.f3, T))
        dec = _stage("stage 3 projection", decompose_containing_line, moved)
        model = _stage("stage 3 projection", branch_sextic, dec)
        R["branch_sextic"] = model.g6.to_str(P2_NAMES)
        if not _stage("stage 3 projection", smoothness_check, [model.g6], 2, **cfg.caps):
            raise StageFailure("stage 3 projection", "branch sextic is singular")
        R["smooth_branch"] = "true"

        known = [p * p, -2 * p, 1]
        E["stamp"] = str(LatticeStamp(6, 1, -2))
        E["known_factor"] = _ints(known)
        P, counts, lam = _stage("stage 4 weil", _obtain_weil, model.g6, p, cfg, weil_source, known, 2)
        E["weil_provenance"] = weil_source.provenance
        E["weil"] = _ints(P.coeffs)
        E["counts"] = _counts_str(counts)
        E["twist"] = str(lam)
        v, rep = _stage("stage 5 rank", _weil_links, P, known)
        E["weil_eps"] = str(v.eps)
        E["cyclotomic"] = _cyclo_str(rep)
        E["rank_bound"] = str(rep.rank_bound)
        E["rank_label"] = rep.label
        if rep.rank_bound != 2:
            raise StageFailure("stage 5 rank", "rank bound %d, need 2" % rep.rank_bound)

        lf = _stage("stage 6 lines over Qbar", _lines_free, pair.forms(), cfg.groebner_method, cfg.auxiliary_primes, cfg.caps)
        E["lines_free_method"] = lf.method
        if lf.auxiliary_prime:
            E["lines_free_prime"] = str(lf.auxiliary_prime)
        E["lines_free_cells"] = " ".join(lab for lab, _ in lf.cells)
        E["lines_free"] = "true" if lf.free else "false"
        if not lf.free:
            raise StageFailure("stage 6 lines over Qbar", "a line over Qbar lies on X (%s)" % lf.cells[-1][0])
    except StageFailure as exc:
        return _fail(cert, exc)
    cert.sections["conclusion"] = {"rank": "1", "theorem": DEG6_THEOREM}
    return cert


# --- degree 8 -----------------------------------------------------------------------------------

def _class_sign(g6: MPoly, line: LineInP2) -> int:
    """chi of c in g6|L = c*h^2 (first nonzero coefficient of the restriction)."""
    r = restrict_to_line(g6, line.elems())
    lead = min(r.terms, key=lambda e: e[1])
    return character_of_code(line.field, r.terms[lead])


def certify_degree8(net, p: int, cfg: SearchConfig | None = None, weil_source: WeilSource | None = None) -> Certificate:
    cfg = cfg or SearchConfig(p)
    weil_source = weil_source or WeilSource.reconstruct()
    if not isinstance(net, QuadricNet):
        net = QuadricNet(tuple(net))
    if net.ring is not ZZ:
        raise TypeError("certify_degree8 expects integer coefficients")
    F = make_field(p)
    cert = Certificate(8)
    cert.set("model", "degree", 8)
    for i, q in enumerate(net.quadrics):
        cert.set("model", "q%d" % (i + 1), q.to_str(P5_NAMES))
    R = cert.sections["reduction"]
    E = cert.sections["evidence"]
    R["prime"] = str(p)
    try:
        red = _stage("stage 1 reduction", net.reduce, F)
        if not _stage("stage 1 reduction", smoothness_check, list(red.quadrics), 5, **cfg.caps):
            raise StageFailure("stage 1 reduction", "X_p is singular")
        R["smooth_surface"] = "true"
        g6 = _stage("stage 1 reduction", disc_sextic, red).g6
        R["disc_sextic"] = g6.to_str(P2_NAMES)
        if not _stage("stage 1 reduction", smoothness_check, [g6], 2, **cfg.caps):
            raise StageFailure("stage 1 reduction", "discriminant sextic is singular")
        R["smooth_branch"] = "true"

        def find_tritangent():
            for m in range(1, cfg.max_ext + 1):
                hits = tritangent_scan(g6, m)
                hits = [h for h in hits if h[0] == m]
                if hits:
                    return hits[0]
            raise ValueError("no split tritangent found up to F_{p^%d}" % cfg.max_ext)

        m, L = _stage("stage 2 tritangent", find_tritangent)
        R["tritangent_field"] = L.field.tag
        R["tritangent"] = _ints(L.coeffs)
        R["tritangent_profile"] = _ints(is_split_tritangent(g6.change_ring(L.field) if m > 1 else g6, L).profile)
        if m == 1:
            sign = _class_sign(g6, L)
            known = [p * p, -2 * p, 1] if sign == 1 else [-p * p, 0, 1]
        else:
            known = [-p, 1]
        E["stamp"] = str(LatticeStamp(2, 1, -2))
        E["known_factor"] = _ints(known)
        P, counts, lam = _stage("stage 3 weil", _obtain_weil, g6, p, cfg, weil_source, known, 2)
        E["weil_provenance"] = weil_source.provenance
        E["weil"] = _ints(P.coeffs)
        E["counts"] = _counts_str(counts)
        E["twist"] = str(lam)
        v, rep = _stage("stage 3 weil", _weil_links, P, known)
        E["weil_eps"] = str(v.eps)
        E["cyclotomic"] = _cyclo_str(rep)
        E["rank_bound"] = str(rep.rank_bound)
        E["rank_label"] = rep.label
        if rep.rank_bound != 2:
            raise StageFailure("stage 3 weil", "rank bound %d, need 2" % rep.rank_bound)

        gq = _stage("stage 4 tritangents over Qbar", disc_sextic, net).g6
        tf = _stage("stage 4 tritangents over Qbar", _tritangent_free, gq, cfg.groebner_method, cfg.auxiliary_primes, cfg.caps)
        E["tritangent_free_method"] = tf.method
        if tf.auxiliary_prime:
            E["tritangent_free_prime"] = str(tf.auxiliary_prime)
        E["tritangent_free_charts"] = " ".join(lab for lab, _ in tf.charts)
        E["tritangent_free"] = "true" if tf.free else "false"
        if not tf.free:
            raise StageFailure("stage 4 tritangents over Qbar", "chart %s has a tritangent" % tf.charts[-1][0])
    except StageFailure as exc:
        return _fail(cert, exc)
    cert.sections["conclusion"] = {"rank": "1", "theorem": DEG8_THEOREM, "rank_transfer": RANK_TRANSFER}
    return cert


# --- verification ---------------------------------------------------------------------------------

@dataclass
class Verification:
    ok: bool
    broken_link: str | None = None

    def __bool__(self):
        return self.ok


DEG6_KEYS = {
    "model": ("degree", "f2", "f3"),
    "reduction": ("prime", "smooth_surface", "line", "line_search", "coordinate_change", "branch_sextic", "smooth_branch"),
    "evidence": ("stamp", "known_factor", "weil_provenance", "weil", "counts", "twist", "weil_eps", "cyclotomic",
                 "rank_bound", "rank_label", "lines_free_method", "lines_free_cells", "lines_free"),
    "conclusion": ("rank", "theorem"),
}
DEG8_KEYS = {
    "model": ("degree", "q1", "q2", "q3"),
    "reduction": ("prime", "smooth_surface", "disc_sextic", "smooth_branch", "tritangent_field", "tritangent",
                  "tritangent_profile"),
    "evidence": ("stamp", "known_factor", "weil_provenance", "weil", "counts", "twist", "weil_eps", "cyclotomic",
                 "rank_bound", "rank_label", "tritangent_free_method", "tritangent_free_charts", "tritangent_free"),
    "conclusion": ("rank", "theorem", "rank_transfer"),
}
OPTIONAL_KEYS = {"lines_free_prime", "tritangent_free_prime"}


class _Broken(Exception):
    pass


def _check(cond: bool, link: str):
    if not cond:
        raise _Broken(link)


def verify_certificate(cert, cfg: SearchConfig | None = None, recount_budget: int = 1 << 24) -> Verification:
    """Re-run every cheap link; return the first broken one."""
    if isinstance(cert, str):
        cert = Certificate.parse(cert)
    try:
        _verify(cert, cfg, recount_budget)
    except _Broken as exc:
        return Verification(False, str(exc))
    except (K3Error, ValueError, KeyError, ArithmeticError, TypeError) as exc:
        return Verification(False, "malformed data: %s: %s" % (type(exc).__name__, exc))
    return Verification(True)


def _verify_schema(cert: Certificate):
    keys = {6: DEG6_KEYS, 8: DEG8_KEYS}.get(cert.degree)
    _check(keys is not None, "schema: degree must be 6 or 8")
    _check(cert.concluded, "conclusion: certificate carries no conclusion")
    for sec, req in keys.items():
        have = set(cert.sections[sec])
        _check(set(req) <= have, "schema: [%s] lacks %s" % (sec, sorted(set(req) - have)))
        _check(have <= set(req) | OPTIONAL_KEYS, "schema: [%s] has unknown keys %s" % (sec, sorted(have - set(req) - OPTIONAL_KEYS)))
    theorem = DEG6_THEOREM if cert.degree == 6 else DEG8_THEOREM
    _check(cert.get("conclusion", "rank") == "1" and cert.get("conclusion", "theorem") == theorem, "conclusion: statement")
    if cert.degree == 8:
        _check(cert.get("conclusion", "rank_transfer") == RANK_TRANSFER, "conclusion: rank transfer citation")


def _verify_weil(cert: Certificate, g6: MPoly, p: int, recount_budget: int, stamp: LatticeStamp, known_expected=None):
    E = cert.sections["evidence"]
    _check(E["stamp"] == str(stamp), "evidence: lattice stamp")
    known = _parse_ints(E["known_factor"])
    if known_expected is not None:
        _check(known in known_expected, "evidence: known factor")
    _check(E["weil_provenance"] in PROVENANCES, "evidence: provenance")
    coeffs = _parse_ints(E["weil"])
    _check(len(coeffs) == 23, "evidence: Weil polynomial degree")
    P = WeilPolynomial(p, coeffs, known_factor=known)
    try:
        v, rep = _weil_links(P, known)
    except (ValueError, K3Error) as exc:
        raise _Broken("evidence: Weil polynomial (%s)" % exc) from None
    _check(str(v.eps) == E["weil_eps"], "evidence: functional-equation sign")
    _check(_cyclo_str(rep) == E["cyclotomic"] and rep.rank_bound == 2 and E["rank_bound"] == "2", "evidence: rank bound")
    _check(E["rank_label"] == rep.label, "evidence: rank label")
    counts = _parse_counts(E["counts"])
    _check(sorted(counts) == list(range(1, len(counts) + 1)), "evidence: counts must cover n = 1..k")
    lam = int(E["twist"])
    _check(lam in (1, smallest_nonresidue(p)), "evidence: twist")
    if E["weil_provenance"] == "reconstructed":
        pc = PointCounts(p, dict(counts))
        try:
            cands = reconstruct_weil(pc, known)
        except K3Error as exc:
            raise _Broken("evidence: reconstruction (%s)" % exc) from None
        _check(len(cands) == 1 and cands[0].coeffs == coeffs, "evidence: reconstruction from counts")
    else:
        expected = counts_from_weil(coeffs, p, max(counts) if counts else 1).counts
        _check(bool(counts) and all(expected[n] == N for n, N in counts.items()), "evidence: counts implied by Weil polynomial")
    model = DoubleCoverModel(g6, lam)
    for n, N in sorted(counts.items()):
        if p ** (2 * n) <= recount_budget:
            _check(count_double_cover(model, n, budget=recount_budget) == N, "evidence: point count n=%d" % n)


def _model_poly(cert: Certificate, key: str, names) -> MPoly:
    text = cert.get("model", key)
    f = parse_poly(text, ZZ, names)
    _check(f.to_str(names) == text, "model: %s not in canonical form" % key)
    return f


def _verify(cert: Certificate, cfg: SearchConfig | None, recount_budget: int):
    _verify_schema(cert)
    R, E = cert.sections["reduction"], cert.sections["evidence"]
    p = int(R["prime"])
    _check(is_prime(p) and p > 2, "reduction: prime")
    cfg = cfg or SearchConfig(p)
    F = make_field(p)
    _check(R["smooth_surface"] == "true" and R["smooth_branch"] == "true", "reduction: smoothness flags")
    if cert.degree == 6:
        pair = Degree6Pair(_model_poly(cert, "f2", P4_NAMES), _model_poly(cert, "f3", P4_NAMES))
        red = pair.reduce(F)
        _check(smoothness_check(red.forms(), 4, **cfg.caps), "reduction: X_p smooth")
        rows = _parse_matrix(R["line"])
        _check(len(rows) == 2 and all(len(r) == 5 for r in rows), "reduction: line shape")
        T = _parse_matrix(R["coordinate_change"])
        _check(T == _standard_change(rows), "reduction: coordinate change")
        standard = rows == [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
        _check(R["line_search"] == ("standard" if standard else "scan"), "reduction: line search")
        moved = Degree6Pair(_apply_change(red.f2, T), _apply_change(red.f3, T))
        try:
            model = branch_sextic(decompose_containing_line(moved))
        except K3Error:
            raise _Broken("reduction: line not on X_p") from None
        _check(model.g6.to_str(P2_NAMES) == R["branch_sextic"], "reduction: branch sextic")
        _check(smoothness_check([model.g6], 2, **cfg.caps), "reduction: branch sextic smooth")
        _verify_weil(cert, model.g6, p, recount_budget, LatticeStamp(6, 1, -2), [[p * p, -2 * p, 1]])
        method, primes = _method_args(E["lines_free_method"], E.get("lines_free_prime"), cfg.auxiliary_primes)
        _check(E["lines_free"] == "true", "evidence: lines over Qbar")
        lf = _lines_free(pair.forms(), method, primes, cfg.caps)
        _check(lf.free and lf.method == E["lines_free_method"], "evidence: lines over Qbar (recomputed)")
        _check(" ".join(lab for lab, _ in lf.cells) == E["lines_free_cells"], "evidence: line cells")
        _check(str(lf.auxiliary_prime) == E.get("lines_free_prime", "None"), "evidence: auxiliary prime")
    else:
        net = QuadricNet(tuple(_model_poly(cert, "q%d" % i, P5_NAMES) for i in (1, 2, 3)))
        red = net.reduce(F)
        _check(smoothness_check(list(red.quadrics), 5, **cfg.caps), "reduction: X_p smooth")
        g6 = disc_sextic(red).g6
        _check(g6.to_str(P2_NAMES) == R["disc_sextic"], "reduction: discriminant sextic")
        _check(smoothness_check([g6], 2, **cfg.caps), "reduction: discriminant smooth")
        TF = ring_from_tag(R["tritangent_field"])
        _check(isinstance(TF, FieldDescriptor) and TF.p == p, "reduction: tritangent field")
        L = LineInP2(TF, tuple(_parse_ints(R["tritangent"])))
        _check(list(L.coeffs) == _parse_ints(R["tritangent"]), "reduction: tritangent normalisation")
        chk = is_split_tritangent(g6.change_ring(TF) if TF.n > 1 else g6, L)
        _check(bool(chk) and _ints(chk.profile) == R["tritangent_profile"], "reduction: split tritangent")
        if TF.n == 1:
            known_ok = [[p * p, -2 * p, 1]] if _class_sign(g6, L) == 1 else [[-p * p, 0, 1]]
        else:
            known_ok = [[-p, 1]]
        _verify_weil(cert, g6, p, recount_budget, LatticeStamp(2, 1, -2), known_ok)
        method, primes = _method_args(E["tritangent_free_method"], E.get("tritangent_free_prime"), cfg.auxiliary_primes)
        _check(E["tritangent_free"] == "true", "evidence: tritangents over Qbar")
        tf = _tritangent_free(disc_sextic(net).g6, method, primes, cfg.caps)
        _check(tf.free and tf.method == E["tritangent_free_method"], "evidence: tritangents over Qbar (recomputed)")
        _check(" ".join(lab for lab, _ in tf.charts) == E["tritangent_free_charts"], "evidence: tritangent charts")
        _check(str(tf.auxiliary_prime) == E.get("tritangent_free_prime", "None"), "evidence: auxiliary prime")


# --- search drivers -------------------------------------------------------------------------------

@dataclass
class SearchHit:
    index: int
    seed: int
    model: object
    g6: MPoly


def search_degree6(cfg: SearchConfig, iterations: int) -> SearchHit | None:
    """First seeded pair with smooth X_p and smooth branch sextic."""
    for i in range(iterations):
        s = derive_seed(cfg.seed, i)
        sub = SearchConfig(**{**cfg.__dict__, "seed": s})
        pair = random_degree6_with_line(sub)
        try:
            if not smoothness_check(pair.forms(), 4, **cfg.caps):
                continue
            g6 = branch_sextic(decompose_containing_line(pair)).g6
            if smoothness_check([g6], 2, **cfg.caps):
                return SearchHit(i, s, pair, g6)
        except K3Error:
            continue
    return None


def search_degree8(cfg: SearchConfig, iterations: int) -> SearchHit | None:
    """First seeded net with smooth X_p, smooth discriminant and a split tritangent over F_p."""
    for i in range(iterations):
        s = derive_seed(cfg.seed, i)
        sub = SearchConfig(**{**cfg.__dict__, "seed": s})
        net = random_net(sub)
        try:
            if not smoothness_check(list(net.quadrics), 5, **cfg.caps):
                continue
            g6 = disc_sextic(net).g6
            if not smoothness_check([g6], 2, **cfg.caps):
                continue
            if tritangent_scan(g6, 1):
                return SearchHit(i, s, net, g6)
        except K3Error:
            continue
    return None


__all__ = [
    "Certificate",
    "SearchConfig",
    "SplitMix64",
    "Verification",
    "WeilSource",
    "certify_degree6",
    "certify_degree8",
    "crt_interpolate_lift",
    "derive_seed",
    "lift_model",
    "random_degree6_with_line",
    "random_net",
    "read_weil_file",
    "search_degree6",
    "search_degree8",
    "verify_certificate",
]
