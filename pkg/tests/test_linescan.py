import itertools
import random

import pytest
import sympy

from k3picard import catalog
from k3picard.errors import BudgetExceeded, EvenCharacteristic
from k3picard.ffield import enumerate_projective, make_field
from k3picard.groebner import lines_free_over_closure
from k3picard.linescan import (
    LineInP2,
    LineInPn,
    canonical_line,
    is_split_tritangent,
    line_contained,
    lines_on_surface_scan,
    minimal_degree,
    scan_report,
    surface_points,
    tritangent_scan,
)
from k3picard.poly import MPoly, parse_poly, restrict_to_line, squarefree_profile

from _util import eval_codes, random_form

UVW = ("u", "v", "w")
X4 = ("x0", "x1", "x2", "x3")
X5 = ("x0", "x1", "x2", "x3", "x4")


# --- oracles ---------------------------------------------------------------------

def _sym(f, names):
    gens = sympy.symbols(names)
    expr = sum(int(c) * sympy.prod([g ** k for g, k in zip(gens, e)]) for e, c in f.terms.items())
    return expr, gens


def _square_classes(p):
    """Every c * h^2 with h a nonzero binary cubic over F_p, as coefficient tuples."""
    s, t = sympy.symbols("s t")
    out = set()
    for hc in itertools.product(range(p), repeat=4):
        if not any(hc):
            continue
        h = sum(c * s ** (3 - i) * t ** i for i, c in enumerate(hc))
        sq = sympy.Poly(sympy.expand(h * h), s, t)
        base = tuple(int(sq.coeff_monomial(s ** (6 - i) * t ** i)) % p for i in range(7))
        for c in range(1, p):
            out.add(tuple(c * x % p for x in base))
    return out


def _span(line, p):
    """Two points spanning V(a u + b v + c w) over F_p."""
    pts = [P for P in enumerate_projective(make_field(p), 2) if sum(a * x for a, x in zip(line, P)) % p == 0]
    return pts[0], pts[1]


def brute_tritangents(g, p):
    """Nested-loop scan: restriction to every line compared with the set of c*h^2."""
    expr, (u, v, w) = _sym(g, UVW)
    s, t = sympy.symbols("s t")
    squares = _square_classes(p)
    hits = []
    for line in enumerate_projective(make_field(p), 2):
        P, Q = _span(line, p)
        r = sympy.Poly(expr.subs({u: s * P[0] + t * Q[0], v: s * P[1] + t * Q[1], w: s * P[2] + t * Q[2]}), s, t)
        coeffs = tuple(int(r.coeff_monomial(s ** (6 - i) * t ** i)) % p for i in range(7))
        if any(coeffs) and coeffs in squares:
            hits.append(tuple(line))
    return sorted(hits)


def brute_lines(f_list, F):
    """Lines through pairs of F-points, kept when every F-point of the line is on V."""
    pts = [P for P in enumerate_projective(F, f_list[0].nvars - 1) if all(eval_codes(f, F, P) == 0 for f in f_list)]
    onset = set(map(tuple, pts))
    found = set()
    for P, Q in itertools.combinations(pts, 2):
        L = canonical_line(F, P, Q)
        if L in found:
            continue
        line_pts = [tuple(L.rows[0])] + [
            tuple(F.add(F.mul(c, a), b) for a, b in zip(L.rows[0], L.rows[1])) for c in range(F.q)
        ]
        normed = set()
        for x in line_pts:
            lead = next(v for v in x if v)
            inv = F.inv(lead)
            normed.add(tuple(F.mul(v, inv) for v in x))
        if normed <= onset:
            found.add(L)
    return found


def _linear_change(f, T):
    """f(T x) for an invertible integer matrix T over a prime field."""
    F = f.ring
    n = f.nvars
    images = [MPoly.from_codes(F, n, {tuple(int(j == k) for k in range(n)): T[i][j] % F.p for j in range(n) if T[i][j] % F.p}) for i in range(n)]
    return f.subs(images)


def _random_invertible(p, n, rng):
    while True:
        T = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if sympy.Matrix(T).det() % p:
            return T


# --- is_split_tritangent ---------------------------------------------------------

def test_square_of_product_is_split():
    F = make_field(7)
    g = parse_poly("u^2*v^2*w^2", F, UVW)
    chk = is_split_tritangent(g, LineInP2(F, (1, 1, 1)))
    assert chk == True  # noqa: E712
    assert all(m % 2 == 0 for m in chk.profile)


def test_odd_profile_is_not_split():
    F = make_field(7)
    g = parse_poly("u^5*v", F, UVW)
    chk = is_split_tritangent(g, LineInP2(F, (0, 0, 1)))
    assert not chk
    assert sorted(chk.profile) == [1, 5]


def test_line_inside_branch_is_flagged():
    F = make_field(5)
    g = parse_poly("u*v^5 + u^3*w^3", F, UVW)
    chk = is_split_tritangent(g, LineInP2(F, (1, 0, 0)))
    assert not chk and chk.contained_in_branch


def test_zero_sextic_rejected():
    F = make_field(5)
    with pytest.raises(ValueError):
        is_split_tritangent(MPoly.zero(F, 3), LineInP2(F, (1, 0, 0)))


def test_line_normalization():
    F = make_field(11)
    L = LineInP2(F, (0, 3, 6))
    assert L.coeffs == (0, 1, 2)
    assert L == LineInP2(F, (0, 5, 10))
    with pytest.raises(ValueError):
        LineInP2(F, (0, 0, 0))


def test_example_degree8_tritangent():
    g = catalog.deg8_sextic()
    F = g.ring
    assert is_split_tritangent(g, LineInP2(F, catalog.DEG8_TRITANGENT))


def test_scan_finds_example_tritangent():
    g = catalog.deg8_sextic()
    hits = tritangent_scan(g, max_ext=1)
    assert (1, LineInP2(g.ring, catalog.DEG8_TRITANGENT)) in hits
    for _, L in hits:
        prof = squarefree_profile(restrict_to_line(g, L.elems()))
        assert all(m % 2 == 0 for m in prof)


# --- tritangent_scan against the nested-loop oracle ------------------------------

def test_fermat_sextic_scan_matches_oracle():
    F = make_field(5)
    g = parse_poly("u^6 + v^6 + w^6", F, UVW)
    got = sorted(L.coeffs for _, L in tritangent_scan(g, max_ext=1))
    assert got == brute_tritangents(g, 5)


@pytest.mark.parametrize("seed", range(3))
def test_random_sextic_scan_matches_oracle(seed):
    rng = random.Random(seed)
    F = make_field(3)
    g = random_form(F, 3, 6, rng)
    got = sorted(L.coeffs for _, L in tritangent_scan(g, max_ext=1))
    assert got == brute_tritangents(g, 3)


def test_planted_tritangent_is_found():
    rng = random.Random(11)
    F = make_field(5)
    h = random_form(F, 3, 3, rng)
    l = parse_poly("u + 2*v + 3*w", F, UVW)
    g = h * h + l * random_form(F, 3, 5, rng)
    hits = tritangent_scan(g, max_ext=1)
    assert (1, LineInP2(F, (1, 2, 3))) in hits


def test_scan_extension_lines_are_new():
    rng = random.Random(5)
    F = make_field(3)
    g = random_form(F, 3, 6, rng)
    hits = tritangent_scan(g, max_ext=2)
    F9 = make_field(3, 2)
    for m, L in hits:
        assert minimal_degree(L.field, L.coeffs) == m
    # scanning the sextic over F_9 directly sees the same lines
    over9 = tritangent_scan(g.change_ring(F9), max_ext=1)
    assert len(over9) == len(hits)


def test_scan_budget_and_characteristic():
    F = make_field(5)
    g = parse_poly("u^6 + v^6 + w^6", F, UVW)
    with pytest.raises(BudgetExceeded):
        tritangent_scan(g, max_ext=2, budget=100)
    with pytest.raises(EvenCharacteristic):
        make_field(2)


def test_scan_report_format():
    F = make_field(5)
    hits = [(1, LineInP2(F, (1, 2, 3))), (2, LineInP2(F, (0, 1, 4)))]
    assert scan_report(hits) == "1 1 2 3\n2 0 1 4\n"
    assert scan_report([]) == ""


# --- lines on surfaces --------------------------------------------------------

def test_canonical_line_unique():
    F = make_field(7)
    L1 = canonical_line(F, [1, 2, 3, 4], [0, 1, 5, 6])
    P = [F.add(a, F.mul(3, b)) for a, b in zip([1, 2, 3, 4], [0, 1, 5, 6])]
    Q = [F.mul(2, x) for x in [0, 1, 5, 6]]
    assert canonical_line(F, P, Q) == L1
    assert L1.pivots == (0, 1)
    with pytest.raises(ValueError):
        canonical_line(F, [1, 2, 3, 4], [2, 4, 6, 1])


def test_quadric_lines_over_f3():
    F = make_field(3)
    q = parse_poly("x0*x3 - x1*x2", F, X4)
    hits = lines_on_surface_scan([q], 3, max_ext=1)
    # two rulings, each a P^1(F_3) of lines
    assert len(hits) == 2 * (3 + 1)
    assert {L for _, L in hits} == brute_lines([q], F)


def test_quadric_lines_over_f9():
    F = make_field(3)
    q = parse_poly("x0*x3 - x1*x2", F, X4)
    hits = lines_on_surface_scan([q], 3, max_ext=2)
    assert sum(1 for e, _ in hits if e == 1) == 8
    assert len(hits) == 2 * (9 + 1)
    F9 = make_field(3, 2)
    q9 = q.change_ring(F9)
    assert {L for e, L in hits if e == 2} < brute_lines([q9], F9)


@pytest.mark.parametrize("seed", range(3))
def test_cubic_surface_lines_match_oracle(seed):
    rng = random.Random(100 + seed)
    F = make_field(5)
    x0, x1, x2, x3 = MPoly.gens(F, 4)
    # plant V(x0, x1) so the scan has something to find
    f = x0 * random_form(F, 4, 2, rng) + x1 * random_form(F, 4, 2, rng)
    hits = lines_on_surface_scan([f], 3, max_ext=1)
    got = {L for _, L in hits}
    assert got == brute_lines([f], F)
    assert LineInPn(F, ((0, 0, 1, 0), (0, 0, 0, 1))) in got
    assert all(line_contained([f], L) for L in got)


def test_scan_invariant_under_coordinate_change():
    rng = random.Random(7)
    F = make_field(5)
    x0, x1, x2, x3 = MPoly.gens(F, 4)
    f = x0 * random_form(F, 4, 2, rng) + x1 * random_form(F, 4, 2, rng)
    T = _random_invertible(5, 4, rng)
    g = _linear_change(f, T)
    lines_f = {L for _, L in lines_on_surface_scan([f], 3, max_ext=1)}
    lines_g = {L for _, L in lines_on_surface_scan([g], 3, max_ext=1)}
    assert len(lines_f) == len(lines_g)
    moved = set()
    for L in lines_g:
        P, Q = ([sum(T[i][j] * r[j] for j in range(4)) % 5 for i in range(4)] for r in L.rows)
        moved.add(canonical_line(F, P, Q))
    assert moved == lines_f


def test_surface_points_p4_complete_intersection():
    rng = random.Random(9)
    F = make_field(3)
    f2 = random_form(F, 5, 2, rng)
    f3 = random_form(F, 5, 3, rng)
    pts = surface_points([f2, f3], F)
    brute = [P for P in enumerate_projective(F, 4) if eval_codes(f2, F, P) == 0 and eval_codes(f3, F, P) == 0]
    assert sorted(map(tuple, pts.tolist())) == sorted(map(tuple, brute))


def test_surface_points_budget():
    F = make_field(5)
    q = parse_poly("x0*x3 - x1*x2", F, X4)
    with pytest.raises(BudgetExceeded):
        surface_points([q], F, budget=10)


def test_scan_hit_implies_not_line_free():
    rng = random.Random(21)
    F = make_field(5)
    x = MPoly.gens(F, 5)
    f2 = x[0] * random_form(F, 5, 1, rng) + x[1] * random_form(F, 5, 1, rng) + x[2] * random_form(F, 5, 1, rng)
    f3 = x[0] * random_form(F, 5, 2, rng) + x[1] * random_form(F, 5, 2, rng) + x[2] * random_form(F, 5, 2, rng)
    hits = lines_on_surface_scan([f2, f3], 4, max_ext=1)
    assert hits
    assert not lines_free_over_closure([f2, f3], 4)


def test_example_pair_mod_47_contains_standard_line():
    F = make_field(catalog.EXAMPLE_PRIME)
    f2, f3 = (f.change_ring(F) for f in catalog.pair_q())
    L = LineInPn(F, ((0, 0, 0, 1, 0), (0, 0, 0, 0, 1)))
    assert line_contained([f2, f3], L)
    hits = lines_on_surface_scan([f2, f3], 4, max_ext=1)
    assert (1, L) in hits
    assert all(line_contained([f2, f3], H) for _, H in hits)


def test_scan_rejects_bad_input():
    F = make_field(5)
    q = parse_poly("x0*x3 - x1*x2", F, X4)
    with pytest.raises(ValueError):
        lines_on_surface_scan([q], 5)
    with pytest.raises(TypeError):
        lines_on_surface_scan([q.change_ring(make_field(5, 2))], 3)
