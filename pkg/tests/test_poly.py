import random

import pytest
from hypothesis import given, strategies as st

from k3picard.errors import DimensionMismatch, IndexOutOfRange, NonSquare, NotDivisible, OutOfRange, ZeroForm, ZeroLine
from k3picard.ffield import make_field
from k3picard.poly import (
    QQ,
    ZZ,
    MPoly,
    PolyMatrix,
    adjugate,
    bordered_det_identity_check,
    cyclotomic,
    det,
    divide_exact,
    euler_phi,
    parse_poly,
    partial_derivative,
    restrict_to_line,
    squarefree_profile,
    univariate,
)

from _util import random_form, random_poly

UVW = ("u", "v", "w")
ST = ("s", "t")


def P(text, ring=QQ, names=UVW):
    return parse_poly(text, ring, names)


def const(ring, nv, c):
    return MPoly.const(ring, nv, c)


def random_matrix(ring, n, nvars, rng, deg=1):
    return PolyMatrix([[random_form(ring, nvars, deg, rng, density=0.7) for _ in range(n)] for _ in range(n)])


def test_det_two_by_two():
    a, m = MPoly.gens(QQ, 2)
    assert det(PolyMatrix([[const(QQ, 2, 0), a], [a, m]])) == -(a * a)


@pytest.mark.parametrize("n", [1, 2, 5, 7])
def test_det_identity(n):
    one, zero = const(ZZ, 2, 1), const(ZZ, 2, 0)
    I = PolyMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])
    assert det(I) == one


def test_det_non_square():
    x = MPoly.var(QQ, 1, 0)
    with pytest.raises(NonSquare):
        det(PolyMatrix([[x, x]]))


def test_det_block_triangular_multiplicative():
    rng = random.Random(3)
    F = make_field(7)
    A = random_matrix(F, 2, 3, rng)
    B = random_matrix(F, 3, 3, rng)
    C = random_matrix(F, 3, 3, rng)
    z = const(F, 3, 0)
    rows = [A.rows[i] + [z] * 3 for i in range(2)] + [C.rows[i][:2] + B.rows[i] for i in range(3)]
    assert det(PolyMatrix(rows)) == det(A) * det(B)


def test_adjugate_small():
    a, b, c, d = MPoly.gens(QQ, 4)
    adj = adjugate(PolyMatrix([[a, b], [c, d]]))
    assert adj.rows == [[d, -b], [-c, a]]
    assert adjugate(PolyMatrix([[a]])).rows == [[const(QQ, 4, 1)]]


@pytest.mark.parametrize("seed", range(5))
def test_adjugate_identity_f7(seed):
    rng = random.Random(seed)
    F = make_field(7)
    M = random_matrix(F, 3, 3, rng)
    A = adjugate(M)
    D = det(M)
    for i in range(3):
        for j in range(3):
            s = sum((M.rows[i][k] * A.rows[k][j] for k in range(3)), const(F, 3, 0))
            assert s == (D if i == j else const(F, 3, 0))


def test_bordered_identity_examples():
    a, m1 = MPoly.gens(QQ, 2)
    assert bordered_det_identity_check(PolyMatrix([[m1]]), [a])
    rng = random.Random(11)
    F5 = make_field(5)
    M = random_matrix(F5, 3, 3, rng)
    v = [random_form(F5, 3, 1, rng) for _ in range(3)]
    assert bordered_det_identity_check(M, v)
    M = random_matrix(ZZ, 4, 2, rng)
    v = [random_form(ZZ, 2, 1, rng) for _ in range(4)]
    assert bordered_det_identity_check(M, v)


def test_bordered_dimension_mismatch():
    a = MPoly.var(QQ, 1, 0)
    with pytest.raises(DimensionMismatch):
        bordered_det_identity_check(PolyMatrix([[a]]), [a, a])


def test_restrict_to_line_examples():
    assert restrict_to_line(P("u*v*w"), [1, 0, 0]).is_zero()
    assert restrict_to_line(P("u^2 + v^2"), [0, 0, 1]) == P("s^2 + t^2", QQ, ST)
    assert restrict_to_line(P("u^2 + 2*u*v + 2*u*w + v^2 + 2*v*w + w^2"), [1, 1, 1]).is_zero()
    with pytest.raises(ZeroLine):
        restrict_to_line(P("u"), [0, 0, 0])


@pytest.mark.parametrize("seed", range(10))
def test_restriction_stays_homogeneous(seed):
    rng = random.Random(seed)
    F = make_field(11)
    f = random_form(F, 3, 4, rng)
    line = [rng.randrange(11) for _ in range(3)]
    if not any(line):
        line[0] = 1
    r = restrict_to_line(f, line)
    assert r.is_zero() or (r.is_homogeneous() and r.degree() == 4)


def test_partial_derivative_examples():
    assert partial_derivative(P("u^3"), 0) == P("3*u^2")
    assert partial_derivative(P("5", QQ), 0).is_zero()
    with pytest.raises(IndexOutOfRange):
        partial_derivative(P("u"), 3)


@pytest.mark.parametrize("seed", range(8))
def test_euler_identity(seed):
    rng = random.Random(seed)
    f = random_form(QQ, 4, 3, rng, density=0.6)
    xs = MPoly.gens(QQ, 4)
    lhs = sum((xs[i] * partial_derivative(f, i) for i in range(4)), const(QQ, 4, 0))
    assert lhs == f.scale(3)


def test_squarefree_profile_examples():
    F5, F7 = make_field(5), make_field(7)
    assert squarefree_profile(P("s^2*t^4", F5, ST)) == [2, 4]
    assert squarefree_profile(P("s^6 + t^6", F5, ST)) == [1] * 6
    assert squarefree_profile(P("s^6 - 2*s^3*t^3 + t^6", F7, ST)) == [2, 2, 2]
    with pytest.raises(ZeroForm):
        squarefree_profile(MPoly.zero(F5, 2))


def test_squarefree_profile_inseparable_case():
    # s^5 - t^5 = (s - t)^5 over F_5: derivative vanishes identically
    F5 = make_field(5)
    assert squarefree_profile(P("s^5 + 4*t^5", F5, ST)) == [5]
    assert squarefree_profile(P("s^10 + 3*s^5*t^5 + 4*t^10", F5, ST)) in ([5, 5], [10])


@pytest.mark.parametrize("seed", range(10))
def test_profile_invariant_under_substitution(seed):
    rng = random.Random(seed)
    F = make_field(7)
    s, t = MPoly.gens(F, 2)
    lin = [s.scale(rng.randrange(1, 7)) + t.scale(rng.randrange(7)) for _ in range(3)]
    b = lin[0] * lin[0] * lin[1] * lin[2] * lin[2] * lin[2]
    a, c, d, e = 1, 2, 3, 4  # determinant -2, invertible mod 7
    sub = b.subs([s.scale(a) + t.scale(c), s.scale(d) + t.scale(e)])
    prof = squarefree_profile(b)
    assert sum(prof) == 6
    assert squarefree_profile(sub) == prof


def test_cyclotomic_examples():
    assert cyclotomic(1) == univariate([-1, 1])
    assert cyclotomic(4) == univariate([1, 0, 1])
    assert cyclotomic(66).degree() == euler_phi(66) == 20
    with pytest.raises(OutOfRange):
        cyclotomic(67)


@pytest.mark.parametrize("n", range(1, 67))
def test_cyclotomic_product_identity(n):
    prod = univariate([1])
    for d in range(1, n + 1):
        if n % d == 0:
            prod = prod * cyclotomic(d)
    assert prod == univariate([-1] + [0] * (n - 1) + [1])


def test_divide_exact_examples():
    t1 = univariate([-1, 1], QQ)
    assert divide_exact(univariate([-1, 0, 1], QQ), t1) == univariate([1, 1], QQ)
    with pytest.raises(NotDivisible):
        divide_exact(univariate([1, 0, 1], QQ), t1)
    a = univariate([-5, 1], QQ) ** 2 * univariate([25, 0, 1], QQ) ** 10
    q = divide_exact(a, univariate([25, 0, 1], QQ))
    assert q == univariate([-5, 1], QQ) ** 2 * univariate([25, 0, 1], QQ) ** 9


@given(st.integers(0, 10 ** 6))
def test_text_round_trip(seed):
    rng = random.Random(seed)
    for ring in (QQ, make_field(47), make_field(3, 2)):
        f = random_poly(ring, 5, 3, rng, nterms=5)
        names = ("x0", "x1", "x2", "x3", "x4")
        text = f.to_str(names)
        g = parse_poly(text, ring, names)
        assert g == f and g.to_str(names) == text


def test_rational_coefficients_lowest_terms():
    f = P("2/4*u - 3/9*v")
    assert f.to_str(UVW) == "1/2*u - 1/3*v"


@given(st.integers(0, 10 ** 6))
def test_ring_axioms_random(seed):
    rng = random.Random(seed)
    F = make_field(5)
    a, b, c = (random_poly(F, 3, 2, rng) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == MPoly.zero(F, 3)


@given(st.integers(0, 10 ** 6))
def test_subs_matches_pointwise_evaluation_over_extensions(seed):
    from k3picard.ffield import FqElem

    rng = random.Random(seed)
    for F in (make_field(3, 2), make_field(5, 2)):
        f = random_poly(F, 3, 3, rng, nterms=5)
        images = [random_poly(F, 2, 2, rng, nterms=3) for _ in range(3)]
        g = f.subs(images)
        pt = [FqElem(F, rng.randrange(F.q)) for _ in range(2)]
        inner = [FqElem(F, im.evaluate(pt)) for im in images]
        assert g.evaluate(pt) == f.evaluate(inner)


def test_restriction_over_extension_matches_parametrization():
    from k3picard.ffield import FqElem

    F = make_field(3, 2)
    rng = random.Random(4)
    f = random_form(F, 3, 4, rng)
    line = [FqElem(F, rng.randrange(1, 9)) for _ in range(3)]
    b = restrict_to_line(f, line)
    for s in range(9):
        for t in range(9):
            S, T = FqElem(F, s), FqElem(F, t)
            u = -(line[1] * S + line[2] * T) / line[0]
            assert FqElem(F, b.evaluate([S, T])) == FqElem(F, f.evaluate([u, S, T]))
