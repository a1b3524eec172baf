import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from k3picard.errors import BudgetExceeded, EvenCharacteristic, InsufficientCounts, NoCandidate, NotSquarefree, NotWeil
from k3picard.ffield import FqElem, make_field
from k3picard.geommodels import Degree6Pair, DoubleCoverModel
from k3picard.poly import QQ, MPoly, parse_poly, univariate
from k3picard.zeta import (
    PointCounts,
    WeilPolynomial,
    append_count,
    character_sum_p2,
    count_complete_intersection_p4,
    count_double_cover,
    count_genus2,
    count_series,
    counts_from_weil,
    cyclotomic_rank_bound,
    genus2_count_from_lpoly,
    hyperelliptic_lpoly,
    load_counts_cache,
    reconstruct_weil,
    smallest_nonresidue,
    traces_from_counts,
    validate_weil,
    weil_from_eigen_multiset,
)

from _util import brute_genus2_count, random_form, random_unit_weil, weighted_double_cover_count

UVW = ("u", "v", "w")
X5 = ("x0", "x1", "x2", "x3", "x4")


def asc(poly_text, ring=QQ):
    f = parse_poly(poly_text, ring, ("t",))
    return [int(f.coeff((i,))) for i in range(f.degree() + 1)]


def lin_power(p, k, sign=-1):
    return weil_from_eigen_multiset(p, [[sign * p, 1]] * k)


# --- counting ---------------------------------------------------------------------


def test_u6_over_f3():
    F = make_field(3)
    g = parse_poly("u^6", F, UVW)
    assert count_double_cover(DoubleCoverModel(g)) == 22
    assert count_double_cover(DoubleCoverModel(g, twist=2)) == 4
    assert count_double_cover(DoubleCoverModel(parse_poly("2*u^6", F, UVW))) == 4


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)])
def test_twist_square_invariance(p, n):
    rng = random.Random(p * 10 + n)
    F = make_field(p)
    g = random_form(F, 3, 6, rng)
    for lam in range(1, p):
        base = count_double_cover(DoubleCoverModel(g, twist=lam), n)
        for sigma in range(1, p):
            assert count_double_cover(DoubleCoverModel(g, twist=lam * sigma * sigma), n) == base


@pytest.mark.parametrize("p,n,seed", [(3, 1, 0), (3, 2, 1), (5, 1, 2), (5, 2, 3), (7, 1, 4), (7, 2, 5)])
def test_counts_match_weighted_enumeration(p, n, seed):
    rng = random.Random(seed)
    F = make_field(p)
    g = random_form(F, 3, 6, rng)
    E = make_field(p, n)
    for twist in (1, smallest_nonresidue(p)):
        assert count_double_cover(DoubleCoverModel(g, twist=twist), n) == weighted_double_cover_count(g, E, twist)


def test_character_sum_over_extension_coefficients():
    # a sextic with genuinely F_9 coefficients, checked against enumeration
    F = make_field(3, 2)
    rng = random.Random(7)
    g = random_form(F, 3, 6, rng)
    s = character_sum_p2(g, F)
    assert F.q ** 2 + F.q + 1 + s == weighted_double_cover_count(g, F)


@given(st.integers(0, 2 ** 32), st.integers(1, 5))
def test_partition_independence(seed, parts):
    rng = random.Random(seed)
    F = make_field(5)
    g = random_form(F, 3, 6, rng)
    m = DoubleCoverModel(g)
    assert count_double_cover(m, 2, partitions=parts) == count_double_cover(m, 2)


def test_count_budget():
    F = make_field(47)
    g = random_form(F, 3, 6, random.Random(1))
    with pytest.raises(BudgetExceeded):
        count_double_cover(DoubleCoverModel(g), 3, budget=10 ** 6)


def test_even_characteristic_rejected():
    with pytest.raises(EvenCharacteristic):
        hyperelliptic_lpoly([1, 0, 0, 0, 0, 1], 2)


def test_complete_intersection_examples():
    F = make_field(3)
    P = lambda s: parse_poly(s, F, X5)  # noqa: E731
    assert count_complete_intersection_p4(Degree6Pair(P("x0^2"), P("x1^3")), 1) == 13
    # x0 = 0 cut twice: the point set is a P^3
    assert count_complete_intersection_p4(Degree6Pair(P("x0^2"), P("x0^3")), 1) == 40


def test_traces_examples():
    p = 5
    pc = PointCounts(p, {1: 1 + 22 * p + p * p})
    assert traces_from_counts(pc) == [22 * p]
    assert traces_from_counts(PointCounts(p, {1: 1 + p * p})) == [0]
    allp = lin_power(p, 22)
    pc = counts_from_weil(allp, p, 4)
    assert traces_from_counts(pc) == [22 * p ** n for n in range(1, 5)]


# --- reconstruction ----------------------------------------------------------------


def test_reconstruct_fully_known():
    p = 3
    full = lin_power(p, 22)
    (cand,) = reconstruct_weil(counts_from_weil(full, p, 1), known_factor=full)
    assert cand.coeffs == full


def test_reconstruct_phi8_structure():
    p = 3
    # (t - p)^2 (t + p)^2 (t^4 + p^4)^4 (t^2 + p^2)
    full = weil_from_eigen_multiset(
        p, [[-p, 1]] * 2 + [[p, 1]] * 2 + [[p ** 4, 0, 0, 0, 1]] * 4 + [[p * p, 0, 1]]
    )
    assert len(full) == 23
    known = weil_from_eigen_multiset(p, [[-p, 1]] * 2)
    cands = reconstruct_weil(counts_from_weil(full, p, 11), known_factor=known)
    assert [c.coeffs for c in cands] == [full]
    rep = cyclotomic_rank_bound(cands[0])
    assert rep.rank_bound == 22


def test_reconstruct_needs_enough_counts():
    p = 3
    full = lin_power(p, 22)
    known = lin_power(p, 2)
    with pytest.raises(InsufficientCounts) as exc:
        reconstruct_weil(counts_from_weil(full, p, 9), known_factor=known)
    assert (exc.value.required, exc.value.available) == (10, 9)


def test_reconstruct_rejects_inconsistent_counts():
    p = 3
    pc = counts_from_weil(lin_power(p, 22), p, 11)
    pc.counts[11] += 2
    with pytest.raises(NoCandidate):
        reconstruct_weil(pc, known_factor=lin_power(p, 2))


@pytest.mark.parametrize("seed", range(10))
def test_reconstruct_random_round_trip(seed):
    rng = random.Random(seed)
    p = rng.choice([3, 5, 7])
    known = lin_power(p, 2)
    full = random_unit_weil(p, rng, known)
    cands = reconstruct_weil(counts_from_weil(full, p, 11), known_factor=known)
    assert full in [c.coeffs for c in cands]
    for c in cands:
        assert validate_weil(c).ok


# --- validation and rank ---------------------------------------------------------------


def test_validate_rejects_bad_polynomial():
    p = 5
    bad = weil_from_eigen_multiset(p, [[-p, 1]] * 21 + [[-2 * p, 1]])
    rep = validate_weil(WeilPolynomial(p, bad))
    assert not rep.functional_equation
    assert rep.unit_circle is False
    assert not rep.ok


def test_validate_coefficient_bounds_hold_for_extremes():
    p = 7
    full = lin_power(p, 22)
    rep = validate_weil(WeilPolynomial(p, full))
    assert rep.ok and rep.eps == 1
    for i, c in enumerate(reversed(full)):
        assert abs(c) <= comb(22, i) * p ** i


def test_rank_examples():
    p = 5
    assert cyclotomic_rank_bound(WeilPolynomial(p, lin_power(p, 22))).rank_bound == 22
    P = weil_from_eigen_multiset(p, [[-5, 1]] * 2 + [[25, 0, 1]] * 10)
    rep = cyclotomic_rank_bound(WeilPolynomial(p, P))
    assert dict(rep.multiplicities) == {1: 2, 4: 10}
    assert rep.rank_bound == 22 and rep.label == "rank (Tate)"


def test_rank_not_weil():
    p = 5
    bad = weil_from_eigen_multiset(p, [[-p, 1]] * 21 + [[-2 * p, 1]])
    with pytest.raises(NotWeil):
        cyclotomic_rank_bound(WeilPolynomial(p, bad))


@pytest.mark.parametrize("seed", range(5))
def test_rank_invariant_under_mirror(seed):
    rng = random.Random(seed)
    p = 3
    full = random_unit_weil(p, rng, lin_power(p, 2))
    # mirror: t^22 P(p^2 / t) / p^22, which equals P for eps = +1 and -P otherwise
    d = len(full) - 1
    mirror = [Fraction(full[d - i]) * Fraction(p) ** (d - 2 * i) for i in range(d + 1)]
    assert all(m.denominator == 1 for m in mirror)
    mirror = [int(m) for m in mirror]
    if mirror[-1] != 1:
        mirror = [-c for c in mirror]
    a = cyclotomic_rank_bound(WeilPolynomial(p, full))
    b = cyclotomic_rank_bound(WeilPolynomial(p, mirror))
    assert a.rank_bound == b.rank_bound


# --- genus 2 oracle ------------------------------------------------------------------


@pytest.mark.parametrize(
    "f,p",
    [([1, 0, 0, 0, 0, 1], 7), ([0, 1, 0, 0, 0, 1], 5), ([1, 0, 0, 0, 0, 0, 1], 7)],
)
def test_genus2_examples(f, p):
    L = hyperelliptic_lpoly(f, p)
    assert L[0] == 1 and L[4] == p * p and L[3] == p * L[1]
    for n in range(1, 5):
        assert genus2_count_from_lpoly(L, p, n) == brute_genus2_count(f, p, n)
        assert count_genus2(f, p, n) == brute_genus2_count(f, p, n)


def test_genus2_not_squarefree():
    with pytest.raises(NotSquarefree):
        hyperelliptic_lpoly([0, 0, 1, 0, 0, 1], 7)  # x^2 (x^3 + 1)


# --- counts cache -----------------------------------------------------------------------


def test_counts_cache_resume(tmp_path):
    F = make_field(3)
    g = random_form(F, 3, 6, random.Random(3))
    model = DoubleCoverModel(g)
    cache = str(tmp_path / "counts.txt")
    first = count_series(model, 2, cache=cache)
    lines = open(cache).read().splitlines()
    assert lines == ["3 1 %d" % first.counts[1], "3 2 %d" % first.counts[2]]
    # an unrelated prime in the same file is ignored; resumed runs only append
    append_count(cache, 5, 1, 99)
    second = count_series(model, 3, cache=cache)
    assert second.counts[1] == first.counts[1] and second.counts[2] == first.counts[2]
    assert second.counts[3] == count_double_cover(model, 3)
    assert len(open(cache).read().splitlines()) == 4
    assert load_counts_cache(cache, 3).counts == second.counts


def test_count_series_budget_checked_before_work(tmp_path):
    F = make_field(47)
    model = DoubleCoverModel(random_form(F, 3, 6, random.Random(2)))
    cache = str(tmp_path / "c.txt")
    with pytest.raises(BudgetExceeded):
        count_series(model, 4, cache=cache, budget=47 ** 4)
    assert not (tmp_path / "c.txt").exists()
