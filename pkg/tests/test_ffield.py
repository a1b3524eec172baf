import itertools

import pytest
from hypothesis import given, strategies as st

from k3picard.errors import DegreeOutOfRange, EvenCharacteristic, NotPrime
from k3picard.ffield import (
    FqElem,
    enumerate_projective,
    frobenius,
    make_field,
    quadratic_character,
    smallest_irreducible,
)


def _has_root(mod, p):
    return any(sum(c * x ** i for i, c in enumerate(mod)) % p == 0 for x in range(p))


def test_prime_field_order():
    F = make_field(5, 1)
    assert F.q == 5 and F.n == 1


def test_quadratic_modulus_is_smallest_irreducible():
    F = make_field(3, 2)
    monic = [(a, b, 1) for a in range(3) for b in range(3)]
    irreducible = sorted(m for m in monic if not _has_root(m, 3))
    assert tuple(F.modulus) == irreducible[0]


def test_make_field_idempotent():
    assert make_field(7, 3).modulus == make_field(7, 3).modulus


@pytest.mark.parametrize("p,n,exc", [(4, 1, NotPrime), (2, 1, EvenCharacteristic), (3, 25, DegreeOutOfRange)])
def test_make_field_errors(p, n, exc):
    with pytest.raises(exc):
        make_field(p, n)


@pytest.mark.parametrize("p,a,chi", [(5, 0, 0), (5, 4, 1), (3, 2, -1), (7, 3, -1), (7, 2, 1)])
def test_quadratic_character_examples(p, a, chi):
    F = make_field(p)
    assert quadratic_character(F.elem(a)) == chi


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (3, 5)])
def test_character_is_multiplicative_and_balanced(p, n):
    F = make_field(p, n)
    els = [F.elem(FqElem(F, c)) for c in range(F.q)]
    chi = [quadratic_character(a) for a in els]
    assert sum(chi) == 0
    sample = els if F.q <= 27 else els[:40]
    for a, b in itertools.product(sample, repeat=2):
        assert quadratic_character(a * b) == quadratic_character(a) * quadratic_character(b)


@pytest.mark.parametrize("p,k,count", [(3, 1, 4), (3, 2, 13), (5, 3, 156)])
def test_enumerate_projective_counts(p, k, count):
    pts = list(enumerate_projective(make_field(p), k))
    assert len(pts) == count == len(set(pts))
    for pt in pts:
        assert pt[next(i for i, x in enumerate(pt) if x)] == 1


def test_enumerate_projective_f25():
    assert len(list(enumerate_projective(make_field(5, 2), 2))) == 651


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (5, 2), (3, 4)])
def test_frobenius_is_field_automorphism(p, n):
    F = make_field(p, n)
    els = [FqElem(F, c) for c in range(F.q)]
    images = {frobenius(a).code for a in els}
    assert len(images) == F.q
    fixed = [a for a in els if frobenius(a) == a]
    assert len(fixed) == p
    for a in els[:30]:
        b = a
        for _ in range(n):
            b = frobenius(b)
        assert b == a
        for c in els[:30]:
            assert frobenius(a + c) == frobenius(a) + frobenius(c)
            assert frobenius(a * c) == frobenius(a) * frobenius(c)


def test_frobenius_f9_generator():
    F = make_field(3, 2)
    g = FqElem(F, 3)  # the class of x
    assert frobenius(g) == g ** 3
    assert frobenius(frobenius(g)) == g
    assert frobenius(FqElem(F, 0)) == FqElem(F, 0)


def test_smallest_irreducible_degree_three():
    mod = smallest_irreducible(5, 3)
    assert mod[-1] == 1 and not _has_root(mod, 5)


@given(st.integers(1, 120), st.integers(1, 120))
def test_extension_arithmetic_inverse(a, b):
    F = make_field(11, 2)
    x, y = FqElem(F, a), FqElem(F, b)
    assert (x * y) / y == x
    assert x - x == FqElem(F, 0)
