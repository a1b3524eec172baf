"""Shared helpers for the test suite: seeded random forms and brute-force oracles."""

import itertools
import random

import numpy as np

from k3picard.certify import monomials
from k3picard.ffield import FqElem, character_of_code, enumerate_projective, make_field
from k3picard.poly import QQ, ZZ, MPoly
from k3picard.zeta import weil_from_eigen_multiset


def random_form(ring, nvars, deg, rng: random.Random, density=1.0, lo=-3, hi=3):
    terms = {}
    for e in monomials(nvars, deg):
        if rng.random() > density:
            continue
        if hasattr(ring, "p"):
            terms[e] = rng.randrange(ring.q)
        else:
            terms[e] = rng.randint(lo, hi)
    if hasattr(ring, "p"):
        # codes, not integers: F_{p^n} coefficients outside the prime field
        return MPoly.from_codes(ring, nvars, terms)
    return MPoly(ring, nvars, terms)


def random_poly(ring, nvars, maxdeg, rng: random.Random, nterms=4):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, maxdeg) for _ in range(nvars))
        terms[e] = rng.randrange(ring.q) if hasattr(ring, "p") else rng.randint(-5, 5)
    if hasattr(ring, "p"):
        return MPoly.from_codes(ring, nvars, terms)
    return MPoly(ring, nvars, terms)


def eval_codes(f, F, pt):
    """Evaluate f at a point given by element codes."""
    r = f.evaluate([FqElem(F, c) for c in pt])
    return r.code if isinstance(r, FqElem) else r


def _tables(F):
    """Addition and multiplication tables of F built from scalar field ops."""
    q = F.q
    add = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    return add, mul


def _eval_affine(g, F, add, mul, coords):
    """Evaluate g at every affine point; coords are code arrays."""
    q = F.q
    powers = []
    for x in coords:
        pw = [np.ones_like(x)]
        for _ in range(g.degree()):
            pw.append(mul[pw[-1], x])
        powers.append(pw)
    acc = np.zeros_like(coords[0])
    for e, c in g.terms.items():
        term = np.full_like(coords[0], c)
        for pw, k in zip(powers, e):
            term = mul[term, pw[k]]
        acc = add[acc, term]
    assert acc.max(initial=0) < q
    return acc


def weighted_double_cover_count(g6, F, twist=1):
    """Brute-force #{(u:v:w:s)} on s^2 = twist*g6 in P(1,1,1,3) over F.

    Loops over affine representatives (u,v,w) != 0 and all s, then divides by
    the q - 1 scalings (u,v,w,s) -> (c u, c v, c w, c^3 s).
    """
    q = F.q
    g = g6.change_ring(F) if g6.ring != F else g6
    lam = F.coerce(twist)
    add, mul = _tables(F)
    roots = np.zeros(q, dtype=np.int64)  # number of s with s^2 = value
    for s in range(q):
        roots[mul[s, s]] += 1
    grid = np.meshgrid(*([np.arange(q, dtype=np.int64)] * 3), indexing="ij")
    coords = [x.ravel() for x in grid]
    vals = mul[lam, _eval_affine(g, F, add, mul, coords)]
    total = int(roots[vals].sum()) - int(roots[0])  # drop the origin (u,v,w) = 0
    assert total % (q - 1) == 0
    return total // (q - 1)


def brute_genus2_count(f_coeffs, p, n):
    """Points on the smooth projective model of y^2 = f(x) over F_{p^n} by enumeration."""
    F = make_field(p, n)
    fc = [F.coerce(c) for c in f_coeffs]
    sq = {}
    for y in range(F.q):
        v = F.mul(y, y)
        sq[v] = sq.get(v, 0) + 1
    total = 0
    for x in range(F.q):
        acc = 0
        for c in reversed(fc):
            acc = F.add(F.mul(acc, x), c)
        total += sq.get(acc, 0)
    d = len(f_coeffs) - 1
    if d % 2:
        total += 1
    else:
        total += 1 + character_of_code(F, fc[-1])
    return total


def projective_points(F, k):
    return list(enumerate_projective(F, k))




def random_unit_weil(p, rng, known):
    """Random K3-type Weil polynomial of degree 22 containing the known factor."""
    factors = [list(known)]
    deg = len(known) - 1
    pool = [[-p, 1], [p, 1], [p * p, 0, 1], [p * p, p, 1], [p * p, -p, 1], [p ** 4, 0, 0, 0, 1]]
    while deg < 22:
        room = 22 - deg
        choice = rng.choice([f for f in pool if len(f) - 1 <= room] + [None])
        if choice is None and room >= 2:
            # p^2 * (unitary quadratic with real root pair 2cos): t^2 - a t + p^2, |a| < 2p
            a = rng.randint(-2 * p + 1, 2 * p - 1)
            choice = [p * p, -a, 1]
        elif choice is None:
            choice = [-p, 1]
        factors.append(choice)
        deg += len(choice) - 1
    return weil_from_eigen_multiset(p, factors)


__all__ = [
    "QQ",
    "ZZ",
    "random_form",
    "random_poly",
    "eval_codes",
    "weighted_double_cover_count",
    "brute_genus2_count",
    "projective_points",
    "random_unit_weil",
]
