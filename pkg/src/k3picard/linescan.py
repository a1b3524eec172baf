"""Exhaustive finite-field scans for split tritangents and lines on surfaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, EvenCharacteristic
from .ffield import FieldDescriptor, FqElem, frobenius_code, make_field, projective_count
from .poly import MPoly, restrict_to_line, squarefree_profile
from .zeta import VecField, _eval_form

DEFAULT_LINE_BUDGET = 1 << 20
DEFAULT_POINT_BUDGET = 1 << 36


# --- lines in the plane ---------------------------------------------------------

@dataclass(frozen=True)
class LineInP2:
    """V(a u + b v + c w) with the first nonzero coefficient equal to 1 (codes in F_q)."""

    field: FieldDescriptor
    coeffs: tuple

    def __post_init__(self):
        F = self.field
        c = tuple(F.coerce(x) if not isinstance(x, int) else x for x in self.coeffs)
        piv = next((i for i, x in enumerate(c) if x), None)
        if piv is None:
            raise ValueError("zero line")
        if c[piv] != F.one:
            inv = F.inv(c[piv])
            c = tuple(F.mul(x, inv) for x in c)
        object.__setattr__(self, "coeffs", c)

    def elems(self) -> list[FqElem]:
        return [FqElem(self.field, x) for x in self.coeffs]

    def __str__(self):
        return "V(%s)" % " + ".join(
            "%s*%s" % (self.field.fmt(c), n) if c != self.field.one else n
            for c, n in zip(self.coeffs, "uvw") if c
        )


@dataclass(frozen=True)
class TritangentCheck:
    """Outcome of a split-tritangent test; truthy iff the line is a split tritangent."""

    split: bool
    profile: tuple = ()
    contained_in_branch: bool = False

    def __bool__(self):
        return self.split

    def __eq__(self, other):
        if isinstance(other, bool):
            return self.split is other
        return NotImplemented

    __hash__ = object.__hash__


def is_split_tritangent(g6: MPoly, line) -> TritangentCheck:
    """All root multiplicities of g6|L even, with g6|L not identically zero."""
    if g6.is_zero():
        raise ValueError("zero sextic")
    coeffs = line.elems() if isinstance(line, LineInP2) else list(line)
    r = restrict_to_line(g6, coeffs)
    if r.is_zero():
        return TritangentCheck(False, (), True)
    prof = tuple(squarefree_profile(r))
    return TritangentCheck(all(m % 2 == 0 for m in prof), prof)


def _in_subfield(F: FieldDescriptor, code: int, d: int) -> bool:
    return frobenius_code(F, code, d) == code


def minimal_degree(F: FieldDescriptor, codes: Sequence[int]) -> int:
    """Smallest d | n such that every code lies in F_{p^d}."""
    for d in range(1, F.n + 1):
        if F.n % d == 0 and all(_in_subfield(F, c, d) for c in codes):
            return d
    return F.n


def _plane_lines(F: FieldDescriptor):
    q = F.q
    for b in range(q):
        for c in range(q):
            yield (1, b, c)
    for c in range(q):
        yield (0, 1, c)
    yield (0, 0, 1)


def tritangent_scan(g6: MPoly, max_ext: int = 2, budget: int = DEFAULT_LINE_BUDGET) -> list[tuple[int, LineInP2]]:
    """Split tritangents over F_{p^m}, m <= max_ext, each listed once at its minimal field."""
    base = g6.ring
    if not isinstance(base, FieldDescriptor):
        raise TypeError("tritangent_scan needs a sextic over a finite field")
    if base.p == 2:
        raise EvenCharacteristic("characteristic 2")
    total = sum(projective_count(base.p ** m, 2) for m in range(1, max_ext + 1))
    if total > budget:
        raise BudgetExceeded("%d lines to scan, budget %d" % (total, budget))
    hits = []
    for m in range(1, max_ext + 1):
        F = make_field(base.p, m) if base.n == 1 else base
        g = g6.change_ring(F) if F != base else g6
        for c in _plane_lines(F):
            if m > 1 and minimal_degree(F, c) < m:
                continue
            L = LineInP2(F, c)
            if is_split_tritangent(g, L):
                hits.append((m, L))
        if base.n != 1:
            break
    hits.sort(key=lambda h: (h[0], h[1].coeffs))
    return hits


# --- lines in P^m ---------------------------------------------------------------

@dataclass(frozen=True)
class LineInPn:
    """Reduced row-echelon 2 x (m+1) matrix over F_q (codes)."""

    field: FieldDescriptor
    rows: tuple

    @property
    def pivots(self) -> tuple[int, int]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.rows)

    def __str__(self):
        fmt = self.field.fmt
        return "[%s; %s]" % tuple(" ".join(fmt(x) for x in r) for r in self.rows)


def canonical_line(F: FieldDescriptor, P: Sequence[int], Q: Sequence[int]) -> LineInPn:
    """Row-reduce the span of two distinct points."""
    rows = [list(P), list(Q)]
    m = len(P)
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, 2) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(x, inv) for x in rows[r]]
        for i in range(2):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == 2:
            break
    if r < 2:
        raise ValueError("points are equal")
    return LineInPn(F, (tuple(rows[0]), tuple(rows[1])))


def line_contained(f_list: Sequence[MPoly], line: LineInPn) -> bool:
    """Exact check that every form restricts to zero on the line."""
    F = line.field
    s, t = MPoly.gens(F, 2)
    images = [MPoly.from_codes(F, 2, {(1, 0): a, (0, 1): b}) for a, b in zip(*line.rows)]
    return all(f.change_ring(F).subs(images).is_zero() if f.ring != F else f.subs(images).is_zero() for f in f_list)


def surface_points(f_list: Sequence[MPoly], F: FieldDescriptor, budget: int = DEFAULT_POINT_BUDGET) -> np.ndarray:
    """All points of V(f_list) in P^m(F_q) as rows of codes, first nonzero coordinate 1."""
    k = f_list[0].nvars - 1
    q = F.q
    if projective_count(q, k) > budget:
        raise BudgetExceeded("P^%d(F_%d) too large for budget %d" % (k, q, budget))
    forms = [f.change_ring(F) if f.ring != F else f for f in f_list]
    vf = VecField(F)
    codes = np.arange(q, dtype=np.int64)
    enc = vf.encode(codes)
    found = []
    for lead in range(k + 1):
        nfree = k - lead
        prefix_codes = [0] * lead + [1]
        prefix = [vf.encode(np.array([c]))[0] for c in prefix_codes]
        if nfree == 0:
            if all(vf.is_zero(np.asarray(_eval_form(vf, f, prefix))) for f in forms):
                found.append(np.array([prefix_codes]))
            continue
        outer = nfree - 3 if nfree > 3 else 0
        inner = nfree - outer
        grid = [g.ravel() for g in np.meshgrid(*([codes] * inner), indexing="ij")]
        egrid = [enc[g] for g in grid]
        for head in (np.ndindex(*([q] * outer)) if outer else [()]):
            coords = prefix + [enc[h] for h in head] + egrid
            mask = np.ones(grid[0].shape, dtype=bool)
            for f in forms:
                mask &= np.broadcast_to(vf.is_zero(np.asarray(_eval_form(vf, f, coords))), mask.shape)
            if mask.any():
                cnt = int(mask.sum())
                block = np.empty((cnt, k + 1), dtype=np.int64)
                block[:, : lead + 1] = prefix_codes
                for i, h in enumerate(head):
                    block[:, lead + 1 + i] = h
                for i, g in enumerate(grid):
                    block[:, lead + 1 + outer + i] = g[mask]
                found.append(block)
    if not found:
        return np.empty((0, k + 1), dtype=np.int64)
    return np.concatenate(found)


def _lines_over(f_list, F: FieldDescriptor, budget: int) -> set:
    pts = surface_points(f_list, F, budget)
    npts = len(pts)
    if npts * npts > budget:
        raise BudgetExceeded("%d surface points: pair scan too large for budget %d" % (npts, budget))
    forms = [f.change_ring(F) if f.ring != F else f for f in f_list]
    vf = VecField(F)
    enc = vf.encode(pts)
    others_t = [vf.encode(np.array([c]))[0] for c in range(1, F.q)]
    lines = set()
    for i in range(npts):
        P = enc[i]
        idx = np.arange(i + 1, npts)
        # every F_q-point P + tQ must lie on the surface
        for tc in others_t:
            if not len(idx):
                break
            Q = enc[idx]
            coords = [vf.add(P[j], vf.mul(tc, Q[:, j])) for j in range(P.shape[0])]
            keep = np.ones(len(idx), dtype=bool)
            for f in forms:
                keep &= np.broadcast_to(vf.is_zero(np.asarray(_eval_form(vf, f, coords))), keep.shape)
            idx = idx[keep]
        for j in idx:
            L = canonical_line(F, [int(x) for x in pts[i]], [int(x) for x in pts[j]])
            if L not in lines and line_contained(forms, L):
                lines.add(L)
    return lines


def lines_on_surface_scan(
    f_list: Sequence[MPoly], m: int, max_ext: int = 1, budget: int = DEFAULT_POINT_BUDGET
) -> list[tuple[int, LineInPn]]:
    """All lines over F_{p^e}, e <= max_ext, on V(f_list) in P^m.

    Lines are found through pairs of surface points, then confirmed by exact
    restriction; each line is listed once at its minimal field of definition.
    """
    if m not in (3, 4):
        raise ValueError("m must be 3 or 4")
    base = f_list[0].ring
    if not isinstance(base, FieldDescriptor) or base.n != 1:
        raise TypeError("forms must be over a prime field")
    hits = []
    for e in range(1, max_ext + 1):
        F = make_field(base.p, e)
        for L in _lines_over(f_list, F, budget):
            if e > 1 and minimal_degree(F, [x for r in L.rows for x in r]) < e:
                continue
            hits.append((e, L))
    hits.sort(key=lambda h: (h[0], h[1].rows))
    return hits


def scan_report(hits) -> str:
    """Plain-text scan report: one line per hit."""
    out = []
    for e, L in hits:
        if isinstance(L, LineInP2):
            body = " ".join(str(c) for c in L.coeffs)
        else:
            body = " | ".join(" ".join(str(c) for c in r) for r in L.rows)
        out.append("%d %s" % (e, body))
    return "\n".join(out) + ("\n" if out else "")
