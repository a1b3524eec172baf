"""Published example data: two K3 surfaces over Q and their reductions mod 47.

Polynomials are stored in the canonical text format of :mod:`k3picard.poly`.
The Weil cofactors are degree-20 integer coefficient lists, constant term
first; the full polynomials are (t - 47)^2 times these.
"""

from __future__ import annotations

from functools import lru_cache

from .ffield import make_field
from .poly import ZZ, MPoly, parse_poly, univariate

EXAMPLE_PRIME = 47
P4_NAMES = ("x0", "x1", "x2", "x3", "x4")
P5_NAMES = ("x0", "x1", "x2", "x3", "x4", "x5")
P2_NAMES = ("u", "v", "w")

# degree 8: net of quadrics over F_47 and its rational lift
NET_F47 = (
    (
        "5*x0^2 + 6*x0*x1 + x1^2 + 10*x0*x2 + 45*x1*x2 + x2^2 + 6*x0*x3 "
        "+ 45*x1*x3 + 45*x2*x3 + 37*x0*x4 + 39*x1*x4 + 39*x2*x4 + 2*x4^2 "
        "+ 10*x0*x5 + 10*x1*x5 + 45*x2*x5 + 8*x4*x5 + 2*x5^2"
    ),
    (
        "43*x0^2 + 41*x0*x1 + 41*x0*x2 + 8*x1*x2 + 44*x2^2 + 2*x0*x3 + 39*x1*x3 "
        "+ 5*x3^2 + 45*x0*x4 + 2*x1*x4 + 45*x2*x4 + 10*x3*x4 + 3*x4^2 + 43*x0*x5 "
        "+ 6*x1*x5 + 2*x2*x5 + 2*x3*x5 + 10*x4*x5 + 3*x5^2"
    ),
    (
        "5*x0^2 + 45*x0*x1 + 46*x1^2 + 37*x0*x2 + 2*x1*x2 + 4*x2^2 + 2*x0*x3 "
        "+ 8*x1*x3 + 6*x2*x3 + 42*x3^2 + 8*x0*x4 + 39*x1*x4 + 43*x2*x4 + 4*x3*x4 "
        "+ 2*x1*x5 + 43*x2*x5 + 43*x3*x5 + 39*x4*x5 + 44*x5^2"
    ),
)

NET_Q = (
    (
        "-136*x0^2 - 464*x0*x1 - 140*x1^2 - 272*x0*x2 + 374*x1*x2 + x2^2 "
        "+ 288*x0*x3 + 186*x1*x3 + 468*x2*x3 + 47*x3^2 - 292*x0*x4 - 196*x1*x4 "
        "+ 274*x2*x4 - 188*x3*x4 + 237*x4^2 - 84*x0*x5 + 386*x1*x5 + 562*x2*x5 "
        "- 282*x3*x5 - 274*x4*x5 - 139*x5^2"
    ),
    (
        "43*x0^2 + 88*x0*x1 + 141*x1^2 - 100*x0*x2 + 384*x1*x2 + 185*x2^2 "
        "- 280*x0*x3 - 8*x1*x3 - 376*x2*x3 - 89*x3^2 + 562*x0*x4 + 190*x1*x4 "
        "+ 562*x2*x4 + 104*x3*x4 + 144*x4^2 - 98*x0*x5 - 182*x1*x5 - 468*x2*x5 "
        "+ 190*x3*x5 - 84*x4*x5 - 44*x5^2"
    ),
    (
        "193*x0^2 - 2*x0*x1 + 234*x1^2 - 292*x0*x2 + 190*x1*x2 + 51*x2^2 "
        "+ 2*x0*x3 - 180*x1*x3 + 6*x2*x3 + 183*x3^2 + 8*x0*x4 + 274*x1*x4 "
        "+ 184*x2*x4 + 286*x3*x4 + 470*x0*x5 - 280*x1*x5 + 560*x2*x5 + 90*x3*x5 "
        "- 196*x4*x5 + 185*x5^2"
    ),
)

# branch sextic of the discriminant double cover over F_47
DEG8_SEXTIC_F47 = (
    "13*u^6 + 43*u^5*v + 19*u^4*v^2 + 7*u^3*v^3 + 46*u^2*v^4 + 11*u*v^5 "
    "+ 21*v^6 + 43*u^5*w + 22*u^4*v*w + u^3*v^2*w + 27*u^2*v^3*w "
    "+ 17*u*v^4*w + 41*v^5*w + 26*u^4*w^2 + 42*u^3*v*w^2 + 33*u^2*v^2*w^2 "
    "+ 46*u*v^3*w^2 + 19*v^4*w^2 + 42*u^3*w^3 + 8*u^2*v*w^3 + 34*u*v^2*w^3 "
    "+ 17*v^3*w^3 + 41*u^2*w^4 + 32*u*v*w^4 + 21*v^2*w^4 + 46*u*w^5 "
    "+ 33*v*w^5 + 17*w^6"
)

# tritangent line u + 32v + 17w = 0, as dual coefficients
DEG8_TRITANGENT = (1, 32, 17)

DEG8_WEIL_COFACTOR = [
    2766668711962335809450748011342401,
    -18786795237408346374722145844335,
    -1412340634868996252284076212411,
    23813049644519406903224087082,
    277457012068868469490452889,
    -1796668903313671865340583,
    -152907991771376328965156,
    -580957415544742891205,
    133496597614536664362,
    210396528943320196,
    -49241740816521748,
    95245146647044,
    27357648505002,
    -53896076645,
    -6421660196,
    -34157767,
    2387929,
    92778,
    -2491,
    -15,
    1,
]

# degree 6: (f2, f3) over Q containing V(x0, x1, x2) modulo 47
PAIR_Q = (
    (
        "x0^2 - 3*x0*x1 + 3*x1^2 + 5*x0*x2 + 4*x1*x2 + 5*x2^2 - x0*x3 - 2*x1*x3 "
        "- 3*x2*x3 + 47*x3^2 - 5*x0*x4 + 5*x1*x4 + 47*x4^2"
    ),
    (
        "2*x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3 - x0*x1*x2 - 3*x1^2*x2 "
        "+ 4*x0*x2^2 - 4*x1*x2^2 + 5*x2^3 + 4*x0^2*x3 + x0*x1*x3 + 5*x1^2*x3 "
        "+ 4*x0*x2*x3 + 4*x1*x2*x3 - 3*x2^2*x3 + 4*x1*x3^2 - x2*x3^2 + 5*x0^2*x4 "
        "- 4*x0*x1*x4 + 2*x1^2*x4 + x0*x2*x4 + 4*x1*x2*x4 - 2*x2^2*x4 "
        "+ 4*x0*x3*x4 - 3*x2*x3*x4 - x0*x4^2 - x1*x4^2 + 5*x2*x4^2"
    ),
)

# branch sextic of the projection from the line, over F_47
DEG6_SEXTIC_F47 = (
    "14*u^6 + 36*u^5*v + 40*u^4*v^2 + 2*u^3*v^3 + 38*u^2*v^4 + 40*u*v^5 "
    "+ 26*v^6 + 7*u^5*w + 29*u^4*v*w + 12*u^3*v^2*w + 29*u^2*v^3*w "
    "+ 2*u*v^4*w + 28*v^5*w + 29*u^4*w^2 + 15*u^3*v*w^2 + 12*u^2*v^2*w^2 "
    "+ 16*u*v^3*w^2 + 11*v^4*w^2 + 40*u^3*w^3 + 31*u^2*v*w^3 + 38*u*v^2*w^3 "
    "+ 26*v^3*w^3 + 35*u^2*w^4 + 10*u*v*w^4 + 18*v^2*w^4 + 2*u*w^5 "
    "+ 43*v*w^5 + w^6"
)

DEG6_WEIL_COFACTOR = [
    2766668711962335809450748011342401,
    43835855553952808207685006970115,
    799438095208865803179665780610,
    20411185409588063059906360356,
    -36190045052461104716146029,
    2053335889501339274674952,
    131063992946893996255848,
    -929531864871588625928,
    -4944318430168024606,
    -1472775702603241372,
    -78339133117193690,
    -666716026529308,
    -1013246240926,
    -86233722632,
    5504280168,
    39037448,
    -311469,
    79524,
    1410,
    35,
    1,
]

COFACTOR_CONSTANT = 47 ** 20


def net_f47() -> list[MPoly]:
    F = make_field(EXAMPLE_PRIME)
    return [parse_poly(s, F, P5_NAMES) for s in NET_F47]


def net_q() -> list[MPoly]:
    return [parse_poly(s, ZZ, P5_NAMES) for s in NET_Q]


def pair_q() -> tuple[MPoly, MPoly]:
    f2, f3 = (parse_poly(s, ZZ, P4_NAMES) for s in PAIR_Q)
    return f2, f3


def deg8_sextic() -> MPoly:
    return parse_poly(DEG8_SEXTIC_F47, make_field(EXAMPLE_PRIME), P2_NAMES)


def deg6_sextic() -> MPoly:
    return parse_poly(DEG6_SEXTIC_F47, make_field(EXAMPLE_PRIME), P2_NAMES)


@lru_cache(maxsize=None)
def _weil(cofactor: tuple[int, ...]) -> tuple[int, ...]:
    lin = univariate([-EXAMPLE_PRIME, 1], ZZ)
    full = lin * lin * univariate(cofactor, ZZ)
    return tuple(int(full.coeff((k,))) for k in range(23))


def deg8_weil() -> list[int]:
    """Coefficients c_0..c_22 of the degree-8 example's Weil polynomial."""
    return list(_weil(tuple(DEG8_WEIL_COFACTOR)))


def deg6_weil() -> list[int]:
    """Coefficients c_0..c_22 of the degree-6 example's Weil polynomial."""
    return list(_weil(tuple(DEG6_WEIL_COFACTOR)))
