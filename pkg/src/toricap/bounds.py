"""Bounds on the extremal 2-normalized (and k-normalized) capacities.

c_k^min(X) and c_k^max(X) are the best N_k values of ellipsoids embedding
into, respectively containing, X. Every k-normalized capacity lies between
them, so they coincide for X exactly when all k-normalized capacities do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .capacities import ch_concave, n_k
from .domains import (
    EllipsoidSpec,
    PolydiskSpec,
    ToricRegion2D,
    axis_data,
    make_veps,
    region,
    region_contains,
)
from .errors import InvalidInput, ToricapError
from .geometry import rational, support_max
from .packing import embed_concave_into_ball

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
TWO_NINTHS = Fraction(2, 9)


@dataclass(frozen=True)
class C2Result:
    value: Fraction
    a: Fraction  # smaller axis intercept
    w: Fraction  # smallest ball T(w, w) containing Omega
    inner: EllipsoidSpec  # E(a, w), embeds into the quadrilateral below
    inner_region: ToricRegion2D  # hull of (0,0), (a,0), (x,y), (0,b); contained in Omega
    outer: object  # P(a, b) or B(w), whichever gives the smaller bound
    binding: str  # "polydisk" or "ball"


def c2_convex_4d(omega: ToricRegion2D) -> C2Result:
    """c_2 of a 4-d convex toric domain: min(2a, w), with a the smaller intercept."""
    if not isinstance(omega, ToricRegion2D) or not omega.flags.convex:
        raise InvalidInput("c2_convex_4d needs a convex toric region")
    a_x, b_y, w = axis_data(omega)
    chain = omega.positive_boundary
    x, y = next(p for p in chain if p[0] + p[1] == w)
    a, b = min(a_x, b_y), max(a_x, b_y)
    quad = region([(0, 0), (a_x, 0), (x, y), (0, b_y)])
    value = min(2 * a, w)
    if 2 * a <= w:
        outer, binding = PolydiskSpec((a, b)), "polydisk"
    else:
        outer, binding = EllipsoidSpec((w, w)), "ball"
    return C2Result(value, a, w, EllipsoidSpec((a, w)), quad, outer, binding)


def c2_polydisk(axes) -> Fraction:
    """2 * min(axes).

    For n = 2 this rests on E(a, 2a) -> P(a, a); for n >= 3 on the embedding
    int E(1, 2, ..., 2) -> P(1, ..., 1), which is theorem-backed here and not
    constructed.
    """
    axes = PolydiskSpec(tuple(axes)).axes
    return 2 * min(axes)


def box_in_ellipsoid(box_axes, ell_axes) -> bool:
    """P(box_axes) is a subset of E(ell_axes): the far corner satisfies sum x_i / e_i <= 1."""
    box = PolydiskSpec(tuple(box_axes))
    ell = EllipsoidSpec(tuple(ell_axes))
    if box.dim != ell.dim:
        raise InvalidInput("dimension mismatch")
    return support_max(box.vertices(), [1 / e for e in ell.axes]) <= 1


def polydisk_outer_ellipsoid(axes, delta) -> EllipsoidSpec:
    """An ellipsoid E(a_1 + delta, C_2, ..., C_n) containing P(axes), a_1 = min(axes).

    C_i = (n - 1) a_i (a_1 + delta) / delta puts the far corner of the box on
    the ellipsoid boundary.
    """
    axes = sorted(PolydiskSpec(tuple(axes)).axes)
    delta = rational(delta)
    if delta <= 0:
        raise InvalidInput("delta must be positive")
    a1, n = axes[0], len(axes)
    if n == 1:
        return EllipsoidSpec((a1 + delta,))
    return EllipsoidSpec((a1 + delta, *((n - 1) * a * (a1 + delta) / delta for a in axes[1:])))


def c2_polydisk_sandwich(axes, delta) -> tuple:
    """(lower, upper) bounds on c_2(P(axes)) from an inner and an outer ellipsoid.

    The lower bound is N_2(a_1, 2a_1, ..., 2a_1) = 2a_1 and the upper bound
    is N_2 of :func:`polydisk_outer_ellipsoid`; it tends to 2a_1 as delta -> 0.
    """
    axes = sorted(PolydiskSpec(tuple(axes)).axes)
    a1 = axes[0]
    inner = [a1] + [2 * a1] * (len(axes) - 1)
    outer = polydisk_outer_ellipsoid(axes, delta)
    if not box_in_ellipsoid(axes, outer.axes):
        raise ToricapError("outer ellipsoid does not contain the polydisk")
    return n_k(inner, 2), n_k(outer.axes, 2)


def rational_below_sqrt(target, lower) -> Fraction:
    """A rational r > lower with r^2 < target, found by midpoint search.

    Requires 0 <= lower and lower^2 < target.
    """
    target, lower = rational(target), rational(lower)
    if lower < 0 or lower * lower >= target:
        raise InvalidInput("need 0 <= lower and lower^2 < target")
    hi = max(Fraction(1), target)
    while True:
        mid = (lower + hi) / 2
        if mid * mid < target:
            return mid
        hi = mid


@dataclass(frozen=True)
class VepsReport:
    eps: Fraction
    c2_min: Fraction
    c2_max_lower: Fraction
    c2_max_upper: Fraction | None
    equal: bool
    regime: str
    certificate: dict


def veps_analysis(eps) -> VepsReport:
    """c_2^min and bounds on c_2^max for V_eps, by regime of eps."""
    eps = rational(eps)
    Q = make_veps(eps)
    ch2 = ch_concave(Q, 2)
    if eps >= THIRD:
        inner, outer = EllipsoidSpec((HALF, 1)), EllipsoidSpec((1, 1))
        if not (region_contains(inner, Q) and region_contains(Q, outer)):
            raise ToricapError("expected E(1/2,1) in V_eps in B(1)")
        lo, hi = n_k(inner.axes, 2), n_k(outer.axes, 2)
        return VepsReport(eps, lo, hi, hi, lo == hi, "[1/3,1/2)",
                          {"inner": "E(1/2,1)", "outer": "B(1)", "ch2": ch2})

    inner = EllipsoidSpec((3 * eps / 2, 3 * eps))
    if not region_contains(inner, Q):
        raise ToricapError("expected E(3eps/2, 3eps) in V_eps")
    c2_min_lower = n_k(inner.axes, 2)

    if eps >= TWO_NINTHS:
        embed = embed_concave_into_ball(Q, 3 * eps)
        cert = {"inner": inner, "embed_verdict": embed.verdict, "weights": embed.weights.weights, "ch2": ch2}
        if not embed.trace.feasible:
            # no ellipsoid bound from above; report the trivial lower bound only
            return VepsReport(eps, c2_min_lower, c2_min_lower, None, False, "[2/9,1/3)", cert)
        upper = n_k((3 * eps, 3 * eps), 2)
        return VepsReport(eps, c2_min_lower, upper, upper, c2_min_lower == upper, "[2/9,1/3)", cert)

    # ch2 is itself a 2-normalized capacity, so c2_min <= ch2 = 3 eps = c2_min_lower.
    # Any E(a, b) containing V_eps has a >= 2 eps (the ball B(2 eps) sits inside)
    # and ab/2 >= eps (volume), so N_2(a, b) >= min(4 eps, sqrt(2 eps)).
    if ch2 != c2_min_lower:
        raise ToricapError(f"c_2 sandwich failed: {ch2} != {c2_min_lower}")
    r = rational_below_sqrt(2 * eps, 3 * eps)
    c2_max_lower = min(4 * eps, r)
    cert = {"inner": inner, "ch2": ch2, "r": r, "r_sq": r * r, "two_eps": 2 * eps}
    return VepsReport(eps, c2_min_lower, c2_max_lower, None, False, "(0,2/9)", cert)


@dataclass(frozen=True)
class GapCertificate:
    k: int
    n: int
    in_general_range: bool
    inequality_violated: bool
    gap_proven: bool
    ratio: Fraction  # k^n / (k * n!)
    chain: tuple


def polydisk_gap(k: int, n: int) -> GapCertificate:
    """Decide whether the volume argument separates c_k^min and c_k^max on P(1,...,1) in C^n.

    If c_k^min were k, ellipsoids E(a_1 <= ... <= a_n) -> P(1,...,1) would
    exist with N_k >= k - e for all e > 0. Either a_2 <= (k-1) a_1, so
    N_k <= (k-1) a_1 <= k - 1; or N_k <= min(k a_1, a_2), which forces
    a_1 >= (k-e)/k, a_i >= k - e, and volume gives k^n / (k n!) <= 1.
    """
    for name, val, low in (("k", k, 1), ("n", n, 2)):
        if isinstance(val, bool) or not isinstance(val, int) or val < low:
            raise InvalidInput(f"{name} must be an integer >= {low}")
    ratio = Fraction(k**n, k * math.factorial(n))
    violated = ratio > 1
    proven = violated and k >= 2
    chain = (
        f"suppose c_{k}^min(P) = {k} = c_{k}^CH(P); pick E(a_1<=...<=a_{n}) -> P with N_{k} >= {k} - e",
        f"case a_2 <= {k - 1}*a_1: N_{k} <= {k - 1}*a_1 <= {k - 1} since a_1 <= c_1(P) = 1",
        f"case a_2 > {k - 1}*a_1: N_{k} <= min({k}*a_1, a_2) so a_1 >= ({k}-e)/{k}, a_i >= {k}-e (i >= 2)",
        f"volume: ({k}-e)^{n} / ({k}*{n}!) <= vol E <= vol P = 1; limit e -> 0 gives {ratio} <= 1",
        "contradiction: gap proven" if proven else "no contradiction: the argument does not separate",
    )
    return GapCertificate(k, n, k >= max(n, 3), violated, proven, ratio, chain)


def highdim_veps_threshold(n: int) -> Fraction:
    """n! / (2n - 1)^n; below it c_n^min(V_eps) < c_n^max(V_eps) in C^n."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidInput("n must be an integer >= 2")
    return Fraction(math.factorial(n), (2 * n - 1) ** n)


def gap_below(eps, n: int) -> bool:
    return rational(eps) < highdim_veps_threshold(n)
