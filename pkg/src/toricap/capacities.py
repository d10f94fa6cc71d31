"""Capacity calculators.

``n_k`` is the ellipsoid value of every k-normalized capacity. ``ch_convex``
and ``ch_concave`` are the lattice min-max formulas for Gutt-Hutchings
capacities of convex and concave toric domains; both are checked against
the ellipsoid values, the cube and V_eps before first use (see
:func:`formula_gate`). ECH capacity sequences cover balls, 4-d ellipsoids and
disjoint unions of them.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from .domains import EllipsoidSpec, PolydiskSpec, ToricRegion2D, make_veps, rectangle, triangle
from .errors import InvalidInput, ToricapError
from .geometry import boundary_min, polygon_area, rational, support_max

DEFAULT_HORIZON = 200


def _check_k(k):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInput(f"capacity index must be a positive integer, got {k!r}")


def n_k(axes, k: int) -> Fraction:
    """k-th smallest element, with multiplicity, of {m * a_i : m >= 1}."""
    _check_k(k)
    axes = [rational(a) for a in axes]
    if not axes:
        raise InvalidInput("n_k needs at least one axis")
    if any(a <= 0 for a in axes):
        raise InvalidInput("axes must be positive")
    bound = k * min(axes)
    values = []
    for a in axes:
        values.extend(m * a for m in range(1, int(bound // a) + 1))
    values.sort()
    return values[k - 1]


def compositions(total: int, parts: int, minimum: int = 0):
    """All integer vectors of length ``parts`` with entries >= minimum summing to ``total``."""
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def _convex_vertices(domain):
    if isinstance(domain, ToricRegion2D):
        if not domain.flags.convex:
            raise InvalidInput("region is not a convex toric domain; use ch_concave for concave regions")
        return list(domain.vertices)
    if isinstance(domain, (EllipsoidSpec, PolydiskSpec)):
        return domain.vertices()
    verts = [tuple(rational(c) for c in v) for v in domain]
    if not verts or len({len(v) for v in verts}) != 1:
        raise InvalidInput("vertex list must be non-empty and of one dimension")
    return verts


def _concave_boundary(domain):
    if isinstance(domain, ToricRegion2D):
        if not domain.flags.concave:
            raise InvalidInput("region is not a concave toric domain")
        return list(domain.positive_boundary)
    if isinstance(domain, EllipsoidSpec):
        return domain.vertices()[1:]
    raise InvalidInput("ch_concave needs a concave 2-d region or an ellipsoid")


def _ch_convex(domain, k):
    verts = _convex_vertices(domain)
    n = len(verts[0])
    return min(support_max(verts, v) for v in compositions(k, n, 0))


def _ch_concave(domain, k):
    chain = _concave_boundary(domain)
    n = len(chain[0])
    return max(boundary_min(chain, v) for v in compositions(k + n - 1, n, 1))


def ch_convex(domain, k: int) -> Fraction:
    """min over v in Z^n_{>=0}, |v| = k, of max_{w in Omega} <v, w>.

    ``domain`` is a convex ToricRegion2D, an ellipsoid/polydisk of any
    dimension, or the vertex list of a convex moment polytope.
    """
    _check_k(k)
    formula_gate()
    return _ch_convex(domain, k)


def ch_concave(domain, k: int) -> Fraction:
    """max over v in Z^n_{>0}, |v| = k + n - 1, of min_{w in boundary} <v, w>."""
    _check_k(k)
    formula_gate()
    return _ch_concave(domain, k)


def volume(domain) -> Fraction:
    """Volume of X_Omega (the Lebesgue measure of Omega in moment coordinates)."""
    if isinstance(domain, EllipsoidSpec):
        return math.prod(domain.axes, start=Fraction(1)) / math.factorial(domain.dim)
    if isinstance(domain, PolydiskSpec):
        return math.prod(domain.axes, start=Fraction(1))
    if isinstance(domain, ToricRegion2D):
        return polygon_area(domain.polygon)
    raise InvalidInput(f"no volume for {domain!r}")


# -- gate ----------------------------------------------------------------------

_GATE_AXES = [(1, 1), (1, 2), (2, 3), (Fraction(3, 7), Fraction(11, 5)), (Fraction(1, 3), 3)]


@functools.cache
def formula_gate() -> bool:
    """Check the lattice formulas against known values; raise if any disagree.

    Runs once per process: ellipsoid values N_k, c_k(P(1,1)) = k and
    c_2(V_eps) = 3 eps.
    """
    failures = []
    for a, b in _GATE_AXES:
        T = triangle(a, b)
        for k in range(1, 13):
            expected = n_k((a, b), k)
            got = (_ch_convex(T, k), _ch_concave(T, k))
            if got != (expected, expected):
                failures.append(f"T({a},{b}) k={k}: {got} != {expected}")
    square = rectangle(1, 1)
    for k in range(1, 13):
        if _ch_convex(square, k) != k:
            failures.append(f"P(1,1) k={k}")
    for eps in (Fraction(1, 5), Fraction(2, 9), Fraction(1, 4)):
        if _ch_concave(make_veps(eps), 2) != 3 * eps:
            failures.append(f"V_{eps} k=2")
    if failures:
        raise ToricapError("capacity formula gate failed: " + "; ".join(failures))
    return True


# -- ECH capacities ------------------------------------------------------------

def _lcm_denominator(values) -> int:
    return math.lcm(*(rational(v).denominator for v in values))


def _ech_ellipsoid_int(a: int, b: int, horizon: int) -> list:
    if a > b:
        a, b = b, a
    # the horizon + 1 values m*a (m = 0..horizon) bound the answer
    limit = horizon * a
    values = []
    for j in range(limit // b + 1):
        rest = limit - j * b
        values.extend(i * a + j * b for i in range(rest // a + 1))
    values.sort()
    return values[: horizon + 1]


def _check_horizon(horizon):
    if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 0:
        raise InvalidInput(f"horizon must be a non-negative integer, got {horizon!r}")


def ech_ellipsoid(a, b, horizon: int = DEFAULT_HORIZON) -> tuple:
    """c_0..c_K of E(a, b): the sorted values m*a + m'*b, m, m' >= 0."""
    _check_horizon(horizon)
    a, b = rational(a), rational(b)
    if a <= 0 or b <= 0:
        raise InvalidInput("ellipsoid axes must be positive")
    scale = _lcm_denominator((a, b))
    ints = _ech_ellipsoid_int(int(a * scale), int(b * scale), horizon)
    return tuple(Fraction(v, scale) for v in ints)


def ech_ball(a, horizon: int = DEFAULT_HORIZON) -> tuple:
    return ech_ellipsoid(a, a, horizon)


def max_plus_convolve(s, t) -> tuple:
    """(s * t)_k = max_{i+j=k} s_i + t_j, truncated to the shorter horizon."""
    K = min(len(s), len(t))
    return tuple(max(s[i] + t[k - i] for i in range(k + 1)) for k in range(K))


def ech_union(sequences) -> tuple:
    """ECH sequence of a disjoint union, from the sequences of its pieces."""
    sequences = list(sequences)
    if not sequences:
        raise InvalidInput("disjoint union must be non-empty")
    return functools.reduce(max_plus_convolve, sequences)


def _ech_balls_int(sizes, horizon):
    # identical balls share one sequence
    cache = {}
    seqs = []
    for w in sizes:
        if w not in cache:
            cache[w] = _ech_ellipsoid_int(w, w, horizon)
        seqs.append(cache[w])
    return ech_union(seqs)


def ech_sequence(domain, horizon: int = DEFAULT_HORIZON) -> tuple:
    """ECH capacities c_0..c_K.

    ``domain`` is a ball size (rational), a 2-d EllipsoidSpec, or a list of
    ball sizes / ellipsoids read as their disjoint union.
    """
    _check_horizon(horizon)
    if isinstance(domain, EllipsoidSpec):
        if domain.dim != 2:
            raise InvalidInput("ECH capacities are defined for 4-d domains only")
        return ech_ellipsoid(*domain.axes, horizon)
    if isinstance(domain, (list, tuple)):
        if not domain:
            raise InvalidInput("disjoint union must be non-empty")
        if all(not isinstance(d, EllipsoidSpec) for d in domain):
            sizes = [rational(w) for w in domain]
            if any(w <= 0 for w in sizes):
                raise InvalidInput("ball sizes must be positive")
            scale = _lcm_denominator(sizes)
            ints = _ech_balls_int([int(w * scale) for w in sizes], horizon)
            return tuple(Fraction(v, scale) for v in ints)
        return ech_union(ech_sequence(d, horizon) for d in domain)
    r = rational(domain)
    if r <= 0:
        raise InvalidInput("ball size must be positive")
    return ech_ball(r, horizon)
