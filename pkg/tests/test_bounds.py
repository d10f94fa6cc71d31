import math
from fractions import Fraction as F

import pytest
from hypothesis import given

from toricap.bounds import (
    box_in_ellipsoid,
    c2_convex_4d,
    c2_polydisk,
    c2_polydisk_sandwich,
    gap_below,
    highdim_veps_threshold,
    polydisk_gap,
    polydisk_outer_ellipsoid,
    rational_below_sqrt,
    veps_analysis,
)
from toricap.capacities import ch_concave, n_k
from toricap.domains import make_veps, rectangle, region, region_contains, triangle
from toricap.errors import InvalidInput

from .conftest import convex_regions

VEPS_GRID = [F(1, 6), F(1, 5), F(43, 200), F(2, 9), F(23, 100), F(1, 4), F(3, 10), F(1, 3), F(2, 5)]


@pytest.mark.parametrize("omega, value", [
    (rectangle(1, 1), 2),
    (triangle(1, 1), 1),
    (triangle(1, 2), 2),
    (rectangle(3, 1), 2),
])
def test_c2_convex_4d(omega, value):
    res = c2_convex_4d(omega)
    assert res.value == value
    assert n_k(res.inner.axes, 2) == value
    assert region_contains(res.inner_region, omega)
    if res.binding == "ball":
        assert region_contains(omega, res.outer)
    else:
        # polydisk axes are sorted, so the witness may be the swapped rectangle
        outer = res.outer.region()
        assert region_contains(omega, outer) or region_contains(omega, outer.swapped())


def test_c2_convex_rejects_concave():
    with pytest.raises(InvalidInput):
        c2_convex_4d(make_veps(F(1, 5)))


@given(convex_regions())
def test_c2_convex_witnesses(omega):
    res = c2_convex_4d(omega)
    a, w = res.a, res.w
    assert res.value == min(2 * a, w) == n_k((a, w), 2)
    assert region_contains(res.inner_region, omega)
    assert region_contains(omega, w)


@given(convex_regions(), convex_regions())
def test_c2_convex_monotone(A, B):
    if region_contains(A, B):
        assert c2_convex_4d(A).value <= c2_convex_4d(B).value


@pytest.mark.parametrize("axes, value", [((1, 5), 2), ((3, 3), 6), ((1, 1, 1), 2), ((2, F(3, 2), 4, 5), 3)])
def test_c2_polydisk(axes, value):
    assert c2_polydisk(axes) == value


@pytest.mark.parametrize("axes", [(1, 1), (1, 5), (3, 3), (1, 1, 1), (2, 1, 3)])
@pytest.mark.parametrize("delta", [F(1, 10), F(1, 100), F(1, 1000)])
def test_polydisk_sandwich(axes, delta):
    lower, upper = c2_polydisk_sandwich(axes, delta)
    assert lower == c2_polydisk(axes)
    assert lower <= upper <= lower + 2 * delta
    outer = polydisk_outer_ellipsoid(axes, delta)
    assert box_in_ellipsoid(sorted(axes), outer.axes)


def test_box_in_ellipsoid():
    assert box_in_ellipsoid((1, 1), (2, 2))
    assert not box_in_ellipsoid((1, 1), (F(19, 10), 2))
    with pytest.raises(InvalidInput):
        box_in_ellipsoid((1, 1), (2, 2, 2))


def test_rational_below_sqrt():
    r = rational_below_sqrt(F(2, 5), F(3, 5))
    assert r == F(5, 8)
    with pytest.raises(InvalidInput):
        rational_below_sqrt(F(1, 4), F(1, 2))


@pytest.mark.parametrize("eps, c2", [(F(2, 5), 1), (F(1, 3), 1), (F(1, 4), F(3, 4)), (F(2, 9), F(2, 3))])
def test_veps_equal_regimes(eps, c2):
    rep = veps_analysis(eps)
    assert rep.equal
    assert rep.c2_min == rep.c2_max_lower == rep.c2_max_upper == c2


def test_veps_gap_regime():
    rep = veps_analysis(F(1, 5))
    assert not rep.equal
    assert rep.c2_min == F(3, 5)
    assert rep.certificate["r"] == F(5, 8)
    assert rep.c2_max_lower == F(5, 8)
    assert rep.c2_max_upper is None


@pytest.mark.parametrize("eps", VEPS_GRID)
def test_veps_grid(eps):
    rep = veps_analysis(eps)
    assert rep.equal == (eps >= F(2, 9))
    assert rep.c2_max_lower >= rep.c2_min
    if not rep.equal:
        r = rep.certificate["r"]
        assert r * r < 2 * eps and r > 3 * eps
        assert rep.c2_max_lower > rep.c2_min
    if F(2, 9) <= eps < F(1, 3):
        assert rep.c2_min == ch_concave(make_veps(eps), 2) == 3 * eps


def test_veps_range():
    with pytest.raises(InvalidInput):
        veps_analysis(F(1, 2))


@pytest.mark.parametrize("k, n, proven", [
    (2, 2, False), (3, 2, True), (3, 3, True), (4, 3, True), (2, 4, False), (1, 5, False),
])
def test_polydisk_gap(k, n, proven):
    cert = polydisk_gap(k, n)
    assert cert.gap_proven is proven
    assert cert.inequality_violated == (k**n > k * math.factorial(n))
    assert len(cert.chain) == 5


def test_polydisk_gap_monotone_in_k():
    for n in range(2, 7):
        seen = False
        for k in range(1, 15):
            proven = polydisk_gap(k, n).gap_proven
            assert proven or not seen
            seen = seen or proven


def test_gap_in_general_range():
    for n in range(2, 7):
        for k in range(max(n, 3), 12):
            cert = polydisk_gap(k, n)
            assert cert.in_general_range and cert.gap_proven


def test_highdim_threshold():
    assert highdim_veps_threshold(2) == F(2, 9)
    assert highdim_veps_threshold(3) == F(6, 125)
    assert highdim_veps_threshold(4) == F(24, 2401)
    assert gap_below(F(1, 5), 2) and not gap_below(F(2, 9), 2)
    with pytest.raises(InvalidInput):
        highdim_veps_threshold(1)


def test_region_fixture_for_convex_monotone():
    inner = region([(0, 0), (1, 0), (1, 1), (0, 2)])
    assert c2_convex_4d(inner).value <= c2_convex_4d(rectangle(1, 2)).value
