"""Property groups, each runnable on its own with ``pytest -m <group>``."""

import random
from collections import Counter
from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import given

from toricap.bounds import c2_convex_4d
from toricap.capacities import ch_concave, ch_convex, ech_ellipsoid, ech_sequence, n_k
from toricap.domains import EllipsoidSpec, make_veps, region, region_contains, triangle
from toricap.geometry import polygon_area
from toricap.packing import FEASIBLE, INFEASIBLE, PackingInstance, cremona_feasible, ech_feasible
from toricap.weights import check_conservation, weights_concave, weights_ellipsoid

from .conftest import concave_regions, convex_regions, positive_rationals

KS = range(1, 7)
unit_factors = st.fractions(min_value=F(1, 10), max_value=1, max_denominator=10).filter(lambda q: q > 0)
scale_factors = st.fractions(min_value=F(1, 10), max_value=10, max_denominator=12).filter(lambda q: q > 0)
small_instances = st.tuples(
    st.integers(1, 14),
    st.lists(st.integers(1, 8), min_size=1, max_size=6),
)


def shrink(omega, s, t):
    # diag(s, t) keeps the region type and, for s, t <= 1, lands inside omega
    return region([(s * x, t * y) for x, y in omega.vertices])


def scale(omega, lam):
    return shrink(omega, lam, lam)


# -- conservation ---------------------------------------------------------------

@pytest.mark.conservation
@given(concave_regions())
def test_sum_of_squares_is_twice_area(omega):
    seq = weights_concave(omega)
    assert seq.sum_sq == 2 * omega.area
    assert check_conservation(omega, seq)


@pytest.mark.conservation
@given(st.fractions(min_value=F(1, 100), max_value=F(49, 100), max_denominator=100).filter(lambda e: e > 0))
def test_veps_conservation(eps):
    assert weights_concave(make_veps(eps)).sum_sq == 2 * eps


@pytest.mark.conservation
@given(positive_rationals, positive_rationals)
def test_ellipsoid_weights_conservation(a, b):
    assert weights_ellipsoid(a, b).sum_sq == a * b


@pytest.mark.conservation
@given(concave_regions())
def test_expansion_nodes_partition_area(omega):
    # every node's peeled ball plus its children's areas accounts for the node's area
    seq = weights_concave(omega)
    by_path = {node.path: node for node in seq.nodes}
    for node in seq.nodes:
        children = [by_path[p] for p in (node.path + "L", node.path + "U") if p in by_path]
        area = polygon_area(node.region)
        assert area == node.peeled ** 2 / 2 + sum(polygon_area(c.region) for c in children)


# -- monotonicity under inclusion ------------------------------------------------

@pytest.mark.monotonicity
@given(convex_regions(), unit_factors, unit_factors)
def test_ch_convex_monotone(omega, s, t):
    inner = shrink(omega, s, t)
    assert region_contains(inner, omega)
    for k in KS:
        assert ch_convex(inner, k) <= ch_convex(omega, k)
    assert c2_convex_4d(inner).value <= c2_convex_4d(omega).value


@pytest.mark.monotonicity
@given(concave_regions(), unit_factors, unit_factors)
def test_ch_concave_monotone(omega, s, t):
    inner = shrink(omega, s, t)
    assert region_contains(inner, omega)
    for k in KS:
        assert ch_concave(inner, k) <= ch_concave(omega, k)


@pytest.mark.monotonicity
@given(convex_regions(), convex_regions())
def test_ch_convex_monotone_independent_pairs(A, B):
    if region_contains(A, B):
        for k in KS:
            assert ch_convex(A, k) <= ch_convex(B, k)


@pytest.mark.monotonicity
@given(concave_regions(), concave_regions())
def test_ch_concave_monotone_independent_pairs(A, B):
    if region_contains(A, B):
        for k in KS:
            assert ch_concave(A, k) <= ch_concave(B, k)


@pytest.mark.monotonicity
@given(positive_rationals, positive_rationals, unit_factors, unit_factors)
def test_ech_ellipsoid_monotone(a, b, s, t):
    assert region_contains(EllipsoidSpec((s * a, t * b)), EllipsoidSpec((a, b)))
    small, big = ech_ellipsoid(s * a, t * b, 30), ech_ellipsoid(a, b, 30)
    assert all(x <= y for x, y in zip(small, big))


@pytest.mark.monotonicity
@given(concave_regions(), unit_factors, unit_factors)
def test_ech_concave_monotone(omega, s, t):
    # ECH of a concave region is that of the ball union given by its weights
    small = ech_sequence(list(weights_concave(shrink(omega, s, t)).weights), 30)
    big = ech_sequence(list(weights_concave(omega).weights), 30)
    assert all(x <= y for x, y in zip(small, big))


@pytest.mark.monotonicity
@given(st.lists(st.integers(1, 6), min_size=1, max_size=5), st.integers(0, 4), st.integers(1, 14))
def test_packing_monotone_in_weights(ws, drop, mu):
    inst = PackingInstance(mu, tuple(ws))
    if cremona_feasible(inst).verdict != FEASIBLE:
        return
    fewer = [w for i, w in enumerate(ws) if i != drop % len(ws)]
    if fewer:
        assert cremona_feasible(PackingInstance(mu, tuple(fewer))).verdict == FEASIBLE
    smaller = list(ws)
    smaller[drop % len(ws)] = F(smaller[drop % len(ws)], 2)
    assert cremona_feasible(PackingInstance(mu, tuple(smaller))).verdict == FEASIBLE
    assert cremona_feasible(PackingInstance(mu + 1, tuple(ws))).verdict == FEASIBLE


# -- scaling -----------------------------------------------------------------------

@pytest.mark.scaling
@given(small_instances, scale_factors)
def test_packing_verdict_scale_invariant(instance, lam):
    mu, ws = instance
    base = PackingInstance(mu, tuple(ws))
    scaled = base.scaled(lam)
    assert cremona_feasible(scaled).verdict == cremona_feasible(base).verdict
    (m1, w1), (m2, w2) = scaled.integer_vector(), base.integer_vector()
    assert all(m1 * b == m2 * a for a, b in zip(w1, w2))
    assert ech_feasible(scaled, 60) == ech_feasible(base, 60)


@pytest.mark.scaling
@given(convex_regions(), scale_factors)
def test_convex_capacity_conformal(omega, lam):
    for k in KS:
        assert ch_convex(scale(omega, lam), k) == lam * ch_convex(omega, k)


@pytest.mark.scaling
@given(concave_regions(), scale_factors)
def test_concave_capacity_conformal(omega, lam):
    for k in KS:
        assert ch_concave(scale(omega, lam), k) == lam * ch_concave(omega, k)
    assert weights_concave(scale(omega, lam)).weights == tuple(lam * w for w in weights_concave(omega).weights)


@pytest.mark.scaling
@given(st.lists(positive_rationals, min_size=1, max_size=3), scale_factors)
def test_n_k_conformal(axes, lam):
    for k in KS:
        assert n_k([lam * a for a in axes], k) == lam * n_k(axes, k)


# -- agreement between independent methods -----------------------------------------

@pytest.mark.agreement
@given(small_instances)
def test_cremona_never_contradicted_by_ech(instance):
    mu, ws = instance
    inst = PackingInstance(mu, tuple(ws))
    verdict = cremona_feasible(inst).verdict
    ech = ech_feasible(inst, 200)
    assert verdict in (FEASIBLE, INFEASIBLE)
    if verdict == FEASIBLE:
        assert ech.obstruction_k is None


@pytest.mark.agreement
def test_cremona_vs_ech_seeded_sweep(capsys):
    rng = random.Random(2024)
    log = Counter()
    for _ in range(150):
        ws = tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 7)))
        inst = PackingInstance(rng.randint(1, 12), ws)
        verdict = cremona_feasible(inst).verdict
        ech = ech_feasible(inst, 200)
        if verdict == FEASIBLE:
            assert ech.obstruction_k is None
            log["feasible"] += 1
        else:
            log["infeasible, ECH witness" if ech.obstruction_k is not None else "infeasible, Cremona only"] += 1
    with capsys.disabled():
        print(f"\ncremona/ech sweep: {dict(sorted(log.items()))}")
    assert log["feasible"] and log["infeasible, ECH witness"]


@pytest.mark.agreement
@given(positive_rationals, positive_rationals)
def test_triangle_engines_agree(a, b):
    T = triangle(a, b)
    for k in KS:
        assert ch_convex(T, k) == ch_concave(T, k) == n_k((a, b), k)


@pytest.mark.agreement
@given(positive_rationals, positive_rationals)
def test_triangle_weights_agree(a, b):
    assert weights_concave(triangle(a, b)).weights == weights_ellipsoid(a, b).weights


@pytest.mark.agreement
@given(positive_rationals, positive_rationals)
def test_ellipsoid_ech_matches_its_ball_union(a, b):
    assert ech_sequence(list(weights_ellipsoid(a, b).weights), 40) == ech_ellipsoid(a, b, 40)


@pytest.mark.agreement
@given(concave_regions())
def test_first_concave_capacity_is_first_weight(omega):
    seq = weights_concave(omega)
    assert ch_concave(omega, 1) == seq.weights[0] == ech_sequence(list(seq.weights), 1)[1]


@pytest.mark.agreement
@given(small_instances)
def test_feasible_implies_volume_bound(instance):
    mu, ws = instance
    if cremona_feasible(PackingInstance(mu, tuple(ws))).verdict == FEASIBLE:
        assert sum(w * w for w in ws) <= mu * mu
