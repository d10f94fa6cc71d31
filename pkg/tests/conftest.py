import os
from fractions import Fraction

import hypothesis
import hypothesis.strategies as st
import pytest

from toricap.capacities import formula_gate
from toricap.domains import region

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session", autouse=True)
def capacity_formula_gate():
    # the lattice formulas must reproduce their anchor values before anything else runs
    assert formula_gate()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


positive_rationals = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=30).filter(
    lambda q: q > 0)


def _chain(steps, concave):
    # edge vectors (-p, q); concave chains get shallower-to-steeper slopes, convex the reverse
    steps = sorted(set(steps), key=lambda pq: Fraction(pq[1], pq[0]) if pq[0] else Fraction(10**9))
    if not concave:
        steps.reverse()
    a = sum(p for p, _ in steps)
    pts = [(a, 0)]
    for p, q in steps:
        x, y = pts[-1]
        pts.append((x - p, y + q))
    return pts


@st.composite
def concave_regions(draw, max_edges=4):
    steps = draw(st.lists(st.tuples(st.integers(1, 6), st.integers(1, 6)), min_size=1, max_size=max_edges))
    scale = draw(st.fractions(min_value=Fraction(1, 6), max_value=3, max_denominator=6).filter(lambda q: q > 0))
    chain = _chain(steps, concave=True)
    return region([(0, 0)] + [(scale * x, scale * y) for x, y in chain])


@st.composite
def convex_regions(draw, max_edges=4):
    steps = draw(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda pq: pq != (0, 0)),
                          min_size=1, max_size=max_edges))
    steps = [pq for pq in steps]
    if all(p == 0 for p, _ in steps):
        steps.append((1, 1))
    if all(q == 0 for _, q in steps):
        steps.append((1, 1))
    scale = draw(st.fractions(min_value=Fraction(1, 6), max_value=3, max_denominator=6).filter(lambda q: q > 0))
    chain = _chain(steps, concave=False)
    return region([(0, 0)] + [(scale * x, scale * y) for x, y in chain])
