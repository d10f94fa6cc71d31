"""Exact rational geometry for moment images.

Everything here works on :class:`fractions.Fraction` coordinates; there is no
floating point anywhere. Points are plain tuples of Fractions, polygons are
immutable and stored counterclockwise starting from their lexicographically
smallest vertex, with repeated and collinear vertices removed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput

Point = tuple  # tuple[Fraction, ...]


def rational(value) -> Fraction:
    """Coerce ``value`` ("p/q", "p", int or Fraction) to a Fraction.

    Floats are rejected: a float has already lost the exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInput(f"expected an exact rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"not a rational literal: {value!r}") from None
    raise InvalidInput(f"cannot interpret {value!r} as a rational")


def fmt(q: Fraction) -> str:
    """Render a Fraction as "p/q" (or "p" for integers)."""
    return str(q)


def point(*coords) -> Point:
    return tuple(rational(c) for c in coords)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise InvalidInput(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """z-component of (a - o) x (b - o); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def signed_area(points: Sequence[Point]) -> Fraction:
    """Shoelace formula; positive for counterclockwise vertex order."""
    n = len(points)
    twice = Fraction(0)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        twice += x0 * y1 - x1 * y0
    return twice / 2


def _drop_redundant(points: list) -> list:
    # repeated points and collinear middle vertices (including spikes)
    pts = list(points)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            prev, cur, nxt = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if cur == prev or cross(prev, cur, nxt) == 0:
                del pts[i]
                changed = True
                break
    if len(pts) == 2 and pts[0] == pts[1]:
        pts = pts[:1]
    return pts


def _segments_intersect(p1, p2, q1, q2) -> bool:
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and \
            ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True
    return (d1 == 0 and _on_segment(p1, q1, q2)) or (d2 == 0 and _on_segment(p2, q1, q2)) or \
        (d3 == 0 and _on_segment(q1, p1, p2)) or (d4 == 0 and _on_segment(q2, p1, p2))


def _on_segment(p, a, b) -> bool:
    """p collinear with a, b is assumed; checks p lies between them."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def point_on_segment(p, a, b) -> bool:
    return cross(a, b, p) == 0 and _on_segment(p, a, b)


def is_simple(points: Sequence[Point]) -> bool:
    """True if the closed polyline through ``points`` does not self-intersect."""
    n = len(points)
    if n < 3:
        return False
    edges = [(points[i], points[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges share an endpoint; callers have dropped collinear vertices
                continue
            if _segments_intersect(*edges[i], *edges[j]):
                return False
    return True


@dataclass(frozen=True)
class Polygon:
    """A simple polygon with exact rational vertices, in canonical form."""

    vertices: tuple

    def __post_init__(self):
        pts = [point(*v) for v in self.vertices]
        if any(len(p) != 2 for p in pts):
            raise InvalidInput("polygon vertices must be 2-d points")
        pts = _drop_redundant(pts)
        if len(pts) < 3 or signed_area(pts) == 0:
            raise InvalidInput("degenerate polygon (zero area)")
        if signed_area(pts) < 0:
            pts.reverse()
        if not is_simple(pts):
            raise InvalidInput("polygon is not simple")
        start = min(range(len(pts)), key=lambda i: pts[i])
        pts = pts[start:] + pts[:start]
        object.__setattr__(self, "vertices", tuple(pts))

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def scaled(self, factor) -> "Polygon":
        factor = rational(factor)
        return Polygon(tuple((factor * x, factor * y) for x, y in self.vertices))


@dataclass(frozen=True)
class UnimodularAffine:
    """x -> matrix @ x + translation with an integer matrix of determinant 1."""

    matrix: tuple = ((1, 0), (0, 1))
    translation: tuple = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if any(not isinstance(e, int) for e in (a, b, c, d)):
            raise InvalidInput("matrix entries must be integers")
        if a * d - b * c != 1:
            raise InvalidInput(f"determinant must be 1, got {a * d - b * c}")
        object.__setattr__(self, "translation", point(*self.translation))

    def __call__(self, p: Point) -> Point:
        (a, b), (c, d) = self.matrix
        tx, ty = self.translation
        return (a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty)

    @classmethod
    def shear_x(cls):
        """[[1,1],[0,1]]"""
        return cls(((1, 1), (0, 1)))

    @classmethod
    def shear_y(cls):
        """[[1,0],[1,1]]"""
        return cls(((1, 0), (1, 1)))


def _vertex_list(P) -> list:
    if isinstance(P, Polygon):
        return list(P.vertices)
    if hasattr(P, "vertices"):
        return list(P.vertices)
    return [point(*v) for v in P]


def support_max(P, v) -> Fraction:
    """max over the region of <v, x>, evaluated on the vertices.

    ``P`` is a Polygon, a region object with ``vertices``, or any vertex list
    in R^n (for n >= 3 regions given by their vertices).
    """
    verts = _vertex_list(P)
    if not verts:
        raise InvalidInput("empty vertex list")
    v = point(*v)
    return max(dot(v, x) for x in verts)


def boundary_min(chain, v) -> Fraction:
    """min of <v, x> over a closed polyline, given as its vertices.

    Accepts a region exposing ``positive_boundary`` or a bare vertex chain.
    """
    pts = getattr(chain, "positive_boundary", chain)
    pts = [point(*p) for p in pts]
    if not pts:
        raise InvalidInput("empty positive boundary")
    v = point(*v)
    return min(dot(v, x) for x in pts)


def polygon_area(P) -> Fraction:
    verts = _vertex_list(P)
    area = abs(signed_area(verts))
    if area == 0:
        raise InvalidInput("degenerate polygon (zero area)")
    return area


def affine_image(P: Polygon, A: UnimodularAffine) -> Polygon:
    return Polygon(tuple(A(p) for p in P.vertices))


def point_in_polygon(p: Point, P: Polygon) -> bool:
    """Closed containment test (boundary counts as inside)."""
    verts = P.vertices
    n = len(verts)
    for i in range(n):
        if point_on_segment(p, verts[i], verts[(i + 1) % n]):
            return True
    inside = False
    px, py = p
    for i in range(n):
        (x0, y0), (x1, y1) = verts[i], verts[(i + 1) % n]
        if (y0 > py) != (y1 > py):
            x_at = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if x_at > px:
                inside = not inside
    return inside


def _segment_params(a, b, c, d) -> list:
    """Parameters t in (0,1) where segment a->b meets segment c->d."""
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    denom = rx * sy - ry * sx
    out = []
    if denom == 0:
        if cross(a, b, c) != 0:
            return out
        rr = rx * rx + ry * ry
        for q in (c, d):
            t = ((q[0] - a[0]) * rx + (q[1] - a[1]) * ry) / rr
            if 0 < t < 1:
                out.append(t)
        return out
    qx, qy = c[0] - a[0], c[1] - a[1]
    t = (qx * sy - qy * sx) / denom
    u = (qx * ry - qy * rx) / denom
    if 0 < t < 1 and 0 <= u <= 1:
        out.append(t)
    return out


def segment_in_polygon(a: Point, b: Point, P: Polygon) -> bool:
    """Closed containment of the segment [a, b] in P.

    The segment is cut at every crossing with P's boundary; each piece lies
    entirely inside or outside, so checking its endpoints and midpoint decides.
    """
    cuts = {Fraction(0), Fraction(1)}
    for c, d in P.edges():
        cuts.update(_segment_params(a, b, c, d))
    ts = sorted(cuts)
    at = lambda t: (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))  # noqa: E731
    for t in ts:
        if not point_in_polygon(at(t), P):
            return False
    for t0, t1 in zip(ts, ts[1:]):
        if not point_in_polygon(at((t0 + t1) / 2), P):
            return False
    return True


def polygon_contains(outer: Polygon, inner: Polygon) -> bool:
    """True iff inner is a subset of outer (both closed).

    For simple polygons it is enough that inner's boundary lies in outer.
    """
    return all(segment_in_polygon(a, b, outer) for a, b in inner.edges())
