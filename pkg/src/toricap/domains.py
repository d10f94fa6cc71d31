"""Toric domains, represented by their moment images.

A 4-dimensional toric domain X_Omega is handled entirely through the planar
region Omega. Ellipsoids and polydisks of any dimension are kept as axis
tuples; in dimension 2 they convert to the triangle T(a, b) and the
rectangle [0, a] x [0, b].
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInput
from .geometry import (
    Polygon,
    cross,
    fmt,
    polygon_area,
    polygon_contains,
    rational,
    support_max,
)


def _axes(values) -> tuple:
    axes = tuple(rational(a) for a in values)
    if not axes:
        raise InvalidInput("at least one axis is required")
    if any(a <= 0 for a in axes):
        raise InvalidInput(f"axes must be positive, got {[fmt(a) for a in axes]}")
    return axes


@dataclass(frozen=True)
class EllipsoidSpec:
    axes: tuple

    def __post_init__(self):
        object.__setattr__(self, "axes", _axes(self.axes))

    @property
    def dim(self) -> int:
        return len(self.axes)

    def vertices(self) -> list:
        n = self.dim
        zero = tuple(Fraction(0) for _ in range(n))
        verts = [zero]
        for i, a in enumerate(self.axes):
            verts.append(tuple(a if j == i else Fraction(0) for j in range(n)))
        return verts

    def region(self) -> "ToricRegion2D":
        _require_2d(self)
        return triangle(*self.axes)


@dataclass(frozen=True)
class PolydiskSpec:
    axes: tuple

    def __post_init__(self):
        object.__setattr__(self, "axes", _axes(self.axes))

    @property
    def dim(self) -> int:
        return len(self.axes)

    def vertices(self) -> list:
        return [tuple(c) for c in itertools.product(*[(Fraction(0), a) for a in self.axes])]

    def region(self) -> "ToricRegion2D":
        _require_2d(self)
        return rectangle(*self.axes)


def ball(r) -> EllipsoidSpec:
    r = rational(r)
    return EllipsoidSpec((r, r))


def _require_2d(spec):
    if spec.dim != 2:
        raise InvalidInput(f"unsupported dimension {spec.dim}: only 2-d moment images are modelled as polygons")


@dataclass(frozen=True)
class Flags:
    monotone: bool
    concave: bool
    convex: bool

    def as_dict(self) -> dict:
        return {"monotone": self.monotone, "concave": self.concave, "convex": self.convex}


@dataclass(frozen=True)
class ToricRegion2D:
    """Moment image Omega of a 4-d toric domain.

    ``polygon`` starts at the origin and runs counterclockwise:
    (0,0), (a,0), ..., (0,b). ``positive_boundary`` is the closed chain
    from (a,0) to (0,b).
    """

    polygon: Polygon
    flags: Flags = field(init=False)

    def __post_init__(self):
        if not isinstance(self.polygon, Polygon):
            object.__setattr__(self, "polygon", Polygon(tuple(self.polygon)))
        _check_moment_region(self.polygon)
        object.__setattr__(self, "flags", _classify_chain(self.positive_boundary))

    @property
    def vertices(self) -> tuple:
        return self.polygon.vertices

    @property
    def positive_boundary(self) -> tuple:
        return self.polygon.vertices[1:]

    @property
    def intercepts(self) -> tuple:
        chain = self.positive_boundary
        return chain[0][0], chain[-1][1]

    @property
    def area(self) -> Fraction:
        return polygon_area(self.polygon)

    def scaled(self, factor) -> "ToricRegion2D":
        return ToricRegion2D(self.polygon.scaled(factor))

    def swapped(self) -> "ToricRegion2D":
        """Image under (x, y) -> (y, x)."""
        return ToricRegion2D(Polygon(tuple((y, x) for x, y in self.vertices)))


def _check_moment_region(P: Polygon):
    v = P.vertices
    if v[0] != (0, 0):
        raise InvalidInput("moment region must contain the origin as a vertex")
    if any(x < 0 or y < 0 for x, y in v):
        raise InvalidInput("moment region must lie in the closed first quadrant")
    if v[1][1] != 0 or v[1][0] <= 0 or v[-1][0] != 0 or v[-1][1] <= 0:
        raise InvalidInput("moment region must have one edge on each coordinate axis")
    if any(x == 0 or y == 0 for x, y in v[2:-1]):
        raise InvalidInput("positive boundary may meet the axes only at its endpoints")


def _monotone(chain) -> bool:
    # outward normal of a ccw edge (dx, dy) is (dy, -dx)
    return all(b[0] - a[0] <= 0 and b[1] - a[1] >= 0 for a, b in zip(chain, chain[1:]))


def _reflected_boundary(chain) -> list:
    """Boundary of the region reflected into all four quadrants, ccw from (a, 0)."""
    q1 = list(chain)
    q2 = [(-x, y) for x, y in reversed(q1[:-1])]
    q3 = [(-x, -y) for x, y in q1[1:]]
    q4 = [(x, -y) for x, y in reversed(q1[1:-1])]
    return q1 + q2 + q3 + q4


def _is_convex_loop(pts) -> bool:
    n = len(pts)
    return all(cross(pts[i - 1], pts[i], pts[(i + 1) % n]) >= 0 for i in range(n))


def _classify_chain(chain) -> Flags:
    monotone = _monotone(chain)
    concave = monotone and all(cross(chain[i - 1], chain[i], chain[i + 1]) <= 0
                               for i in range(1, len(chain) - 1))
    convex = monotone and _is_convex_loop(_reflected_boundary(chain))
    return Flags(monotone, concave, convex)


def classify(omega) -> Flags:
    """Classify a moment polygon as monotone / concave / convex."""
    if isinstance(omega, ToricRegion2D):
        return omega.flags
    return ToricRegion2D(omega).flags


def region(vertices) -> ToricRegion2D:
    return ToricRegion2D(Polygon(tuple(vertices)))


def triangle(a, b) -> ToricRegion2D:
    """T(a, b), the moment image of E(a, b)."""
    a, b = rational(a), rational(b)
    return region([(0, 0), (a, 0), (0, b)])


def rectangle(a, b) -> ToricRegion2D:
    """Moment image of the polydisk P(a, b)."""
    a, b = rational(a), rational(b)
    return region([(0, 0), (a, 0), (a, b), (0, b)])


def make_veps(eps) -> ToricRegion2D:
    """Q_eps, the quadrilateral (0,0), (1,0), (eps,eps), (0,1)."""
    eps = rational(eps)
    if not 0 < eps < Fraction(1, 2):
        raise InvalidInput(f"eps must lie in (0, 1/2), got {fmt(eps)}")
    return region([(0, 0), (1, 0), (eps, eps), (0, 1)])


def axis_data(omega: ToricRegion2D) -> tuple:
    """(a, b, w): axis intercepts and the smallest r with Omega inside T(r, r)."""
    a, b = omega.intercepts
    w = support_max(omega.positive_boundary, (1, 1))
    return a, b, w


def as_region(obj) -> ToricRegion2D:
    """Coerce a region, 2-d ellipsoid/polydisk, or ball size into a ToricRegion2D."""
    if isinstance(obj, ToricRegion2D):
        return obj
    if isinstance(obj, (EllipsoidSpec, PolydiskSpec)):
        return obj.region()
    if isinstance(obj, Polygon):
        return ToricRegion2D(obj)
    if isinstance(obj, (int, Fraction, str)):
        r = rational(obj)
        return triangle(r, r)
    raise InvalidInput(f"cannot interpret {obj!r} as a 2-d moment region")


def region_contains(inner, outer) -> bool:
    """True iff the closed moment image of ``inner`` lies inside that of ``outer``.

    Operands may be ToricRegion2D, 2-d EllipsoidSpec/PolydiskSpec, or a
    rational r standing for the ball B(r).
    """
    return polygon_contains(as_region(outer).polygon, as_region(inner).polygon)


# -- JSON domain descriptions ------------------------------------------------

DOMAIN_TYPES = ("ellipsoid", "polydisk", "polygon2d", "veps")


def parse_domain(doc):
    """Build a domain from its JSON description (dict or JSON text)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("type") not in DOMAIN_TYPES:
        raise InvalidInput(f"domain must be an object with type in {DOMAIN_TYPES}")
    kind = doc["type"]
    try:
        if kind == "ellipsoid":
            return EllipsoidSpec(tuple(doc["axes"]))
        if kind == "polydisk":
            return PolydiskSpec(tuple(doc["axes"]))
        if kind == "polygon2d":
            verts = doc["vertices"]
            if not all(isinstance(v, (list, tuple)) and len(v) == 2 for v in verts):
                raise InvalidInput("polygon2d vertices must be pairs")
            return region(verts)
        return make_veps(doc["eps"])
    except KeyError as exc:
        raise InvalidInput(f"{kind} domain is missing field {exc}") from None
    except TypeError as exc:
        raise InvalidInput(f"bad {kind} domain: {exc}") from None


def domain_to_json(domain) -> dict:
    if isinstance(domain, EllipsoidSpec):
        return {"type": "ellipsoid", "axes": [fmt(a) for a in domain.axes]}
    if isinstance(domain, PolydiskSpec):
        return {"type": "polydisk", "axes": [fmt(a) for a in domain.axes]}
    if isinstance(domain, ToricRegion2D):
        return {"type": "polygon2d", "vertices": [[fmt(x), fmt(y)] for x, y in domain.vertices]}
    raise InvalidInput(f"cannot serialize {domain!r}")
