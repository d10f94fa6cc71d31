"""Ball-packing weight expansions of concave toric domains.

A concave region Omega is cut into the largest corner triangle T(w_1) and
two remainders; each remainder is moved back to the origin by a unimodular
affine map and expanded in turn. For a triangle T(a, b) this reduces to the
Euclidean algorithm, which :func:`weights_ellipsoid` implements directly and
independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .domains import ToricRegion2D
from .errors import InvalidInput, NonTermination
from .geometry import Polygon, UnimodularAffine, polygon_area, rational, signed_area

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class ExpansionNode:
    path: str  # "" for the root, then "L"/"U" per step into lower/upper remainders
    region: Polygon
    peeled: Fraction


@dataclass(frozen=True)
class WeightSequence:
    weights: tuple
    nodes: tuple = ()

    def __post_init__(self):
        ws = tuple(sorted((rational(w) for w in self.weights), reverse=True))
        if any(w <= 0 for w in ws):
            raise InvalidInput("weights must be positive")
        object.__setattr__(self, "weights", ws)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    @property
    def sum_sq(self) -> Fraction:
        return sum((w * w for w in self.weights), Fraction(0))


def _child(points, move: UnimodularAffine):
    if signed_area(points) == 0:
        return None
    return ToricRegion2D(Polygon(tuple(move(p) for p in points)))


def peel(omega: ToricRegion2D):
    """Remove the largest corner triangle T(w) from a concave region.

    Returns (w, lower, upper) where lower/upper are the remainders in
    canonical position, or None when the remainder has no area.
    """
    chain = omega.positive_boundary
    sums = [x + y for x, y in chain]
    w = min(sums)
    first = sums.index(w)
    last = len(sums) - 1 - sums[::-1].index(w)

    # lower piece has its corner at (w, 0); the shear [[1,1],[0,1]] straightens
    # the cut edge of direction (-1, 1) onto the y-axis
    lower_pts = [(w, Fraction(0))] + list(chain[: first + 1])
    lower_move = UnimodularAffine(((1, 1), (0, 1)), (-w, 0))
    # upper piece has its corner at (0, w); [[1,0],[1,1]] sends (1, -1) to (1, 0)
    upper_pts = list(chain[last:]) + [(Fraction(0), w)]
    upper_move = UnimodularAffine(((1, 0), (1, 1)), (0, -w))
    return w, _child(lower_pts, lower_move), _child(upper_pts, upper_move)


def weights_concave(omega: ToricRegion2D, max_steps: int = DEFAULT_MAX_STEPS) -> WeightSequence:
    """Weight sequence w_1 >= w_2 >= ... of a concave polygonal region."""
    if not isinstance(omega, ToricRegion2D):
        raise InvalidInput("weights_concave needs a ToricRegion2D")
    if not omega.flags.concave:
        raise InvalidInput("weight expansion is defined for concave regions only")
    if max_steps < 1:
        raise InvalidInput("max_steps must be at least 1")
    stack = [("", omega)]
    nodes = []
    while stack:
        if len(nodes) >= max_steps:
            residual = sum((r.area for _, r in stack), Fraction(0))
            raise NonTermination(
                f"weight expansion did not finish within {max_steps} steps", residual_area=residual
            )
        path, current = stack.pop()
        w, lower, upper = peel(current)
        nodes.append(ExpansionNode(path, current.polygon, w))
        if upper is not None:
            stack.append((path + "U", upper))
        if lower is not None:
            stack.append((path + "L", lower))
    return WeightSequence(tuple(n.peeled for n in nodes), tuple(nodes))


def weights_ellipsoid(a, b) -> WeightSequence:
    """Weights of E(a, b): a repeated floor(b/a) times, then recurse on the remainder."""
    a, b = rational(a), rational(b)
    if a <= 0 or b <= 0:
        raise InvalidInput("ellipsoid axes must be positive")
    out = []
    while a > 0:
        if a > b:
            a, b = b, a
        q = b // a
        out.extend([a] * int(q))
        a, b = b - q * a, a
    return WeightSequence(tuple(out))


def check_conservation(omega: ToricRegion2D, seq: WeightSequence) -> bool:
    """Sum of squared weights equals twice the area of Omega."""
    return seq.sum_sq == 2 * polygon_area(omega.polygon)
