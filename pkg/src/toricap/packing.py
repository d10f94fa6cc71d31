"""Four-dimensional ball packing: does a disjoint union of balls B(w_i) fit into B(mu)?

Two deciders. :func:`cremona_feasible` runs Cremona reduction on the integer
vector (mu; w_1, ..., w_n) and always reaches a verdict. :func:`ech_feasible`
compares ECH capacity sequences up to a horizon; it can only ever prove
infeasibility, so it serves as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .capacities import DEFAULT_HORIZON, _ech_balls_int, _ech_ellipsoid_int
from .domains import ToricRegion2D, axis_data
from .errors import InvalidInput, UndecidedError
from .geometry import rational
from .weights import DEFAULT_MAX_STEPS, WeightSequence, weights_concave

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
INCONCLUSIVE = "inconclusive"
DEFAULT_REDUCTION_STEPS = 10**6


@dataclass(frozen=True)
class PackingInstance:
    mu: Fraction
    weights: tuple

    def __post_init__(self):
        mu = rational(self.mu)
        if mu <= 0:
            raise InvalidInput("target ball size mu must be positive")
        ws = self.weights.weights if isinstance(self.weights, WeightSequence) else self.weights
        ws = tuple(sorted((rational(w) for w in ws), reverse=True))
        if not ws or any(w <= 0 for w in ws):
            raise InvalidInput("weights must be a non-empty list of positive rationals")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "weights", ws)

    @property
    def scale(self) -> int:
        return math.lcm(self.mu.denominator, *(w.denominator for w in self.weights))

    def integer_vector(self) -> tuple:
        """(mu; w_1, ...) multiplied by the common denominator."""
        L = self.scale
        return int(self.mu * L), tuple(int(w * L) for w in self.weights)

    def scaled(self, factor) -> "PackingInstance":
        factor = rational(factor)
        return PackingInstance(self.mu * factor, tuple(w * factor for w in self.weights))


@dataclass(frozen=True)
class ReductionStep:
    before: tuple  # (mu, w_1, w_2, ...) on the integer scale
    defect: int
    after: tuple


@dataclass(frozen=True)
class ReductionTrace:
    verdict: str
    scale: int
    steps: tuple = ()
    certificate: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.verdict == FEASIBLE


def cremona_feasible(inst: PackingInstance, max_steps: int = DEFAULT_REDUCTION_STEPS) -> ReductionTrace:
    """Decide the packing by Cremona reduction.

    Each move sends (mu; w1, w2, w3, ...) to (mu + d; w1 + d, w2 + d, w3 + d, ...)
    with d = mu - w1 - w2 - w3 < 0. A reduced vector (d >= 0) packs iff it is
    non-negative and sum w_i^2 <= mu^2; the move preserves the answer.
    """
    mu, ws = inst.integer_vector()
    ws = list(ws)
    steps = []
    while True:
        ws = sorted((w for w in ws if w != 0), reverse=True)
        vector = (mu, *ws)
        if ws and ws[-1] < 0:
            return ReductionTrace(INFEASIBLE, inst.scale, tuple(steps),
                                  {"reason": "negative entry", "vector": vector})
        if ws and ws[0] > mu:
            return ReductionTrace(INFEASIBLE, inst.scale, tuple(steps),
                                  {"reason": "ball larger than target", "vector": vector})
        padded = ws + [0] * max(0, 3 - len(ws))
        defect = mu - padded[0] - padded[1] - padded[2]
        if defect >= 0:
            sq = sum(w * w for w in ws)
            if sq <= mu * mu:
                return ReductionTrace(FEASIBLE, inst.scale, tuple(steps),
                                      {"reason": "reduced", "vector": vector})
            return ReductionTrace(INFEASIBLE, inst.scale, tuple(steps),
                                  {"reason": "volume", "vector": vector, "sum_sq": sq, "mu_sq": mu * mu})
        if len(steps) >= max_steps:
            return ReductionTrace(INCONCLUSIVE, inst.scale, tuple(steps),
                                  {"reason": "step limit", "vector": vector})
        new = [w + defect for w in padded[:3]] + padded[3:]
        mu += defect
        steps.append(ReductionStep(vector, defect, (mu, *new)))
        ws = new


@dataclass(frozen=True)
class EchVerdict:
    verdict: str  # "feasible_up_to_K" or "infeasible"
    horizon: int
    obstruction_k: int | None = None


def ech_feasible(inst: PackingInstance, horizon: int = DEFAULT_HORIZON) -> EchVerdict:
    """Look for k <= horizon with c_k(union of balls) > c_k(B(mu))."""
    if horizon < 1:
        raise InvalidInput("ECH horizon must be at least 1")
    mu, ws = inst.integer_vector()
    target = _ech_ellipsoid_int(mu, mu, horizon)
    union = _ech_balls_int(ws, horizon)
    for k, (u, t) in enumerate(zip(union, target)):
        if u > t:
            return EchVerdict(INFEASIBLE, horizon, k)
    return EchVerdict(f"feasible_up_to_{horizon}", horizon)


@dataclass(frozen=True)
class EmbedResult:
    verdict: str
    mu: Fraction
    weights: WeightSequence
    trace: ReductionTrace


def embed_concave_into_ball(omega: ToricRegion2D, mu, max_steps: int = DEFAULT_MAX_STEPS,
                            reduction_steps: int = DEFAULT_REDUCTION_STEPS) -> EmbedResult:
    """Decide int(X_Omega) -> B(mu) through the weight sequence of Omega."""
    mu = rational(mu)
    seq = weights_concave(omega, max_steps)
    trace = cremona_feasible(PackingInstance(mu, seq.weights), reduction_steps)
    return EmbedResult(trace.verdict, mu, seq, trace)


def simplest_in(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the half-open interval (lo, hi], 0 <= lo < hi."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo < hi:
        raise InvalidInput("need 0 <= lo < hi")
    n = math.floor(lo) + 1
    if n <= hi:
        return Fraction(n)
    base = math.floor(lo)
    if lo == base:
        # q - base lies in (0, hi - base]; its inverse only has a lower bound
        return base + Fraction(1, math.ceil(1 / (hi - base)))
    # q - base lies in (lo - base, hi - base]; invert into [1/(hi-base), 1/(lo-base))
    return base + 1 / _simplest_closed_open(1 / (hi - base), 1 / (lo - base))


def _simplest_closed_open(lo: Fraction, hi: Fraction) -> Fraction:
    n = math.ceil(lo)
    if n < hi:
        return Fraction(n)
    base = math.floor(lo)
    return base + 1 / simplest_in(1 / (hi - base), 1 / (lo - base))


def minimal_mu(weights, resolution, upper=None, max_steps: int = DEFAULT_REDUCTION_STEPS) -> Fraction:
    """Smallest mu (to within ``resolution``) such that the balls pack into B(mu).

    Bisects over the grid resolution * Z, then returns the simplest rational
    in the final bracket if it is feasible, which recovers thresholds with
    small denominators exactly.
    """
    resolution = rational(resolution)
    if resolution <= 0:
        raise InvalidInput("resolution must be positive")
    weights = tuple(rational(w) for w in weights)

    def feasible(mu):
        trace = cremona_feasible(PackingInstance(mu, weights), max_steps)
        if trace.verdict == INCONCLUSIVE:
            raise UndecidedError(f"Cremona reduction inconclusive at mu = {mu}")
        return trace.feasible

    hi_mu = rational(upper) if upper is not None else sum(weights, Fraction(0))
    if not feasible(hi_mu):
        raise UndecidedError(f"upper bracket {hi_mu} is not feasible")
    lo, hi = 0, math.ceil(hi_mu / resolution)
    if not feasible(hi * resolution):
        raise UndecidedError("grid upper bracket is not feasible")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if feasible(mid * resolution):
            hi = mid
        else:
            lo = mid
    candidate = simplest_in(lo * resolution, hi * resolution)
    return candidate if feasible(candidate) else hi * resolution


def min_ball(omega: ToricRegion2D, resolution, max_steps: int = DEFAULT_MAX_STEPS) -> Fraction:
    """Smallest mu with int(X_Omega) -> B(mu), to within ``resolution``."""
    seq = weights_concave(omega, max_steps)
    _, _, w = axis_data(omega)
    return minimal_mu(seq.weights, resolution, upper=w)
