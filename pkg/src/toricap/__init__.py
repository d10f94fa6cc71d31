"""Exact computations of symplectic capacities of toric domains."""

from .bounds import (
    c2_convex_4d,
    c2_polydisk,
    highdim_veps_threshold,
    polydisk_gap,
    veps_analysis,
)
from .capacities import ch_concave, ch_convex, ech_sequence, n_k, volume
from .domains import (
    EllipsoidSpec,
    PolydiskSpec,
    ToricRegion2D,
    axis_data,
    classify,
    make_veps,
    parse_domain,
    rectangle,
    region,
    region_contains,
    triangle,
)
from .packing import (
    PackingInstance,
    cremona_feasible,
    ech_feasible,
    embed_concave_into_ball,
    min_ball,
    minimal_mu,
)
from .weights import WeightSequence, weights_concave, weights_ellipsoid

__version__ = "0.1.0"
