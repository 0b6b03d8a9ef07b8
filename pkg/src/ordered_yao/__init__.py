"""Ordered k-sector Yao graphs: builders, ordering strategies, extremal point sets and oracles."""

from .geometry import (
    GeometryError,
    Point,
    PointSet,
    SectorParams,
    dual_sector_index,
    is_general_position,
    perturb,
    sector_index,
    x_prime,
)
from .yao import (
    GraphStats,
    OrderedYaoGraph,
    Ordering,
    PairTable,
    build_ordered,
    build_unordered,
    clique_number,
    stats,
)
from .orderings import STRATEGIES, Bound, StrategyError, StrategyOutcome
from .constructions import CONSTRUCTIONS, ConstructionSpec, generate
from .oracle import GuardError, SearchSpec, certify_bound, search

__version__ = "0.1.0"
