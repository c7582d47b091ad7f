"""Ollivier-Ricci curvature and its triangle/clustering bounds.

Every quantity here is an exact rational.  The weighted formulas are used
throughout; with unit weights they reduce exactly to the unweighted ones
(the sum of per-common-neighbor minima becomes ``#(x,y) / max(d_x, d_y)``
and the sum of maxima becomes ``#(x,y) / min(d_x, d_y)``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from . import _pool
from .errors import (
    ComponentError,
    CurvatureError,
    DegreeError,
    SameVertexError,
    WeightedGraphError,
)
from .graph import (
    Graph,
    clustering_coefficient,
    common_neighbors,
    hop_distance,
    label_key,
    max_neighbor_degree,
)
from .measure import intersection_mass, random_walk_measure, union_excess_mass
from .transport import TransportResult, wasserstein1

_ZERO = Fraction(0)


def _pos(q: Fraction) -> Fraction:
    return q if q > 0 else _ZERO


class CaseTag(str, Enum):
    """Which steps of the two-step transfer plan are feasible for an edge."""

    A_NONNEG = "A_NONNEG"
    A_NEG_B_NONNEG = "A_NEG_B_NONNEG"
    B_NEG = "B_NEG"


@dataclass(frozen=True)
class TriangleMargins:
    A: Fraction
    B: Fraction
    overlap: Fraction
    tag: CaseTag


def triangle_margins(g: Graph, x: int, y: int) -> TriangleMargins:
    """Margins A <= B of the transfer plan and the overlap ``m_x ^ m_y``."""
    g.require_edge(x, y)
    w = g.weight(x, y)
    base = 1 - w / g.degree(x) - w / g.degree(y)
    overlap = intersection_mass(g, x, y)
    A = base - union_excess_mass(g, x, y)
    B = base - overlap
    if A >= 0:
        tag = CaseTag.A_NONNEG
    elif B >= 0:
        tag = CaseTag.A_NEG_B_NONNEG
    else:
        tag = CaseTag.B_NEG
    return TriangleMargins(A, B, overlap, tag)


def _same_component_distance(g: Graph, x: int, y: int) -> int:
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise SameVertexError(f"curvature needs two distinct vertices, got {g.labels[x]!r} twice")
    d = hop_distance(g, x, y)
    if d is None:
        raise ComponentError(f"{g.labels[x]!r} and {g.labels[y]!r} lie in different components")
    return d


def ricci_transport(g: Graph, x: int, y: int) -> tuple[Fraction, TransportResult, int]:
    """Curvature together with the transport certificate and hop distance."""
    d = _same_component_distance(g, x, y)
    mx, my = random_walk_measure(g, x), random_walk_measure(g, y)
    result = wasserstein1(g, mx, my, cap=d + 2)
    return 1 - result.value / d, result, d


def ricci(g: Graph, x: int, y: int) -> Fraction:
    """``1 - W1(m_x, m_y) / d(x, y)``."""
    return ricci_transport(g, x, y)[0]


def lower_bound_linyau(g: Graph, x: int, y: int) -> Fraction:
    g.require_edge(x, y)
    w = g.weight(x, y)
    return -2 * _pos(1 - w / g.degree(x) - w / g.degree(y))


def lower_bound_triangle(g: Graph, x: int, y: int) -> tuple[Fraction, CaseTag]:
    t = triangle_margins(g, x, y)
    return -_pos(t.A) - _pos(t.B) + t.overlap, t.tag


def upper_bound_triangle(g: Graph, x: int, y: int) -> Fraction:
    return intersection_mass(g, x, y)


def min_triangles_for_positive(g: Graph, x: int, y: int, k) -> int:
    """Least triangle count through xy compatible with curvature >= k > 0."""
    g.require_edge(x, y)
    k = Fraction(k)
    if k <= 0:
        raise ValueError("k must be positive")
    return math.ceil(k * max(g.unweighted_degree(x), g.unweighted_degree(y)))


@dataclass(frozen=True)
class EdgeCurvatureReport:
    """Curvature of a vertex pair; bound fields are None for non-adjacent pairs."""

    x: int
    y: int
    distance: int
    d_x: Fraction
    d_y: Fraction
    kappa: Fraction
    w1: Fraction
    sharp: int | None = None
    case_tag: CaseTag | None = None
    lower_linyau: Fraction | None = None
    lower_triangle: Fraction | None = None
    upper_triangle: Fraction | None = None
    lower_tight: bool | None = None
    upper_tight: bool | None = None
    transport: TransportResult | None = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class PairFailure:
    x: int
    y: int
    error: str


def edge_report(g: Graph, x: int, y: int) -> EdgeCurvatureReport:
    kappa, tr, d = ricci_transport(g, x, y)
    common = dict(x=x, y=y, distance=d, d_x=g.degree(x), d_y=g.degree(y), kappa=kappa,
                  w1=tr.value, transport=tr)
    if d != 1:
        return EdgeCurvatureReport(**common)
    lower, tag = lower_bound_triangle(g, x, y)
    upper = upper_bound_triangle(g, x, y)
    return EdgeCurvatureReport(
        **common,
        sharp=len(common_neighbors(g, x, y)),
        case_tag=tag,
        lower_linyau=lower_bound_linyau(g, x, y),
        lower_triangle=lower,
        upper_triangle=upper,
        lower_tight=kappa == lower,
        upper_tight=kappa == upper,
    )


def _report_or_failure(g: Graph, pair: tuple[int, int]):
    x, y = pair
    try:
        return edge_report(g, x, y)
    except CurvatureError as exc:
        return PairFailure(x, y, str(exc))


def oriented(g: Graph, x: int, y: int) -> tuple[int, int]:
    return (x, y) if label_key(g.labels[x]) <= label_key(g.labels[y]) else (y, x)


def pair_sort_key(g: Graph, pair: tuple[int, int]):
    return (label_key(g.labels[pair[0]]), label_key(g.labels[pair[1]]))


def all_pairs(g: Graph) -> list[tuple[int, int]]:
    n = g.vertex_count
    return [(x, y) for x in range(n) for y in range(x + 1, n)]


def graph_report(g: Graph, pairs: Iterable[tuple[int, int]] | None = None,
                 workers: int = 1) -> list[EdgeCurvatureReport | PairFailure]:
    """Reports for the selected pairs (all edges by default), sorted by vertex labels.

    Pair errors become :class:`PairFailure` rows instead of aborting the batch.
    """
    if pairs is None:
        pairs = g.edges()
    todo = sorted({oriented(g, x, y) for x, y in pairs}, key=lambda p: pair_sort_key(g, p))
    return _pool.map_over(g, _report_or_failure, todo, workers)


@dataclass(frozen=True)
class ScalarCurvatureReport:
    x: int
    degree: int
    mean_kappa: Fraction
    c: Fraction
    upper: Fraction
    lower: Fraction
    refined_lower: Fraction | None
    case_tag: CaseTag | None


def scalar_report(g: Graph, x: int) -> ScalarCurvatureReport:
    """Mean curvature around x against the clustering-coefficient sandwich.

    The refined lower bound is filled in only when every edge at x falls in
    the same transfer-plan case.
    """
    if not g.has_unit_weights:
        raise WeightedGraphError("the clustering sandwich is stated for unweighted graphs")
    g.check_vertex(x)
    dx = g.unweighted_degree(x)
    if dx < 2:
        raise DegreeError(f"scalar curvature needs degree >= 2 at {g.labels[x]!r}, got {dx}")
    nbrs = g.neighbors(x)
    mean = sum((ricci(g, x, y) for y in nbrs), _ZERO) / dx
    c = clustering_coefficient(g, x)
    D = max_neighbor_degree(g, x)
    top = max(D, dx)
    upper = Fraction(dx - 1, dx) * c
    lower = -2 + (dx - 1) / top * c
    tags = {triangle_margins(g, x, y).tag for y in nbrs}
    tag = tags.pop() if len(tags) == 1 else None
    refined = None
    if tag is CaseTag.A_NONNEG:
        refined = -2 + Fraction(2, dx) + 2 / D + (Fraction(dx - 1, dx) + 2 * (dx - 1) / top) * c
    elif tag is CaseTag.A_NEG_B_NONNEG:
        refined = -1 + Fraction(1, dx) + 1 / D + 2 * (dx - 1) / top * c
    elif tag is CaseTag.B_NEG:
        refined = (dx - 1) / top * c
    return ScalarCurvatureReport(x, dx, mean, c, upper, lower, refined, tag)
