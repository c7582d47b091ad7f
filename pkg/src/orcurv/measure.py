"""One-step random-walk measures and their overlaps."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IsolatedVertexError
from .graph import Graph, common_neighbors


@dataclass(frozen=True)
class VertexMeasure:
    """Finitely supported probability measure on the vertices of a graph.

    ``atoms`` is sorted by vertex index and holds strictly positive masses.
    ``base`` records the vertex the measure is attached to.
    """

    base: int
    atoms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a measure needs at least one atom")
        verts = [v for v, _ in self.atoms]
        if verts != sorted(set(verts)):
            raise ValueError("atoms must be sorted by vertex with no repeats")
        if any(m <= 0 for _, m in self.atoms):
            raise ValueError("atom masses must be positive")
        if sum(m for _, m in self.atoms) != 1:
            raise ValueError("atom masses must sum to 1")

    @property
    def support(self) -> list[int]:
        return [v for v, _ in self.atoms]

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.atoms)

    def mass(self, v: int) -> Fraction:
        return self.as_dict().get(v, Fraction(0))


def random_walk_measure(g: Graph, x: int) -> VertexMeasure:
    """``m_x(y) = w_xy / d_x`` for neighbors y of x."""
    g.check_vertex(x)
    if not g.adjacency[x]:
        raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")
    dx = g.degree(x)
    return VertexMeasure(x, tuple((y, w / dx) for y, w in g.adjacency[x]))


def intersection_mass(g: Graph, x: int, y: int) -> Fraction:
    """Sum over common neighbors z of ``min(w_zx/d_x, w_zy/d_y)``."""
    g.require_edge(x, y)
    dx, dy = g.degree(x), g.degree(y)
    return sum((min(g.weight(z, x) / dx, g.weight(z, y) / dy) for z in common_neighbors(g, x, y)),
               Fraction(0))


def union_excess_mass(g: Graph, x: int, y: int) -> Fraction:
    """Sum over common neighbors z of ``max(w_zx/d_x, w_zy/d_y)``."""
    g.require_edge(x, y)
    dx, dy = g.degree(x), g.degree(y)
    return sum((max(g.weight(z, x) / dx, g.weight(z, y) / dy) for z in common_neighbors(g, x, y)),
               Fraction(0))


def total_variation_overlap_check(mu: VertexMeasure, nu: VertexMeasure) -> Fraction:
    """``sum_z min(mu(z), nu(z))``, the mass of the intersection measure."""
    nd = nu.as_dict()
    return sum((min(m, nd[v]) for v, m in mu.atoms if v in nd), Fraction(0))
