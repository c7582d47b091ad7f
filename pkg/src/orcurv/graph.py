"""Immutable weighted simple graphs, edge-list I/O, hop metric and triangle statistics.

Vertices are dense integer indices ``0..n-1``; external labels are kept only
for I/O.  Weights are exact :class:`fractions.Fraction` values, and unweighted
graphs carry weight 1 on every edge.  The metric is always the hop (edge
count) metric; weights only enter degrees and measures.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegreeError,
    DuplicateEdgeError,
    EdgeListParseError,
    GraphError,
    IsolatedVertexError,
    LoopError,
    NonPositiveWeightError,
    NotAdjacentError,
)

_ONE = Fraction(1)


class Graph:
    """Undirected simple graph with positive rational edge weights.

    Build one with :meth:`from_edges` or :func:`load_edge_list`.  Instances
    are never mutated after construction; the BFS cache is an internal
    memo that does not change any observable value.
    """

    __slots__ = ("labels", "adjacency", "weighted", "_index", "_nbr_sets", "_weights",
                 "_degrees", "_bfs_cache")

    def __init__(self, labels: Sequence[str], adjacency: Sequence[Sequence[tuple[int, Fraction]]],
                 weighted: bool = False):
        self.labels: tuple[str, ...] = tuple(str(lab) for lab in labels)
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("vertex labels must be unique")
        n = len(self.labels)
        if len(adjacency) != n:
            raise GraphError("adjacency size does not match label count")
        adj = []
        weights: dict[tuple[int, int], Fraction] = {}
        for u, row in enumerate(adjacency):
            entries = sorted((int(v), Fraction(w)) for v, w in row)
            seen = set()
            for v, w in entries:
                if not 0 <= v < n:
                    raise GraphError(f"neighbor index {v} out of range")
                if v == u:
                    raise GraphError(f"loop at vertex {self.labels[u]!r}")
                if v in seen:
                    raise GraphError(f"parallel edge {self.labels[u]!r}-{self.labels[v]!r}")
                if w <= 0:
                    raise GraphError(f"nonpositive weight on {self.labels[u]!r}-{self.labels[v]!r}")
                seen.add(v)
                weights[u, v] = w
            adj.append(tuple(entries))
        for (u, v), w in weights.items():
            if weights.get((v, u)) != w:
                raise GraphError(f"asymmetric edge {self.labels[u]!r}-{self.labels[v]!r}")
        self.adjacency: tuple[tuple[tuple[int, Fraction], ...], ...] = tuple(adj)
        self.weighted = bool(weighted)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._nbr_sets = tuple(frozenset(v for v, _ in row) for row in adj)
        self._weights = weights
        self._degrees = tuple(sum((w for _, w in row), Fraction(0)) for row in adj)
        self._bfs_cache: dict[tuple[int, int | None], dict[int, int]] = {}

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], labels: Sequence[str] | None = None,
                   weighted: bool = False) -> "Graph":
        """Build a graph from ``(u, v)`` or ``(u, v, w)`` label tuples.

        Labels are assigned in first-seen order unless ``labels`` is given,
        in which case it fixes the vertex order (and may add isolated vertices).
        """
        order: list[str] = [str(lab) for lab in labels] if labels is not None else []
        index = {lab: i for i, lab in enumerate(order)}
        rows: list[list[tuple[int, Fraction]]] = [[] for _ in order]
        for edge in edges:
            u, v = str(edge[0]), str(edge[1])
            w = Fraction(edge[2]) if len(edge) > 2 else _ONE
            for lab in (u, v):
                if lab not in index:
                    index[lab] = len(order)
                    order.append(lab)
                    rows.append([])
            rows[index[u]].append((index[v], w))
            rows[index[v]].append((index[u], w))
        return cls(order, rows, weighted=weighted)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count}, weighted={self.weighted})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.labels == other.labels and self.adjacency == other.adjacency
                and self.weighted == other.weighted)

    def __hash__(self) -> int:
        return hash((self.labels, self.adjacency, self.weighted))

    def __getstate__(self):
        return (self.labels, self.adjacency, self.weighted)

    def __setstate__(self, state):
        labels, adjacency, weighted = state
        Graph.__init__(self, labels, adjacency, weighted)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    @property
    def has_unit_weights(self) -> bool:
        return all(w == 1 for w in self._weights.values())

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def neighbors(self, x: int) -> list[int]:
        return [v for v, _ in self.adjacency[x]]

    def neighbor_set(self, x: int) -> frozenset[int]:
        return self._nbr_sets[x]

    def adjacent(self, x: int, y: int) -> bool:
        return y in self._nbr_sets[x]

    def weight(self, x: int, y: int) -> Fraction:
        """Edge weight, 0 for non-adjacent pairs."""
        return self._weights.get((x, y), Fraction(0))

    def degree(self, x: int) -> Fraction:
        """Weighted degree ``sum of w_xy`` over neighbors."""
        return self._degrees[x]

    def unweighted_degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.adjacency) for v, _ in row if u < v]

    def check_vertex(self, x: int) -> None:
        if not 0 <= x < self.vertex_count:
            raise GraphError(f"vertex index {x} out of range")

    def require_edge(self, x: int, y: int) -> None:
        self.check_vertex(x)
        self.check_vertex(y)
        if not self.adjacent(x, y):
            raise NotAdjacentError(f"{self.labels[x]!r} and {self.labels[y]!r} are not adjacent")


_WEIGHT_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/[+-]?\d+)?$")


def _parse_weight(token: str, line_no: int) -> Fraction:
    if not _WEIGHT_RE.match(token):
        raise EdgeListParseError(line_no, f"malformed weight {token!r}")
    try:
        w = Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise EdgeListParseError(line_no, f"malformed weight {token!r}") from exc
    if w <= 0:
        raise NonPositiveWeightError(line_no, f"weight must be positive, got {token}")
    return w


def load_edge_list(text: str | bytes, weighted: bool = False) -> Graph:
    """Parse an edge list.

    Each non-blank line is ``u v`` or ``u v w``; ``#`` starts a comment.  A
    line with a single label declares a vertex without adding an edge (used
    to round-trip isolated vertices).  Weights are decimals or ``p/q``
    literals and are only accepted when ``weighted`` is true.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    labels: list[str] = []
    index: dict[str, int] = {}
    rows: list[list[tuple[int, Fraction]]] = []
    seen_pairs: dict[frozenset, int] = {}

    def vertex(lab: str) -> int:
        if lab not in index:
            index[lab] = len(labels)
            labels.append(lab)
            rows.append([])
        return index[lab]

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) == 1:
            vertex(tokens[0])
            continue
        if len(tokens) > 3:
            raise EdgeListParseError(line_no, f"expected 'u v [w]', got {len(tokens)} fields")
        u, v = tokens[0], tokens[1]
        if len(tokens) == 3:
            if not weighted:
                raise EdgeListParseError(line_no, "weight column given for an unweighted graph")
            w = _parse_weight(tokens[2], line_no)
        else:
            w = _ONE
        if u == v:
            raise LoopError(line_no, f"loop at {u!r}")
        key = frozenset((u, v))
        if key in seen_pairs:
            raise DuplicateEdgeError(line_no, f"edge {u!r}-{v!r} already declared on line {seen_pairs[key]}")
        seen_pairs[key] = line_no
        iu, iv = vertex(u), vertex(v)
        rows[iu].append((iv, w))
        rows[iv].append((iu, w))
    return Graph(labels, rows, weighted=weighted)


def serialize_edge_list(g: Graph) -> str:
    """Inverse of :func:`load_edge_list`: reloading gives an identical graph."""
    lines = []
    for v in range(g.vertex_count):
        earlier = [(u, w) for u, w in g.adjacency[v] if u < v]
        if not earlier:
            lines.append(g.labels[v])
        for u, w in earlier:
            if g.weighted:
                lines.append(f"{g.labels[u]} {g.labels[v]} {w}")
            else:
                lines.append(f"{g.labels[u]} {g.labels[v]}")
    return "\n".join(lines) + ("\n" if lines else "")


def _bfs(g: Graph, x: int, cap: int | None) -> dict[int, int]:
    key = (x, cap)
    cached = g._bfs_cache.get(key)
    if cached is not None:
        return cached
    dist = {x: 0}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cap is not None and du >= cap:
            continue
        for v, _ in g.adjacency[u]:
            if v not in dist:
                dist[v] = du + 1
                queue.append(v)
    g._bfs_cache[key] = dist
    return dist


def distances_from(g: Graph, x: int, cap: int | None = None) -> dict[int, int]:
    """Hop distances from ``x`` to every vertex within ``cap`` hops (all reachable if None)."""
    g.check_vertex(x)
    return _bfs(g, x, cap)


def hop_distance(g: Graph, x: int, y: int, cap: int | None = None) -> int | None:
    """Shortest-path edge count between x and y, or None if unreachable (or beyond cap)."""
    g.check_vertex(x)
    g.check_vertex(y)
    return _bfs(g, x, cap).get(y)


def ball(g: Graph, x: int, r: int) -> set[int]:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    g.check_vertex(x)
    return set(_bfs(g, x, r))


def sphere(g: Graph, x: int, r: int) -> list[int]:
    """Vertices at hop distance exactly r, sorted."""
    return sorted(v for v, d in _bfs(g, x, r).items() if d == r)


def common_neighbors(g: Graph, x: int, y: int) -> list[int]:
    a, b = g.adjacency[x], g.adjacency[y]
    i = j = 0
    out = []
    while i < len(a) and j < len(b):
        u, v = a[i][0], b[j][0]
        if u == v:
            out.append(u)
            i += 1
            j += 1
        elif u < v:
            i += 1
        else:
            j += 1
    return out


def triangle_count(g: Graph, x: int, y: int) -> int:
    """Number of triangles through the edge xy."""
    g.require_edge(x, y)
    return len(common_neighbors(g, x, y))


def clustering_coefficient(g: Graph, x: int) -> Fraction:
    """Watts-Strogatz local clustering coefficient (ignores weights)."""
    g.check_vertex(x)
    k = g.unweighted_degree(x)
    if k < 2:
        raise DegreeError(f"clustering coefficient needs degree >= 2 at {g.labels[x]!r}, got {k}")
    total = sum(len(common_neighbors(g, x, y)) for y in g.neighbors(x))
    return Fraction(total, k * (k - 1))


@dataclass(frozen=True)
class DegreeSummary:
    d: tuple[Fraction, ...]
    D: tuple[Fraction, ...]
    D_w: tuple[Fraction, ...]


def max_neighbor_degree(g: Graph, x: int) -> Fraction:
    if not g.adjacency[x]:
        raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")
    return max(g.degree(y) for y in g.neighbors(x))


def max_weighted_neighbor_ratio(g: Graph, x: int) -> Fraction:
    """``max over y~x of d_y / w_yx``."""
    if not g.adjacency[x]:
        raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")
    return max(g.degree(y) / w for y, w in g.adjacency[x])


def degree_summary(g: Graph) -> DegreeSummary:
    for x in range(g.vertex_count):
        if not g.adjacency[x]:
            raise IsolatedVertexError(f"vertex {g.labels[x]!r} is isolated")
    n = g.vertex_count
    return DegreeSummary(
        d=tuple(g.degree(x) for x in range(n)),
        D=tuple(max_neighbor_degree(g, x) for x in range(n)),
        D_w=tuple(max_weighted_neighbor_ratio(g, x) for x in range(n)),
    )


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    comp = [-1] * g.vertex_count
    blocks = []
    for s in range(g.vertex_count):
        if comp[s] >= 0:
            continue
        members = sorted(_bfs(g, s, None))
        for v in members:
            comp[v] = len(blocks)
        blocks.append(members)
    return blocks


def component_ids(g: Graph) -> list[int]:
    comp = [0] * g.vertex_count
    for i, block in enumerate(connected_components(g)):
        for v in block:
            comp[v] = i
    return comp


def is_connected(g: Graph) -> bool:
    return g.vertex_count == 0 or len(_bfs(g, 0, None)) == g.vertex_count


def is_tree(g: Graph) -> bool:
    return g.vertex_count > 0 and g.edge_count == g.vertex_count - 1 and is_connected(g)


def diameter(g: Graph) -> int:
    """Hop diameter of a connected graph."""
    best = 0
    for x in range(g.vertex_count):
        dist = _bfs(g, x, None)
        if len(dist) != g.vertex_count:
            raise GraphError("diameter of a disconnected graph is infinite")
        best = max(best, max(dist.values()))
    return best


def label_key(label: str):
    """Sort key ordering numeric labels numerically and before other labels."""
    return (0, int(label), label) if label.isdigit() else (1, 0, label)
