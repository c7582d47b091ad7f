"""Named graph families used as test corpora and CLI inputs.

Specs are colon-separated: ``complete:n``, ``cycle:n``, ``path:n``,
``star:k`` (center plus k leaves), ``tree:random:n:seed``,
``gnp:n:p:seed``, ``regular-tree:d:depth`` and ``petersen``.  Random
families use :class:`random.Random` seeded from the spec, so a spec always
names the same graph.
"""
from __future__ import annotations

import heapq
import random
from fractions import Fraction

from .errors import FamilySpecError
from .graph import Graph


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def complete(n: int) -> Graph:
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)], labels=_labels(n))


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilySpecError("a cycle needs at least 3 vertices")
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], labels=_labels(n))


def path(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], labels=_labels(n))


def star(leaves: int) -> Graph:
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], labels=_labels(leaves + 1))


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree on n vertices via a random Pruefer sequence."""
    if n <= 2:
        return path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    remaining = [1] * n
    for v in seq:
        remaining[v] += 1
    leaves = [v for v in range(n) if remaining[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        remaining[v] -= 1
        if remaining[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph.from_edges(edges, labels=_labels(n))


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(edges, labels=_labels(n))


def regular_tree(d: int, depth: int) -> Graph:
    """Ball of radius ``depth`` in the d-regular tree, rooted at vertex 0."""
    if d < 1 or depth < 0:
        raise FamilySpecError("regular-tree needs d >= 1 and depth >= 0")
    edges = []
    frontier = [0]
    count = 1
    for level in range(depth):
        nxt = []
        for v in frontier:
            for _ in range(d if v == 0 else d - 1):
                edges.append((v, count))
                nxt.append(count)
                count += 1
        frontier = nxt
    return Graph.from_edges(edges, labels=_labels(count))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(outer + spokes + inner, labels=_labels(10))


def random_weighted(g: Graph, seed: int, choices=(1, 2, 3, Fraction(1, 2), Fraction(3, 2))) -> Graph:
    """Copy of g with weights drawn from ``choices``."""
    rng = random.Random(seed)
    edges = [(g.labels[u], g.labels[v], rng.choice(choices)) for u, v in g.edges()]
    return Graph.from_edges(edges, labels=g.labels, weighted=True)


def _int(tok: str, name: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FamilySpecError(f"{name} must be an integer, got {tok!r}") from None


def generate_family(spec: str) -> Graph:
    parts = spec.strip().split(":")
    kind, args = parts[0], parts[1:]

    def need(k: int):
        if len(args) != k:
            raise FamilySpecError(f"{kind!r} takes {k} argument(s), got {len(args)} in {spec!r}")

    if kind == "complete":
        need(1)
        return complete(_int(args[0], "n"))
    if kind == "cycle":
        need(1)
        return cycle(_int(args[0], "n"))
    if kind == "path":
        need(1)
        return path(_int(args[0], "n"))
    if kind == "star":
        need(1)
        return star(_int(args[0], "leaves"))
    if kind == "tree":
        need(3)
        if args[0] != "random":
            raise FamilySpecError(f"unknown tree family {args[0]!r}")
        return random_tree(_int(args[1], "n"), _int(args[2], "seed"))
    if kind == "gnp":
        need(3)
        try:
            p = float(args[1])
        except ValueError:
            raise FamilySpecError(f"p must be a number, got {args[1]!r}") from None
        if not 0 <= p <= 1:
            raise FamilySpecError("p must lie in [0, 1]")
        return gnp(_int(args[0], "n"), p, _int(args[2], "seed"))
    if kind == "regular-tree":
        need(2)
        return regular_tree(_int(args[0], "d"), _int(args[1], "depth"))
    if kind == "petersen":
        need(0)
        return petersen()
    raise FamilySpecError(f"unknown graph family {kind!r}")
