"""Exact Wasserstein-1 distance between vertex measures.

The transport problem is solved as an integer min-cost flow: masses are
scaled by the lcm of their denominators, costs are hop distances, and the
flow is found by successive shortest paths with node potentials.  All
augmentations along currently-shortest paths are done together as a max
flow on the zero-reduced-cost subgraph, which keeps the number of Dijkstra
rounds bounded by the largest cost.  The final potentials are turned into a
1-Lipschitz Kantorovich potential that certifies optimality.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain

from .errors import ComponentError, SupportTooLargeError
from .graph import Graph, distances_from
from .measure import VertexMeasure

ORACLE_MAX_SUPPORT = 12


@dataclass(frozen=True)
class TransportResult:
    value: Fraction
    plan: tuple[tuple[int, int, Fraction], ...]
    dual: dict[int, int]


@dataclass
class PlanCheck:
    """Outcome of :func:`verify_plan`; truthy iff every check passed."""

    reasons: list[str]

    @property
    def ok(self) -> bool:
        return not self.reasons

    def __bool__(self) -> bool:
        return self.ok


def pairwise_distance_matrix(g: Graph, S, T, cap: int | None = None) -> list[list[int]]:
    """Hop distances ``d(s, t)`` for s in S, t in T, one truncated BFS per row."""
    rows = []
    for s in S:
        dist = distances_from(g, s, cap)
        row = []
        for t in T:
            d = dist.get(t)
            if d is None:
                where = "beyond the search cap" if cap is not None else "in another component"
                raise ComponentError(f"{g.labels[t]!r} is {where} from {g.labels[s]!r}")
            row.append(d)
        rows.append(row)
    return rows


def _dinic(n: int, arcs: list[tuple[int, int, int, int]], s: int, t: int) -> list[int]:
    """Max flow; arcs are ``(u, v, cap, reverse_cap)``.  Returns final residual caps of reverse arcs."""
    head: list[list[int]] = [[] for _ in range(n)]
    to: list[int] = []
    cap: list[int] = []
    for u, v, c, rc in arcs:
        head[u].append(len(to))
        to.append(v)
        cap.append(c)
        head[v].append(len(to))
        to.append(u)
        cap.append(rc)
    while True:
        level = [-1] * n
        level[s] = 0
        queue = [s]
        for u in queue:
            for e in head[u]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    queue.append(to[e])
        if level[t] < 0:
            break
        it = [0] * n
        while True:
            # iterative DFS for one augmenting path in the level graph
            path: list[int] = []
            u = s
            while u != t:
                advanced = False
                while it[u] < len(head[u]):
                    e = head[u][it[u]]
                    v = to[e]
                    if cap[e] > 0 and level[v] == level[u] + 1:
                        path.append(e)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        break
                    level[u] = -1
                    e = path.pop()
                    u = to[e ^ 1]
                    it[u] += 1
            if u != t:
                break
            push = min(cap[e] for e in path)
            for e in path:
                cap[e] -= push
                cap[e ^ 1] += push
    return [cap[2 * k + 1] for k in range(len(arcs))]


def min_cost_transport(supply: list[int], demand: list[int], cost: list[list[int]]):
    """Integer transportation problem with nonnegative integer costs.

    Returns ``(flow, source_potential, sink_potential)`` where reduced costs
    ``cost[i][j] + ps[i] - pt[j]`` are nonnegative and vanish wherever flow
    is positive.
    """
    ns, nt = len(supply), len(demand)
    if sum(supply) != sum(demand):
        raise ValueError("supply and demand totals differ")
    flow = [[0] * nt for _ in range(ns)]
    ps = [0] * ns
    pt = [0] * nt
    rem_s = list(supply)
    rem_t = list(demand)
    big = sum(supply) + 1
    inf = math.inf
    while any(rem_s):
        ds = [inf] * ns
        dt = [inf] * nt
        heap = []
        for i in range(ns):
            if rem_s[i] > 0:
                ds[i] = 0
                heap.append((0, 0, i))
        heapq.heapify(heap)
        while heap:
            d, side, k = heapq.heappop(heap)
            if side == 0:
                if d > ds[k]:
                    continue
                base = d + ps[k]
                row = cost[k]
                for j in range(nt):
                    nd = base + row[j] - pt[j]
                    if nd < dt[j]:
                        dt[j] = nd
                        heapq.heappush(heap, (nd, 1, j))
            else:
                if d > dt[k]:
                    continue
                base = d + pt[k]
                for i in range(ns):
                    if flow[i][k] > 0:
                        nd = base - cost[i][k] - ps[i]
                        if nd < ds[i]:
                            ds[i] = nd
                            heapq.heappush(heap, (nd, 0, i))
        delta = min(dt[j] for j in range(nt) if rem_t[j] > 0)
        for i in range(ns):
            ps[i] += min(ds[i], delta)
        for j in range(nt):
            pt[j] += min(dt[j], delta)
        src, snk = ns + nt, ns + nt + 1
        arcs = []
        pairs = []
        for i in range(ns):
            for j in range(nt):
                if cost[i][j] + ps[i] - pt[j] == 0:
                    arcs.append((i, ns + j, big, flow[i][j]))
                    pairs.append((i, j))
        for i in range(ns):
            if rem_s[i] > 0:
                arcs.append((src, i, rem_s[i], 0))
        for j in range(nt):
            if rem_t[j] > 0:
                arcs.append((ns + j, snk, rem_t[j], 0))
        back = _dinic(ns + nt + 2, arcs, src, snk)
        for k, (i, j) in enumerate(pairs):
            flow[i][j] = back[k]
        k = len(pairs)
        for i in range(ns):
            if rem_s[i] > 0:
                rem_s[i] -= back[k]
                k += 1
        for j in range(nt):
            if rem_t[j] > 0:
                rem_t[j] -= back[k]
                k += 1
    return flow, ps, pt


def _lcm_denominator(*measures: VertexMeasure) -> int:
    return math.lcm(*(m.denominator for mu in measures for _, m in mu.atoms))


def wasserstein1(g: Graph, mu: VertexMeasure, nu: VertexMeasure, cap: int | None = None) -> TransportResult:
    """Exact W1 between two measures under the hop metric.

    ``cap`` bounds the BFS depth used for costs; it must be at least the
    largest distance between the two supports (3 for measures of adjacent
    vertices).  Common mass is not pre-matched: the zero-cost diagonal is
    left for the solver.
    """
    S, T = mu.support, nu.support
    joint = sorted(set(S) | set(T))
    dist = pairwise_distance_matrix(g, joint, joint, cap)
    pos = {v: k for k, v in enumerate(joint)}
    cost = [[dist[pos[s]][pos[t]] for t in T] for s in S]
    L = _lcm_denominator(mu, nu)
    supply = [int(m * L) for _, m in mu.atoms]
    demand = [int(m * L) for _, m in nu.atoms]
    flow, ps, pt = min_cost_transport(supply, demand, cost)
    total = 0
    plan = []
    for i, s in enumerate(S):
        for j, t in enumerate(T):
            if flow[i][j]:
                total += flow[i][j] * cost[i][j]
                plan.append((s, t, Fraction(flow[i][j], L)))
    # Kantorovich potential f(z) = min_t (d(z, t) - pt[t]); it is 1-Lipschitz
    # and satisfies f(s) >= -ps[s], f(t) <= -pt[t], which closes the gap.
    f = {z: min(dist[pos[z]][pos[t]] - pt[j] for j, t in enumerate(T)) for z in joint}
    low = min(f.values())
    dual = {z: v - low for z, v in f.items()}
    return TransportResult(Fraction(total, L), tuple(plan), dual)


def verify_plan(g: Graph, mu: VertexMeasure, nu: VertexMeasure, result: TransportResult) -> PlanCheck:
    """Exact check of marginals, plan cost, dual Lipschitz property and zero duality gap."""
    reasons = []
    joint = sorted(set(mu.support) | set(nu.support))
    dist = pairwise_distance_matrix(g, joint, joint)
    pos = {v: k for k, v in enumerate(joint)}
    out: dict[int, Fraction] = {}
    inn: dict[int, Fraction] = {}
    cost = Fraction(0)
    for s, t, m in result.plan:
        if m < 0:
            reasons.append(f"negative plan entry at ({s}, {t})")
        if s not in pos or t not in pos:
            reasons.append(f"plan entry ({s}, {t}) outside the joint support")
            continue
        out[s] = out.get(s, Fraction(0)) + m
        inn[t] = inn.get(t, Fraction(0)) + m
        cost += m * dist[pos[s]][pos[t]]
    mu_d, nu_d = mu.as_dict(), nu.as_dict()
    for v in joint:
        if out.get(v, 0) != mu_d.get(v, 0):
            reasons.append(f"source marginal mismatch at {g.labels[v]!r}")
        if inn.get(v, 0) != nu_d.get(v, 0):
            reasons.append(f"target marginal mismatch at {g.labels[v]!r}")
    if cost != result.value:
        reasons.append(f"plan cost {cost} differs from reported value {result.value}")
    f = result.dual
    if set(f) != set(joint):
        reasons.append("dual potential domain differs from the joint support")
    else:
        for a in joint:
            for b in joint:
                if a < b and abs(f[a] - f[b]) > dist[pos[a]][pos[b]]:
                    reasons.append(f"dual is not 1-Lipschitz on ({g.labels[a]!r}, {g.labels[b]!r})")
        dual_value = sum(m * f[v] for v, m in mu.atoms) - sum(m * f[v] for v, m in nu.atoms)
        if dual_value != result.value:
            reasons.append(f"duality gap: dual {dual_value} vs primal {result.value}")
    return PlanCheck(reasons)


def dual_enumeration_oracle(g: Graph, mu: VertexMeasure, nu: VertexMeasure, radius: int | None = None) -> Fraction:
    """Brute-force Kantorovich dual over integer 1-Lipschitz functions.

    Enumerates every f on the joint support with values in ``0..radius``
    (default: diameter of the joint support) that is 1-Lipschitz for the
    hop metric, and returns ``max sum f dmu - sum f dnu``.  Independent of
    the flow solver; meant for small supports only.
    """
    joint = sorted(set(mu.support) | set(nu.support))
    if len(joint) > ORACLE_MAX_SUPPORT:
        raise SupportTooLargeError(f"joint support has {len(joint)} > {ORACLE_MAX_SUPPORT} vertices")
    dist = pairwise_distance_matrix(g, joint, joint)
    if radius is None:
        radius = max(chain.from_iterable(dist))
    L = _lcm_denominator(mu, nu)
    mu_d, nu_d = mu.as_dict(), nu.as_dict()
    coeff = [int((mu_d.get(v, 0) - nu_d.get(v, 0)) * L) for v in joint]
    order = sorted(range(len(joint)), key=lambda k: (-abs(coeff[k]), k))
    n = len(order)
    assigned: list[int | None] = [None] * len(joint)
    # optimistic remaining gain assuming every free vertex hits its best end of 0..radius
    suffix = [0] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + max(coeff[order[pos]], 0) * radius
    best = [-math.inf]

    def search(pos: int, acc: int) -> None:
        if acc + suffix[pos] <= best[0]:
            return
        if pos == n:
            best[0] = acc
            return
        k = order[pos]
        lo, hi = 0, radius
        for q in order[:pos]:
            fq = assigned[q]
            dq = dist[k][q]
            lo = max(lo, fq - dq)
            hi = min(hi, fq + dq)
        values = range(hi, lo - 1, -1) if coeff[k] >= 0 else range(lo, hi + 1)
        for val in values:
            assigned[k] = val
            search(pos + 1, acc + coeff[k] * val)
        assigned[k] = None

    search(0, 0)
    return Fraction(best[0], L)
