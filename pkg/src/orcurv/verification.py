"""Self-checks of every exact identity and inequality on a single input graph.

Each property returns ``pass``, ``fail`` or ``skip`` (when its hypothesis
does not apply to the graph).  The ``verify`` CLI command prints these.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .bakry_emery import (
    FunctionOnBall,
    cd_bound_max_degree,
    cd_bound_positive_kappa,
    cd_bound_triangles,
    cd_bound_weighted_triangles,
    cd_verify_many,
    gamma2,
    gamma2_iterated,
)
from .curvature import CaseTag, edge_report, scalar_report
from .graph import Graph, diameter, is_connected, is_tree
from .measure import random_walk_measure
from .transport import ORACLE_MAX_SUPPORT, dual_enumeration_oracle, verify_plan


@dataclass(frozen=True)
class PropertyOutcome:
    name: str
    status: str
    detail: str = ""


def _is_complete(g: Graph) -> bool:
    n = g.vertex_count
    return n >= 2 and g.edge_count == n * (n - 1) // 2 and g.has_unit_weights


def _active_vertices(g: Graph) -> list[int]:
    return [x for x in range(g.vertex_count) if g.adjacency[x]]


def run_property_suite(g: Graph, seed: int = 0, functions_per_vertex: int = 5) -> list[PropertyOutcome]:
    out: list[PropertyOutcome] = []
    reports = [edge_report(g, x, y) for x, y in g.edges()]
    lab = g.labels

    def record(name: str, failures: list[str], applicable: bool = True, note: str = "") -> None:
        if not applicable:
            out.append(PropertyOutcome(name, "skip", note))
        elif failures:
            out.append(PropertyOutcome(name, "fail", "; ".join(failures[:3])))
        else:
            out.append(PropertyOutcome(name, "pass", note))

    fails = []
    for r in reports:
        check = verify_plan(g, random_walk_measure(g, r.x), random_walk_measure(g, r.y), r.transport)
        if not check:
            fails.append(f"{lab[r.x]}-{lab[r.y]}: {check.reasons[0]}")
    record("duality_certificates", fails, bool(reports), f"{len(reports)} edges")

    fails = [f"{lab[r.x]}-{lab[r.y]}" for r in reports
             if not r.lower_linyau <= r.lower_triangle <= r.kappa <= r.upper_triangle <= 1]
    record("bound_sandwich", fails, bool(reports))

    fails = [f"{lab[r.x]}-{lab[r.y]}" for r in reports
             if r.case_tag is CaseTag.B_NEG and r.kappa != r.upper_triangle]
    record("b_neg_exactness", fails, any(r.case_tag is CaseTag.B_NEG for r in reports))

    fails = [f"{lab[r.x]}-{lab[r.y]}" for r in reports if r.kappa != r.lower_linyau]
    record("tree_exactness", fails, is_tree(g), "" if is_tree(g) else "not a tree")

    if _is_complete(g):
        n = g.vertex_count
        target = Fraction(n - 2, n - 1)
        fails = [f"{lab[r.x]}-{lab[r.y]}" for r in reports
                 if not (r.kappa == target and r.lower_tight and r.upper_tight)]
        record("complete_graph_exactness", fails)
    else:
        record("complete_graph_exactness", [], False, "not a complete graph")

    fails = []
    checked = 0
    for r in reports:
        mx, my = random_walk_measure(g, r.x), random_walk_measure(g, r.y)
        if len(set(mx.support) | set(my.support)) > ORACLE_MAX_SUPPORT:
            continue
        checked += 1
        if dual_enumeration_oracle(g, mx, my) != r.w1:
            fails.append(f"{lab[r.x]}-{lab[r.y]}")
    record("oracle_equivalence", fails, checked > 0, f"{checked} edges")

    rng = random.Random(seed)
    fails = []
    for x in _active_vertices(g):
        for _ in range(functions_per_vertex):
            f = FunctionOnBall.from_function(g, x, lambda v: Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
            if gamma2(g, f, x) != gamma2_iterated(g, f, x):
                fails.append(lab[x])
                break
    record("gamma2_identity", fails, bool(_active_vertices(g)))

    fails = []
    kappa_at: dict[int, dict[int, Fraction]] = {x: {} for x in range(g.vertex_count)}
    for r in reports:
        kappa_at[r.x][r.y] = r.kappa
        kappa_at[r.y][r.x] = r.kappa
    for x in _active_vertices(g):
        bounds = {"max_degree": cd_bound_max_degree(g, x),
                  "weighted_triangles": cd_bound_weighted_triangles(g, x)}
        if g.has_unit_weights:
            bounds["triangles"] = cd_bound_triangles(g, x)
            ks = kappa_at[x]
            if all(k > 0 for k in ks.values()):
                bounds["positive_kappa"] = cd_bound_positive_kappa(g, x, None, ks)
                bounds["kappa_at_least_k"] = cd_bound_positive_kappa(g, x, min(ks.values()), ks)
        for name, res in zip(bounds, cd_verify_many(g, x, 2, bounds.values())):
            if not res.verdict:
                fails.append(f"{name} at {lab[x]}")
    record("cd_closed_form_bounds", fails, bool(_active_vertices(g)))

    if g.has_unit_weights:
        fails = []
        for x in _active_vertices(g):
            if g.unweighted_degree(x) < 2:
                continue
            s = scalar_report(g, x)
            if not s.lower <= s.mean_kappa <= s.upper:
                fails.append(lab[x])
            if s.refined_lower is not None and not s.refined_lower <= s.mean_kappa:
                fails.append(f"refined at {lab[x]}")
        record("scalar_sandwich", fails)
    else:
        record("scalar_sandwich", [], False, "weighted graph")

    if reports and is_connected(g):
        k = min(r.kappa for r in reports)
        if k > 0:
            diam = diameter(g)
            record("diameter_consistency", [] if diam <= 2 / k else [f"diameter {diam} > 2/{k}"])
        else:
            record("diameter_consistency", [], False, "minimum edge curvature is not positive")
    else:
        record("diameter_consistency", [], False, "graph is disconnected or has no edges")

    fails = []
    for r in reports[:50]:
        back = edge_report(g, r.y, r.x)
        if back.kappa != r.kappa or back.lower_triangle != r.lower_triangle:
            fails.append(f"{lab[r.x]}-{lab[r.y]}")
    record("symmetry", fails, bool(reports))
    return out
