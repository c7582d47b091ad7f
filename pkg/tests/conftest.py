from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orcurv.graph import Graph, is_connected

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def small_graphs(draw, min_n=2, max_n=8, connected=True, weighted=False):
    """Random simple graphs on "0".."n-1"; connected ones get a spanning tree first."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    if connected:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()) and draw(st.booleans()):
                edges.add((u, v))
    weights = st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3)])
    if weighted:
        triples = [(str(u), str(v), draw(weights)) for u, v in sorted(edges)]
        g = Graph.from_edges(triples, labels=[str(i) for i in range(n)], weighted=True)
    else:
        g = Graph.from_edges([(str(u), str(v)) for u, v in sorted(edges)], labels=[str(i) for i in range(n)])
    assert not connected or is_connected(g)
    return g


@pytest.fixture
def k4():
    from orcurv.families import complete
    return complete(4)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
    missing = [n for n in range(1, 12) if n not in results]
    if missing:
        terminalreporter.write_line(f"not run: {missing}")
