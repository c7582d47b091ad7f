import pytest

from orcurv.errors import FamilySpecError
from orcurv.families import generate_family
from orcurv.graph import is_connected, is_tree, serialize_edge_list


def test_complete():
    g = generate_family("complete:5")
    assert g.vertex_count == 5 and g.edge_count == 10


def test_regular_tree():
    g = generate_family("regular-tree:3:2")
    degrees = sorted(g.unweighted_degree(v) for v in range(g.vertex_count))
    assert g.vertex_count == 1 + 3 + 6 and is_tree(g)
    assert degrees == [1] * 6 + [3] * 4


def test_gnp_deterministic():
    a, b = generate_family("gnp:20:0.3:7"), generate_family("gnp:20:0.3:7")
    assert serialize_edge_list(a) == serialize_edge_list(b)
    assert serialize_edge_list(a) != serialize_edge_list(generate_family("gnp:20:0.3:8"))


@pytest.mark.parametrize("spec,n,m", [("cycle:7", 7, 7), ("path:4", 4, 3), ("star:5", 6, 5), ("petersen", 10, 15)])
def test_small_families(spec, n, m):
    g = generate_family(spec)
    assert (g.vertex_count, g.edge_count) == (n, m)
    assert is_connected(g)


@pytest.mark.parametrize("seed", range(10))
def test_random_trees(seed):
    g = generate_family(f"tree:random:50:{seed}")
    assert g.vertex_count == 50 and is_tree(g)


@pytest.mark.parametrize("spec", ["complete", "complete:x", "cycle:2", "gnp:5:1.5:1", "tree:fixed:5:1",
                                  "hypercube:3", "petersen:1", "regular-tree:0:2"])
def test_bad_specs(spec):
    with pytest.raises(FamilySpecError):
        generate_family(spec)
