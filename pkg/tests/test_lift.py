import random
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings

from chromramsey.errors import InputError
from chromramsey.hypercore import (
    EdgePartition,
    Hypergraph,
    chromatic_number,
    complete_hypergraph,
    is_proper,
)
from chromramsey.intersect import one_intersection_graph, partition_from_igraph_coloring
from chromramsey.lift import brooks_color, color_via_intersection, lift_coloring, lift_details, list_color
from chromramsey.workbench.fileio import read_file

from conftest import hypergraphs

FIX = Path(__file__).parent / "fixtures"


def _graph(g):
    g = nx.convert_node_labels_to_integers(g)
    return Hypergraph(g.number_of_nodes(), tuple(tuple(sorted(e)) for e in g.edges), 2)


@pytest.mark.parametrize(
    "g, delta",
    [
        (nx.petersen_graph(), 3),
        (nx.cycle_graph(6), 2),
        (nx.path_graph(5), 2),
        (nx.complete_bipartite_graph(3, 3), 3),
        (nx.star_graph(4), 4),
        (nx.circulant_graph(9, [1, 2]), 4),
        (nx.dodecahedral_graph(), 3),
    ],
)
def test_brooks_uses_at_most_delta(g, delta):
    G = _graph(g)
    c = brooks_color(G)
    assert is_proper(G, c) and c.m <= delta


def test_brooks_on_cut_vertex_graph():
    # two K_4 minus an edge glued at a vertex: 3-regular except the glue
    g = nx.Graph([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)])
    G = _graph(g)
    c = brooks_color(G)
    assert is_proper(G, c) and c.m <= 3


@pytest.mark.parametrize("g", [nx.complete_graph(4), nx.cycle_graph(5)])
def test_brooks_rejects_exceptions(g):
    with pytest.raises(InputError):
        brooks_color(_graph(g))


def test_random_regular_brooks():
    rng = random.Random(5)
    for d in (3, 4, 5):
        for _ in range(20):
            g = nx.random_regular_graph(d, 12, seed=rng.randrange(10**6))
            G = _graph(g)
            if not nx.is_connected(g):
                continue
            c = brooks_color(G)
            assert is_proper(G, c) and c.m <= d


def test_list_color_cycle():
    C4 = _graph(nx.cycle_graph(4))
    col = list_color(C4, [[1, 2]] * 4)
    assert is_proper(C4, col)
    assert all(c in (1, 2) for c in col)


def test_k5_lift_uses_three_colors():
    H = complete_hypergraph(5, 3)
    t, c = color_via_intersection(H)
    assert t == 3 and is_proper(H, c) and c.m <= 3


def test_lift_bad_fixture():
    f = read_file(str(FIX / "bad_k4_t3.txt"))
    res = lift_details(f.H, f.partition)
    assert is_proper(f.H, res.coloring) and res.coloring.m <= 3
    assert res.skeleton.switches == 1 and res.context is None


def test_lift_odd_branch_fixture():
    f = read_file(str(FIX / "odd_branch_t3.txt"))
    res = lift_details(f.H, f.partition)
    ctx = res.context
    assert ctx is not None
    assert ctx.bases == ((0, 1),)
    assert ctx.X == frozenset({0, 1, 2, 3}) and ctx.Z == frozenset({4})
    assert res.coloring.colors[:4] == (1, 1, 2, 3)
    assert res.coloring[4] in (2, 3)
    assert is_proper(f.H, res.coloring)


def test_edgeless_igraph_gives_two():
    H = Hypergraph(4, ((0, 1, 2), (0, 1, 3)))
    t, c = color_via_intersection(H)
    assert t == 2 and is_proper(H, c)


def test_lift_needs_two_classes():
    with pytest.raises(InputError):
        lift_coloring(Hypergraph(3, ((0, 1, 2),)), EdgePartition((1,), 1))


@settings(max_examples=200, deadline=None)
@given(hypergraphs(n_min=4, n_max=10, max_edges=16))
def test_lift_proper_within_t(H):
    if not H.m:
        return
    t, c = chromatic_number(one_intersection_graph(H))
    P = partition_from_igraph_coloring(H, c)
    P = EdgePartition(P.class_of, max(t, 2))
    col = lift_coloring(H, P)
    assert is_proper(H, col) and col.m <= max(t, 2)
