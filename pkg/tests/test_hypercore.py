import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromramsey.errors import InputError, ResourceError
from chromramsey.hypercore import (
    EdgePartition,
    Hypergraph,
    VertexColoring,
    chromatic_number,
    class_hypergraph,
    complete_hypergraph,
    components,
    greedy_coloring_with_witnesses,
    induced,
    is_acyclic,
    is_proper,
    k_coloring,
    remove,
)

from conftest import FANO, brute_chi, hypergraphs

TRIPLE = Hypergraph(3, ((0, 1, 2),), 3)


def test_canonical_edges():
    H = Hypergraph(4, ((2, 1, 0), (0, 3, 1)))
    assert H.edges == ((0, 1, 2), (0, 1, 3))
    assert H.r == 3
    assert H == Hypergraph(4, ((0, 1, 3), (0, 1, 2)), 3)


@pytest.mark.parametrize(
    "n, edges, r",
    [
        (3, ((0, 1, 1),), None),
        (3, ((0, 1, 3),), None),
        (4, ((0, 1, 2), (2, 1, 0)), None),
        (4, ((0, 1, 2), (0, 1)), 3),
        (3, ((0,),), None),
    ],
)
def test_bad_hypergraphs_rejected(n, edges, r):
    with pytest.raises(InputError):
        Hypergraph(n, edges, r)


def test_mixed_uniformity_storage():
    H = Hypergraph(4, ((0, 1), (1, 2, 3)))
    assert H.r is None
    assert is_proper(H, (1, 2, 1, 2))
    assert components(H) == [[0, 1, 2, 3]]
    with pytest.raises(InputError):
        H.uniformity()


def test_is_proper_examples():
    assert is_proper(TRIPLE, VertexColoring((1, 1, 2)))
    assert not is_proper(TRIPLE, VertexColoring((1, 1, 1)))
    K5 = complete_hypergraph(5, 3)
    c = (1, 1, 2, 2, 3)
    # independent check: no triple lies inside one color class
    assert all(len({c[v] for v in e}) > 1 for e in itertools.combinations(range(5), 3))
    assert is_proper(K5, c)


def test_is_proper_length_mismatch():
    with pytest.raises(InputError):
        is_proper(TRIPLE, (1, 2))


@pytest.mark.parametrize("N, r, edges", [(4, 3, 4), (5, 3, 10), (6, 3, 20), (5, 2, 10)])
def test_complete_hypergraph_sizes(N, r, edges):
    assert complete_hypergraph(N, r).m == edges


def test_complete_hypergraph_cap():
    with pytest.raises(ResourceError):
        complete_hypergraph(40, 4, cap=1000)


def test_chromatic_number_examples():
    assert chromatic_number(complete_hypergraph(6, 3))[0] == 3
    assert chromatic_number(TRIPLE)[0] == 2
    assert brute_chi(FANO) == 3
    chi, c = chromatic_number(FANO)
    assert chi == 3 and is_proper(FANO, c) and c.m == 3


def test_edgeless_has_chi_one():
    chi, c = chromatic_number(Hypergraph(4, (), 3))
    assert chi == 1 and c.colors == (1, 1, 1, 1)
    assert chromatic_number(Hypergraph(0, (), 3))[0] == 1


@pytest.mark.parametrize("r", [2, 3, 4])
def test_chi_complete_formula(r):
    for N in range(1, 11):
        chi, c = chromatic_number(complete_hypergraph(N, r))
        assert chi == math.ceil(N / (r - 1))
        assert is_proper(complete_hypergraph(N, r), c)


def test_vertex_cap():
    with pytest.raises(ResourceError):
        chromatic_number(Hypergraph(70, ((0, 1, 2),), 3))
    assert chromatic_number(Hypergraph(70, ((0, 1, 2),), 3), cap=100)[0] == 2


def test_k_coloring():
    K7 = complete_hypergraph(7, 3)
    assert k_coloring(K7, 3) is None
    c = k_coloring(K7, 4)
    assert c is not None and is_proper(K7, c)


def test_greedy_witnesses_k5():
    K5 = complete_hypergraph(5, 3)
    gw = greedy_coloring_with_witnesses(K5)
    assert gw.coloring.colors == (1, 1, 2, 2, 3)
    named = {ij: K5.edges[e] for ij, e in gw.witnesses.items()}
    assert named == {(1, 2): (0, 1, 2), (1, 3): (0, 1, 4), (2, 3): (2, 3, 4)}


def test_greedy_witnesses_trivial():
    gw = greedy_coloring_with_witnesses(TRIPLE)
    assert gw.coloring.colors == (1, 1, 2) and gw.witnesses == {(1, 2): 0}
    gw = greedy_coloring_with_witnesses(Hypergraph(3, (), 3))
    assert gw.coloring.colors == (1, 1, 1) and gw.witnesses == {}


def test_greedy_rejects_bad_order():
    with pytest.raises(InputError):
        greedy_coloring_with_witnesses(TRIPLE, [0, 0, 1])


def _check_witnesses(H, gw):
    col = gw.coloring
    for (i, j), e in gw.witnesses.items():
        vals = sorted(col[v] for v in H.edges[e])
        assert vals == [i] * (H.r - 1) + [j]
    for j in range(2, gw.p + 1):
        for i in range(1, j):
            assert (i, j) in gw.witnesses


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.randoms(use_true_random=False))
def test_greedy_properties(H, rnd):
    order = list(range(H.n))
    rnd.shuffle(order)
    gw = greedy_coloring_with_witnesses(H, order)
    assert is_proper(H, gw.coloring)
    assert gw.p >= chromatic_number(H)[0]
    _check_witnesses(H, gw)


@settings(max_examples=150, deadline=None)
@given(hypergraphs(n_max=6, max_edges=10))
def test_chi_matches_brute_force(H):
    chi, c = chromatic_number(H)
    assert chi == brute_chi(H)
    assert is_proper(H, c) and c.m == chi


@settings(max_examples=100, deadline=None)
@given(hypergraphs(), st.randoms(use_true_random=False))
def test_chi_isomorphism_invariant(H, rnd):
    perm = list(range(H.n))
    rnd.shuffle(perm)
    assert chromatic_number(H.relabel(perm))[0] == chromatic_number(H)[0]


@settings(max_examples=100, deadline=None)
@given(hypergraphs(), st.integers(1, 3), st.randoms(use_true_random=False))
def test_product_bound(H, t, rnd):
    P = EdgePartition(tuple(rnd.randint(1, t) for _ in range(H.m)), t)
    prod = 1
    for i in range(1, t + 1):
        prod *= chromatic_number(class_hypergraph(H, P, i)[0])[0]
    assert chromatic_number(H)[0] <= prod


@settings(max_examples=100, deadline=None)
@given(hypergraphs(), st.randoms(use_true_random=False))
def test_restriction_keeps_properness(H, rnd):
    _, c = chromatic_number(H)
    A = [v for v in range(H.n) if rnd.random() < 0.6]
    for sub, back in (induced(H, A), remove(H, A)):
        assert is_proper(sub, [c[v] for v in back])


def test_components_examples():
    assert components(Hypergraph(6, ((0, 1, 2), (3, 4, 5)))) == [[0, 1, 2], [3, 4, 5]]
    assert components(Hypergraph(4, ((0, 1, 2), (0, 1, 3)))) == [[0, 1, 2, 3]]
    assert components(Hypergraph(5, ((0, 1, 2),))) == [[0, 1, 2], [3], [4]]


def test_induced_and_remove_examples():
    K5 = complete_hypergraph(5, 3)
    sub, back = induced(K5, [0, 2, 3, 4])
    assert sub == complete_hypergraph(4, 3) and back == [0, 2, 3, 4]
    sub, back = remove(K5, [0, 1, 2])
    assert sub == Hypergraph(2, (), 3) and back == [3, 4]
    B2 = Hypergraph(4, ((0, 1, 2), (0, 1, 3)))  # a b c, a b d
    sub, back = remove(B2, [2])
    assert sub.edges == ((0, 1, 2),) and back == [0, 1, 3]


def test_is_acyclic():
    assert is_acyclic(Hypergraph(5, ((0, 1, 2), (0, 3, 4))))
    assert not is_acyclic(Hypergraph(4, ((0, 1, 2), (0, 1, 3))))
    assert not is_acyclic(Hypergraph(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0))))


def test_partition_validation():
    with pytest.raises(InputError):
        EdgePartition((1, 3), 2)
    P = EdgePartition((1, 1, 2), 3)
    assert P.classes() == [[0, 1], [2], []]
    with pytest.raises(InputError):
        P.check(TRIPLE)


def test_random_relabel_roundtrip():
    rng = random.Random(3)
    K = complete_hypergraph(6, 3)
    perm = list(range(6))
    rng.shuffle(perm)
    assert K.relabel(perm) == K
