import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromramsey.errors import InputError, InvariantError
from chromramsey.hypercore import (
    EdgePartition,
    Hypergraph,
    chromatic_number,
    class_hypergraph,
    complete_hypergraph,
    greedy_coloring_with_witnesses,
    is_acyclic,
)
from chromramsey.ramsey import (
    MonoWitness,
    assemble_lower_witness,
    embed_tree,
    embedded_edges,
    find_mono_matching,
    find_mono_matching_2col,
    find_mono_star,
    find_mono_tree,
    find_mono_two_star,
    gen_matching_extremal,
    gen_star_witness,
    gen_two_factor_split,
    loose_path,
    matching,
    star,
    witness_errors,
)
from chromramsey.workbench.oracles import oracle_has_mono


def _random_partition(rng, m, t):
    return EdgePartition(tuple(rng.randint(1, t) for _ in range(m)), t)


def test_small_trees_are_acyclic():
    for r in (2, 3, 4):
        for k in (1, 2, 3):
            for T in (star(r, k), matching(r, k), loose_path(r, k)):
                assert T.m == k and is_acyclic(T)
    assert star(3, 2).edges == ((0, 1, 2), (0, 3, 4))
    assert loose_path(3, 2).edges == ((0, 1, 2), (2, 3, 4))


def test_validator_catches_errors():
    H = Hypergraph(6, ((0, 1, 2), (0, 3, 4), (3, 4, 5)), 3)
    P = EdgePartition((1, 1, 2), 2)
    assert witness_errors(H, P, MonoWitness("star", 1, (0, 1), center=0)) == []
    assert witness_errors(H, P, MonoWitness("star", 1, (0, 1), center=1))
    assert witness_errors(H, P, MonoWitness("matching", 1, (0, 1)))
    assert witness_errors(H, P, MonoWitness("matching", 1, (0, 2)))  # mixed classes
    assert witness_errors(H, P, MonoWitness("matching", 1, (0, 9)))


def test_single_class_matching_in_k7():
    H = complete_hypergraph(7, 3)
    w = find_mono_matching(H, EdgePartition.single(H.m), 2)
    assert witness_errors(H, EdgePartition.single(H.m), w) == []
    assert len(w.edge_indices) == 2


def test_matching_every_2coloring_of_k5():
    H = complete_hypergraph(5, 2)
    for cols in itertools.product((1, 2), repeat=H.m):
        P = EdgePartition(cols, 2)
        w = find_mono_matching(H, P, 2)
        assert witness_errors(H, P, w) == []


def test_matching_precondition():
    H = complete_hypergraph(4, 2)
    with pytest.raises(InputError):
        find_mono_matching(H, EdgePartition.single(H.m, 2), 2)


def test_greedy_pullback_disjoint():
    H = complete_hypergraph(9, 3)
    gw = greedy_coloring_with_witnesses(H)
    for (a, b), (c, d) in itertools.combinations(gw.witnesses, 2):
        if {a, b} & {c, d}:
            continue
        assert not set(H.edges[gw.witnesses[(a, b)]]) & set(H.edges[gw.witnesses[(c, d)]])


def test_matching_random_hosts():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(9, 11)
        H = Hypergraph(n, tuple(e for e in itertools.combinations(range(n), 3) if rng.random() < 0.9), 3)
        if chromatic_number(H)[0] < 5:
            continue
        P = _random_partition(rng, H.m, 2)
        w = find_mono_matching(H, P, 2)
        assert witness_errors(H, P, w) == []


def test_matching_2col_k1():
    H = Hypergraph(4, ((0, 1, 2), (1, 2, 3)), 3)
    w = find_mono_matching_2col(H, EdgePartition((1, 2), 2), 1)
    assert len(w.edge_indices) == 1


def test_matching_2col_k7_all_random():
    H = complete_hypergraph(7, 3)
    rng = random.Random(8)
    for _ in range(300):
        P = _random_partition(rng, H.m, 2)
        w = find_mono_matching_2col(H, P, 2, chi=4)
        assert witness_errors(H, P, w) == []


def test_matching_2col_empty_class():
    H = complete_hypergraph(7, 3)
    P = EdgePartition.single(H.m, 2)
    assert witness_errors(H, P, find_mono_matching_2col(H, P, 2)) == []


def test_matching_2col_preconditions():
    H = complete_hypergraph(6, 3)
    with pytest.raises(InputError):
        find_mono_matching_2col(H, EdgePartition.single(H.m, 2), 2)
    G = complete_hypergraph(5, 2)
    with pytest.raises(InputError):
        find_mono_matching_2col(G, EdgePartition.single(G.m, 2), 1)


def test_matching_2col_k3_on_k11():
    # chi(K_11^3) = 6 = 2k for k = 3
    H = complete_hypergraph(11, 3)
    rng = random.Random(4)
    for _ in range(20):
        P = _random_partition(rng, H.m, 2)
        w = find_mono_matching_2col(H, P, 3, chi=6)
        assert witness_errors(H, P, w) == [] and len(w.edge_indices) == 3


def test_embed_single_edge_and_star():
    H = complete_hypergraph(5, 3)
    phi = embed_tree(H, star(3, 2))
    idx = embedded_edges(H, star(3, 2), phi)
    a, b = (set(H.edges[i]) for i in idx)
    assert len(a & b) == 1
    assert embed_tree(Hypergraph(3, ((0, 1, 2),), 3), matching(3, 1)) is not None


def test_embed_none_below_bound():
    # K_4^3 has chi 2 and only four vertices, too few for S_2^3
    assert embed_tree(complete_hypergraph(4, 3), star(3, 2)) is None


def test_forest_has_no_guarantee():
    # K_5^3 has chromatic number 3 but no two disjoint triples
    assert embed_tree(complete_hypergraph(5, 3), matching(3, 2), chi=3) is None
    with pytest.raises(InputError):
        find_mono_tree(complete_hypergraph(7, 3), EdgePartition.single(35), matching(3, 2))


def test_embed_rejects_cycles():
    C = Hypergraph(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0)), 3)
    with pytest.raises(InputError):
        embed_tree(complete_hypergraph(7, 3), C)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["star", "path"]))
def test_embed_never_fails_above_bound(seed, shape):
    rng = random.Random(seed)
    n = rng.randint(5, 9)
    H = Hypergraph(n, tuple(e for e in itertools.combinations(range(n), 3) if rng.random() < 0.7), 3)
    if not H.m:
        return
    chi = chromatic_number(H)[0]
    k = chi - 1
    if k < 1:
        return
    T = {"star": star, "path": loose_path}[shape](3, k)
    phi = embed_tree(H, T, chi=chi)
    assert phi is not None and len(set(phi)) == T.n


def test_star_t1_and_sharp_witness():
    H = gen_star_witness(3, 2)
    assert H == complete_hypergraph(4, 3) and chromatic_number(H)[0] == 2
    assert not oracle_has_mono(H, EdgePartition.single(H.m), "star", 2)[0]
    K = complete_hypergraph(5, 3)
    w = find_mono_star(K, EdgePartition.single(K.m), 2)
    assert witness_errors(K, EdgePartition.single(K.m), w) == []
    assert gen_star_witness(2, 3) == complete_hypergraph(3, 2)


def test_star_every_2coloring_k5():
    H = complete_hypergraph(5, 3)
    for cols in itertools.product((1, 2), repeat=H.m):
        P = EdgePartition(cols, 2)
        w = find_mono_star(H, P, 2)
        assert witness_errors(H, P, w) == []


def test_star_t3_on_k9():
    H = complete_hypergraph(9, 3)  # chi 5
    rng = random.Random(6)
    for _ in range(30):
        P = _random_partition(rng, H.m, 3)
        assert witness_errors(H, P, find_mono_star(H, P, 2, chi=5)) == []


def test_two_star():
    H = complete_hypergraph(5, 3)
    rng = random.Random(1)
    for _ in range(50):
        P = _random_partition(rng, H.m, 2)
        w = find_mono_two_star(H, P)
        assert witness_errors(H, P, w) == []
    two = Hypergraph(6, ((0, 1, 2), (3, 4, 5)), 3)
    with pytest.raises(InputError):
        find_mono_two_star(two, EdgePartition((1, 2), 2))


def test_tree_finder():
    H = complete_hypergraph(9, 3)  # chi 5 >= 2^2 + 1
    T = star(3, 2)
    rng = random.Random(9)
    for _ in range(20):
        P = _random_partition(rng, H.m, 2)
        w = find_mono_tree(H, P, T, chi=5)
        assert witness_errors(H, P, w, T) == []
        sub, _ = class_hypergraph(H, P, w.class_index)
        assert chromatic_number(sub)[0] >= 3
    with pytest.raises(InputError):
        find_mono_tree(complete_hypergraph(7, 3), EdgePartition.single(35, 2), T, chi=4)


def test_single_edge_tree_t2():
    H = Hypergraph(3, ((0, 1, 2),), 3)
    w = find_mono_tree(H, EdgePartition((2,), 2), matching(3, 1))
    assert w.class_index == 2


@pytest.mark.parametrize("r, k, t, N", [(3, 2, 2, 6), (2, 2, 2, 4), (3, 2, 1, 5), (2, 3, 3, 9)])
def test_matching_extremal_absence(r, k, t, N):
    H, P = gen_matching_extremal(r, k, t)
    assert H.n == N
    assert not oracle_has_mono(H, P, "matching", k)[0]


def test_matching_extremal_structure():
    H, P = gen_matching_extremal(3, 2, 2)
    for e, c in zip(H.edges, P.class_of):
        assert (c == 1) == (0 in e)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_two_factor_split_regular(k):
    H, P = gen_two_factor_split(k)
    assert H == complete_hypergraph(2 * k - 1, 2)
    for cls in (1, 2):
        sub, _ = class_hypergraph(H, P, cls)
        assert all(sub.degree(v) == k - 1 for v in range(sub.n))
    assert not oracle_has_mono(H, P, "star", k)[0]


@pytest.mark.parametrize("k", [2, 1, 4])
def test_two_factor_split_rejects(k):
    with pytest.raises(InputError):
        gen_two_factor_split(k)


def test_lower_witnesses():
    w = assemble_lower_witness("matching", r=3, k=2, t=2)
    assert w.chi == 3 and w.lower == 4
    w = assemble_lower_witness("star", r=3, k=2)
    assert w.lower == 3
    w = assemble_lower_witness("searched", N=5, r=3, tree="star", k=2, t=3)
    assert w.lower == 4
    assert not oracle_has_mono(w.H, w.P, "star", 2)[0]
    with pytest.raises(InputError):
        assemble_lower_witness("searched", N=7, r=3, tree="matching", k=2, t=2)


def test_invariant_error_type():
    assert issubclass(InvariantError, RuntimeError)
