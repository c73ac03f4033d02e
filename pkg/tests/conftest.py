import itertools

from hypothesis import strategies as st

from chromramsey.hypercore import Hypergraph


@st.composite
def hypergraphs(draw, r=3, n_min=3, n_max=8, max_edges=14):
    n = draw(st.integers(n_min, n_max))
    rsets = list(itertools.combinations(range(n), r))
    chosen = draw(st.lists(st.sampled_from(rsets), unique=True, max_size=min(max_edges, len(rsets))))
    return Hypergraph(n, tuple(chosen), r)


def brute_chi(H):
    """Chromatic number by trying every coloring; only for tiny H."""
    if not H.edges:
        return 1
    for m in range(1, H.n + 1):
        for cols in itertools.product(range(m), repeat=H.n):
            if all(len({cols[v] for v in e}) > 1 for e in H.edges):
                return m
    raise AssertionError("unreachable")


FANO = Hypergraph(7, ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)), 3)
