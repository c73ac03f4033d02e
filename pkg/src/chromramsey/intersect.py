"""1-intersection graphs and the structure of triple systems without 1-intersections.

A triple system whose edges never meet in exactly one vertex splits into
components of two kinds:

* ``B`` parts: k triples all containing one fixed pair, the *base*;
* ``K`` parts: three or four distinct triples on the same four vertices;

plus isolated (trivial) vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError, InvariantError
from .hypercore import EdgePartition, Hypergraph, VertexColoring, components, is_proper


def one_intersection_graph(H: Hypergraph) -> Hypergraph:
    """Graph on the edge indices of ``H``; ``i ~ j`` iff the edges share exactly one vertex."""
    masks = H.masks
    pairs = []
    for i in range(H.m):
        a = masks[i]
        for j in range(i + 1, H.m):
            if (a & masks[j]).bit_count() == 1:
                pairs.append((i, j))
    return Hypergraph(H.m, tuple(pairs), 2)


def one_intersecting_pairs(H: Hypergraph, edge_indices=None) -> list[tuple[int, int]]:
    idx = range(H.m) if edge_indices is None else sorted(edge_indices)
    masks = H.masks
    return [
        (i, j)
        for i, j in itertools.combinations(idx, 2)
        if (masks[i] & masks[j]).bit_count() == 1
    ]


def partition_from_igraph_coloring(H: Hypergraph, c: VertexColoring) -> EdgePartition:
    """Read a proper coloring of the 1-intersection graph as an edge partition."""
    G = one_intersection_graph(H)
    if len(c) != H.m:
        raise InputError(f"coloring has {len(c)} entries, hypergraph has {H.m} edges")
    if not is_proper(G, c):
        bad = next(e for e in G.edges if c[e[0]] == c[e[1]])
        raise InputError(f"edges {bad[0]} and {bad[1]} meet in one vertex but share class {c[bad[0]]}")
    return EdgePartition(c.colors, max(c.m, 1))


@dataclass(frozen=True)
class Part:
    """One component of a 1-intersection-free triple system.

    ``kind`` is ``"B"``, ``"K"`` or ``"trivial"``.  For B parts ``base`` is the
    shared pair; ``edges`` are indices into the decomposed hypergraph.
    """

    kind: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...] = ()
    base: tuple[int, int] | None = None

    @property
    def k(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class StructureDecomposition:
    parts: tuple[Part, ...]

    def of_kind(self, kind: str) -> list[Part]:
        return [p for p in self.parts if p.kind == kind]


def _require_triples(H: Hypergraph) -> None:
    if H.m and H.r != 3:
        raise InputError(f"expected a 3-uniform hypergraph, got r={H.r}")


def structure_decompose(H: Hypergraph, edge_indices=None) -> StructureDecomposition:
    """Classify the components of a triple system with no 1-intersections.

    With ``edge_indices`` only those edges of ``H`` are considered (all
    vertices are kept); part edge indices still refer to ``H``.
    """
    _require_triples(H)
    idx = list(range(H.m)) if edge_indices is None else sorted(edge_indices)
    bad = one_intersecting_pairs(H, idx)
    if bad:
        i, j = bad[0]
        raise InputError(f"edges {H.edges[i]} and {H.edges[j]} meet in exactly one vertex")
    sub = Hypergraph(H.n, tuple(H.edges[i] for i in idx), H.r)
    comp_of = {}
    comps = components(sub)
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    comp_edges: list[list[int]] = [[] for _ in comps]
    for i in idx:
        comp_edges[comp_of[H.edges[i][0]]].append(i)

    parts = []
    for comp, edges in zip(comps, comp_edges):
        verts = tuple(comp)
        if not edges:
            parts.append(Part("trivial", verts))
            continue
        if len(verts) == 4 and len(edges) >= 3:
            parts.append(Part("K", verts, tuple(edges)))
            continue
        # every other nontrivial component is B_m around its most popular pair
        count: dict[tuple[int, int], int] = {}
        for i in edges:
            for pair in itertools.combinations(H.edges[i], 2):
                count[pair] = count.get(pair, 0) + 1
        base = min(count, key=lambda p: (-count[p], p))
        if count[base] != len(edges):
            raise InvariantError(f"component {verts} is neither a B- nor a K-component")
        parts.append(Part("B", verts, tuple(edges), base))
    return StructureDecomposition(tuple(parts))


def two_color_no_one_intersections(H: Hypergraph) -> VertexColoring:
    """Proper 2-coloring of a 1-intersection-free triple system, read off its parts."""
    dec = structure_decompose(H)
    colors = [1] * H.n
    for part in dec.parts:
        if part.kind == "B":
            colors[part.base[1]] = 2
        elif part.kind == "K":
            a, b, c, d = part.vertices
            colors[c] = colors[d] = 2
    col = VertexColoring(colors)
    if not is_proper(H, col):
        raise InvariantError("decomposition coloring left a monochromatic triple")
    return col
