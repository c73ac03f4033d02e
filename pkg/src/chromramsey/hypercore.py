"""Uniform hypergraphs, vertex colorings, edge partitions and exact coloring.

Vertices are the integers ``0..n-1``.  Edges are stored as sorted tuples and
the edge list itself is kept in lexicographic order, so two hypergraphs with
the same edge set compare equal and edge indices are stable.  Graphs are just
2-uniform hypergraphs.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .errors import InputError, ResourceError

DEFAULT_VERTEX_CAP = 64
DEFAULT_EDGE_CAP = 100_000

# the backtracking search recurses once per vertex
sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...] = ()
    r: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"negative vertex count {self.n}")
        norm = []
        for e in self.edges:
            s = tuple(sorted(e))
            if len(set(s)) != len(s):
                raise InputError(f"edge {tuple(e)} repeats a vertex")
            if len(s) < 2:
                raise InputError(f"edge {tuple(e)} has fewer than 2 vertices")
            if s[0] < 0 or s[-1] >= self.n:
                raise InputError(f"edge {tuple(e)} out of range for n={self.n}")
            norm.append(s)
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise InputError(f"duplicate edge {a}")
        sizes = {len(e) for e in norm}
        r = self.r
        if r is None:
            if len(sizes) == 1:
                r = sizes.pop()
        elif sizes - {r}:
            raise InputError(f"edges of size {sorted(sizes - {r})} in a {r}-uniform hypergraph")
        if r is not None and r < 2:
            raise InputError(f"uniformity must be at least 2, got {r}")
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "r", r)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices containing each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def uniformity(self) -> int:
        if self.r is None:
            raise InputError("operation requires a uniform hypergraph")
        return self.r

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self.edge_index

    def neighbors(self, v: int) -> set[int]:
        out: set[int] = set()
        for i in self.incidence[v]:
            out.update(self.edges[i])
        out.discard(v)
        return out

    def edge_subhypergraph(self, edge_indices: Iterable[int]) -> Hypergraph:
        """Spanning sub-hypergraph keeping only the given edges.

        Edge ``j`` of the result is the ``j``-th smallest of ``edge_indices``.
        """
        return Hypergraph(self.n, tuple(self.edges[i] for i in sorted(set(edge_indices))), self.r)

    def relabel(self, perm: Sequence[int]) -> Hypergraph:
        """Image under the vertex map ``v -> perm[v]``."""
        return Hypergraph(self.n, tuple(tuple(perm[v] for v in e) for e in self.edges), self.r)


@dataclass(frozen=True)
class VertexColoring:
    colors: tuple[int, ...]

    def __post_init__(self):
        cols = tuple(int(c) for c in self.colors)
        if any(c < 1 for c in cols):
            raise InputError("colors must be positive integers")
        object.__setattr__(self, "colors", cols)

    @property
    def m(self) -> int:
        """Largest color used (colors need not be contiguous)."""
        return max(self.colors, default=0)

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def __iter__(self):
        return iter(self.colors)


@dataclass(frozen=True)
class EdgePartition:
    """A t-edge-coloring: ``class_of[i]`` is the class (1..t) of edge ``i``."""

    class_of: tuple[int, ...]
    t: int

    def __post_init__(self):
        cls = tuple(int(c) for c in self.class_of)
        if self.t < 1:
            raise InputError(f"partition needs t >= 1, got {self.t}")
        bad = [c for c in cls if not 1 <= c <= self.t]
        if bad:
            raise InputError(f"class index {bad[0]} outside 1..{self.t}")
        object.__setattr__(self, "class_of", cls)

    @classmethod
    def single(cls, m: int, t: int = 1) -> EdgePartition:
        return cls((1,) * m, t)

    def classes(self) -> list[list[int]]:
        """Edge indices of each class; entry ``i`` holds class ``i+1``."""
        out: list[list[int]] = [[] for _ in range(self.t)]
        for i, c in enumerate(self.class_of):
            out[c - 1].append(i)
        return out

    def check(self, H: Hypergraph) -> None:
        if len(self.class_of) != H.m:
            raise InputError(f"partition covers {len(self.class_of)} edges, hypergraph has {H.m}")


def class_hypergraph(H: Hypergraph, P: EdgePartition, i: int) -> tuple[Hypergraph, list[int]]:
    """The spanning hypergraph ``(V, E_i)`` and its edge-index map back into ``H``."""
    P.check(H)
    idx = [j for j, c in enumerate(P.class_of) if c == i]
    return H.edge_subhypergraph(idx), idx


@dataclass(frozen=True)
class GreedyWitnesses:
    coloring: VertexColoring
    witnesses: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.coloring.m


def _as_colors(H: Hypergraph, c) -> tuple[int, ...]:
    cols = c.colors if isinstance(c, VertexColoring) else tuple(c)
    if len(cols) != H.n:
        raise InputError(f"coloring has length {len(cols)}, expected {H.n}")
    if any(x < 1 for x in cols):
        raise InputError("colors must be positive integers")
    return cols


def is_proper(H: Hypergraph, c: VertexColoring | Sequence[int]) -> bool:
    cols = _as_colors(H, c)
    for e in H.edges:
        first = cols[e[0]]
        if all(cols[v] == first for v in e[1:]):
            return False
    return True


def monochromatic_edges(H: Hypergraph, c: VertexColoring | Sequence[int]) -> list[int]:
    cols = _as_colors(H, c)
    return [i for i, e in enumerate(H.edges) if len({cols[v] for v in e}) == 1]


def components(H: Hypergraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    parent = list(range(H.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in H.edges:
        a = find(e[0])
        for v in e[1:]:
            b = find(v)
            if a != b:
                if b < a:
                    a, b = b, a
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def induced(H: Hypergraph, A: Iterable[int]) -> tuple[Hypergraph, list[int]]:
    """``H[A]``: edges inside ``A``, re-indexed.  Returns the map new -> old vertex."""
    keep = sorted(set(A))
    if keep and (keep[0] < 0 or keep[-1] >= H.n):
        raise InputError("vertex set not contained in 0..n-1")
    pos = {v: i for i, v in enumerate(keep)}
    edges = tuple(tuple(pos[v] for v in e) for e in H.edges if all(v in pos for v in e))
    return Hypergraph(len(keep), edges, H.r), keep


def remove(H: Hypergraph, A: Iterable[int]) -> tuple[Hypergraph, list[int]]:
    """``H - A``: delete the vertices of ``A`` and every edge touching them."""
    drop = set(A)
    return induced(H, (v for v in range(H.n) if v not in drop))


def complete_hypergraph(N: int, r: int, cap: int = DEFAULT_EDGE_CAP) -> Hypergraph:
    """``K_N^r``.  For ``N < r`` this is the edgeless hypergraph on N vertices."""
    if r < 2 or N < 0:
        raise InputError(f"bad parameters N={N}, r={r}")
    if comb(N, r) > cap:
        raise ResourceError(f"K_{N}^{r} has {comb(N, r)} edges, cap is {cap}")
    return Hypergraph(N, tuple(itertools.combinations(range(N), r)), r)


def is_acyclic(H: Hypergraph) -> bool:
    """Berge-acyclic: the vertex/edge incidence graph is a forest.

    Two edges meeting in two or more vertices already form a cycle.
    """
    parent = list(range(H.n + H.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, e in enumerate(H.edges):
        for v in e:
            a, b = find(v), find(H.n + j)
            if a == b:
                return False
            parent[a] = b
    return True


def greedy_coloring_with_witnesses(H: Hypergraph, order: Sequence[int] | None = None) -> GreedyWitnesses:
    """First-fit coloring that remembers why each color was refused.

    A vertex receives the least color that does not complete a monochromatic
    edge among the vertices colored so far.  When color ``i`` is refused while
    the vertex ends up with color ``j``, the first refusing edge is stored as
    ``witnesses[(i, j)]``: all of its vertices but the current one carry ``i``.
    Only the first vertex to receive ``j`` contributes witnesses for ``j``.
    """
    if order is None:
        order = range(H.n)
    order = list(order)
    if sorted(order) != list(range(H.n)):
        raise InputError("order must be a permutation of 0..n-1")
    masks = H.masks
    colors = [0] * H.n
    cls = [0, 0]
    wit: dict[tuple[int, int], int] = {}
    for v in order:
        bit = 1 << v
        refused = []
        c = 1
        while True:
            cm = cls[c]
            hit = -1
            for i in H.incidence[v]:
                rest = masks[i] & ~bit
                if rest & cm == rest:
                    hit = i
                    break
            if hit < 0:
                break
            refused.append((c, hit))
            c += 1
            if c == len(cls):
                cls.append(0)
        colors[v] = c
        cls[c] |= bit
        for i, e in refused:
            wit.setdefault((i, c), e)
    return GreedyWitnesses(VertexColoring(colors), wit)


def _degeneracy_order(H: Hypergraph, verts: list[int]) -> list[int]:
    """Reverse smallest-last order of ``verts`` (densest core first)."""
    alive = set(verts)
    live_edges = [set(e) for e in H.edges]
    edge_alive = [True] * H.m
    deg = {v: len(H.incidence[v]) for v in verts}
    out = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], -x))
        out.append(v)
        alive.discard(v)
        for i in H.incidence[v]:
            if edge_alive[i]:
                edge_alive[i] = False
                for u in live_edges[i]:
                    if u in alive:
                        deg[u] -= 1
    out.reverse()
    return out


def _search_coloring(H: Hypergraph, order: list[int], m: int, colors: list[int]) -> bool:
    """Backtracking m-coloring of the vertices in ``order`` (writes ``colors``)."""
    masks = H.masks
    rests = {}
    for v in order:
        bit = 1 << v
        rests[v] = tuple(masks[i] & ~bit for i in H.incidence[v])
    cls = [0] * (m + 1)
    N = len(order)

    def rec(i, used):
        if i == N:
            return True
        v = order[i]
        bit = 1 << v
        rv = rests[v]
        # the first vertex always takes color 1, a fresh color is only tried once
        for c in range(1, min(used + 1, m) + 1):
            cm = cls[c]
            for rest in rv:
                if rest & cm == rest:
                    break
            else:
                cls[c] = cm | bit
                colors[v] = c
                if rec(i + 1, c if c > used else used):
                    return True
                cls[c] = cm
        return False

    return rec(0, 0)


def k_coloring(H: Hypergraph, m: int, cap: int = DEFAULT_VERTEX_CAP) -> VertexColoring | None:
    """A proper coloring with at most ``m`` colors, or None if none exists."""
    if H.n > cap:
        raise ResourceError(f"{H.n} vertices exceeds the cap of {cap}")
    if m < 1:
        return None
    colors = [1] * H.n
    if not H.edges:
        return VertexColoring(colors)
    if m == 1:
        return None
    for comp in components(H):
        if len(comp) == 1:
            continue
        if not _search_coloring(H, _degeneracy_order(H, comp), m, colors):
            return None
    return VertexColoring(colors)


def chromatic_number(H: Hypergraph, cap: int = DEFAULT_VERTEX_CAP) -> tuple[int, VertexColoring]:
    """Exact chromatic number with a witness coloring using exactly that many colors.

    Edgeless hypergraphs get chi = 1.  Components are solved independently;
    each is searched for m = 2, 3, ... until colorable, with the greedy count
    in the search order as a ceiling.
    """
    if H.n > cap:
        raise ResourceError(f"{H.n} vertices exceeds the cap of {cap}")
    colors = [1] * H.n
    chi = 1
    for comp in components(H):
        if len(comp) == 1:
            continue
        order = _degeneracy_order(H, comp)
        greedy = _greedy_in_order(H, order)
        ub = max(greedy[v] for v in comp)
        found = False
        for m in range(2, ub):
            trial = list(colors)
            if _search_coloring(H, order, m, trial):
                colors = trial
                chi = max(chi, m)
                found = True
                break
        if not found:
            for v in comp:
                colors[v] = greedy[v]
            chi = max(chi, ub)
    return chi, VertexColoring(colors)


def _greedy_in_order(H: Hypergraph, order: list[int]) -> dict[int, int]:
    masks = H.masks
    cls = [0, 0]
    out = {}
    for v in order:
        bit = 1 << v
        c = 1
        while True:
            cm = cls[c]
            if not any((masks[i] & ~bit) & cm == masks[i] & ~bit for i in H.incidence[v]):
                break
            c += 1
            if c == len(cls):
                cls.append(0)
        cls[c] |= bit
        out[v] = c
    return out
