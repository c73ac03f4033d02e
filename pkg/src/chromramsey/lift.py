"""Lift a proper t-coloring of the 1-intersection graph to a t-coloring of a triple system.

Pipeline: build the matching skeleton, then color the skeleton graph.  Each
skeleton component that is not ``K_{t+1}`` is colored with at most ``t``
colors by a constructive Brooks coloring.  For odd ``t`` the ``K_{t+1}``
components are colored by hand (one B-base gets color 1 twice) and the rest
of the graph is list-colored with color 1 withheld from the vertices that
would close a monochromatic triple on such a base.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, InvariantError
from .hypercore import DEFAULT_VERTEX_CAP, EdgePartition, Hypergraph, VertexColoring, chromatic_number, is_proper
from .intersect import one_intersection_graph, partition_from_igraph_coloring, two_color_no_one_intersections
from .skeleton import Skeleton, build_skeleton, complete_components

Adj = dict[int, set[int]]


def _graph_adj(G: Hypergraph) -> Adj:
    if G.m and G.r != 2:
        raise InputError(f"expected a graph, got a {G.r}-uniform hypergraph")
    adj: Adj = {v: set() for v in range(G.n)}
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _connected(adj: Adj, skip=()) -> bool:
    verts = [v for v in adj if v not in skip]
    if not verts:
        return True
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and y not in skip:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def _is_complete(adj: Adj) -> bool:
    q = len(adj)
    return all(len(nb) == q - 1 for nb in adj.values())


def _bipartition(adj: Adj) -> dict[int, int] | None:
    col: dict[int, int] = {}
    for s in sorted(adj):
        if s in col:
            continue
        col[s] = 1
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in col:
                    col[y] = 3 - col[x]
                    queue.append(y)
                elif col[y] == col[x]:
                    return None
    return col


def _greedy(adj: Adj, order: Sequence[int], col: dict[int, int], limit: int) -> None:
    for v in order:
        used = {col[u] for u in adj[v] if u in col}
        c = 1
        while c in used:
            c += 1
        if c > limit:
            raise InvariantError(f"greedy step at vertex {v} needs color {c} > {limit}")
        col[v] = c


def _bfs_far_first(adj: Adj, root: int, skip=()) -> list[int]:
    """Vertices reachable from ``root`` by decreasing BFS distance, root last."""
    dist = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y not in dist and y not in skip:
                dist[y] = dist[x] + 1
                queue.append(y)
    return sorted(dist, key=lambda v: (-dist[v], v))


def _cut_vertex(adj: Adj) -> int | None:
    for v in sorted(adj):
        if not _connected(adj, skip={v}):
            return v
    return None


def _brooks(adj: Adj) -> dict[int, int]:
    delta = max(len(nb) for nb in adj.values())
    if _is_complete(adj):
        raise InputError("Brooks coloring does not apply to complete graphs")
    if delta <= 2:
        col = _bipartition(adj)
        if col is None:
            raise InputError("Brooks coloring does not apply to odd cycles")
        return col
    col: dict[int, int] = {}
    low = [v for v in sorted(adj) if len(adj[v]) < delta]
    if low:
        # every vertex but the root still has its BFS parent uncolored
        _greedy(adj, _bfs_far_first(adj, low[0]), col, delta)
        return col
    cut = _cut_vertex(adj)
    if cut is not None:
        for piece in _pieces(adj, cut):
            sub = {v: adj[v] & piece for v in piece}
            part: dict[int, int] = {}
            _greedy(sub, _bfs_far_first(sub, cut), part, delta)
            # rename colors so the cut vertex is 1 in every piece
            a = part[cut]
            for v, c in part.items():
                col[v] = 1 if c == a else (a if c == 1 else c)
        return col
    for x in sorted(adj):
        for y, z in itertools.combinations(sorted(adj[x]), 2):
            if z in adj[y] or not _connected(adj, skip={y, z}):
                continue
            col[y] = col[z] = 1
            _greedy(adj, _bfs_far_first(adj, x, skip={y, z}), col, delta)
            return col
    raise InvariantError("no Brooks triple in a 2-connected regular non-complete graph")


def _pieces(adj: Adj, cut: int) -> list[set[int]]:
    """Vertex sets ``C ∪ {cut}`` for the components ``C`` of ``G - cut``."""
    seen = {cut}
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(comp | {cut})
    return out


def brooks_color(G: Hypergraph) -> VertexColoring:
    """Color a connected graph with at most max-degree colors.

    The graph must not be complete or an odd cycle.
    """
    adj = _graph_adj(G)
    if not adj or not _connected(adj):
        raise InputError("Brooks coloring needs a connected nonempty graph")
    col = _brooks(adj)
    return VertexColoring([col[v] for v in range(G.n)])


def _list_color(adj: Adj, lists: dict[int, set[int]]) -> tuple[dict[int, int], int]:
    remaining = set(adj)
    deg = {v: len(adj[v]) for v in adj}
    stack = []
    ready = sorted(v for v in adj if deg[v] < len(lists[v]))
    while ready:
        v = ready.pop()
        if v not in remaining:
            continue
        remaining.discard(v)
        stack.append(v)
        for u in adj[v]:
            if u in remaining:
                deg[u] -= 1
                if deg[u] < len(lists[u]):
                    ready.append(u)
    col: dict[int, int] = {}
    residue = sorted(remaining)

    def rec():
        best, best_opts = None, None
        for v in residue:
            if v in col:
                continue
            used = {col[u] for u in adj[v] if u in col}
            opts = sorted(lists[v] - used)
            if best is None or len(opts) < len(best_opts):
                best, best_opts = v, opts
                if not opts:
                    break
        if best is None:
            return True
        for c in best_opts:
            col[best] = c
            if rec():
                return True
        del col[best]
        return False

    if not rec():
        raise InvariantError(f"list coloring failed on a residue of {len(residue)} vertices")
    for v in reversed(stack):
        used = {col[u] for u in adj[v] if u in col}
        opts = sorted(lists[v] - used)
        if not opts:
            raise InvariantError(f"peeled vertex {v} has no color left")
        col[v] = opts[0]
    return col, len(residue)


def list_color(F: Hypergraph, lists: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Proper coloring of the graph ``F`` with ``c(v)`` taken from ``lists[v]``.

    Vertices whose list outnumbers their remaining degree are peeled off and
    colored last; what is left is solved by backtracking.
    """
    adj = _graph_adj(F)
    if len(lists) != F.n:
        raise InputError(f"{len(lists)} lists for {F.n} vertices")
    col, _ = _list_color(adj, {v: set(lists[v]) for v in adj})
    return tuple(col[v] for v in range(F.n))


@dataclass(frozen=True)
class LiftContext:
    skeleton: Skeleton
    kcomps: tuple[tuple[int, ...], ...]
    bases: tuple[tuple[int, int], ...]
    X: frozenset[int]
    Z: frozenset[int]
    F: tuple[int, ...]
    lists: dict[int, frozenset[int]]
    residue: int = 0


@dataclass(frozen=True)
class LiftResult:
    coloring: VertexColoring
    t: int
    skeleton: Skeleton
    context: LiftContext | None = None


def _color_component(adj: Adj, t: int) -> dict[int, int]:
    verts = sorted(adj)
    if len(verts) == 1:
        return {verts[0]: 1}
    if _is_complete(adj):
        if len(verts) > t:
            raise InvariantError(f"K_{len(verts)} skeleton component with t={t}")
        return {v: i for i, v in enumerate(verts, start=1)}
    delta = max(len(adj[v]) for v in verts)
    if delta > t:
        raise InvariantError(f"skeleton degree {delta} exceeds t={t}")
    if delta == 2 and _bipartition(adj) is None:
        if t == 2:
            raise InvariantError("odd cycle in a skeleton built from two matchings")
        col: dict[int, int] = {}
        _greedy(adj, verts, col, 3)
        return col
    return _brooks(adj)


def lift_details(H: Hypergraph, P: EdgePartition) -> LiftResult:
    """Run the lift and keep the intermediate objects."""
    P.check(H)
    t = P.t
    if t < 2:
        raise InputError("lifting needs t >= 2 classes")
    S = build_skeleton(H, P)
    adj_all = S.simple_adjacency()
    adj: Adj = {v: set(adj_all[v]) for v in range(H.n)}
    kcomps = complete_components(S)
    if kcomps and t % 2 == 0:
        raise InvariantError(f"K_{t + 1} skeleton component with even t={t}")
    colors = [0] * H.n
    ctx = None
    if not kcomps:
        for comp in S.components():
            part = _color_component({v: adj[v] for v in comp}, t)
            for v, c in part.items():
                colors[v] = c
    else:
        ctx = _odd_branch(H, P, S, adj, kcomps, colors)
    col = VertexColoring(colors)
    if not is_proper(H, col) or col.m > t:
        raise InvariantError(f"lift produced an improper or oversized coloring (m={col.m}, t={t})")
    return LiftResult(col, t, S, ctx)


def _odd_branch(H, P, S, adj, kcomps, colors) -> LiftContext:
    t = S.t
    bases = []
    X: set[int] = set()
    Z: set[int] = set()
    marked_sources = []
    for comp in kcomps:
        vs = set(comp)
        s = min(
            (s for s in S.sedges if s.index == 1 and s.prov == "B" and s.u in vs),
            key=lambda s: (s.u, s.v),
            default=None,
        )
        if s is None:
            raise InvariantError(f"bad component {comp} survived the skeleton repair")
        bases.append((s.u, s.v))
        marked_sources.append(S.sources[s.comp])
        X |= vs
        colors[s.u] = colors[s.v] = 1
        rest = [v for v in comp if v not in (s.u, s.v)]
        for c, v in enumerate(rest, start=2):
            colors[v] = c
    for src in marked_sources:
        for j in src.edges:
            for z in H.edges[j]:
                if z not in X:
                    Z.add(z)
    for z in Z:
        if len(adj[z]) > t - 1:
            raise InvariantError(f"vertex {z} of Z has skeleton degree {len(adj[z])} > t-1")
    F = [v for v in range(H.n) if v not in X]
    lists = {v: set(range(2, t + 1)) if v in Z else set(range(1, t + 1)) for v in F}
    fadj = {v: {u for u in adj[v] if u not in X} for v in F}
    col, residue = _list_color(fadj, lists)
    for v, c in col.items():
        colors[v] = c
    for (x, y), src in zip(bases, marked_sources):
        for j in src.edges:
            third = next(w for w in H.edges[j] if w not in (x, y))
            if colors[third] == 1:
                raise InvariantError(f"triple {H.edges[j]} on marked base ({x},{y}) is monochromatic")
    return LiftContext(
        S,
        tuple(kcomps),
        tuple(bases),
        frozenset(X),
        frozenset(Z),
        tuple(F),
        {v: frozenset(L) for v, L in lists.items()},
        residue,
    )


def lift_coloring(H: Hypergraph, P: EdgePartition) -> VertexColoring:
    """Proper coloring of ``H`` with at most ``P.t`` colors.

    Every class of ``P`` must be free of 1-intersecting pairs, i.e. ``P`` is a
    proper coloring of the 1-intersection graph.
    """
    return lift_details(H, P).coloring


def color_via_intersection(H: Hypergraph, cap: int = DEFAULT_VERTEX_CAP) -> tuple[int, VertexColoring]:
    """Color a triple system through its 1-intersection graph.

    Returns ``(t, coloring)`` where ``t`` is the chromatic number of the
    1-intersection graph (2 when it has no edges) and the coloring uses at
    most ``t`` colors.
    """
    if not H.m:
        raise InputError("need at least one triple")
    if H.r != 3:
        raise InputError(f"expected a 3-uniform hypergraph, got r={H.r}")
    G = one_intersection_graph(H)
    if not G.m:
        return 2, two_color_no_one_intersections(H)
    t, c = chromatic_number(G, cap=cap)
    return t, lift_coloring(H, partition_from_igraph_coloring(H, c))
