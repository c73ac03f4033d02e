"""Matching skeletons of partitioned triple systems.

Given a partition of a triple system into classes without 1-intersections,
each class contributes a matching ``M_i``: the base of every B-part, and two
disjoint pairs of every K-part.  Every triple then contains some skeleton
edge.  A ``K_{t+1}`` component of the skeleton is *bad* when none of its
``M_1`` edges is a B-base; bad components are removed by re-pairing the
K-part that supplied one of its ``M_1`` edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .errors import InputError, InvariantError
from .hypercore import EdgePartition, Hypergraph
from .intersect import structure_decompose


@dataclass(frozen=True)
class SEdge:
    u: int
    v: int
    index: int  # matching index, 1..t
    prov: str  # "B" or "K"
    comp: int  # id into Skeleton.sources


@dataclass(frozen=True)
class Source:
    """A B- or K-part of one class; ``vertices`` is the base or the quadruple."""

    kind: str
    cls: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


@dataclass(frozen=True)
class Skeleton:
    n: int
    t: int
    sedges: tuple[SEdge, ...]
    sources: tuple[Source, ...]
    initial_bad: int = 0
    switches: int = 0

    def matching(self, i: int) -> list[SEdge]:
        return [s for s in self.sedges if s.index == i]

    def simple_adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for s in self.sedges:
            adj[s.u].add(s.v)
            adj[s.v].add(s.u)
        return adj

    def simple_edges(self) -> list[tuple[int, int]]:
        return sorted({(s.u, s.v) for s in self.sedges})

    def components(self) -> list[list[int]]:
        adj = self.simple_adjacency()
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return sorted(out)

    def max_degree(self) -> int:
        deg = [0] * self.n
        for s in self.sedges:
            deg[s.u] += 1
            deg[s.v] += 1
        return max(deg, default=0)


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def build_skeleton(H: Hypergraph, P: EdgePartition, repair: bool = True) -> Skeleton:
    """Skeleton with no bad ``K_{t+1}`` components.

    ``repair=False`` stops after the initial (lexicographic) pair choice,
    which is useful for inspecting the switching step on its own.
    """
    P.check(H)
    if H.m and H.r != 3:
        raise InputError(f"skeletons need a 3-uniform hypergraph, got r={H.r}")
    if P.t < 2:
        raise InputError(f"skeletons need t >= 2 classes, got t={P.t}")
    sedges = []
    sources = []
    for i, idx in enumerate(P.classes(), start=1):
        dec = structure_decompose(H, idx)
        for part in dec.parts:
            cid = len(sources)
            if part.kind == "B":
                sources.append(Source("B", i, part.base, part.edges))
                sedges.append(SEdge(*part.base, i, "B", cid))
            elif part.kind == "K":
                a, b, c, d = part.vertices
                sources.append(Source("K", i, part.vertices, part.edges))
                sedges.append(SEdge(a, b, i, "K", cid))
                sedges.append(SEdge(c, d, i, "K", cid))
    S = Skeleton(H.n, P.t, tuple(sedges), tuple(sources))
    if not repair:
        return S
    bad = find_bad_components(S)
    S = replace(S, initial_bad=len(bad))
    while bad:
        S = switch(S, bad[0])
        now = find_bad_components(S)
        if len(now) >= len(bad):
            raise InvariantError(f"switch did not reduce bad components ({len(bad)} -> {len(now)})")
        bad = now
    if S.switches > S.initial_bad:
        raise InvariantError("switching loop ran longer than the initial bad count")
    return S


def complete_components(S: Skeleton) -> list[tuple[int, ...]]:
    """Components whose underlying simple graph is ``K_{t+1}``."""
    adj = S.simple_adjacency()
    out = []
    for comp in S.components():
        if len(comp) != S.t + 1:
            continue
        if all(len(adj[v]) == S.t for v in comp):
            out.append(tuple(comp))
    return out


def find_bad_components(S: Skeleton) -> list[tuple[int, ...]]:
    """``K_{t+1}`` components without an ``M_1`` edge coming from a B-base.

    Components are identified by their sorted vertex tuple, listed in
    ascending order.
    """
    out = []
    for comp in complete_components(S):
        vs = set(comp)
        if not any(s.index == 1 and s.prov == "B" and s.u in vs for s in S.sedges):
            out.append(comp)
    return out


def switch(S: Skeleton, bad: tuple[int, ...]) -> Skeleton:
    """Re-pair the class-1 K-part feeding an ``M_1`` edge of a bad component.

    The K-part's pairs ``(x, y), (u, v)`` become ``(x, u), (y, v)``.
    """
    vs = set(bad)
    target = next(
        (s for s in S.sedges if s.index == 1 and s.u in vs and s.v in vs),
        None,
    )
    if target is None or target.prov != "K" or bad not in find_bad_components(S):
        raise InputError(f"{bad} is not a bad component")
    cid = target.comp
    pairs = [s for s in S.sedges if s.comp == cid]
    other = next(s for s in pairs if s is not target)
    x, y = target.u, target.v
    u, v = other.u, other.v
    new = [SEdge(*_pair(x, u), 1, "K", cid), SEdge(*_pair(y, v), 1, "K", cid)]
    rest = [s for s in S.sedges if s.comp != cid]
    return replace(S, sedges=tuple(rest + new), switches=S.switches + 1)


def check_skeleton(H: Hypergraph, P: EdgePartition, S: Skeleton) -> list[str]:
    """Violations of the skeleton properties, as messages (empty when sound)."""
    problems = []
    for i in range(1, S.t + 1):
        seen: set[int] = set()
        for s in S.matching(i):
            if s.u in seen or s.v in seen:
                problems.append(f"M_{i} is not a matching at ({s.u},{s.v})")
            seen.update((s.u, s.v))
    for j, e in enumerate(H.edges):
        cls = P.class_of[j]
        if not any(s.index == cls and s.u in e and s.v in e for s in S.sedges):
            problems.append(f"triple {e} contains no M_{cls} edge")
    if S.max_degree() > S.t:
        problems.append(f"maximum degree {S.max_degree()} exceeds t={S.t}")
    for comp in complete_components(S):
        vs = set(comp)
        carried: dict[tuple[int, int], int] = {}
        for s in S.sedges:
            if s.u in vs:
                carried[(s.u, s.v)] = carried.get((s.u, s.v), 0) + 1
        for pair in itertools.combinations(comp, 2):
            if carried.get(pair, 0) != 1:
                problems.append(f"K_{S.t + 1} component {comp} not factorized at {pair}")
    if find_bad_components(S):
        problems.append(f"bad components remain: {find_bad_components(S)}")
    by_comp: dict[int, list[SEdge]] = {}
    for s in S.sedges:
        by_comp.setdefault(s.comp, []).append(s)
    for cid, src in enumerate(S.sources):
        got = by_comp.get(cid, [])
        if src.kind == "B" and [(s.u, s.v) for s in got] != [src.vertices]:
            problems.append(f"B source {cid} does not contribute its base")
        if src.kind == "K":
            ends = [x for s in got for x in (s.u, s.v)]
            if len(got) != 2 or sorted(ends) != list(src.vertices):
                problems.append(f"K source {cid} does not contribute two disjoint pairs")
    return problems
