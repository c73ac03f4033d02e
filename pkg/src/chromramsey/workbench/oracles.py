"""Brute-force oracles, written independently of the finders they check.

Copies are found by plain set arithmetic and, for trees, by isomorphism of
incidence graphs through networkx.  Nothing here imports the finder module.
"""

from __future__ import annotations

import itertools

import networkx as nx
from networkx.algorithms import isomorphism

from ..errors import InputError
from ..hypercore import EdgePartition, Hypergraph

KINDS = ("matching", "star", "tree")


def _incidence_graph(edges) -> nx.Graph:
    G = nx.Graph()
    for j, e in enumerate(edges):
        G.add_node(("e", j), side=1)
        for v in e:
            G.add_node(("v", v), side=0)
            G.add_edge(("e", j), ("v", v))
    return G


def _same_shape(edges, T: Hypergraph) -> bool:
    if len({v for e in edges for v in e}) != T.n:
        return False
    gm = isomorphism.GraphMatcher(
        _incidence_graph(edges),
        _incidence_graph(T.edges),
        node_match=lambda a, b: a["side"] == b["side"],
    )
    return gm.is_isomorphic()


def _components(sets) -> list[set]:
    comps: list[set] = []
    for s in sets:
        touching = [c for c in comps if c & s]
        merged = set(s).union(*touching)
        comps = [c for c in comps if not c & s] + [merged]
    return comps


def _is_forest(sets) -> bool:
    """Incidence graph of ``sets`` has no cycle."""
    return sum(len(s) for s in sets) - len(sets) == len(set().union(*sets)) - len(_components(sets)) if sets else True


def _pieces(sets) -> int:
    return len(_components(sets))


def _max_disjoint(sets: list[frozenset], want: int, required=()) -> list[frozenset] | None:
    """``want`` pairwise disjoint sets including ``required``, or None."""
    used: set = set()
    for s in required:
        if used & s:
            return None
        used |= s
    chosen = list(required)
    pool = [s for s in sets if s not in required]

    def go(start):
        if len(chosen) == want:
            return True
        for i in range(start, len(pool)):
            s = pool[i]
            if used & s:
                continue
            chosen.append(s)
            used.update(s)
            if go(i + 1):
                return True
            chosen.pop()
            used.difference_update(s)
        return False

    return list(chosen) if go(0) else None


def max_disjoint_size(sets) -> int:
    """Size of the largest family of pairwise disjoint sets (exhaustive)."""
    sets = [frozenset(s) for s in sets]
    best = 0
    universe_size = len(set().union(*sets)) if sets else 0
    size = min(len(s) for s in sets) if sets else 1

    def go(start, used, count):
        nonlocal best
        best = max(best, count)
        if count + (universe_size - len(used)) // size <= best:
            return
        for i in range(start, len(sets)):
            if not used & sets[i]:
                go(i + 1, used | sets[i], count + 1)

    go(0, frozenset(), 0)
    return best


def _copy_with(pool: list[frozenset], required: list[frozenset], kind: str, k: int, T=None):
    """A copy of the target made of ``required`` plus edges from ``pool``."""
    if len(required) > k:
        return None
    if kind == "matching":
        return _max_disjoint(pool, k, required)
    if kind == "star":
        if k == 1:
            if required:
                return list(required)
            return [pool[0]] if pool else None
        centers = set.intersection(*map(set, required)) if required else set().union(*pool) if pool else set()
        for c in sorted(centers):
            if any(a & b != {c} for a, b in itertools.combinations(required, 2)):
                continue
            links = [s - {c} for s in pool if c in s and s not in required]
            got = _max_disjoint(links, k, [s - {c} for s in required])
            if got is not None:
                return [s | {c} for s in got]
        return None
    if kind == "tree":
        if T is None or T.m != k:
            raise InputError("tree oracle needs a tree with k edges")
        rest = [s for s in pool if s not in required]
        want_deg = sorted(T.degree(v) for v in range(T.n))
        want_pieces = _pieces([set(e) for e in T.edges])
        chosen = list(required)
        if not _is_forest(chosen):
            return None

        def go(start):
            if len(chosen) == k:
                edges = [tuple(sorted(s)) for s in chosen]
                deg: dict[int, int] = {}
                for e in edges:
                    for v in e:
                        deg[v] = deg.get(v, 0) + 1
                return sorted(deg.values()) == want_deg and _same_shape(edges, T)
            for i in range(start, len(rest)):
                chosen.append(rest[i])
                if _is_forest(chosen) and _pieces(chosen) - want_pieces <= (T.r - 1) * (k - len(chosen)) and go(i + 1):
                    return True
                chosen.pop()
            return False

        return list(chosen) if go(0) else None
    raise InputError(f"unknown kind {kind!r}")


def oracle_has_mono(H: Hypergraph, P: EdgePartition, kind: str, k: int, T: Hypergraph | None = None):
    """Exhaustively look for a monochromatic copy.  Returns ``(found, (class, edge indices))``."""
    P.check(H)
    if kind == "tree":
        k = T.m
    sets = [frozenset(e) for e in H.edges]
    for s, idx in enumerate(P.classes(), start=1):
        got = _copy_with([sets[i] for i in idx], [], kind, k, T)
        if got is not None:
            where = {sets[i]: i for i in idx}
            return True, (s, sorted(where[x] for x in got))
    return False, None


def oracle_exists_avoiding_partition(H: Hypergraph, kind: str, k: int, t: int, T: Hypergraph | None = None):
    """Search all t-edge-colorings for one without a monochromatic copy.

    Backtracking with forward checking: after an edge joins a class, that
    class is struck from every open edge that would complete a copy together
    with it.  Classes are interchangeable, so a new class is opened at most
    one at a time.  Returns ``(found, partition or None)``.
    """
    if kind == "tree":
        if T is None:
            raise InputError("tree kind needs T")
        k = T.m
    sets = [frozenset(e) for e in H.edges]
    m = len(sets)
    if m == 0:
        return True, EdgePartition((), t)
    full = (1 << t) - 1
    dom = [full] * m
    assign = [0] * m
    members: list[list[frozenset]] = [[] for _ in range(t + 1)]

    # single edges are copies when k == 1
    if k == 1:
        return False, None

    def conflict(c, e, g):
        return _copy_with(members[c] + [sets[g]], [sets[e], sets[g]], kind, k, T) is not None

    def go(nassigned, used):
        if nassigned == m:
            return True
        g = min((i for i in range(m) if not assign[i]), key=lambda i: (dom[i].bit_count(), i))
        for c in range(1, min(used + 1, t) + 1):
            if not dom[g] >> (c - 1) & 1:
                continue
            assign[g] = c
            members[c].append(sets[g])
            struck = []
            ok = True
            bit = 1 << (c - 1)
            for h in range(m):
                if assign[h] or not dom[h] & bit:
                    continue
                if conflict(c, g, h):
                    dom[h] &= ~bit
                    struck.append(h)
                    if not dom[h]:
                        ok = False
                        break
            if ok and go(nassigned + 1, max(used, c)):
                return True
            for h in struck:
                dom[h] |= bit
            members[c].pop()
            assign[g] = 0
        return False

    if go(0, 0):
        return True, EdgePartition(tuple(assign), t)
    return False, None
