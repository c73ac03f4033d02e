"""Monochromatic matchings, stars and trees in edge-colored hypergraphs.

The finders are constructive: each one follows the argument that guarantees a
monochromatic copy once the host's chromatic number is large enough, and
raises :class:`InvariantError` if that guarantee ever fails.  The generators
build edge-colored complete hypergraphs that avoid a monochromatic copy and
so certify lower bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import ceil

from .errors import InputError, InvariantError
from .hypercore import (
    EdgePartition,
    Hypergraph,
    chromatic_number,
    class_hypergraph,
    complete_hypergraph,
    components,
    greedy_coloring_with_witnesses,
    is_acyclic,
)
from .intersect import one_intersecting_pairs


@dataclass(frozen=True)
class MonoWitness:
    kind: str  # "matching", "star" or "tree"
    class_index: int
    edge_indices: tuple[int, ...]
    center: int | None = None
    embedding: tuple[int, ...] | None = None  # host vertex of each tree vertex


# -- small trees ------------------------------------------------------------

def star(r: int, k: int) -> Hypergraph:
    """``S_k^r`` with center 0."""
    return Hypergraph(1 + k * (r - 1), tuple((0, *range(1 + i * (r - 1), 1 + (i + 1) * (r - 1))) for i in range(k)), r)


def matching(r: int, k: int) -> Hypergraph:
    """``M_k^r``."""
    return Hypergraph(k * r, tuple(tuple(range(i * r, (i + 1) * r)) for i in range(k)), r)


def loose_path(r: int, k: int) -> Hypergraph:
    """k edges in a row, consecutive ones sharing exactly one vertex."""
    if k == 0:
        return Hypergraph(0, (), r)
    return Hypergraph(1 + k * (r - 1), tuple(tuple(range(i * (r - 1), i * (r - 1) + r)) for i in range(k)), r)


# -- validation ---------------------------------------------------------------

def witness_errors(H: Hypergraph, P: EdgePartition, w: MonoWitness, T: Hypergraph | None = None) -> list[str]:
    """Everything wrong with a claimed monochromatic copy (empty when valid)."""
    errs = []
    if any(not 0 <= i < H.m for i in w.edge_indices):
        return [f"edge index out of range in {w.edge_indices}"]
    if len(set(w.edge_indices)) != len(w.edge_indices):
        errs.append("repeated edge")
    if any(P.class_of[i] != w.class_index for i in w.edge_indices):
        errs.append(f"edges not all in class {w.class_index}")
    sets = [set(H.edges[i]) for i in w.edge_indices]
    if w.kind == "matching":
        for a, b in itertools.combinations(sets, 2):
            if a & b:
                errs.append(f"edges {sorted(a)} and {sorted(b)} intersect")
    elif w.kind == "star":
        if len(sets) >= 2:
            for a, b in itertools.combinations(sets, 2):
                if a & b != {w.center}:
                    errs.append(f"edges {sorted(a)} and {sorted(b)} do not meet exactly in {w.center}")
        elif sets and w.center not in sets[0]:
            errs.append("center not in the edge")
    elif w.kind == "tree":
        if T is None or w.embedding is None:
            return errs + ["tree witness needs the tree and an embedding"]
        phi = w.embedding
        if len(set(phi)) != len(phi):
            errs.append("embedding is not injective")
        images = sorted(H.edge_index.get(tuple(sorted(phi[x] for x in te)), -1) for te in T.edges)
        if images != sorted(w.edge_indices):
            errs.append("embedding does not map the tree edges onto the listed edges")
    else:
        errs.append(f"unknown witness kind {w.kind!r}")
    return errs


# -- disjoint families ----------------------------------------------------------

def _disjoint_family(masks: list[int], k: int, forbidden: int = 0) -> list[int] | None:
    """Indices of ``k`` pairwise disjoint masks avoiding ``forbidden``, or None."""
    cand = [i for i, m in enumerate(masks) if not m & forbidden]

    def rec(start, used, chosen):
        if len(chosen) == k:
            return list(chosen)
        for pos in range(start, len(cand)):
            if len(cand) - pos < k - len(chosen):
                return None
            i = cand[pos]
            if masks[i] & used:
                continue
            chosen.append(i)
            res = rec(pos + 1, used | masks[i], chosen)
            if res is not None:
                return res
            chosen.pop()
        return None

    return rec(0, forbidden, [])


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _two_colorable_within(A: int, masks: list[int]) -> bool:
    """Whether the edges (all inside ``A``) admit a proper 2-coloring of ``A``."""
    verts = _bits(A)
    if not masks:
        return True
    first = 1 << verts[0]
    rest = verts[1:]
    for sel in range(1 << len(rest)):
        S = first
        for b, v in enumerate(rest):
            if sel >> b & 1:
                S |= 1 << v
        if all(m & S and m & ~S for m in masks):
            return True
    return False


# -- matchings ------------------------------------------------------------------

def find_mono_matching(H: Hypergraph, P: EdgePartition, k: int, order=None) -> MonoWitness:
    """``k`` disjoint edges in one class, given ``chi(H) >= (t-1)(k-1)+2k``.

    A greedy coloring with ``p`` colors provides, for every pair of colors
    ``i < j <= p``, an edge colored ``i`` except for one vertex colored ``j``.
    Coloring the pair ``{i, j}`` by the class of that edge gives a t-colored
    ``K_p``, which has a monochromatic k-matching; its witness edges are
    disjoint because distinct color pairs use disjoint vertex sets.
    """
    P.check(H)
    H.uniformity()
    if k < 1:
        raise InputError("k must be positive")
    t = P.t
    p = (t - 1) * (k - 1) + 2 * k
    gw = greedy_coloring_with_witnesses(H, order)
    if gw.p < p:
        raise InputError(f"chromatic number is at most {gw.p} < {p}")
    pairs = [(i, j) for i, j in itertools.combinations(range(1, p + 1), 2)]
    for s in range(1, t + 1):
        mine = [(i, j) for i, j in pairs if P.class_of[gw.witnesses[(i, j)]] == s]
        found = _disjoint_family([(1 << i) | (1 << j) for i, j in mine], k)
        if found is None:
            continue
        edges = tuple(gw.witnesses[mine[x]] for x in found)
        w = MonoWitness("matching", s, edges)
        errs = witness_errors(H, P, w)
        if errs:
            raise InvariantError(f"pulled-back matching is invalid: {errs}")
        return w
    raise InvariantError(f"no monochromatic {k}-matching in the {t}-colored K_{p}")


def find_mono_matching_2col(H: Hypergraph, P: EdgePartition, k: int, chi: int | None = None) -> MonoWitness:
    """``k`` disjoint edges in one class of a 2-edge-colored ``r >= 3`` host with ``chi >= 2k``.

    Induction on k: take edges e, f of different classes.  If ``H[e ∪ f]`` is
    2-colorable, deleting ``e ∪ f`` costs at most two colors, so recurse and
    add whichever of e, f matches.  Otherwise swap one of them for an edge
    meeting the other in at least two vertices (or at least one, when e and
    f are disjoint) and try again.
    """
    P.check(H)
    r = H.uniformity()
    if r < 3:
        raise InputError("needs r >= 3")
    if P.t != 2:
        raise InputError(f"needs exactly 2 classes, got t={P.t}")
    if k < 1:
        raise InputError("k must be positive")
    if chi is None:
        chi = chromatic_number(H)[0]
    if chi < 2 * k:
        raise InputError(f"chromatic number {chi} < {2 * k}")
    cls, edges = _matching_2col(H, P, list(range(H.m)), k)
    w = MonoWitness("matching", cls, tuple(edges))
    errs = witness_errors(H, P, w)
    if errs or len(edges) != k:
        raise InvariantError(f"invalid matching {edges}: {errs}")
    return w


def _matching_2col(H, P, idx, k):
    if not idx:
        raise InvariantError("ran out of edges while the chromatic number should be positive")
    cls = P.class_of
    if k == 1:
        return cls[idx[0]], [idx[0]]
    red = [i for i in idx if cls[i] == 1]
    blue = [i for i in idx if cls[i] == 2]
    if not red or not blue:
        sub = H.edge_subhypergraph(idx)
        try:
            w = find_mono_matching(sub, EdgePartition.single(sub.m), k)
        except InputError as exc:
            raise InvariantError(f"single-class step lost chromatic number: {exc}") from exc
        return cls[idx[0]], [idx[j] for j in w.edge_indices]
    masks = H.masks
    e, f = max(
        ((e, f) for e in red for f in blue),
        key=lambda ef: ((masks[ef[0]] & masks[ef[1]]).bit_count(), -ef[0], -ef[1]),
    )
    return _matching_pair(H, P, idx, k, e, f)


def _matching_pair(H, P, idx, k, e, f):
    masks = H.masks
    cls = P.class_of
    A = masks[e] | masks[f]
    inside = [i for i in idx if not masks[i] & ~A]
    if _two_colorable_within(A, [masks[i] for i in inside]):
        rest = [i for i in idx if not masks[i] & A]
        c, sub = _matching_2col(H, P, rest, k - 1)
        return c, sub + [e if cls[e] == c else f]
    s = (masks[e] & masks[f]).bit_count()
    if s >= 2:
        raise InvariantError(f"{2 * H.r - s} vertices are not 2-colorable")
    if s == 1:
        w = next(v for v in H.edges[e] if v in H.edges[f])
        us = [v for v in H.edges[e] if v != w]
        vs = [v for v in H.edges[f] if v != w]
        g = tuple(sorted([w, *us[0::2], *vs[1::2]]))
        gi = H.edge_index.get(g)
        if gi is None or gi not in inside:
            raise InvariantError(f"H[e ∪ f] is not complete: {g} missing")
    else:
        gi = next((i for i in inside if masks[i] & masks[e] and masks[i] & masks[f]), None)
        if gi is None:
            raise InvariantError("no edge meets both e and f inside a non-2-colorable union")
    if cls[gi] == cls[e]:
        return _matching_pair(H, P, idx, k, gi, f)
    return _matching_pair(H, P, idx, k, e, gi)


# -- trees and stars --------------------------------------------------------------

def _tree_order(T: Hypergraph) -> list[int]:
    """Edges of T so that each one meets the earlier edges of its component in one vertex."""
    done: list[int] = []
    placed: set[int] = set()
    while len(done) < T.m:
        root = next(i for i in range(T.m) if i not in placed)
        queue = [root]
        placed.add(root)
        while queue:
            i = queue.pop(0)
            done.append(i)
            for v in T.edges[i]:
                for j in T.incidence[v]:
                    if j not in placed:
                        placed.add(j)
                        queue.append(j)
    return done


def embed_tree(H: Hypergraph, T: Hypergraph, chi: int | None = None) -> tuple[int, ...] | None:
    """Injective map of the vertices of the acyclic ``T`` into ``H`` carrying edges to edges.

    Returns None when no copy exists.  For a connected ``T`` that is only
    allowed below the guarantee ``chi(H) >= |E(T)| + 1`` and raises otherwise;
    disconnected forests have no such guarantee.
    """
    if T.m == 0:
        raise InputError("tree has no edges")
    if H.r != T.r:
        raise InputError(f"uniformity mismatch: host r={H.r}, tree r={T.r}")
    if not is_acyclic(T):
        raise InputError("T is not acyclic")
    if any(T.degree(v) == 0 for v in range(T.n)):
        raise InputError("T has isolated vertices")
    order = _tree_order(T)
    leaf = [T.degree(v) == 1 for v in range(T.n)]
    masks = H.masks
    phi = [-1] * T.n
    all_edges = range(H.m)

    def rec(pos, used):
        if pos == len(order):
            return True
        te = T.edges[order[pos]]
        known = [x for x in te if phi[x] >= 0]
        new = [x for x in te if phi[x] < 0]
        if known:
            a = phi[known[0]]
            cands = H.incidence[a]
            base = 1 << a
        else:
            cands = all_edges
            base = 0
        leaves = [i for i, x in enumerate(new) if leaf[x]]
        for ci in cands:
            free = masks[ci] & ~base
            if free & used:
                continue
            fv = _bits(free)
            for perm in itertools.permutations(fv):
                if any(perm[a] > perm[b] for a, b in zip(leaves, leaves[1:])):
                    continue
                for x, v in zip(new, perm):
                    phi[x] = v
                if rec(pos + 1, used | free):
                    return True
            for x in new:
                phi[x] = -1
        return False

    if rec(0, 0):
        return tuple(phi)
    if len(components(T)) > 1:
        # forests carry no guarantee
        return None
    if chi is None:
        chi = chromatic_number(H)[0]
    if chi >= T.m + 1:
        raise InvariantError(f"no copy of a {T.m}-edge tree in a host with chromatic number {chi}")
    return None


def embedded_edges(H: Hypergraph, T: Hypergraph, phi) -> tuple[int, ...]:
    return tuple(H.edge_index[tuple(sorted(phi[x] for x in te))] for te in T.edges)


def find_mono_tree(H: Hypergraph, P: EdgePartition, T: Hypergraph, chi: int | None = None) -> MonoWitness:
    """A monochromatic copy of the k-edge tree ``T`` when ``chi(H) >= k^t + 1``.

    The class chromatic numbers multiply to at least ``chi(H)``, so some class
    has chromatic number at least ``k + 1`` and contains every k-edge tree.
    """
    P.check(H)
    k, t = T.m, P.t
    if T.m == 0 or len(components(T)) > 1:
        raise InputError("T must be a tree (connected and acyclic)")
    if chi is None:
        chi = chromatic_number(H)[0]
    if chi < k ** t + 1:
        raise InputError(f"chromatic number {chi} < {k ** t + 1}")
    for i in range(1, t + 1):
        sub, idx = class_hypergraph(H, P, i)
        ci = chromatic_number(sub)[0]
        if ci >= k + 1:
            phi = embed_tree(sub, T, chi=ci)
            w = MonoWitness("tree", i, embedded_edges(H, T, phi), embedding=phi)
            errs = witness_errors(H, P, w, T)
            if errs:
                raise InvariantError(f"invalid tree witness: {errs}")
            return w
    raise InvariantError("no class reaches chromatic number k+1 although their product should")


def find_mono_star(H: Hypergraph, P: EdgePartition, k: int, chi: int | None = None) -> MonoWitness:
    """``k`` edges of one class through a common center, given ``chi(H) >= t(k-1)+2``.

    Embed a star with ``t(k-1)+1`` edges; by pigeonhole k of them share a class.
    For triples and ``k = 2`` the weaker bound ``chi(H) >= max(t, 2) + 1``
    suffices and is served by :func:`find_mono_two_star`.
    """
    P.check(H)
    r = H.uniformity()
    if k < 1:
        raise InputError("k must be positive")
    t = P.t
    p = t * (k - 1) + 2
    if chi is None:
        chi = chromatic_number(H)[0]
    if chi < p:
        if r == 3 and k == 2 and chi >= max(t, 2) + 1:
            # below the pigeonhole bound, two-edge stars come from the lift instead
            try:
                return find_mono_two_star(H, P)
            except InputError as exc:
                raise InvariantError(f"chromatic number {chi} but {exc}") from None
        raise InputError(f"chromatic number {chi} < {p}")
    T = star(r, p - 1)
    phi = embed_tree(H, T, chi=chi)
    edges = embedded_edges(H, T, phi)
    by_class: dict[int, list[int]] = {}
    for i in edges:
        by_class.setdefault(P.class_of[i], []).append(i)
    s = min(c for c, es in by_class.items() if len(es) >= k)
    w = MonoWitness("star", s, tuple(by_class[s][:k]), center=phi[0])
    errs = witness_errors(H, P, w)
    if errs:
        raise InvariantError(f"invalid star witness: {errs}")
    return w


def find_mono_two_star(H: Hypergraph, P: EdgePartition) -> MonoWitness:
    """Two triples of one class meeting in exactly one vertex.

    If there is none, ``P`` properly colors the 1-intersection graph and the
    host is colored with ``max(t, 2)`` colors instead; that coloring is
    reported in the raised :class:`InputError`, since it refutes the
    precondition ``chi(H) >= max(t, 2) + 1``.
    """
    from .intersect import two_color_no_one_intersections
    from .lift import lift_coloring

    P.check(H)
    if H.r != 3:
        raise InputError("two-edge stars are searched in triple systems")
    for s, idx in enumerate(P.classes(), start=1):
        pairs = one_intersecting_pairs(H, idx)
        if pairs:
            i, j = pairs[0]
            center = (H.masks[i] & H.masks[j]).bit_length() - 1
            return MonoWitness("star", s, (i, j), center=center)
    if P.t >= 2:
        col = lift_coloring(H, P)
    else:
        col = two_color_no_one_intersections(H)
    raise InputError(f"no monochromatic two-edge star; host is {col.m}-colorable: {list(col)}")


# -- extremal constructions ---------------------------------------------------------

def gen_matching_extremal(r: int, k: int, t: int) -> tuple[Hypergraph, EdgePartition]:
    """t-colored ``K_N^r``, ``N = (t-1)(k-1)+kr-1``, with no monochromatic k-matching.

    Vertices split into blocks ``A_1..A_{t-1}`` of size ``k-1`` and a rest of
    size ``kr-1``; an edge takes the least i with ``e ∩ A_i`` nonempty, else t.
    """
    if r < 2 or k < 1 or t < 1:
        raise InputError(f"bad parameters r={r}, k={k}, t={t}")
    N = (t - 1) * (k - 1) + k * r - 1
    H = complete_hypergraph(N, r)
    block = [min(v // (k - 1), t - 1) if k > 1 else t - 1 for v in range(N)]
    return H, EdgePartition(tuple(min(block[v] for v in e) + 1 for e in H.edges), t)


def gen_star_witness(r: int, k: int) -> Hypergraph:
    """``K_{k(r-1)}^r``: chromatic number k, and too few vertices for ``S_k^r``."""
    if r < 2 or k < 1:
        raise InputError(f"bad parameters r={r}, k={k}")
    return complete_hypergraph(k * (r - 1), r)


def gen_two_factor_split(k: int) -> tuple[Hypergraph, EdgePartition]:
    """``K_{2k-1}`` split into two (k-1)-regular classes (k odd).

    Walecki's decomposition gives k-1 Hamiltonian cycles; the first half go
    to class 1 and the rest to class 2.
    """
    if k < 3 or k % 2 == 0:
        raise InputError(f"k must be odd and at least 3, got {k}")
    m = k - 1
    inf = 2 * m
    cls = {}
    for j in range(m):
        seq = [j]
        for s in range(1, m):
            seq += [(j + s) % (2 * m), (j - s) % (2 * m)]
        seq.append((j + m) % (2 * m))
        cycle = [inf, *seq]
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            e = (min(a, b), max(a, b))
            if e in cls:
                raise InvariantError(f"Walecki cycles overlap at {e}")
            cls[e] = 1 if j < m // 2 else 2
    H = complete_hypergraph(2 * k - 1, 2)
    return H, EdgePartition(tuple(cls[e] for e in H.edges), 2)


@dataclass(frozen=True)
class LowerWitness:
    """An edge-colored complete hypergraph certifying ``chi(T, t) >= lower``."""

    kind: str
    H: Hypergraph
    P: EdgePartition
    chi: int
    lower: int
    params: dict


def chi_complete(N: int, r: int) -> int:
    return max(1, ceil(N / (r - 1)))


def assemble_lower_witness(kind: str, **params) -> LowerWitness:
    """Package an avoiding coloring of ``K_N^r`` as a lower bound ``chi(K_N^r) + 1``.

    kinds: ``matching`` (r, k, t), ``star`` (r, k; one class),
    ``two-factor`` (k; graphs, two classes), ``searched`` (N, r, tree kind,
    k, t; the avoiding partition comes from exhaustive search).
    """
    if kind == "matching":
        H, P = gen_matching_extremal(params["r"], params["k"], params["t"])
    elif kind == "star":
        H = gen_star_witness(params["r"], params["k"])
        P = EdgePartition.single(H.m)
    elif kind == "two-factor":
        H, P = gen_two_factor_split(params["k"])
    elif kind == "searched":
        from .workbench.oracles import oracle_exists_avoiding_partition

        H = complete_hypergraph(params["N"], params["r"])
        ok, P = oracle_exists_avoiding_partition(H, params["tree"], params["k"], params["t"])
        if not ok:
            raise InputError(f"every {params['t']}-coloring of K_{params['N']}^{params['r']} has a copy")
    else:
        raise InputError(f"unknown lower-witness kind {kind!r}")
    chi = chi_complete(H.n, H.r)
    return LowerWitness(kind, H, P, chi, chi + 1, dict(params))
