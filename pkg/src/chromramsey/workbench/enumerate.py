"""Exhaustive enumeration of small uniform hypergraphs by edge-subset masks."""

from __future__ import annotations

import itertools
from math import comb
from typing import Callable, Iterator

from ..errors import ResourceError
from ..hypercore import Hypergraph, chromatic_number

MASK_CAP = 24


def all_r_sets(n: int, r: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), r))


def check_cap(r: int, n: int, cap: int = MASK_CAP) -> int:
    m = comb(n, r)
    if m > cap:
        raise ResourceError(f"C({n},{r}) = {m} exceeds the enumeration cap of {cap}")
    return m


def from_mask(n: int, r: int, mask: int, rsets=None) -> Hypergraph:
    """Hypergraph whose edges are the r-sets selected by ``mask`` (bit i = i-th r-set)."""
    rsets = rsets or all_r_sets(n, r)
    return Hypergraph(n, tuple(s for i, s in enumerate(rsets) if mask >> i & 1), r)


def fingerprint(H: Hypergraph) -> tuple:
    """Cheap isomorphism invariant: degree multiset, edge count, chromatic number."""
    return (tuple(sorted(H.degree(v) for v in range(H.n))), H.m, chromatic_number(H)[0])


def enumerate_hypergraphs(
    r: int,
    n: int,
    edge_filter: Callable[[Hypergraph], bool] | None = None,
    dedup: bool = False,
    cap: int = MASK_CAP,
) -> Iterator[Hypergraph]:
    """Every nonempty r-uniform edge set on n vertices, in increasing mask order.

    ``dedup`` drops instances whose :func:`fingerprint` was already seen; the
    fingerprint is not a complete invariant, so this may drop non-isomorphic
    systems too.
    """
    m = check_cap(r, n, cap)
    rsets = all_r_sets(n, r)
    seen = set()
    for mask in range(1, 1 << m):
        H = from_mask(n, r, mask, rsets)
        if edge_filter is not None and not edge_filter(H):
            continue
        if dedup:
            fp = fingerprint(H)
            if fp in seen:
                continue
            seen.add(fp)
        yield H
