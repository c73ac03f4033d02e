"""Verification campaigns: run finders over many hosts and partitions, check every output.

A campaign is split into shards by index stripe (instance ``i`` belongs to
shard ``i % jobs``); each instance draws its randomness from its own seeded
generator, so reports do not depend on the number of jobs.  Shard reports
merge associatively.
"""

from __future__ import annotations

import itertools
import multiprocessing
import os
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from ..errors import ChromRamseyError, InputError, ResourceError
from ..hypercore import EdgePartition, Hypergraph, chromatic_number, is_proper
from ..intersect import one_intersection_graph, two_color_no_one_intersections
from ..lift import lift_details
from ..ramsey import (
    MonoWitness,
    chi_complete,
    embed_tree,
    embedded_edges,
    find_mono_matching,
    find_mono_matching_2col,
    find_mono_star,
    find_mono_tree,
    find_mono_two_star,
    loose_path,
    matching,
    star,
    witness_errors,
)
from .enumerate import all_r_sets, check_cap
from .oracles import oracle_has_mono

JOBS_ENV = "CHROMRAMSEY_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class CampaignReport:
    campaign_id: str
    seed: int | None = None
    config: dict = field(default_factory=dict)
    instances: int = 0
    failures: list = field(default_factory=list)
    tallies: Counter = field(default_factory=Counter)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, where, message) -> None:
        self.failures.append({"instance": where, "message": str(message)})

    def merge(self, other: CampaignReport) -> CampaignReport:
        return CampaignReport(
            self.campaign_id,
            self.seed,
            self.config,
            self.instances + other.instances,
            self.failures + other.failures,
            self.tallies + other.tallies,
            max(self.elapsed, other.elapsed),
        )

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "campaign": self.campaign_id,
            "seed": self.seed,
            "config": self.config,
            "instances": self.instances,
            "failures": sorted(self.failures, key=lambda f: str(f["instance"])),
            "tallies": dict(sorted(self.tallies.items())),
            "ok": self.ok,
        }
        if timing:
            d["elapsed_sec"] = round(self.elapsed, 3)
        return d


def _run_sharded(fn, args: tuple, jobs: int, report: CampaignReport) -> CampaignReport:
    start = time.perf_counter()
    if jobs <= 1:
        parts = [fn(*args, 0, 1)]
    else:
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.starmap(fn, [(*args, s, jobs) for s in range(jobs)])
    for part in parts:
        report = report.merge(part)
    report.elapsed = time.perf_counter() - start
    return report


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise ResourceError("campaign time limit exceeded")


# -- exhaustive lift check on triple systems -------------------------------------------

def _bipartition_masks(adj: list[int], verts: int):
    """2-color the vertex mask ``verts`` of a graph given by neighbor masks; None if odd cycle."""
    side_a = side_b = 0
    todo = verts
    while todo:
        low = todo & -todo
        side_a |= low
        frontier = low
        seen = low
        parity = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= adj[b.bit_length() - 1]
                f ^= b
            nxt &= verts
            same = side_a if parity == 0 else side_b
            if nxt & frontier or nxt & same:
                return None
            nxt &= ~seen
            if parity == 0:
                side_b |= nxt
            else:
                side_a |= nxt
            seen |= nxt
            frontier = nxt
            parity ^= 1
        todo &= ~seen
    return side_a, side_b


def _lift_tables(n: int):
    rsets = all_r_sets(n, 3)
    masks = [sum(1 << v for v in e) for e in rsets]
    m = len(rsets)
    adj = [sum(1 << j for j in range(m) if (masks[i] & masks[j]).bit_count() == 1) for i in range(m)]
    # mono[s]: triples monochromatic under the 2-coloring with color-2 set s (vertex 0 fixed to 1)
    full = (1 << n) - 1
    mono = []
    for s in range(0, 1 << n, 2):
        mono.append(sum(1 << i for i, em in enumerate(masks) if not em & s or not em & (full & ~s)))
    return rsets, adj, mono


def _lift_shard(n: int, shard: int, jobs: int, deadline=None) -> CampaignReport:
    rep = CampaignReport(f"lift-n{n}")
    rsets, adj, mono = _lift_tables(n)
    m = len(rsets)
    _check_deadline(deadline)
    for mask in range(1 + shard, 1 << m, jobs):
        if mask & 0xFFF == 0:
            _check_deadline(deadline)
        rep.instances += 1
        where = {"n": n, "mask": mask}
        sides = _bipartition_masks(adj, mask)
        if sides is not None:
            rep.tallies["bipartite_igraph"] += 1
            if all(mono_s & mask for mono_s in mono):
                rep.fail(where, "3-chromatic system with bipartite 1-intersection graph")
                continue
        H = Hypergraph(n, tuple(rsets[i] for i in range(m) if mask >> i & 1), 3)
        try:
            if sides is not None and not any(adj[i] & mask for i in range(m) if mask >> i & 1):
                t = 1
                col = two_color_no_one_intersections(H)
                P = None
            else:
                if sides is not None:
                    a, _ = sides
                    pos = [i for i in range(m) if mask >> i & 1]
                    P = EdgePartition(tuple(1 if a >> i & 1 else 2 for i in pos), 2)
                    t = 2
                else:
                    t, c = chromatic_number(one_intersection_graph(H))
                    P = EdgePartition(c.colors, t)
                res = lift_details(H, P)
                col = res.coloring
                if res.context is not None:
                    rep.tallies["odd_branch"] += 1
                    if res.context.residue:
                        rep.tallies["list_residue_nonempty"] += 1
                rep.tallies["switches"] += res.skeleton.switches
            rep.tallies[f"t={t}"] += 1
            if not is_proper(H, col) or col.m > max(t, 2):
                rep.fail(where, f"lift gave an improper or oversized coloring for t={t}")
        except ChromRamseyError as exc:
            rep.fail(where, f"{type(exc).__name__}: {exc}")
    return rep


def verify_lift_exhaustive(n_max: int, jobs: int = 1, n_min: int = 3, timeout: float | None = None) -> CampaignReport:
    """Every triple system on ``n_min..n_max`` vertices: lift each optimal partition.

    Checks (a) no system with a bipartite 1-intersection graph needs three
    colors, by brute force over 2-colorings; (b) whenever the 1-intersection
    graph has chromatic number ``t >= 2``, the lift returns a proper coloring
    with at most ``t`` colors.
    """
    deadline = None if timeout is None else time.monotonic() + timeout
    report = CampaignReport("lift-exhaustive", None, {"n_min": n_min, "n_max": n_max})
    start = time.perf_counter()
    for n in range(n_min, n_max + 1):
        check_cap(3, n)
        part = _run_sharded(_lift_shard_entry, (n, deadline), jobs, CampaignReport("lift-exhaustive"))
        report = report.merge(part)
        report.tallies[f"instances_n={n}"] += part.instances
    report.elapsed = time.perf_counter() - start
    return report


def _lift_shard_entry(n, deadline, shard, jobs):
    return _lift_shard(n, shard, jobs, deadline)


# -- bounds on random or enumerated hosts -------------------------------------------

BOUNDS = ("matching", "matching2", "star", "tree", "two-star", "embed")


def tree_from_spec(shape: str, r: int, k: int) -> Hypergraph:
    shapes = {"star": star, "path": loose_path, "matching": matching}
    if shape not in shapes:
        raise InputError(f"unknown tree shape {shape!r}; choose from {sorted(shapes)}")
    return shapes[shape](r, k)


def required_chi(kind: str, params: dict) -> int:
    """Chromatic number that guarantees a monochromatic copy."""
    k, t = params.get("k", 1), params.get("t", 1)
    if kind == "matching":
        return (t - 1) * (k - 1) + 2 * k
    if kind == "matching2":
        return 2 * k
    if kind == "star":
        return t * (k - 1) + 2
    if kind == "tree":
        return k ** t + 1
    if kind == "two-star":
        return max(t, 2) + 1
    if kind == "embed":
        return k + 1
    raise InputError(f"unknown bound {kind!r}; choose from {BOUNDS}")


def random_host(rng: random.Random, r: int, n_lo: int, n_hi: int, min_chi: int, max_tries: int = 10_000):
    """Random r-uniform host with chromatic number at least ``min_chi``.

    Picks n, keeps each r-set with a random density, and rejects until the
    exact chromatic number is large enough.  Returns ``(H, chi)``.
    """
    n_need = (min_chi - 1) * (r - 1) + 1
    lo = max(n_lo, n_need, r)
    if lo > n_hi:
        raise InputError(f"no {r}-uniform host on at most {n_hi} vertices has chromatic number {min_chi}")
    for _ in range(max_tries):
        n = rng.randint(lo, n_hi)
        rsets = all_r_sets(n, r)
        dens = rng.uniform(0.5, 1.0) if chi_complete(n, r) > min_chi else rng.uniform(0.85, 1.0)
        H = Hypergraph(n, tuple(e for e in rsets if rng.random() < dens), r)
        if not H.m:
            continue
        chi = chromatic_number(H)[0]
        if chi >= min_chi:
            return H, chi
    raise ResourceError(f"no host with chromatic number {min_chi} after {max_tries} tries")


def run_finder(kind: str, H: Hypergraph, P: EdgePartition, params: dict, chi: int):
    """Run one finder; returns ``(witness, tree or None)``."""
    k = params.get("k", 1)
    if kind == "matching":
        return find_mono_matching(H, P, k), None
    if kind == "matching2":
        return find_mono_matching_2col(H, P, k, chi=chi), None
    if kind == "star":
        return find_mono_star(H, P, k, chi=chi), None
    if kind == "tree":
        T = tree_from_spec(params.get("shape", "star"), H.r, k)
        return find_mono_tree(H, P, T, chi=chi), T
    if kind == "two-star":
        return find_mono_two_star(H, P), None
    if kind == "embed":
        T = tree_from_spec(params.get("shape", "star"), H.r, k)
        phi = embed_tree(H, T, chi=chi)
        if phi is None:
            return None, T
        edges = embedded_edges(H, T, phi)
        return MonoWitness("tree", 1, edges, embedding=phi), T
    raise InputError(f"unknown bound {kind!r}")


def _oracle_kind(kind: str, params: dict) -> tuple[str, int]:
    if kind in ("matching", "matching2"):
        return "matching", params.get("k", 1)
    if kind == "star":
        return "star", params.get("k", 1)
    if kind == "two-star":
        return "star", 2
    return "tree", params.get("k", 1)


def check_instance(kind: str, H: Hypergraph, P: EdgePartition, params: dict, chi: int, rep: CampaignReport, where) -> None:
    """Finder, validator and oracle on one instance; records tallies and failures."""
    try:
        w, T = run_finder(kind, H, P, params, chi)
    except ChromRamseyError as exc:
        rep.fail(where, f"{type(exc).__name__}: {exc}")
        return
    okind, k = _oracle_kind(kind, params)
    found, _ = oracle_has_mono(H, P, okind, k, T)
    if w is None:
        rep.tallies["finder_none"] += 1
        if found:
            rep.fail(where, "finder found nothing but the oracle did")
        return
    errs = witness_errors(H, P, w, T)
    if errs:
        rep.fail(where, f"invalid witness: {errs}")
        return
    if not found:
        rep.fail(where, "validated witness but the oracle found no copy")
        return
    rep.tallies["witnesses"] += 1


def _instance_rng(seed: int, i: int) -> random.Random:
    return random.Random(f"{seed}:{i}")


def _random_partition(rng: random.Random, m: int, t: int) -> EdgePartition:
    return EdgePartition(tuple(rng.randint(1, t) for _ in range(m)), t)


def _bound_shard(kind, params, corpus, seed, deadline, shard, jobs) -> CampaignReport:
    rep = CampaignReport(f"bound-{kind}")
    t = 2 if kind == "matching2" else params.get("t", 1)
    if kind == "embed":
        t = 1
    r = params.get("r", 3)
    need = required_chi(kind, {**params, "t": t})
    source = corpus.get("source", "random")
    if source == "random":
        for i in range(shard, corpus.get("hosts", 10), jobs):
            _check_deadline(deadline)
            rng = _instance_rng(seed, i)
            H, chi = random_host(rng, r, corpus.get("n_min", 1), corpus.get("n_max", 10), corpus.get("min_chi", need))
            rep.tallies[f"host_chi={chi}"] += 1
            for j in range(corpus.get("partitions", 1)):
                rep.instances += 1
                check_instance(kind, H, _random_partition(rng, H.m, t), params, chi, rep, {"host": i, "partition": j})
    elif source == "complete":
        from ..hypercore import complete_hypergraph

        H = complete_hypergraph(corpus["N"], r)
        chi = chi_complete(corpus["N"], r)
        for j in range(shard, corpus.get("partitions", 1), jobs):
            _check_deadline(deadline)
            rep.instances += 1
            rng = _instance_rng(seed, j)
            check_instance(kind, H, _random_partition(rng, H.m, t), params, chi, rep, {"partition": j})
    elif source == "enumerate":
        n = corpus["n"]
        m_all = check_cap(r, n)
        rsets = all_r_sets(n, r)
        for mask in range(1 + shard, 1 << m_all, jobs):
            _check_deadline(deadline)
            H = Hypergraph(n, tuple(rsets[i] for i in range(m_all) if mask >> i & 1), r)
            chi = chromatic_number(H)[0]
            if chi < need:
                continue
            rep.tallies["hosts"] += 1
            if corpus.get("partitions", "all") == "all":
                parts = (EdgePartition(c, t) for c in itertools.product(range(1, t + 1), repeat=H.m))
            else:
                rng = _instance_rng(seed, mask)
                parts = (_random_partition(rng, H.m, t) for _ in range(corpus["partitions"]))
            for j, P in enumerate(parts):
                rep.instances += 1
                check_instance(kind, H, P, params, chi, rep, {"mask": mask, "partition": j})
    else:
        raise InputError(f"unknown corpus source {source!r}")
    return rep


def verify_bound(kind: str, params: dict, corpus: dict, seed: int = 0, jobs: int = 1, timeout: float | None = None) -> CampaignReport:
    """Check that a finder always succeeds on hosts meeting its chromatic-number bound.

    ``corpus`` selects hosts: ``{"source": "random", "hosts", "partitions",
    "n_min", "n_max", "min_chi"}``, ``{"source": "complete", "N",
    "partitions"}`` or ``{"source": "enumerate", "n", "partitions": "all" | int}``.
    """
    required_chi(kind, params)
    deadline = None if timeout is None else time.monotonic() + timeout
    report = CampaignReport(f"bound-{kind}", seed, {"kind": kind, "params": params, "corpus": corpus})
    return _run_sharded(_bound_shard, (kind, params, corpus, seed, deadline), jobs, report)
