"""Text and JSON formats for hypergraphs, partitions, colorings and witnesses.

Text format::

    # comment
    r n
    0 1 2
    0 1 3
    colors 2
    1
    2
    coloring
    1 1 2 2

Line one is the header, then one edge per line (ascending vertex indices).
An optional ``colors t`` block gives the class of each edge in edge order and
an optional ``coloring`` line gives vertex colors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import InputError
from ..hypercore import EdgePartition, Hypergraph, VertexColoring


@dataclass(frozen=True)
class HypergraphFile:
    H: Hypergraph
    partition: EdgePartition | None = None
    coloring: VertexColoring | None = None


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(x) for x in line.split()]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {line!r}") from None


def parse_text(text: str) -> HypergraphFile:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise InputError("empty hypergraph file")
    lineno, head = lines[0]
    header = _ints(head, lineno)
    if len(header) != 2:
        raise InputError(f"line {lineno}: header must be 'r n'")
    r, n = header
    edges: list[tuple[int, ...]] = []
    classes: list[int] | None = None
    t = None
    coloring = None
    mode = "edges"
    for lineno, line in lines[1:]:
        word = line.split()[0]
        if word == "colors":
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected 'colors t'")
            t = _ints(parts[1], lineno)[0]
            classes = []
            mode = "colors"
        elif word == "coloring":
            mode = "coloring"
        elif mode == "edges":
            e = tuple(_ints(line, lineno))
            if len(e) != r:
                raise InputError(f"line {lineno}: edge {e} does not have {r} vertices")
            edges.append(e)
        elif mode == "colors":
            vals = _ints(line, lineno)
            if len(vals) != 1:
                raise InputError(f"line {lineno}: one class per line")
            classes.append(vals[0])
        else:
            if coloring is not None:
                raise InputError(f"line {lineno}: coloring given twice")
            coloring = VertexColoring(_ints(line, lineno))
    if classes is not None and len(classes) != len(edges):
        raise InputError(f"{len(classes)} classes for {len(edges)} edges")
    # keep classes attached to their edges through canonical sorting
    keyed = sorted(zip((tuple(sorted(e)) for e in edges), classes or [1] * len(edges)))
    H = Hypergraph(n, tuple(e for e, _ in keyed), r)
    P = EdgePartition(tuple(c for _, c in keyed), t) if classes is not None else None
    if coloring is not None and len(coloring) != n:
        raise InputError(f"coloring has {len(coloring)} entries for {n} vertices")
    return HypergraphFile(H, P, coloring)


def format_text(H: Hypergraph, P: EdgePartition | None = None, coloring: VertexColoring | None = None) -> str:
    if H.r is None:
        raise InputError("the text format stores uniform hypergraphs only")
    out = [f"{H.r} {H.n}"]
    out += [" ".join(map(str, e)) for e in H.edges]
    if P is not None:
        P.check(H)
        out.append(f"colors {P.t}")
        out += [str(c) for c in P.class_of]
    if coloring is not None:
        out.append("coloring")
        out.append(" ".join(map(str, coloring)))
    return "\n".join(out) + "\n"


def read_file(path: str) -> HypergraphFile:
    import sys

    if path == "-":
        return parse_text(sys.stdin.read())
    try:
        with open(path) as fh:
            return parse_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def hypergraph_to_json(H: Hypergraph) -> dict:
    return {"r": H.r, "n": H.n, "edges": [list(e) for e in H.edges]}


def hypergraph_from_json(d: dict) -> Hypergraph:
    return Hypergraph(d["n"], tuple(tuple(e) for e in d["edges"]), d.get("r"))


def partition_to_json(P: EdgePartition) -> dict:
    return {"t": P.t, "class_of": list(P.class_of)}


def witness_to_json(w) -> dict:
    d = {"kind": w.kind, "class": w.class_index, "edges": list(w.edge_indices)}
    if w.center is not None:
        d["center"] = w.center
    if w.embedding is not None:
        d["embedding"] = list(w.embedding)
    return d


def witness_from_json(d: dict):
    from ..ramsey import MonoWitness

    emb = d.get("embedding")
    return MonoWitness(d["kind"], d["class"], tuple(d["edges"]), d.get("center"), tuple(emb) if emb is not None else None)


def skeleton_to_json(S) -> dict:
    return {
        "n": S.n,
        "t": S.t,
        "sedges": [
            {"u": s.u, "v": s.v, "matching": s.index, "prov": s.prov, "source": s.comp}
            for s in sorted(S.sedges, key=lambda s: (s.index, s.u, s.v))
        ],
        "sources": [
            {"kind": src.kind, "class": src.cls, "vertices": list(src.vertices), "edges": list(src.edges)}
            for src in S.sources
        ],
        "initial_bad": S.initial_bad,
        "switches": S.switches,
    }


def coloring_certificate(H: Hypergraph, c: VertexColoring) -> list[dict]:
    """For every edge, two of its vertices with different colors."""
    cert = []
    for i, e in enumerate(H.edges):
        a = e[0]
        b = next((v for v in e if c[v] != c[a]), None)
        if b is None:
            raise InputError(f"edge {e} is monochromatic")
        cert.append({"edge": i, "u": a, "v": b})
    return cert


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
