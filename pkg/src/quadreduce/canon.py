"""Canonical forms and isomorphism-invariant hashing of embedded graphs.

The canonical code of a signed rotation system is the minimum, over all
start darts and both global orientations, of a breadth-first encoding.
Vertex flips are normalised away by propagating a local orientation along
the traversal tree and emitting the flip-invariant sign
``s * orient(u) * orient(v)`` per edge, so two systems get equal codes
exactly when they are isomorphic as embedded graphs (up to reflection and
vertex flips).  The surface tag is part of the code; the outer face is not.
"""

from __future__ import annotations

import hashlib

HASH_LEN = 16


def _candidate_darts(G):
    """Darts whose cheap local invariant is minimal; restricts the search."""
    deg = {v: len(G.rot[v]) for v in G.rot}
    inv = {v: (deg[v], tuple(sorted(deg[u] for u in G.rot[v]))) for v in G.rot}
    best = None
    cands = []
    for v in G.rot:
        iv = inv[v]
        for u in G.rot[v]:
            key = (iv, inv[u])
            if best is None or key < best:
                best = key
                cands = [(v, u)]
            elif key == best:
                cands.append((v, u))
    return cands


def _code_from(G, start, orientation, best):
    """Deterministic BFS encoding starting at `start` with a global mirror flag.

    Compared lexicographically row by row against `best` while being
    generated; returns None as soon as it is provably not smaller.
    """
    rot = G.rot
    signs = G.signs
    labels = {start[0]: 0}
    orient = {start[0]: orientation}
    entry = {start[0]: start[1]}  # neighbour at which the rotation is anchored
    order = [start[0]]
    code = []
    comparing = best is not None
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        seq = rot[v]
        ov = orient[v]
        if ov == -1:
            seq = tuple(reversed(seq))
        a = seq.index(entry[v])
        seq = seq[a:] + seq[:a]
        row = []
        for u in seq:
            s = signs[(v, u) if v < u else (u, v)]
            ou = orient.get(u)
            if ou is None:
                labels[u] = len(order)
                ou = ov * s
                orient[u] = ou
                entry[u] = v
                order.append(u)
            row.append((labels[u], s * ov * ou))
        row = tuple(row)
        if comparing:
            ref = best[qi - 1]
            if row > ref:
                return None
            if row < ref:
                comparing = False
        code.append(row)
    if comparing:
        return None  # equal to best
    return tuple(code)


def canonical_code(G):
    if G._canon_cache is not None:
        return G._canon_cache
    best = None
    for d in _candidate_darts(G):
        for o in (1, -1):
            c = _code_from(G, d, o, best)
            if c is not None:
                best = c
    code = (G.surface, best)
    G._canon_cache = code
    return code


def canonical_hash(G):
    """Short isomorphism-invariant digest of the embedded graph."""
    cached = G._cache.get("canonical_hash")
    if cached is not None:
        return cached
    surface, rows = canonical_code(G)
    flat = [surface]
    for row in rows:
        flat.append(";")
        for label, s in row:
            flat.append(f"{label},{s}")
    blob = "|".join(flat).encode()
    digest = hashlib.sha256(blob).hexdigest()[:HASH_LEN]
    G._cache["canonical_hash"] = digest
    return digest
