"""Fast 4-cycle bookkeeping on quadrangulations.

In a simple quadrangulation a contractible 4-cycle has an empty interior
exactly when it bounds a face (on the sphere: a face other than the outer
one).  This reduces interior-emptiness tests to facial lookups and avoids
dual-graph searches in the hot reduction loops; ``embedding.disk_interior``
remains the general-purpose route and the test suite cross-checks the two.
"""

from __future__ import annotations

from .embedding import SPHERE, edge_key


def cycle4_canon(c):
    """Canonical tuple of a 4-cycle under rotation and reflection."""
    a, b, cc, d = c
    best = (a, b, cc, d)
    for cand in ((b, cc, d, a), (cc, d, a, b), (d, a, b, cc),
                 (a, d, cc, b), (d, cc, b, a), (cc, b, a, d), (b, a, d, cc)):
        if cand < best:
            best = cand
    return best


def facial_quads(G):
    """Map canonical 4-cycle -> face index, for the length-4 faces."""
    cached = G._cache.get("facial_quads")
    if cached is not None:
        return cached
    out = {}
    for i, walk in enumerate(G.faces.walks):
        if len(walk) == 4:
            vs = tuple(d[0] for d in walk)
            if len(set(vs)) == 4:
                out[cycle4_canon(vs)] = i
    G._cache["facial_quads"] = out
    return out


def four_cycles_through(G, v):
    """All 4-cycles containing v, as (v, a, w, b) tuples."""
    adj = G.adj
    nbrs = G.rot[v]
    out = []
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            a, b = nbrs[i], nbrs[j]
            for w in adj[a] & adj[b]:
                if w != v:
                    out.append((v, a, w, b))
    return out


def all_four_cycles(G):
    """All 4-cycles of G, canonically deduplicated."""
    cached = G._cache.get("four_cycles")
    if cached is not None:
        return cached
    common = {}
    for w in G.rot:
        nbrs = G.rot[w]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                key = edge_key(nbrs[i], nbrs[j])
                common.setdefault(key, []).append(w)
    seen = set()
    out = []
    for (a, b), ws in common.items():
        if len(ws) < 2:
            continue
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                c = cycle4_canon((a, ws[i], b, ws[j]))
                if c not in seen:
                    seen.add(c)
                    out.append(c)
    out.sort()
    G._cache["four_cycles"] = out
    return out


def cycle_sign4(G, c):
    s = G.sign(c[0], c[1]) * G.sign(c[1], c[2])
    return s * G.sign(c[2], c[3]) * G.sign(c[3], c[0])


def interior_is_empty(G, cyc):
    """Does the contractible 4-cycle have an empty interior?

    Valid on quadrangulations only; on the sphere the outer face must be
    designated.
    """
    canon = cycle4_canon(tuple(cyc))
    face = facial_quads(G).get(canon)
    if face is None:
        return False
    if G.surface == SPHERE:
        if G.n_vertices == 4:
            return True
        return face != G.outer_face_index
    return True


def bad_four_cycles(G):
    """Contractible 4-cycles with non-empty interior (canonical tuples)."""
    facial = facial_quads(G)
    sphere = G.surface == SPHERE
    outer = G.outer_face_index if sphere else None
    bad = []
    for c in all_four_cycles(G):
        if not sphere and cycle_sign4(G, c) != 1:
            continue
        face = facial.get(c)
        if face is None:
            bad.append(c)
        elif sphere and face == outer and G.n_vertices > 4:
            bad.append(c)
    return bad


def vertex_is_safe(G, v):
    """True when no contractible 4-cycle through v has interior vertices."""
    sphere = G.surface == SPHERE
    facial = facial_quads(G)
    outer = G.outer_face_index if sphere else None
    for cyc in four_cycles_through(G, v):
        if not sphere and cycle_sign4(G, cyc) != 1:
            continue
        face = facial.get(cycle4_canon(cyc))
        if face is None:
            return False
        if sphere and face == outer and G.n_vertices > 4:
            return False
    return True


def is_nice(G):
    """No vertex inside any contractible 4-cycle (projective plane)."""
    return not bad_four_cycles(G)
