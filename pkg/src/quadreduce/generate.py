"""Construction of test corpora: canonical wheels and seeded random growth.

Random quadrangulations are grown from small seeds by the two inverse
surgeries, degree-2 insertion (splits a face) and vertex splitting (inverse
of face-contraction).  Both preserve the quadrangulation property, the
surface, and bipartiteness, so growth from C4 stays a sphere
quadrangulation, growth from an odd wheel stays non-bipartite projective,
and growth from the K(3,4) seed stays bipartite projective.

Randomness comes from a fixed 64-bit linear congruential generator
(multiplier 6364136223846793005, increment 1442695040888963407, seeded
directly) with modulo-plus-rejection sampling, so corpora are reproducible
from (surface, n, seed) alone.
"""

from __future__ import annotations

from .embedding import (PROJECTIVE_PLANE, SPHERE, SignedRotationSystem,
                        edge_key, trace_faces)
from .errors import (BadSplitSpec, InvalidInput, NotAFace, NotOpposite,
                     SizeUnreachable)

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg:
    """The documented 64-bit LCG; `below(n)` samples by modulo with rejection."""

    def __init__(self, seed):
        self.state = seed & _MASK

    def next(self):
        self.state = (self.state * _LCG_MULT + _LCG_INC) & _MASK
        return self.state

    def below(self, n):
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next()
            if x < limit:
                return x % n


# -- canonical seed embeddings -------------------------------------------------

def double_wheel_sphere(n):
    """Sphere quadrangulation: rim cycle of length 2n with two alternating hubs.

    Vertices: 0 and 1 are the hubs, 2..2n+1 the rim (u_j = 1+j).
    """
    if n < 2:
        raise InvalidInput("rim must have length >= 4")
    u = lambda j: 1 + ((j - 1) % (2 * n)) + 1
    rot = {0: [u(j) for j in range(1, 2 * n, 2)],
           1: [u(2)] + [u(j) for j in range(2 * n, 3, -2)]}
    for j in range(1, 2 * n + 1):
        if j % 2 == 1:
            rot[u(j)] = [u(j + 1), 0, u(j - 1)]
        else:
            rot[u(j)] = [1, u(j + 1), u(j - 1)]
    signs = {}
    for v, seq in rot.items():
        for w in seq:
            signs[edge_key(v, w)] = 1
    return SignedRotationSystem(SPHERE, rot, signs)


def antipodal_quotient(G, deck, labels):
    """Projective-plane quotient of a sphere embedding by a free involution.

    `deck` maps each vertex to its antipode; `labels` maps one chosen
    representative per orbit to the new vertex id.  The representative's
    rotation is read off directly; an edge gets sign +1 exactly when, from
    the representative end, it leads to the other orbit's representative.
    """
    reps = set(labels)
    for v in G.rot:
        if (v in reps) == (deck[v] in reps) or deck[deck[v]] != v or deck[v] == v:
            raise InvalidInput("deck map is not a free involution with chosen reps")
    rot = {}
    signs = {}
    for r in reps:
        row = []
        for x in G.rot[r]:
            rx = x if x in reps else deck[x]
            row.append(labels[rx])
            e = edge_key(labels[r], labels[rx])
            s = 1 if x in reps else -1
            if e in signs and signs[e] != s:
                raise InvalidInput("inconsistent quotient signs")
            signs[e] = s
        if len(set(row)) != len(row):
            raise InvalidInput("quotient has parallel edges")
        rot[labels[r]] = row
    return SignedRotationSystem(PROJECTIVE_PLANE, rot, signs)


def odd_wheel_embedding(k):
    """The projective-plane quadrangulation of the odd wheel W(2k+1).

    Hub is vertex 0, the rim is 1..2k+1.  Built as the antipodal quotient
    of the sphere double wheel with rim length 2(2k+1).
    """
    if k < 1:
        raise InvalidInput("k must be >= 1")
    n = 2 * k + 1
    dw = double_wheel_sphere(n)
    deck = {0: 1, 1: 0}
    for j in range(1, 2 * n + 1):
        partner = j + n if j + n <= 2 * n else j - n
        deck[1 + j] = 1 + partner
    labels = {0: 0}
    for j in range(1, n + 1):
        labels[1 + j] = j
    return antipodal_quotient(dw, deck, labels)


def _rhombic_dodecahedron():
    """Oriented sphere quadrangulation on cube corners (0..7) + face centers (8..13).

    Corner k (bits b2 b1 b0 giving the signs of z, y, x) is adjacent to the
    three face centers of its octant; each cube edge spans one rhombic face.
    """
    centers = lambda axis, bit: 8 + 2 * axis + bit

    def corner_center(k, axis):
        return centers(axis, (k >> axis) & 1)

    faces = []
    for k in range(8):
        for axis in range(3):
            k2 = k ^ (1 << axis)
            if k < k2:
                others = [a for a in range(3) if a != axis]
                faces.append((k, corner_center(k, others[0]),
                              k2, corner_center(k, others[1])))
    return _oriented_system_from_faces(faces, SPHERE)


def _oriented_system_from_faces(faces, surface):
    """Build rotations from face walks, orienting the walks consistently."""
    # adjacency: each undirected edge must be traversed once per direction
    oriented = [None] * len(faces)
    by_edge = {}
    for i, w in enumerate(faces):
        for t in range(len(w)):
            by_edge.setdefault(edge_key(w[t], w[(t + 1) % len(w)]), []).append(i)
    oriented[0] = tuple(faces[0])
    stack = [0]
    while stack:
        i = stack.pop()
        w = oriented[i]
        darts = {(w[t], w[(t + 1) % len(w)]) for t in range(len(w))}
        for t in range(len(w)):
            e = edge_key(w[t], w[(t + 1) % len(w)])
            for j in by_edge[e]:
                if j == i or oriented[j] is not None:
                    continue
                wj = tuple(faces[j])
                dj = {(wj[t2], wj[(t2 + 1) % len(wj)]) for t2 in range(len(wj))}
                if dj & darts:
                    wj = tuple(reversed(wj))
                    dj = {(wj[t2], wj[(t2 + 1) % len(wj)]) for t2 in range(len(wj))}
                assert not (dj & darts), "faces cannot be oriented consistently"
                oriented[j] = wj
                stack.append(j)
    nxt = {}
    for w in oriented:
        n = len(w)
        for t in range(n):
            p, v, q = w[t - 1], w[t], w[(t + 1) % n]
            nxt.setdefault(v, {})[p] = q
    rot = {}
    for v, m in nxt.items():
        start = next(iter(sorted(m)))
        seq = [start]
        while True:
            w = m[seq[-1]]
            if w == start:
                break
            seq.append(w)
        rot[v] = seq
    signs = {}
    for v, seq in rot.items():
        for w in seq:
            signs[edge_key(v, w)] = 1
    return SignedRotationSystem(surface, rot, signs)


def bipartite_projective_seed():
    """The smallest bipartite projective-plane quadrangulation, K(3,4).

    Antipodal quotient of the rhombic dodecahedron; the three octahedron
    axes become vertices 0..2 and the four corner pairs become 3..6.
    """
    rd = _rhombic_dodecahedron()
    deck = {k: 7 - k for k in range(8)}
    deck.update({8: 9, 9: 8, 10: 11, 11: 10, 12: 13, 13: 12})
    labels = {8: 0, 10: 1, 12: 2, 0: 3, 1: 4, 2: 5, 3: 6}
    return antipodal_quotient(rd, deck, labels)


# -- growth engine --------------------------------------------------------------

class _GrowthEngine:
    """In-place rotation/face bookkeeping for the two inverse surgeries."""

    def __init__(self, G):
        self.surface = G.surface
        self.rot = {v: list(seq) for v, seq in G.rot.items()}
        self.signs = dict(G.signs)
        fl = trace_faces(G)
        self.faces = [tuple(d[0] for d in w) for w in fl.walks]
        self.alive = list(range(len(self.faces)))
        self.next_id = max(G.rot) + 1
        self.outer_dart = G.outer_dart
        self.outer_face = None
        if G.outer_dart is not None:
            self.outer_face = fl.face_of[G.outer_dart]
        self.op_log = []

    # dart names never change under flips, so the outer dart is stable
    # unless an operation renames or removes one of its endpoints.

    def _flip(self, x):
        self.rot[x].reverse()
        for u in self.rot[x]:
            e = edge_key(u, x)
            self.signs[e] = -self.signs[e]

    def _normalize_face(self, w):
        for i in (1, 2, 3):
            if self.signs[edge_key(w[i - 1], w[i])] == -1:
                self._flip(w[i])
        assert self.signs[edge_key(w[3], w[0])] == 1

    def _plus_direction(self, w):
        rev = (w[0], w[3], w[2], w[1])
        for i in range(4):
            v = w[i]
            seq = self.rot[v]
            if len(seq) < 3:
                continue
            p, nx = w[i - 1], w[(i + 1) % 4]
            k = seq.index(p)
            if seq[(k + 1) % len(seq)] == nx:
                return w
            k = seq.index(nx)
            assert seq[(k + 1) % len(seq)] == p, "stored walk is not facial"
            return rev
        return w

    def _kill_face(self, fid):
        self.alive.remove(fid)
        self.faces[fid] = None

    def _new_face(self, w):
        self.faces.append(tuple(w))
        self.alive.append(len(self.faces) - 1)
        return len(self.faces) - 1

    def add_degree2(self, fid, pair):
        """Insert a new degree-2 vertex across the `pair` diagonal of face fid."""
        w = self.faces[fid]
        if w is None:
            raise NotAFace(f"face {fid} no longer exists")
        i = w.index(pair[0]) if pair[0] in w else -1
        if i < 0 or w[(i + 2) % 4] != pair[1]:
            raise NotOpposite(f"{pair} is not an opposite pair of face {w}")
        self._normalize_face(w)
        w = self._plus_direction(w)
        k = w.index(pair[0])
        w = w[k:] + w[:k]
        u, x, u2, y = w
        v = self.next_id
        self.next_id += 1
        ru = self.rot[u]
        ru.insert(ru.index(x), v)
        ru2 = self.rot[u2]
        ru2.insert(ru2.index(y), v)
        self.rot[v] = [u, u2]
        self.signs[edge_key(u, v)] = 1
        self.signs[edge_key(u2, v)] = 1
        f1 = (u, x, u2, v)
        f2 = (u, v, u2, y)
        outer_here = self.outer_face == fid
        old_dart = self.outer_dart
        self._kill_face(fid)
        id1 = self._new_face(f1)
        id2 = self._new_face(f2)
        if outer_here:
            f1_darts = {(u, x), (x, u2)}
            self.outer_face = id1 if old_dart in f1_darts else id2
        self.op_log.append(("add_degree2", fid, tuple(pair), v))
        return v

    def vertex_split(self, v, c1, c2):
        """Split v into v (keeping the arc c1..c2) and a new vertex."""
        if v not in self.rot:
            raise BadSplitSpec(f"no vertex {v}")
        seq = self.rot[v]
        if c1 == c2 or c1 not in seq or c2 not in seq:
            raise BadSplitSpec(f"corners {c1},{c2} must be two distinct neighbours of {v}")
        if self.signs[edge_key(v, c1)] == -1:
            self._flip(c1)
        if self.signs[edge_key(v, c2)] == -1:
            self._flip(c2)
        seq = self.rot[v]
        i, j = seq.index(c1), seq.index(c2)
        arc_a = [seq[(i + t) % len(seq)] for t in range(1, (j - i) % len(seq))]
        arc_b = [seq[(j + t) % len(seq)] for t in range(1, (i - j) % len(seq))]
        v2 = self.next_id
        self.next_id += 1
        self.rot[v] = [c1, *arc_a, c2]
        self.rot[v2] = [c1, c2, *arc_b]
        r1 = self.rot[c1]
        k = r1.index(v)
        r1.insert(k + 1, v2)
        r2 = self.rot[c2]
        k = r2.index(v)
        r2.insert(k, v2)
        self.signs[edge_key(v2, c1)] = 1
        self.signs[edge_key(v2, c2)] = 1
        for b in arc_b:
            s = self.signs.pop(edge_key(v, b))
            self.signs[edge_key(v2, b)] = s
            rb = self.rot[b]
            rb[rb.index(v)] = v2
        if self.outer_dart is not None and v in self.outer_dart:
            # any dart of the old outer face away from v keeps its name
            ow = self.faces[self.outer_face]
            t = ow.index(v)
            self.outer_dart = (ow[(t + 1) % 4], ow[(t + 2) % 4])
        # reassign the faces around v and add the new one
        if not arc_a and not arc_b:
            self._retrace()
        else:
            va = set(arc_a)
            for fid in self.alive:
                w = self.faces[fid]
                if v not in w:
                    continue
                t = w.index(v)
                mid = {w[t - 1], w[(t + 1) % 4]} - {c1, c2}
                if mid:
                    to_new = not (mid & va)
                else:
                    # the corner is exactly {c1, c2}: the side with the
                    # empty arc keeps this face
                    to_new = bool(arc_a)
                if to_new:
                    lst = list(w)
                    lst[t] = v2
                    self.faces[fid] = tuple(lst)
            self._new_face((v, c1, v2, c2))
        self.op_log.append(("vertex_split", v, c1, c2, v2))
        return v2

    def _retrace(self):
        G = self.to_system(validate=False)
        fl = trace_faces(G)
        self.faces = [tuple(d[0] for d in w) for w in fl.walks]
        self.alive = list(range(len(self.faces)))
        if self.outer_dart is not None:
            self.outer_face = fl.face_of[self.outer_dart]

    def to_system(self, validate=True):
        return SignedRotationSystem(self.surface, self.rot, self.signs,
                                    self.outer_dart, validate=validate)


# -- public single-shot operations ----------------------------------------------

def add_degree2(G, F, corner_pair):
    """New degree-2 vertex inside face F, joined to the opposite `corner_pair`."""
    eng = _GrowthEngine(G)
    fid = F if isinstance(F, int) else _face_index(G, F)
    eng.add_degree2(fid, tuple(corner_pair))
    return eng.to_system()


def vertex_split(G, v, split_spec):
    """Split v along the two corner neighbours given by split_spec."""
    eng = _GrowthEngine(G)
    c1, c2 = split_spec
    eng.vertex_split(v, c1, c2)
    return eng.to_system()


def _face_index(G, F):
    from .quadcycles import cycle4_canon, facial_quads
    idx = facial_quads(G).get(cycle4_canon(tuple(F)))
    if idx is None:
        raise NotAFace(f"{tuple(F)} does not bound a face")
    return idx


# -- seeded random growth ---------------------------------------------------------

def gen_quadrangulation(surface, n, seed, require_nonbipartite=False,
                        return_ops=False):
    """Grow a pseudo-random quadrangulation with exactly n vertices.

    Sphere growth starts from C4 (always bipartite).  Projective growth
    starts from W3 = K4 when require_nonbipartite is set, else from the
    bipartite K(3,4) seed.  Each step picks uniformly among all applicable
    (operation, location) pairs: two diagonals per face plus every ordered
    corner pair at every vertex.
    """
    if surface == SPHERE:
        if require_nonbipartite:
            raise InvalidInput("sphere quadrangulations are bipartite")
        seed_graph = c4()
    elif require_nonbipartite:
        seed_graph = odd_wheel_embedding(1)
    else:
        seed_graph = bipartite_projective_seed()
    if n < seed_graph.n_vertices:
        raise SizeUnreachable(
            f"need n >= {seed_graph.n_vertices} for this surface, got {n}")
    eng = _GrowthEngine(seed_graph)
    rng = Lcg(seed)
    n_vertices = seed_graph.n_vertices
    while n_vertices < n:
        split_weight = 0
        verts = sorted(eng.rot)
        for v in verts:
            d = len(eng.rot[v])
            split_weight += d * (d - 1)
        total = 2 * len(eng.alive) + split_weight
        k = rng.below(total)
        if k < 2 * len(eng.alive):
            fid = eng.alive[k // 2]
            w = eng.faces[fid]
            pair = (w[0], w[2]) if k % 2 == 0 else (w[1], w[3])
            eng.add_degree2(fid, pair)
        else:
            k -= 2 * len(eng.alive)
            for v in verts:
                d = len(eng.rot[v])
                wv = d * (d - 1)
                if k < wv:
                    i, r = divmod(k, d - 1)
                    j = r if r < i else r + 1
                    eng.vertex_split(v, eng.rot[v][i], eng.rot[v][j])
                    break
                k -= wv
        n_vertices += 1
    G = eng.to_system()
    if return_ops:
        return G, eng.op_log
    return G


def c4():
    """The 4-cycle on the sphere, outer face (0,1,2,3)."""
    rot = {0: [1, 3], 1: [0, 2], 2: [1, 3], 3: [0, 2]}
    signs = {edge_key(u, v): 1 for u in rot for v in rot[u]}
    G = SignedRotationSystem(SPHERE, rot, signs)
    return G.with_outer((0, 1))
