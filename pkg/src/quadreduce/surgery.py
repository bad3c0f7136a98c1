"""Embedding-preserving surgery on quadrangulations.

Three rewrites: deletion of a degree-2 vertex, t-contraction (contract all
edges at a vertex with stable neighbourhood, then delete the parallel edges
by collapsing 2-gon faces), and face-contraction (identify the two opposite
vertices of a 4-face whose only common neighbours are the other two face
vertices).  Deletions and t-contractions expand into sequences of
face-contractions.

All operations are pure: they take a SignedRotationSystem and return a new
one.  Sign bookkeeping happens in a normalised gauge (vertex flips), which
changes no cycle sign product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import canon
from .embedding import (SPHERE, SignedRotationSystem, edge_key, twin)
from .errors import (AdjacentPair, DegenerateResult, ExtraCommonNeighbor,
                     InvalidInput, NeighborhoodNotStable, NotAFace,
                     NotExpandable, UnsafeContraction, WouldDestroyC4,
                     WrongDegree)
from .quadcycles import vertex_is_safe

DELETE_DEGREE2 = "delete_degree2"
T_CONTRACT = "t_contract"
FACE_CONTRACT = "face_contract"


@dataclass(frozen=True)
class ReductionStep:
    """One recorded surgery application."""

    kind: str
    pivot: object
    before_hash: str
    after_hash: str
    justification: dict = field(default_factory=dict)

    def format_line(self, n):
        if isinstance(self.pivot, tuple):
            pv = ",".join(str(p) for p in self.pivot)
        else:
            pv = str(self.pivot)
        return (f"step {n} {self.kind} pivot={pv} "
                f"before={self.before_hash} after={self.after_hash}")


def make_step(kind, pivot, before, after, justification=None):
    return ReductionStep(kind, pivot,
                         canon.canonical_hash(before), canon.canonical_hash(after),
                         justification or {})


# -- gauge helpers -----------------------------------------------------------

def _flip(rot, signs, x):
    rot[x] = tuple(reversed(rot[x]))
    for u in rot[x]:
        e = edge_key(u, x)
        signs[e] = -signs[e]


def _normalize_face(rot, signs, walk):
    """Flip vertices so all four edges of the face walk have sign +1."""
    w = list(walk)
    for i in (1, 2, 3):
        if signs[edge_key(w[i - 1], w[i])] == -1:
            _flip(rot, signs, w[i])
    assert signs[edge_key(w[3], w[0])] == 1, "face sign product must be +1"


def _plus_direction(rot, walk):
    """Orient a (sign-normalised) face walk along its +1 tracing orbit."""
    w = tuple(walk)
    rev = (w[0], w[3], w[2], w[1])
    for i in range(4):
        v = w[i]
        seq = rot[v]
        if len(seq) < 3:
            continue
        p, nx = w[i - 1], w[(i + 1) % 4]
        k = seq.index(p)
        if seq[(k + 1) % len(seq)] == nx:
            return w
        k = seq.index(nx)
        assert seq[(k + 1) % len(seq)] == p, "walk is not facial"
        return rev
    return w


def _locate_face(G, F):
    """Resolve a face argument (index or vertex 4-tuple) to a face index."""
    if isinstance(F, int):
        if not 0 <= F < len(G.faces):
            raise NotAFace(f"no face with index {F}")
        return F
    from .quadcycles import cycle4_canon, facial_quads
    vs = tuple(F)
    if len(vs) != 4:
        raise NotAFace(f"{vs} is not a 4-tuple")
    idx = facial_quads(G).get(cycle4_canon(vs))
    if idx is None:
        raise NotAFace(f"{vs} does not bound a face")
    return idx


def _remap_outer(G, rename, dead_vertices=(), result_edges=None):
    """Carry the outer-face designation through a surgery.

    Renames the outer dart; if its edge died, walks the old outer face for
    the first surviving edge.
    """
    if G.outer_dart is None:
        return None

    def alive(dart):
        a, b = rename.get(dart[0], dart[0]), rename.get(dart[1], dart[1])
        if a == b:
            return None
        if result_edges is not None and edge_key(a, b) not in result_edges:
            return None
        return (a, b)

    cand = alive(G.outer_dart)
    if cand is not None:
        return cand
    walk = G.faces.walks[G.outer_face_index]
    k = walk.index(G.outer_dart)
    for d in walk[k:] + walk[:k]:
        cand = alive(d)
        if cand is not None:
            return cand
    raise InvalidInput("outer face vanished during surgery")


# -- degree-2 deletion -------------------------------------------------------

def delete_degree2(G, v):
    """Remove a degree-2 vertex; its two incident 4-faces merge."""
    if v not in G.rot:
        raise WrongDegree(f"no vertex {v}")
    if len(G.rot[v]) != 2:
        raise WrongDegree(f"vertex {v} has degree {len(G.rot[v])}, need 2")
    if G.n_vertices == 4:
        raise WouldDestroyC4("deletion on the 4-cycle itself")
    rot = {u: tuple(x for x in seq if x != v)
           for u, seq in G.rot.items() if u != v}
    signs = {e: s for e, s in G.signs.items() if v not in e}
    outer = _remap_outer(G, {}, dead_vertices=(v,), result_edges=signs)
    return SignedRotationSystem(G.surface, rot, signs, outer, validate=False)


# -- face-contraction --------------------------------------------------------

def face_contract(G, F, pair):
    """Identify the two opposite vertices `pair` of the 4-face F."""
    idx = _locate_face(G, F)
    walk = G.faces.walk_vertices(idx)
    v1, v3 = pair
    if v1 not in walk or v3 not in walk:
        raise NotAFace(f"pair {pair} not on face {walk}")
    i, j = walk.index(v1), walk.index(v3)
    if (i - j) % 4 != 2:
        raise AdjacentPair(f"{pair} are consecutive on face {walk}")
    if G.has_edge(v1, v3):
        raise AdjacentPair(f"{v1} and {v3} are adjacent")
    common = G.adj[v1] & G.adj[v3]
    corners = {walk[(i + 1) % 4], walk[(i + 3) % 4]}
    if common != corners:
        raise ExtraCommonNeighbor(
            f"common neighbours {sorted(common)} of {pair}, face corners {sorted(corners)}")

    rot = dict(G.rot)
    signs = dict(G.signs)
    _normalize_face(rot, signs, walk)
    w = _plus_direction(rot, walk)
    k = w.index(v1)
    w = w[k:] + w[:k]
    if w[2] != v3:  # pair was (w2, w4) of the oriented walk
        w = w[1:] + w[:1]
    v1, v2, v3, v4 = w

    m = min(v1, v3)

    def arc(seq, start, stop):
        k = seq.index(start)
        out = []
        n = len(seq)
        for t in range(1, n):
            x = seq[(k + t) % n]
            if x == stop:
                return out
            out.append(x)
        raise AssertionError("stop vertex not in rotation")

    acc1 = arc(rot[v1], v2, v4)
    acc3 = arc(rot[v3], v4, v2)
    merged = (v2, *acc1, v4, *acc3)

    new_rot = {}
    for u, seq in rot.items():
        if u in (v1, v3):
            continue
        if u == v2:
            k = seq.index(v1)
            assert seq[(k + 1) % len(seq)] == v3
            seq = tuple(m if x == v1 else x for x in seq if x != v3)
        elif u == v4:
            k = seq.index(v3)
            assert seq[(k + 1) % len(seq)] == v1
            seq = tuple(m if x == v3 else x for x in seq if x != v1)
        else:
            seq = tuple(m if x in (v1, v3) else x for x in seq)
        new_rot[u] = seq
    new_rot[m] = merged

    new_signs = {}
    for (a, b), s in signs.items():
        if {a, b} == {v1, v2} or {a, b} == {v3, v2}:
            new_signs[edge_key(m, v2)] = 1
        elif {a, b} == {v1, v4} or {a, b} == {v3, v4}:
            new_signs[edge_key(m, v4)] = 1
        else:
            a = m if a in (v1, v3) else a
            b = m if b in (v1, v3) else b
            new_signs[edge_key(a, b)] = s

    for u, seq in new_rot.items():
        if len(seq) < 2 or len(set(seq)) != len(seq):
            raise DegenerateResult(
                f"identification of {pair} does not yield a simple quadrangulation")

    rename = {v1: m, v3: m}
    outer = _remap_outer(G, rename, result_edges=new_signs)
    return SignedRotationSystem(G.surface, new_rot, new_signs, outer)


# -- t-contraction -----------------------------------------------------------

class _Scratch:
    """Dart-indexed multigraph used while a t-contraction is in progress."""

    __slots__ = ("rot", "origin", "sign")

    def __init__(self, G):
        edges = G.edges
        eindex = {}
        for i, e in enumerate(edges):
            eindex[e] = i
        self.rot = {}
        self.origin = {}
        self.sign = {e: G.signs[edges[e]] for e in range(len(edges))}
        for v, seq in G.rot.items():
            lst = []
            for u in seq:
                e = eindex[edge_key(u, v)]
                d = 2 * e + (0 if v < u else 1)
                lst.append(d)
                self.origin[d] = v
            self.rot[v] = lst

    def head(self, d):
        return self.origin[d ^ 1]

    def flip(self, x):
        self.rot[x].reverse()
        for d in self.rot[x]:
            self.sign[d >> 1] = -self.sign[d >> 1]

    def contract_dart(self, d):
        v = self.origin[d]
        x = self.origin[d ^ 1]
        assert self.sign[d >> 1] == 1
        rv = self.rot[v]
        i = rv.index(d)
        rx = self.rot[x]
        j = rx.index(d ^ 1)
        chunk = rx[j + 1:] + rx[:j]
        self.rot[v] = rv[:i] + chunk + rv[i + 1:]
        for dd in chunk:
            self.origin[dd] = v
        del self.rot[x]
        del self.sign[d >> 1]
        del self.origin[d]
        del self.origin[d ^ 1]

    def delete_edge(self, e):
        for d in (2 * e, 2 * e + 1):
            self.rot[self.origin[d]].remove(d)
            del self.origin[d]
        del self.sign[e]

    def faces(self):
        nxt, prv = {}, {}
        for v, lst in self.rot.items():
            n = len(lst)
            for i, d in enumerate(lst):
                nxt[d] = lst[(i + 1) % n]
                prv[d] = lst[(i - 1) % n]
        darts = sorted(nxt)
        walks = []
        if 1 == min(self.sign.values(), default=1):
            seen = set()
            for d0 in darts:
                if d0 in seen:
                    continue
                walk = []
                d = d0
                while True:
                    walk.append(d)
                    seen.add(d)
                    d = nxt[d ^ 1]
                    if d == d0:
                        break
                walks.append(tuple(walk))
            return walks
        visited = set()
        for d0, s0 in [(d, 1) for d in darts] + [(d, -1) for d in darts]:
            if (d0, s0) in visited:
                continue
            states = []
            d, s = d0, s0
            while True:
                visited.add((d, s))
                states.append((d, s))
                s2 = s * self.sign[d >> 1]
                t = d ^ 1
                d, s = (nxt[t] if s2 == 1 else prv[t]), s2
                if (d, s) == (d0, s0):
                    break
            walks.append(tuple(d for d, _ in states))
            for d, s in states:
                visited.add((d ^ 1, -s * self.sign[d >> 1]))
        return walks

    def collapse_bigons(self):
        """Delete parallel edges by collapsing 2-gon faces, smallest first.

        Distinct 2-gon faces never share an edge, so each sweep can delete
        one edge of every current 2-gon before retracing.
        """
        while True:
            bigons = [w for w in self.faces()
                      if len(w) == 2 and w[0] >> 1 != w[1] >> 1]
            if not bigons:
                return
            for walk in sorted(bigons, key=min):
                e = max(d >> 1 for d in walk)
                if e in self.sign:  # may already be gone via a shared bigon
                    self.delete_edge(e)

    def to_system(self, surface, outer):
        rot = {}
        for v, lst in self.rot.items():
            names = tuple(self.head(d) for d in lst)
            if v in names:
                raise DegenerateResult("contraction created a loop")
            if len(set(names)) != len(names):
                raise DegenerateResult("parallel edges survive the contraction")
            if len(names) < 2:
                raise DegenerateResult(f"vertex {v} left with degree {len(names)}")
            rot[v] = names
        signs = {}
        for e, s in self.sign.items():
            u, v = self.origin[2 * e], self.origin[2 * e + 1]
            signs[edge_key(u, v)] = s
        return SignedRotationSystem(surface, rot, signs, outer, validate=False)


def t_contract(G, v, enforce_nice=False):
    """Contract all edges at v (stable neighbourhood), simplifying 2-gons.

    With enforce_nice, additionally require that v lies on no contractible
    4-cycle with a non-empty interior, which guarantees the result is again
    a quadrangulation.  The merged vertex keeps the identifier v.
    """
    if v not in G.rot:
        raise WrongDegree(f"no vertex {v}")
    nbrs = G.rot[v]
    adj = G.adj
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            if nbrs[j] in adj[nbrs[i]]:
                raise NeighborhoodNotStable(
                    f"neighbours {nbrs[i]},{nbrs[j]} of {v} are adjacent")
    if enforce_nice:
        if G.surface == SPHERE and G.outer_dart is None:
            raise InvalidInput("outer face required to check interiors")
        if not vertex_is_safe(G, v):
            raise UnsafeContraction(
                f"{v} lies on a contractible 4-cycle with interior vertices")

    sc = _Scratch(G)
    for x in nbrs:
        if G.sign(v, x) == -1:
            sc.flip(x)
    for d in list(sc.rot[v]):
        sc.contract_dart(d)
    sc.collapse_bigons()
    result_edges = set()
    for e in sc.sign:
        result_edges.add(edge_key(sc.origin[2 * e], sc.origin[2 * e + 1]))
    rename = {x: v for x in nbrs}
    outer = _remap_outer(G, rename, result_edges=result_edges)
    return sc.to_system(G.surface, outer)


# -- generic step application -------------------------------------------------

def apply_step(G, step):
    """Replay one recorded surgery on G."""
    if step.kind == DELETE_DEGREE2:
        return delete_degree2(G, step.pivot)
    if step.kind == T_CONTRACT:
        return t_contract(G, step.pivot,
                          enforce_nice=step.justification.get("enforce_nice", False))
    if step.kind == FACE_CONTRACT:
        return face_contract(G, step.justification["face"], step.pivot)
    raise InvalidInput(f"unknown step kind {step.kind!r}")


def rename_vertices(G, mapping):
    """Relabel vertices; mapping must be injective on its domain."""
    def nm(x):
        return mapping.get(x, x)

    image = [nm(v) for v in G.rot]
    if len(set(image)) != len(image):
        raise InvalidInput("vertex renaming is not injective")
    rot = {nm(v): tuple(nm(u) for u in seq) for v, seq in G.rot.items()}
    signs = {edge_key(nm(a), nm(b)): s for (a, b), s in G.signs.items()}
    outer = None
    if G.outer_dart is not None:
        outer = (nm(G.outer_dart[0]), nm(G.outer_dart[1]))
    return SignedRotationSystem(G.surface, rot, signs, outer, validate=False)


# -- expansion into face-contractions -----------------------------------------

def _walks_at_vertex(G, v):
    """Face walks through v, rotated to start at v.

    Returns a list of (face index, (v, a, y, b)) with a the walk successor
    and b the predecessor; together a, b form the rotation corner the face
    occupies at v.  Dart-based lookup is unreliable on the projective plane
    (a walk may reuse a dart whose twin appears nowhere), vertex scanning
    is not.
    """
    out = []
    for i, walk in enumerate(G.faces.walks):
        vs = tuple(d[0] for d in walk)
        if v in vs:
            k = vs.index(v)
            out.append((i, vs[k:] + vs[:k]))
    return out


def expand_to_face_contractions(G, step):
    """Rewrite a deletion or t-contraction as face-contractions.

    Returns the list of face-contraction steps; applied in order to G their
    composition is canonically isomorphic to applying `step` directly.  A
    deletion expands to one face-contraction, a t-contraction at a degree-d
    vertex to d of them.
    """
    steps, _, _ = _expand(G, step)
    return steps


def expand_aligned(G, step, return_renames=False):
    """Like expand_to_face_contractions, plus the relabelled final graph.

    The returned graph equals apply_step(G, step) vertex-for-vertex (the
    composition is followed by the returned relabelling), so expansions of
    successive trace steps can be chained exactly.
    """
    steps, final, renames = _expand(G, step)
    if return_renames:
        return steps, final, renames
    return steps, final


def _expand(G, step):
    if step.kind == DELETE_DEGREE2:
        v = step.pivot
        if v not in G.rot or len(G.rot[v]) != 2:
            raise NotExpandable(f"{v} is not a degree-2 vertex")
        if G.n_vertices == 4:
            raise NotExpandable("deletion on the 4-cycle is not allowed")
        walks = _walks_at_vertex(G, v)
        if len(walks) != 2:
            raise NotExpandable(f"expected two faces at {v}")
        (_, wa), (_, wb) = walks
        ya, yb = wa[2], wb[2]
        face, y = (wa, ya) if ya <= yb else (wb, yb)
        H = face_contract(G, face, (v, y))
        rec = make_step(FACE_CONTRACT, (v, y), G, H, {"face": face})
        m = min(v, y)
        final_map = {} if m == y else {m: y}
        if final_map:
            H = rename_vertices(H, final_map)
        return [rec], H, final_map

    if step.kind != T_CONTRACT:
        raise NotExpandable(f"cannot expand step kind {step.kind!r}")
    v = step.pivot
    if v not in G.rot:
        raise NotExpandable(f"no vertex {v}")
    nbrs = G.rot[v]
    adj = G.adj
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            if nbrs[j] in adj[nbrs[i]]:
                raise NotExpandable("neighbourhood is not stable")
    if not vertex_is_safe(G, v):
        raise NotExpandable("pivot violates the empty-interior condition")

    d = len(nbrs)
    if d < 2:
        raise NotExpandable("degree must be at least 2")

    # faces around v, keyed by the rotation-consecutive neighbour pair
    walks = _walks_at_vertex(G, v)
    if len(walks) != d:
        raise NotExpandable(f"expected {d} faces at {v}, found {len(walks)}")
    chain = list(nbrs)
    faces_between = {}
    offs = {}
    if d == 2:
        (_, w1), (_, w2) = walks
        faces_between = {0: w1, 1: w2}
        offs = {0: w1[2], 1: w2[2]}
    else:
        pair_face = {}
        for _, w in walks:
            pair_face[frozenset((w[1], w[3]))] = w
        for i in range(d):
            key = frozenset((chain[i], chain[(i + 1) % d]))
            w = pair_face.get(key)
            if w is None:
                raise NotExpandable("faces at the pivot are not in rotation order")
            faces_between[i] = w
            offs[i] = w[2]

    y0 = offs[0]
    universe = list(G.rot)
    rename = {}

    def nm(x):
        return rename.get(x, x)

    def record_merge(p, q, m):
        for k in universe:
            if rename.get(k, k) in (p, q):
                rename[k] = m

    steps = []
    H = G
    # 1: identify v with the off-vertex of the face between chain[0], chain[1]
    face0 = faces_between[0]
    Hn = face_contract(H, face0, (v, y0))
    steps.append(make_step(FACE_CONTRACT, (v, y0), H, Hn, {"face": face0}))
    H = Hn
    record_merge(v, y0, min(v, y0))
    # 2..d-1: merge the neighbours along the rotation
    cluster = chain[1]
    for i in range(1, d - 1):
        nxt = chain[i + 1]
        ft = tuple(nm(x) for x in faces_between[i])
        pair = (nm(cluster), nm(nxt))
        Hn = face_contract(H, ft, pair)
        steps.append(make_step(FACE_CONTRACT, pair, H, Hn, {"face": ft}))
        H = Hn
        record_merge(pair[0], pair[1], min(pair))
        cluster = nxt
    # d: close the ring through chain[0]
    ft = tuple(nm(x) for x in faces_between[d - 1])
    pair = (nm(cluster), nm(chain[0]))
    Hn = face_contract(H, ft, pair)
    steps.append(make_step(FACE_CONTRACT, pair, H, Hn, {"face": ft}))
    H = Hn
    record_merge(pair[0], pair[1], min(pair))
    xcluster = nm(chain[0])
    m1 = nm(v)

    # align names with the direct contraction: cluster of {v} u N(v) is v,
    # the absorbed off-vertex keeps its own name
    final_map = {}
    if xcluster != v:
        final_map[xcluster] = v
    if m1 != y0:
        final_map[m1] = y0
    if final_map:
        H = rename_vertices(H, final_map)
    return steps, H, final_map
