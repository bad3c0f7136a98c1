"""Signed rotation systems for graphs embedded in the sphere or projective plane.

A graph embedding is stored combinatorially: every vertex carries a cyclic
order of its neighbours and every edge carries a sign (+1/-1).  Since all
graphs here are simple, a dart (directed edge side) is just an ordered pair
``(u, v)`` and its twin is ``(v, u)``.  On the sphere all signs are +1; on
the projective plane a cycle bounds a disk exactly when the product of its
edge signs is +1.

Plane semantics are recovered on the sphere by designating an outer face,
tracked through surgeries by a representative dart (``outer_dart``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedRotation, NotACycle, NotContractible


SPHERE = "sphere"
PROJECTIVE_PLANE = "projective_plane"

_EULER = {SPHERE: 2, PROJECTIVE_PLANE: 1}


def euler_characteristic(surface):
    return _EULER[surface]


def edge_key(u, v):
    return (u, v) if u < v else (v, u)


def twin(dart):
    return (dart[1], dart[0])


class SignedRotationSystem:
    """An embedded simple connected graph.

    rotations: mapping vertex -> cyclic sequence of neighbours.
    signs: mapping edge key (min, max) -> +1 or -1.
    outer_dart: a dart on the designated outer face (sphere only).

    Instances are treated as immutable; surgeries build new ones.
    """

    __slots__ = ("surface", "rot", "signs", "outer_dart", "_adj", "_faces",
                 "_rot_next", "_rot_prev", "_canon_cache", "_cache")

    def __init__(self, surface, rotations, signs, outer_dart=None, validate=True):
        if surface not in _EULER:
            raise MalformedRotation(f"unknown surface {surface!r}")
        self.surface = surface
        rot = {}
        for v in sorted(rotations):
            seq = tuple(rotations[v])
            if seq:
                m = seq.index(min(seq))
                seq = seq[m:] + seq[:m]
            rot[v] = seq
        self.rot = rot
        self.signs = {edge_key(u, v): int(s) for (u, v), s in signs.items()}
        self.outer_dart = tuple(outer_dart) if outer_dart is not None else None
        self._adj = None
        self._faces = None
        self._rot_next = None
        self._rot_prev = None
        self._canon_cache = None
        self._cache = {}
        if validate:
            self._check()

    # -- construction checks -------------------------------------------------

    def _check(self):
        rot = self.rot
        if not rot:
            raise MalformedRotation("empty graph")
        edges = set()
        for v, seq in rot.items():
            if len(set(seq)) != len(seq):
                raise MalformedRotation(f"parallel edges at vertex {v}")
            for u in seq:
                if u == v:
                    raise MalformedRotation(f"loop at vertex {v}")
                if u not in rot:
                    raise MalformedRotation(f"vertex {v} lists unknown neighbour {u}")
                edges.add(edge_key(u, v))
        for u, v in edges:
            if u not in self.rot[v] or v not in self.rot[u]:
                raise MalformedRotation(f"edge {u},{v} not symmetric")
        if set(self.signs) != edges:
            raise MalformedRotation("sign table does not match edge set")
        for e, s in self.signs.items():
            if s not in (1, -1):
                raise MalformedRotation(f"edge {e} has sign {s}")
            if self.surface == SPHERE and s != 1:
                raise MalformedRotation(f"negative sign {e} on the sphere")
        # connectivity
        verts = list(rot)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            for u in rot[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(rot):
            raise MalformedRotation("graph is not connected")
        if self.outer_dart is not None:
            if self.surface != SPHERE:
                raise MalformedRotation("outer face only meaningful on the sphere")
            u, v = self.outer_dart
            if u not in rot or v not in rot[u]:
                raise MalformedRotation(f"outer dart {self.outer_dart} not in graph")

    # -- basic accessors -----------------------------------------------------

    @property
    def vertices(self):
        return tuple(self.rot)

    @property
    def n_vertices(self):
        return len(self.rot)

    @property
    def n_edges(self):
        return len(self.signs)

    @property
    def edges(self):
        return sorted(self.signs)

    def degree(self, v):
        return len(self.rot[v])

    def neighbors(self, v):
        return self.rot[v]

    @property
    def adj(self):
        if self._adj is None:
            self._adj = {v: frozenset(seq) for v, seq in self.rot.items()}
        return self._adj

    def has_edge(self, u, v):
        return edge_key(u, v) in self.signs

    def sign(self, u, v):
        return self.signs[edge_key(u, v)]

    def _rotmaps(self):
        if self._rot_next is None:
            nxt, prv = {}, {}
            for v, seq in self.rot.items():
                n = len(seq)
                for i, u in enumerate(seq):
                    w = seq[(i + 1) % n]
                    nxt[(v, u)] = (v, w)
                    prv[(v, w)] = (v, u)
            self._rot_next = nxt
            self._rot_prev = prv
        return self._rot_next, self._rot_prev

    def _dart_signs(self):
        ds = self._cache.get("dart_sign")
        if ds is None:
            signs = self.signs
            ds = {}
            for v, seq in self.rot.items():
                for u in seq:
                    ds[(v, u)] = signs[(v, u) if v < u else (u, v)]
            self._cache["dart_sign"] = ds
        return ds

    @property
    def faces(self):
        if self._faces is None:
            self._faces = trace_faces(self)
        return self._faces

    @property
    def outer_face_index(self):
        if self.outer_dart is None:
            return None
        return self.faces.face_of[self.outer_dart]

    def with_outer(self, dart):
        return SignedRotationSystem(self.surface, self.rot, self.signs, dart)

    def __eq__(self, other):
        if not isinstance(other, SignedRotationSystem):
            return NotImplemented
        return (self.surface == other.surface and self.rot == other.rot
                and self.signs == other.signs and self.outer_dart == other.outer_dart)

    def __repr__(self):
        return (f"SignedRotationSystem({self.surface}, V={self.n_vertices}, "
                f"E={self.n_edges})")


@dataclass(frozen=True)
class FaceList:
    """Faces of an embedding as cyclic dart walks."""

    walks: tuple
    face_of: dict

    def __len__(self):
        return len(self.walks)

    def walk_vertices(self, idx):
        return tuple(d[0] for d in self.walks[idx])

    def lengths(self):
        return [len(w) for w in self.walks]


def trace_faces(G):
    """Decompose the darts into facial walks.

    A traversal state is (dart, direction); crossing an edge multiplies the
    direction by the edge sign and the next dart is read from the rotation
    forwards (+1) or backwards (-1).  Each orbit paired with its reverse
    traversal (state (d, s) reversed is (twin(d), -s*sign(d))) gives one
    face; the reported walk is the orbit found first.
    """
    nxt, prv = G._rotmaps()
    darts = sorted(nxt)
    visited = set()
    walks = []
    face_of = {}
    if 1 == min(G.signs.values(), default=1):
        # orientable fast path: faces are plain orbits of next-after-twin
        for d0 in darts:
            if d0 in face_of:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                face_of[d] = len(walks)
                d = nxt[(d[1], d[0])]
                if d == d0:
                    break
            walks.append(tuple(walk))
        return FaceList(tuple(walks), face_of)
    sgn = G._dart_signs()
    # all +1 starts before any -1 start: on all-positive systems every face
    # is then recorded by its forward walk and face_of indexes every dart
    for d0, s0 in [(d, 1) for d in darts] + [(d, -1) for d in darts]:
        if (d0, s0) in visited:
            continue
        states = []
        d, s = d0, s0
        while True:
            visited.add((d, s))
            states.append((d, s))
            s2 = s * sgn[d]
            back = (d[1], d[0])
            d, s = (nxt[back] if s2 == 1 else prv[back]), s2
            if (d, s) == (d0, s0):
                break
        idx = len(walks)
        walks.append(tuple(d for d, _ in states))
        for d, s in states:
            face_of[d] = idx
            visited.add(((d[1], d[0]), -s * sgn[d]))
    return FaceList(tuple(walks), face_of)


@dataclass
class ValidationReport:
    """Outcome of validate_quadrangulation; enumerates violations."""

    ok: bool
    violations: list
    surface: str
    n_vertices: int
    n_edges: int
    n_faces: int
    euler: int
    bipartite: bool

    def __bool__(self):
        return self.ok


def validate_quadrangulation(G):
    """Check that G is a quadrangulation of its surface.

    Verifies connectivity and simplicity (already enforced on
    construction), the Euler identity, that every face is a 4-cycle on
    distinct vertices, and the edge-count identity (E = 2V - 4 on the
    sphere, E = 2V - 2 on the projective plane).
    """
    violations = []
    faces = G.faces
    V, E, F = G.n_vertices, G.n_edges, len(faces)
    chi = V - E + F
    want = euler_characteristic(G.surface)
    if chi != want:
        violations.append(f"euler characteristic {chi}, expected {want}")
    for i, walk in enumerate(faces.walks):
        if len(walk) != 4:
            violations.append(f"face {i} has length {len(walk)}")
        elif len({d[0] for d in walk}) != 4:
            violations.append(f"face {i} repeats a vertex: {faces.walk_vertices(i)}")
    expected_edges = 2 * V - 4 if G.surface == SPHERE else 2 * V - 2
    if E != expected_edges:
        violations.append(f"edge count {E}, expected {expected_edges}")
    bip, _ = is_bipartite(G)
    return ValidationReport(not violations, violations, G.surface, V, E, F, chi, bip)


@dataclass(frozen=True)
class CycleHandle:
    """A cycle given by its cyclic vertex sequence."""

    vertices: tuple

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(vertices))

    def __len__(self):
        return len(self.vertices)

    @property
    def darts(self):
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def _as_cycle(C):
    if isinstance(C, CycleHandle):
        return C
    return CycleHandle(C)


def is_bipartite(G):
    """2-colour G; returns (True, None) or (False, odd cycle witness)."""
    color = {}
    parent = {}
    for root in G.rot:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for u in G.rot[v]:
                if u not in color:
                    color[u] = 1 - color[v]
                    parent[u] = v
                    queue.append(u)
                elif color[u] == color[v]:
                    # odd closed walk: paths to the lowest common ancestor
                    pa, pb = [v], [u]
                    seen = {v: 0}
                    x = v
                    while parent[x] is not None:
                        x = parent[x]
                        seen[x] = len(pa)
                        pa.append(x)
                    x = u
                    while x not in seen:
                        x = parent[x]
                        pb.append(x)
                    cycle = pa[:seen[x] + 1] + pb[-2::-1]
                    return False, CycleHandle(cycle)
    return True, None


def cycle_sign(G, C):
    """Product of edge signs along the cycle; +1 means contractible."""
    C = _as_cycle(C)
    vs = C.vertices
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise NotACycle(f"{vs} is not a cycle")
    s = 1
    for u, v in C.darts:
        if not G.has_edge(u, v):
            raise NotACycle(f"missing edge {u},{v}")
        s *= G.sign(u, v)
    return s


def disk_interior(G, C):
    """Vertices and faces strictly inside the disk bounded by C.

    The dual graph of faces is split by removing the dual edges that cross
    C; of the two components, the disk side is the one not containing the
    outer face (sphere) or the one whose closed region has Euler
    characteristic 1 (projective plane).  Returns (vertex set, face set).
    """
    C = _as_cycle(C)
    if cycle_sign(G, C) != 1:
        raise NotContractible(f"cycle {C.vertices} has sign -1")
    faces = G.faces
    cut = set()
    for u, v in C.darts:
        cut.add(edge_key(u, v))
    # dual adjacency: every edge borders exactly two face sides (walks may
    # use a dart or its twin for either side), so pair faces per edge
    sides = {}
    for i, walk in enumerate(faces.walks):
        for d in walk:
            sides.setdefault(edge_key(*d), []).append(i)
    dual = {i: [] for i in range(len(faces))}
    for e, fs in sides.items():
        if e in cut:
            continue
        a, b = fs
        dual[a].append(b)
        dual[b].append(a)
    comp = [None] * len(faces)
    comps = []
    for start in range(len(faces)):
        if comp[start] is not None:
            continue
        cid = len(comps)
        members = [start]
        comp[start] = cid
        stack = [start]
        while stack:
            f = stack.pop()
            for g in dual[f]:
                if comp[g] is None:
                    comp[g] = cid
                    members.append(g)
                    stack.append(g)
        comps.append(members)
    if len(comps) != 2:
        raise NotContractible(
            f"cycle {C.vertices} does not separate the faces into two parts")
    boundary = set(C.vertices)

    def side_info(members):
        vs = set()
        es = set()
        for f in members:
            for d in faces.walks[f]:
                vs.add(d[0])
                es.add(edge_key(*d))
        es |= cut
        vs |= boundary
        chi = len(vs) - len(es) + len(members)
        return vs, chi

    if G.surface == SPHERE:
        if G.outer_dart is None:
            raise NotContractible("outer face required on the sphere")
        outer = G.outer_face_index
        inside = comps[0] if comp[outer] == 1 else comps[1]
    else:
        vs0, chi0 = side_info(comps[0])
        vs1, chi1 = side_info(comps[1])
        if (chi0 == 1) == (chi1 == 1):
            raise NotContractible(
                f"no unique disk side for cycle {C.vertices} (chi {chi0}, {chi1})")
        inside = comps[0] if chi0 == 1 else comps[1]
    interior_vertices = set()
    for f in inside:
        for d in faces.walks[f]:
            interior_vertices.add(d[0])
    interior_vertices -= boundary
    return frozenset(interior_vertices), frozenset(inside)
