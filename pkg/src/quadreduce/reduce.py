"""Reduction pipelines: sphere quadrangulations to the 4-cycle, non-bipartite
projective quadrangulations to an odd wheel, with replayable traces.

Vertex selection: degree-2 vertices are always deletable, and a degree-3
vertex whose contractible 4-cycles all bound faces satisfies the
t-contraction hypothesis, so the default driver deletes the smallest
degree-2 vertex and otherwise contracts the smallest safe stable degree-3
vertex.  The classical search (innermost 4-cycle with interior vertices,
then a low-degree vertex inside it) is available as strategy="innermost"
and through find_reducible_vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canon import canonical_hash
from .embedding import (PROJECTIVE_PLANE, SPHERE, CycleHandle,
                        disk_interior, is_bipartite, validate_quadrangulation)
from .errors import BipartiteInput, InvalidInput, NoSuchVertex, QuadError
from .generate import odd_wheel_embedding
from .quadcycles import bad_four_cycles, vertex_is_safe
from .surgery import (DELETE_DEGREE2, T_CONTRACT, ReductionStep, apply_step,
                      delete_degree2, make_step, t_contract)

FOUR_CYCLE = "four_cycle"
ODD_WHEEL = "odd_wheel"
NICE = "nice"


@dataclass(frozen=True)
class ReductionTrace:
    """A full surgery sequence from `initial` to `final`.

    `graphs`, when requested from the reducer, holds every graph along the
    trace (initial first, final last) so callers can inspect intermediates
    without re-applying the steps.
    """

    initial: object
    steps: tuple
    final: object
    terminal_kind: str
    wheel_k: int | None = None
    canonical_wheel: bool | None = None
    nice_marks: tuple = field(default_factory=tuple)
    graphs: tuple | None = None

    def replay(self, validate=True, check_hashes=None):
        """Re-apply all steps; returns every graph along the way.

        With validate, checks that each intermediate is a quadrangulation
        and (projective traces from non-bipartite input) that
        non-bipartiteness is preserved; check_hashes additionally verifies
        the canonical-hash chain (defaults to follow `validate`).
        """
        if check_hashes is None:
            check_hashes = validate
        graphs = [self.initial]
        check_nonbip = (self.initial.surface == PROJECTIVE_PLANE
                        and not is_bipartite(self.initial)[0])
        H = self.initial
        for step in self.steps:
            if check_hashes and canonical_hash(H) != step.before_hash:
                raise QuadError("trace replay: before-hash mismatch")
            H = apply_step(H, step)
            graphs.append(H)
            if check_hashes and canonical_hash(H) != step.after_hash:
                raise QuadError("trace replay: after-hash mismatch")
            if validate:
                report = validate_quadrangulation(H)
                if not report.ok:
                    raise QuadError(f"trace replay: invalid intermediate: {report.violations}")
                if check_nonbip and is_bipartite(H)[0]:
                    raise QuadError("trace replay: intermediate became bipartite")
        if check_hashes and canonical_hash(H) != canonical_hash(self.final):
            raise QuadError("trace replay: final graph mismatch")
        return graphs

    def format_lines(self):
        lines = [s.format_line(i + 1) for i, s in enumerate(self.steps)]
        if self.terminal_kind == ODD_WHEEL:
            lines.append(f"terminal odd_wheel k={self.wheel_k}")
        elif self.terminal_kind == FOUR_CYCLE:
            lines.append("terminal four_cycle")
        else:
            lines.append("terminal nice")
        return lines


def _min_degree2(G):
    best = None
    for v, seq in G.rot.items():
        if len(seq) == 2 and (best is None or v < best):
            best = v
    return best


def _stable(G, v):
    nbrs = G.rot[v]
    adj = G.adj
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            if nbrs[j] in adj[nbrs[i]]:
                return False
    return True


def _min_safe_stable_degree3(G):
    for v in sorted(G.rot):
        if len(G.rot[v]) == 3 and _stable(G, v) and vertex_is_safe(G, v):
            return v
    return None


def find_reducible_vertex(G, C):
    """Smallest vertex of degree 2 or 3 strictly inside the 4-cycle C.

    Degree 2 wins over degree 3; ties broken by vertex id.
    """
    if not isinstance(C, CycleHandle):
        C = CycleHandle(C)
    interior, _ = disk_interior(G, C)
    best = None
    for v in interior:
        d = len(G.rot[v])
        if d in (2, 3):
            key = (d, v)
            if best is None or key < best:
                best = key
    if best is None:
        raise NoSuchVertex(
            f"no degree-2/3 vertex inside {C.vertices}; interior {sorted(interior)}")
    return best[1]


def _innermost_bad_cycle(G):
    best = None
    for c in bad_four_cycles(G):
        interior, _ = disk_interior(G, CycleHandle(c))
        key = (len(interior), tuple(sorted(c)), c)
        if best is None or key < best:
            best = key
    return CycleHandle(best[2]) if best else None


def _reduction_step(G, strategy):
    """One sphere-style reduction step; returns (step, new graph)."""
    if strategy == "innermost":
        C = _innermost_bad_cycle(G)
        v = find_reducible_vertex(G, C)
        if len(G.rot[v]) == 2:
            H = delete_degree2(G, v)
            return make_step(DELETE_DEGREE2, v, G, H,
                             {"degree": 2, "cycle": C.vertices}), H
        H = t_contract(G, v, enforce_nice=True)
        return make_step(T_CONTRACT, v, G, H,
                         {"degree": 3, "enforce_nice": True, "cycle": C.vertices}), H
    v = _min_degree2(G)
    if v is not None:
        H = delete_degree2(G, v)
        return make_step(DELETE_DEGREE2, v, G, H, {"degree": 2}), H
    v = _min_safe_stable_degree3(G)
    if v is None:
        raise NoSuchVertex("no degree-2 vertex and no safe stable degree-3 vertex")
    H = t_contract(G, v, enforce_nice=True)
    return make_step(T_CONTRACT, v, G, H,
                     {"degree": 3, "enforce_nice": True}), H


def reduce_sphere(G, strategy="fast", keep_graphs=False):
    """Reduce a sphere quadrangulation to the 4-cycle.

    Only degree-2 deletions and t-contractions at degree-3 vertices with
    the empty-interior guarantee are used, so every intermediate is again
    a quadrangulation.
    """
    if G.surface != SPHERE:
        raise InvalidInput("reduce_sphere needs a sphere quadrangulation")
    if G.outer_dart is None:
        raise InvalidInput("outer face must be designated")
    report = validate_quadrangulation(G)
    if not report.ok:
        raise InvalidInput(f"not a quadrangulation: {report.violations}")
    steps = []
    graphs = [G]
    H = G
    while H.n_vertices > 4:
        step, H = _reduction_step(H, strategy)
        steps.append(step)
        graphs.append(H)
    return ReductionTrace(G, tuple(steps), H, FOUR_CYCLE,
                          graphs=tuple(graphs) if keep_graphs else None)


def _require_projective_nonbipartite(G):
    if G.surface != PROJECTIVE_PLANE:
        raise InvalidInput("projective-plane quadrangulation required")
    report = validate_quadrangulation(G)
    if not report.ok:
        raise InvalidInput(f"not a quadrangulation: {report.violations}")
    if is_bipartite(G)[0]:
        raise BipartiteInput("the quadrangulation is bipartite")


def _make_nice_steps(G, steps, graphs):
    """Steps removing all vertices inside contractible 4-cycles."""
    H = G
    while bad_four_cycles(H):
        v = _min_degree2(H)
        if v is not None:
            Hn = delete_degree2(H, v)
            steps.append(make_step(DELETE_DEGREE2, v, H, Hn, {"degree": 2}))
        else:
            v = _min_safe_stable_degree3(H)
            if v is None:
                raise NoSuchVertex(
                    "not nice, yet no degree-2 and no safe stable degree-3 vertex")
            Hn = t_contract(H, v, enforce_nice=True)
            steps.append(make_step(T_CONTRACT, v, H, Hn,
                                   {"degree": 3, "enforce_nice": True}))
        H = Hn
        graphs.append(H)
    return H


def make_nice(G, keep_graphs=False):
    """Remove all vertices lying inside contractible 4-cycles."""
    _require_projective_nonbipartite(G)
    steps = []
    graphs = [G]
    H = _make_nice_steps(G, steps, graphs)
    return ReductionTrace(G, tuple(steps), H, NICE,
                          nice_marks=(len(steps),),
                          graphs=tuple(graphs) if keep_graphs else None)


def reduce_projective(G, keep_graphs=False):
    """Reduce a non-bipartite projective quadrangulation to an odd wheel.

    Alternates nice-ification with t-contractions at stable vertices until
    every vertex lies in a triangle; the remaining graph is an odd wheel.
    """
    _require_projective_nonbipartite(G)
    steps = []
    graphs = [G]
    nice_marks = []
    H = G
    while True:
        H = _make_nice_steps(H, steps, graphs)
        nice_marks.append(len(steps))
        v = None
        for u in sorted(H.rot):
            if _stable(H, u):
                v = u
                break
        if v is None:
            break
        Hn = t_contract(H, v, enforce_nice=True)
        steps.append(make_step(T_CONTRACT, v, H, Hn,
                               {"degree": len(H.rot[v]), "enforce_nice": True}))
        H = Hn
        graphs.append(H)
    k = recognize_odd_wheel(H)
    if k is None:
        raise QuadError("reduction did not terminate at an odd wheel")
    wheel = odd_wheel_embedding((k - 1) // 2)
    canonical = canonical_hash(H) == canonical_hash(wheel)
    return ReductionTrace(G, tuple(steps), H, ODD_WHEEL, wheel_k=k,
                          canonical_wheel=canonical, nice_marks=tuple(nice_marks),
                          graphs=tuple(graphs) if keep_graphs else None)


def recognize_odd_wheel(G):
    """Return p when the abstract graph is the wheel W_p with p odd."""
    n = G.n_vertices
    hub = None
    for v in sorted(G.rot):
        if len(G.rot[v]) == n - 1:
            hub = v
            break
    if hub is None:
        return None
    p = n - 1
    if p % 2 == 0 or p < 3:
        return None
    for v in G.rot:
        if v != hub and len(G.rot[v]) != 3:
            return None
    # rim must be a single cycle through all non-hub vertices
    rim = {v: [u for u in G.rot[v] if u != hub] for v in G.rot if v != hub}
    start = next(iter(sorted(rim)))
    prev, cur = None, start
    length = 0
    while True:
        a, b = rim[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        length += 1
        if cur == start:
            break
        if length > p:
            return None
    return p if length == p else None
