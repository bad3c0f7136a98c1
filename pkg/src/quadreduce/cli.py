"""Command-line interface: validate, generate, reduce, check-tperfect, export.

All subcommands read and write .rsq files and produce deterministic,
diff-friendly text.  Exit codes: 0 success/valid, 1 invalid input
semantics, 2 parse error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import rsq
from .canon import canonical_hash
from .embedding import (PROJECTIVE_PLANE, SPHERE, edge_key, is_bipartite,
                        validate_quadrangulation)
from .errors import ParseError, QuadError, TooLarge, UnsupportedFormat
from .generate import gen_quadrangulation
from .reduce import reduce_projective, reduce_sphere
from .surgery import expand_aligned
from .tperfect import check_quadrangulation, is_t_perfect

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_CAP = 3


def _bool(x):
    return "true" if x else "false"


# -- validate ----------------------------------------------------------------

def cmd_validate(path):
    G = rsq.load(path)
    report = validate_quadrangulation(G)
    lines = [f"faces={report.n_faces} euler={report.euler} "
             f"bipartite={_bool(report.bipartite)}"]
    for v in report.violations:
        lines.append(f"violation: {v}")
    return (EXIT_OK if report.ok else EXIT_INVALID), "\n".join(lines)


# -- generate ----------------------------------------------------------------

def cmd_generate(surface, n, seed, nonbipartite):
    G = gen_quadrangulation(surface, n, seed, require_nonbipartite=nonbipartite)
    return EXIT_OK, rsq.format_rsq(G).rstrip("\n")


# -- reduce ------------------------------------------------------------------

def cmd_reduce(path, emit_face_contractions=False):
    G = rsq.load(path)
    report = validate_quadrangulation(G)
    if not report.ok:
        return EXIT_INVALID, "\n".join(f"violation: {v}" for v in report.violations)
    if G.surface == SPHERE:
        trace = reduce_sphere(G)
    else:
        trace = reduce_projective(G)
    if not emit_face_contractions:
        return EXIT_OK, "\n".join(trace.format_lines())
    lines = []
    H = G
    for n_step, step in enumerate(trace.steps, start=1):
        lines.append(step.format_line(n_step))
        subs, aligned, renames = expand_aligned(H, step, return_renames=True)
        for i, sub in enumerate(subs, start=1):
            face = ",".join(str(x) for x in sub.justification["face"])
            pv = ",".join(str(x) for x in sub.pivot)
            lines.append(f"expand {n_step}.{i} face_contract pivot={pv} "
                         f"face={face} before={sub.before_hash} after={sub.after_hash}")
        if renames:
            pairs = " ".join(f"{a}->{b}" for a, b in sorted(renames.items()))
            lines.append(f"expand {n_step}.relabel {pairs}")
        H = aligned
    if trace.terminal_kind == "odd_wheel":
        lines.append(f"terminal odd_wheel k={trace.wheel_k}")
    else:
        lines.append("terminal four_cycle")
    return EXIT_OK, "\n".join(lines)


# -- check-tperfect ----------------------------------------------------------

def cmd_check_tperfect(path, cross_validate=False):
    G = rsq.load(path)
    lines = []
    if G.surface == PROJECTIVE_PLANE and validate_quadrangulation(G).ok:
        res = check_quadrangulation(G, cross_validate=cross_validate)
        lines.append(f"verdict={res.verdict}")
        if res.wheel_witness is not None:
            ws = " ".join(f"v{v}={x}" for v, x in sorted(res.wheel_witness.items()))
            lines.append(f"witness wheel k={res.trace.wheel_k} {ws}")
        if cross_validate:
            lines.append(f"cross_validate={'agree' if res.cross_agrees else 'DISAGREE'}")
    else:
        cert = is_t_perfect(G)
        lines.append(f"verdict={cert.verdict}")
        if cert.witness is not None:
            ws = " ".join(f"v{v}={x}" for v, x in sorted(cert.witness.items()))
            lines.append(f"witness {ws}")
    return EXIT_OK, "\n".join(lines)


# -- export ------------------------------------------------------------------

def cmd_export(path, fmt):
    G = rsq.load(path)
    if fmt == "dot":
        return EXIT_OK, _to_dot(G)
    if fmt == "svg":
        return EXIT_OK, _to_svg(G)
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def _to_dot(G):
    lines = ["graph G {"]
    for v in sorted(G.rot):
        lines.append(f"  {v};")
    for u, v in G.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)


def _double_cover(G):
    """Orientable double cover; vertices (v, +1) and (v, -1)."""
    rot = {}
    for v, seq in G.rot.items():
        rot[(v, 1)] = [(u, G.sign(v, u)) for u in seq]
        rot[(v, -1)] = [(u, -G.sign(v, u)) for u in reversed(seq)]
    return rot


def _shortest_noncontractible_cycle(G):
    """Shortest cycle with sign product -1, via BFS in the double cover."""
    cover = _double_cover(G)
    best = None
    for v0 in sorted(G.rot):
        start, goal = (v0, 1), (v0, -1)
        parent = {start: None}
        queue = [start]
        qi = 0
        while qi < len(queue) and goal not in parent:
            node = queue[qi]
            qi += 1
            for u, s in cover[node]:
                nxt = (u, node[1] * s)
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        if goal not in parent:
            continue
        walk = []
        node = goal
        while node is not None:
            walk.append(node[0])
            node = parent[node]
        walk = walk[:-1]  # drop the duplicated v0
        if len(set(walk)) == len(walk):
            if best is None or len(walk) < len(best):
                best = walk
    if best is None:
        raise QuadError("no non-contractible cycle found")
    return best


def _tutte_positions(boundary_pos, adjacency, interior, rounds=50):
    """Iterative averaging with exact rationals; decimals only at output."""
    pos = dict(boundary_pos)
    for v in interior:
        pos[v] = (Fraction(0), Fraction(0))
    for _ in range(rounds):
        nxt = {}
        for v in interior:
            xs = [pos[u] for u in adjacency[v]]
            n = len(xs)
            nxt[v] = (sum(p[0] for p in xs) / n, sum(p[1] for p in xs) / n)
        pos.update(nxt)
    return pos


def _circle_point(j, total):
    theta = 2 * math.pi * j / total
    return (Fraction(round(math.cos(theta) * 65536), 65536),
            Fraction(round(math.sin(theta) * 65536), 65536))


def _svg_document(points, edges, labels, dotted_circle):
    def fx(x):
        return f"{float(x) * 180 + 200:.2f}"

    def fy(y):
        return f"{200 - float(y) * 180:.2f}"

    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" '
           'viewBox="0 0 400 400">']
    if dotted_circle:
        out.append('  <circle cx="200" cy="200" r="180" fill="none" '
                   'stroke="black" stroke-dasharray="4 4"/>')
    for (a, b) in edges:
        xa, ya = points[a]
        xb, yb = points[b]
        out.append(f'  <line x1="{fx(xa)}" y1="{fy(ya)}" x2="{fx(xb)}" '
                   f'y2="{fy(yb)}" stroke="black" stroke-width="1"/>')
    for p in sorted(points):
        x, y = points[p]
        out.append(f'  <circle cx="{fx(x)}" cy="{fy(y)}" r="3" fill="black"/>')
        out.append(f'  <text x="{fx(x)}" y="{fy(y - Fraction(1, 20))}" '
                   f'font-size="10" text-anchor="middle">{labels[p]}</text>')
    out.append("</svg>")
    return "\n".join(out)


def _to_svg(G):
    if G.surface == SPHERE:
        outer = G.outer_face_index if G.outer_dart is not None else 0
        boundary = [d[0] for d in G.faces.walks[outer]]
        bpos = {v: _circle_point(j, len(boundary)) for j, v in enumerate(boundary)}
        interior = [v for v in sorted(G.rot) if v not in bpos]
        pos = _tutte_positions(bpos, G.rot, interior)
        edges = G.edges
        labels = {v: str(v) for v in G.rot}
        return _svg_document(pos, edges, labels, dotted_circle=False)

    cycle = _shortest_noncontractible_cycle(G)
    L = len(cycle)
    cover = _double_cover(G)
    # lift of the cycle walked twice: 2L boundary copies, antipodal opposite
    lift = [(cycle[0], 1)]
    for t in range(1, 2 * L):
        v_prev = lift[-1]
        u = cycle[t % L]
        s = G.sign(v_prev[0], u)
        lift.append((u, v_prev[1] * s))
    bpos = {node: _circle_point(j, 2 * L) for j, node in enumerate(lift)}
    # the cut disk: faces of the cover on one side of the lifted cycle
    cover_graph = {node: [(u, node[1] * s) for u, s in cover[node]]
                   for node in cover}
    on_boundary = set(lift)
    interior = []
    seen = set(on_boundary)
    # lifts of interior vertices reachable from the boundary without using
    # the other component: both lifts are reachable, keep one per vertex
    taken = {v: None for v in G.rot if v not in set(cycle)}
    order = []
    stack = list(lift)
    while stack:
        node = stack.pop()
        for nxt in cover_graph[node]:
            if nxt in seen or nxt[0] in set(cycle):
                continue
            if taken[nxt[0]] is None:
                taken[nxt[0]] = nxt
                seen.add(nxt)
                order.append(nxt)
                stack.append(nxt)
    interior = order
    adjacency = {}
    placed = on_boundary | set(interior)
    for node in interior:
        adjacency[node] = [nxt for nxt in cover_graph[node] if nxt in placed]
    pos = _tutte_positions(bpos, adjacency, sorted(interior))
    edges = set()
    for node in placed:
        for nxt in cover_graph[node]:
            if nxt in placed:
                edges.add(tuple(sorted((node, nxt))))
    labels = {node: str(node[0]) for node in placed}
    return _svg_document(pos, sorted(edges), labels, dotted_circle=True)


# -- driver --------------------------------------------------------------------

def _run_one(args):
    cmd, path, opts = args
    try:
        if cmd == "validate":
            return cmd_validate(path)
        if cmd == "reduce":
            return cmd_reduce(path, emit_face_contractions=opts["emit"])
        if cmd == "check-tperfect":
            return cmd_check_tperfect(path, cross_validate=opts["cross"])
        if cmd == "export":
            return cmd_export(path, opts["format"])
        raise QuadError(f"unknown command {cmd}")
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}"
    except TooLarge as exc:
        return EXIT_CAP, f"cap exceeded: {exc}"
    except QuadError as exc:
        return EXIT_INVALID, f"error: {exc}"


def _run_files(cmd, files, opts, jobs):
    tasks = [(cmd, path, opts) for path in files]
    if jobs > 1 and len(tasks) > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_run_one, tasks)
    else:
        results = [_run_one(t) for t in tasks]
    code = EXIT_OK
    chunks = []
    for path, (c, text) in zip(files, results):
        if len(files) > 1:
            chunks.append(f"== {path} ==")
        chunks.append(text)
        code = max(code, c)
    print("\n".join(chunks))
    return code


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="quadreduce",
        description="surgery and reduction on quadrangulations of the sphere "
                    "and projective plane")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .rsq quadrangulation")
    p.add_argument("files", nargs="+")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("generate", help="grow a seeded random quadrangulation")
    p.add_argument("--surface", required=True,
                   choices=["sphere", "projective_plane"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--nonbipartite", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("reduce", help="reduce to the 4-cycle or an odd wheel")
    p.add_argument("files", nargs="+")
    p.add_argument("--emit-face-contractions", action="store_true")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("check-tperfect", help="exact t-perfection verdict")
    p.add_argument("files", nargs="+")
    p.add_argument("--cross-validate", action="store_true")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("export", help="render as dot or svg")
    p.add_argument("files", nargs="+")
    p.add_argument("--format", required=True, choices=["dot", "svg"])
    p.add_argument("--jobs", type=int, default=1)

    args = parser.parse_args(argv)
    if args.command == "generate":
        surface = SPHERE if args.surface == "sphere" else PROJECTIVE_PLANE
        try:
            code, text = cmd_generate(surface, args.n, args.seed, args.nonbipartite)
        except QuadError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return code
    opts = {"emit": getattr(args, "emit_face_contractions", False),
            "cross": getattr(args, "cross_validate", False),
            "format": getattr(args, "format", None)}
    return _run_files(args.command, args.files, opts, args.jobs)


if __name__ == "__main__":
    sys.exit(main())
