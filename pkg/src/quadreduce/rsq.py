"""Reader/writer for the .rsq text format.

One graph per file::

    surface sphere|projective_plane
    outer <face-index>          # optional, sphere only
    <v>: <u1>/<s1> <u2>/<s2> ...

Each vertex line lists its neighbours in rotation order with signs ``+`` or
``-``; signs appear on both endpoints and must agree.  Blank lines and
``#`` comments are ignored.  Canonical output sorts vertices ascending and
starts each rotation at the smallest neighbour, so write/read round-trips
are byte-identical.
"""

from __future__ import annotations

from .embedding import (PROJECTIVE_PLANE, SPHERE, SignedRotationSystem,
                        edge_key)
from .errors import MalformedRotation, ParseError

_SURFACES = {"sphere": SPHERE, "projective_plane": PROJECTIVE_PLANE}


def parse_rsq(text):
    surface = None
    outer_index = None
    rotations = {}
    signs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("surface"):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in _SURFACES:
                raise ParseError(f"bad surface line {line!r}", lineno)
            if surface is not None:
                raise ParseError("duplicate surface line", lineno)
            surface = _SURFACES[parts[1]]
            continue
        if line.startswith("outer"):
            parts = line.split()
            try:
                outer_index = int(parts[1])
            except (IndexError, ValueError):
                raise ParseError(f"bad outer line {line!r}", lineno)
            continue
        if ":" not in line:
            raise ParseError(f"expected '<v>: ...' line, got {line!r}", lineno)
        head, _, rest = line.partition(":")
        try:
            v = int(head.strip())
        except ValueError:
            raise ParseError(f"bad vertex id {head.strip()!r}", lineno)
        if v in rotations:
            raise ParseError(f"duplicate rotation for vertex {v}", lineno)
        seq = []
        for tok in rest.split():
            if "/" not in tok:
                raise ParseError(f"bad neighbour token {tok!r}", lineno)
            nb, _, sg = tok.partition("/")
            try:
                u = int(nb)
            except ValueError:
                raise ParseError(f"bad neighbour id {nb!r}", lineno)
            if sg == "+":
                s = 1
            elif sg == "-":
                s = -1
            else:
                raise ParseError(f"bad sign {sg!r} in token {tok!r}", lineno)
            seq.append(u)
            e = edge_key(u, v)
            if e in signs and signs[e] != s:
                raise ParseError(
                    f"sign of edge {e[0]},{e[1]} disagrees between endpoints", lineno)
            signs[e] = s
        rotations[v] = seq
    if surface is None:
        raise ParseError("missing surface line")
    if not rotations:
        raise ParseError("no vertices")
    try:
        G = SignedRotationSystem(surface, rotations, signs)
    except MalformedRotation as exc:
        raise ParseError(str(exc))
    if outer_index is not None:
        if surface != SPHERE:
            raise ParseError("outer line only allowed on the sphere")
        if not 0 <= outer_index < len(G.faces):
            raise ParseError(f"outer face index {outer_index} out of range")
        G = G.with_outer(min(G.faces.walks[outer_index]))
    return G


def format_rsq(G):
    name = "sphere" if G.surface == SPHERE else "projective_plane"
    lines = [f"surface {name}"]
    if G.outer_dart is not None:
        lines.append(f"outer {G.outer_face_index}")
    for v in sorted(G.rot):
        toks = []
        for u in G.rot[v]:
            sg = "+" if G.sign(u, v) == 1 else "-"
            toks.append(f"{u}/{sg}")
        lines.append(f"{v}: " + " ".join(toks))
    return "\n".join(lines) + "\n"


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rsq(fh.read())


def dump(G, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_rsq(G))
