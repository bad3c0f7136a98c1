import pytest

from quadreduce import SPHERE, SignedRotationSystem
from quadreduce.embedding import edge_key


def system_from_rotations(surface, rotations, signs=None, outer=None):
    if signs is None:
        signs = {}
        for v, seq in rotations.items():
            for u in seq:
                signs[edge_key(u, v)] = 1
    G = SignedRotationSystem(surface, rotations, signs)
    if outer is not None:
        G = G.with_outer(outer)
    return G


def outer_dart_of_face(G, vertex_set):
    for walk in G.faces.walks:
        if {d[0] for d in walk} == set(vertex_set):
            return min(walk)
    raise AssertionError(f"no face on {vertex_set}")


@pytest.fixture
def cube():
    rot = {0: (1, 4, 3), 1: (2, 5, 0), 2: (3, 6, 1), 3: (2, 0, 7),
           4: (5, 7, 0), 5: (6, 4, 1), 6: (2, 7, 5), 7: (6, 3, 4)}
    return system_from_rotations(SPHERE, rot)


@pytest.fixture
def cube_outer_far(cube):
    # outer face on {4,5,6,7}: vertex 0 is interior
    return cube.with_outer(outer_dart_of_face(cube, {4, 5, 6, 7}))
