import itertools

import pytest

from quadreduce import (PROJECTIVE_PLANE, SPHERE, CycleHandle, c4,
                        cycle_sign, disk_interior, gen_quadrangulation,
                        is_bipartite, odd_wheel_embedding, trace_faces,
                        validate_quadrangulation)
from quadreduce.embedding import SignedRotationSystem, edge_key
from quadreduce.errors import (MalformedRotation, NotACycle, NotContractible)

from conftest import system_from_rotations


def test_c4_two_faces_of_length_four():
    G = c4()
    faces = trace_faces(G)
    assert sorted(faces.lengths()) == [4, 4]
    assert validate_quadrangulation(G).ok
    assert G.n_edges == 2 * G.n_vertices - 4


def test_cube_six_quad_faces(cube):
    faces = trace_faces(cube)
    assert sorted(faces.lengths()) == [4] * 6
    report = validate_quadrangulation(cube)
    assert report.ok and report.bipartite


def test_w3_canonical_embedding_three_faces():
    W3 = odd_wheel_embedding(1)
    assert W3.n_vertices == 4 and W3.n_edges == 6
    assert sorted(trace_faces(W3).lengths()) == [4, 4, 4]
    report = validate_quadrangulation(W3)
    assert report.ok and not report.bipartite


def test_face_walk_lengths_sum_to_twice_edges():
    for k in (1, 2, 3):
        W = odd_wheel_embedding(k)
        assert sum(trace_faces(W).lengths()) == 2 * W.n_edges


def test_c6_is_not_a_quadrangulation():
    rot = {i: [(i - 1) % 6, (i + 1) % 6] for i in range(6)}
    G = system_from_rotations(SPHERE, rot)
    report = validate_quadrangulation(G)
    assert not report.ok
    assert any("length 6" in v for v in report.violations)


def test_count_identity_violation_is_reported():
    # C4 labelled as projective plane: wrong Euler count and edge count
    rot = {0: [1, 3], 1: [0, 2], 2: [1, 3], 3: [0, 2]}
    G = system_from_rotations(PROJECTIVE_PLANE, rot)
    report = validate_quadrangulation(G)
    assert not report.ok


def test_construction_rejects_malformed():
    with pytest.raises(MalformedRotation):
        system_from_rotations(SPHERE, {0: [1], 1: []})  # asymmetric
    with pytest.raises(MalformedRotation):
        system_from_rotations(SPHERE, {0: [0]})  # loop
    with pytest.raises(MalformedRotation):
        system_from_rotations(SPHERE, {0: [1], 1: [0], 2: [3], 3: [2]})  # disconnected
    with pytest.raises(MalformedRotation):
        # negative sign on the sphere
        SignedRotationSystem(SPHERE, {0: [1], 1: [0]}, {(0, 1): -1})


def test_is_bipartite_with_witness():
    G = c4()
    ok, wit = is_bipartite(G)
    assert ok and wit is None
    W5 = odd_wheel_embedding(2)
    ok, wit = is_bipartite(W5)
    assert not ok
    assert len(wit.vertices) % 2 == 1
    # the witness is a genuine odd cycle
    assert cycle_sign(W5, wit) in (1, -1)


def test_cycle_sign_sphere_always_positive():
    G = c4()
    assert cycle_sign(G, (0, 1, 2, 3)) == 1
    with pytest.raises(NotACycle):
        cycle_sign(G, (0, 1, 2))  # 0-2 missing
    with pytest.raises(NotACycle):
        cycle_sign(G, (0, 1, 0, 2))


def test_cycle_sign_projective_parity():
    W3 = odd_wheel_embedding(1)
    # triangles are odd, hence non-contractible
    assert cycle_sign(W3, (0, 1, 2)) == -1
    W5 = odd_wheel_embedding(2)
    face = W5.faces.walk_vertices(0)
    assert cycle_sign(W5, face) == 1


def _all_cycles(G):
    """Every cycle of a small graph, via ordered DFS from its least vertex."""
    adj = {v: set(G.rot[v]) for v in G.rot}
    cycles = []
    verts = sorted(adj)
    for a in verts:
        stack = [(a, [a])]
        while stack:
            v, path = stack.pop()
            for u in sorted(adj[v]):
                if u == a and len(path) >= 3:
                    if path[1] < path[-1]:  # each cycle once per direction
                        cycles.append(tuple(path))
                elif u not in path and u > a:
                    stack.append((u, path + [u]))
    return cycles


def test_contractible_iff_even_on_small_wheel():
    W5 = odd_wheel_embedding(2)
    for cyc in _all_cycles(W5):
        assert (cycle_sign(W5, cyc) == 1) == (len(cyc) % 2 == 0), cyc


def test_disk_interior_facial_cycle_is_empty():
    W5 = odd_wheel_embedding(2)
    face = W5.faces.walk_vertices(0)
    inside, faces = disk_interior(W5, face)
    assert inside == frozenset()
    assert len(faces) == 1


def test_disk_interior_cube_both_choices(cube):
    from conftest import outer_dart_of_face
    G = cube.with_outer(outer_dart_of_face(cube, {4, 5, 6, 7}))
    inside, _ = disk_interior(G, (0, 1, 2, 3))
    assert inside == frozenset()
    inside, _ = disk_interior(G, (4, 5, 6, 7))
    assert inside == frozenset({0, 1, 2, 3})


def test_disk_interior_requires_contractible():
    W3 = odd_wheel_embedding(1)
    with pytest.raises(NotContractible):
        disk_interior(W3, (0, 1, 2))


def test_interior_and_exterior_partition_cube(cube):
    G = cube.with_outer((0, 1))
    for i in range(6):
        cyc = G.faces.walk_vertices(i)
        inside, _ = disk_interior(G, cyc)
        assert inside.isdisjoint(cyc)
        # complement check: inside + boundary + outside = all vertices
        outside = set(G.rot) - set(cyc) - set(inside)
        assert len(inside) + len(cyc) + len(outside) == G.n_vertices


def test_generated_sphere_quadrangulations_are_bipartite():
    for seed in range(10):
        G = gen_quadrangulation(SPHERE, 30, seed)
        report = validate_quadrangulation(G)
        assert report.ok and report.bipartite


def test_euler_identities_on_generated_instances():
    for seed in range(5):
        G = gen_quadrangulation(SPHERE, 26, seed)
        assert G.n_edges == 2 * G.n_vertices - 4
        H = gen_quadrangulation(PROJECTIVE_PLANE, 26, seed, require_nonbipartite=True)
        assert H.n_edges == 2 * H.n_vertices - 2
