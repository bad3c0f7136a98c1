import pytest

from quadreduce import (PROJECTIVE_PLANE, SPHERE, CycleHandle, add_degree2,
                        c4, canonical_hash, find_reducible_vertex,
                        gen_quadrangulation, is_bipartite, make_nice,
                        odd_wheel_embedding, recognize_odd_wheel,
                        reduce_projective, reduce_sphere,
                        validate_quadrangulation)
from quadreduce.errors import BipartiteInput, InvalidInput, NoSuchVertex
from quadreduce.quadcycles import is_nice


# -- find_reducible_vertex ------------------------------------------------------

def test_find_reducible_vertex_single_interior():
    base = c4()
    inner = 1 - base.outer_face_index  # add away from the outer region
    G = add_degree2(base, inner, (0, 2))
    # the outer 4-cycle of the plane drawing has the new vertex inside
    outer_cycle = G.faces.walk_vertices(G.outer_face_index)
    v = find_reducible_vertex(G, outer_cycle)
    assert v == 4


def test_find_reducible_vertex_cube(cube):
    from conftest import outer_dart_of_face
    G = cube.with_outer(outer_dart_of_face(cube, {4, 5, 6, 7}))
    v = find_reducible_vertex(G, (4, 5, 6, 7))
    assert v == 0  # all interior vertices have degree 3; smallest id wins


def test_find_reducible_vertex_none():
    G = c4()
    with pytest.raises(NoSuchVertex):
        find_reducible_vertex(G, (0, 1, 2, 3))


# -- reduce_sphere ----------------------------------------------------------------

def test_reduce_c4_empty_trace():
    tr = reduce_sphere(c4())
    assert tr.steps == ()
    assert tr.terminal_kind == "four_cycle"
    assert tr.final.n_vertices == 4


def test_reduce_cube(cube):
    tr = reduce_sphere(cube.with_outer((0, 1)))
    assert len(tr.steps) >= 1
    assert tr.final.n_vertices == 4 and tr.final.n_edges == 4
    graphs = tr.replay()
    assert len(graphs) == len(tr.steps) + 1


def test_reduce_sphere_requires_outer(cube):
    with pytest.raises(InvalidInput):
        reduce_sphere(cube)


def test_reduce_sphere_strategies_agree():
    for seed in range(6):
        G = gen_quadrangulation(SPHERE, 18, seed)
        fast = reduce_sphere(G, strategy="fast")
        slow = reduce_sphere(G, strategy="innermost")
        for tr in (fast, slow):
            assert tr.final.n_vertices == 4
            tr.replay()
        # pivots of t-contractions satisfy the stated contract
        for tr in (fast, slow):
            for step, H in zip(tr.steps, tr.replay(validate=False)):
                if step.kind == "t_contract":
                    assert len(H.rot[step.pivot]) == 3


def test_reduce_sphere_property_batch():
    for seed in range(10):
        G = gen_quadrangulation(SPHERE, 40, seed)
        tr = reduce_sphere(G)
        assert tr.final.n_vertices == 4
        for H in tr.replay():
            assert validate_quadrangulation(H).ok


# -- make_nice --------------------------------------------------------------------

def test_wheels_are_already_nice():
    for k in (1, 2, 3):
        W = odd_wheel_embedding(k)
        tr = make_nice(W)
        assert tr.steps == ()
        assert tr.final == W


def test_make_nice_removes_added_vertex():
    W3 = odd_wheel_embedding(1)
    G = add_degree2(W3, 0, tuple(W3.faces.walk_vertices(0)[i] for i in (0, 2)))
    tr = make_nice(G)
    assert len(tr.steps) == 1
    assert tr.steps[0].kind == "delete_degree2"
    assert canonical_hash(tr.final) == canonical_hash(W3)


def test_make_nice_property_batch():
    for seed in range(8):
        G = gen_quadrangulation(PROJECTIVE_PLANE, 30, seed,
                                require_nonbipartite=True)
        tr = make_nice(G)
        assert is_nice(tr.final)
        # nice non-bipartite quadrangulations have minimum degree 3
        assert min(len(tr.final.rot[v]) for v in tr.final.rot) >= 3
        for H in tr.replay():
            assert validate_quadrangulation(H).ok
            assert not is_bipartite(H)[0]


def test_make_nice_rejects_bipartite():
    G = gen_quadrangulation(PROJECTIVE_PLANE, 10, 0)
    with pytest.raises(BipartiteInput):
        make_nice(G)


# -- reduce_projective ---------------------------------------------------------------

def test_wheels_are_fixed_points():
    for k in (1, 2, 3):
        W = odd_wheel_embedding(k)
        tr = reduce_projective(W)
        assert tr.steps == ()
        assert tr.terminal_kind == "odd_wheel"
        assert tr.wheel_k == 2 * k + 1
        assert tr.canonical_wheel


def test_reduce_projective_w3_plus_one():
    W3 = odd_wheel_embedding(1)
    w = W3.faces.walk_vertices(0)
    G = add_degree2(W3, 0, (w[0], w[2]))
    tr = reduce_projective(G)
    assert len(tr.steps) == 1
    assert tr.wheel_k == 3
    assert canonical_hash(tr.final) == canonical_hash(W3)


def test_reduce_projective_property_batch():
    for seed in range(10):
        G = gen_quadrangulation(PROJECTIVE_PLANE, 35, seed,
                                require_nonbipartite=True)
        tr = reduce_projective(G)
        assert tr.terminal_kind == "odd_wheel"
        assert tr.wheel_k % 2 == 1 and tr.wheel_k >= 3
        assert tr.canonical_wheel
        assert recognize_odd_wheel(tr.final) == tr.wheel_k
        for H in tr.replay():
            assert validate_quadrangulation(H).ok
            assert not is_bipartite(H)[0]


def test_reduce_projective_rejects_bipartite():
    G = gen_quadrangulation(PROJECTIVE_PLANE, 9, 1)
    with pytest.raises(BipartiteInput):
        reduce_projective(G)


# -- recognize_odd_wheel ------------------------------------------------------------

def test_recognize_wheels():
    assert recognize_odd_wheel(odd_wheel_embedding(1)) == 3
    assert recognize_odd_wheel(odd_wheel_embedding(2)) == 5


def test_recognize_rejects_cube(cube):
    assert recognize_odd_wheel(cube) is None


def test_recognize_rejects_even_wheel():
    # abstract W4 drawn on the sphere (planar wheel embedding)
    from conftest import system_from_rotations
    rot = {0: [1, 2, 3, 4], 1: [2, 0, 4], 2: [3, 0, 1], 3: [4, 0, 2],
           4: [1, 0, 3]}
    W4 = system_from_rotations(SPHERE, rot)
    assert recognize_odd_wheel(W4) is None


def test_trace_hash_chain_detects_tampering(cube):
    import dataclasses
    tr = reduce_sphere(cube.with_outer((0, 1)))
    bad = dataclasses.replace(tr.steps[0], after_hash="0" * 16)
    broken = dataclasses.replace(tr, steps=(bad,) + tr.steps[1:])
    from quadreduce.errors import QuadError
    with pytest.raises(QuadError):
        broken.replay()
