from fractions import Fraction

import pytest

from quadreduce import (PROJECTIVE_PLANE, SPHERE, c4, gen_quadrangulation,
                        odd_wheel_embedding)
from quadreduce.errors import InvalidInput, TooLarge
from quadreduce.generate import bipartite_projective_seed
from quadreduce.reduce import reduce_sphere
from quadreduce.surgery import DELETE_DEGREE2, T_CONTRACT, make_step
from quadreduce.tperfect import (InequalitySystem, Row, brute_force_vertices,
                                 build_tstab, check_quadrangulation,
                                 enumerate_induced_odd_cycles,
                                 enumerate_stable_sets, is_polytope_vertex,
                                 is_t_perfect, polytope_vertices,
                                 spot_check_preservation)

from conftest import system_from_rotations


def _cycle_graph(n):
    rot = {i: [(i - 1) % n, (i + 1) % n] for i in range(n)}
    return system_from_rotations(SPHERE, rot)


def _third(G):
    return {v: Fraction(1, 3) for v in G.rot}


# -- enumeration ------------------------------------------------------------------

def test_stable_sets_c4():
    assert len(enumerate_stable_sets(c4())) == 7


def test_stable_sets_k4():
    assert len(enumerate_stable_sets(odd_wheel_embedding(1))) == 5


def test_stable_sets_w5_brute_force_count():
    # empty set, 6 singletons, and the 5 non-adjacent rim pairs
    W5 = odd_wheel_embedding(2)
    sets = enumerate_stable_sets(W5)
    assert len(sets) == 12
    by_size = sorted(len(s) for s in sets)
    assert by_size == [0] + [1] * 6 + [2] * 5


def test_stable_sets_cap():
    with pytest.raises(TooLarge):
        enumerate_stable_sets(gen_quadrangulation(SPHERE, 20, 0), cap=16)


def test_induced_odd_cycles():
    assert enumerate_induced_odd_cycles(c4()) == []
    k4 = enumerate_induced_odd_cycles(odd_wheel_embedding(1))
    assert len(k4) == 4 and all(len(c) == 3 for c in k4)
    w5 = enumerate_induced_odd_cycles(odd_wheel_embedding(2))
    assert sorted(len(c) for c in w5) == [3, 3, 3, 3, 3, 5]


def test_build_tstab_row_counts():
    S = build_tstab(c4())
    assert len(S.rows) == 4 + 4 + 0
    S = build_tstab(odd_wheel_embedding(1))
    assert len(S.rows) == 4 + 6 + 4
    S = build_tstab(odd_wheel_embedding(2))
    assert len(S.rows) == 6 + 10 + 6


def test_boundedness_guard_for_isolated_vertices():
    # a single vertex has no edges; the guard keeps the polytope bounded
    S = InequalitySystem((0,), (Row((-1,), 0, "non_negativity"),
                                Row((1,), 1, "upper_bound")))
    verts = polytope_vertices(S)
    assert [tuple(v.values()) for v in verts] == [(0,), (1,)]


# -- polytope vertices -----------------------------------------------------------

def _as_sorted_tuples(vectors):
    return sorted(tuple(v[u] for u in sorted(v)) for v in vectors)


def test_c4_vertices_are_the_stable_characteristic_vectors():
    G = c4()
    S = build_tstab(G)
    verts = polytope_vertices(S)
    expected = set()
    for st in enumerate_stable_sets(G):
        expected.add(tuple(Fraction(1 if v in st else 0) for v in sorted(G.rot)))
    assert set(_as_sorted_tuples(verts)) == expected


def test_dd_matches_brute_force_small():
    graphs = [c4(), _cycle_graph(5), odd_wheel_embedding(1),
              odd_wheel_embedding(2)]
    for G in graphs:
        S = build_tstab(G)
        assert _as_sorted_tuples(polytope_vertices(S)) == \
            _as_sorted_tuples(brute_force_vertices(S))


def test_k4_contains_one_third_vector_as_vertex():
    W3 = odd_wheel_embedding(1)
    S = build_tstab(W3)
    verts = _as_sorted_tuples(polytope_vertices(S))
    assert tuple([Fraction(1, 3)] * 4) in verts
    assert is_polytope_vertex(S, _third(W3))


def test_w5_one_third_feasible_but_not_vertex():
    W5 = odd_wheel_embedding(2)
    S = build_tstab(W5)
    x = _third(W5)
    assert S.feasible(x)
    # only the five triangle rows are tight: rank 5 < dim 6
    assert not is_polytope_vertex(S, x)


# -- is_t_perfect -----------------------------------------------------------------

def test_bipartite_graphs_are_t_perfect(cube):
    for G in (c4(), cube, _cycle_graph(6)):
        assert is_t_perfect(G).t_perfect


def test_c5_is_t_perfect():
    assert is_t_perfect(_cycle_graph(5)).t_perfect


def test_odd_wheels_not_t_perfect_with_feasible_third_vector():
    for k in (1, 2, 3):
        W = odd_wheel_embedding(k)
        cert = is_t_perfect(W)
        assert not cert.t_perfect
        x = _third(W)
        S = build_tstab(W)
        assert S.feasible(x)
        assert not all(f.denominator == 1 for f in x.values())
        # the returned witness is a genuine fractional vertex
        assert is_polytope_vertex(S, cert.witness)
        assert any(f.denominator > 1 for f in cert.witness.values())


def test_k4_witness_is_the_one_third_vector():
    cert = is_t_perfect(odd_wheel_embedding(1))
    assert cert.witness == _third(odd_wheel_embedding(1))


def test_ssp_inside_tstab():
    for G in (c4(), odd_wheel_embedding(2), bipartite_projective_seed()):
        S = build_tstab(G)
        for st in enumerate_stable_sets(G):
            vec = {v: Fraction(1 if v in st else 0) for v in G.rot}
            assert S.feasible(vec)


# -- check_quadrangulation ----------------------------------------------------------

def test_check_quadrangulation_wheel():
    res = check_quadrangulation(odd_wheel_embedding(2), cross_validate=True)
    assert res.verdict == "not_t_perfect"
    assert res.trace.steps == ()
    assert res.wheel_witness == _third(odd_wheel_embedding(2))
    assert res.cross_agrees


def test_check_quadrangulation_bipartite():
    G = bipartite_projective_seed()
    res = check_quadrangulation(G, cross_validate=True)
    assert res.verdict == "t_perfect"
    assert res.trace is None
    assert res.cross_agrees


def test_check_quadrangulation_generated():
    G = gen_quadrangulation(PROJECTIVE_PLANE, 12, 4, require_nonbipartite=True)
    res = check_quadrangulation(G, cross_validate=True)
    assert res.verdict == "not_t_perfect"
    assert res.cross_agrees
    assert res.trace.terminal_kind == "odd_wheel"


def test_check_quadrangulation_rejects_sphere():
    with pytest.raises(InvalidInput):
        check_quadrangulation(c4())


# -- preservation spot checks ---------------------------------------------------------

def test_spot_check_deletion():
    from quadreduce import add_degree2, delete_degree2
    G = add_degree2(c4(), 0, (0, 2))
    step = make_step(DELETE_DEGREE2, 4, G, delete_degree2(G, 4))
    assert spot_check_preservation(G, step)


def test_spot_check_contraction(cube_outer_far):
    from quadreduce import t_contract
    G = cube_outer_far
    step = make_step(T_CONTRACT, 0, G, t_contract(G, 0, enforce_nice=True),
                     {"enforce_nice": True})
    assert spot_check_preservation(G, step)


def test_spot_check_along_sphere_trace():
    G = gen_quadrangulation(SPHERE, 10, 2)
    tr = reduce_sphere(G)
    graphs = tr.replay(validate=False)
    for H, step in zip(graphs, tr.steps):
        assert spot_check_preservation(H, step)
