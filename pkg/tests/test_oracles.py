import itertools

import pytest
from hypothesis import given, settings, strategies as st

from diperfect.core import Digraph, Graph, TT, B7, DC5, SymC5, underlying_graph
from diperfect.errors import NotStable, TooLarge
from diperfect.oracles import (
    PathPartition,
    alpha_of,
    chordless_cycles,
    exists_s_path_partition,
    hamilton_search,
    is_perfect,
    is_stable,
    max_bipartite_matching,
    max_stable_sets,
    min_clique_partition,
    min_path_partition,
    stable_family_of_graph,
    validate_partition,
)


def graphs(max_n=8):
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


def digraphs(max_n=6):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        arcs = []
        for u in range(n):
            for v in range(u + 1, n):
                state = draw(st.integers(0, 3))
                if state & 1:
                    arcs.append((u, v))
                if state & 2:
                    arcs.append((v, u))
        return Digraph(n, arcs)

    return build()


def brute_alpha(G: Graph) -> int:
    best = 0
    for r in range(G.n, 0, -1):
        for sub in itertools.combinations(range(G.n), r):
            if all(not G.adjacent(a, b) for a, b in itertools.combinations(sub, 2)):
                return r
    return best


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_alpha_matches_brute_force(G):
    fam = stable_family_of_graph(G)
    assert fam.alpha == brute_alpha(G)
    assert all(len(S) == fam.alpha for S in fam.sets)
    assert all(is_stable(G, S) for S in fam.sets)
    # every maximum stable set is listed
    listed = set(fam.sets)
    for sub in itertools.combinations(range(G.n), fam.alpha):
        if all(not G.adjacent(a, b) for a, b in itertools.combinations(sub, 2)):
            assert sub in listed


def test_stable_family_trivial_cases():
    assert stable_family_of_graph(Graph(0, [])).alpha == 0
    fam = stable_family_of_graph(Graph(1, []))
    assert fam.alpha == 1 and fam.sets == ((0,),)


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=6))
def test_gallai_milgram_bound(D):
    pp = min_path_partition(D)
    assert pp.size <= alpha_of(underlying_graph(D))
    assert validate_partition(D, pp)


def test_min_path_partition_known_values():
    assert min_path_partition(DC5).size == 1
    assert min_path_partition(Digraph(3, [])).size == 3
    assert min_path_partition(TT).size == 1


def brute_exists(D: Digraph, S, mode):
    """Independent slow decision by enumerating all ordered path covers."""
    S = frozenset(S)

    def rec(remaining):
        if not remaining:
            return True
        m = min(remaining)
        for r in range(1, len(remaining) + 1):
            for perm in itertools.permutations(sorted(remaining), r):
                if m not in perm:
                    continue
                if not all(D.has_arc(perm[i], perm[i + 1]) for i in range(r - 1)):
                    continue
                hit = [i for i, v in enumerate(perm) if v in S]
                if len(hit) != 1:
                    continue
                if mode == "be" and hit[0] not in (0, r - 1):
                    continue
                if rec(remaining - set(perm)):
                    return True
        return False

    return rec(frozenset(range(D.n)))


@settings(max_examples=30, deadline=None)
@given(digraphs(max_n=5), st.sampled_from(["alpha", "be"]))
def test_exists_s_path_partition_matches_brute(D, mode):
    for S in max_stable_sets(D).sets[:2]:
        pp = exists_s_path_partition(D, S, mode)
        if pp is None:
            assert not brute_exists(D, S, mode)
        else:
            assert validate_partition(D, pp)
            assert brute_exists(D, S, mode)


def test_exists_rejects_non_stable_set():
    with pytest.raises(NotStable):
        exists_s_path_partition(TT, (0, 1), "alpha")


def brute_clique_cover(G: Graph) -> int:
    comp = G.complement()
    n = G.n
    for k in range(1, n + 1):
        for assign in itertools.product(range(k), repeat=n):
            if all(
                assign[u] != assign[v] or not comp.adjacent(u, v)
                for u in range(n)
                for v in range(u + 1, n)
            ):
                return k
    return n


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=6))
def test_min_clique_partition_is_minimum(G):
    cliques = min_clique_partition(G)
    covered = sorted(v for C in cliques for v in C)
    assert covered == list(range(G.n))
    for C in cliques:
        assert all(G.adjacent(a, b) for a, b in itertools.combinations(C, 2))
    assert len(cliques) == brute_clique_cover(G)


def test_chordless_cycles():
    C5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert chordless_cycles(C5) == [(0, 1, 2, 3, 4)]
    chorded = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    cycles = chordless_cycles(chorded)
    assert (0, 1, 2) in cycles and (0, 2, 3) in cycles
    assert all(len(c) == 3 for c in cycles)
    assert chordless_cycles(underlying_graph(B7)) == [(0, 1, 2, 3, 4, 5, 6)]


def test_is_perfect():
    C5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    ok, witness = is_perfect(C5)
    assert not ok and witness[0] == "odd_hole"
    C7bar = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)]).complement()
    ok, witness = is_perfect(C7bar)
    assert not ok and witness[0] == "odd_antihole"
    ok, witness = is_perfect(underlying_graph(TT))
    assert ok and witness is None


def test_hamilton_search():
    assert hamilton_search(DC5) == (0, 1, 2, 3, 4)
    assert hamilton_search(DC5, ("start", 2)) == (2, 3, 4, 0, 1)
    assert hamilton_search(DC5, ("end", 2)) == (3, 4, 0, 1, 2)
    assert hamilton_search(DC5, ("ends", {1, 2})) == (2, 3, 4, 0, 1)
    assert hamilton_search(DC5, ("ends", {1, 3})) is None
    assert hamilton_search(DC5, ("cycle",)) == (0, 1, 2, 3, 4)
    assert hamilton_search(TT, ("cycle",)) is None


def test_max_bipartite_matching():
    m = max_bipartite_matching([0, 1, 2], [10, 11], {0: [10], 1: [10, 11], 2: [11]})
    assert m.size == 2
    m = max_bipartite_matching([0, 1], [5, 6], {0: [5, 6], 1: [5, 6]})
    assert m.size == 2


def test_size_caps():
    with pytest.raises(TooLarge):
        min_path_partition(Digraph(13, []))
    with pytest.raises(TooLarge):
        hamilton_search(Digraph(13, []))
