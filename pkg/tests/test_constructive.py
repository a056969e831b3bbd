import itertools
import random

import pytest

from diperfect.core import (
    Digraph,
    TT,
    B7,
    A9,
    E4,
    DC5,
    SymC5,
    UNIV5,
    are_isomorphic,
    induced,
    is_path_of,
    is_strong,
    underlying_graph,
)
from diperfect.errors import (
    ExceptionDigraph,
    NotInClassB,
    NotInClassD,
    NotPerfect,
    NotSemicomplete,
    NotStrong,
    NotUniversal,
    PreconditionViolated,
    SharedEndvertex,
    SidesViolated,
    TooManyLonelyArcs,
    TransitiveTrianglePresent,
)
from diperfect.oracles import (
    PathPartition,
    hamilton_search,
    max_stable_sets,
    validate_partition,
)
from diperfect.forbidden import (
    find_induced_transitive_triangle,
    is_in_semicomplete,
    is_series_parallel,
    lonely_arcs,
)
from diperfect import constructive as C


def all_semicomplete(n):
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product(range(3), repeat=len(pairs)):
        arcs = []
        for (u, v), c in zip(pairs, choice):
            if c == 0:
                arcs.append((u, v))
            elif c == 1:
                arcs.append((v, u))
            else:
                arcs += [(u, v), (v, u)]
        yield Digraph(n, arcs)


def random_digraph(rng, n, p_arc=0.3, p_digon=0.2):
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            r = rng.random()
            if r < p_digon:
                arcs += [(u, v), (v, u)]
            elif r < p_digon + p_arc:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, arcs)


# -- Hamilton paths ---------------------------------------------------------


def test_redei_on_random_tournaments():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(2, 9)
        arcs = [
            (u, v) if rng.random() < 0.5 else (v, u)
            for u in range(n)
            for v in range(u + 1, n)
        ]
        D = Digraph(n, arcs)
        P = C.redei_hamilton_path(D)
        assert is_path_of(D, P) and len(P) == n


def test_redei_rejects_non_semicomplete():
    with pytest.raises(NotSemicomplete):
        C.redei_hamilton_path(DC5)


def test_st_hamilton_path_exception_digraph():
    with pytest.raises(ExceptionDigraph):
        C.st_hamilton_path(E4, 0, 2)
    with pytest.raises(ExceptionDigraph):
        C.st_hamilton_path(E4, 3, 1)
    P = C.st_hamilton_path(E4, 1, 0)
    assert is_path_of(E4, P) and {P[0], P[-1]} == {0, 1} and len(P) == 4


def test_st_hamilton_path_gates():
    with pytest.raises(PreconditionViolated):
        C.st_hamilton_path(E4, 1, 1)
    with pytest.raises(NotSemicomplete):
        C.st_hamilton_path(DC5, 0, 1)
    with pytest.raises(TransitiveTrianglePresent):
        C.st_hamilton_path(TT, 0, 1)


def test_st_hamilton_path_exhaustive_small():
    for n in range(2, 5):
        for D in all_semicomplete(n):
            if not is_strong(D):
                continue
            if find_induced_transitive_triangle(D) is not None:
                continue
            for s in range(n):
                for t in range(s + 1, n):
                    oracle = hamilton_search(D, ("ends", {s, t}))
                    try:
                        P = C.st_hamilton_path(D, s, t)
                    except ExceptionDigraph:
                        assert oracle is None and are_isomorphic(D, E4)
                        continue
                    assert oracle is not None
                    assert is_path_of(D, P) and len(P) == n
                    assert {P[0], P[-1]} == {s, t}


def test_st_hamilton_path_non_strong():
    D = Digraph(
        5,
        [(0, 1), (1, 0), (2, 3), (3, 2), (2, 4), (4, 2), (3, 4), (4, 3)]
        + [(u, v) for u in (0, 1) for v in (2, 3, 4)],
    )
    P = C.st_hamilton_path(D, 0, 4)
    assert is_path_of(D, P) and len(P) == 5
    with pytest.raises(SidesViolated):
        C.st_hamilton_path(D, 0, 1)


# -- perfect hosts and helpers ----------------------------------------------


def test_partition_perfect():
    S = max_stable_sets(TT).sets[0]
    pp, trace = C.partition_perfect(TT, S, "alpha")
    assert validate_partition(TT, pp)
    assert any(step[0] == "minimum_clique_partition" for step in trace.steps)
    D = Digraph(3, [(0, 1), (1, 0)])
    pp, _ = C.partition_perfect(D, (0, 2), "be")
    assert validate_partition(D, pp)
    with pytest.raises(NotPerfect):
        C.partition_perfect(SymC5, max_stable_sets(SymC5).sets[0], "alpha")
    with pytest.raises(NotInClassD):
        C.partition_perfect(TT, (1,), "be")


def test_partition_semicomplete():
    for n in range(2, 5):
        for D in all_semicomplete(n):
            if find_induced_transitive_triangle(D) is not None:
                continue
            for S in max_stable_sets(D).sets:
                for mode in ("alpha", "be"):
                    pp, _ = C.partition_semicomplete(D, S, mode)
                    assert validate_partition(D, pp)
    with pytest.raises(TransitiveTrianglePresent):
        C.partition_semicomplete(TT, (1,), "be")


def test_extend_through_universal():
    D = Digraph(3, [(2, 0), (0, 2), (2, 1), (1, 2)])
    inner = PathPartition(((0,), (1,)), "be", (0, 1))
    pp = C.extend_through_universal(D, 2, (0, 1), inner, "be")
    assert validate_partition(D, pp)
    with pytest.raises(NotInClassD):
        C.extend_through_universal(
            UNIV5, 4, (0, 1), PathPartition(((0, 2), (1, 3)), "be", (0, 1)), "be"
        )
    with pytest.raises(NotUniversal):
        C.extend_through_universal(
            Digraph(3, [(2, 0), (0, 2)]), 2, (0, 1), inner, "be"
        )


# -- splits -----------------------------------------------------------------


def test_clique_cut_split():
    from diperfect.core import Graph

    # path graph a-b-c: cut vertex b
    G = Graph(3, [(0, 1), (1, 2)])
    H1, H2 = C.clique_cut_split(G, [1])
    from diperfect.oracles import alpha_of_subset

    assert sorted(H1 + H2) == [0, 1, 2]
    assert alpha_of_subset(G, H1) + alpha_of_subset(G, H2) == 2
    from diperfect.errors import NotACliqueCut

    with pytest.raises(NotACliqueCut):
        C.clique_cut_split(G, [0])


def test_cycle_split():
    from diperfect.core import Graph
    from diperfect.oracles import alpha_of_subset

    # C4 with a pendant path on vertex 0
    G = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)])
    P1, P2 = C.cycle_split(G, [0, 1, 2, 3])
    assert sorted(P1 + P2) == list(range(6))
    assert alpha_of_subset(G, P1) + alpha_of_subset(G, P2) == 3


# -- cycle hosts ------------------------------------------------------------


def test_partition_cycle_digraph_references():
    S5 = max_stable_sets(DC5).sets[0]
    for mode in ("alpha", "be"):
        pp = C.partition_cycle_digraph(DC5, S5, mode)
        assert validate_partition(DC5, pp)
    pp = C.partition_cycle_digraph(SymC5, max_stable_sets(SymC5).sets[0], "be")
    assert validate_partition(SymC5, pp)
    pp = C.partition_cycle_digraph(B7, max_stable_sets(B7).sets[0], "alpha")
    assert validate_partition(B7, pp)
    with pytest.raises(NotInClassB):
        C.partition_cycle_digraph(A9, max_stable_sets(A9).sets[0], "alpha")
    with pytest.raises(NotInClassD):
        C.partition_cycle_digraph(B7, max_stable_sets(B7).sets[0], "be")


def test_partition_cycle_digraph_random_orientations():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.choice([5, 7, 9])
        arcs = []
        for i in range(n):
            j = (i + 1) % n
            c = rng.randrange(3)
            if c == 0:
                arcs.append((i, j))
            elif c == 1:
                arcs.append((j, i))
            else:
                arcs += [(i, j), (j, i)]
        D = Digraph(n, arcs)
        for S in max_stable_sets(D).sets:
            for mode in ("alpha", "be"):
                try:
                    pp = C.partition_cycle_digraph(D, S, mode)
                except (NotInClassB, NotInClassD):
                    continue
                assert validate_partition(D, pp)


# -- composite builders -----------------------------------------------------


def test_partition_series_parallel_random():
    rng = random.Random(5)
    done = 0
    while done < 120:
        D = random_digraph(rng, rng.randrange(3, 9), p_arc=0.25, p_digon=0.2)
        if not is_series_parallel(underlying_graph(D)):
            continue
        done += 1
        for S in max_stable_sets(D).sets[:3]:
            for mode in ("alpha", "be"):
                try:
                    pp, _ = C.partition_series_parallel(D, S, mode)
                except (NotInClassB, NotInClassD):
                    continue
                assert validate_partition(D, pp)


def test_partition_in_semicomplete_random():
    rng = random.Random(6)
    done = 0
    while done < 80:
        D = random_digraph(rng, 6, p_arc=0.3, p_digon=0.25)
        if not is_in_semicomplete(D):
            continue
        done += 1
        for S in max_stable_sets(D).sets[:3]:
            for mode in ("alpha", "be"):
                try:
                    pp, _ = C.partition_in_semicomplete(D, S, mode)
                except (NotInClassB, NotInClassD):
                    continue
                assert validate_partition(D, pp)


def test_hamilton_cycle_strong_in_semicomplete():
    cyc = C.hamilton_cycle_strong_in_semicomplete(DC5)
    assert len(cyc) == 5
    with pytest.raises(NotStrong):
        C.hamilton_cycle_strong_in_semicomplete(TT)


def test_partition_semi_symmetric_random():
    rng = random.Random(8)
    built = 0
    for _ in range(250):
        n = rng.randrange(3, 8)
        k = rng.randrange(0, 4)
        arcs = set()
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.5:
                    arcs |= {(u, v), (v, u)}
        free = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and (u, v) not in arcs
        ]
        rng.shuffle(free)
        chosen = []
        for u, v in free:
            if len(chosen) == k:
                break
            if (v, u) not in arcs and (v, u) not in chosen:
                chosen.append((u, v))
        if len(chosen) != k:
            continue
        D = Digraph(n, sorted(arcs | set(chosen)))
        assert len(lonely_arcs(D)) == k
        for S in max_stable_sets(D).sets[:3]:
            try:
                pp, _ = C.partition_semi_symmetric(D, S)
            except (NotInClassD, SharedEndvertex):
                continue
            assert validate_partition(D, pp)
            built += 1
    assert built >= 150


def test_partition_semi_symmetric_gates():
    D = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(TooManyLonelyArcs):
        C.partition_semi_symmetric(D, max_stable_sets(D).sets[0])
