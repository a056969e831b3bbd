import pytest

from diperfect.core import Digraph, TT, A9, A9B, SymC5, DC5, underlying_graph
from diperfect.errors import BudgetExceeded, TooLarge, UnknownClass
from diperfect.oracles import alpha_of, min_path_partition
from diperfect import harness as H


def test_serialize_round_trip():
    for D in list(H.enumerate_digraphs(3)) + [TT, SymC5]:
        assert H.deserialize_digraph(H.serialize_digraph(D)) == D


def test_check_property_examples():
    r = H.check_property(TT, "be")
    assert not r.holds and r.failing_stable_set == (2,)
    assert H.check_property(TT, "alpha").holds
    assert not H.check_property(A9, "alpha").holds
    assert H.check_property(DC5, "be").holds


def test_check_property_certificates_cover_all_sets():
    r = H.check_property(SymC5, "be")
    assert r.holds
    from diperfect.oracles import max_stable_sets

    assert len(r.certificates) == len(max_stable_sets(SymC5).sets)


def test_check_property_cap():
    with pytest.raises(TooLarge):
        H.check_property(Digraph(11, []), "alpha")


def test_check_diperfect():
    assert H.check_diperfect(SymC5, "be").holds
    assert H.check_diperfect(Digraph(1, []), "alpha").holds
    assert H.check_diperfect(Digraph(1, []), "be").holds
    # an induced transitive triangle breaks the hereditary BE-property
    D = Digraph(5, [(0, 1), (0, 2), (2, 1), (3, 4), (4, 3)])
    r = H.check_diperfect(D, "be")
    assert not r.holds and r.failing_vertices == (0, 1, 2)
    with pytest.raises(TooLarge):
        H.check_diperfect(Digraph(10, []), "be")


def test_check_diperfect_memoization_soundness():
    D = Digraph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    shared: dict = {}
    with_memo = H.check_diperfect(D, "be", memo=shared)
    without = H.check_diperfect(D, "be", memo={})
    assert with_memo == without


def test_be_diperfect_implies_alpha_diperfect():
    for D in H.enumerate_digraphs(3, up_to_iso=True):
        if H.check_diperfect(D, "be").holds:
            assert H.check_diperfect(D, "alpha").holds


def test_enumerate_counts():
    assert sum(1 for _ in H.enumerate_digraphs(1)) == 1
    assert sum(1 for _ in H.enumerate_digraphs(2)) == 4
    assert sum(1 for _ in H.enumerate_digraphs(2, up_to_iso=True)) == 3
    from diperfect.forbidden import is_tournament

    assert sum(1 for _ in H.enumerate_digraphs(3, filter=is_tournament)) == 8
    assert (
        sum(1 for _ in H.enumerate_digraphs(3, up_to_iso=True, filter=is_tournament))
        == 2
    )
    with pytest.raises(TooLarge):
        list(H.enumerate_digraphs(7))


def test_sample_digraphs_deterministic():
    a = [H.serialize_digraph(D) for D in H.sample_digraphs(5, 10, seed=3)]
    b = [H.serialize_digraph(D) for D in H.sample_digraphs(5, 10, seed=3)]
    assert a == b
    c = [H.serialize_digraph(D) for D in H.sample_digraphs(5, 10, seed=4)]
    assert a != c


def test_gallai_milgram_sweep_small():
    for D in H.enumerate_digraphs(3):
        assert min_path_partition(D).size <= alpha_of(underlying_graph(D))


def test_survey_conjecture_small():
    rep = H.survey_conjecture(3, "be")
    assert rep.counterexamples == ()
    counts = dict(rep.counts)
    assert counts["n=3/in_class=false/diperfect=false"] == 1  # the TT type
    rep_a = H.survey_conjecture(3, "alpha")
    assert rep_a.counterexamples == ()
    assert "n=3/in_class=false/diperfect=false" not in dict(rep_a.counts)


def test_survey_parallel_matches_serial():
    serial = H.survey_conjecture(3, "be")
    parallel = H.survey_conjecture(3, "be", jobs=2)
    assert serial == parallel


def test_survey_budget():
    with pytest.raises(BudgetExceeded):
        H.survey_conjecture(4, "be", budget=10)


def test_validate_theorem_unknown_class():
    with pytest.raises(UnknownClass):
        H.validate_theorem("nonsense", 4, "alpha")


def test_validate_theorem_spot_checks():
    rep = H.validate_theorem("cycle", 5, "be")
    assert rep.counterexamples == ()
    rep = H.validate_theorem("semicomplete", 4, "alpha")
    assert rep.counterexamples == ()
    assert dict(rep.counts)["skipped_out_of_hypothesis"] > 0  # TT members skipped
    rep = H.validate_theorem("perfect", 5, "be", samples=30, seed=1)
    assert rep.counterexamples == ()
    rep = H.validate_theorem("semi_symmetric", 5, "be", samples=30, seed=2, lonely=3)
    assert rep.counterexamples == ()


def test_validate_theorem_deterministic():
    a = H.validate_theorem("series_parallel", 6, "be", samples=25, seed=9)
    b = H.validate_theorem("series_parallel", 6, "be", samples=25, seed=9)
    assert a == b
