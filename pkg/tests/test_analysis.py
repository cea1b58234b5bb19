import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from relfix import fixtures
from relfix.analysis import (
    check_continuity_like,
    check_r_completeness,
    check_r_continuity_like,
    check_sigma_self_closed,
    limits_of_tail,
    realizable_tail_sets,
    simulate_walks,
)
from relfix.document import instance_from_document
from relfix.oracles import periodic_sequences, r_complete, r_continuous_like, sigma_self_closed
from relfix.relation import FiniteRelation, SelfMap, is_preserving
from relfix.space import FiniteDistanceSpace
from relfix.sweep import distance_tables, relations, self_maps

from helpers import EX2, EX2_F, EX2_R, UNIVERSAL3, X3, labels, random_relation, small_instances


def _fixture(name):
    return instance_from_document(fixtures.load(name))


def test_limits_example2():
    assert limits_of_tail(EX2, {"a"}) == {"a"}
    assert limits_of_tail(EX2, {"b"}) == {"b"}
    with pytest.raises(ValueError):
        limits_of_tail(EX2, set())


def test_tail_sets_example2():
    tails = realizable_tail_sets(EX2_R, ["a", "b"], EX2)
    assert [t.members for t in tails] == [{"a"}, {"b"}]
    assert [t.cauchy_value for t in tails] == [0, 0]


def test_tail_sets_need_strong_connectivity():
    R = FiniteRelation.of(X3, [("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")])
    members = [set(t.members) for t in realizable_tail_sets(R, X3)]
    # {a, c} and the 3-cycle are strongly connected; singletons lack loops
    assert members == [{"a", "c"}, {"a", "b", "c"}]


def test_example2_properties():
    Y = ["a", "b"]
    assert check_r_completeness(EX2, EX2_R, Y).holds
    assert check_sigma_self_closed(EX2, EX2_R, Y).holds
    assert check_r_continuity_like(EX2, EX2_R, EX2_F).holds


def test_example2_continuity_like_matches_oracle():
    assert check_continuity_like(EX2, EX2_F).holds == r_continuous_like(EX2, UNIVERSAL3, EX2_F)


def test_constant_map_is_continuity_like():
    assert check_continuity_like(EX2, SelfMap.from_dict(X3, {p: "c" for p in X3})).holds


def test_nonunique_limits_fixture():
    inst = _fixture("nonunique_limits")
    assert limits_of_tail(inst.space, {"a"}) == {"a", "b"}
    rep = check_sigma_self_closed(inst.space, inst.relation, inst.Y)
    assert not rep.holds
    tail, point = rep.witness
    assert tail.members == {"a"} and point == "b"


def test_continuity_failure_fixture():
    inst = _fixture("continuity_fail")
    rep = check_r_continuity_like(inst.space, inst.relation, inst.fmap)
    assert not rep.holds
    tail, point = rep.witness
    assert tail.members == {"a"} and point == "b"
    assert not r_continuous_like(inst.space, inst.relation, inst.fmap)


@settings(max_examples=300, deadline=None)
@given(small_instances())
def test_completeness_holds_on_finite_instances(inst):
    # a Cauchy tail is constant on S x S, so each member is a limit with d(y,y) = L
    space, R, _ = inst
    for tail in realizable_tail_sets(R, space.points, space):
        if tail.cauchy_value is not None:
            assert tail.members <= limits_of_tail(space, tail.members)
    assert check_r_completeness(space, R, space.points).holds


def test_walks_example2_settle_on_loops():
    walks = simulate_walks(EX2, EX2_R, ["a", "b"], 200, 30, seed=3)
    for w in walks:
        assert not w.stuck
        assert w.stabilized
        assert w.tail in ({"a"}, {"b"})
        assert w.sequence[-1] == "b" or set(w.sequence) == {"a"}
        assert is_preserving(EX2_R, w.sequence)


def test_walks_empty_relation_are_stuck():
    walks = simulate_walks(EX2, FiniteRelation.of(X3, []), X3, 50, 20)
    assert all(w.stuck and len(w.sequence) == 1 for w in walks)


def test_walks_constant_distance_are_cauchy():
    s = FiniteDistanceSpace.from_matrix(X3, [[1] * 3] * 3)
    walks = simulate_walks(s, UNIVERSAL3, X3, 100, 60, seed=1)
    assert all(w.cauchy_value == 1 for w in walks if w.stabilized)
    assert any(w.stabilized for w in walks)


def test_walks_deterministic_and_validated():
    a = simulate_walks(EX2, UNIVERSAL3, X3, 20, 15, seed=9)
    b = simulate_walks(EX2, UNIVERSAL3, X3, 20, 15, seed=9)
    assert a == b
    with pytest.raises(ValueError):
        simulate_walks(EX2, UNIVERSAL3, X3, 0, 10)


def test_walk_tails_are_realizable():
    rng = random.Random(4)
    for _ in range(100):
        pts = labels(rng.randint(1, 4))
        R = random_relation(rng, pts, 0.5)
        tails = {t.members for t in realizable_tail_sets(R, pts)}
        space = FiniteDistanceSpace.from_matrix(pts, [[1] * len(pts)] * len(pts))
        for w in simulate_walks(space, R, pts, 20, 60, seed=rng.randint(0, 99)):
            if w.stabilized:
                assert w.tail in tails


def test_periodic_sequences_are_preserving():
    R = FiniteRelation.of(X3, [("a", "b"), ("b", "c"), ("c", "a"), ("a", "c"), ("c", "c")])
    seqs = periodic_sequences(R, X3)
    assert seqs
    for seq in seqs:
        assert is_preserving(R, seq.head(3 * (len(seq.prefix) + len(seq.cycle)) + 1))
    tails = {frozenset(s.cycle) for s in seqs}
    assert tails == {t.members for t in realizable_tail_sets(R, X3)}


def test_oracle_agreement_two_points():
    for space in distance_tables(2, (0, 1, 2), canonical=False):
        pts = space.points
        for R in relations(pts):
            for Y in (pts, pts[:1], pts[1:]):
                assert check_r_completeness(space, R, Y).holds == r_complete(space, R, Y)
                assert check_sigma_self_closed(space, R, Y).holds == sigma_self_closed(space, R, Y)
            for f in self_maps(pts):
                assert check_r_continuity_like(space, R, f).holds == r_continuous_like(space, R, f)


@settings(max_examples=200, deadline=None)
@given(small_instances(max_points=3))
def test_oracle_agreement_random(inst):
    space, R, f = inst
    Y = space.points
    assert check_r_completeness(space, R, Y).holds == r_complete(space, R, Y)
    assert check_sigma_self_closed(space, R, Y).holds == sigma_self_closed(space, R, Y)
    assert check_r_continuity_like(space, R, f).holds == r_continuous_like(space, R, f)


@settings(max_examples=300, deadline=None)
@given(small_instances())
def test_universal_completeness_passes_to_subrelations(inst):
    space, R, _ = inst
    universal = FiniteRelation.universal(space.points)
    if check_r_completeness(space, universal, space.points).holds:
        assert check_r_completeness(space, R, space.points).holds


@settings(max_examples=300, deadline=None)
@given(small_instances())
def test_continuity_like_implies_r_continuity_like(inst):
    space, R, f = inst
    if check_continuity_like(space, f).holds:
        assert check_r_continuity_like(space, R, f).holds
