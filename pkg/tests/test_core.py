import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from consep.core import (
    build_core, complete_core, coset_table, fiber_product, fold, free_basis, intersect, is_conjugate_into,
    membership, rank, rose, trivial_subgroup,
)
from consep.errors import NotFiniteIndex
from consep.graphs import LabeledGraph
from consep.words import conjugate, parse_subgroup, parse_word, reduced_words
from oracles import NaiveAutomaton, all_reduced_words, closure, conjugate_into_by_basepoints

P = lambda s: parse_subgroup(s, 2)  # noqa: E731
W = lambda s: parse_word(s, 2)  # noqa: E731


def core(text):
    return build_core(2, P(text))


def edge_set(g):
    return sorted(g.edges), g.num_vertices, g.basepoint


def test_single_generator_gives_one_loop():
    c = core("a")
    assert (c.num_vertices, c.edges) == (1, ((0, 0, 1),))


def test_two_generators_give_the_rose():
    c = core("a,b")
    assert c.num_vertices == 1 and sorted(c.edges) == [(0, 0, 1), (0, 0, 2)]
    assert rank(c) == 2


def test_hand_folded_conjugate_of_b():
    # <abA>: the a-edge leaves the basepoint, the b-loop sits at its end
    c = core("abA")
    assert c.num_vertices == 2
    assert sorted(c.edges) == [(0, 1, 1), (1, 1, 2)]
    assert rank(c) == 1


def test_empty_generator_set_is_a_single_vertex():
    c = trivial_subgroup(2)
    assert (c.num_vertices, c.edges) == (1, ())
    assert membership(c, ()) and not membership(c, W("a"))


@pytest.mark.parametrize("gens, word, expected", [
    ("a", "aaaaa", True), ("a", "b", False), ("aa,b", "aabAA", True), ("aa,b", "ab", False),
])
def test_membership_examples(gens, word, expected):
    assert membership(core(gens), W(word)) is expected


def test_rank_of_redundant_generating_set():
    # a and b already generate F_2, so the third generator adds nothing
    assert rank(core("a,b,aBa")) == 2


def test_folding_is_confluent_under_generator_order():
    gens = P("abA,bbaB,aBaB")
    shapes = {tuple(map(str, edge_set(build_core(2, list(p))))) for p in itertools.permutations(gens)}
    assert len(shapes) == 1


def test_fold_identifies_equal_labels():
    g = fold(2, 3, [(0, 1, 1), (0, 2, 1), (1, 1, 2)], 0)
    assert g.num_vertices == 2 and g.is_folded()


@given(st.lists(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=4).map(tuple),
                min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_membership_matches_naive_folding(gens):
    c = build_core(2, gens)
    naive = NaiveAutomaton(gens)
    for w in reduced_words(2, 5):
        assert membership(c, w) == naive.accepts(w), w
    assert c.is_folded()


@given(st.lists(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=3).map(tuple),
                min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_free_basis_generates_the_same_subgroup(gens):
    c = build_core(2, gens)
    basis = free_basis(c)
    assert len(basis) == rank(c)
    again = build_core(2, basis)
    assert edge_set(again) == edge_set(c)


def test_intersection_examples():
    a, b = core("a"), core("b")
    assert intersect(a, b).edges == ()
    h = core("abA,bb")
    assert edge_set(intersect(h, h)) == edge_set(h)
    i = intersect(core("aa"), core("aaa"))
    assert rank(i) == 1 and membership(i, W("a" * 6))
    assert all(membership(i, w) == (w in closure([W("a" * 6)], 12)) for w in reduced_words(2, 12)
               if set(w) <= {1, -1})


def test_intersection_agrees_with_brute_force():
    rng = random.Random(7)
    words = [w for w in all_reduced_words(2, 3) if w]
    for _ in range(15):
        g1 = [rng.choice(words) for _ in range(2)]
        g2 = [rng.choice(words) for _ in range(2)]
        i = intersect(build_core(2, g1), build_core(2, g2))
        c1, c2 = build_core(2, g1), build_core(2, g2)
        for w in reduced_words(2, 6):
            assert membership(i, w) == (membership(c1, w) and membership(c2, w))
        assert rank(intersect(c2, c1)) == rank(i)


def test_fiber_product_of_covers_is_a_cover():
    d = fiber_product(rose(2), core("a,bb,baB"))
    assert d.is_folded()


def test_conjugate_into_examples():
    g = is_conjugate_into(core("baB"), core("a"))
    assert g == W("b")
    assert membership(core("a"), conjugate(W("baB"), g))
    assert is_conjugate_into(core("abAB"), rose(2)) == ()
    assert is_conjugate_into(core("b"), core("a")) is None


def test_conjugate_into_matches_exhaustive_basepoint_search():
    rng = random.Random(11)
    words = [w for w in all_reduced_words(2, 4) if w]
    for _ in range(60):
        g1 = [rng.choice(words) for _ in range(rng.randint(1, 2))]
        g2 = [rng.choice(words) for _ in range(rng.randint(1, 2))]
        h1, h2 = build_core(2, g1), build_core(2, g2)
        g = is_conjugate_into(h2, h1)
        expected = conjugate_into_by_basepoints(h2, [w for w in h2.generators], h1)
        assert (g is not None) == expected, (g1, g2)
        if g is not None:
            assert all(membership(h1, conjugate(x, g)) for x in h2.generators)


@pytest.mark.parametrize("gens, outer, classes", [("", 0, 0), ("a", 2, 1), ("aa", 4, 2)])
def test_complete_core_counts(gens, outer, classes):
    c = rose(2) if not gens else core(gens)
    cc = complete_core(c)
    assert cc.num_vertices - cc.core_size == outer
    assert len(cc.outer_pairs) == classes
    assert all(cc.valency(v) == 4 for v in range(cc.core_size))
    assert all(cc.valency(v) == 1 for v in range(cc.core_size, cc.num_vertices))


def test_association_is_a_fixed_point_free_involution():
    cc = complete_core(core("abAB,aab"))
    missing = sum(len(core("abAB,aab").missing_labels(v)) for v in range(cc.core_size))
    assert cc.num_vertices - cc.core_size == missing
    seen = []
    for p in cc.outer_pairs:
        assert p.outer != p.partner
        seen += [p.outer, p.partner]
        # following the label from the representative reaches the partner
        lab = p.label
        v = cc.follow(p.outer, lab)
        while v < cc.core_size:
            v = cc.follow(v, lab)
        assert v == p.partner
    assert sorted(seen) == list(range(cc.core_size, cc.num_vertices))


def test_coset_tables():
    t = coset_table(rose(2))
    assert t.index == 1 and t.permutations == {1: (0,), 2: (0,)}
    two = LabeledGraph(2, 2, ((0, 1, 1), (1, 0, 1), (0, 0, 2), (1, 1, 2)))
    t = coset_table(two)
    assert t.index == 2 and t.permutations == {1: (1, 0), 2: (0, 1)}
    assert t.act(0, W("aba")) == 0
    with pytest.raises(NotFiniteIndex):
        coset_table(complete_core(core("a")))
