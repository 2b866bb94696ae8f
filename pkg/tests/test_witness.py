import pytest

from consep.core import build_core, coset_table, membership, rose
from consep.covers import rose_girth_cover
from consep.errors import HypothesisViolated, TrivialH2
from consep.graphs import LabeledGraph
from consep.witness import (
    Conjugator, Witness, WitnessParams, build_delta, con_separate, construct_delta, coset_scan, embed_core,
    finite_quotient, push_up, scs, verify_witness_properties,
)
from consep.words import conjugate, format_word, inverse, multiply, parse_subgroup, parse_word, reduced_words
from oracles import free_reduce, path_words_in, short_path_violations

P = lambda s: parse_subgroup(s, 2)  # noqa: E731
W = lambda s: parse_word(s, 2)  # noqa: E731


def core(text):
    return build_core(2, P(text))


def test_params_validation():
    with pytest.raises(ValueError):
        WitnessParams(0)


def test_delta_of_the_whole_group_is_the_rose():
    d = build_delta(rose(2), WitnessParams(3))
    assert d.num_vertices == 1


def test_delta_of_a_cyclic_subgroup():
    d = build_delta(core("a"), WitnessParams(2))
    assert membership(d, W("a"))
    assert coset_table(d).index == d.num_vertices


def test_delta_index_counts_core_plus_glued_copies():
    built = construct_delta(core("aa,b"), 4)
    k = rose_girth_cover(2, 4).graph.num_vertices
    assert built.graph.num_vertices == built.completed.core_size + len(built.completed.outer_pairs) * k
    assert coset_table(built.graph).index == built.graph.num_vertices
    assert all(membership(built.graph, w) for w in P("aa,b"))
    assert all(s >= 4 for s in built.separations)


@pytest.mark.parametrize("gens, C", [("a", 2), ("a", 3), ("aa,b", 3), ("ab,ba", 4), ("abAB", 4)])
def test_witness_properties_against_brute_force(gens, C):
    h = core(gens)
    d = build_delta(h, C)
    rep = verify_witness_properties(d, h, C)
    assert rep.ok, rep.text()
    image, edge_ids = embed_core(h, d)
    core_edges = {d.edges[i] for i in edge_ids}
    words = list(reduced_words(2, C))
    assert short_path_violations(d, set(image.values()), core_edges, C, words) == []


def test_rose_passes_trivially():
    r = rose(2)
    assert verify_witness_properties(r, r, 5).ok


def test_injected_short_loop_is_caught():
    h = core("a")
    d = build_delta(h, 3)
    outside = d.num_vertices - 1
    corrupted = LabeledGraph(2, d.num_vertices, d.edges + ((outside, outside, 1),), d.basepoint)
    rep = verify_witness_properties(corrupted, h, 3)
    assert not rep["short loops lie in the core"].passed
    image, edge_ids = embed_core(h, corrupted)


def test_separation_of_a_from_b():
    res = con_separate(core("a"), core("b"))
    assert isinstance(res, Witness) and res.report.ok
    d = res.d
    assert coset_scan(d, P("b")) == []
    # independent scan: a coset representative g with g b g^-1 in D would be a bad coset
    reps = path_words_in(d)
    assert all(not membership(d, free_reduce(g + (2,) + tuple(-x for x in reversed(g)))) for g in reps.values())
    assert res.provenance["C"] == 1 and res.provenance["normal"] == "not normalized"


def test_conjugator_for_rotated_words():
    res = con_separate(core("ab"), core("ba"))
    assert isinstance(res, Conjugator) and res.g == W("a")
    # g H2 g^-1 <= H1
    assert membership(core("ab"), multiply(res.g, W("ba"), inverse(res.g)))


def test_inclusion_gives_the_empty_conjugator():
    res = con_separate(core("aa,b"), core("aa"))
    assert isinstance(res, Conjugator) and res.g == ()


def test_trivial_h2_is_rejected():
    with pytest.raises(TrivialH2):
        con_separate(core("a"), build_core(2, []))


def test_explicit_C_must_cover_the_generators():
    with pytest.raises(HypothesisViolated):
        con_separate(core("a"), core("bab"), C=2)
    res = con_separate(core("a"), core("b"), C=3)
    assert isinstance(res, Witness) and res.report.ok and res.provenance["C"] == 3


def test_finite_quotient_of_the_whole_group():
    q = finite_quotient(rose(2), rose(2), core("a"))
    assert q.degree == 1 and all(p == (0,) for p in q.h1_images + q.h2_images)


def test_finite_quotient_of_an_index_two_subgroup():
    d = LabeledGraph(2, 2, ((0, 0, 1), (1, 1, 1), (0, 1, 2), (1, 0, 2)))
    q = finite_quotient(d, core("a"), core("b"))
    assert q.h1_images == ((0, 1),)
    assert q.h2_images == ((1, 0),)
    assert q.common_fixed_points(q.h2_images) == []


def test_finite_quotient_stabilizer_is_D():
    res = con_separate(core("a"), core("b"))
    q = finite_quotient(res.d, core("a"), core("b"))
    assert q.degree == res.d.num_vertices
    for w in reduced_words(2, 4):
        assert (q.act(q.basepoint, w) == q.basepoint) == membership(res.d, w)


def test_push_up():
    d = con_separate(core("a"), core("b")).d
    for combo in ([d], [rose(2), d]):
        up = push_up(combo)
        assert up.num_vertices == d.num_vertices
        assert all(membership(up, w) == membership(d, w) for w in reduced_words(2, 6))
    d1 = LabeledGraph(2, 2, ((0, 1, 1), (1, 0, 1), (0, 0, 2), (1, 1, 2)))
    d2 = LabeledGraph(2, 2, ((0, 0, 1), (1, 1, 1), (0, 1, 2), (1, 0, 2)))
    both = push_up([d1, d2], reps=[(), ()])
    assert both.num_vertices == 4
    for w in reduced_words(2, 6):
        assert membership(both, w) == (membership(d1, w) and membership(d2, w))
    with pytest.raises(ValueError):
        push_up([d1], reps=[(), ()])


def test_scs_examples():
    r = scs(core("a"), core("Bab"))
    assert r.verdict == "conjugate" and format_word(r.g) == "b" and r.report.ok
    r = scs(core("a"), core("b"))
    assert r.verdict == "separated" and r.report.ok
    r = scs(core("ab,ba"), core("ab,ba"))
    assert r.verdict == "conjugate" and r.g == ()


def test_scs_proper_inclusion_is_separated():
    r = scs(core("a"), core("aa"))
    assert r.verdict == "separated" and r.direction == "H2 from H1" and r.report.ok
    # <a> is not conjugate into <a^2>: no coset of D contains a conjugate of <a>
    assert coset_scan(r.witness.d, P("a")) == []
