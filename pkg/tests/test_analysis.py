import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgraph.analysis import (
    aperiodicity_witness,
    check_aperiodic,
    default_bound,
    exhaustive_sets,
    is_exhaustive,
    is_locally_convex,
    is_source,
    lambda_min,
    mce,
)
from kgraph.core import MultiDegree, make_kgraph
from kgraph.errors import EdgeNotAtVertex, PreconditionViolated
from kgraph.tlambda import build_tlambda

from conftest import CORPUS
from oracles import WordClasses


def test_mce_examples(g2, g4):
    a, b = g4.edge_path("a"), g4.edge_path("b")
    assert [t.word for t in mce(g4, a, b)] == [("a", "b")]
    assert mce(g4, a, a) == [a]
    e, v = g2.edge_path("e"), g2.vertex_path("v")
    assert mce(g2, e, v) == [e]
    assert mce(g2, e, g2.vertex_path("w")) == []


def test_lambda_min_examples(g2, g4):
    a, b = g4.edge_path("a"), g4.edge_path("b")
    (pair,) = lambda_min(g4, a, b)
    assert (pair.lambda2, pair.mu2) == (b, a)
    (self_pair,) = lambda_min(g4, a, a)
    assert self_pair.lambda2 == self_pair.mu2 == g4.vertex_path("v")
    (pair,) = lambda_min(g2, g2.vertex_path("v"), g2.edge_path("e"))
    assert (pair.lambda2, pair.mu2) == (g2.edge_path("e"), g2.vertex_path("w"))


def test_mce_against_word_classes():
    for name in ("square", "chain3", "pull-k2-02", "pull-k3-02", "g4"):
        g = CORPUS[name]
        bound = MultiDegree.constant(g.k, 2)
        oracle = WordClasses(g, bound)
        paths = g.all_paths_up_to(MultiDegree.constant(g.k, 1))
        for lam, mu in itertools.product(paths, repeat=2):
            if lam.range != mu.range:
                continue
            top = lam.degree.join(mu.degree)
            expected = oracle.mce_words(lam.range, lam.word, mu.word, top)
            got = {oracle.class_of[t.range, t.word] for t in mce(g, lam, mu)}
            assert got == expected, (name, str(lam), str(mu))


@given(st.data())
def test_mce_symmetry_and_lambda_min_bijection(data):
    g = CORPUS[data.draw(st.sampled_from(sorted(CORPUS)))]
    paths = g.all_paths_up_to(MultiDegree.constant(g.k, 1))
    lam = data.draw(st.sampled_from(paths))
    mu = data.draw(st.sampled_from([p for p in paths if p.range == lam.range]))
    taus = mce(g, lam, mu)
    assert set(taus) == set(mce(g, mu, lam))
    pairs = lambda_min(g, lam, mu)
    assert len(pairs) == len(taus)
    swapped = {(p.mu2, p.lambda2) for p in lambda_min(g, mu, lam)}
    assert {(p.lambda2, p.mu2) for p in pairs} == swapped
    top = lam.degree.join(mu.degree)
    for p in pairs:
        assert g.compose(lam, p.lambda2) == g.compose(mu, p.mu2)
        assert g.compose(lam, p.lambda2).degree == top


def test_exhaustive_examples(g2, g4):
    assert is_exhaustive(g2, "v", {"e"})
    assert not is_exhaustive(g2, "v", set())
    assert is_exhaustive(g4, "v", {"a"})
    assert exhaustive_sets(g2, "v") == [frozenset({"e"})]
    assert exhaustive_sets(g2, "w") == []
    assert exhaustive_sets(g4, "v") == [frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})]
    with pytest.raises(EdgeNotAtVertex):
        is_exhaustive(g2, "w", {"e"})


def test_fork_needs_both_edges():
    # v receives a blue f and a red g from w, with no composable pairs
    g = CORPUS["fork"]
    assert not is_exhaustive(g, "v", {"f"})
    assert exhaustive_sets(g, "v") == [frozenset({"f", "g"})]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_exhaustiveness_is_monotone(name):
    g = CORPUS[name]
    for v in g.vertices:
        found = set(exhaustive_sets(g, v))
        at_v = g.edges_at(v)
        for E in found:
            for extra in at_v:
                assert E | {extra} in found
        if at_v:
            assert frozenset(at_v) in found


def test_source_examples(g2, g3):
    w = is_source(g2, "w", (2,))
    assert w.is_source and w.witness == (1,) and str(w) == "Yes((1,))"
    v = is_source(g2, "v", (2,))
    assert v.witness == (2,)
    loop = is_source(g3, "v", (5,))
    assert not loop.is_source and str(loop) == "NoUpToBound((5,))"


def test_source_witnesses_are_minimal():
    g = CORPUS["fork"]
    verdict = is_source(g, "v", (2, 2))
    assert verdict.witnesses == ((0, 2), (1, 1), (2, 0))
    for m in verdict.witnesses:
        assert not g.paths_of_degree("v", m)
        for i in range(g.k):
            if m[i]:
                smaller = MultiDegree(x - (j == i) for j, x in enumerate(m))
                assert g.paths_of_degree("v", smaller)


def test_local_convexity(g4, square):
    assert is_locally_convex(g4) == (True, None)
    assert is_locally_convex(make_kgraph(1, ["x", "y"], [("e", 1, "x", "y")]))[0]
    convex, pair = is_locally_convex(build_tlambda(g4).t_graph)
    assert not convex and pair == ("b:a", "a:b")
    assert is_locally_convex(square) == (True, None)
    convex, pair = is_locally_convex(build_tlambda(square).t_graph)
    assert not convex and pair == ("b:a", "a:c")


def test_loop_has_no_witness(g3):
    e, ee = g3.path(["e"]), g3.path(["e", "e"])
    for n in range(4):
        assert aperiodicity_witness(g3, e, ee, (n,)) is None
    rep = check_aperiodic(g3, (2,), (3,))
    assert (e, ee) in rep.failures
    assert not rep.aperiodic_up_to_bound


def test_dead_end_vertex_is_a_witness(g2):
    e = g2.edge_path("e")
    other = make_kgraph(1, ["v", "w"], [("e", 1, "v", "w"), ("f", 1, "v", "w")])
    eta = aperiodicity_witness(other, other.edge_path("e"), other.edge_path("f"), (1,))
    assert eta == other.vertex_path("w")
    with pytest.raises(PreconditionViolated):
        aperiodicity_witness(g2, e, e, (1,))
    with pytest.raises(PreconditionViolated):
        aperiodicity_witness(g2, e, g2.vertex_path("v"), (1,))


def test_isolated_vertex_is_vacuously_aperiodic(g1):
    rep = check_aperiodic(g1, (3,), (3,))
    assert rep.pairs_checked == 0 and rep.aperiodic_up_to_bound


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_recorded_witnesses_recheck(name):
    t = build_tlambda(CORPUS[name]).t_graph
    unit = MultiDegree.constant(t.k, 1)
    rep = check_aperiodic(t, MultiDegree.constant(t.k, 1), unit)
    for (tau, omega), eta in rep.witnesses.items():
        assert eta.range == tau.source == omega.source
        assert eta.degree.le(unit)
        assert mce(t, t.compose(tau, eta), t.compose(omega, eta)) == []


def test_report_serialises(g3):
    d = check_aperiodic(g3, (1,), (1,)).to_dict()
    assert d["failures"] == [["v", "e"]]
    assert d["pair_bound"] == [1]


def test_default_bound(g4):
    assert default_bound(g4) == (3, 3)
