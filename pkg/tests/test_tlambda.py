import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgraph.core import MultiDegree, degrees_up_to
from kgraph.errors import InvalidTag
from kgraph.tlambda import Tag, alpha, beta, build_tlambda, structure_report, tagged_range_source

from conftest import CORPUS
from oracles import WordClasses


def names(t):
    g = t.t_graph
    return sorted(g.vertices), sorted(g.edges)


def test_single_edge(g2):
    t = build_tlambda(g2)
    assert names(t) == (["a:v", "a:w", "b:v"], ["a:e"])


def test_two_loops(g4):
    t = build_tlambda(g4)
    assert names(t) == (["a:v", "b:v"], ["a:a", "a:b", "b:a", "b:b"])
    squares = {(s.e, s.f, s.f2, s.e2) for s in t.t_graph.squares}
    assert squares == {("a:a", "a:b", "a:b", "a:a"), ("a:a", "b:b", "a:b", "b:a")}


def test_isolated_vertex(g1):
    assert names(build_tlambda(g1)) == (["a:v"], [])


def test_range_source_table(g2, g4):
    t = build_tlambda(g2)
    r, s = tagged_range_source(t, alpha(g2.edge_path("e")))
    assert (str(r), str(s)) == ("α(v)", "α(w)")
    bv = beta(g2.vertex_path("v"))
    assert tagged_range_source(t, bv) == (bv, bv)
    with pytest.raises(InvalidTag):
        tagged_range_source(t, beta(g2.edge_path("e")))
    t4 = build_tlambda(g4)
    r, s = tagged_range_source(t4, beta(g4.edge_path("a")))
    assert (str(r), str(s)) == ("α(v)", "β(v)")


def test_beta_needs_edges_at_the_source(g2):
    t = build_tlambda(g2)
    with pytest.raises(InvalidTag):
        t.from_tagged(beta(g2.edge_path("e")))
    with pytest.raises(InvalidTag):
        t.to_tagged(t.t_graph.vertex_path("a:v").__class__("x:v", (), MultiDegree((0,)), "x:v"))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_construction_matches_the_definitions(name):
    g = CORPUS[name]
    t = build_tlambda(g)
    tg = t.t_graph
    receiving = {v for v in g.vertices if any(e.range == v for e in g.skeleton.edges)}
    assert set(tg.vertices) == {"a:" + v for v in g.vertices} | {"b:" + v for v in receiving}
    expected_edges = {"a:" + e for e in g.edges} | {"b:" + e.id for e in g.edges.values() if e.source in receiving}
    assert set(tg.edges) == expected_edges
    for e in g.edges.values():
        assert (tg.edges["a:" + e.id].range, tg.edges["a:" + e.id].source) == ("a:" + e.range, "a:" + e.source)
        if e.source in receiving:
            assert (tg.edges["b:" + e.id].range, tg.edges["b:" + e.id].source) == ("a:" + e.range, "b:" + e.source)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_tagged_paths_biject_with_t_paths(name):
    g = CORPUS[name]
    t = build_tlambda(g)
    bound = MultiDegree.constant(g.k, 2)
    t_paths = t.t_graph.all_paths_up_to(bound)
    tagged = t.tagged_paths(bound)
    assert len(t_paths) == len(tagged) == len(WordClasses(t.t_graph, bound).classes)
    for tp in tagged:
        p = t.from_tagged(tp)
        assert p.degree == tp.degree
        assert t.to_tagged(p) == tp
    for p in t_paths:
        assert t.from_tagged(t.to_tagged(p)) == p


@given(st.data())
def test_products_follow_the_tag_rules(data):
    g = CORPUS[data.draw(st.sampled_from(sorted(CORPUS)))]
    t = build_tlambda(g)
    one = MultiDegree.constant(g.k, 1)
    lam = data.draw(st.sampled_from(g.all_paths_up_to(one)))
    mu = data.draw(st.sampled_from(g.paths_up_to(one, at=lam.source)))
    lm = g.compose(lam, mu)
    tg = t.t_graph
    assert t.to_tagged(tg.compose(t.from_tagged(alpha(lam)), t.from_tagged(alpha(mu)))) == alpha(lm)
    if t.has_beta(mu) and not mu.is_vertex:
        assert t.to_tagged(tg.compose(t.from_tagged(alpha(lam)), t.from_tagged(beta(mu)))) == beta(lm)


@given(st.data())
def test_factorisation_transport(data):
    """α(λ) splits as α·α and β(λ) as α·β, except that β(λ) split at its full degree is β(λ)·β(s(λ))."""
    g = CORPUS[data.draw(st.sampled_from(sorted(CORPUS)))]
    t = build_tlambda(g)
    tp = data.draw(st.sampled_from(t.tagged_paths(MultiDegree.constant(g.k, 2))))
    m = MultiDegree(data.draw(st.integers(0, x)) for x in tp.degree)
    head, tail = t.t_graph.factorize(t.from_tagged(tp), m)
    h, tl = t.to_tagged(head), t.to_tagged(tail)
    mu, nu = g.factorize(tp.base, m)
    if tp.tag is Tag.BETA and m == tp.degree:
        assert h == tp
        assert tl == beta(g.vertex_path(tp.base.source))
    else:
        assert h == alpha(mu)
        assert tl == (alpha(nu) if tp.tag is Tag.ALPHA else beta(nu))


def test_factorisation_transport_exhaustive_on_small_graphs():
    for name in ("g4", "square", "chain3"):
        g = CORPUS[name]
        t = build_tlambda(g)
        for tp in t.tagged_paths(MultiDegree.constant(g.k, 2)):
            for m in degrees_up_to(tp.degree):
                head, tail = t.t_graph.factorize(t.from_tagged(tp), m)
                mu, nu = g.factorize(tp.base, m)
                assert t.to_tagged(head).base == mu
                assert t.to_tagged(tail).base == nu
                expected_head = tp.tag if m == tp.degree else Tag.ALPHA
                assert t.to_tagged(head).tag is expected_head
                assert t.to_tagged(tail).tag is tp.tag


def test_structure_report_single_edge(g2):
    rep = structure_report(build_tlambda(g2))
    assert rep.ok
    assert "|TΛ⁰| = 3" in rep.checks[0].detail
    assert rep.data["locally_convex"] is True


def test_structure_report_two_loops(g4):
    rep = structure_report(build_tlambda(g4))
    assert rep.ok
    assert rep.data["locally_convex"] is False
    assert rep.data["convexity_violation"] == ["b:a", "a:b"]


def test_structure_report_isolated_vertex(g1):
    rep = structure_report(build_tlambda(g1))
    assert rep.ok
    assert all(c.status in ("pass", "info") for c in rep.checks)


def test_row_bound_is_tight_when_every_source_receives(g4):
    t = build_tlambda(g4)
    for i in (1, 2):
        assert len(t.t_graph.edges_at("a:v", i)) == 2 * len(g4.edges_at("v", i))
