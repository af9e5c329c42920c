"""The Toeplitz k-graph TΛ of a k-graph Λ.

TΛ doubles each vertex v receiving edges into α(v) and β(v).  Its paths are
α(λ) for every λ in Λ and β(λ) whenever s(λ) receives edges.  The range of
both α(λ) and β(λ) is α(r(λ)).  β(λ) ends at β(s(λ)), which receives
nothing.  Edges of TΛ are named ``a:<id>`` / ``b:<id>`` and vertices
``a:<v>`` / ``b:<v>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .analysis import check_aperiodic, is_locally_convex, is_source
from .core import Edge, KGraph, MultiDegree, Path, Skeleton, Square, validate
from .errors import InvalidTag, KGraphError
from .reports import Report

ALPHA_PREFIX = "a:"
BETA_PREFIX = "b:"


class Tag(Enum):
    ALPHA = "alpha"
    BETA = "beta"

    @property
    def prefix(self) -> str:
        return ALPHA_PREFIX if self is Tag.ALPHA else BETA_PREFIX


@dataclass(frozen=True)
class TaggedPath:
    tag: Tag
    base: Path

    @property
    def degree(self) -> MultiDegree:
        return self.base.degree

    def __str__(self):
        sym = "α" if self.tag is Tag.ALPHA else "β"
        return f"{sym}({self.base})"


def alpha(p: Path) -> TaggedPath:
    return TaggedPath(Tag.ALPHA, p)


def beta(p: Path) -> TaggedPath:
    return TaggedPath(Tag.BETA, p)


def _strip(name: str) -> tuple[Tag, str]:
    if name.startswith(ALPHA_PREFIX):
        return Tag.ALPHA, name[len(ALPHA_PREFIX):]
    if name.startswith(BETA_PREFIX):
        return Tag.BETA, name[len(BETA_PREFIX):]
    raise InvalidTag(f"{name!r} is not an a:/b: mangled name")


@dataclass(frozen=True)
class TConstruction:
    base: KGraph
    t_graph: KGraph

    def has_beta(self, p: Path) -> bool:
        """β(p) exists iff s(p)Λ¹ is non-empty."""
        return self.base.receives_edges(p.source)

    def to_tagged(self, p: Path) -> TaggedPath:
        """Read a path of TΛ as α(λ) or β(λ)."""
        if p.is_vertex:
            tag, v = _strip(p.range)
            return TaggedPath(tag, self.base.vertex_path(v))
        tag, _ = _strip(p.word[-1])
        word = tuple(_strip(x)[1] for x in p.word)
        _, rng = _strip(p.range)
        return TaggedPath(tag, self.base.normal_form(rng, word))

    def from_tagged(self, tp: TaggedPath) -> Path:
        p = tp.base
        if tp.tag is Tag.BETA and not self.has_beta(p):
            raise InvalidTag(f"β({p}) is undefined: s({p}) = {p.source} receives no edges")
        if p.is_vertex:
            return self.t_graph.vertex_path(tp.tag.prefix + p.range)
        word = tuple(ALPHA_PREFIX + x for x in p.word[:-1]) + (tp.tag.prefix + p.word[-1],)
        # α/β images of a normal-form word are already colour sorted
        return self.t_graph._make(ALPHA_PREFIX + p.range, word)

    def tagged_paths(self, bound=None) -> list[TaggedPath]:
        """α(λ) and (where defined) β(λ) for every λ of the base, degree-bounded."""
        base_paths = self.base.all_paths() if bound is None else self.base.paths_up_to(bound)
        out = []
        for p in base_paths:
            out.append(alpha(p))
            if self.has_beta(p):
                out.append(beta(p))
        return out


def tagged_range_source(t: TConstruction, tp: TaggedPath) -> tuple[TaggedPath, TaggedPath]:
    """(r(tp), s(tp)) as tagged vertices."""
    p = tp.base
    if tp.tag is Tag.BETA and not t.has_beta(p):
        raise InvalidTag(f"β({p}) is undefined")
    if p.is_vertex:
        return tp, tp
    rng = alpha(t.base.vertex_path(p.range))
    src = TaggedPath(tp.tag, t.base.vertex_path(p.source))
    return rng, src


def build_tlambda(g: KGraph) -> TConstruction:
    a, b = ALPHA_PREFIX, BETA_PREFIX
    vertices = [a + v for v in g.vertices]
    vertices += [b + v for v in g.vertices if g.receives_edges(v)]
    edges = []
    for e in sorted(g.edges.values(), key=lambda e: e.id):
        edges.append(Edge(a + e.id, e.color, a + e.range, a + e.source))
        if g.receives_edges(e.source):
            edges.append(Edge(b + e.id, e.color, a + e.range, b + e.source))
    squares = []
    for sq in g.squares:
        squares.append(Square(a + sq.e, a + sq.f, a + sq.f2, a + sq.e2))
        if g.receives_edges(g.edges[sq.f].source):
            squares.append(Square(a + sq.e, b + sq.f, a + sq.f2, b + sq.e2))
    try:
        t_graph = validate(Skeleton(g.k, tuple(vertices), tuple(edges)), squares)
    except KGraphError as exc:
        raise RuntimeError(f"TΛ failed validation, which indicates a bug: {exc}") from exc
    return TConstruction(g, t_graph)


def structure_report(t: TConstruction, pair_bound=None) -> Report:
    """Record the structural facts of TΛ: vertex count, β-sources, row bound,
    aperiodicity with witnesses of degree at most (1, ..., 1), local convexity."""
    g, tg = t.base, t.t_graph
    k = g.k
    pair_bound = MultiDegree(pair_bound) if pair_bound is not None else MultiDegree.constant(k, 2)
    rep = Report("TΛ structure")

    receiving = [v for v in g.vertices if g.receives_edges(v)]
    expected = len(g.vertices) + len(receiving)
    rep.add("vertex count", len(tg.vertices) == expected,
            f"|TΛ⁰| = {len(tg.vertices)}, |Λ⁰| + |{{v : vΛ¹ ≠ ∅}}| = {expected}")

    bad_beta = [v for v in receiving if tg.receives_edges(BETA_PREFIX + v)]
    rep.add("β(v) receive no edges", not bad_beta,
            f"{len(receiving)} β-vertices checked", bad_beta or None)
    unit = MultiDegree.constant(k, 1)
    not_source = [v for v in receiving if not is_source(tg, BETA_PREFIX + v, unit).is_source]
    rep.add("β(v) are sources", not not_source, "", not_source or None)

    over = []
    for v in g.vertices:
        for i in range(1, k + 1):
            n_t = len(tg.edges_at(ALPHA_PREFIX + v, i))
            n_b = len(g.edges_at(v, i))
            if n_t > 2 * n_b:
                over.append((v, i, n_t, n_b))
    rep.add("row-finite bound |α(v)TΛ^{e_i}| <= 2|vΛ^{e_i}|", not over, "", over or None)

    ap = check_aperiodic(tg, pair_bound, unit)
    rep.add("aperiodic (witness degree <= (1,...,1))", ap.aperiodic_up_to_bound,
            f"{ap.pairs_checked} pairs up to {tuple(pair_bound)}, {len(ap.failures)} failures",
            [(str(x), str(y)) for x, y in ap.failures[:5]] or None)

    convex, violation = is_locally_convex(tg)
    rep.data["locally_convex"] = convex
    rep.data["convexity_violation"] = list(violation) if violation else None
    rep.note("local convexity",
             "locally convex" if convex else f"not locally convex, violating pair {violation}")
    return rep
