"""Small named k-graphs and a seeded generator of random acyclic ones."""

from __future__ import annotations

import itertools
import random
from collections import defaultdict

from .core import Edge, KGraph, Skeleton, Square, make_kgraph, validate
from .errors import KGraphError


def isolated_vertex() -> KGraph:
    """G1: one vertex, no edges."""
    return make_kgraph(1, ["v"], [])


def single_edge() -> KGraph:
    """G2: e with range v and source w."""
    return make_kgraph(1, ["v", "w"], [("e", 1, "v", "w")])


def single_loop() -> KGraph:
    """G3: one vertex and one loop."""
    return make_kgraph(1, ["v"], [("e", 1, "v", "v")])


def two_loops() -> KGraph:
    """G4: one vertex, blue loop a, red loop b, with ab = ba."""
    return make_kgraph(2, ["v"], [("a", 1, "v", "v"), ("b", 2, "v", "v")], [("a", "b", "b", "a")])


def two_colour_fork() -> KGraph:
    """Two vertices; v receives a blue edge f and a red edge g, both from w."""
    return make_kgraph(2, ["v", "w"], [("f", 1, "v", "w"), ("g", 2, "v", "w")])


def unit_square() -> KGraph:
    """The acyclic 2-graph of one commuting square: a·b = c·d from u to v."""
    return make_kgraph(
        2,
        ["u", "v", "x", "y"],
        [("a", 1, "v", "x"), ("b", 2, "x", "u"), ("c", 2, "v", "y"), ("d", 1, "y", "u")],
        [("a", "b", "c", "d")],
    )


def pullback(k: int, vertices, edges_1) -> KGraph:
    """Pull a 1-graph back along the degree-sum map N^k -> N.

    Each 1-graph edge ``(id, range, source)`` becomes k edges ``id_i`` of
    colour i, with squares ``(e_i)(f_j) = (e_j)(f_i)``.
    """
    edges = [(f"{e}_{i}", i, r, s) for e, r, s in edges_1 for i in range(1, k + 1)]
    squares = []
    for e, r, s in edges_1:
        for f, r2, s2 in edges_1:
            if s != r2:
                continue
            for i, j in itertools.combinations(range(1, k + 1), 2):
                squares.append((f"{e}_{i}", f"{f}_{j}", f"{e}_{j}", f"{f}_{i}"))
    return make_kgraph(k, vertices, edges, squares)


def three_colour_chain() -> KGraph:
    """Pullback of the chain v <- x <- y <- u to k = 3: exercises the cube condition."""
    return pullback(3, ["u", "v", "x", "y"], [("a", "v", "x"), ("b", "x", "y"), ("c", "y", "u")])


NAMED = {
    "g1": isolated_vertex,
    "g2": single_edge,
    "g3": single_loop,
    "g4": two_loops,
    "fork": two_colour_fork,
    "square": unit_square,
    "chain3": three_colour_chain,
}


def _classes(edges, i, j):
    """Composable edge pairs of colours (i, j), grouped by (range, source)."""
    by_range = defaultdict(list)
    for e in edges:
        by_range[e.range, e.color].append(e)
    groups = defaultdict(list)
    for e in edges:
        if e.color != i:
            continue
        for f in by_range.get((e.source, j), ()):
            groups[e.range, f.source].append((e.id, f.id))
    return groups


def _complete(rng, k, vertices, edges, max_vertices, max_edges):
    """Add two-edge detours until every colour pair is balanced; None when limits are hit."""
    while True:
        fixed = False
        for i, j in itertools.combinations(range(1, k + 1), 2):
            up, down = _classes(edges, i, j), _classes(edges, j, i)
            for key in sorted(set(up) | set(down)):
                a, b = len(up.get(key, ())), len(down.get(key, ()))
                if a == b:
                    continue
                if len(vertices) + 1 > max_vertices or len(edges) + 2 > max_edges:
                    return None
                rng_v, src_v = key
                mid = f"v{len(vertices)}"
                vertices.append(mid)
                first, second = (j, i) if a > b else (i, j)
                n = len(edges)
                edges.append(Edge(f"e{n}", first, rng_v, mid))
                edges.append(Edge(f"e{n + 1}", second, mid, src_v))
                fixed = True
                break
            if fixed:
                break
        if not fixed:
            return vertices, edges


def _random_squares(rng, k, edges):
    squares = []
    for i, j in itertools.combinations(range(1, k + 1), 2):
        up, down = _classes(edges, i, j), _classes(edges, j, i)
        for key in sorted(up):
            targets = list(down[key])
            rng.shuffle(targets)
            squares += [Square(e, f, f2, e2) for (e, f), (f2, e2) in zip(up[key], targets)]
    return squares


def random_kgraph(rng: random.Random, k: int, max_vertices=6, max_edges=10, max_in=3,
                  max_paths=40, tries=200) -> KGraph:
    """A random valid acyclic k-graph within the given size limits.

    Edges always point from a higher-numbered source to a lower-numbered
    range, and detours added to balance colour pairs keep that property, so
    the result has no cycles.  Squares are chosen by a random bijection
    inside each (range, source) class; cube failures are retried.
    """
    for _ in range(tries):
        n = rng.randint(2, max_vertices - 1)
        vertices = [f"v{i}" for i in range(n)]
        edges = []
        for idx in range(rng.randint(1, max_edges - 2)):
            r = rng.randrange(n - 1)
            s = rng.randrange(r + 1, n)
            edges.append(Edge(f"e{idx}", rng.randint(1, k), vertices[r], vertices[s]))
        done = _complete(rng, k, vertices, edges, max_vertices, max_edges)
        if done is None:
            continue
        vertices, edges = done
        in_count = defaultdict(int)
        for e in edges:
            in_count[e.range] += 1
        if max(in_count.values()) > max_in:
            continue
        for _ in range(5):
            try:
                g = validate(Skeleton(k, tuple(vertices), tuple(edges)), _random_squares(rng, k, edges))
            except KGraphError:
                continue
            if len(g.all_paths()) <= max_paths:
                return g
            break
    raise RuntimeError(f"no random {k}-graph found in {tries} tries")


def random_pullback(rng: random.Random, k: int, max_vertices=6, max_edges=10, max_paths=40,
                    tries=200) -> KGraph:
    """A random acyclic 1-graph pulled back to rank k, squares re-chosen at random.

    Parallel edges make the (range, source) classes larger than one, so
    the random square bijection is usually not the pullback's own.
    """
    for _ in range(tries):
        n = rng.randint(2, max_vertices)
        vertices = [f"v{i}" for i in range(n)]
        edges = []
        r = 0
        for idx in range(rng.randint(2, max_edges // k)):
            # mostly extend a chain so that edges compose
            s = rng.randrange(r + 1, n) if r < n - 1 else None
            if s is None or rng.random() < 0.3:
                r = rng.randrange(n - 1)
                s = rng.randrange(r + 1, n)
            edges.extend(Edge(f"e{idx}_{i}", i, vertices[r], vertices[s]) for i in range(1, k + 1))
            if rng.random() < 0.7:
                r = s
        for _ in range(5):
            try:
                g = validate(Skeleton(k, tuple(vertices), tuple(edges)), _random_squares(rng, k, edges))
            except KGraphError:
                continue
            if g.squares and len(g.all_paths()) <= max_paths and max(len(g.edges_at(v)) for v in g.vertices) <= 6:
                return g
            break
    raise RuntimeError(f"no random pullback {k}-graph found in {tries} tries")


def random_corpus(seed: int = 2015, per_rank: int = 8) -> dict[str, KGraph]:
    """``per_rank`` random acyclic k-graphs for each k in {1, 2, 3}.

    For k >= 2 every other graph is a twisted pullback, which guarantees
    squares (and tricoloured triples when k = 3).
    """
    rng = random.Random(seed)
    out = {}
    for k in (1, 2, 3):
        for idx in range(per_rank):
            if k >= 2 and idx % 2 == 0:
                out[f"pull-k{k}-{idx:02d}"] = random_pullback(rng, k)
            else:
                out[f"rand-k{k}-{idx:02d}"] = random_kgraph(rng, k)
    return out


def acceptance_corpus(seed: int = 2015) -> dict[str, KGraph]:
    graphs = {name: build() for name, build in NAMED.items()}
    graphs.update(random_corpus(seed))
    return graphs
