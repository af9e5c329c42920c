"""Finite k-graphs presented by a coloured skeleton and a set of squares.

A k-graph is stored as its skeleton (vertices and edges coloured 1..k) plus
one square ``e f = f2 e2`` for every bicoloured path.  Paths are kept in
normal form: the edge word is sorted into colour blocks, colour 1 first.
Words are read from the range end, so ``[e, f]`` means ``s(e) = r(f)``.
"""

from __future__ import annotations

import graphlib
import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    BadEdgeEndpoints,
    CubeInconsistent,
    CyclicGraph,
    DegreeOutOfRange,
    DuplicateSquare,
    MissingSquare,
    NotBijective,
    NotComposable,
    SourceRangeMismatch,
)


class MultiDegree(tuple):
    """An element of N^k.

    ``+`` and ``-`` act componentwise (unlike plain tuples), ``join`` is the
    componentwise maximum and ``le`` the componentwise partial order.
    Ordinary tuple comparison is kept so degrees sort deterministically.
    """

    def __new__(cls, components: Iterable[int] = ()):
        comps = tuple(int(c) for c in components)
        if any(c < 0 for c in comps):
            raise ValueError(f"degree components must be non-negative: {comps}")
        return super().__new__(cls, comps)

    @classmethod
    def zero(cls, k: int) -> "MultiDegree":
        return cls((0,) * k)

    @classmethod
    def unit(cls, k: int, color: int) -> "MultiDegree":
        """The generator e_color (colours are 1-based)."""
        return cls(1 if i == color else 0 for i in range(1, k + 1))

    @classmethod
    def constant(cls, k: int, value: int) -> "MultiDegree":
        return cls((value,) * k)

    def __add__(self, other):
        _same_rank(self, other)
        return MultiDegree(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _same_rank(self, other)
        return MultiDegree(a - b for a, b in zip(self, other))

    def join(self, other) -> "MultiDegree":
        _same_rank(self, other)
        return MultiDegree(max(a, b) for a, b in zip(self, other))

    def le(self, other) -> bool:
        _same_rank(self, other)
        return all(a <= b for a, b in zip(self, other))

    @property
    def total(self) -> int:
        return sum(self)

    def colors(self) -> list[int]:
        """Colour sequence of a normal-form word of this degree."""
        return [c for c, n in enumerate(self, start=1) for _ in range(n)]

    def __repr__(self):
        return f"MultiDegree({tuple(self)})"


def _same_rank(a, b):
    if len(a) != len(b):
        raise ValueError(f"degrees of different rank: {tuple(a)} and {tuple(b)}")


def degrees_up_to(bound: Sequence[int]) -> Iterator[MultiDegree]:
    """All m <= bound, in increasing total degree then lexicographically."""
    all_m = [MultiDegree(m) for m in itertools.product(*(range(b + 1) for b in bound))]
    return iter(sorted(all_m, key=lambda m: (m.total, tuple(m))))


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass(frozen=True)
class Skeleton:
    k: int
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))


@dataclass(frozen=True, order=True)
class Square:
    """The identity ``e f = f2 e2`` with colour(e) = colour(e2) < colour(f) = colour(f2)."""

    e: str
    f: str
    f2: str
    e2: str


@dataclass(frozen=True)
class Path:
    range: str
    word: tuple
    degree: MultiDegree
    source: str

    @property
    def is_vertex(self) -> bool:
        return not self.word

    def sort_key(self):
        return (self.degree.total, tuple(self.degree), self.range, self.word)

    def __str__(self):
        return self.range if not self.word else ".".join(self.word)


class KGraph:
    """A validated finite k-graph.

    Construction runs every check (endpoints, square completeness and, for
    k >= 3, the cube condition) and raises a :class:`KGraphError` subclass on
    the first violation, so every instance has unique factorisation.
    """

    def __init__(self, skeleton: Skeleton, squares: Iterable[Square] = ()):
        self.skeleton = skeleton
        self.k = skeleton.k
        squares = list(squares)
        self.squares = tuple(sorted(set(squares)))
        self._index_skeleton()
        self._index_squares(squares)
        self._check_completeness()
        if self.k >= 3:
            self._check_cubes()
        self._compose_cache: dict = {}
        self._factor_cache: dict = {}

    # -- construction -----------------------------------------------------

    def _index_skeleton(self):
        sk = self.skeleton
        if sk.k < 1:
            raise BadEdgeEndpoints(f"k must be a positive integer, got {sk.k}")
        self.vertices = tuple(sorted(set(sk.vertices)))
        if len(self.vertices) != len(sk.vertices):
            raise BadEdgeEndpoints("duplicate vertex identifier")
        vset = set(self.vertices)
        self.edges: dict[str, Edge] = {}
        by_range: dict = defaultdict(list)
        for edge in sk.edges:
            if edge.id in self.edges:
                raise BadEdgeEndpoints(f"duplicate edge identifier {edge.id!r}")
            if not 1 <= edge.color <= sk.k:
                raise BadEdgeEndpoints(f"edge {edge.id!r} has colour {edge.color} outside 1..{sk.k}")
            for end in (edge.range, edge.source):
                if end not in vset:
                    raise BadEdgeEndpoints(f"edge {edge.id!r} uses undeclared vertex {end!r}")
            self.edges[edge.id] = edge
            by_range[edge.range, edge.color].append(edge.id)
        self._by_range = {key: tuple(sorted(ids)) for key, ids in by_range.items()}
        self._at = {
            v: tuple(sorted(e for c in range(1, self.k + 1) for e in self._by_range.get((v, c), ())))
            for v in self.vertices
        }

    def _index_squares(self, squares):
        self._sort_swap: dict = {}
        self._unsort_swap: dict = {}
        E = self.edges
        for sq in squares:
            for x in (sq.e, sq.f, sq.f2, sq.e2):
                if x not in E:
                    raise BadEdgeEndpoints(f"square {sq} uses unknown edge {x!r}")
            e, f, f2, e2 = E[sq.e], E[sq.f], E[sq.f2], E[sq.e2]
            if not (e.color == e2.color < f.color == f2.color):
                raise BadEdgeEndpoints(f"square {sq} has inconsistent colours")
            if not (e.source == f.range and f2.source == e2.range
                    and e.range == f2.range and f.source == e2.source):
                raise BadEdgeEndpoints(f"square {sq} does not close up")
            if (sq.e, sq.f) in self._unsort_swap:
                raise DuplicateSquare(sq.e, sq.f)
            if (sq.f2, sq.e2) in self._sort_swap:
                raise NotBijective((e.color, f.color), f"pair ({sq.f2}, {sq.e2}) is hit twice")
            self._unsort_swap[sq.e, sq.f] = (sq.f2, sq.e2)
            self._sort_swap[sq.f2, sq.e2] = (sq.e, sq.f)

    def _check_completeness(self):
        for i, j in itertools.combinations(range(1, self.k + 1), 2):
            for v in self.vertices:
                for e in self._by_range.get((v, i), ()):
                    for f in self._by_range.get((self.edges[e].source, j), ()):
                        if (e, f) not in self._unsort_swap:
                            raise MissingSquare(e, f)
                for f2 in self._by_range.get((v, j), ()):
                    for e2 in self._by_range.get((self.edges[f2].source, i), ()):
                        if (f2, e2) not in self._sort_swap:
                            raise NotBijective((i, j), f"pair ({f2}, {e2}) is not covered")

    def _check_cubes(self):
        for i, j, l in itertools.combinations(range(1, self.k + 1), 3):
            deg = MultiDegree(1 if c in (i, j, l) else 0 for c in range(1, self.k + 1))
            for v in self.vertices:
                for p in self.paths_of_degree(v, deg):
                    w = list(p.word)
                    if self._swap_route(w, (1, 0, 1)) != self._swap_route(w, (0, 1, 0)):
                        raise CubeInconsistent(p.word)

    def _swap_route(self, word, positions):
        word = list(word)
        for p in positions:
            word[p], word[p + 1] = self._swap(word[p], word[p + 1])
        return tuple(word)

    # -- basic structure --------------------------------------------------

    def color(self, e: str) -> int:
        return self.edges[e].color

    def edges_at(self, v: str, color: Optional[int] = None) -> tuple:
        """Edge ids in vΛ¹ (or vΛ^{e_color}): the edges with range v."""
        if color is None:
            return self._at[v]
        return self._by_range.get((v, color), ())

    def receives_edges(self, v: str) -> bool:
        """True iff vΛ¹ is non-empty."""
        return bool(self._at[v])

    def vertex_path(self, v: str) -> Path:
        if v not in self._at:
            raise KeyError(v)
        return Path(v, (), MultiDegree.zero(self.k), v)

    def edge_path(self, e: str) -> Path:
        edge = self.edges[e]
        return Path(edge.range, (e,), MultiDegree.unit(self.k, edge.color), edge.source)

    def path(self, word: Sequence[str]) -> Path:
        """Normal form of a non-empty composable edge word."""
        if not word:
            raise ValueError("use vertex_path for the empty word")
        return self.normal_form(self.edges[word[0]].range, word)

    def _make(self, rng: str, word: tuple) -> Path:
        deg = Counter(self.edges[e].color for e in word)
        src = self.edges[word[-1]].source if word else rng
        return Path(rng, word, MultiDegree(deg[c] for c in range(1, self.k + 1)), src)

    # -- rewriting --------------------------------------------------------

    def _swap(self, x, y):
        cx, cy = self.edges[x].color, self.edges[y].color
        if cx > cy:
            return self._sort_swap[x, y]
        return self._unsort_swap[x, y]

    def _rewrite(self, word: Sequence[str], target: Sequence[int]) -> tuple:
        """Reorder ``word`` by square swaps until its colours read ``target``."""
        slots = defaultdict(list)
        for pos, c in enumerate(target):
            slots[c].append(pos)
        seen: Counter = Counter()
        ranks = []
        for x in word:
            c = self.edges[x].color
            ranks.append(slots[c][seen[c]])
            seen[c] += 1
        word = list(word)
        changed = True
        while changed:
            changed = False
            for i in range(len(word) - 1):
                if ranks[i] > ranks[i + 1]:
                    word[i], word[i + 1] = self._swap(word[i], word[i + 1])
                    ranks[i], ranks[i + 1] = ranks[i + 1], ranks[i]
                    changed = True
        return tuple(word)

    def normal_form(self, at: str, word: Sequence[str]) -> Path:
        """Colour-sorted representative of the composable word ``word`` with range ``at``."""
        word = tuple(word)
        if at not in self._at:
            raise KeyError(at)
        for pos, x in enumerate(word):
            if x not in self.edges:
                raise KeyError(x)
            expected = at if pos == 0 else self.edges[word[pos - 1]].source
            if self.edges[x].range != expected:
                raise NotComposable(pos)
        colors = sorted(self.edges[x].color for x in word)
        return self._make(at, self._rewrite(word, colors))

    def compose(self, p: Path, q: Path) -> Path:
        if p.source != q.range:
            raise SourceRangeMismatch(f"s({p}) = {p.source} but r({q}) = {q.range}")
        if not q.word:
            return p
        if not p.word:
            return q
        key = (p.word, q.word)
        hit = self._compose_cache.get(key)
        if hit is None:
            word = p.word + q.word
            if self.edges[p.word[-1]].color > self.edges[q.word[0]].color:
                word = self._rewrite(word, sorted(self.edges[x].color for x in word))
            hit = self._compose_cache[key] = self._make(p.range, word)
        return hit

    def factorize(self, p: Path, m: Sequence[int]) -> tuple[Path, Path]:
        """Return (p(0, m), p(m, d(p)))."""
        m = MultiDegree(m)
        if len(m) != self.k or not m.le(p.degree):
            raise DegreeOutOfRange(f"{tuple(m)} is not <= d({p}) = {tuple(p.degree)}")
        key = (p.range, p.word, m)
        hit = self._factor_cache.get(key)
        if hit is None:
            rest = p.degree - m
            word = self._rewrite(p.word, m.colors() + rest.colors())
            cut = m.total
            head = self._make(p.range, word[:cut])
            tail = self._make(head.source, word[cut:])
            hit = self._factor_cache[key] = (head, tail)
        return hit

    # -- enumeration ------------------------------------------------------

    def paths_of_degree(self, v: str, m: Sequence[int]) -> list[Path]:
        """vΛ^m, sorted by word."""
        m = MultiDegree(m)
        partial = [((), v)]
        for color, count in enumerate(m, start=1):
            for _ in range(count):
                partial = [
                    (w + (e,), self.edges[e].source)
                    for w, src in partial
                    for e in self._by_range.get((src, color), ())
                ]
        if not m.total:
            return [self.vertex_path(v)]
        return sorted((self._make(v, w) for w, _ in partial), key=Path.sort_key)

    def paths_up_to(self, bound: Sequence[int], at: Optional[str] = None) -> list[Path]:
        """All paths p with d(p) <= bound (and r(p) = at when given)."""
        bound = MultiDegree(bound)
        starts = self.vertices if at is None else (at,)
        out = []
        for v in starts:
            frontier = [((), v)]
            for color, limit in enumerate(bound, start=1):
                grown = list(frontier)
                layer = frontier
                for _ in range(limit):
                    layer = [
                        (w + (e,), self.edges[e].source)
                        for w, src in layer
                        for e in self._by_range.get((src, color), ())
                    ]
                    if not layer:
                        break
                    grown.extend(layer)
                frontier = grown
            out.extend(self._make(v, w) for w, _ in frontier)
        return sorted(out, key=Path.sort_key)

    def all_paths_up_to(self, bound: Sequence[int]) -> list[Path]:
        return self.paths_up_to(bound)

    # -- acyclicity -------------------------------------------------------

    def find_cycle(self) -> Optional[list[str]]:
        """A directed cycle of the skeleton as a vertex list, or None."""
        deps = {v: set() for v in self.vertices}
        for edge in self.edges.values():
            if edge.source == edge.range:
                return [edge.range, edge.range]
            deps[edge.range].add(edge.source)
        try:
            tuple(graphlib.TopologicalSorter(deps).static_order())
        except graphlib.CycleError as exc:
            return list(exc.args[1])
        return None

    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    def require_acyclic(self):
        cycle = self.find_cycle()
        if cycle is not None:
            raise CyclicGraph(cycle)

    def all_paths(self) -> list[Path]:
        """Every path of an acyclic graph."""
        self.require_acyclic()
        return self.paths_up_to(MultiDegree.constant(self.k, len(self.vertices)))

    def max_degree(self) -> MultiDegree:
        """Componentwise maximum of d(p) over all paths (acyclic graphs only)."""
        top = MultiDegree.zero(self.k)
        for p in self.all_paths():
            top = top.join(p.degree)
        return top

    def __repr__(self):
        return f"<KGraph k={self.k} vertices={len(self.vertices)} edges={len(self.edges)}>"


def validate(skeleton: Skeleton, squares: Iterable[Square] = ()) -> KGraph:
    """Build a :class:`KGraph`, raising on any failed k-graph axiom."""
    return KGraph(skeleton, squares)


def make_kgraph(k, vertices, edges, squares=()) -> KGraph:
    """Convenience constructor from plain tuples.

    ``edges`` holds ``(id, color, range, source)`` tuples and ``squares``
    holds ``(e, f, f2, e2)`` tuples.
    """
    skeleton = Skeleton(k, tuple(vertices), tuple(Edge(*e) for e in edges))
    return validate(skeleton, (Square(*s) for s in squares))
