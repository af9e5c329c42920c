"""KGF: a line-oriented text format for k-graph presentations.

::

    kgraph k=2 name=g4
    vertex v
    edge a color=1 range=v source=v
    edge b color=2 range=v source=v
    square a b b a      # a·b = b·a

Blank lines and ``#`` comments are ignored.  Identifiers are shared between
vertices and edges and must be unique.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Edge, KGraph, Skeleton, Square, validate
from .errors import KGraphError

IDENT = re.compile(r"^[A-Za-z0-9_.:'\-]+$")


class KgfError(KGraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class KgfSyntaxError(KgfError):
    pass


class DuplicateIdentifier(KgfError):
    pass


class UnknownReference(KgfError):
    pass


@dataclass(frozen=True)
class KgfDocument:
    name: str
    skeleton: Skeleton
    squares: tuple

    def canonical(self) -> "KgfDocument":
        sk = self.skeleton
        return KgfDocument(
            self.name,
            Skeleton(sk.k, tuple(sorted(sk.vertices)), tuple(sorted(sk.edges, key=lambda e: e.id))),
            tuple(sorted(self.squares)),
        )

    def to_kgraph(self) -> KGraph:
        return validate(self.skeleton, self.squares)


def document_from_graph(g: KGraph, name: str) -> KgfDocument:
    return KgfDocument(name, g.skeleton, g.squares).canonical()


def _ident(tok: str, lineno: int) -> str:
    if not IDENT.match(tok):
        raise KgfSyntaxError(lineno, f"bad identifier {tok!r}")
    return tok


def _keyvals(tokens, keys, lineno):
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in keys:
            raise KgfSyntaxError(lineno, f"expected one of {', '.join(k + '=' for k in keys)}; got {tok!r}")
        if key in out:
            raise KgfSyntaxError(lineno, f"repeated field {key!r}")
        out[key] = val
    missing = [k for k in keys if k not in out]
    if missing:
        raise KgfSyntaxError(lineno, f"missing field(s) {', '.join(missing)}")
    return out


def _int(val, lineno, what):
    try:
        return int(val)
    except ValueError:
        raise KgfSyntaxError(lineno, f"{what} must be an integer, got {val!r}") from None


def parse_kgf(text: str) -> KgfDocument:
    header = None
    vertices: dict = {}
    edges: dict = {}
    squares = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if header is None:
            if head != "kgraph":
                raise KgfSyntaxError(lineno, "document must start with a 'kgraph k=<int> name=<ident>' header")
            fields = _keyvals(rest, ("k", "name"), lineno)
            k = _int(fields["k"], lineno, "k")
            if k < 1:
                raise KgfSyntaxError(lineno, "k must be positive")
            header = (k, _ident(fields["name"], lineno))
        elif head == "kgraph":
            raise KgfSyntaxError(lineno, "second header")
        elif head == "vertex":
            if len(rest) != 1:
                raise KgfSyntaxError(lineno, "expected 'vertex <ident>'")
            v = _ident(rest[0], lineno)
            if v in vertices or v in edges:
                raise DuplicateIdentifier(lineno, f"identifier {v!r} already declared")
            vertices[v] = lineno
        elif head == "edge":
            if not rest:
                raise KgfSyntaxError(lineno, "expected 'edge <ident> color=<int> range=<ident> source=<ident>'")
            e = _ident(rest[0], lineno)
            if e in vertices or e in edges:
                raise DuplicateIdentifier(lineno, f"identifier {e!r} already declared")
            fields = _keyvals(rest[1:], ("color", "range", "source"), lineno)
            color = _int(fields["color"], lineno, "color")
            if not 1 <= color <= header[0]:
                raise KgfSyntaxError(lineno, f"color {color} outside 1..{header[0]}")
            edges[e] = (Edge(e, color, _ident(fields["range"], lineno), _ident(fields["source"], lineno)), lineno)
        elif head == "square":
            if len(rest) != 4:
                raise KgfSyntaxError(lineno, "expected 'square <e> <f> <f2> <e2>'")
            squares.append((Square(*(_ident(x, lineno) for x in rest)), lineno))
        else:
            raise KgfSyntaxError(lineno, f"unknown directive {head!r}")
    if header is None:
        raise KgfSyntaxError(1, "empty document")
    for edge, lineno in edges.values():
        for end in (edge.range, edge.source):
            if end not in vertices:
                raise UnknownReference(lineno, f"edge {edge.id!r} refers to undeclared vertex {end!r}")
    for sq, lineno in squares:
        for x in (sq.e, sq.f, sq.f2, sq.e2):
            if x not in edges:
                raise UnknownReference(lineno, f"square refers to undeclared edge {x!r}")
    k, name = header
    skeleton = Skeleton(k, tuple(vertices), tuple(e for e, _ in edges.values()))
    return KgfDocument(name, skeleton, tuple(sq for sq, _ in squares))


def format_kgf(doc: KgfDocument) -> str:
    doc = doc.canonical()
    lines = [f"kgraph k={doc.skeleton.k} name={doc.name}"]
    lines += [f"vertex {v}" for v in doc.skeleton.vertices]
    lines += [f"edge {e.id} color={e.color} range={e.range} source={e.source}" for e in doc.skeleton.edges]
    lines += [f"square {s.e} {s.f} {s.f2} {s.e2}" for s in doc.squares]
    return "\n".join(lines) + "\n"


def load_kgf(path) -> KgfDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_kgf(fh.read())


PALETTE = ("blue", "red", "darkgreen", "orange", "purple", "brown", "magenta", "gray")


def export_dot(g: KGraph, name: str = "kgraph") -> str:
    """Graphviz source: vertices as nodes, edges drawn source -> range, one colour per degree."""
    out = [f'digraph "{name}" {{', f'  label="k={g.k}";']
    out += [f'  "{v}";' for v in g.vertices]
    for e in sorted(g.edges.values(), key=lambda e: e.id):
        style = PALETTE[(e.color - 1) % len(PALETTE)]
        dashed = ", style=dashed" if e.color > len(PALETTE) else ""
        out.append(f'  "{e.source}" -> "{e.range}" [label="{e.id} color={e.color}", color="{style}"{dashed}];')
    for s in g.squares:
        out.append(f"  // square {s.e} {s.f} = {s.f2} {s.e2}")
    out.append("}")
    return "\n".join(out) + "\n"
