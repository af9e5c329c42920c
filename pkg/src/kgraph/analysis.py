"""Combinatorial predicates on k-graphs.

Everything that quantifies over infinitely many paths (exhaustiveness,
sources, aperiodicity) is a degree-bounded search and reports the bound it
used.  On acyclic graphs the default bounds cover every path, so the answers
are exact there.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import KGraph, MultiDegree, Path, degrees_up_to
from .errors import EdgeNotAtVertex, PreconditionViolated


@dataclass(frozen=True)
class MinPair:
    """A pair (λ', μ') with λλ' = μμ' a minimal common extension of λ and μ."""

    lambda2: Path
    mu2: Path


def mce(g: KGraph, lam: Path, mu: Path) -> list[Path]:
    """Minimal common extensions of ``lam`` and ``mu``."""
    if lam.range != mu.range:
        return []
    top = lam.degree.join(mu.degree)
    out = []
    for x in g.paths_of_degree(lam.source, top - lam.degree):
        tau = g.compose(lam, x)
        if g.factorize(tau, mu.degree)[0] == mu:
            out.append(tau)
    return out


def lambda_min(g: KGraph, lam: Path, mu: Path) -> list[MinPair]:
    return [
        MinPair(g.factorize(tau, lam.degree)[1], g.factorize(tau, mu.degree)[1])
        for tau in mce(g, lam, mu)
    ]


def default_bound(g: KGraph) -> MultiDegree:
    """Per-coordinate bound |edges| + 1; covers every path of an acyclic graph."""
    return MultiDegree.constant(g.k, len(g.edges) + 1)


@functools.lru_cache(maxsize=1024)
def _meet_table(g: KGraph, v: str, bound: MultiDegree) -> tuple:
    """For each λ in vΛ (d(λ) <= bound): the edges e in vΛ¹ with Λ^min(λ, e) non-empty."""
    edges = [g.edge_path(e) for e in g.edges_at(v)]
    table = []
    for lam in g.paths_up_to(bound, at=v):
        table.append((lam, frozenset(e.word[0] for e in edges if mce(g, lam, e))))
    return tuple(table)


def is_exhaustive(g: KGraph, v: str, E: Iterable[str], bound=None) -> bool:
    E = frozenset(E)
    stray = sorted(e for e in E if e not in g.edges or g.edges[e].range != v)
    if stray:
        raise EdgeNotAtVertex(f"edges {stray} do not have range {v}")
    bound = MultiDegree(bound) if bound is not None else default_bound(g)
    return all(meets & E for _, meets in _meet_table(g, v, bound))


def exhaustive_sets(g: KGraph, v: str, bound=None) -> list[frozenset]:
    """Every exhaustive E ⊆ vΛ¹, smallest first (full power-set scan)."""
    bound = MultiDegree(bound) if bound is not None else default_bound(g)
    table = _meet_table(g, v, bound)
    at_v = g.edges_at(v)
    out = []
    for size in range(1, len(at_v) + 1):
        for E in itertools.combinations(at_v, size):
            E = frozenset(E)
            if all(meets & E for _, meets in table):
                out.append(E)
    return out


@dataclass(frozen=True)
class SourceVerdict:
    vertex: str
    bound: MultiDegree
    witnesses: tuple = ()

    @property
    def is_source(self) -> bool:
        return bool(self.witnesses)

    @property
    def witness(self) -> Optional[MultiDegree]:
        return self.witnesses[0] if self.witnesses else None

    def __str__(self):
        if self.is_source:
            return f"Yes({', '.join(str(tuple(m)) for m in self.witnesses)})"
        return f"NoUpToBound({tuple(self.bound)})"


def is_source(g: KGraph, v: str, bound) -> SourceVerdict:
    """Search m <= bound with vΛ^m empty; returns the componentwise-minimal ones."""
    bound = MultiDegree(bound)
    found: list[MultiDegree] = []
    for m in degrees_up_to(bound):
        if any(w.le(m) for w in found):
            continue
        if not g.paths_of_degree(v, m):
            found.append(m)
    return SourceVerdict(v, bound, tuple(found))


def local_convexity_violation(g: KGraph) -> Optional[tuple[str, str]]:
    """First pair (e, f) with r(e) = r(f), colours i != j and s(e)Λ^{e_j} empty."""
    for v in g.vertices:
        for e in g.edges_at(v):
            for f in g.edges_at(v):
                cf = g.color(f)
                if g.color(e) != cf and not g.edges_at(g.edges[e].source, cf):
                    return (e, f)
    return None


def is_locally_convex(g: KGraph) -> tuple[bool, Optional[tuple[str, str]]]:
    violation = local_convexity_violation(g)
    return violation is None, violation


def aperiodicity_witness(g: KGraph, tau: Path, omega: Path, witness_bound) -> Optional[Path]:
    """First η in s(τ)Λ, d(η) <= witness_bound, with MCE(τη, ωη) empty.

    Candidates are tried by increasing degree, then lexicographically.
    None only means no witness exists within the bound.
    """
    if tau == omega:
        raise PreconditionViolated("aperiodicity witnesses need two distinct paths")
    if tau.source != omega.source:
        raise PreconditionViolated(f"s({tau}) = {tau.source} differs from s({omega}) = {omega.source}")
    for eta in g.paths_up_to(witness_bound, at=tau.source):
        if not mce(g, g.compose(tau, eta), g.compose(omega, eta)):
            return eta
    return None


@dataclass
class AperiodicityReport:
    pair_bound: MultiDegree
    witness_bound: MultiDegree
    failures: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    pairs_checked: int = 0

    @property
    def aperiodic_up_to_bound(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "pair_bound": list(self.pair_bound),
            "witness_bound": list(self.witness_bound),
            "pairs_checked": self.pairs_checked,
            "failures": [[str(t), str(o)] for t, o in self.failures],
            "witnesses": [[str(t), str(o), str(h)] for (t, o), h in self.witnesses.items()],
        }


def check_aperiodic(g: KGraph, pair_bound, witness_bound) -> AperiodicityReport:
    """Witness search over every unordered pair of distinct same-source paths."""
    report = AperiodicityReport(MultiDegree(pair_bound), MultiDegree(witness_bound))
    by_source: dict = {}
    for p in g.paths_up_to(report.pair_bound):
        by_source.setdefault(p.source, []).append(p)
    for src in sorted(by_source):
        for tau, omega in itertools.combinations(by_source[src], 2):
            report.pairs_checked += 1
            eta = aperiodicity_witness(g, tau, omega, report.witness_bound)
            if eta is None:
                report.failures.append((tau, omega))
            else:
                report.witnesses[tau, omega] = eta
    return report
