"""Finite ultragraph model: range-set lattice, emitters, reachability.

An ultragraph is a directed graph whose edges end in nonempty *sets* of
vertices rather than single vertices.  Everything here is exact and
deterministic: vertex sets are frozensets, and every set-valued result is
reported in a canonical order (lexicographic on vertex names).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

Vertex = str
Edge = str
VSet = FrozenSet[Vertex]


class SizeLimitError(RuntimeError):
    """An enumeration outgrew its caller-supplied bound."""


class GraphStructureError(ValueError):
    """The graph violates a structural precondition of the operation."""


def set_key(s: Iterable[str]) -> Tuple[str, ...]:
    """Canonical sort key for a vertex set: the sorted tuple of names."""
    return tuple(sorted(s))


def format_set(s: Iterable[str]) -> str:
    return "{" + " ".join(sorted(s)) + "}"


@dataclass(frozen=True)
class Ultragraph:
    """Vertices, edges, one source vertex per edge, one nonempty range set per edge."""

    vertices: VSet
    edges: FrozenSet[Edge]
    source: Mapping[Edge, Vertex]
    range: Mapping[Edge, VSet]

    @classmethod
    def build(
        cls,
        vertices: Iterable[Vertex],
        edges: Mapping[Edge, Tuple[Vertex, Iterable[Vertex]]],
    ) -> "Ultragraph":
        """Convenience constructor; edges maps name -> (source, range iterable)."""
        return cls(
            vertices=frozenset(vertices),
            edges=frozenset(edges),
            source={e: s for e, (s, _) in edges.items()},
            range={e: frozenset(r) for e, (_, r) in edges.items()},
        )

    def edges_sorted(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def vertices_sorted(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.vertices))

    def out_edges(self, v: Vertex) -> Tuple[Edge, ...]:
        return tuple(e for e in self.edges_sorted() if self.source[e] == v)


def edge_adjacency(g: Ultragraph) -> Dict[Edge, Tuple[Edge, ...]]:
    """Successor map on edges: f follows e iff source(f) lies in range(e)."""
    out: Dict[Vertex, List[Edge]] = {v: [] for v in g.vertices}
    for e in g.edges_sorted():
        src = g.source.get(e)
        if src in out:
            out[src].append(e)
    adj = {}
    for e in g.edges_sorted():
        succ: List[Edge] = []
        for v in sorted(g.range[e]):
            succ.extend(out.get(v, ()))
        adj[e] = tuple(sorted(set(succ)))
    return adj


@dataclass(frozen=True)
class ValidationReport:
    sinks: Tuple[Vertex, ...]
    singular_vertices: Tuple[Vertex, ...]
    errors: Tuple[str, ...]
    warnings: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


def validate(g: Ultragraph) -> ValidationReport:
    """Structural checks.  Sinks are warnings only: they block groupoid-side
    operations but the graph itself is legal."""
    errors: List[str] = []
    for e in g.edges_sorted():
        src = g.source.get(e)
        if src is None:
            errors.append(f"edge '{e}': no source vertex recorded")
        elif src not in g.vertices:
            errors.append(f"edge '{e}': source '{src}' is not a declared vertex")
        rng = g.range.get(e)
        if rng is None or not rng:
            errors.append(f"edge '{e}': empty range")
        else:
            for w in sorted(rng):
                if w not in g.vertices:
                    errors.append(f"edge '{e}': range vertex '{w}' is not declared")
    emitting = {g.source[e] for e in g.edges if g.source.get(e) in g.vertices}
    sinks = tuple(v for v in g.vertices_sorted() if v not in emitting)
    # on a finite graph no vertex set emits infinitely many edges, so the
    # singular vertices are exactly the sinks
    singular = sinks
    warnings = tuple(f"sink vertex '{v}'" for v in sinks)
    return ValidationReport(
        sinks=sinks,
        singular_vertices=singular,
        errors=tuple(errors),
        warnings=warnings,
    )


def require_no_sinks(g: Ultragraph, operation: str) -> None:
    report = validate(g)
    if report.sinks:
        names = ", ".join(report.sinks)
        raise GraphStructureError(
            f"{operation} requires a sink-free ultragraph; sinks: {names}"
        )


@dataclass(frozen=True)
class LatticeG0:
    """The smallest family of vertex sets containing every singleton, every
    edge range and the empty set, closed under pairwise union and
    intersection."""

    sets: Tuple[VSet, ...]
    generator_flags: Mapping[VSet, str]

    def __contains__(self, s: object) -> bool:
        return s in self.generator_flags

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def nonempty(self) -> Tuple[VSet, ...]:
        return tuple(s for s in self.sets if s)


def generate_lattice(g: Ultragraph, max_size: int = 4096) -> LatticeG0:
    """Worklist closure under pairwise union/intersection with a hard size guard.

    The closure can approach the full power set, so max_size is a real limit:
    crossing it raises SizeLimitError rather than thrashing.
    """
    floor = len(g.vertices) + len(g.edges) + 1
    if max_size < floor:
        raise ValueError(f"max_size must be at least {floor} for this graph")
    gens: set = {frozenset({v}) for v in g.vertices}
    gens.update(g.range[e] for e in g.edges)
    gens.add(frozenset())
    sets = set(gens)
    frontier = list(sets)
    while frontier:
        fresh: List[VSet] = []
        for a in frontier:
            for b in list(sets):
                for c in (a | b, a & b):
                    if c not in sets:
                        sets.add(c)
                        fresh.append(c)
                        if len(sets) > max_size:
                            raise SizeLimitError(
                                f"lattice closure exceeded max_size={max_size}"
                            )
        frontier = fresh
    ordered = tuple(sorted(sets, key=set_key))
    flags = {}
    ranges = {g.range[e] for e in g.edges}
    for s in ordered:
        if len(s) == 1:
            flags[s] = "singleton"
        elif s in ranges:
            flags[s] = "edge-range"
        else:
            flags[s] = "derived"
    return LatticeG0(sets=ordered, generator_flags=flags)


def emitted_edges(g: Ultragraph, A: VSet) -> FrozenSet[Edge]:
    """Edges whose source vertex lies in A."""
    return frozenset(e for e in g.edges if g.source[e] in A)


def is_infinite_emitter(g: Ultragraph, A: VSet) -> bool:
    """True when A emits infinitely many edges.

    A finite ultragraph has finitely many edges, so this is always False
    here; it exists so boundary-set computations follow the general
    definition instead of hard-coding finiteness.
    """
    if not A <= g.vertices:
        raise ValueError("A must be a subset of the vertex set")
    return False


def is_ultraset(g: Ultragraph, lat: LatticeG0, A: VSet) -> bool:
    """Exhaustively test additivity of the indicator 'contains A' over the lattice.

    chi_A(B) = 1 iff A is a subset of B.  A is an ultraset when chi_A is
    additive: chi(B u C) = chi(B) + chi(C) - chi(B n C) for every lattice
    pair, with chi(empty) = 0.  On a finite lattice exactly the singletons
    qualify.
    """
    if A not in lat:
        raise ValueError(f"{format_set(A)} is not a lattice set")
    if not A:
        raise ValueError("the empty set is not eligible")

    def chi(B: VSet) -> int:
        return 1 if A <= B else 0

    if chi(frozenset()) != 0:
        return False
    for B in lat.sets:
        for C in lat.sets:
            if chi(B | C) != chi(B) + chi(C) - chi(B & C):
                return False
    return True


def reaches(g: Ultragraph, w: Vertex, v: Vertex) -> bool:
    """w >= v: either w == v or some path starting at w has v in its range."""
    if w not in g.vertices or v not in g.vertices:
        raise ValueError("both endpoints must be declared vertices")
    if w == v:
        return True
    adj = edge_adjacency(g)
    frontier = list(g.out_edges(w))
    seen = set(frontier)
    while frontier:
        e = frontier.pop()
        if v in g.range[e]:
            return True
        for f in adj[e]:
            if f not in seen:
                seen.add(f)
                frontier.append(f)
    return False


def reachable_from(g: Ultragraph, w: Vertex) -> VSet:
    """All vertices v with w >= v."""
    out = {w}
    adj = edge_adjacency(g)
    frontier = list(g.out_edges(w))
    seen = set(frontier)
    while frontier:
        e = frontier.pop()
        out.update(g.range[e])
        for f in adj[e]:
            if f not in seen:
                seen.add(f)
                frontier.append(f)
    return frozenset(out)


def reaches_set(g: Ultragraph, v: Vertex, A: VSet) -> Optional[Tuple[Edge, ...]]:
    """Shortest edge word alpha with source(alpha) = v and A inside range(alpha).

    Range of a word is the range of its last edge, so this is a BFS over
    edges toward any edge whose range contains A.  Returns None when no such
    word exists.  Ties break toward the lexicographically least word because
    edges are explored in sorted order.
    """
    if v not in g.vertices:
        raise ValueError(f"unknown vertex '{v}'")
    if not A or not A <= g.vertices:
        raise ValueError("A must be a nonempty subset of the vertex set")
    adj = edge_adjacency(g)
    parent: Dict[Edge, Optional[Edge]] = {}
    queue: List[Edge] = []
    for e in g.out_edges(v):
        parent[e] = None
        queue.append(e)
    i = 0
    while i < len(queue):
        e = queue[i]
        i += 1
        if A <= g.range[e]:
            word = [e]
            while parent[word[-1]] is not None:
                word.append(parent[word[-1]])
            return tuple(reversed(word))
        for f in adj[e]:
            if f not in parent:
                parent[f] = e
                queue.append(f)
    return None
