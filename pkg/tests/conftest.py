"""Shared fixtures, random graph generators and independent oracles."""

import itertools
import random
from typing import Dict, List, Optional, Tuple

import pytest

from ultragraph import (
    LatticeG0,
    Ultragraph,
    edge_adjacency,
    enumerate_lassos,
    generate_lattice,
    gw,
    gx,
    gy,
    lasso_source,
    reaches,
    shift_n,
)


@pytest.fixture
def g_branch() -> Ultragraph:
    return gx()


@pytest.fixture
def g_loop() -> Ultragraph:
    return gy()


@pytest.fixture
def g_split() -> Ultragraph:
    return gw()


@pytest.fixture
def branch_lattice(g_branch) -> LatticeG0:
    return generate_lattice(g_branch)


def random_ultragraph(
    rng: random.Random,
    max_vertices: int = 6,
    max_edges: int = 8,
    sink_free: bool = False,
) -> Ultragraph:
    """Arbitrary small ultragraph; with sink_free every vertex emits."""
    nv = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(nv)]
    edges: Dict[str, Tuple[str, Tuple[str, ...]]] = {}
    ne = rng.randint(0 if not sink_free else nv, max_edges)
    ne = max(ne, nv if sink_free else 0)
    for i in range(ne):
        if sink_free and i < nv:
            src = vs[i]
        else:
            src = rng.choice(vs)
        size = rng.randint(1, min(3, nv))
        rng_set = tuple(rng.sample(vs, size))
        edges[f"e{i}"] = (src, rng_set)
    return Ultragraph.build(vs, edges)


def word_count_up_to(g: Ultragraph, bound: int) -> int:
    """Number of edge words of length up to bound, by dynamic programming."""
    adj = edge_adjacency(g)
    counts = {e: 1 for e in g.edges}
    total = sum(counts.values())
    for _ in range(bound - 1):
        counts = {
            f: sum(counts[e] for e in g.edges if f in adj[e]) for f in g.edges
        }
        total += sum(counts.values())
        if total > 10**9:
            break
    return total


def sparse_sink_free(
    rng: random.Random, word_budget: int = 3000, attempts: int = 400
) -> Ultragraph:
    """Sink-free graph kept sparse enough for lasso-based oracles: the
    number of edge words of length up to the edge count stays under the
    budget.  Redraws deterministically until a draw fits."""
    for _ in range(attempts):
        g = random_ultragraph(rng, max_vertices=5, max_edges=6, sink_free=True)
        if word_count_up_to(g, len(g.edges)) <= word_budget:
            return g
    raise AssertionError("no sparse draw within the attempt budget")


def powerset_lattice(g: Ultragraph) -> Tuple[frozenset, ...]:
    """Brute-force oracle for the vertex-set lattice.

    The generators include every singleton, and closing singletons under
    pairwise union already yields every subset, so on a finite ultragraph
    the lattice is the full power set of the vertices.
    """
    vs = sorted(g.vertices)
    out = []
    for mask in itertools.chain.from_iterable(
        itertools.combinations(vs, k) for k in range(len(vs) + 1)
    ):
        out.append(frozenset(mask))
    return tuple(sorted(out, key=lambda s: tuple(sorted(s))))


def cofinal_by_lassos(g: Ultragraph) -> Tuple[bool, Optional[tuple]]:
    """Cofinality oracle by exhaustive enumeration of pure cycles.

    Pure cycles suffice: the shift sources of a prefixed lasso include the
    sources of its cycle edges, so a vertex failing on some lasso already
    fails on that lasso's cycle alone.  Conversely any infinite path repeats
    an edge, so it contains a cycle of length at most the edge count whose
    sources it keeps visiting; a vertex reaching a source of every such
    cycle therefore reaches every infinite path.
    """
    bound = len(g.edges)
    cycles = enumerate_lassos(g, 0, bound)
    memo = {}

    def can_reach(v: str, w: str) -> bool:
        if (v, w) not in memo:
            memo[(v, w)] = reaches(g, v, w)
        return memo[(v, w)]

    for v in sorted(g.vertices):
        for x in cycles:
            if not any(can_reach(v, g.source[e]) for e in x.cycle):
                return False, (v, x)
    return True, None


def cofinal_by_lassos_full(g: Ultragraph) -> Tuple[bool, Optional[tuple]]:
    """Literal cofinality oracle: every lasso with prefix and cycle bounded
    by the edge count, shift-source membership checked per shift.  Only
    tractable on fixture-sized graphs."""
    bound = len(g.edges)
    lassos = enumerate_lassos(g, bound, bound)
    for v in sorted(g.vertices):
        for x in lassos:
            hits = any(
                reaches(g, v, lasso_source(g, shift_n(x, k)))
                for k in range(2 * bound + 1)
            )
            if not hits:
                return False, (v, x)
    return True, None


def naive_loop_count(g: Ultragraph, v: str, bound: int) -> int:
    """Plain DFS count of first-return loops at v, independent of the
    pruned counter: no distance pruning, no saturation."""
    total = 0
    stack: List[Tuple[str, ...]] = [(e,) for e in g.edges if g.source[e] == v]
    while stack:
        word = stack.pop()
        if v in g.range[word[-1]]:
            total += 1
        if len(word) < bound:
            for f in g.edges:
                if g.source[f] in g.range[word[-1]] and g.source[f] != v:
                    stack.append(word + (f,))
    return total


def dp_loop_count(g: Ultragraph, v: str, bound: int) -> int:
    """Exact count of first-return loop words at v of length <= bound by
    dynamic programming over edges: weight[e] = number of words of the
    current length ending in e that left v and never used v as an interior
    source.  Polynomial in the bound, so it stays tractable where the DFS
    oracle explodes."""
    weight = {e: 1 for e in g.edges if g.source[e] == v}
    total = 0
    for _ in range(bound):
        total += sum(w for e, w in weight.items() if v in g.range[e])
        nxt: dict = {}
        for e, w in weight.items():
            for f in g.edges:
                if g.source[f] in g.range[e] and g.source[f] != v:
                    nxt[f] = nxt.get(f, 0) + w
        weight = nxt
    return total
