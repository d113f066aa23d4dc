"""Graph model, lattice generation, reachability."""

import random

import pytest

from ultragraph import (
    GraphStructureError,
    SizeLimitError,
    Ultragraph,
    edge_adjacency,
    emitted_edges,
    generate_lattice,
    is_infinite_emitter,
    is_ultraset,
    reachable_from,
    reaches,
    reaches_set,
    require_no_sinks,
    validate,
)

from conftest import powerset_lattice, random_ultragraph


def fz(*names):
    return frozenset(names)


def test_validate_accepts_fixture(g_branch):
    rep = validate(g_branch)
    assert rep.ok
    assert rep.sinks == ()
    assert rep.singular_vertices == ()
    assert rep.warnings == ()


def test_validate_reports_sinks_as_warnings():
    g = Ultragraph.build(["a", "b"], {"e": ("a", ("b",))})
    rep = validate(g)
    assert rep.ok
    assert rep.sinks == ("b",)
    assert rep.singular_vertices == ("b",)
    assert any("sink" in w for w in rep.warnings)
    with pytest.raises(GraphStructureError):
        require_no_sinks(g, "testing")


def test_validate_flags_structural_errors():
    g = Ultragraph(
        vertices=fz("a"),
        edges=fz("e", "f", "h"),
        source={"e": "zz", "f": "a", "h": "a"},
        range={"e": fz("a"), "f": frozenset(), "h": fz("qq")},
    )
    rep = validate(g)
    assert not rep.ok
    text = " ".join(rep.errors)
    assert "source 'zz'" in text
    assert "empty range" in text
    assert "range vertex 'qq'" in text


def test_edge_adjacency_branch(g_branch):
    adj = edge_adjacency(g_branch)
    assert adj == {"e": ("f", "g"), "f": ("e",), "g": ("f",)}


def test_lattice_branch_is_full_power_set(g_branch, branch_lattice):
    assert len(branch_lattice) == 8
    assert branch_lattice.sets == powerset_lattice(g_branch)
    assert branch_lattice.generator_flags[fz("v")] == "singleton"
    assert branch_lattice.generator_flags[fz("u", "w")] == "edge-range"
    assert branch_lattice.generator_flags[fz("u", "v")] == "derived"
    assert fz("v", "w") in branch_lattice
    assert fz() in branch_lattice
    assert len(branch_lattice.nonempty()) == 7


def test_lattice_sizes_on_fixtures(g_loop, g_split):
    assert len(generate_lattice(g_loop)) == 2
    assert len(generate_lattice(g_split)) == 4


def test_lattice_closure_and_oracle_on_random_graphs():
    rng = random.Random(27)
    for _ in range(20):
        g = random_ultragraph(rng)
        lat = generate_lattice(g)
        assert lat.sets == powerset_lattice(g)
        for a in lat.sets:
            for b in lat.sets:
                assert (a | b) in lat
                assert (a & b) in lat


def test_lattice_size_guards(g_branch):
    with pytest.raises(ValueError):
        generate_lattice(g_branch, max_size=6)
    with pytest.raises(SizeLimitError):
        generate_lattice(g_branch, max_size=7)


def test_emitted_edges(g_branch):
    assert emitted_edges(g_branch, fz("v")) == fz("e")
    assert emitted_edges(g_branch, fz("w", "u")) == fz("f", "g")
    assert emitted_edges(g_branch, frozenset()) == frozenset()


def test_no_infinite_emitters(g_branch):
    for A in generate_lattice(g_branch).sets:
        assert not is_infinite_emitter(g_branch, A)
    with pytest.raises(ValueError):
        is_infinite_emitter(g_branch, fz("nope"))


def test_ultrasets_are_exactly_singletons(g_branch, branch_lattice):
    for A in branch_lattice.nonempty():
        assert is_ultraset(g_branch, branch_lattice, A) == (len(A) == 1)
    with pytest.raises(ValueError):
        is_ultraset(g_branch, branch_lattice, frozenset())
    with pytest.raises(ValueError):
        is_ultraset(g_branch, branch_lattice, fz("x", "y"))


def test_reaches_branch(g_branch):
    for a in "vwu":
        for b in "vwu":
            assert reaches(g_branch, a, b)
    assert reachable_from(g_branch, "v") == fz("v", "w", "u")


def test_reaches_split(g_split):
    assert reaches(g_split, "a", "a")
    assert not reaches(g_split, "a", "b")
    assert reachable_from(g_split, "b") == fz("b")
    with pytest.raises(ValueError):
        reaches(g_split, "a", "zz")


def test_reaches_set_returns_shortest_witness(g_branch):
    assert reaches_set(g_branch, "v", fz("w", "u")) == ("e",)
    assert reaches_set(g_branch, "v", fz("v")) == ("e", "f")
    assert reaches_set(g_branch, "w", fz("u")) == ("f", "e")


def test_reaches_set_none_when_unreachable(g_split):
    assert reaches_set(g_split, "a", fz("b")) is None
    with pytest.raises(ValueError):
        reaches_set(g_split, "a", frozenset())
