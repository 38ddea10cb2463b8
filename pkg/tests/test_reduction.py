import json
from functools import lru_cache

import pytest

import oracles
from fixtures import C5, CASE1_FAR, CASE22, CASE3_GRAPH, K2, K33_MINUS_EDGE, P3, T1, atlas
from modhom.graph import BipartiteInstance, Graph, GraphFormatError, bipartition
from modhom.homs import count_homs_labelled, iter_homs
from modhom.pipeline import build_hardness_gadget
from modhom.reduction import (
    build_reduction_graph,
    chi_of_hom,
    parse_pins,
    serialize_pins,
    verify_reduction,
)

FIXTURES = {
    "c5": (C5, 3),
    "t1": (T1, 3),
    "case22": (CASE22, 3),
    "case1_far": (CASE1_FAR, 2),
    "case3": (CASE3_GRAPH, 2),
}


@lru_cache(maxsize=None)
def gadget(name):
    h, p = FIXTURES[name]
    return build_hardness_gadget(h, p)


def _bip(g, left):
    left = frozenset(left)
    return BipartiteInstance(g, left, frozenset(range(g.n)) - left)


EDGE = _bip(K2, {0})


@lru_cache(maxsize=None)
def bipartite_atlas(max_n):
    return tuple(b for b in map(bipartition, atlas(max_n)) if isinstance(b, BipartiteInstance))


# -- construction --------------------------------------------------------------


def test_single_edge_with_t1_gadget():
    red = build_reduction_graph(EDGE, gadget("t1"))
    # the triangle walk has length 3, so K brings two path and two pendant vertices
    assert red.gprime.graph.n == 2 + 1 + 1 + 4
    kinds = [c.kind for c in red.gadget_copies]
    assert kinds == ["JL", "JR", "K"]
    assert red.gadget_copies[2].vertices[:2] == (0, 1)


def test_lone_left_vertex_counts_delta():
    b = _bip(Graph(1), {0})
    for name in FIXTURES:
        g = gadget(name)
        h, p = FIXTURES[name]
        red = build_reduction_graph(b, g)
        assert red.gprime.graph == g.jl.graph
        assert count_homs_labelled(red.gprime, h, p) == len(g.delta1) % p


def test_empty_instance():
    red = build_reduction_graph(_bip(Graph(0), set()), gadget("t1"))
    assert red.gprime.graph.n == 0 and red.gadget_copies == []
    assert count_homs_labelled(red.gprime, T1, 3) == 1


def test_size_formula_and_disjoint_pins():
    for name in FIXTURES:
        g = gadget(name)
        for b in bipartite_atlas(6):
            red = build_reduction_graph(b, g)
            want = (
                len(b.left) * g.jl.graph.n
                + len(b.right) * g.jr.graph.n
                + b.graph.m * (g.k.graph.n - 2)
            )
            assert red.gprime.graph.n == want
            domains = [set(c.vertices) - set(c.anchor) for c in red.gadget_copies]
            assert sum(map(len, domains)) == len(set().union(*domains)) if domains else True
            pinned = sum(
                len({"JL": g.jl, "JR": g.jr, "K": g.k}[c.kind].pins) for c in red.gadget_copies
            )
            assert len(red.gprime.pins) == pinned


def test_provenance_and_pin_files():
    red = build_reduction_graph(_bip(P3, {0, 2}), gadget("c5"))
    doc = json.loads(red.provenance_json())
    assert list(doc) == ["vertex_map", "gadget_copies"]
    assert doc["vertex_map"] == {"0": 0, "1": 1, "2": 2}
    assert [c["kind"] for c in doc["gadget_copies"]] == ["JL", "JL", "JR", "K", "K"]
    assert parse_pins(serialize_pins(red.gprime.pins)) == red.gprime.pins


def test_pin_file_errors():
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_pins("0 1\n0 2\n")
    with pytest.raises(GraphFormatError):
        parse_pins("0 1 2\n")
    with pytest.raises(GraphFormatError):
        parse_pins("a b\n")
    assert parse_pins("# comment\n\n3 4\n") == {3: 4}


# -- chi ----------------------------------------------------------------------


def _all_sigmas(b, name):
    h, _ = FIXTURES[name]
    red = build_reduction_graph(b, gadget(name))
    return red, list(iter_homs(red.gprime.graph, h, red.gprime.pins))


def test_chi_empty_when_everything_is_designated():
    g = gadget("t1")
    red, sigmas = _all_sigmas(EDGE, "t1")
    at_delta = [s for s in sigmas if s[0] == g.d1 and s[1] == g.d2]
    assert at_delta
    assert all(chi_of_hom(s, EDGE, g, red, T1) == frozenset() for s in at_delta)


def test_chi_single_edge_left_moved():
    for name in ("t1", "c5", "case3"):
        g = gadget(name)
        red, sigmas = _all_sigmas(EDGE, name)
        moved = [s for s in sigmas if s[0] != g.d1]
        assert moved
        for s in moved:
            assert s[0] in g.delta1 and s[1] == g.d2
            assert chi_of_hom(s, EDGE, g, red, FIXTURES[name][0]) == {0}


def test_chi_rejects_non_homomorphisms():
    g = gadget("t1")
    red, sigmas = _all_sigmas(EDGE, "t1")
    u, v = red.gprime.graph.edges()[0]
    bad = list(sigmas[0])
    bad[u] = bad[v]  # collapses an edge: H has no loops
    with pytest.raises(ValueError):
        chi_of_hom(tuple(bad), EDGE, g, red, T1)
    moved = list(sigmas[0])
    x = min(red.gprime.pins)
    moved[x] = (moved[x] + 1) % T1.n
    with pytest.raises(ValueError):
        chi_of_hom(tuple(moved), EDGE, g, red, T1)


@pytest.mark.parametrize("name", ["t1", "c5", "case1_far"])
@pytest.mark.parametrize(
    "b",
    [EDGE, _bip(P3, {0, 2}), _bip(P3, {1}), _bip(Graph(2), {0}), _bip(Graph(4, [(0, 1), (2, 3)]), {0, 2})],
)
def test_explicit_enumeration_matches_class_audit(name, b):
    h, p = FIXTURES[name]
    g = gadget(name)
    red, sigmas = _all_sigmas(b, name)
    buckets = {}
    for s in sigmas:
        chi = chi_of_hom(s, b, g, red, h)
        buckets[chi] = buckets.get(chi, 0) + 1
    independent = set(oracles.independent_sets(b.graph))
    assert set(buckets) == independent
    report = verify_reduction(b, h, g, p)
    assert report.ok
    assert {k: v for k, v in report.classes.items() if v} == buckets
    assert report.exact_total == len(sigmas)


# -- verification --------------------------------------------------------------


def test_verify_single_edge_t1():
    report = verify_reduction(EDGE, T1, gadget("t1"), 3)
    assert report.ok and report.z == 0 and report.hom_count == 0


def test_verify_two_isolated_vertices():
    b = _bip(Graph(2), {0})
    report = verify_reduction(b, T1, gadget("t1"), 3)
    assert report.ok and report.z == 4 % 3 and len(report.classes) == 4


def test_verify_path_with_c5_gadget():
    assert verify_reduction(_bip(P3, {0, 2}), C5, gadget("c5"), 3).ok


def test_verify_k33_minus_edge_all_fixtures():
    b = bipartition(K33_MINUS_EDGE)
    for name, (h, p) in FIXTURES.items():
        report = verify_reduction(b, h, gadget(name), p)
        assert report.ok, (name, report.lines())


def test_verify_every_bipartite_graph_up_to_six_vertices():
    for name, (h, p) in FIXTURES.items():
        g = gadget(name)
        for b in bipartite_atlas(6):
            report = verify_reduction(b, h, g, p)
            assert report.ok, (name, b, report.lines())


def test_verify_detects_a_broken_gadget():
    from dataclasses import replace

    g = gadget("t1")
    bad = replace(g, d1=g.d2, d2=g.d1)  # swap the designated vertices
    report = verify_reduction(_bip(P3, {0, 2}), T1, bad, 3)
    assert not report.ok


def test_verify_budget_marks_inconclusive():
    report = verify_reduction(bipartition(K33_MINUS_EDGE), T1, gadget("t1"), 3, budget=3)
    assert report.inconclusive and not report.ok
    assert report.lines()[0].startswith("inconclusive")
