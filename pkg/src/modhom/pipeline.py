"""Tractability classification and hardness-gadget assembly.

For a connected square-free target with no automorphism of order ``p`` that
is not a star, the gadget is chosen from the vertices whose degree is not
1 mod p:

* two or more: pinned-edge vertex gadgets at the closest such pair, edge
  gadget along a shortest path between them;
* exactly one (``theta``) on a cycle: edge gadget around a shortest cycle
  through it;
* exactly one, on no cycle: edge gadget along a walk that runs from
  ``theta`` to a shortest cycle, around it, and back;
* none: everything built on a shortest cycle, with cycle vertex gadgets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .automorphisms import (
    DEFAULT_MAX_VERTICES,
    ReductionTrace,
    find_order_p_automorphism,
    reduce_to_hstar,
)
from .graph import (
    Graph,
    Walk,
    bfs_distances,
    is_connected,
    is_square_free,
    is_star,
    is_tree,
    shortest_cycle,
    shortest_cycle_through,
    shortest_path,
)
from .gadgets import (
    LEFT,
    RIGHT,
    HardnessGadget,
    build_edge_gadget,
    build_vertex_gadget_cycle,
    build_vertex_gadget_pinned_edge,
    verify_hardness_gadget,
)
from .residue import check_prime

CASE1 = "case1"
CASE2_1 = "case2.1"
CASE2_2 = "case2.2"
CASE3 = "case3"


class Unsupported(ValueError):
    """The input lies outside what the case analysis handles."""


class InternalError(RuntimeError):
    """A construction that should always succeed did not."""


@dataclass(frozen=True)
class CaseSelection:
    variant: str
    walk: Walk
    alpha: int | None = None
    beta: int | None = None
    theta: int | None = None
    cycle: Walk | None = None
    path: Walk | None = None


def odd_degree_set(h: Graph, p: int) -> list[int]:
    """Vertices whose degree is not 1 mod p."""
    return [v for v in h.vertices() if h.degree(v) % p != 1]


def _check_preconditions(h: Graph, p: int, max_vertices: int) -> None:
    check_prime(p)
    if h.n == 0 or not is_connected(h):
        raise Unsupported("target graph is not connected")
    if not is_square_free(h):
        raise Unsupported("target graph is not square-free")
    if is_star(h):
        raise Unsupported("target graph is a star")
    if find_order_p_automorphism(h, p, max_vertices) is not None:
        raise Unsupported(f"target graph has an automorphism of order {p}")


def _rotate_cycle(cycle: Walk, start: int) -> Walk:
    # cycle is closed (first == last); re-anchor at `start`, pick the
    # lexicographically smaller orientation
    ring = list(cycle[:-1])
    i = ring.index(start)
    ring = ring[i:] + ring[:i]
    backwards = [ring[0]] + ring[1:][::-1]
    best = min(ring, backwards)
    return tuple(best) + (start,)


def select_case(h: Graph, p: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> CaseSelection:
    _check_preconditions(h, p, max_vertices)
    special = odd_degree_set(h, p)

    if len(special) >= 2:
        best = None
        for a in special:
            dist = bfs_distances(h, a)
            for b in special:
                if b > a and (best is None or (dist[b], a, b) < best):
                    best = (dist[b], a, b)
        _, alpha, beta = best
        path = shortest_path(h, alpha, beta)
        return CaseSelection(CASE1, path, alpha=alpha, beta=beta, path=path)

    if is_tree(h):
        raise InternalError(
            "tree with no order-p automorphism, not a star, and fewer than two "
            "vertices of degree != 1 mod p"
        )

    if len(special) == 1:
        theta = special[0]
        cycle = shortest_cycle_through(h, theta)
        if cycle is not None:
            return CaseSelection(CASE2_1, cycle, theta=theta, cycle=cycle)
        base = shortest_cycle(h)
        dist = bfs_distances(h, theta)
        gamma0 = min(set(base[:-1]), key=lambda v: (dist[v], v))
        cycle = _rotate_cycle(base, gamma0)
        path = shortest_path(h, gamma0, theta)
        walk = path[::-1] + cycle[1:] + path[1:]
        return CaseSelection(CASE2_2, walk, theta=theta, cycle=cycle, path=path)

    cycle = shortest_cycle(h)
    return CaseSelection(CASE3, cycle, theta=cycle[0], cycle=cycle)


def gadget_for_case(h: Graph, p: int, sel: CaseSelection) -> HardnessGadget:
    k = build_edge_gadget(h, sel.walk)
    w = sel.walk
    if sel.variant == CASE1:
        jl = build_vertex_gadget_pinned_edge(h, sel.alpha, LEFT)
        jr = build_vertex_gadget_pinned_edge(h, sel.beta, RIGHT)
        return HardnessGadget(h.adj[sel.alpha], h.adj[sel.beta], w[1], w[-2], jl, jr, k, p)
    if sel.variant in (CASE2_1, CASE2_2):
        jl = build_vertex_gadget_pinned_edge(h, sel.theta, LEFT)
        jr = build_vertex_gadget_pinned_edge(h, sel.theta, RIGHT)
        delta = h.adj[sel.theta]
        return HardnessGadget(delta, delta, w[1], w[-2], jl, jr, k, p)
    if sel.variant == CASE3:
        jl = build_vertex_gadget_cycle(h, sel.cycle, LEFT)
        jr = build_vertex_gadget_cycle(h, sel.cycle, RIGHT)
        delta = frozenset({w[1], w[-2]})
        return HardnessGadget(delta, delta, w[1], w[-2], jl, jr, k, p)
    raise ValueError(f"unknown case {sel.variant!r}")


def build_hardness_gadget(
    h: Graph, p: int, max_vertices: int = DEFAULT_MAX_VERTICES, verify: bool = True
) -> HardnessGadget:
    sel = select_case(h, p, max_vertices)
    gadget = gadget_for_case(h, p, sel)
    if verify:
        report = verify_hardness_gadget(h, gadget, p)
        if not report.ok:
            raise InternalError(
                f"{sel.variant} gadget failed conditions {report.failed()}: {report.lines()}"
            )
    return gadget


TRACTABLE = "tractable"
HARD = "hard"
UNSUPPORTED = "unsupported"


@dataclass
class Classification:
    verdict: str
    p: int
    trace: ReductionTrace | None = None
    star: tuple[int, int] | None = None
    gadget: HardnessGadget | None = None
    lambda1: int | None = None
    lambda2: int | None = None
    reason: str | None = None

    @property
    def derived(self) -> Graph | None:
        return None if self.trace is None else self.trace.final

    def to_dict(self) -> dict:
        doc: dict = {"verdict": self.verdict}
        if self.star is not None:
            doc["star"] = {"a": self.star[0], "b": self.star[1]}
        if self.gadget is not None:
            doc["gadget"] = self.gadget.to_dict()
        if self.lambda1 is not None:
            doc["lambda1"] = self.lambda1
            doc["lambda2"] = self.lambda2
        doc["trace"] = [] if self.trace is None else self.trace.lines()
        if self.reason is not None:
            doc["reason"] = self.reason
        if self.trace is not None:
            final = self.trace.final
            doc["derived"] = {
                "n": final.n,
                "edges": [list(e) for e in final.edges()],
                "origin": self.trace.origin,
            }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def star_parameters(h: Graph) -> tuple[int, int]:
    if h.n == 0:
        return (0, 0)
    return (1, h.n - 1)


def classify(h: Graph, p: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Classification:
    check_prime(p)
    if not is_square_free(h):
        return Classification(UNSUPPORTED, p, reason="not square-free; outside the classified family")
    hstar, trace = reduce_to_hstar(h, p, max_vertices)
    if is_star(hstar):
        return Classification(TRACTABLE, p, trace, star=star_parameters(hstar))
    if not is_connected(hstar):
        return Classification(
            UNSUPPORTED, p, trace, reason="derived graph is disconnected and not a star"
        )
    gadget = build_hardness_gadget(hstar, p, max_vertices)
    l1, l2 = gadget.lambdas(p)
    return Classification(HARD, p, trace, gadget=gadget, lambda1=l1, lambda2=l2)


def check_tree_degree_lemma(h: Graph, p: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> bool:
    """For a non-star tree without an automorphism of order ``p``: are there
    at least two vertices of degree not 1 mod p?"""
    check_prime(p)
    if not is_tree(h):
        raise Unsupported("graph is not a tree")
    if is_star(h):
        raise Unsupported("tree is a star")
    if find_order_p_automorphism(h, p, max_vertices) is not None:
        raise Unsupported(f"tree has an automorphism of order {p}")
    return len(odd_degree_set(h, p)) >= 2
