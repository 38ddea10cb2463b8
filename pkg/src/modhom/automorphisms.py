"""Automorphism enumeration and the fixed-point reduction ``H => H^{*p}``.

Repeatedly replacing ``H`` by the subgraph induced on the fixed points of an
automorphism of order ``p`` preserves ``|Hom(G, H)| mod p`` for every ``G``.
The end result has no automorphism of order ``p``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import lcm
from typing import Iterator

from .graph import Graph
from .homs import count_homs_mod
from .residue import check_prime

DEFAULT_MAX_VERTICES = 12

Automorphism = tuple[int, ...]


class GraphTooLarge(ValueError):
    """Automorphism enumeration refused: graph exceeds the size bound."""


def refined_colours(h: Graph) -> list[int]:
    """Stable colour refinement starting from degrees. Automorphisms
    preserve these colours."""
    colours = [h.degree(v) for v in range(h.n)]
    while True:
        signature = [(colours[v], tuple(sorted(colours[w] for w in h.adj[v]))) for v in range(h.n)]
        palette = {sig: i for i, sig in enumerate(sorted(set(signature)))}
        new = [palette[s] for s in signature]
        if len(set(new)) == len(set(colours)):
            return new
        colours = new


def iter_automorphisms(h: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> Iterator[Automorphism]:
    """Yield automorphisms in lexicographic order of their image tuples."""
    if h.n > max_vertices:
        raise GraphTooLarge(f"{h.n} vertices exceeds the enumeration bound {max_vertices}")
    n = h.n
    colours = refined_colours(h)
    by_colour: dict[int, list[int]] = {}
    for v in range(n):
        by_colour.setdefault(colours[v], []).append(v)
    image = [-1] * n
    used = [False] * n

    def rec(v):
        if v == n:
            yield tuple(image)
            return
        for c in by_colour[colours[v]]:
            if used[c]:
                continue
            if any(h.has_edge(v, w) != h.has_edge(c, image[w]) for w in range(v)):
                continue
            image[v] = c
            used[c] = True
            yield from rec(v + 1)
            used[c] = False
        image[v] = -1

    yield from rec(0)


def enumerate_automorphisms(h: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[Automorphism]:
    return list(iter_automorphisms(h, max_vertices))


def is_automorphism(h: Graph, perm) -> bool:
    if sorted(perm) != list(range(h.n)):
        return False
    return all(h.has_edge(perm[u], perm[v]) for u, v in h.edges())


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """``a`` after ``b``."""
    return tuple(a[x] for x in b)


def inverse(a: Automorphism) -> Automorphism:
    inv = [0] * len(a)
    for x, y in enumerate(a):
        inv[y] = x
    return tuple(inv)


def automorphism_order(perm: Automorphism) -> int:
    """Least k >= 1 with perm^(k) = id: the lcm of the cycle lengths."""
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = lcm(order, length)
    return order


def find_order_p_automorphism(
    h: Graph, p: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> Automorphism | None:
    """Lexicographically smallest automorphism of exact order ``p``."""
    check_prime(p)
    for perm in iter_automorphisms(h, max_vertices):
        if automorphism_order(perm) == p:
            return perm
    return None


def fixed_point_subgraph(h: Graph, perm: Automorphism) -> tuple[Graph, list[int]]:
    """Subgraph induced on the fixed points of ``perm``, relabelled in
    increasing order; also returns the kept original ids."""
    if not is_automorphism(h, perm):
        raise ValueError(f"{list(perm)} is not an automorphism")
    return h.induced_subgraph(v for v in range(h.n) if perm[v] == v)


@dataclass(frozen=True)
class ReductionStep:
    perm: Automorphism
    fixed: tuple[int, ...]
    graph: Graph


@dataclass
class ReductionTrace:
    initial: Graph
    steps: list[ReductionStep] = field(default_factory=list)
    # origin[i] is the id in `initial` of vertex i of `final`
    origin: list[int] = field(default_factory=list)

    @property
    def final(self) -> Graph:
        return self.steps[-1].graph if self.steps else self.initial

    def lines(self) -> list[str]:
        return [
            f"step {i}: pi={_fmt(s.perm)} fix={_fmt(s.fixed)} -> n'={s.graph.n}"
            for i, s in enumerate(self.steps, start=1)
        ]

    def to_text(self) -> str:
        return "".join(line + "\n" for line in self.lines())


def _fmt(ids) -> str:
    return "[" + ",".join(str(i) for i in ids) + "]"


def reduce_to_hstar(
    h: Graph, p: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> tuple[Graph, ReductionTrace]:
    check_prime(p)
    trace = ReductionTrace(initial=h, origin=list(range(h.n)))
    current = h
    while True:
        perm = find_order_p_automorphism(current, p, max_vertices)
        if perm is None:
            return current, trace
        current, kept = fixed_point_subgraph(current, perm)
        trace.steps.append(ReductionStep(perm, tuple(kept), current))
        trace.origin = [trace.origin[v] for v in kept]


def random_graph(rng: random.Random, max_vertices: int, edge_prob: float = 0.5) -> Graph:
    n = rng.randint(1, max_vertices)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob]
    return Graph(n, edges)


@dataclass
class CongruenceReport:
    h: Graph
    hstar: Graph
    p: int
    checked: int = 0
    counterexamples: list[tuple[Graph, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_hstar_congruence(
    h: Graph,
    p: int,
    samples: int,
    size_bound: int,
    seed: int = 0,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> CongruenceReport:
    """Check ``|Hom(G,h)| = |Hom(G,h*)| mod p`` on seeded random graphs ``G``."""
    hstar, _ = reduce_to_hstar(h, p, max_vertices)
    report = CongruenceReport(h, hstar, p)
    rng = random.Random(seed)
    for _ in range(samples):
        g = random_graph(rng, size_bound)
        lhs = count_homs_mod(g, h, p).value
        rhs = count_homs_mod(g, hstar, p).value
        report.checked += 1
        if lhs != rhs:
            report.counterexamples.append((g, lhs, rhs))
    return report
