"""Homomorphism counting: exact, modulo a prime, with pinned vertices; the
weighted bipartite independent-set sum; and the closed-form counter for
complete bipartite targets.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Mapping

from .graph import BipartiteInstance, Graph, connected_components
from .residue import Residue, check_prime

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """The search visited more nodes than allowed."""


def _pin_pairs(pins) -> list[tuple[int, int]]:
    if pins is None:
        return []
    if isinstance(pins, Mapping):
        return list(pins.items())
    return [tuple(pair) for pair in pins]


def _validate_pins(g: Graph, h: Graph, pairs: list[tuple[int, int]]) -> None:
    seen = set()
    for x, y in pairs:
        if not 0 <= x < g.n:
            raise ValueError(f"pinned vertex {x} is not a vertex of the source graph")
        if not 0 <= y < h.n:
            raise ValueError(f"pin target {y} is not a vertex of the target graph")
        if x in seen:
            raise ValueError(f"vertex {x} pinned twice")
        seen.add(x)


class _ComponentCounter:
    # Backtracking with dynamic component splitting: once the assigned
    # vertices disconnect the rest, each piece is counted separately and
    # cached by the images of its assigned neighbours.

    def __init__(self, g: Graph, h: Graph, modulus: int | None, budget: int | None):
        self.g = g
        self.h = h
        self.modulus = modulus
        self.budget = budget
        self.nodes = 0
        self.assign = [-1] * g.n
        self.cache: dict = {}
        self.all_targets = frozenset(range(h.n))

    def run(self, pairs: list[tuple[int, int]]) -> int:
        g, h, assign = self.g, self.h, self.assign
        for x, y in pairs:
            assign[x] = y
        for x, _ in pairs:
            for w in g.adj[x]:
                if assign[w] != -1 and not h.has_edge(assign[x], assign[w]):
                    return 0
        free = frozenset(v for v in range(g.n) if assign[v] == -1)
        return self._count(free)

    def _reduce(self, value: int) -> int:
        return value % self.modulus if self.modulus else value

    def _components(self, free: frozenset[int]) -> list[frozenset[int]]:
        adj = self.g.adj
        remaining = set(free)
        comps = []
        while remaining:
            root = min(remaining)
            remaining.discard(root)
            comp = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if w in remaining:
                        remaining.discard(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(frozenset(comp))
        return comps

    def _count(self, free: frozenset[int]) -> int:
        total = 1
        for comp in self._components(free):
            c = self._count_component(comp)
            if c == 0:
                return 0
            total = self._reduce(total * c)
        return total

    def _candidates(self, v: int) -> frozenset[int]:
        images = {self.assign[u] for u in self.g.adj[v] if self.assign[u] != -1}
        if not images:
            return self.all_targets
        hadj = self.h.adj
        it = iter(sorted(images, key=lambda a: len(hadj[a])))
        cands = hadj[next(it)]
        for a in it:
            cands = cands & hadj[a]
        return cands

    def _count_component(self, comp: frozenset[int]) -> int:
        g, assign = self.g, self.assign
        boundary = sorted({u for v in comp for u in g.adj[v] if assign[u] != -1})
        key = (comp, tuple(assign[u] for u in boundary))
        cached = self.cache.get(key)
        if cached is not None:
            return cached

        def priority(x):
            assigned = sum(1 for u in g.adj[x] if assign[u] != -1)
            return (assigned, len(g.adj[x]), -x)

        v = max(comp, key=priority)
        cands = self._candidates(v)
        if len(comp) == 1:
            result = self._reduce(len(cands))
        else:
            rest = comp - {v}
            result = 0
            for c in sorted(cands):
                self.nodes += 1
                if self.budget is not None and self.nodes > self.budget:
                    raise BudgetExceeded(f"search exceeded {self.budget} nodes")
                assign[v] = c
                result += self._count(rest)
                assign[v] = -1
            result = self._reduce(result)
        self.cache[key] = result
        return result


def count_extensions(
    g: Graph,
    h: Graph,
    pins=None,
    modulus: int | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> int:
    """Number of homomorphisms ``g -> h`` agreeing with ``pins``.

    ``pins`` is a mapping or a sequence of ``(g_vertex, h_vertex)`` pairs.
    With ``modulus`` the count is reduced as it is accumulated.
    """
    pairs = _pin_pairs(pins)
    _validate_pins(g, h, pairs)
    return _ComponentCounter(g, h, modulus, budget).run(pairs)


def count_homs(g: Graph, h: Graph, budget: int | None = DEFAULT_BUDGET) -> int:
    """Exact ``|Hom(g, h)|``. The empty graph has one homomorphism."""
    return count_extensions(g, h, budget=budget)


def count_homs_mod(g: Graph, h: Graph, p: int, budget: int | None = DEFAULT_BUDGET) -> Residue:
    check_prime(p)
    return Residue(count_extensions(g, h, modulus=p, budget=budget), p)


def count_homs_labelled(lg, h: Graph, p: int, budget: int | None = DEFAULT_BUDGET) -> Residue:
    """Count homomorphisms of a partially labelled graph (anything with
    ``graph`` and ``pins`` attributes) extending its pinning, mod ``p``."""
    check_prime(p)
    return Residue(count_extensions(lg.graph, h, lg.pins, modulus=p, budget=budget), p)


def count_homs_pinned(
    g: Graph, h: Graph, c, p: int, budget: int | None = DEFAULT_BUDGET
) -> Residue:
    """``|Hom((g, x_1..x_r), (h, y_1..y_r))| mod p`` for pin pairs ``c``."""
    check_prime(p)
    return Residue(count_extensions(g, h, c, modulus=p, budget=budget), p)


def search_order(g: Graph, pinned: Iterable[int] = ()) -> list[int]:
    """Pinned vertices first, then BFS from the lowest unvisited id of each
    component."""
    pinned = sorted(set(pinned))
    seen = set(pinned)
    order = list(pinned)
    queue = deque(pinned)
    for root in range(g.n + 1):
        while queue:
            u = queue.popleft()
            for w in sorted(g.adj[u]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        if root < g.n and root not in seen:
            seen.add(root)
            order.append(root)
            queue.append(root)
    return order


def iter_homs(
    g: Graph, h: Graph, pins=None, budget: int | None = DEFAULT_BUDGET
) -> Iterator[tuple[int, ...]]:
    """Enumerate homomorphisms ``g -> h`` extending ``pins`` as image tuples,
    in lexicographic order of the search sequence."""
    pairs = _pin_pairs(pins)
    _validate_pins(g, h, pairs)
    pin = dict(pairs)
    order = search_order(g, pin)
    position = {v: i for i, v in enumerate(order)}
    earlier = [[w for w in g.adj[v] if position[w] < position[v]] for v in order]
    assign = [-1] * g.n
    nodes = 0

    def rec(i):
        nonlocal nodes
        if i == len(order):
            yield tuple(assign)
            return
        v = order[i]
        if v in pin:
            cands = [pin[v]]
        else:
            cands = range(h.n)
        for c in cands:
            if all(h.has_edge(c, assign[w]) for w in earlier[i]):
                nodes += 1
                if budget is not None and nodes > budget:
                    raise BudgetExceeded(f"enumeration exceeded {budget} nodes")
                assign[v] = c
                yield from rec(i + 1)
        assign[v] = -1

    yield from rec(0)


def is_homomorphism(g: Graph, h: Graph, sigma) -> bool:
    if len(sigma) != g.n or any(not 0 <= sigma[v] < h.n for v in range(g.n)):
        return False
    return all(h.has_edge(sigma[u], sigma[v]) for u, v in g.edges())


def independent_sets(g: Graph) -> Iterator[frozenset[int]]:
    """All independent sets, branching on each vertex in or out."""

    def rec(i, chosen, blocked):
        if i == g.n:
            yield frozenset(chosen)
            return
        yield from rec(i + 1, chosen, blocked)
        if i not in blocked:
            chosen.append(i)
            yield from rec(i + 1, chosen, blocked | g.adj[i])
            chosen.pop()

    yield from rec(0, [], frozenset())


def count_z_bis(b: BipartiteInstance, lambda1: Residue, lambda2: Residue) -> Residue:
    """Sum over independent sets I of ``lambda1^|I & left| * lambda2^|I & right|``."""
    if lambda1.modulus != lambda2.modulus:
        raise ValueError(f"moduli differ: {lambda1.modulus} vs {lambda2.modulus}")
    p = lambda1.modulus
    g = b.graph
    weight = [lambda1.value if v in b.left else lambda2.value for v in range(g.n)]

    def rec(i, blocked):
        if i == g.n:
            return 1
        total = rec(i + 1, blocked)
        if i not in blocked:
            total += weight[i] * rec(i + 1, blocked | g.adj[i])
        return total % p

    return Residue(rec(0, frozenset()), p)


def count_homs_complete_bipartite(g: Graph, a: int, b: int, p: int) -> Residue:
    """``|Hom(g, K_{a,b})| mod p`` in polynomial time.

    Per component with bipartition (L, R) there are ``a^|L| b^|R| + a^|R| b^|L|``
    homomorphisms, none if it has an odd cycle; an isolated vertex gives
    ``a + b``.
    """
    check_prime(p)
    total = 1
    for comp in connected_components(g):
        colour = {comp[0]: 0}
        queue = deque([comp[0]])
        bipartite = True
        while queue and bipartite:
            u = queue.popleft()
            for w in g.adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    bipartite = False
                    break
        if not bipartite:
            return Residue(0, p)
        left = sum(1 for v in comp if colour[v] == 0)
        right = len(comp) - left
        if right == 0:
            term = a + b
        else:
            term = pow(a, left, p) * pow(b, right, p) + pow(a, right, p) * pow(b, left, p)
        total = total * term % p
    return Residue(total, p)
