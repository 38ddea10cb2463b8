"""Simple undirected graphs on dense integer vertex ids, plus the structural
queries used by the rest of the package (square-freeness, stars, 2-colouring,
shortest paths and cycles, nc-walks).

Graphs are immutable. Vertex ids are ``0..n-1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

Walk = tuple[int, ...]


class GraphFormatError(ValueError):
    """Raised when a graph file does not follow the text format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Loopless simple graph with adjacency sets."""

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self._edges: tuple[tuple[int, int], ...] | None = None

    def __repr__(self) -> str:
        return f"Graph({self.n}, {list(self.edges())})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __len__(self) -> int:
        return self.n

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v
            )
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges())

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``vertices`` relabelled to ``0..k-1`` in
        increasing order. Returns the graph and the list of kept original ids."""
        kept = sorted(set(vertices))
        index = {v: i for i, v in enumerate(kept)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph(len(kept), edges), kept

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        edges = list(self.edges()) + [(u + shift, v + shift) for u, v in other.edges()]
        return Graph(self.n + other.n, edges)


@dataclass(frozen=True)
class BipartiteInstance:
    graph: Graph
    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        if self.left & self.right:
            raise ValueError("left and right parts overlap")
        if self.left | self.right != frozenset(range(self.graph.n)):
            raise ValueError("parts do not cover the vertex set")
        for u, v in self.graph.edges():
            if (u in self.left) == (v in self.left):
                raise ValueError(f"edge ({u}, {v}) lies inside one part")

    def oriented_edges(self) -> list[tuple[int, int]]:
        """Edges as ``(x, y)`` with ``x`` on the left, sorted."""
        return sorted((u, v) if u in self.left else (v, u) for u, v in self.graph.edges())


@dataclass(frozen=True)
class OddCycle:
    """Witness that a graph is not bipartite: a closed walk of odd length."""

    cycle: Walk


# ---------------------------------------------------------------------------
# text format


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", lineno) from None


def _parse(text: str, allow_left: bool) -> tuple[Graph, list[int] | None]:
    lines = list(_data_lines(text))
    if not lines:
        raise GraphFormatError("missing header line 'n m'")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError("header must be 'n m'", lineno)
    n, m = (_parse_int(tok, lineno) for tok in parts)
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", lineno)
    body = lines[1:]
    left = None
    if body and body[0][1].split()[0] == "L":
        if not allow_left:
            raise GraphFormatError("'L' line only allowed in bipartite files", body[0][0])
        lineno, line = body[0]
        left = [_parse_int(tok, lineno) for tok in line.split()[1:]]
        for v in left:
            if not 0 <= v < n:
                raise GraphFormatError(f"vertex {v} out of range 0..{n - 1}", lineno)
        if len(set(left)) != len(left):
            raise GraphFormatError("repeated vertex in 'L' line", lineno)
        body = body[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}", where)
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("edge line must be 'u v'", lineno)
        u, v = (_parse_int(tok, lineno) for tok in parts)
        for w in (u, v):
            if not 0 <= w < n:
                raise GraphFormatError(f"vertex {w} out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append((u, v))
    return Graph(n, edges), left


def parse_graph(text: str) -> Graph:
    graph, _ = _parse(text, allow_left=False)
    return graph


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_bipartite(text: str) -> BipartiteInstance:
    """Parse a bipartite graph file. Without an ``L`` line the parts come
    from :func:`bipartition`."""
    graph, left = _parse(text, allow_left=True)
    if left is None:
        result = bipartition(graph)
        if isinstance(result, OddCycle):
            raise GraphFormatError(f"graph is not bipartite (odd cycle {list(result.cycle)})")
        return result
    left_set = frozenset(left)
    try:
        return BipartiteInstance(graph, left_set, frozenset(range(graph.n)) - left_set)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def serialize_bipartite(b: BipartiteInstance) -> str:
    g = b.graph
    lines = [f"{g.n} {g.m}", " ".join(["L"] + [str(v) for v in sorted(b.left)])]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural queries


def is_square_free(h: Graph) -> bool:
    """True iff no two distinct vertices share two common neighbours,
    i.e. ``h`` has no 4-cycle."""
    for u, v in combinations(range(h.n), 2):
        if len(h.adj[u] & h.adj[v]) > 1:
            return False
    return True


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_star(h: Graph) -> bool:
    """True iff ``h`` is ``K_{1,n}`` for some ``n >= 0``.

    The single vertex is ``K_{1,0}``. The graph with no vertices is also
    accepted: it is what the fixed-point reduction leaves behind for e.g.
    ``K_2`` at ``p = 2``, and counting into it is trivial.
    """
    if h.n <= 2:
        return h.m == h.n - 1 or h.n == 0
    if h.m != h.n - 1:
        return False
    return max(h.degree(v) for v in h.vertices()) == h.n - 1


def bipartition(g: Graph) -> BipartiteInstance | OddCycle:
    """2-colour ``g``; each component's smallest vertex goes left."""
    colour = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if colour[root] != -1:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adj[u]):
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return OddCycle(_odd_cycle_from(u, w, parent))
    left = frozenset(v for v in range(g.n) if colour[v] == 0)
    return BipartiteInstance(g, left, frozenset(range(g.n)) - left)


def _odd_cycle_from(u: int, w: int, parent: list[int]) -> Walk:
    # u, w adjacent with equal BFS colour; join their tree paths at the LCA
    path_u = [u]
    while parent[path_u[-1]] != -1:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] != -1:
        path_w.append(parent[path_w[-1]])
    anc_w = set(path_w)
    i = next(i for i, x in enumerate(path_u) if x in anc_w)
    lca = path_u[i]
    j = path_w.index(lca)
    cycle = path_u[: i + 1] + path_w[:j][::-1] + [u]
    return tuple(cycle)


def is_walk(h: Graph, w: Sequence[int]) -> bool:
    if len(w) == 0:
        return False
    if any(not 0 <= v < h.n for v in w):
        return False
    return all(h.has_edge(a, b) for a, b in zip(w, w[1:]))


def is_nc_walk(h: Graph, w: Sequence[int]) -> bool:
    """True iff the walk never steps straight back along the edge it just used."""
    if not is_walk(h, w):
        raise ValueError(f"{list(w)} is not a walk in the graph")
    return all(w[i - 1] != w[i + 1] for i in range(1, len(w) - 1))


def bfs_distances(h: Graph, source: int) -> list[int]:
    """Distances from ``source``; -1 for unreachable vertices."""
    dist = [-1] * h.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in h.adj[u]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def shortest_path(h: Graph, u: int, v: int) -> Walk | None:
    """Lexicographically smallest among the shortest ``u``-``v`` paths."""
    dist_to_v = bfs_distances(h, v)
    if dist_to_v[u] == -1:
        return None
    path = [u]
    while path[-1] != v:
        cur = path[-1]
        path.append(min(w for w in h.adj[cur] if dist_to_v[w] == dist_to_v[cur] - 1))
    return tuple(path)


def _shortest_path_avoiding(h: Graph, u: int, v: int, banned: set[int], banned_edge) -> Walk | None:
    # lexicographically smallest shortest u-v path in h minus banned vertices/edge
    def usable(a, b):
        return b not in banned and {a, b} != banned_edge

    dist = [-1] * h.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        a = queue.popleft()
        for b in h.adj[a]:
            if dist[b] == -1 and usable(a, b):
                dist[b] = dist[a] + 1
                queue.append(b)
    if dist[u] == -1:
        return None
    path = [u]
    while path[-1] != v:
        cur = path[-1]
        path.append(
            min(w for w in h.adj[cur] if dist[w] == dist[cur] - 1 and usable(cur, w))
        )
    return tuple(path)


def shortest_cycle_through(h: Graph, v: int) -> Walk | None:
    """Shortest simple cycle through ``v`` as a closed walk ``v, ..., v``.

    Ties go to the lexicographically smallest vertex sequence, so the
    second vertex is smaller than the second-to-last one.
    """
    best: Walk | None = None
    nbrs = sorted(h.adj[v])
    for a in nbrs:
        # cycle v, a, ..., b, v: shortest a-b path avoiding v and the edge va
        for b in nbrs:
            if b <= a:
                continue
            path = _shortest_path_avoiding(h, a, b, {v}, None)
            if path is None:
                continue
            cand = (v,) + path + (v,)
            if best is None or (len(cand), cand) < (len(best), best):
                best = cand
    return best


def shortest_cycle(h: Graph) -> Walk | None:
    """A shortest cycle overall (girth witness), lexicographically smallest
    as a vertex sequence; it therefore starts at its minimum vertex."""
    best: Walk | None = None
    for v in range(h.n):
        cand = shortest_cycle_through(h, v)
        if cand is not None and (best is None or (len(cand), cand) < (len(best), best)):
            best = cand
    return best


def girth(h: Graph) -> int | None:
    cycle = shortest_cycle(h)
    return None if cycle is None else len(cycle) - 1
