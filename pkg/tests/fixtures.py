"""Named target graphs and exhaustive graph families used across the suite."""

from functools import lru_cache

import networkx as nx

from modhom.graph import Graph


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n):
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


K1 = Graph(1)
K2 = complete(2)
K3 = complete(3)
K4 = complete(4)
P3 = path(3)
P4 = path(4)
C4 = cycle(4)
C5 = cycle(5)
K13 = star(3)

# triangle a=0, b=1, c=2; leaves 3, 4 on a and 5, 6 on b.
# At p=3 only c has degree != 1 mod 3 and it lies on the triangle.
T1 = Graph(7, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6)])

# Two degree-2 vertices (3 and 4) at distance 2; the rest have odd degree.
CASE1_FAR = Graph(6, [(0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 5)])

# Triangle 0,1,2 padded with leaves to degree 4; theta=3 hangs off vertex 0
# with its own leaf 5, so theta (degree 2) is on no cycle.
CASE22 = Graph(10, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (3, 5), (1, 6), (1, 7), (2, 8), (2, 9)])

# As CASE22 but theta=7 sits two steps from the triangle, behind vertex 4
# (degree 4 via leaves 5, 6).
CASE22_LONG = Graph(
    13,
    [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7), (7, 8),
     (1, 9), (1, 10), (2, 11), (2, 12)],
)

# Square-free, all degrees in {1, 3}, and no automorphism of order 2.
CASE3_GRAPH = Graph(
    12,
    [(0, 2), (0, 4), (0, 9), (1, 4), (1, 6), (1, 11), (2, 6), (2, 7), (3, 7),
     (3, 10), (3, 11), (4, 9), (5, 7), (6, 11), (8, 9)],
)

FRUCHT = Graph(
    12,
    [(0, 1), (0, 6), (0, 7), (1, 2), (1, 7), (2, 3), (2, 8), (3, 4), (3, 9),
     (4, 5), (4, 9), (5, 6), (5, 10), (6, 10), (7, 11), (8, 9), (8, 11), (10, 11)],
)

K33_MINUS_EDGE = Graph(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)])


def from_nx(G):
    mapping = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return Graph(G.number_of_nodes(), [(mapping[u], mapping[v]) for u, v in G.edges()])


@lru_cache(maxsize=None)
def atlas(max_n):
    """Every graph on 0..max_n vertices up to isomorphism (max_n <= 7)."""
    return tuple(from_nx(G) for G in nx.graph_atlas_g() if G.number_of_nodes() <= max_n)


@lru_cache(maxsize=None)
def trees(max_n):
    out = []
    for n in range(1, max_n + 1):
        out += [from_nx(T) for T in nx.nonisomorphic_trees(n)] if n > 1 else [Graph(1)]
    return tuple(out)


def random_square_free(rng, n, attempts=200):
    """A connected square-free graph on n vertices grown by random edge
    insertion (rejecting edges that close a 4-cycle)."""
    from modhom.graph import is_connected, is_square_free

    for _ in range(attempts):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        edges = []
        for e in pairs:
            if is_square_free(Graph(n, edges + [e])):
                edges.append(e)
            if len(edges) >= n + rng.randint(-1, 2):
                break
        g = Graph(n, edges)
        if is_connected(g):
            return g
    raise RuntimeError("no connected square-free graph found")


def leaf_padded(rng, p, core_n, keep_theta):
    """A random square-free core whose degrees are topped up with leaves to
    1 mod p, leaving at most one vertex (theta) untouched."""
    core = random_square_free(rng, core_n)
    edges, n = list(core.edges()), core.n
    theta = rng.randrange(core.n) if keep_theta else None
    for v in range(core.n):
        if v != theta:
            for _ in range((1 - core.degree(v)) % p):
                edges.append((v, n))
                n += 1
    return Graph(n, edges)


def leafy_cubic(rng, max_n=12):
    """A random cubic graph with a few edges cut and capped with leaves, so
    every degree stays odd."""
    base = rng.choice([6, 8, 10])
    G = nx.random_regular_graph(3, base, seed=rng.randrange(10**6))
    edges = list(G.edges())
    rng.shuffle(edges)
    cut = rng.randint(0, (max_n - base) // 2)
    kept, n = edges[cut:], base
    for u, v in edges[:cut]:
        kept += [(u, n), (v, n + 1)]
        n += 2
    return Graph(n, kept)
