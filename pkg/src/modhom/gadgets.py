"""Partially labelled gadget graphs and their verification.

Gadget-local layout: distinguished vertices first (``s = 0``, ``t = 1`` for
edge gadgets; the single distinguished vertex is 0 for vertex gadgets),
then the path vertices ``v_i``, then their pendants ``u_i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, Walk, is_nc_walk, is_square_free, is_walk
from .homs import DEFAULT_BUDGET, count_extensions, iter_homs
from .residue import check_prime

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class LabelledGraph:
    """A graph with a partial pinning into a target graph and optional
    distinguished vertices ``s`` and ``t``."""

    graph: Graph
    pins: dict[int, int] = field(default_factory=dict)
    s: int | None = None
    t: int | None = None

    def __post_init__(self):
        for v in (self.s, self.t):
            if v is not None and not 0 <= v < self.graph.n:
                raise ValueError(f"distinguished vertex {v} out of range")
            if v is not None and v in self.pins:
                raise ValueError(f"distinguished vertex {v} is pinned")
        for x in self.pins:
            if not 0 <= x < self.graph.n:
                raise ValueError(f"pinned vertex {x} out of range")

    def with_pins(self, extra: dict[int, int]) -> dict[int, int]:
        return {**self.pins, **extra}

    def to_dict(self) -> dict:
        doc: dict = {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "pins": {str(x): y for x, y in sorted(self.pins.items())},
        }
        if self.s is not None:
            doc["s"] = self.s
        if self.t is not None:
            doc["t"] = self.t
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> LabelledGraph:
        graph = Graph(doc["n"], [tuple(e) for e in doc["edges"]])
        pins = {int(x): int(y) for x, y in doc.get("pins", {}).items()}
        return cls(graph, pins, doc.get("s"), doc.get("t"))


@dataclass(frozen=True)
class HardnessGadget:
    delta1: frozenset[int]
    delta2: frozenset[int]
    d1: int
    d2: int
    jl: LabelledGraph
    jr: LabelledGraph
    k: LabelledGraph
    p: int | None = None

    def __post_init__(self):
        if self.d1 not in self.delta1 or self.d2 not in self.delta2:
            raise ValueError("designated vertices must lie in their sets")
        if self.jl.s is None or self.jr.t is None or self.k.s is None or self.k.t is None:
            raise ValueError("gadgets are missing distinguished vertices")
        if self.p is not None:
            check_prime(self.p)
            for delta in (self.delta1, self.delta2):
                if (len(delta) - 1) % self.p == 0:
                    raise ValueError(f"|delta| - 1 = {len(delta) - 1} vanishes mod {self.p}")

    def lambdas(self, p: int) -> tuple[int, int]:
        return (len(self.delta1) - 1) % p, (len(self.delta2) - 1) % p

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "delta1": sorted(self.delta1),
            "delta2": sorted(self.delta2),
            "d1": self.d1,
            "d2": self.d2,
            "JL": self.jl.to_dict(),
            "JR": self.jr.to_dict(),
            "K": self.k.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> HardnessGadget:
        return cls(
            frozenset(doc["delta1"]),
            frozenset(doc["delta2"]),
            doc["d1"],
            doc["d2"],
            LabelledGraph.from_dict(doc["JL"]),
            LabelledGraph.from_dict(doc["JR"]),
            LabelledGraph.from_dict(doc["K"]),
            doc.get("p"),
        )


# ---------------------------------------------------------------------------
# constructors


def build_edge_gadget(h: Graph, w: Sequence[int]) -> LabelledGraph:
    """Path ``s v_1 .. v_{k-1} t`` with each ``v_i`` carrying a pendant
    ``u_i`` pinned to ``w[i]``. A single edge walk gives the bare edge s-t."""
    w = tuple(w)
    if len(w) < 2:
        raise ValueError("edge gadget needs a walk of length at least 1")
    if not is_nc_walk(h, w):
        raise ValueError(f"{list(w)} is not an nc-walk")
    k = len(w) - 1
    s, t = 0, 1
    v = [None] + [i + 1 for i in range(1, k)]
    u = [None] + [k + i for i in range(1, k)]
    chain = [s] + v[1:] + [t]
    edges = list(zip(chain, chain[1:])) + [(v[i], u[i]) for i in range(1, k)]
    pins = {u[i]: w[i] for i in range(1, k)}
    return LabelledGraph(Graph(2 * k, edges), pins, s=s, t=t)


def build_vertex_gadget_pinned_edge(h: Graph, alpha: int, side: str = LEFT) -> LabelledGraph:
    """A single edge from the distinguished vertex to a vertex pinned at
    ``alpha``; the distinguished vertex then ranges over ``N(alpha)``."""
    if not 0 <= alpha < h.n:
        raise ValueError(f"{alpha} is not a vertex of the target graph")
    graph = Graph(2, [(0, 1)])
    if side == LEFT:
        return LabelledGraph(graph, {1: alpha}, s=0)
    if side == RIGHT:
        return LabelledGraph(graph, {1: alpha}, t=0)
    raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")


def _check_cycle(h: Graph, c: Sequence[int]) -> None:
    if len(c) < 4 or c[0] != c[-1]:
        raise ValueError(f"{list(c)} is not a closed walk of length >= 3")
    if len(set(c[:-1])) != len(c) - 1:
        raise ValueError(f"{list(c)} is not a simple cycle")
    if not is_walk(h, c):
        raise ValueError(f"{list(c)} is not a cycle of the target graph")


def build_vertex_gadget_cycle(h: Graph, c: Sequence[int], side: str = LEFT) -> LabelledGraph:
    """Cycle ``s v_1 .. v_k s`` with pendants ``u_i`` pinned to ``gamma_i``
    and an extra pendant ``x`` at ``s`` pinned to ``theta``, for the cycle
    ``c = theta gamma_1 .. gamma_k theta``."""
    c = tuple(c)
    _check_cycle(h, c)
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    theta, gammas = c[0], c[1:-1]
    k = len(gammas)
    s = 0
    v = [None] + list(range(1, k + 1))
    u = [None] + [k + i for i in range(1, k + 1)]
    x = 2 * k + 1
    edges = [(v[i], v[i + 1]) for i in range(1, k)]
    edges += [(v[i], u[i]) for i in range(1, k + 1)]
    edges += [(s, v[1]), (v[k], s), (s, x)]
    pins = {u[i]: gammas[i - 1] for i in range(1, k + 1)}
    pins[x] = theta
    graph = Graph(2 * k + 2, edges)
    if side == LEFT:
        return LabelledGraph(graph, pins, s=s)
    return LabelledGraph(graph, pins, t=s)


# ---------------------------------------------------------------------------
# verification


@dataclass
class ConditionResult:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    note: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"({self.name}) {status}"
        if self.note:
            text += f": {self.note}"
        if self.witnesses:
            text += f" witnesses={self.witnesses[:5]}"
        return text


@dataclass
class GadgetReport:
    p: int
    conditions: dict[str, ConditionResult] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def failed(self) -> list[str]:
        return [name for name, c in self.conditions.items() if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.conditions.values()] + [f"warning: {w}" for w in self.warnings]


def glue_single_edge(g: HardnessGadget) -> tuple[LabelledGraph, int, int]:
    """``J_L`` and ``J_R`` attached to the ends of one copy of ``K``:
    the labelled graph built for a single-edge bipartite instance.
    Returns it with the ids of ``s`` and ``t``."""
    k = g.k
    n = k.graph.n
    edges = list(k.graph.edges())
    pins = dict(k.pins)

    def attach(gadget: LabelledGraph, anchor_local: int, anchor: int):
        nonlocal n
        ids = {}
        for x in range(gadget.graph.n):
            if x == anchor_local:
                ids[x] = anchor
            else:
                ids[x] = n
                n += 1
        edges.extend((ids[a], ids[b]) for a, b in gadget.graph.edges())
        pins.update({ids[a]: y for a, y in gadget.pins.items()})

    attach(g.jl, g.jl.s, k.s)
    attach(g.jr, g.jr.t, k.t)
    return LabelledGraph(Graph(n, edges), pins, s=k.s, t=k.t), k.s, k.t


def verify_hardness_gadget(
    h: Graph, g: HardnessGadget, p: int, budget: int | None = DEFAULT_BUDGET
) -> GadgetReport:
    """Check the seven hardness-gadget conditions by exhaustive counting.

    Nothing the constructor believes about the gadget is trusted: image
    sets come from enumerating homomorphisms and counts from the generic
    counter.

    Range confinement for ``K`` is checked with the vertex gadgets attached
    to its ends. On its own, ``s`` only touches ``v_1`` and can land outside
    ``delta1``; the unattached image sets are recorded in ``info``.
    """
    check_prime(p)
    report = GadgetReport(p)
    if not is_square_free(h):
        report.warnings.append("target graph is not square-free")
    d1, d2 = set(g.delta1), set(g.delta2)

    def exact(lg: LabelledGraph, extra: dict[int, int]) -> int:
        return count_extensions(lg.graph, h, lg.with_pins(extra), budget=budget)

    # (i)
    bad = [(name, len(d) - 1) for name, d in (("delta1", d1), ("delta2", d2)) if (len(d) - 1) % p == 0]
    report.conditions["i"] = ConditionResult("i", not bad, bad)

    # (ii)
    jl_images = {sigma[g.jl.s] for sigma in iter_homs(g.jl.graph, h, g.jl.pins, budget=budget)}
    jr_images = {sigma[g.jr.t] for sigma in iter_homs(g.jr.graph, h, g.jr.pins, budget=budget)}
    glued, s, t = glue_single_edge(g)
    k_images = {(sig[s], sig[t]) for sig in iter_homs(glued.graph, h, glued.pins, budget=budget)}
    witnesses = [("JL", a) for a in sorted(jl_images - d1)]
    witnesses += [("JR", a) for a in sorted(jr_images - d2)]
    witnesses += [("K", a, b) for a, b in sorted(k_images) if a not in d1 or b not in d2]
    report.conditions["ii"] = ConditionResult("ii", not witnesses, witnesses)
    k_alone = list(iter_homs(g.k.graph, h, g.k.pins, budget=budget))
    report.info["K_unattached_s_images"] = sorted({sig[g.k.s] for sig in k_alone})
    report.info["K_unattached_t_images"] = sorted({sig[g.k.t] for sig in k_alone})

    # (iii): both vertex gadgets, counts 1 mod p on delta and exactly 0 off it
    witnesses = []
    for name, lg, anchor, delta in (("JL", g.jl, g.jl.s, d1), ("JR", g.jr, g.jr.t, d2)):
        for gamma in range(h.n):
            count = exact(lg, {anchor: gamma})
            if gamma in delta and count % p != 1:
                witnesses.append((name, gamma, count))
            elif gamma not in delta and count != 0:
                witnesses.append((name, gamma, count))
    report.conditions["iii"] = ConditionResult("iii", not witnesses, witnesses)

    ks, kt = g.k.s, g.k.t
    # (iv)
    witnesses = []
    for w1 in sorted(d1 - {g.d1}):
        for w2 in sorted(d2 - {g.d2}):
            count = exact(g.k, {ks: w1, kt: w2})
            if count != 0:
                witnesses.append((w1, w2, count))
    report.conditions["iv"] = ConditionResult("iv", not witnesses, witnesses)
    # (v)
    witnesses = []
    for w1 in sorted(d1 - {g.d1}):
        count = exact(g.k, {ks: w1, kt: g.d2})
        if count % p != 1:
            witnesses.append((w1, g.d2, count))
    report.conditions["v"] = ConditionResult("v", not witnesses, witnesses)
    # (vi)
    witnesses = []
    for w2 in sorted(d2 - {g.d2}):
        count = exact(g.k, {ks: g.d1, kt: w2})
        if count % p != 1:
            witnesses.append((g.d1, w2, count))
    report.conditions["vi"] = ConditionResult("vi", not witnesses, witnesses)
    # (vii)
    count = exact(g.k, {ks: g.d1, kt: g.d2})
    report.conditions["vii"] = ConditionResult(
        "vii", count % p == 1, [] if count % p == 1 else [(g.d1, g.d2, count)]
    )
    return report


@dataclass
class ShiftingReport:
    walk: Walk
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_shifting(h: Graph, w: Sequence[int]) -> ShiftingReport:
    """Pin ``s`` to a neighbour of ``gamma_0`` other than ``gamma_1``: every
    homomorphism must then send ``v_i`` to ``gamma_{i-1}``. Symmetrically at
    the ``t`` end with ``v_i -> gamma_{i+1}``."""
    w = tuple(w)
    if len(w) < 3:
        raise ValueError("shifting needs a walk of length at least 2")
    k = len(w) - 1
    gadget = build_edge_gadget(h, w)
    report = ShiftingReport(w)
    ends = (
        ("s", gadget.s, h.adj[w[0]] - {w[1]}, lambda i: w[i - 1]),
        ("t", gadget.t, h.adj[w[k]] - {w[k - 1]}, lambda i: w[i + 1]),
    )
    for end, anchor, thetas, expected in ends:
        for theta in sorted(thetas):
            for sigma in iter_homs(gadget.graph, h, gadget.with_pins({anchor: theta})):
                report.checked += 1
                # v_i has gadget id i + 1
                for i in range(1, k):
                    if sigma[i + 1] != expected(i):
                        report.violations.append((end, theta, i, sigma[i + 1], expected(i)))
    return report


@dataclass
class FormulaReport:
    walk: Walk
    p: int
    rows: list[tuple[int, int, int, int, int]] = field(default_factory=list)

    @property
    def failures(self):
        return [r for r in self.rows if r[3] != r[4]]

    @property
    def ok(self) -> bool:
        return not self.failures


def walk_count_formula(h: Graph, w: Sequence[int]) -> int:
    """``1 + sum over interior walk vertices of (deg - 1)``."""
    return 1 + sum(h.degree(g) - 1 for g in w[1:-1])


def count_formula_check(h: Graph, w: Sequence[int], p: int) -> FormulaReport:
    """Brute-force the four pinned counts of the edge gadget over ``w``.

    Rows are ``(item, s image, t image, count, expected)``: 0 with both ends
    pinned off the walk, 1 with one end on ``gamma_1`` / ``gamma_{k-1}``, and
    the closed-form value with both on.
    """
    check_prime(p)
    w = tuple(w)
    gadget = build_edge_gadget(h, w)
    k = len(w) - 1
    s, t = gadget.s, gadget.t
    omega_s = sorted(h.adj[w[0]] - {w[1]})
    omega_t = sorted(h.adj[w[k]] - {w[k - 1]})
    report = FormulaReport(w, p)

    def count(a, b):
        return count_extensions(gadget.graph, h, gadget.with_pins({s: a, t: b}))

    for a in omega_s:
        for b in omega_t:
            report.rows.append((1, a, b, count(a, b), 0))
    for b in omega_t:
        report.rows.append((2, w[1], b, count(w[1], b), 1))
    for a in omega_s:
        report.rows.append((3, a, w[k - 1], count(a, w[k - 1]), 1))
    report.rows.append((4, w[1], w[k - 1], count(w[1], w[k - 1]), walk_count_formula(h, w)))
    return report
