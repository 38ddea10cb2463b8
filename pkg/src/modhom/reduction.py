"""From a bipartite instance ``G`` and a hardness gadget, build the partially
labelled graph ``G'`` whose homomorphism count mod p equals the weighted
independent-set sum ``Z_{l1,l2}(G)`` with ``l_i = |delta_i| - 1``; and audit
that identity class by class.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .gadgets import HardnessGadget, LabelledGraph
from .graph import BipartiteInstance, Graph, GraphFormatError
from .homs import (
    BudgetExceeded,
    count_extensions,
    count_homs_labelled,
    count_z_bis,
    independent_sets,
    is_homomorphism,
)
from .residue import Residue, check_prime

DEFAULT_ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True)
class GadgetCopy:
    kind: str  # "JL", "JR" or "K"
    anchor: tuple[int, ...]
    vertices: tuple[int, ...]  # G' ids, in gadget-local order


@dataclass
class ReductionOutput:
    gprime: LabelledGraph
    vertex_map: dict[int, int]
    gadget_copies: list[GadgetCopy]

    def provenance(self) -> dict:
        return {
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "gadget_copies": [
                {"kind": c.kind, "anchor": list(c.anchor), "vertices": list(c.vertices)}
                for c in self.gadget_copies
            ],
        }

    def provenance_json(self) -> str:
        return json.dumps(self.provenance(), indent=2)


def serialize_pins(pins: dict[int, int]) -> str:
    return "".join(f"{x} {y}\n" for x, y in sorted(pins.items()))


def parse_pins(text: str) -> dict[int, int]:
    pins: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("pin line must be 'g h'", lineno)
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None
        if x in pins:
            raise GraphFormatError(f"vertex {x} pinned twice", lineno)
        pins[x] = y
    return pins


def build_reduction_graph(b: BipartiteInstance, g: HardnessGadget) -> ReductionOutput:
    """Attach a copy of ``J_L`` at every left vertex, ``J_R`` at every right
    vertex, and replace each edge ``xy`` by a copy of ``K`` with ``s = x``
    and ``t = y``.

    Original vertices keep their ids; copies follow in the order left
    gadgets, right gadgets, edge gadgets.
    """
    base = b.graph
    edges: list[tuple[int, int]] = []
    pins: dict[int, int] = {}
    copies: list[GadgetCopy] = []
    next_id = base.n

    def attach(kind, gadget: LabelledGraph, fixed: dict[int, int], anchor):
        nonlocal next_id
        ids = []
        for x in range(gadget.graph.n):
            if x in fixed:
                ids.append(fixed[x])
            else:
                ids.append(next_id)
                next_id += 1
        edges.extend((ids[u], ids[v]) for u, v in gadget.graph.edges())
        pins.update({ids[x]: y for x, y in gadget.pins.items()})
        copies.append(GadgetCopy(kind, anchor, tuple(ids)))

    for x in sorted(b.left):
        attach("JL", g.jl, {g.jl.s: x}, (x,))
    for y in sorted(b.right):
        attach("JR", g.jr, {g.jr.t: y}, (y,))
    for x, y in b.oriented_edges():
        attach("K", g.k, {g.k.s: x, g.k.t: y}, (x, y))
    gprime = LabelledGraph(Graph(next_id, edges), pins)
    return ReductionOutput(gprime, {v: v for v in range(base.n)}, copies)


def chi_of_hom(
    sigma,
    b: BipartiteInstance,
    g: HardnessGadget,
    red: ReductionOutput | None = None,
    h: Graph | None = None,
) -> frozenset[int]:
    """Vertices of ``G`` whose image is not the designated vertex of their
    side. With ``red`` and ``h`` given, ``sigma`` is first checked to be a
    homomorphism of ``G'`` extending its pinning."""
    if red is not None and h is not None:
        lg = red.gprime
        if not is_homomorphism(lg.graph, h, sigma):
            raise ValueError("sigma is not a homomorphism of G'")
        if any(sigma[x] != y for x, y in lg.pins.items()):
            raise ValueError("sigma does not extend the pinning of G'")
    vmap = red.vertex_map if red is not None else {v: v for v in range(b.graph.n)}
    chi = {x for x in b.left if sigma[vmap[x]] != g.d1}
    chi |= {y for y in b.right if sigma[vmap[y]] != g.d2}
    return frozenset(chi)


@dataclass
class ReductionReport:
    p: int
    lambda1: int
    lambda2: int
    hom_count: Residue | None = None
    z: Residue | None = None
    exact_total: int | None = None
    classes: dict[frozenset[int], int] = field(default_factory=dict)
    class_mismatches: list = field(default_factory=list)
    missing_sets: list = field(default_factory=list)
    extra_sets: list = field(default_factory=list)
    inconclusive: bool = False
    reason: str = ""

    @property
    def congruent(self) -> bool:
        return self.hom_count is not None and self.z is not None and self.hom_count == self.z

    @property
    def totals_agree(self) -> bool:
        return self.exact_total == sum(self.classes.values())

    @property
    def ok(self) -> bool:
        return (
            not self.inconclusive
            and self.congruent
            and self.totals_agree
            and not self.class_mismatches
            and not self.missing_sets
            and not self.extra_sets
        )

    def lines(self) -> list[str]:
        if self.inconclusive:
            return [f"inconclusive: {self.reason}"]
        return [
            f"|Hom(G',H)| mod {self.p} = {self.hom_count.value}",
            f"Z_{{{self.lambda1},{self.lambda2}}}(G) mod {self.p} = {self.z.value}",
            f"congruence: {'pass' if self.congruent else 'FAIL'}",
            f"classes: {len(self.classes)} (exact total {self.exact_total}, "
            f"{'agrees' if self.totals_agree else 'DISAGREES'} with class sum)",
            f"class sizes vs weight formula: "
            f"{'pass' if not self.class_mismatches else 'FAIL ' + str(self.class_mismatches[:5])}",
            f"classes = independent sets: "
            f"{'pass' if not (self.missing_sets or self.extra_sets) else 'FAIL'}",
        ]


def _boundary_classes(b, h, g, budget):
    # Enumerate the images of the original vertices that extend to G', each
    # weighted by the exact number of extensions; gadget copies meet only at
    # original vertices, so the weight is a product over copies.
    def gadget_count(lg: LabelledGraph, extra):
        return count_extensions(lg.graph, h, lg.with_pins(extra))

    wl = [gadget_count(g.jl, {g.jl.s: a}) for a in range(h.n)]
    wr = [gadget_count(g.jr, {g.jr.t: a}) for a in range(h.n)]
    wk: dict[tuple[int, int], int] = {}

    def edge_weight(a, c):
        if (a, c) not in wk:
            wk[(a, c)] = gadget_count(g.k, {g.k.s: a, g.k.t: c})
        return wk[(a, c)]

    base = b.graph
    left = b.left
    earlier = [[w for w in base.adj[v] if w < v] for v in range(base.n)]
    image = [-1] * base.n
    classes: dict[frozenset[int], int] = {}
    nodes = 0

    def rec(v, weight):
        nonlocal nodes
        if v == base.n:
            chi = chi_of_hom(image, b, g)
            classes[chi] = classes.get(chi, 0) + weight
            return
        vertex_weights = wl if v in left else wr
        for a in range(h.n):
            wt = weight * vertex_weights[a]
            for w in earlier[v]:
                if wt == 0:
                    break
                wt *= edge_weight(a, image[w]) if v in left else edge_weight(image[w], a)
            if wt == 0:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(f"class enumeration exceeded {budget} nodes")
            image[v] = a
            rec(v + 1, wt)
        image[v] = -1

    rec(0, 1)
    return classes


def verify_reduction(
    b: BipartiteInstance,
    h: Graph,
    g: HardnessGadget,
    p: int,
    budget: int | None = DEFAULT_ENUMERATION_BUDGET,
) -> ReductionReport:
    """Check ``|Hom(G', h)| = Z(G) mod p`` and audit the classes of
    homomorphisms grouped by the independent set they encode: every
    independent set appears, nothing else does, and each class has size
    ``l1^|I & left| * l2^|I & right|`` mod p."""
    check_prime(p)
    l1, l2 = g.lambdas(p)
    report = ReductionReport(p, l1, l2)
    red = build_reduction_graph(b, g)
    try:
        report.hom_count = count_homs_labelled(red.gprime, h, p, budget=budget)
        report.exact_total = count_extensions(red.gprime.graph, h, red.gprime.pins, budget=budget)
        report.classes = _boundary_classes(b, h, g, budget)
    except BudgetExceeded as exc:
        report.inconclusive = True
        report.reason = str(exc)
        return report
    report.z = count_z_bis(b, Residue(l1, p), Residue(l2, p))

    expected_sets = set(independent_sets(b.graph))
    found = {chi for chi, size in report.classes.items() if size > 0}
    report.missing_sets = sorted(sorted(s) for s in expected_sets - found)
    report.extra_sets = sorted(sorted(s) for s in found - expected_sets)
    for chi, size in sorted(report.classes.items(), key=lambda kv: sorted(kv[0])):
        nl = len(chi & b.left)
        nr = len(chi) - nl
        want = pow(l1, nl, p) * pow(l2, nr, p) % p
        if size % p != want:
            report.class_mismatches.append((sorted(chi), size, want))
    return report
