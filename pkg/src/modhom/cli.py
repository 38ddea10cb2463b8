"""Command-line interface.

Exit codes: 0 ok, 1 bad input (I/O, parse errors, bad arguments),
2 unsupported input, 3 search budget or size bound exceeded,
4 a verification ran and found a failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .automorphisms import DEFAULT_MAX_VERTICES, GraphTooLarge, reduce_to_hstar, verify_hstar_congruence
from .gadgets import HardnessGadget, verify_hardness_gadget
from .graph import GraphFormatError, parse_bipartite, parse_graph, serialize_graph
from .homs import DEFAULT_BUDGET, BudgetExceeded, count_extensions, count_z_bis
from .pipeline import HARD, UNSUPPORTED, InternalError, Unsupported, build_hardness_gadget, classify
from .reduction import build_reduction_graph, parse_pins, serialize_pins, verify_reduction
from .residue import Residue, check_prime

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_BUDGET = 3
EXIT_FAILED = 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is the "unsupported" code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("MODHOM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"MODHOM_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_bipartite(path: str):
    try:
        return parse_bipartite(_read(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _prime(p: int) -> int:
    try:
        return check_prime(p)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    h = _load_graph(args.graph)
    p = _prime(args.prime)
    result = classify(h, p, args.max_vertices)
    if args.format == "json":
        _emit(args, result.to_json() + "\n")
    else:
        lines = [f"verdict: {result.verdict}"]
        if result.star is not None:
            lines.append(f"derived graph is the star K_{{{result.star[0]},{result.star[1]}}}")
        if result.reason:
            lines.append(f"reason: {result.reason}")
        if result.verdict == HARD:
            lines.append(f"lambda1={result.lambda1} lambda2={result.lambda2}")
            lines.append("gadget: " + json.dumps(result.gadget.to_dict(), separators=(",", ":")))
        lines += result.trace.lines() if result.trace else []
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_UNSUPPORTED if result.verdict == UNSUPPORTED else EXIT_OK


def cmd_count(args) -> int:
    g = _load_graph(args.source)
    h = _load_graph(args.target)
    pins = None
    if args.pins:
        try:
            pins = parse_pins(_read(args.pins))
        except GraphFormatError as exc:
            raise InputError(f"{args.pins}: {exc}") from None
    budget = _budget(args)
    try:
        if args.mod is not None:
            p = _prime(args.mod)
            value = count_extensions(g, h, pins, modulus=p, budget=budget)
        else:
            value = count_extensions(g, h, pins, budget=budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        doc = {"count": value} if args.mod is None else {"residue": value, "modulus": args.mod}
        _emit(args, json.dumps(doc) + "\n")
    else:
        _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_derive(args) -> int:
    h = _load_graph(args.graph)
    p = _prime(args.prime)
    if args.check_samples and args.seed is None:
        raise InputError("--check-samples requires --seed")
    hstar, trace = reduce_to_hstar(h, p, args.max_vertices)
    report = None
    if args.check_samples:
        report = verify_hstar_congruence(
            h, p, args.check_samples, args.size_bound, seed=args.seed, max_vertices=args.max_vertices
        )
    if args.format == "json":
        doc = {
            "derived": {"n": hstar.n, "edges": [list(e) for e in hstar.edges()]},
            "origin": trace.origin,
            "trace": trace.lines(),
        }
        if report is not None:
            doc["congruence"] = {"checked": report.checked, "counterexamples": len(report.counterexamples)}
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        text = serialize_graph(hstar)
        if args.trace:
            text += trace.to_text()
        if report is not None:
            text += f"congruence: {report.checked} samples, {len(report.counterexamples)} counterexamples\n"
        _emit(args, text)
    if report is not None and not report.ok:
        return EXIT_FAILED
    return EXIT_OK


def _derived_gadget(args):
    h = _load_graph(args.graph)
    p = _prime(args.prime)
    if getattr(args, "gadget", None):
        try:
            gadget = HardnessGadget.from_dict(json.loads(_read(args.gadget)))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{args.gadget}: malformed gadget document ({exc})") from None
        return h, p, gadget
    hstar, _ = reduce_to_hstar(h, p, args.max_vertices)
    return hstar, p, build_hardness_gadget(hstar, p, args.max_vertices)


def cmd_gadget(args) -> int:
    result = classify(_load_graph(args.graph), _prime(args.prime), args.max_vertices)
    if result.verdict != HARD:
        sys.stderr.write(f"no gadget: verdict is {result.verdict}\n")
        return EXIT_UNSUPPORTED
    _emit(args, result.gadget.to_json() + "\n")
    return EXIT_OK


def cmd_reduce(args) -> int:
    h, p, gadget = _derived_gadget(args)
    b = _load_bipartite(args.bipartite)
    red = build_reduction_graph(b, gadget)
    graph_text = serialize_graph(red.gprime.graph)
    pins_text = serialize_pins(red.gprime.pins)
    prov_text = red.provenance_json() + "\n"
    if args.out:
        Path(args.out + ".g").write_text(graph_text, encoding="utf-8")
        Path(args.out + ".pins").write_text(pins_text, encoding="utf-8")
        Path(args.out + ".json").write_text(prov_text, encoding="utf-8")
    else:
        sys.stdout.write(graph_text + "# pins\n" + pins_text + "# provenance\n" + prov_text)
    return EXIT_OK


def cmd_verify(args) -> int:
    h, p, gadget = _derived_gadget(args)
    report = verify_hardness_gadget(h, gadget, p, budget=_budget(args))
    lines = ["gadget conditions:"] + ["  " + line for line in report.lines()]
    ok = report.ok
    if args.bipartite:
        b = _load_bipartite(args.bipartite)
        red_report = verify_reduction(b, h, gadget, p, budget=_budget(args))
        lines += ["reduction:"] + ["  " + line for line in red_report.lines()]
        if red_report.inconclusive:
            sys.stdout.write("\n".join(lines) + "\n")
            return EXIT_BUDGET
        ok = ok and red_report.ok
    lines.append("result: " + ("pass" if ok else "FAIL"))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_zbis(args) -> int:
    b = _load_bipartite(args.bipartite)
    p = _prime(args.prime)
    value = count_z_bis(b, Residue.of(args.l1, p), Residue.of(args.l2, p))
    _emit(args, f"{value.value}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modhom", description="Graph homomorphism counting modulo a prime.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, prime=True, out=True):
        if prime:
            p.add_argument("--prime", type=int, required=True)
        p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES,
                       help="automorphism enumeration bound")
        p.add_argument("--budget", type=int, default=None,
                       help="search node budget (default: $MODHOM_BUDGET or 10^8)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if out:
            p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("classify", help="tractable / hard verdict with gadget and trace")
    p.add_argument("--graph", required=True)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="count homomorphisms, optionally pinned and mod p")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--pins", help="pin file with lines 'g h'")
    p.add_argument("--mod", type=int)
    common(p, prime=False)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("derive", help="compute the fixed-point reduced graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--check-samples", type=int, default=0,
                   help="test the mod-p congruence on this many random graphs")
    p.add_argument("--size-bound", type=int, default=5)
    p.add_argument("--seed", type=int)
    common(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("gadget", help="emit the hardness gadget as JSON")
    p.add_argument("--graph", required=True)
    common(p)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("reduce", help="build G' for a bipartite instance")
    p.add_argument("--graph", required=True)
    p.add_argument("--bipartite", required=True)
    p.add_argument("--gadget", help="gadget JSON over --graph (skips derivation)")
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check gadget conditions and the reduction identity")
    p.add_argument("--graph", required=True)
    p.add_argument("--bipartite")
    p.add_argument("--gadget", help="gadget JSON over --graph (skips derivation)")
    common(p, out=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zbis", help="weighted independent-set sum of a bipartite graph")
    p.add_argument("--bipartite", required=True)
    p.add_argument("--l1", type=int, required=True)
    p.add_argument("--l2", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_zbis)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except Unsupported as exc:
        sys.stderr.write(f"unsupported: {exc}\n")
        return EXIT_UNSUPPORTED
    except (BudgetExceeded, GraphTooLarge) as exc:
        sys.stderr.write(f"budget: {exc}\n")
        return EXIT_BUDGET
    except InternalError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
