"""Command-line front end.

Exit codes: 0 on success, 1 on usage errors, 2 on computation errors.
Verdicts are printed as data (JSON with a ``schema`` field), never
encoded in the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .algebra.laurent import AlgebraError, cyclic_resultant, parse_laurent
from .config import Budget
from .verdict import EvidenceError, Verdict, replay

CLI_SCHEMA = "knotposet.cli/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(command: str, payload: dict) -> None:
    print(_dump({"schema": CLI_SCHEMA, "command": command, **payload}))


def _budget(args) -> Budget:
    return Budget.from_env(nodes=args.nodes, conjugator_length=args.conjugator_length,
                           hom_cap=args.hom_cap)


def _pd(text: str):
    from .diagram import parse_pd
    return parse_pd(text)


# ------------------------------------------------------------------ commands

def cmd_parse(args) -> None:
    pd = _pd(args.pd)
    if args.json:
        _emit("parse", {"pd": pd.to_text(), "crossings": len(pd.crossings),
                        "components": [list(c) for c in pd.components], "signs": list(pd.signs)})
    else:
        print(f"ok: {len(pd.crossings)} crossings, {len(pd.components)} component(s), "
              f"signs {' '.join('+' if s > 0 else '-' for s in pd.signs)}")


def cmd_group(args) -> None:
    from .diagram import wirtinger
    from .fpgroup.triviality import tietze_simplify
    W = wirtinger(_pd(args.pd))
    pres = W.presentation
    if args.simplify:
        pres = tietze_simplify(pres).presentation
    if args.json:
        _emit("group", {"presentation": pres.to_text(), "peripheral": W.peripheral.to_text()})
    else:
        print(pres.to_text())


def cmd_alexander(args) -> None:
    from .alexander import alexander_poly
    if args.pd:
        from .diagram import wirtinger
        p = wirtinger(_pd(args.pd)).peripheral
    else:
        p = _catalog(args).get(args.knot).presentation
    print(alexander_poly(p, args.i))


def cmd_resultant(args) -> None:
    r = cyclic_resultant(parse_laurent(args.poly), args.q)
    print(r)
    print(f"|.|={abs(r)}")


def cmd_family(args) -> None:
    budget = _budget(args)
    if args.kind == "virtual":
        _emit("family virtual", _virtual(args.q, budget))
    else:
        _emit("family surgery", _surgery(args, budget))


def _virtual(q: int, budget: Budget) -> dict:
    from .alexander import alexander_poly
    from .fpgroup.families import (figure_eight_presentation, virtual_family_group,
                                   virtual_family_paper_longitude, virtual_family_presentation)
    from .fpgroup.presentation import abelianization
    from .fpgroup.schreier import rs_cyclic_kernel
    from .fpgroup.triviality import words_equal
    G = virtual_family_group(q)
    kernel = rs_cyclic_kernel(G, [1, 1], q, kill_power=True)
    ab = abelianization(kernel)
    delta = alexander_poly(figure_eight_presentation())
    out = {"q": q, "presentation": G.to_text(), "kernel_abelianization": str(ab),
           "kernel_order": ab.torsion_order, "resultant": cyclic_resultant(delta, q),
           "delta": str(delta)}
    if q >= 2:
        k = virtual_family_presentation(q)
        v = words_equal(G, virtual_family_paper_longitude(q), k.longitude, budget)
        out["peripheral"] = k.to_text()
        out["longitude_words_equal"] = v.to_dict()
    return out


def _surgery(args, budget: Budget) -> dict:
    from .diagram import wirtinger
    from .epi import surgery_family, verify_candidate
    from .fpgroup.presentation import abelianization
    from .poset import load_links
    if args.link.startswith("X") or args.link.startswith("PD"):
        pd, knot, curve = _pd(args.link), args.knot, args.curve
    else:
        links = load_links()
        if args.link not in links:
            raise UsageError(f"unknown link fixture {args.link!r}; choose from {sorted(links)}")
        fx = links[args.link]
        pd, knot, curve = fx["pd"], fx.get("knot", args.knot), fx.get("curve", args.curve)
    S = surgery_family(wirtinger(pd), args.q, knot, curve, budget)
    v = verify_candidate(S.candidate, budget)
    return {"q": args.q, "K_q": S.surgered.to_text(), "k": S.knot_group.to_text(),
            "abelianization": str(abelianization(S.surgered.presentation)),
            "c_trivial_in_k": S.c_verdict.to_dict(), "candidate": S.candidate.to_dict(),
            "verdict": v.to_dict()}


def _catalog(args):
    from .poset import load_catalog
    return load_catalog(getattr(args, "catalog", None))


def cmd_epi(args) -> None:
    from .epi import HomCandidate, verify_candidate
    from .poset import decide_degree_one, decide_edge
    budget = _budget(args)
    if args.candidate:
        c = HomCandidate.from_dict(json.loads(Path(args.candidate).read_text()))
        _emit("epi", {"candidate": c.to_dict(), "verdict": verify_candidate(c, budget).to_dict()})
        return
    if not (args.source and args.target):
        raise UsageError("epi needs --from and --to (or --candidate FILE)")
    cat = _catalog(args)
    a, b = cat.get(args.source), cat.get(args.target)
    edge = decide_edge(a, b, budget)
    if args.degree_one:
        edge = decide_degree_one(a, b, edge, budget)
    _emit("epi", {"edge": edge.to_dict()})


def cmd_apoly(args) -> None:
    from .apoly import apoly_for_torus, obstruction_check
    try:
        pattern = tuple(int(x) for x in args.pattern.split(","))
    except ValueError:
        raise UsageError("--pattern must be four integers a,b,c,d") from None
    if len(pattern) != 4:
        raise UsageError("--pattern must be four integers a,b,c,d")
    cat = _catalog(args)
    A1 = apoly_for_torus(cat.get(args.source).torus)
    A2 = apoly_for_torus(cat.get(args.target).torus)
    v = obstruction_check(A1, A2, pattern)
    _emit("apoly", {"source": args.source, "target": args.target, "pattern": list(pattern),
                    "A1": A1.to_dict(), "A2": A2.to_dict(), "verdict": v.to_dict()})


def cmd_poset(args) -> None:
    from .poset import build_poset, export_report
    report = build_poset(_catalog(args), _budget(args))
    text = export_report(report, args.format)
    if args.out:
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n")
        counts = {}
        for e in report.edges.values():
            key = f"{e.relation} {e.verdict.status.value}"
            counts[key] = counts.get(key, 0) + 1
        _emit("poset", {"out": args.out, "format": args.format, "nodes": report.nodes,
                        "counts": counts, "conflicts": report.conflicts})
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def cmd_minimal(args) -> None:
    from .poset import build_poset
    report = build_poset(_catalog(args), _budget(args))
    _emit("minimal", {"minimality": report.minimality, "genus_audit": report.genus_audit})


def verify_evidence_file(path: str) -> dict:
    """Replay every verdict object found anywhere in a JSON document."""
    data = json.loads(Path(path).read_text())
    checked, failed = 0, []

    def walk(node, where):
        nonlocal checked
        if isinstance(node, dict):
            if "status" in node and node.get("status") in ("Proved", "Refuted", "Unknown"):
                checked += 1
                try:
                    ok = replay(Verdict.from_dict(node))
                except EvidenceError as exc:
                    ok = False
                    where = f"{where} ({exc})"
                if not ok:
                    failed.append(where)
                return
            for k in sorted(node):
                walk(node[k], f"{where}.{k}")
        elif isinstance(node, list):
            for i, x in enumerate(node):
                walk(x, f"{where}[{i}]")

    walk(data, "$")
    return {"checked": checked, "failed": failed}


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotposet", description="Peripheral epimorphisms between knot groups.")
    p.add_argument("--verify-evidence", metavar="FILE",
                   help="replay every verdict in a JSON output file and exit")
    p.add_argument("--nodes", type=int, help="relator-insertion search nodes per query")
    p.add_argument("--conjugator-length", type=int, help="peripheral conjugator search bound")
    p.add_argument("--hom-cap", type=int, help="cap on |F|^generators for hom enumeration")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("parse", help="validate a PD code")
    s.add_argument("--pd", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("group", help="Wirtinger presentation of a PD code")
    s.add_argument("--pd", required=True)
    s.add_argument("--simplify", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("alexander", help="Alexander polynomial Delta^(i)")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd")
    g.add_argument("--knot", help="catalog knot name")
    s.add_argument("-i", type=int, default=1)
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_alexander)

    s = sub.add_parser("resultant", help="cyclic resultant Res(f, t^q - 1)")
    s.add_argument("--poly", required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_resultant)

    s = sub.add_parser("family", help="the virtual family k_q or the surgery family K_q")
    s.add_argument("kind", choices=["virtual", "surgery"])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--link", default="k_union_C", help="link fixture name or PD code")
    s.add_argument("--knot", type=int, default=1, help="component index of k")
    s.add_argument("--curve", type=int, default=0, help="component index of C")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("epi", help="decide k1 >= k2 (or >=1 with --degree-one)")
    s.add_argument("--from", dest="source")
    s.add_argument("--to", dest="target")
    s.add_argument("--candidate", help="verify a HomCandidate JSON file instead")
    s.add_argument("--degree-one", action="store_true")
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_epi)

    s = sub.add_parser("apoly", help="A-polynomial obstruction for one peripheral pattern")
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    s.add_argument("--pattern", required=True, help="a,b,c,d")
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_apoly)

    s = sub.add_parser("poset", help="build the order over a catalog")
    s.add_argument("--catalog")
    s.add_argument("--out")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_poset)

    s = sub.add_parser("minimal", help="minimality classification of a catalog")
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_minimal)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verify_evidence:
            result = verify_evidence_file(args.verify_evidence)
            _emit("verify-evidence", result)
            return 0 if not result["failed"] else 2
        if not args.command:
            raise UsageError(parser.format_usage() + "knotposet: error: a subcommand is required")
        args.func(args)
        return 0
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, RuntimeError, OSError, AlgebraError) as exc:
        print(f"knotposet: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
