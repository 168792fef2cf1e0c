"""The knot catalog and the ``⪰`` / ``⪰₁`` order over it.

Every ordered pair is decided by a fixed sequence of rules; the first
decisive one wins and is named in the edge:

1. ``trivial-target``: every knot group maps onto ``Z`` (the unknot).
2. ``same-group``: identical presentations (a knot and its mirror image).
3. constructions: ``double-sum``, ``factor``, ``torus``, ``symmetry``.
4. obstructions, cheap to expensive: ``alexander`` divisibility, then
   ``homcount`` over the small refuting groups.

``⪰₁`` edges reuse the ``⪰`` verdict when it is a refutation (``⪰₁``
implies ``⪰``) and otherwise run :func:`knotposet.epi.degree_one_check`.
The genus comparison of the conjectural monotonicity ``g(k1) >= g(k2)``
is reported as an audit and never used to decide an edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .algebra.laurent import DegreeLimitError, LaurentPoly, factor_integer_poly
from .alexander import alexander_polys, divisibility_obstruction, genus_bounds
from .config import DEFAULT, Budget
from .diagram import PDCode, PDError, pd_from_tuples, wirtinger
from .epi import (EdgeVerdict, EpiError, HomCandidate, abelianization_candidate,
                  compose, degree_one_check, double_sum_epimorphism, factor_epimorphisms,
                  homcount_obstruction, identity_candidate, symmetry_quotient,
                  torus_epimorphism, torus_meridian_search, verify_candidate)
from .fpgroup.families import (connected_sum_presentation, mirror_presentation,
                               torus_presentation, unknot_presentation)
from .fpgroup.finite import SMALL_NAMES, SearchCapExceeded
from .fpgroup.presentation import PeripheralPresentation
from .verdict import Verdict

CATALOG_SCHEMA = "knotposet.catalog/1"
REPORT_SCHEMA = "knotposet.poset_report/1"
RELATIONS = (">=", ">=1")


class CatalogError(ValueError):
    pass


# ------------------------------------------------------------------ catalog

@dataclass
class KnotRecord:
    name: str
    pd: Optional[PDCode] = None
    alternating: bool = False
    fibered: bool = False
    torus: Optional[Tuple[int, int]] = None
    composite_of: Optional[Tuple["KnotRecord", "KnotRecord"]] = None
    mirror_of: Optional[str] = None
    symmetry: Optional[dict] = None

    @cached_property
    def wirtinger(self):
        return wirtinger(self.pd, self.name) if self.pd is not None and self.pd.crossings else None

    @cached_property
    def presentation(self) -> PeripheralPresentation:
        """Torus presentation if known, else the connected sum of the factors, else Wirtinger."""
        if self.torus is not None:
            return torus_presentation(*self.torus, name=self.name)
        if self.composite_of is not None:
            f1, f2 = self.composite_of
            return connected_sum_presentation(f1.presentation, f2.presentation)
        if self.wirtinger is None:
            return unknot_presentation()
        return self.wirtinger.peripheral

    @property
    def is_unknot(self) -> bool:
        p = self.presentation.presentation
        return p.ngens == 1 and not any(r.letters for r in p.relators)

    @cached_property
    def alexander(self) -> List[LaurentPoly]:
        return alexander_polys(self.presentation)

    @property
    def delta(self) -> LaurentPoly:
        return self.alexander[0]

    @property
    def genus(self) -> Tuple[int, Optional[int]]:
        return genus_bounds(self.delta, self.alternating, self.fibered)

    def to_dict(self) -> dict:
        out = {"name": self.name, "alternating": self.alternating, "fibered": self.fibered}
        if self.pd is not None:
            out["pd"] = [list(x) for x in self.pd.crossings]
        if self.torus:
            out["torus"] = list(self.torus)
        if self.composite_of:
            out["composite_of"] = [f.name for f in self.composite_of]
        if self.mirror_of:
            out["mirror_of"] = self.mirror_of
        if self.symmetry:
            out["symmetry"] = self.symmetry
        return out


def _mirror_record(rec: KnotRecord) -> KnotRecord:
    m = KnotRecord(f"{rec.name}*", alternating=rec.alternating, fibered=rec.fibered,
                   torus=rec.torus, mirror_of=rec.name)
    m.__dict__["presentation"] = mirror_presentation(rec.presentation, name=m.name)
    return m


class Catalog:
    def __init__(self, records: Sequence[KnotRecord] = ()):
        self.records: Dict[str, KnotRecord] = {}
        for r in records:
            self.records[r.name] = r

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records.values())

    def names(self) -> List[str]:
        return sorted(self.records)

    def get(self, name: str) -> KnotRecord:
        """Look up a record; a trailing ``*`` denotes the mirror image."""
        if name in self.records:
            return self.records[name]
        if name.endswith("*") and name[:-1] in self.records:
            return _mirror_record(self.records[name[:-1]])
        raise CatalogError(f"unknown knot {name!r}")


def _field_error(name, fld, msg):
    return CatalogError(f"record {name!r}, field {fld!r}: {msg}")


def parse_catalog(data) -> Catalog:
    if isinstance(data, dict):
        if data.get("schema", CATALOG_SCHEMA) != CATALOG_SCHEMA:
            raise CatalogError(f"unsupported catalog schema {data.get('schema')!r}")
        data = data.get("knots", [])
    if not isinstance(data, list):
        raise CatalogError("catalog must be a list of records or an object with 'knots'")
    cat = Catalog()
    for i, e in enumerate(data):
        if not isinstance(e, dict) or not isinstance(e.get("name"), str) or not e["name"]:
            raise CatalogError(f"record {i}: a non-empty string 'name' is required")
        name = e["name"]
        if name in cat.records:
            raise _field_error(name, "name", "duplicate record")
        unknown = set(e) - {"name", "pd", "alternating", "fibered", "torus", "composite_of",
                            "mirror_of", "symmetry"}
        if unknown:
            raise _field_error(name, sorted(unknown)[0], "unknown field")
        rec = KnotRecord(name, alternating=bool(e.get("alternating", False)),
                         fibered=bool(e.get("fibered", False)), mirror_of=e.get("mirror_of"))
        if "pd" in e:
            try:
                rec.pd = pd_from_tuples([tuple(x) for x in e["pd"]])
            except (PDError, TypeError) as exc:
                raise _field_error(name, "pd", str(exc)) from exc
            if len(rec.pd.components) > 1:
                raise _field_error(name, "pd", "catalog records must be knots")
        if "torus" in e:
            t = e["torus"]
            if not (isinstance(t, list) and len(t) == 2 and all(isinstance(x, int) for x in t)):
                raise _field_error(name, "torus", "expected [p, q]")
            rec.torus = tuple(t)
        if "composite_of" in e:
            parts = e["composite_of"]
            if not (isinstance(parts, list) and len(parts) == 2):
                raise _field_error(name, "composite_of", "expected two factor names")
            try:
                rec.composite_of = tuple(cat.get(p) for p in parts)
            except CatalogError as exc:
                raise _field_error(name, "composite_of", f"{exc} (factors must come first)") from exc
        if "symmetry" in e:
            sym = e["symmetry"]
            if rec.pd is None or not isinstance(sym, dict) or "orbits" not in sym:
                raise _field_error(name, "symmetry", "needs a pd and an 'orbits' list")
            rec.symmetry = sym
        _check_invariants(rec)
        cat.records[name] = rec
    return cat


def _check_invariants(rec: KnotRecord):
    try:
        d = rec.delta
    except Exception as exc:                            # noqa: BLE001 - reported with the record
        raise _field_error(rec.name, "pd", f"invariants not computable: {exc}") from exc
    if abs(d(1)) != 1:
        raise _field_error(rec.name, "pd", f"Delta(1) = {d(1)}, not a knot")
    if rec.wirtinger is not None and rec.presentation is not rec.wirtinger.peripheral:
        if alexander_polys(rec.wirtinger.peripheral)[0] != d:
            raise _field_error(rec.name, "pd", "diagram and presentation have different Alexander polynomials")


def load_catalog(path=None) -> Catalog:
    """Load a catalog file; ``None`` loads the bundled default catalog."""
    if path is None:
        text = resources.files("knotposet.data").joinpath("catalog.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    return parse_catalog(data)


def load_links() -> Dict[str, dict]:
    """Bundled link fixtures: name -> {"pd": PDCode, ...metadata}."""
    from .diagram import parse_pd
    data = json.loads(resources.files("knotposet.data").joinpath("links.json").read_text())
    return {k: {**v, "pd": parse_pd(v["pd"])} for k, v in data["links"].items()}


# ------------------------------------------------------------------ rules

def _retarget(c: HomCandidate, b: KnotRecord) -> Optional[HomCandidate]:
    t = b.presentation
    if c.target.presentation != t.presentation or c.target.meridians != t.meridians:
        return None
    return HomCandidate(c.source, t, c.images, c.pattern, c.conjugator, c.label)


def _constructions(a: KnotRecord, b: KnotRecord):
    """Yield ``(rule, candidate)`` pairs that may prove ``a ⪰ b``."""
    if b.is_unknot:
        yield "trivial-target", abelianization_candidate(a.presentation, b.presentation)
    if a.presentation.presentation == b.presentation.presentation and \
            a.presentation.meridians == b.presentation.meridians:
        yield "same-group", HomCandidate(a.presentation, b.presentation,
                                         identity_candidate(a.presentation).images, label="identity")
    if a.composite_of is not None:
        try:
            c = _retarget(double_sum_epimorphism(a.presentation), b)
            if c is not None:
                yield "double-sum", c
        except EpiError:
            pass
        for c in factor_epimorphisms(a.presentation):
            c = _retarget(c, b)
            if c is not None:
                yield "factor", c
    if a.torus is not None and b.torus is not None:
        try:
            yield "torus", torus_epimorphism(a.presentation, b.presentation)
        except EpiError:
            pass
    if a.symmetry and a.symmetry.get("quotient") == b.name and b.torus is not None:
        quotient, c = symmetry_quotient(a.wirtinger, a.symmetry["orbits"])
        iso = torus_meridian_search(quotient, b.presentation)
        if iso is not None:
            yield "symmetry", compose(c.with_pattern(None), iso)


def _obstructions(a: KnotRecord, b: KnotRecord, groups, budget):
    v = divisibility_obstruction(a.alexander, b.alexander, a.presentation, b.presentation)
    yield "alexander", v
    try:
        yield "homcount", homcount_obstruction(a.presentation, b.presentation, groups, budget.hom_cap)
    except SearchCapExceeded as exc:
        yield "homcount", Verdict.unknown(f"hom-count skipped: {exc}")


def decide_edge(a: KnotRecord, b: KnotRecord, budget: Budget = DEFAULT,
                groups: Sequence[str] = SMALL_NAMES) -> EdgeVerdict:
    """Decide ``a ⪰ b`` by the fixed rule order."""
    tried = []
    if a.name == b.name:
        c = identity_candidate(a.presentation)
        return EdgeVerdict(a.name, b.name, ">=", verify_candidate(c, budget), "reflexive", c)
    for rule, c in _constructions(a, b):
        v = verify_candidate(c, budget)
        tried.append(f"{rule}: {v.status}")
        if v.is_proved:
            return EdgeVerdict(a.name, b.name, ">=", v, rule, c)
    for rule, v in _obstructions(a, b, groups, budget):
        tried.append(f"{rule}: {v.status}")
        if v.is_refuted:
            return EdgeVerdict(a.name, b.name, ">=", v, rule)
    return EdgeVerdict(a.name, b.name, ">=",
                       Verdict.unknown("; ".join(tried), evidence={"kind": "rules_tried", "rules": tried}),
                       "none")


def decide_degree_one(a: KnotRecord, b: KnotRecord, edge: EdgeVerdict,
                      budget: Budget = DEFAULT) -> EdgeVerdict:
    if edge.verdict.is_refuted:
        return EdgeVerdict(a.name, b.name, ">=1", edge.verdict, f"refines ({edge.rule})")
    cands = [edge.candidate] if edge.candidate is not None else []
    if edge.verdict.is_proved:
        cands += [c for _, c in _constructions(a, b) if c is not edge.candidate]
    v = degree_one_check(a.presentation, b.presentation, cands, budget)
    cand = None
    if v.is_proved:
        cand = HomCandidate.from_dict(v.evidence["candidate"])
    rule = "degree-one candidate" if v.is_proved else ("apoly" if v.is_refuted else "none")
    return EdgeVerdict(a.name, b.name, ">=1", v, rule, cand)


# ------------------------------------------------------------------ report

@dataclass
class PosetReport:
    nodes: List[str]
    edges: Dict[Tuple[str, str, str], EdgeVerdict]
    minimality: Dict[str, dict] = field(default_factory=dict)
    genus_audit: List[dict] = field(default_factory=list)
    conflicts: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def edge(self, a: str, b: str, relation: str = ">=") -> EdgeVerdict:
        return self.edges[(a, b, relation)]

    def proved(self, relation: str = ">=") -> List[Tuple[str, str]]:
        return sorted((a, b) for (a, b, r), e in self.edges.items()
                      if r == relation and e.verdict.is_proved)

    def to_dict(self) -> dict:
        return {"schema": REPORT_SCHEMA, "nodes": list(self.nodes),
                "edges": [self.edges[k].to_dict() for k in sorted(self.edges)],
                "minimality": {k: self.minimality[k] for k in sorted(self.minimality)},
                "genus_audit": self.genus_audit, "conflicts": self.conflicts, "notes": self.notes}

    @classmethod
    def from_dict(cls, data) -> "PosetReport":
        if data.get("schema") != REPORT_SCHEMA:
            raise CatalogError(f"unsupported report schema {data.get('schema')!r}")
        edges = {}
        for e in data["edges"]:
            cand = HomCandidate.from_dict(e["candidate"]) if e.get("candidate") else None
            ev = EdgeVerdict(e["source"], e["target"], e["relation"],
                             Verdict.from_dict(e["verdict"]), e["rule"], cand)
            edges[(ev.source, ev.target, ev.relation)] = ev
        return cls(list(data["nodes"]), edges, dict(data["minimality"]), list(data["genus_audit"]),
                   list(data["conflicts"]), list(data["notes"]))


MERGE_NOTE = ("two-way Proved pairs are merged as one knot type: antisymmetry of the order "
              "(up to knot type, not ambient isotopy) is assumed, not checked")


def build_poset(catalog: Catalog, budget: Budget = DEFAULT,
                groups: Sequence[str] = SMALL_NAMES) -> PosetReport:
    names = catalog.names()
    edges: Dict[Tuple[str, str, str], EdgeVerdict] = {}
    for a in names:
        for b in names:
            A, B = catalog.get(a), catalog.get(b)
            e = decide_edge(A, B, budget, groups)
            edges[(a, b, ">=")] = e
            edges[(a, b, ">=1")] = decide_degree_one(A, B, e, budget)
    report = PosetReport(names, edges, notes=[MERGE_NOTE])
    report.conflicts = consistency_conflicts(catalog, report, budget, groups)
    report.minimality = minimality_report(catalog, report)
    report.genus_audit = genus_audit(catalog, report)
    return report


def consistency_conflicts(catalog: Catalog, report: PosetReport, budget: Budget = DEFAULT,
                          groups: Sequence[str] = SMALL_NAMES) -> List[str]:
    """Run every obstruction on every Proved edge; any refutation is a soundness failure."""
    out = []
    for a, b in report.proved(">="):
        if a == b:
            continue
        for rule, v in _obstructions(catalog.get(a), catalog.get(b), groups, budget):
            if v.is_refuted:
                out.append(f"{a} >= {b} is Proved but {rule} refutes it")
    for a, b in report.proved(">=1"):
        if not report.edge(a, b, ">=").verdict.is_proved:
            out.append(f"{a} >=1 {b} is Proved but {a} >= {b} is not")
    return out


def _same_type(report: PosetReport, a: str, b: str) -> bool:
    return report.edge(a, b).verdict.is_proved and report.edge(b, a).verdict.is_proved


def minimality_report(catalog: Catalog, report: PosetReport) -> Dict[str, dict]:
    """Tag each knot Minimal-Proved, Nonminimal, Minimal-Unknown or Trivial (the unknot)."""
    out = {}
    for name in report.nodes:
        rec = catalog.get(name)
        if rec.is_unknot:
            out[name] = {"status": "Trivial", "reason": "the unknot"}
            continue
        covers = [b for b in report.nodes if b != name and not catalog.get(b).is_unknot
                  and report.edge(name, b).verdict.is_proved and not _same_type(report, name, b)]
        if covers:
            out[name] = {"status": "Nonminimal", "reason": f"Proved edge {name} >= {covers[0]}",
                         "covers": covers}
            continue
        try:
            factors = factor_integer_poly(rec.delta)
        except DegreeLimitError as exc:
            out[name] = {"status": "Minimal-Unknown", "reason": str(exc)}
            continue
        irreducible = len(factors) == 1 and factors[0][1] == 1
        if rec.fibered and irreducible:
            out[name] = {"status": "Minimal-Proved",
                         "reason": f"fibered with irreducible Alexander polynomial {rec.delta}"}
        else:
            why = [] if rec.fibered else ["not known to be fibered"]
            if not irreducible:
                why.append("Alexander polynomial factors as "
                           + " * ".join(f"({f})^{e}" if e > 1 else f"({f})" for f, e in factors))
            out[name] = {"status": "Minimal-Unknown", "reason": "; ".join(why)}
    return out


def genus_audit(catalog: Catalog, report: PosetReport) -> List[dict]:
    """Proved edges ``a ⪰ b`` with exact genera on both sides, checked for ``g(a) >= g(b)``."""
    out = []
    for a, b in report.proved(">="):
        if a == b:
            continue
        (la, ua), (lb, ub) = catalog.get(a).genus, catalog.get(b).genus
        if ua is None or ub is None:
            continue
        out.append({"source": a, "target": b, "genus_source": la, "genus_target": lb,
                    "violation": la < lb})
    return out


def export_report(report: PosetReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if fmt == "dot":
        return _to_dot(report)
    raise CatalogError(f"unknown report format {fmt!r} (use json or dot)")


def hasse_graph(report: PosetReport) -> "nx.DiGraph":
    """Transitive reduction of the Proved ``⪰`` edges, with two-way pairs merged."""
    g = nx.DiGraph()
    g.add_nodes_from(report.nodes)
    g.add_edges_from((a, b) for a, b in report.proved(">=") if a != b)
    cond = nx.condensation(g)
    label = {c: " = ".join(sorted(cond.nodes[c]["members"])) for c in cond.nodes}
    red = nx.transitive_reduction(cond)
    h = nx.DiGraph()
    h.add_nodes_from(sorted(label.values()))
    h.add_edges_from((label[u], label[v]) for u, v in red.edges)
    return h


def _to_dot(report: PosetReport) -> str:
    h = hasse_graph(report)
    lines = ["digraph knotposet {", "  rankdir=TB;"]
    for n in sorted(h.nodes):
        lines.append(f'  "{n}";')
    for u, v in sorted(h.edges):
        a, b = u.split(" = ")[0], v.split(" = ")[0]
        d1 = report.edges.get((a, b, ">=1"))
        style = "bold" if d1 and d1.verdict.is_proved else (
            "dashed" if d1 and d1.verdict.is_refuted else "solid")
        lines.append(f'  "{u}" -> "{v}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
