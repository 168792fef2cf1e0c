"""Planar-diagram (PD) codes and Wirtinger presentations.

Crossing convention: ``X(a, b, c, d)`` lists the four edge labels
counter-clockwise starting from the *incoming under-strand* ``a``; ``c`` is
the outgoing under-strand and ``b``, ``d`` are the two halves of the
over-strand.  Labels increase along the orientation of each component
(cyclically within the component's label range)::

               b                      d
               |                      ^
        c <----|---- a         c <----|---- a
               v                      |
               d                      b
        over runs b -> d        over runs d -> b
        negative crossing       positive crossing

So the crossing is positive exactly when ``b`` follows ``d``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .fpgroup.presentation import PeripheralPresentation, Presentation
from .fpgroup.words import Word

Crossing = Tuple[int, int, int, int]


class PDError(ValueError):
    """Invalid PD code; ``position`` is the crossing index or text offset when known."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


@dataclass(frozen=True)
class PDCode:
    crossings: Tuple[Crossing, ...]
    components: Tuple[Tuple[int, ...], ...]   # labels of each component, in orientation order
    signs: Tuple[int, ...]                     # one per crossing
    heads: Dict[int, Tuple[int, int]] = field(compare=False, repr=False)  # label -> (crossing, slot) it enters

    @property
    def component_of(self) -> Dict[int, int]:
        return {x: i for i, comp in enumerate(self.components) for x in comp}

    def to_text(self) -> str:
        return " ".join(f"X({a},{b},{c},{d})" for a, b, c, d in self.crossings)

    def to_json(self) -> List[List[int]]:
        return [list(x) for x in self.crossings]


_TOKEN = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text: str) -> PDCode:
    """Parse whitespace-separated ``X(a,b,c,d)`` tokens (``PD[...]`` wrappers and commas tolerated)."""
    s = text.strip()
    m = re.fullmatch(r"PD\[(.*)\]", s, re.S)
    if m:
        s = m.group(1)
    crossings = []
    pos = 0
    while pos < len(s):
        if s[pos] in " \t\n,":
            pos += 1
            continue
        tok = _TOKEN.match(s, pos)
        if not tok:
            raise PDError(f"malformed token {s[pos:pos + 12]!r}", pos)
        crossings.append(tuple(int(g) for g in tok.groups()))
        pos = tok.end()
    return pd_from_tuples(crossings)


def pd_from_tuples(crossings: Sequence[Sequence[int]]) -> PDCode:
    xs: List[Crossing] = []
    for k, x in enumerate(crossings):
        if len(x) != 4:
            raise PDError("crossing must have four labels", k)
        if any(not isinstance(v, int) or v <= 0 for v in x):
            raise PDError("labels must be positive integers", k)
        if len(set(x)) != 4:
            raise PDError("label cycle inconsistent: label repeated within a crossing", k)
        xs.append(tuple(x))
    count: Dict[int, int] = {}
    for x in xs:
        for v in x:
            count[v] = count.get(v, 0) + 1
    for v in sorted(count):
        if count[v] != 2:
            raise PDError(f"arc label {v} appears {count[v]} time(s), expected exactly 2")

    # components: a~c (under-strand) and b~d (over-strand)
    parent = {v: v for v in count}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, c, d in xs:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    groups: Dict[int, List[int]] = {}
    for v in count:
        groups.setdefault(find(v), []).append(v)
    comps = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    ranges = []
    for g in comps:
        if g != list(range(g[0], g[-1] + 1)):
            raise PDError(f"non-cyclic labeling: component labels {g} are not a consecutive range")
        ranges.append((g[0], g[-1]))
    comp_of = {v: i for i, g in enumerate(comps) for v in g}

    def nxt(v):
        lo, hi = ranges[comp_of[v]]
        return lo if v == hi else v + 1

    heads: Dict[int, Tuple[int, int]] = {}
    tails: Dict[int, Tuple[int, int]] = {}

    def put(table, v, where, k):
        if v in table and table[v] != where:
            raise PDError(f"label cycle inconsistent: label {v} enters/leaves twice", k)
        table[v] = where

    # under-strands are unambiguous; over-strands of 2-label components may be
    pending = []
    for k, (a, b, c, d) in enumerate(xs):
        if comp_of[a] != comp_of[c] or nxt(a) != c:
            raise PDError(f"label cycle inconsistent: under-strand {a}->{c}", k)
        put(heads, a, (k, 0), k)
        put(tails, c, (k, 2), k)
        fwd, back = nxt(d) == b, nxt(b) == d
        if not (fwd or back):
            raise PDError(f"label cycle inconsistent: over-strand {b},{d}", k)
        if fwd and back:
            pending.append(k)
        elif fwd:
            put(heads, d, (k, 3), k)
            put(tails, b, (k, 1), k)
        else:
            put(heads, b, (k, 1), k)
            put(tails, d, (k, 3), k)
    for k in pending:
        a, b, c, d = xs[k]
        # 2-label component {b, d}: a label's head is at the crossing where it is not a tail
        if b in tails or d in heads:
            b_head = (b in tails and tails[b][0] != k) or (d in heads and heads[d][0] != k)
        elif b in heads or d in tails:
            b_head = (b in heads and heads[b][0] == k) or (d in tails and tails[d][0] == k)
        else:
            # over both times: orient the component from its first crossing
            lo = min(b, d)
            first = min(j for j, x in enumerate(xs) if lo in x)
            b_head = (b != lo) if first == k else (b == lo)
        if b_head:
            put(heads, b, (k, 1), k)
            put(tails, d, (k, 3), k)
        else:
            put(heads, d, (k, 3), k)
            put(tails, b, (k, 1), k)
    signs = []
    for k in range(len(xs)):
        signs.append(1 if heads.get(xs[k][3]) == (k, 3) else -1)
    return PDCode(tuple(xs), tuple(tuple(g) for g in comps), tuple(signs), heads)


# ------------------------------------------------------------- operations

def mirror_pd(pd: PDCode) -> PDCode:
    """Swap over and under at every crossing (the mirror image)."""
    out = []
    for (a, b, c, d), s in zip(pd.crossings, pd.signs):
        out.append((d, a, b, c) if s > 0 else (b, c, d, a))
    return pd_from_tuples(out)


def _successor(pd: PDCode) -> Dict[int, int]:
    """Label following each label along its component."""
    succ = {}
    for v, (k, slot) in pd.heads.items():
        x = pd.crossings[k]
        succ[v] = x[2] if slot == 0 else x[4 - slot]
    return succ


def _relabel(crossings, succ, starts) -> PDCode:
    new: Dict[int, int] = {}
    n = 1
    for s in starts:
        if s in new:
            continue
        v = s
        while v not in new:
            new[v] = n
            n += 1
            v = succ[v]
    return pd_from_tuples([tuple(new[v] for v in x) for x in crossings])


def pd_connected_sum(pd1: PDCode, pd2: PDCode, label1: Optional[int] = None,
                     label2: Optional[int] = None) -> PDCode:
    """Splice edge ``label1`` of ``pd1`` with edge ``label2`` of ``pd2``.

    The component of ``label1`` becomes the connected sum of the two
    spliced components; the others are carried along. Defaults splice the
    first edge of each diagram.
    """
    if not pd1.crossings:
        return pd2
    if not pd2.crossings:
        return pd1
    label1 = pd1.components[0][0] if label1 is None else label1
    label2 = pd2.components[0][0] if label2 is None else label2
    off = max(max(x) for x in pd1.crossings)
    xs = [list(x) for x in pd1.crossings] + [[v + off for v in x] for x in pd2.crossings]
    succ = dict(_successor(pd1))
    succ.update({v + off: w + off for v, w in _successor(pd2).items()})
    x, y = label1, label2 + off
    hx, hy = pd1.heads[label1], pd2.heads[label2]
    hy = (hy[0] + len(pd1.crossings), hy[1])
    xs[hx[0]][hx[1]] = y
    xs[hy[0]][hy[1]] = x
    succ[x], succ[y] = succ[y], succ[x]
    starts = [c[0] for c in pd1.components] + [c[0] + off for c in pd2.components]
    return _relabel([tuple(c) for c in xs], succ, starts)


# --------------------------------------------------------------- Wirtinger

@dataclass(frozen=True)
class WirtingerData:
    pd: PDCode
    peripheral: PeripheralPresentation
    arc_of: Dict[int, int] = field(compare=False)      # label -> generator index
    writhes: Tuple[int, ...] = ()
    linking: Dict[Tuple[int, int], int] = field(default_factory=dict, compare=False)

    @property
    def presentation(self) -> Presentation:
        return self.peripheral.presentation

    @property
    def meridians(self) -> Tuple[Word, ...]:
        return self.peripheral.meridians

    @property
    def longitudes(self) -> Tuple[Word, ...]:
        return self.peripheral.longitudes

    def generator_component(self, g: int) -> int:
        label = min(v for v, a in self.arc_of.items() if a == g)
        return self.pd.component_of[label]


def wirtinger(pd: PDCode, name: str = "") -> WirtingerData:
    """Wirtinger presentation with one meridian/longitude pair per component.

    At a crossing of sign ``e`` with over-arc ``O``, incoming under-arc
    ``A`` and outgoing under-arc ``C`` the relator is ``O^-e A O^e C^-1``.
    Longitudes are read from the lowest label of each component: the
    product of ``O^e`` over the undercrossings met, corrected by the
    meridian to the power minus the component's writhe.
    """
    parent: Dict[int, int] = {}
    for x in pd.crossings:
        for v in x:
            parent.setdefault(v, v)

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, c, d in pd.crossings:
        rb, rd = find(b), find(d)
        if rb != rd:
            parent[max(rb, rd)] = min(rb, rd)
    roots = sorted({find(v) for v in parent}, key=lambda r: min(v for v in parent if find(v) == r))
    gen_of_root = {r: i for i, r in enumerate(roots)}
    arc_of = {v: gen_of_root[find(v)] for v in parent}
    names = tuple(f"x{i + 1}" for i in range(len(roots)))

    relators = []
    for (a, b, c, d), e in zip(pd.crossings, pd.signs):
        O, A, C = Word.gen(arc_of[b]), Word.gen(arc_of[a]), Word.gen(arc_of[c])
        relators.append(O ** -e * A * O ** e * C.inverse())
    pres = Presentation(names, tuple(relators))

    comp_of = pd.component_of
    ncomp = len(pd.components)
    writhes = [0] * ncomp
    pair_sum: Dict[Tuple[int, int], int] = {}
    for (a, b, c, d), e in zip(pd.crossings, pd.signs):
        i, j = comp_of[a], comp_of[b]
        if i == j:
            writhes[i] += e
        else:
            key = (min(i, j), max(i, j))
            pair_sum[key] = pair_sum.get(key, 0) + e
    linking = {}
    for key, s in pair_sum.items():
        linking[key] = s // 2
    meridians, longitudes = [], []
    for i, comp in enumerate(pd.components):
        m = Word.gen(arc_of[comp[0]])
        letters: List[int] = []
        for v in comp:
            k, slot = pd.heads[v]
            if slot == 0:
                a, b, c, d = pd.crossings[k]
                letters.extend(Word.gen(arc_of[b], pd.signs[k]).letters)
        meridians.append(m)
        longitudes.append(Word(letters) * m ** (-writhes[i]))
    per = PeripheralPresentation(pres, tuple(meridians), tuple(longitudes), name=name)
    return WirtingerData(pd, per, arc_of, tuple(writhes), linking)


def linking_number(pd: PDCode, i: int, j: int) -> int:
    n = len(pd.components)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise PDError(f"need two distinct component indices below {n}, got {i}, {j}")
    comp_of = pd.component_of
    total = 0
    for (a, b, c, d), e in zip(pd.crossings, pd.signs):
        if {comp_of[a], comp_of[b]} == {i, j}:
            total += e
    return total // 2


def torus_2n_pd(n: int) -> PDCode:
    """Standard alternating diagram of the (2, n) torus knot or link."""
    m = 2 * n

    def lab(v):
        return (v - 1) % m + 1

    return pd_from_tuples([(lab(2 * i + 1), lab(2 * i + n + 1), lab(2 * i + 2), lab(2 * i + n + 2))
                           for i in range(n)])
