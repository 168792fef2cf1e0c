"""Small finite groups as multiplication tables, and homomorphism counting."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from .presentation import Presentation
from .words import Word

DEFAULT_HOM_CAP = 10 ** 8


class FiniteGroupError(ValueError):
    pass


class SearchCapExceeded(RuntimeError):
    pass


class FiniteGroup:
    """Elements ``0..n-1`` with a validated multiplication table."""

    def __init__(self, name: str, table: Sequence[Sequence[int]], identity: Optional[int] = None,
                 validate: bool = True):
        n = len(table)
        self.name = name
        self.table: List[List[int]] = [list(row) for row in table]
        if any(len(row) != n for row in self.table):
            raise FiniteGroupError(f"{name}: table is not square")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise FiniteGroupError(f"{name}: entry out of range")
        if identity is None:
            identity = next((e for e in range(n) if self.table[e] == list(range(n))), None)
            if identity is None:
                raise FiniteGroupError(f"{name}: no identity element")
        self.identity = identity
        e = identity
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise FiniteGroupError(f"{name}: {e} is not an identity")
        self.inverse = [0] * n
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == e]
            if len(inv) != 1 or self.table[inv[0]][a] != e:
                raise FiniteGroupError(f"{name}: element {a} has no unique inverse")
            self.inverse[a] = inv[0]
        if not validate:
            return
        for a in range(n):
            ta = self.table[a]
            for b in range(n):
                tab = ta[b]
                tb = self.table[b]
                for c in range(n):
                    if self.table[tab][c] != ta[tb[c]]:
                        raise FiniteGroupError(f"{name}: not associative at {(a, b, c)}")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def evaluate(self, w: Word, images: Sequence[int]) -> int:
        t, inv = self.table, self.inverse
        x = self.identity
        for letter in w.letters:
            g = images[abs(letter) - 1]
            x = t[x][g if letter > 0 else inv[g]]
        return x

    def generated_subgroup(self, gens: Sequence[int]) -> int:
        """Order of the subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        t = self.table
        gens = set(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = t[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(seen)

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "identity": self.identity, "table": self.table})

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def load_group_json(text: str) -> FiniteGroup:
    data = json.loads(text)
    return FiniteGroup(data["name"], data["table"], data.get("identity"))


def from_permutations(name: str, gens: Sequence[Tuple[int, ...]]) -> FiniteGroup:
    """Group generated by permutations (tuples of images), elements sorted."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    # (a*b)(i) = a(b(i)): apply b first
    table = [[index[tuple(a[b[i]] for i in range(n))] for b in elems] for a in elems]
    # permutation composition is associative by construction
    return FiniteGroup(name, table, index[ident], validate=False)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(f"C{n}", [[(a + b) % n for b in range(n)] for a in range(n)], 0, validate=False)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` (symmetries of an n-gon), named ``D{n}``."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations(f"D{n}", [rot, ref])


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return from_permutations(f"S{n}", gens)


def alternating_group(n: int) -> FiniteGroup:
    gens = [tuple(_three_cycle(n, 0, 1, k)) for k in range(2, n)]
    return from_permutations(f"A{n}", gens)


def _three_cycle(n, a, b, c):
    p = list(range(n))
    p[a], p[b], p[c] = b, c, a
    return p


@lru_cache(maxsize=None)
def group_by_name(name: str) -> FiniteGroup:
    kind, num = name[0], int(name[1:])
    if kind == "C":
        return cyclic_group(num)
    if kind == "D":
        return dihedral_group(num)
    if kind == "S":
        return symmetric_group(num)
    if kind == "A":
        return alternating_group(num)
    raise FiniteGroupError(f"unknown library group {name!r}")


LIBRARY_NAMES: Tuple[str, ...] = (
    tuple(f"C{n}" for n in range(1, 21))
    + tuple(f"D{n}" for n in range(3, 16))
    + ("S3", "A4", "S4", "A5", "S5")
)

# the groups that can actually distinguish knot groups (cyclic quotients never do)
SMALL_NAMES: Tuple[str, ...] = ("S3", "D5", "D7", "A4", "S4", "A5")


def library(names: Sequence[str] = LIBRARY_NAMES) -> List[FiniteGroup]:
    return [group_by_name(n) for n in names]


# ------------------------------------------------------------ enumeration

@dataclass(frozen=True)
class HomCount:
    group: str
    homs: int
    epis: int
    witnesses: Optional[Tuple[Tuple[int, ...], ...]] = None


def _check_cap(p: Presentation, F: FiniteGroup, cap: int):
    if F.order ** p.ngens > cap:
        raise SearchCapExceeded(
            f"{F.order}^{p.ngens} assignments into {F.name} exceed the search cap {cap}; "
            "simplify the presentation first")


def iter_homs(p: Presentation, F: FiniteGroup, cap: int = DEFAULT_HOM_CAP) -> Iterator[Tuple[int, ...]]:
    """All homomorphisms as generator-image tuples, in lexicographic order.

    Relators are checked as soon as every generator they use is assigned.
    """
    _check_cap(p, F, cap)
    g = p.ngens
    t, inv, e = F.table, F.inverse, F.identity
    by_depth: List[List[Tuple[int, ...]]] = [[] for _ in range(g + 1)]
    for r in p.relators:
        if not r.letters:
            continue
        depth = max(abs(x) for x in r.letters)
        by_depth[depth].append(r.letters)
    images = [0] * g

    def ok(depth):
        for letters in by_depth[depth]:
            x = e
            for letter in letters:
                y = images[abs(letter) - 1]
                x = t[x][y if letter > 0 else inv[y]]
            if x != e:
                return False
        return True

    if g == 0:
        if all(not r.letters for r in p.relators):
            yield ()
        return

    def rec(k):
        for a in range(F.order):
            images[k] = a
            if ok(k + 1):
                if k + 1 == g:
                    yield tuple(images)
                else:
                    yield from rec(k + 1)

    yield from rec(0)


def hom_enumerate(p: Presentation, F: FiniteGroup, cap: int = DEFAULT_HOM_CAP,
                  collect: bool = False) -> HomCount:
    homs = epis = 0
    wit = [] if collect else None
    for im in iter_homs(p, F, cap):
        homs += 1
        if F.generated_subgroup(im) == F.order:
            epis += 1
        if collect:
            wit.append(im)
    return HomCount(F.name, homs, epis, tuple(wit) if collect else None)


def fingerprint(p: Presentation, names: Sequence[str] = SMALL_NAMES,
                cap: int = DEFAULT_HOM_CAP) -> Tuple[Tuple[str, int, int], ...]:
    """(group, hom count, epi count) per library group; an isomorphism invariant."""
    out = []
    for n in names:
        c = hom_enumerate(p, group_by_name(n), cap)
        out.append((n, c.homs, c.epis))
    return tuple(out)


def is_homomorphism(p: Presentation, F: FiniteGroup, images: Sequence[int]) -> bool:
    return all(F.evaluate(r, images) == F.identity for r in p.relators)
