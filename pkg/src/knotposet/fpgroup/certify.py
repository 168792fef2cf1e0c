"""Certificates that a word lies in the normal closure of the relators.

A certificate is a tuple of ``(conjugator, relator index, exponent)``
factors; it certifies ``w`` when the free product of
``c * r_i^e * c^-1`` over the factors equals ``w`` letter for letter.
Checking one needs nothing but free reduction.

:class:`Eliminator` performs Tietze generator eliminations while keeping,
for every derived relator and every substitution, a certificate over the
*original* relators, so that later proofs in the simplified presentation
translate back.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .presentation import Presentation
from .words import Word, canonical_cyclic, cyclic_reduce, free_reduce

Factor = Tuple[Word, int, int]
Cert = Tuple[Factor, ...]

MAX_CERT_FACTORS = 20000


class CertificateTooLarge(RuntimeError):
    pass


def cert_product(relators: Sequence[Word], cert: Sequence[Factor]) -> Word:
    out: List[int] = []
    for c, i, e in cert:
        out.extend((c * relators[i] ** e * c.inverse()).letters)
    return Word(out)


def cert_conjugate(cert: Sequence[Factor], x: Word) -> Cert:
    return tuple((x * c, i, e) for c, i, e in cert)


def cert_inverse(cert: Sequence[Factor]) -> Cert:
    return tuple((c, i, -e) for c, i, e in reversed(cert))


def check_certificate(relators: Sequence[Word], word: Word, cert: Sequence[Factor]) -> bool:
    return cert_product(relators, cert) == word


def _guard(cert):
    if len(cert) > MAX_CERT_FACTORS:
        raise CertificateTooLarge(f"certificate exceeds {MAX_CERT_FACTORS} factors")
    return cert


@dataclass
class Substitution:
    gen: int
    expr: Word          # over original generator indices
    cert: Cert          # certificate of gen * expr^-1


def replace_generator(w: Word, sub: Substitution) -> Tuple[Word, Cert]:
    """``w == prod(cert) * w'`` where ``w'`` has ``sub.gen`` replaced by its expression."""
    g = sub.gen + 1
    cert: List[Factor] = []
    cur = w
    e, e_inv = sub.expr, sub.expr.inverse()
    J_inv = None
    while True:
        lt = cur.letters
        k = next((i for i, x in enumerate(lt) if abs(x) == g), None)
        if k is None:
            return cur, _guard(tuple(cert))
        A, B = Word(lt[:k]), Word(lt[k + 1:])
        if lt[k] > 0:
            cert.extend(cert_conjugate(sub.cert, A))
            cur = A * e * B
        else:
            if J_inv is None:
                J_inv = cert_inverse(sub.cert)
            cert.extend(cert_conjugate(J_inv, A * e_inv))
            cur = A * e_inv * B
        _guard(cert)


class Eliminator:
    """Tietze generator elimination with certificates over the original relators."""

    def __init__(self, pres: Presentation, max_length: int = 400):
        self.orig = pres
        self.max_length = max_length
        self.rels: List[Tuple[Word, Cert]] = [
            (r, ((Word(), i, 1),)) for i, r in enumerate(pres.relators)]
        self.subs: List[Substitution] = []
        self.eliminated: List[int] = []
        self.history: List[dict] = []
        self._dedupe()

    # --- relator bookkeeping
    def _dedupe(self):
        seen = set()
        kept = []
        for i, (r, c) in enumerate(self.rels):
            key = canonical_cyclic(r)
            if not key:
                self.history.append({"move": "drop_trivial", "relator": i})
                continue
            if key in seen:
                self.history.append({"move": "drop_duplicate", "relator": i})
                continue
            seen.add(key)
            kept.append((r, c))
        self.rels = kept

    def remaining(self) -> List[int]:
        return [g for g in range(self.orig.ngens) if g not in self.eliminated]

    def rewrite(self, w: Word) -> Tuple[Word, Cert]:
        """``w == prod(cert) * w'`` with ``w'`` over the remaining generators."""
        cert: List[Factor] = []
        cur = w
        for sub in self.subs:
            cur, c = replace_generator(cur, sub)
            cert.extend(c)
            _guard(cert)
        return cur, tuple(cert)

    # --- elimination
    def candidates(self):
        out = []
        for j, (r, _) in enumerate(self.rels):
            counts: Dict[int, int] = {}
            for x in r.letters:
                counts[abs(x) - 1] = counts.get(abs(x) - 1, 0) + 1
            for g, n in counts.items():
                if n == 1:
                    out.append((g, j))
        return out

    def _substitution(self, g: int, j: int) -> Substitution:
        r, rc = self.rels[j]
        lt = r.letters
        k = next(i for i, x in enumerate(lt) if abs(x) == g + 1)
        P = Word(lt[:k])
        rot = Word(lt[k:] + lt[:k])
        V = Word(rot.letters[1:])
        rot_cert = cert_conjugate(rc, P.inverse())
        if lt[k] > 0:
            return Substitution(g, V.inverse(), rot_cert)
        return Substitution(g, V, cert_conjugate(cert_inverse(rot_cert), Word.gen(g)))

    def _apply(self, g: int, j: int, sub: Substitution):
        new = []
        for i, (r, c) in enumerate(self.rels):
            if i == j:
                continue
            r2, F = replace_generator(r, sub)
            cert = cert_inverse(F) + c
            red, s = cyclic_reduce(r2)
            if s.letters:
                cert = cert_conjugate(cert, s.inverse())
            new.append((red, _guard(cert)))
        self.rels = new
        self.subs.append(sub)
        self.eliminated.append(g)

    def preview_length(self, g: int, j: int) -> int:
        sub = self._substitution(g, j)
        total = 0
        for i, (r, _) in enumerate(self.rels):
            if i == j:
                continue
            total += len(_plain_replace(r, sub.gen, sub.expr))
        return total

    def step(self) -> bool:
        best = None
        for g, j in self.candidates():
            try:
                length = self.preview_length(g, j)
            except CertificateTooLarge:
                continue
            if length > self.max_length:
                continue
            key = (length, g, j)
            if best is None or key < best:
                best = key
        if best is None:
            return False
        _, g, j = best
        sub = self._substitution(g, j)
        try:
            self._apply(g, j, sub)
        except CertificateTooLarge:
            return False
        self.history.append({"move": "eliminate", "generator": self.orig.names[g],
                             "expression": self.orig.fmt(sub.expr)})
        self._dedupe()
        return True

    def run(self, max_steps: Optional[int] = None) -> "Eliminator":
        steps = 0
        while max_steps is None or steps < max_steps:
            if not self.step():
                break
            steps += 1
        return self

    # --- output
    def presentation(self) -> Tuple[Presentation, Dict[int, int]]:
        """Renumbered presentation over the remaining generators and the index map."""
        keep = self.remaining()
        index = {g: i for i, g in enumerate(keep)}
        names = tuple(self.orig.names[g] for g in keep)
        rels = tuple(r.relabel(index) for r, _ in self.rels)
        return Presentation(names, rels), index

    def generator_images(self) -> List[Word]:
        """Image of each original generator, over the renumbered remaining generators."""
        _, index = self.presentation()
        return [self.rewrite(Word.gen(g))[0].relabel(index) for g in range(self.orig.ngens)]


def _plain_replace(w: Word, g: int, expr: Word) -> Word:
    out: List[int] = []
    einv = expr.inverse().letters
    for x in w.letters:
        if abs(x) == g + 1:
            out.extend(expr.letters if x > 0 else einv)
        else:
            out.append(x)
    return Word(out)


# ---------------------------------------------------------------- search

def search_trivial(relators: Sequence[Tuple[Word, Cert]], w: Word, budget: int = 10_000,
                   slack: Optional[int] = None) -> Optional[Cert]:
    """Best-first search for a sequence of relator insertions reducing ``w`` to 1.

    ``relators`` carry certificates over some base relator list; the
    returned certificate is over that base list. Insertions are only tried
    where they cancel against the current word.
    """
    if not w.letters:
        return ()
    rel_forms = []  # (letters, relator idx, exponent, P) with letters = P^-1 r^e P
    for idx, (r, _) in enumerate(relators):
        if not r.letters:
            continue
        for e in (1, -1):
            re_ = (r ** e).letters
            for k in range(len(re_)):
                rel_forms.append((re_[k:] + re_[:k], idx, e, Word(re_[:k])))
    if not rel_forms:
        return None
    maxrel = max(len(f[0]) for f in rel_forms)
    limit = len(w) + (maxrel if slack is None else slack)
    start = w.letters
    parent: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], Tuple[Word, int, int]]]] = {start: None}
    counter = itertools.count()
    heap = [(len(start), next(counter), start)]
    expanded = 0
    while heap and expanded < budget:
        _, _, u = heapq.heappop(heap)
        expanded += 1
        n = len(u)
        for letters, idx, e, P in rel_forms:
            first, last = letters[0], letters[-1]
            for p in range(n + 1):
                if not ((p > 0 and u[p - 1] == -first) or (p < n and u[p] == -last)):
                    continue
                v = free_reduce(u[:p] + letters + u[p:])
                if len(v) > limit or v in parent:
                    continue
                X = Word(u[:p])
                # v = F u with F = X P^-1 r^e P X^-1
                parent[v] = (u, (X * P.inverse(), idx, e))
                if not v:
                    return _unwind(relators, parent, v)
                heapq.heappush(heap, (len(v), next(counter), v))
    return None


def _unwind(relators, parent, end) -> Cert:
    # u_{k} = F_k u_{k-1}, u_last = 1  =>  w = F_1^-1 F_2^-1 ... F_k^-1
    steps = []
    node = end
    while parent[node] is not None:
        prev, f = parent[node]
        steps.append(f)
        node = prev
    steps.reverse()
    cert: List[Factor] = []
    for conj, idx, e in steps:
        inner = relators[idx][1]
        inner = inner if e == 1 else cert_inverse(inner)
        # F^-1 = conj r^-e conj^-1
        cert.extend(cert_conjugate(cert_inverse(inner), conj))
        _guard(cert)
    return tuple(cert)
