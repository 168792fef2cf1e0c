"""Free-group words.

A word is a tuple of nonzero ints: letter ``i+1`` is generator ``i``,
``-(i+1)`` its inverse. :class:`Word` keeps the tuple freely reduced.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Sequence, Tuple


class WordSyntaxError(ValueError):
    pass


def free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    out: List[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        self.letters: Tuple[int, ...] = free_reduce(letters)

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "Word":
        x = i + 1 if e > 0 else -(i + 1)
        return cls((x,) * abs(e))

    @classmethod
    def from_syllables(cls, syllables: Iterable[Tuple[int, int]]) -> "Word":
        out: List[int] = []
        for g, e in syllables:
            out.extend(Word.gen(g, e).letters)
        return cls(out)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word({self.letters!r})"

    def conjugate(self, c: "Word") -> "Word":
        """``c * self * c^-1``."""
        return c * self * c.inverse()

    def syllables(self) -> List[Tuple[int, int]]:
        out: List[Tuple[int, int]] = []
        for x in self.letters:
            g, e = abs(x) - 1, (1 if x > 0 else -1)
            if out and out[-1][0] == g:
                out[-1] = (g, out[-1][1] + e)
            else:
                out.append((g, e))
        return out

    def exponent_sums(self, ngens: int) -> List[int]:
        v = [0] * ngens
        for x in self.letters:
            v[abs(x) - 1] += 1 if x > 0 else -1
        return v

    def generators(self) -> set:
        return {abs(x) - 1 for x in self.letters}

    def substitute(self, images: Sequence["Word"]) -> "Word":
        out: List[int] = []
        for x in self.letters:
            w = images[abs(x) - 1]
            out.extend(w.letters if x > 0 else w.inverse().letters)
        return Word(out)

    def relabel(self, mapping: Dict[int, int]) -> "Word":
        """Rename generator indices (old -> new)."""
        return Word(tuple((mapping[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in self.letters))


IDENTITY = Word()


def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """Return ``(r, s)`` with ``w == s * r * s^-1`` and ``r`` cyclically reduced."""
    lt = w.letters
    i, j = 0, len(lt) - 1
    while i < j and lt[i] == -lt[j]:
        i += 1
        j -= 1
    return Word(lt[i:j + 1]), Word(lt[:i])


def cyclic_permutations(w: Word) -> List[Word]:
    lt = w.letters
    return [Word(lt[k:] + lt[:k]) for k in range(len(lt))] if lt else [w]


def canonical_cyclic(w: Word) -> Tuple[int, ...]:
    """Key identifying a relator up to cyclic permutation and inversion."""
    r, _ = cyclic_reduce(w)
    if not r.letters:
        return ()
    forms = [p.letters for p in cyclic_permutations(r)]
    forms += [p.letters for p in cyclic_permutations(r.inverse())]
    return min(forms, key=lambda t: (len(t), [(abs(x), -x) for x in t]))


# ------------------------------------------------------------------- text

def format_word(w: Word, names: Sequence[str]) -> str:
    """``x^-1y^2x``; identity is ``1``. Multi-char names are separated by ``*``."""
    if not w.letters:
        return "1"
    multi = any(len(n) > 1 for n in names)
    parts = []
    for g, e in w.syllables():
        n = names[g]
        parts.append(n if e == 1 else f"{n}^{e}")
    return ("*" if multi else "").join(parts)


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse ``x^-1 y x^2``-style text; generator names matched longest-first."""
    s = text.strip()
    if s in ("", "1", "e"):
        return IDENTITY
    order = sorted(range(len(names)), key=lambda i: -len(names[i]))
    pos = 0
    letters: List[int] = []
    while pos < len(s):
        if s[pos] in " *.\t":
            pos += 1
            continue
        for i in order:
            n = names[i]
            if s.startswith(n, pos):
                pos += len(n)
                m = re.match(r"\s*\^\s*(-?\d+)", s[pos:])
                e = 1
                if m:
                    e = int(m.group(1))
                    pos += m.end()
                letters.extend(Word.gen(i, e).letters)
                break
        else:
            raise WordSyntaxError(f"unknown generator at position {pos} in {text!r}")
    return Word(letters)
