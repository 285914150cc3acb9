"""Cyclic words (necklaces) and the abelianization of the tensor algebra.

A necklace is stored as the lexicographically least rotation of any of its
representatives, found with Booth's algorithm.  ``CyclicPoly`` models the
quotient of the tensor algebra by commutators, ``BiCyclicPoly`` its tensor
square.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .tensor import Alphabet, AlphabetMismatch, NcPoly, PairPoly, Word, word_key, word_str

Necklace = tuple[int, ...]
NeckPair = tuple[Necklace, Necklace]

_F0 = Fraction(0)


def least_rotation(w: Word) -> int:
    """Offset of the lexicographically smallest rotation (Booth)."""
    n = len(w)
    if n <= 1:
        return 0
    s = w + w
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def canonical_rotation(w: Word) -> Necklace:
    r = least_rotation(tuple(w))
    return tuple(w[r:]) + tuple(w[:r])


def necklace_str(n: Necklace) -> str:
    return f"|{word_str(n)}|"


def pair_str(p: NeckPair) -> str:
    return f"{necklace_str(p[0])}*{necklace_str(p[1])}"


def parse_necklace(s: str) -> Necklace:
    if not (s.startswith("|") and s.endswith("|")):
        raise ValueError(f"not a necklace literal: {s!r}")
    from .tensor import parse_word

    return canonical_rotation(parse_word(s[1:-1]))


def necklaces(alphabet: Alphabet, length: int) -> list[Necklace]:
    """All canonical necklaces of the given length, in word order."""
    return [w for w in alphabet.words(length) if canonical_rotation(w) == w]


def bicyclic_basis(alphabet: Alphabet, total_degree: int) -> list[NeckPair]:
    """All necklace pairs with lengths summing to ``total_degree``."""
    out = []
    for la in range(total_degree + 1):
        for a in necklaces(alphabet, la):
            for b in necklaces(alphabet, total_degree - la):
                out.append((a, b))
    return out


class CyclicPoly:
    """Fraction combination of necklaces."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Necklace, Fraction | int] | None = None):
        self.alphabet = alphabet
        self.terms: dict[Necklace, Fraction] = {}
        for k, v in (terms or {}).items():
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                key = canonical_rotation(k)
                nv = self.terms.get(key, _F0) + fv
                if nv:
                    self.terms[key] = nv
                else:
                    self.terms.pop(key, None)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, CyclicPoly)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{self.terms[k]}*{necklace_str(k)}" for k in sorted(self.terms, key=word_key)
        )

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("cyclic polynomials over different alphabets")
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, _F0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return CyclicPoly(self.alphabet, out)

    def __sub__(self, other: "CyclicPoly") -> "CyclicPoly":
        return self + other.scaled(-1)

    def scaled(self, a: Fraction | int) -> "CyclicPoly":
        a = a if isinstance(a, Fraction) else Fraction(a)
        return CyclicPoly(self.alphabet, {k: a * v for k, v in self.terms.items()})

    def __rmul__(self, a):
        return self.scaled(a)

    def homogeneous_part(self, k: int) -> "CyclicPoly":
        return CyclicPoly(self.alphabet, {n: v for n, v in self.terms.items() if len(n) == k})

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}


class BiCyclicPoly:
    """Fraction combination of ordered necklace pairs."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[NeckPair, Fraction | int] | None = None):
        self.alphabet = alphabet
        self.terms: dict[NeckPair, Fraction] = {}
        for (a, b), v in (terms or {}).items():
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                key = (canonical_rotation(a), canonical_rotation(b))
                nv = self.terms.get(key, _F0) + fv
                if nv:
                    self.terms[key] = nv
                else:
                    self.terms.pop(key, None)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, BiCyclicPoly)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        key = lambda p: (word_key(p[0]), word_key(p[1]))
        return " + ".join(f"{self.terms[p]}*{pair_str(p)}" for p in sorted(self.terms, key=key))

    def __add__(self, other: "BiCyclicPoly") -> "BiCyclicPoly":
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("bicyclic polynomials over different alphabets")
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, _F0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return BiCyclicPoly(self.alphabet, out)

    def __sub__(self, other: "BiCyclicPoly") -> "BiCyclicPoly":
        return self + other.scaled(-1)

    def scaled(self, a: Fraction | int) -> "BiCyclicPoly":
        a = a if isinstance(a, Fraction) else Fraction(a)
        return BiCyclicPoly(self.alphabet, {k: a * v for k, v in self.terms.items()})

    def __rmul__(self, a):
        return self.scaled(a)

    def homogeneous_part(self, k: int) -> "BiCyclicPoly":
        return BiCyclicPoly(
            self.alphabet,
            {p: v for p, v in self.terms.items() if len(p[0]) + len(p[1]) == k},
        )

    def degrees(self) -> set[int]:
        return {len(a) + len(b) for a, b in self.terms}


def project(p: NcPoly) -> CyclicPoly:
    """Canonical projection onto cyclic words; kills all commutators."""
    return CyclicPoly(p.alphabet, {w: v for w, v in p.terms.items()})


def project_pair(pp: PairPoly) -> BiCyclicPoly:
    """Projection of a tensor-square element, factor by factor."""
    return BiCyclicPoly(pp.alphabet, {p: v for p, v in pp.terms.items()})


def switch(b: BiCyclicPoly) -> BiCyclicPoly:
    """Swap the two necklace factors; an involution."""
    return BiCyclicPoly(b.alphabet, {(q, p): v for (p, q), v in b.terms.items()})
