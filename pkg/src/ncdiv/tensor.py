"""Free associative algebra on a finite alphabet.

Words are tuples of generator indices in ``1..n``; the empty tuple is the
algebra unit.  Polynomials are sparse maps from words to nonzero Fractions.
The canonical order on words is by length, then lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

Word = tuple[int, ...]

_F0 = Fraction(0)


class AlphabetMismatch(ValueError):
    """Operands built over different alphabets."""


@dataclass(frozen=True)
class Alphabet:
    """Generators x_1 .. x_n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("alphabet needs at least one generator")

    @property
    def generators(self) -> range:
        return range(1, self.n + 1)

    def check_letter(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} out of range 1..{self.n}")

    def words(self, length: int) -> Iterable[Word]:
        """All words of the given length, lexicographic order."""
        return product(self.generators, repeat=length)


def word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def word_str(w: Word) -> str:
    return ".".join(str(i) for i in w) if w else "e"


def parse_word(s: str) -> Word:
    if s == "e":
        return ()
    return tuple(int(p) for p in s.split("."))


def _clean_terms(terms: Mapping, alphabet: Alphabet | None = None) -> dict:
    out = {}
    for k, v in terms.items():
        fv = v if isinstance(v, Fraction) else Fraction(v)
        if fv:
            out[k] = fv
    return out


class NcPoly:
    """Non-commutative polynomial: finite Fraction combination of words."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Fraction | int] | None = None):
        self.alphabet = alphabet
        self.terms: dict[Word, Fraction] = {}
        for w, v in (terms or {}).items():
            for i in w:
                alphabet.check_letter(i)
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                self.terms[w] = fv

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NcPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NcPoly":
        return cls(alphabet, {(): 1})

    @classmethod
    def word(cls, alphabet: Alphabet, w: Word, coeff: Fraction | int = 1) -> "NcPoly":
        return cls(alphabet, {tuple(w): coeff})

    @classmethod
    def generator(cls, alphabet: Alphabet, i: int) -> "NcPoly":
        return cls(alphabet, {(i,): 1})

    def _check(self, other: "NcPoly") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("polynomials over different alphabets")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, NcPoly)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.alphabet, tuple(sorted(self.terms.items(), key=lambda kv: word_key(kv[0])))))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=word_key):
            bits.append(f"{self.terms[w]}*{word_str(w)}")
        return " + ".join(bits)

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        out = dict(self.terms)
        for w, v in other.terms.items():
            nv = out.get(w, _F0) + v
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
        return NcPoly(self.alphabet, out)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.alphabet, {w: -v for w, v in self.terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            return multiply(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def scaled(self, a: Fraction | int) -> "NcPoly":
        a = a if isinstance(a, Fraction) else Fraction(a)
        if not a:
            return NcPoly.zero(self.alphabet)
        return NcPoly(self.alphabet, {w: a * v for w, v in self.terms.items()})

    def homogeneous_part(self, k: int) -> "NcPoly":
        return NcPoly(self.alphabet, {w: v for w, v in self.terms.items() if len(w) == k})

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1


def multiply(p: NcPoly, q: NcPoly) -> NcPoly:
    """Bilinear extension of word concatenation."""
    p._check(q)
    out: dict[Word, Fraction] = {}
    for w1, a in p.terms.items():
        for w2, b in q.terms.items():
            w = w1 + w2
            nv = out.get(w, _F0) + a * b
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
    return NcPoly(p.alphabet, out)


def bracket(p: NcPoly, q: NcPoly) -> NcPoly:
    """Commutator p*q - q*p."""
    return multiply(p, q) - multiply(q, p)


class PairPoly:
    """Element of T(A) (x) T(A): Fraction combination of word pairs."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[tuple[Word, Word], Fraction | int] | None = None):
        self.alphabet = alphabet
        self.terms: dict[tuple[Word, Word], Fraction] = _clean_terms(terms or {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, PairPoly)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        key = lambda pair: (word_key(pair[0]), word_key(pair[1]))
        return " + ".join(
            f"{self.terms[p]}*({word_str(p[0])})x({word_str(p[1])})"
            for p in sorted(self.terms, key=key)
        )

    def __add__(self, other: "PairPoly") -> "PairPoly":
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("pair polynomials over different alphabets")
        out = dict(self.terms)
        for p, v in other.terms.items():
            nv = out.get(p, _F0) + v
            if nv:
                out[p] = nv
            else:
                out.pop(p, None)
        return PairPoly(self.alphabet, out)

    def __sub__(self, other: "PairPoly") -> "PairPoly":
        return self + other.scaled(-1)

    def scaled(self, a: Fraction | int) -> "PairPoly":
        a = a if isinstance(a, Fraction) else Fraction(a)
        return PairPoly(self.alphabet, {p: a * v for p, v in self.terms.items()})

    def factor_mul(self, other: "PairPoly") -> "PairPoly":
        """Factor-wise product: (a x b)(c x d) = ac x bd."""
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("pair polynomials over different alphabets")
        out: dict[tuple[Word, Word], Fraction] = {}
        for (a1, b1), u in self.terms.items():
            for (a2, b2), v in other.terms.items():
                p = (a1 + a2, b1 + b2)
                nv = out.get(p, _F0) + u * v
                if nv:
                    out[p] = nv
                else:
                    out.pop(p, None)
        return PairPoly(self.alphabet, out)


def partial(i: int, p: NcPoly) -> PairPoly:
    """Double derivation d_i: a word maps to the sum of prefix x suffix
    splittings at each occurrence of the letter i."""
    p.alphabet.check_letter(i)
    out: dict[tuple[Word, Word], Fraction] = {}
    for w, coeff in p.terms.items():
        for s, letter in enumerate(w):
            if letter == i:
                pair = (w[:s], w[s + 1:])
                nv = out.get(pair, _F0) + coeff
                if nv:
                    out[pair] = nv
                else:
                    out.pop(pair, None)
    return PairPoly(p.alphabet, out)
