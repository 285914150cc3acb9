"""The graded Lie algebra of derivations of the free associative algebra.

A basis derivation ``x_i0^* (x) w`` sends the generator ``x_i0`` to the word
``w`` and every other generator to zero; it has degree ``len(w) - 1 >= -1``.
Degree -1 elements (empty word) delete one letter.  The bracket is computed
by the two-sided insertion formula on basis pairs, which agrees with the
commutator of the induced endomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .cyclic import BiCyclicPoly, CyclicPoly, canonical_rotation
from .linalg import SparseMatrix, SparseVector, rank, span_dimension
from .tensor import Alphabet, AlphabetMismatch, NcPoly, Word, parse_word, word_key, word_str

_F0 = Fraction(0)


class DerBasisElem(NamedTuple):
    """Dual generator index paired with a replacement word."""

    dual: int
    word: Word

    @property
    def degree(self) -> int:
        return len(self.word) - 1

    def __str__(self) -> str:
        return f"d{self.dual}*:{word_str(self.word)}"


def parse_der_elem(s: str) -> DerBasisElem:
    head, _, tail = s.partition(":")
    if not (head.startswith("d") and head.endswith("*")):
        raise ValueError(f"not a derivation basis literal: {s!r}")
    return DerBasisElem(int(head[1:-1]), parse_word(tail))


def elem_key(e: DerBasisElem):
    return (e.dual, word_key(e.word))


def parse_derivation(alphabet: Alphabet, s: str) -> "Derivation":
    """Inverse of ``repr``: parse "3/2*d1*:1.2 + -1*d2*:e" style strings."""
    if s.strip() == "0":
        return Derivation(alphabet)
    terms = {}
    for part in s.split(" + "):
        coeff, _, elem = part.partition("*d")
        e = parse_der_elem("d" + elem)
        terms[e] = terms.get(e, Fraction(0)) + Fraction(coeff)
    return Derivation(alphabet, terms)


class Derivation:
    """Fraction combination of basis derivations over one alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[DerBasisElem, Fraction | int] | None = None):
        self.alphabet = alphabet
        self.terms: dict[DerBasisElem, Fraction] = {}
        for e, v in (terms or {}).items():
            if not isinstance(e, DerBasisElem):
                e = DerBasisElem(e[0], tuple(e[1]))
            alphabet.check_letter(e.dual)
            for i in e.word:
                alphabet.check_letter(i)
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                self.terms[e] = fv

    @classmethod
    def basis(cls, alphabet: Alphabet, dual: int, word: Word, coeff: Fraction | int = 1) -> "Derivation":
        return cls(alphabet, {DerBasisElem(dual, tuple(word)): coeff})

    def _check(self, other: "Derivation") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("derivations over different alphabets")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Derivation)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{self.terms[e]}*{e}" for e in sorted(self.terms, key=elem_key)
        )

    def __add__(self, other: "Derivation") -> "Derivation":
        self._check(other)
        out = dict(self.terms)
        for e, v in other.terms.items():
            nv = out.get(e, _F0) + v
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
        return Derivation(self.alphabet, out)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + other.scaled(-1)

    def scaled(self, a: Fraction | int) -> "Derivation":
        a = a if isinstance(a, Fraction) else Fraction(a)
        return Derivation(self.alphabet, {e: a * v for e, v in self.terms.items()})

    def __rmul__(self, a):
        return self.scaled(a)

    def degrees(self) -> set[int]:
        return {e.degree for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, k: int) -> "Derivation":
        return Derivation(self.alphabet, {e: v for e, v in self.terms.items() if e.degree == k})

    # -- action on the tensor algebra ------------------------------------

    def apply_word(self, w: Word) -> NcPoly:
        """Leibniz action on a single word: substitute at every position."""
        out: dict[Word, Fraction] = {}
        for e, coeff in self.terms.items():
            for s, letter in enumerate(w):
                if letter == e.dual:
                    nw = w[:s] + e.word + w[s + 1:]
                    nv = out.get(nw, _F0) + coeff
                    if nv:
                        out[nw] = nv
                    else:
                        out.pop(nw, None)
        return NcPoly(self.alphabet, out)

    def apply(self, p: NcPoly) -> NcPoly:
        if self.alphabet != p.alphabet:
            raise AlphabetMismatch("derivation and polynomial alphabets differ")
        out = NcPoly.zero(self.alphabet)
        for w, coeff in p.terms.items():
            out = out + self.apply_word(w).scaled(coeff)
        return out

    # -- module actions on cyclic targets --------------------------------

    def act_cyclic(self, c: CyclicPoly) -> CyclicPoly:
        """Leibniz action on cyclic words via any representative."""
        out = CyclicPoly(self.alphabet)
        for neck, coeff in c.terms.items():
            out = out + CyclicPoly(self.alphabet, self.apply_word(neck).terms).scaled(coeff)
        return out

    def act_bicyclic(self, b: BiCyclicPoly) -> BiCyclicPoly:
        """Factor-wise Leibniz action on necklace pairs."""
        acc: dict[tuple[Word, Word], Fraction] = {}
        for (u, v), coeff in b.terms.items():
            for w, a in self.apply_word(u).terms.items():
                key = (canonical_rotation(w), v)
                nv = acc.get(key, _F0) + coeff * a
                if nv:
                    acc[key] = nv
                else:
                    acc.pop(key, None)
            for w, a in self.apply_word(v).terms.items():
                key = (u, canonical_rotation(w))
                nv = acc.get(key, _F0) + coeff * a
                if nv:
                    acc[key] = nv
                else:
                    acc.pop(key, None)
        return BiCyclicPoly(self.alphabet, acc)

    def act(self, value):
        """Dispatch the Lie module action by target type."""
        if isinstance(value, NcPoly):
            return self.apply(value)
        if isinstance(value, CyclicPoly):
            return self.act_cyclic(value)
        if isinstance(value, BiCyclicPoly):
            return self.act_bicyclic(value)
        raise TypeError(f"no action on {type(value).__name__}")

    # -- Lie bracket ------------------------------------------------------

    def bracket(self, other: "Derivation") -> "Derivation":
        self._check(other)
        out: dict[DerBasisElem, Fraction] = {}

        def _accumulate(e: DerBasisElem, v: Fraction):
            nv = out.get(e, _F0) + v
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)

        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                c = c1 * c2
                u, v = e1.word, e2.word
                for s, letter in enumerate(v):
                    if letter == e1.dual:
                        _accumulate(DerBasisElem(e2.dual, v[:s] + u + v[s + 1:]), c)
                for t, letter in enumerate(u):
                    if letter == e2.dual:
                        _accumulate(DerBasisElem(e1.dual, u[:t] + v + u[t + 1:]), -c)
        return Derivation(self.alphabet, out)


def der_bracket(d1: Derivation, d2: Derivation) -> Derivation:
    return d1.bracket(d2)


def enumerate_basis(alphabet: Alphabet, k: int) -> list[DerBasisElem]:
    """All basis derivations of degree k, dual index first, then word order."""
    if k < -1:
        raise ValueError("derivation degree must be >= -1")
    return [
        DerBasisElem(i, w)
        for i in alphabet.generators
        for w in alphabet.words(k + 1)
    ]


def coords(d: Derivation, index: Mapping[DerBasisElem, int], length: int) -> SparseVector:
    """Coordinate vector of a derivation in a fixed basis enumeration."""
    return SparseVector(length, {index[e]: v for e, v in d.terms.items()})


@dataclass(frozen=True)
class MszReport:
    """Result of the degree-k generation check."""

    n: int
    k: int
    dim_target: int
    dim_bracket_span: int
    dim_square_image: int | None
    dim_span: int
    direct_sum_ok: bool


def _bracket_span_vectors(alphabet, degrees: list[tuple[int, int]], index, length):
    vecs = []
    for p, q in degrees:
        for e1 in enumerate_basis(alphabet, p):
            d1 = Derivation(alphabet, {e1: 1})
            for e2 in enumerate_basis(alphabet, q):
                b = d1.bracket(Derivation(alphabet, {e2: 1}))
                if not b.is_zero():
                    vecs.append(coords(b, index, length))
    return vecs


def verify_msz_decomposition(alphabet: Alphabet, k: int) -> MszReport:
    """Check how degree-k derivations decompose into bracket spans.

    For k = 2 the target splits as the embedded square s(A (x) A), with
    s(x_i (x) x_j) = x_1^* (x) x_i (x) x_1 (x) x_j, plus brackets of two
    degree-1 elements, and the sum must be direct.  For k >= 3 (and n >= k)
    brackets of degrees (k-1, 1) and (k-2, 2) must already fill the space.
    """
    n = alphabet.n
    if k == 2:
        if n < 2:
            raise ValueError("k = 2 check needs n >= 2")
    elif k >= 3:
        if n < k:
            raise ValueError(f"k = {k} check needs n >= k")
    else:
        raise ValueError("decomposition check defined for k >= 2")

    basis = enumerate_basis(alphabet, k)
    index = {e: i for i, e in enumerate(basis)}
    length = len(basis)

    if k == 2:
        brackets = _bracket_span_vectors(alphabet, [(1, 1)], index, length)
        square = []
        for i in alphabet.generators:
            for j in alphabet.generators:
                d = Derivation.basis(alphabet, 1, (i, 1, j))
                square.append(coords(d, index, length))
        dim_brackets = span_dimension(brackets)
        dim_square = span_dimension(square)
        dim_total = span_dimension(brackets + square)
        ok = (
            dim_total == length
            and dim_brackets + dim_square == dim_total
        )
        return MszReport(n, k, length, dim_brackets, dim_square, dim_total, ok)

    brackets = _bracket_span_vectors(alphabet, [(k - 1, 1), (k - 2, 2)], index, length)
    dim_brackets = span_dimension(brackets)
    return MszReport(n, k, length, dim_brackets, None, dim_brackets, dim_brackets == length)
