"""Symplectic derivations of free Lie algebras and the Enomoto-Satoh trace.

The free Lie algebra on 2n generators x_1..x_n, y_1..y_n is handled in the
Lyndon-word basis: a Lyndon word stands for its standard-factorization
bracketing, and the embedding into the tensor algebra expands brackets
recursively.  The embedded image of a Lyndon word is the word itself plus
lexicographically larger terms, so tensor elements are converted back by
greedy extraction of the smallest word.

A symplectic derivation annihilates omega = sum_j [x_j, y_j].  Degree-d
bases of the symplectic derivation algebra are computed as exact kernels of
the annihilation condition, block by block in the Cartan weight grading.
The trace map embeds a derivation's value in the tensor algebra, contracts
the dual generator against the leading letter and projects to cyclic words;
its uniqueness as a degree-zero cocycle is checked by an exact kernel
computation over the computed bases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .cyclic import CyclicPoly, necklace_str, necklaces, project
from .derivation import DerBasisElem, Derivation
from .linalg import IntEchelon, SparseMatrix, SparseVector, in_span, kernel_basis
from .tensor import Alphabet, NcPoly, Word, bracket as tensor_bracket, word_key, word_str

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class SymplecticContext:
    """Generators x_1..x_n, y_1..y_n with pairing w(x_i, y_j) = delta_ij,
    w(y_i, x_j) = -delta_ij."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(2 * self.n)

    def x(self, i: int) -> int:
        return i

    def y(self, i: int) -> int:
        return self.n + i

    def is_x(self, g: int) -> bool:
        return g <= self.n

    def omega(self, g: int, h: int) -> int:
        if h == g + self.n and g <= self.n:
            return 1
        if g == h + self.n and h <= self.n:
            return -1
        return 0

    def gen_name(self, g: int) -> str:
        return f"x{g}" if g <= self.n else f"y{g - self.n}"

    def parse_gen(self, s: str) -> int:
        kind, idx = s[0], int(s[1:])
        if kind == "x":
            return idx
        if kind == "y":
            return self.n + idx
        raise ValueError(f"not a generator name: {s!r}")

    def weight(self, g: int) -> tuple[int, ...]:
        w = [0] * self.n
        if g <= self.n:
            w[g - 1] = 1
        else:
            w[g - self.n - 1] = -1
        return tuple(w)

    def word_weight(self, word: Word) -> tuple[int, ...]:
        w = [0] * self.n
        for g in word:
            if g <= self.n:
                w[g - 1] += 1
            else:
                w[g - self.n - 1] -= 1
        return tuple(w)


def _mobius(k: int) -> int:
    mu, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            mu = -mu
        p += 1
    if k > 1:
        mu = -mu
    return mu


def witt_dimension(m: int, k: int) -> int:
    """Dimension of the degree-k part of the free Lie algebra on m letters."""
    total = 0
    for d in range(1, k + 1):
        if k % d == 0:
            total += _mobius(d) * m ** (k // d)
    return total // k


class LyndonBasis:
    """Lyndon words over a fixed alphabet with cached bracket expansions."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._words: dict[int, tuple[Word, ...]] = {}
        self._embed: dict[Word, NcPoly] = {}

    def words(self, length: int) -> tuple[Word, ...]:
        cached = self._words.get(length)
        if cached is None:
            cached = tuple(self._duval(length))
            self._words[length] = cached
        return cached

    def _duval(self, length: int):
        m = self.alphabet.n
        w = [1]
        while w:
            if len(w) == length:
                yield tuple(w)
            # next Lyndon word of length <= `length`
            w = [w[i % len(w)] for i in range(length)]
            while w and w[-1] == m:
                w.pop()
            if w:
                w[-1] += 1

    def is_lyndon(self, w: Word) -> bool:
        return len(w) > 0 and all(w < w[i:] + w[:i] for i in range(1, len(w)))

    def factorization(self, w: Word) -> tuple[Word, Word]:
        """Standard factorization: the right factor is the lexicographically
        least proper suffix."""
        if len(w) < 2:
            raise ValueError("factorization needs length >= 2")
        v = min(w[i:] for i in range(1, len(w)))
        return w[: len(w) - len(v)], v

    def embed_word(self, w: Word) -> NcPoly:
        """Expansion of the standard bracketing in the tensor algebra."""
        cached = self._embed.get(w)
        if cached is None:
            if len(w) == 1:
                cached = NcPoly.word(self.alphabet, w)
            else:
                u, v = self.factorization(w)
                cached = tensor_bracket(self.embed_word(u), self.embed_word(v))
            self._embed[w] = cached
        return cached

    def from_tensor(self, p: NcPoly) -> dict[Word, Fraction]:
        """Lyndon coordinates of a tensor element of the Lie subspace.

        Greedy extraction on the lexicographically smallest word; raises
        ValueError when the input is not a Lie element.
        """
        out: dict[Word, Fraction] = {}
        remaining = dict(p.terms)
        while remaining:
            w = min(remaining, key=word_key)
            if not self.is_lyndon(w):
                raise ValueError(f"not a Lie element: stray word {word_str(w)}")
            coeff = remaining[w]
            out[w] = coeff
            for w2, c2 in self.embed_word(w).terms.items():
                nv = remaining.get(w2, _F0) - coeff * c2
                if nv:
                    remaining[w2] = nv
                else:
                    remaining.pop(w2, None)
        return out


_lyndon_cache: dict[int, LyndonBasis] = {}


def lyndon_basis(alphabet: Alphabet) -> LyndonBasis:
    basis = _lyndon_cache.get(alphabet.n)
    if basis is None:
        basis = LyndonBasis(alphabet)
        _lyndon_cache[alphabet.n] = basis
    return basis


class LieElement:
    """Free Lie algebra element in Lyndon coordinates."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Fraction | int] | None = None):
        self.alphabet = alphabet
        basis = lyndon_basis(alphabet)
        self.terms: dict[Word, Fraction] = {}
        for w, v in (terms or {}).items():
            w = tuple(w)
            if not basis.is_lyndon(w):
                raise ValueError(f"{word_str(w)} is not a Lyndon word")
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                self.terms[w] = fv

    @classmethod
    def generator(cls, alphabet: Alphabet, g: int) -> "LieElement":
        return cls(alphabet, {(g,): 1})

    @classmethod
    def from_tensor(cls, p: NcPoly) -> "LieElement":
        out = cls(p.alphabet)
        out.terms = lyndon_basis(p.alphabet).from_tensor(p)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[w]}*L[{word_str(w)}]" for w in sorted(self.terms, key=word_key))

    def __add__(self, other: "LieElement") -> "LieElement":
        out = LieElement(self.alphabet)
        merged = dict(self.terms)
        for w, v in other.terms.items():
            nv = merged.get(w, _F0) + v
            if nv:
                merged[w] = nv
            else:
                merged.pop(w, None)
        out.terms = merged
        return out

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scaled(-1)

    def scaled(self, a: Fraction | int) -> "LieElement":
        a = a if isinstance(a, Fraction) else Fraction(a)
        out = LieElement(self.alphabet)
        if a:
            out.terms = {w: a * v for w, v in self.terms.items()}
        return out

    def __rmul__(self, a):
        return self.scaled(a)

    def to_tensor(self) -> NcPoly:
        basis = lyndon_basis(self.alphabet)
        out = NcPoly.zero(self.alphabet)
        for w, v in self.terms.items():
            out = out + basis.embed_word(w).scaled(v)
        return out

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def homogeneous_part(self, k: int) -> "LieElement":
        out = LieElement(self.alphabet)
        out.terms = {w: v for w, v in self.terms.items() if len(w) == k}
        return out


def lie_bracket(a: LieElement, b: LieElement) -> LieElement:
    """Bracket computed in the tensor algebra, re-expressed in Lyndon form."""
    if a.alphabet != b.alphabet:
        raise ValueError("Lie elements over different alphabets")
    return LieElement.from_tensor(tensor_bracket(a.to_tensor(), b.to_tensor()))


def embed(a: LieElement) -> NcPoly:
    """Inclusion of the free Lie algebra into the tensor algebra."""
    return a.to_tensor()


SpKey = tuple[int, Word]  # (dual generator, Lyndon word)


def sp_key_weight(ctx: SymplecticContext, key: SpKey) -> tuple[int, ...]:
    g, w = key
    gw = ctx.weight(g)
    ww = ctx.word_weight(w)
    return tuple(a - b for a, b in zip(ww, gw))


class SpDerivation:
    """Derivation of the free Lie algebra annihilating sum_j [x_j, y_j].

    Stored as Fraction coefficients on (dual generator, Lyndon word) keys;
    the symplectic condition is verified on construction.
    """

    __slots__ = ("ctx", "terms", "_tensor")

    def __init__(
        self,
        ctx: SymplecticContext,
        terms: Mapping[SpKey, Fraction | int] | None = None,
        check: bool = True,
    ):
        self.ctx = ctx
        basis = lyndon_basis(ctx.alphabet)
        self.terms: dict[SpKey, Fraction] = {}
        for (g, w), v in (terms or {}).items():
            w = tuple(w)
            ctx.alphabet.check_letter(g)
            if not basis.is_lyndon(w):
                raise ValueError(f"{word_str(w)} is not a Lyndon word")
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                self.terms[(g, w)] = fv
        self._tensor: Derivation | None = None
        if check and not self.symplectic_defect().is_zero():
            raise ValueError("derivation does not annihilate the symplectic element")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, SpDerivation)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        names = []
        for (g, w), v in sorted(self.terms.items(), key=lambda kv: (kv[0][0], word_key(kv[0][1]))):
            names.append(f"{v}*{self.ctx.gen_name(g)}*:L[{word_str(w)}]")
        return " + ".join(names)

    def __add__(self, other: "SpDerivation") -> "SpDerivation":
        if self.ctx != other.ctx:
            raise ValueError("derivations over different contexts")
        merged = dict(self.terms)
        for k, v in other.terms.items():
            nv = merged.get(k, _F0) + v
            if nv:
                merged[k] = nv
            else:
                merged.pop(k, None)
        return SpDerivation(self.ctx, merged, check=False)

    def __sub__(self, other: "SpDerivation") -> "SpDerivation":
        return self + other.scaled(-1)

    def scaled(self, a: Fraction | int) -> "SpDerivation":
        a = a if isinstance(a, Fraction) else Fraction(a)
        return SpDerivation(self.ctx, {k: a * v for k, v in self.terms.items()}, check=False)

    def __rmul__(self, a):
        return self.scaled(a)

    def degrees(self) -> set[int]:
        return {len(w) - 1 for _, w in self.terms}

    def value_on(self, g: int) -> LieElement:
        out = LieElement(self.ctx.alphabet)
        out.terms = {w: v for (h, w), v in self.terms.items() if h == g}
        return out

    def to_tensor(self) -> Derivation:
        """The induced derivation of the tensor algebra."""
        if self._tensor is None:
            alphabet = self.ctx.alphabet
            basis = lyndon_basis(alphabet)
            acc: dict[DerBasisElem, Fraction] = {}
            for (g, w), v in self.terms.items():
                for word, c in basis.embed_word(w).terms.items():
                    e = DerBasisElem(g, word)
                    nv = acc.get(e, _F0) + v * c
                    if nv:
                        acc[e] = nv
                    else:
                        acc.pop(e, None)
            self._tensor = Derivation(alphabet, acc)
        return self._tensor

    def symplectic_defect(self) -> NcPoly:
        """Image of sum_j [x_j, y_j], in the tensor algebra; zero iff valid."""
        alphabet = self.ctx.alphabet
        omega = NcPoly.zero(alphabet)
        for j in range(1, self.ctx.n + 1):
            xj, yj = (self.ctx.x(j),), (self.ctx.y(j),)
            omega = omega + NcPoly.word(alphabet, xj + yj) - NcPoly.word(alphabet, yj + xj)
        return self.to_tensor().apply(omega)

    def apply_lie(self, a: LieElement) -> LieElement:
        return LieElement.from_tensor(self.to_tensor().apply(a.to_tensor()))

    def bracket(self, other: "SpDerivation") -> "SpDerivation":
        """Commutator, computed on generator values."""
        if self.ctx != other.ctx:
            raise ValueError("derivations over different contexts")
        acc: dict[SpKey, Fraction] = {}
        for g in self.ctx.alphabet.generators:
            val = self.apply_lie(other.value_on(g)) - other.apply_lie(self.value_on(g))
            for w, v in val.terms.items():
                acc[(g, w)] = v
        return SpDerivation(self.ctx, acc, check=False)

    def act_cyclic(self, c: CyclicPoly) -> CyclicPoly:
        return self.to_tensor().act_cyclic(c)


class Wedge3:
    """Element of the third exterior power of H, on increasing index triples."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SymplecticContext, terms: Mapping[tuple[int, int, int], Fraction | int] | None = None):
        self.ctx = ctx
        self.terms: dict[tuple[int, int, int], Fraction] = {}
        for triple, v in (terms or {}).items():
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if not fv:
                continue
            a, b, c = triple
            if len({a, b, c}) < 3:
                continue
            sign = 1
            seq = [a, b, c]
            # sort with sign bookkeeping
            for i in range(2):
                for j in range(2 - i):
                    if seq[j] > seq[j + 1]:
                        seq[j], seq[j + 1] = seq[j + 1], seq[j]
                        sign = -sign
            key = tuple(seq)
            nv = self.terms.get(key, _F0) + sign * fv
            if nv:
                self.terms[key] = nv
            else:
                self.terms.pop(key, None)

    @classmethod
    def basis_element(cls, ctx: SymplecticContext, a: int, b: int, c: int) -> "Wedge3":
        return cls(ctx, {(a, b, c): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Wedge3) and self.ctx == other.ctx and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        name = lambda t: "^".join(self.ctx.gen_name(g) for g in t)
        return " + ".join(f"{v}*{name(t)}" for t, v in sorted(self.terms.items()))


def wedge_str(ctx: SymplecticContext, triple: tuple[int, int, int]) -> str:
    return "^".join(ctx.gen_name(g) for g in triple)


def wedge_basis(ctx: SymplecticContext) -> list[tuple[int, int, int]]:
    return list(combinations(range(1, 2 * ctx.n + 1), 3))


def _gen_bracket(alphabet: Alphabet, a: int, b: int) -> LieElement:
    if a == b:
        return LieElement(alphabet)
    if a < b:
        return LieElement(alphabet, {(a, b): 1})
    return LieElement(alphabet, {(b, a): -1})


def phi_inject(w: Wedge3) -> SpDerivation:
    """The standard inclusion of wedge-cubed H into the symplectic
    derivations: contract one slot with the pairing, bracket the other two."""
    ctx = w.ctx
    alphabet = ctx.alphabet
    acc: dict[SpKey, Fraction] = {}
    for (z1, z2, z3), coeff in w.terms.items():
        cyc = [(z1, z2, z3), (z2, z3, z1), (z3, z1, z2)]
        for g in alphabet.generators:
            val = LieElement(alphabet)
            for za, zb, zc in cyc:
                pairing = ctx.omega(g, za)
                if pairing:
                    val = val + _gen_bracket(alphabet, zb, zc).scaled(pairing)
            for word, v in val.terms.items():
                key = (g, word)
                nv = acc.get(key, _F0) + coeff * v
                if nv:
                    acc[key] = nv
                else:
                    acc.pop(key, None)
    return SpDerivation(ctx, acc)


def phi_bar_3(w: Wedge3) -> LieElement:
    """Contraction of wedge-cubed H into H with the symplectic pairing."""
    ctx = w.ctx
    out = LieElement(ctx.alphabet)
    for (z1, z2, z3), coeff in w.terms.items():
        zs = (z1, z2, z3)
        for (i, j, keep) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            sign = (-1) ** (i + j + 1)  # 0-based i+j has the parity of 1-based i+j+1
            pairing = ctx.omega(zs[i], zs[j])
            if pairing:
                out = out + LieElement.generator(ctx.alphabet, zs[keep]).scaled(sign * pairing * coeff)
    return out


def contraction_phi_k(d: SpDerivation, degree: int) -> NcPoly:
    """Embed the Lie value and contract the dual against the first letter."""
    if d.degrees() - {degree}:
        raise ValueError(f"derivation is not homogeneous of degree {degree}")
    alphabet = d.ctx.alphabet
    basis = lyndon_basis(alphabet)
    acc: dict[Word, Fraction] = {}
    for (g, w), coeff in d.terms.items():
        for word, c in basis.embed_word(w).terms.items():
            if word[0] == g:
                tail = word[1:]
                nv = acc.get(tail, _F0) + coeff * c
                if nv:
                    acc[tail] = nv
                else:
                    acc.pop(tail, None)
    return NcPoly(alphabet, acc)


def es_trace(d: SpDerivation) -> CyclicPoly:
    """Enomoto-Satoh trace: contract, then project to cyclic words."""
    out = CyclicPoly(d.ctx.alphabet)
    for k in sorted(d.degrees()):
        part = SpDerivation(
            d.ctx, {key: v for key, v in d.terms.items() if len(key[1]) - 1 == k}, check=False
        )
        out = out + project(contraction_phi_k(part, k))
    return out


def sp_coboundary(c: Callable[[SpDerivation], CyclicPoly], d1: SpDerivation, d2: SpDerivation) -> CyclicPoly:
    """Cocycle defect of a cochain on symplectic derivations."""
    return d1.act_cyclic(c(d2)) - d2.act_cyclic(c(d1)) - c(d1.bracket(d2))


# -- degree-d bases of the symplectic derivation algebra -------------------


@dataclass
class _WeightBlock:
    keys: list[SpKey]
    free_cols: list[int]
    vectors: list[SparseVector]
    offset: int  # index of this block's first basis element


@dataclass
class DerSpSpace:
    """Computed basis of one degree of the symplectic derivation algebra."""

    ctx: SymplecticContext
    degree: int
    elements: list[SpDerivation]
    weights: list[tuple[int, ...]]
    blocks: dict[tuple[int, ...], _WeightBlock]

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def coords(self, d: SpDerivation) -> dict[int, Fraction]:
        """Coordinates of a derivation in this basis; exact, verified."""
        by_weight: dict[tuple[int, ...], dict[SpKey, Fraction]] = {}
        for key, v in d.terms.items():
            by_weight.setdefault(sp_key_weight(self.ctx, key), {})[key] = v
        out: dict[int, Fraction] = {}
        for wt, part in by_weight.items():
            block = self.blocks.get(wt)
            if block is None:
                raise ValueError("element outside the computed space")
            key_index = {k: i for i, k in enumerate(block.keys)}
            vec = {key_index[k]: v for k, v in part.items()}
            residual = dict(vec)
            for i, (f, bv) in enumerate(zip(block.free_cols, block.vectors)):
                coeff = vec.get(f, _F0) / bv.entries[f]
                if not coeff:
                    continue
                out[block.offset + i] = coeff
                for col, a in bv.entries.items():
                    nv = residual.get(col, _F0) - coeff * a
                    if nv:
                        residual[col] = nv
                    else:
                        residual.pop(col, None)
            if residual:
                raise ValueError("element outside the computed space")
        return out


def der_sp_basis(ctx: SymplecticContext, degree: int) -> DerSpSpace:
    """Kernel of the symplectic condition in degree ``degree``, split by
    Cartan weight so every basis element is weight homogeneous."""
    if degree < 0:
        raise ValueError("symplectic derivations have degree >= 0")
    alphabet = ctx.alphabet
    basis = lyndon_basis(alphabet)
    keys = [
        (g, w)
        for g in alphabet.generators
        for w in basis.words(degree + 1)
    ]
    by_weight: dict[tuple[int, ...], list[SpKey]] = {}
    for key in keys:
        by_weight.setdefault(sp_key_weight(ctx, key), []).append(key)

    elements: list[SpDerivation] = []
    weights: list[tuple[int, ...]] = []
    blocks: dict[tuple[int, ...], _WeightBlock] = {}
    for wt in sorted(by_weight):
        block_keys = sorted(by_weight[wt], key=lambda k: (k[0], word_key(k[1])))
        rows: dict[Word, dict[int, Fraction]] = {}
        for col, (g, w) in enumerate(block_keys):
            # defect of the raw key: [value, y_g] or [x_g, value]
            lw = LieElement(alphabet, {w: 1})
            if ctx.is_x(g):
                defect = lie_bracket(lw, LieElement.generator(alphabet, ctx.y(g)))
            else:
                defect = lie_bracket(LieElement.generator(alphabet, ctx.x(g - ctx.n)), lw)
            for u, v in defect.terms.items():
                rows.setdefault(u, {})[col] = v
        matrix = SparseMatrix.from_rows(
            [rows[u] for u in sorted(rows, key=word_key)], len(block_keys)
        ) if rows else SparseMatrix(0, len(block_keys))
        vectors = kernel_basis(matrix)
        free_cols = []
        for v in vectors:
            # one free column per vector: the unique column where this
            # vector is nonzero and all later ones vanish; kernel_basis
            # orders vectors by increasing free column
            free_cols.append(_free_column(vectors, v))
        block = _WeightBlock(block_keys, free_cols, vectors, offset=len(elements))
        if vectors:
            blocks[wt] = block
        for v in vectors:
            terms = {block_keys[i]: a for i, a in v.entries.items()}
            elements.append(SpDerivation(ctx, terms, check=False))
            weights.append(wt)
    return DerSpSpace(ctx, degree, elements, weights, blocks)


def _free_column(vectors: list[SparseVector], v: SparseVector) -> int:
    """The free column owned by ``v``: nonzero in v, zero in all others."""
    others = [u for u in vectors if u is not v]
    for col in sorted(v.entries):
        if all(col not in u.entries for u in others):
            return col
    raise AssertionError("kernel basis without identifiable free column")


def sp_basis(ctx: SymplecticContext) -> DerSpSpace:
    """Degree-0 symplectic derivations: the symplectic Lie algebra."""
    return der_sp_basis(ctx, 0)


# -- the uniqueness system ---------------------------------------------------


@dataclass
class EsUniquenessReport:
    """Kernel of the degree-zero cocycle system on symplectic derivations."""

    n: int
    max_degree: int
    dimension: int
    unknown_count: int
    space_dimensions: dict[int, int]
    contains_es_trace: bool
    es_trace_nonzero: bool
    dimension_by_cutoff: dict[int, int]
    excess_flag: bool
    identification: list[dict[str, Fraction]] | None
    es_trace_coordinates: list[Fraction] | None
    residual_checks: dict
    basis_vectors: list[SparseVector] = field(repr=False, default_factory=list)
    slots: list = field(repr=False, default_factory=list)
    spaces: dict = field(repr=False, default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "dimension": self.dimension,
            "unknown_count": self.unknown_count,
            "space_dimensions": {str(k): v for k, v in sorted(self.space_dimensions.items())},
            "contains_es_trace": self.contains_es_trace,
            "es_trace_nonzero": self.es_trace_nonzero,
            "dimension_by_cutoff": {str(k): v for k, v in sorted(self.dimension_by_cutoff.items())},
            "excess_flag": self.excess_flag,
            "identification": (
                None
                if self.identification is None
                else [{k: str(v) for k, v in c.items()} for c in self.identification]
            ),
            "es_trace_coordinates": (
                None
                if self.es_trace_coordinates is None
                else [str(v) for v in self.es_trace_coordinates]
            ),
            "residual_checks": self.residual_checks,
        }


class EsVerificationError(RuntimeError):
    def __init__(self, message, counterexample):
        super().__init__(message)
        self.counterexample = counterexample


def _es_kernel(ctx, spaces, neck, neck_weights, max_degree):
    """Assemble and solve the cocycle system up to one cutoff."""
    # weight-matched unknown slots (Cartan equivariance is exact, so
    # mismatched slots vanish identically)
    slots: list[tuple[int, int, int]] = []  # (degree, basis index, necklace index)
    for d in range(0, max_degree + 1):
        sp_d = spaces[d]
        for b in range(sp_d.dimension):
            wt = sp_d.weights[b]
            for t, tw in enumerate(neck_weights[d]):
                if tw == wt:
                    slots.append((d, b, t))
    slot_index = {s: i for i, s in enumerate(slots)}
    ncols = len(slots)

    act_cache: dict[tuple[int, int, int], dict] = {}

    def act(p: int, i: int, d: int, t: int) -> dict:
        # action of basis element i of degree p on necklace t of degree d
        key = (p, i, d * 10000 + t)
        cached = act_cache.get(key)
        if cached is None:
            poly = spaces[p].elements[i].act_cyclic(
                CyclicPoly(ctx.alphabet, {neck[d][t]: 1})
            )
            cached = poly.terms
            act_cache[key] = cached
        return cached

    neck_index = [
        {nk: t for t, nk in enumerate(neck[d])} for d in range(len(neck))
    ]

    ech = IntEchelon()
    seen: set[tuple] = set()

    def add_rows(p, i, q, j):
        tot = p + q
        if tot > max_degree:
            return
        d1 = spaces[p].elements[i]
        d2 = spaces[q].elements[j]
        rows: dict[int, dict[int, Fraction]] = {}

        def add(t, idx, val):
            lf = rows.setdefault(t, {})
            nv = lf.get(idx, _F0) + val
            if nv:
                lf[idx] = nv
            else:
                lf.pop(idx, None)

        br = d1.bracket(d2)
        if not br.is_zero():
            for b, cb in spaces[tot].coords(br).items():
                wt = spaces[tot].weights[b]
                for t, tw in enumerate(neck_weights[tot]):
                    if tw == wt:
                        add(t, slot_index[(tot, b, t)], cb)
        for t, tw in enumerate(neck_weights[q]):
            if tw != spaces[q].weights[j]:
                continue
            idx = slot_index[(q, j, t)]
            for nk, a in act(p, i, q, t).items():
                add(neck_index[tot][nk], idx, -a)
        for t, tw in enumerate(neck_weights[p]):
            if tw != spaces[p].weights[i]:
                continue
            idx = slot_index[(p, i, t)]
            for nk, a in act(q, j, p, t).items():
                add(neck_index[tot][nk], idx, a)
        for lf in rows.values():
            if lf:
                prim_items = tuple(sorted(lf.items()))
                if prim_items not in seen:
                    seen.add(prim_items)
                    ech.insert(lf)

    for p in range(0, max_degree + 1):
        for q in range(p, max_degree + 1 - p):
            for i in range(spaces[p].dimension):
                start = i + 1 if p == q else 0
                for j in range(start, spaces[q].dimension):
                    add_rows(p, i, q, j)

    from .linalg import kernel_from_echelon

    kern = kernel_from_echelon(ech, ncols)
    return slots, slot_index, kern, ech


def es_trace_vector(ctx, spaces, neck, slots, slot_index) -> SparseVector:
    entries: dict[int, Fraction] = {}
    neck_index = [
        {nk: t for t, nk in enumerate(neck[d])} for d in range(len(neck))
    ]
    for d in range(len(neck)):
        if d not in spaces:
            continue
        for b, elem in enumerate(spaces[d].elements):
            tr = es_trace(elem)
            for nk, v in tr.terms.items():
                idx = slot_index.get((d, b, neck_index[d][nk]))
                if idx is None:
                    raise AssertionError("trace value outside weight-matched slots")
                entries[idx] = v
    return SparseVector(len(slots), entries)


def random_sp_element(space: DerSpSpace, rng: random.Random, terms: int = 2) -> SpDerivation:
    out = SpDerivation(space.ctx, {}, check=False)
    count = min(terms, space.dimension)
    for i in rng.sample(range(space.dimension), count):
        out = out + space.elements[i].scaled(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
    return out


def es_uniqueness_solve(ctx: SymplecticContext, max_degree: int, seed: int = 0, verify_samples: int = 40) -> EsUniquenessReport:
    """Solve for all degree-zero cocycles on the symplectic derivation
    algebra with cyclic-word values, through the given degree cutoff."""
    if ctx.n < 2:
        raise ValueError("uniqueness solve needs n >= 2")
    if max_degree < 1:
        raise ValueError("cutoff must be >= 1")
    spaces = {d: der_sp_basis(ctx, d) for d in range(max_degree + 1)}
    neck = [necklaces(ctx.alphabet, d) for d in range(max_degree + 1)]
    neck_weights = [[ctx.word_weight(nk) for nk in level] for level in neck]

    dimension_by_cutoff: dict[int, int] = {}
    for cutoff in range(1, max_degree):
        _, _, kern_c, _ = _es_kernel(ctx, spaces, neck, neck_weights, cutoff)
        dimension_by_cutoff[cutoff] = len(kern_c)

    slots, slot_index, kern, ech = _es_kernel(ctx, spaces, neck, neck_weights, max_degree)
    dimension_by_cutoff[max_degree] = len(kern)

    tres = es_trace_vector(ctx, spaces, neck, slots, slot_index)
    from .solver import _annihilated_by

    contains = _annihilated_by(ech, tres.entries)
    nonzero = not tres.is_zero()

    # coordinates of the trace in the kernel basis; with dimension 1 every
    # kernel vector is in turn a multiple of the trace
    identification = None
    es_trace_coords = in_span(kern, tres) if contains and nonzero else None
    if len(kern) == 1 and contains and nonzero:
        co = in_span([tres], kern[0])
        if co is not None:
            identification = [{"Tr_ES": co[0]}]

    # fresh-pair verification of every kernel vector
    rng = random.Random(seed)

    def evaluator(vec: SparseVector):
        def ev(d: SpDerivation) -> CyclicPoly:
            acc = CyclicPoly(ctx.alphabet)
            degs = d.degrees()
            for deg in degs:
                part_terms = {k: v for k, v in d.terms.items() if len(k[1]) - 1 == deg}
                part = SpDerivation(ctx, part_terms, check=False)
                for b, cb in spaces[deg].coords(part).items():
                    for t, nk in enumerate(neck[deg]):
                        idx = slot_index.get((deg, b, t))
                        if idx is not None:
                            a = vec.entries.get(idx)
                            if a:
                                acc = acc + CyclicPoly(ctx.alphabet, {nk: a * cb})
            return acc

        return ev

    checked = 0
    evaluators = [evaluator(v) for v in kern]
    for _ in range(verify_samples):
        p = rng.randint(0, max_degree)
        q = rng.randint(0, max_degree - p)
        d1 = random_sp_element(spaces[p], rng)
        d2 = random_sp_element(spaces[q], rng)
        for i, ev in enumerate(evaluators):
            defect = sp_coboundary(ev, d1, d2)
            if not defect.is_zero():
                raise EsVerificationError(
                    f"kernel vector {i} fails the cocycle identity",
                    {"basis_vector": i, "d1": repr(d1), "d2": repr(d2), "defect": repr(defect)},
                )
        checked += 1

    return EsUniquenessReport(
        n=ctx.n,
        max_degree=max_degree,
        dimension=len(kern),
        unknown_count=len(slots),
        space_dimensions={d: spaces[d].dimension for d in spaces},
        contains_es_trace=contains,
        es_trace_nonzero=nonzero,
        dimension_by_cutoff=dimension_by_cutoff,
        excess_flag=len(kern) > 1,
        identification=identification,
        es_trace_coordinates=es_trace_coords,
        residual_checks={"samples": checked, "seed": seed, "status": "ok"},
        basis_vectors=kern,
        slots=slots,
        spaces=spaces,
    )
