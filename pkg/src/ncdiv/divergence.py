"""The non-commutative divergence, its switch, and cocycle checking.

``div`` sends a basis derivation x_i0^* (x) x_i1 ... x_im to the sum over
positions j with i_j = i0 of |prefix| (x) |suffix|.  It is a degree-zero
1-cocycle for the factor-wise action on necklace pairs; ``sigma_div`` is its
switch.  ``coboundary`` evaluates the cocycle defect of an arbitrary linear
cochain on a pair of derivations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .cyclic import BiCyclicPoly, CyclicPoly, project_pair, switch
from .derivation import DerBasisElem, Derivation
from .tensor import Alphabet, NcPoly, partial

_F0 = Fraction(0)


def div(d: Derivation) -> BiCyclicPoly:
    """Non-commutative divergence of a derivation."""
    acc: dict[tuple, Fraction] = {}
    for e, coeff in d.terms.items():
        w = e.word
        for j, letter in enumerate(w):
            if letter == e.dual:
                key = (w[:j], w[j + 1:])
                nv = acc.get(key, _F0) + coeff
                if nv:
                    acc[key] = nv
                else:
                    acc.pop(key, None)
    return BiCyclicPoly(d.alphabet, acc)


def div_via_partial(d: Derivation) -> BiCyclicPoly:
    """Divergence computed from the double derivations, as a cross check."""
    alphabet = d.alphabet
    out = BiCyclicPoly(alphabet)
    for i in alphabet.generators:
        value = d.apply(NcPoly.generator(alphabet, i))
        out = out + project_pair(partial(i, value))
    return out


def sigma_div(d: Derivation) -> BiCyclicPoly:
    """The switch of the divergence."""
    return switch(div(d))


class LinearCochain:
    """Linear map from derivations into a cyclic-word target.

    Wraps a function on basis elements; values are extended linearly.  The
    zero value is supplied so evaluators with different targets (cyclic or
    bicyclic) share one implementation.
    """

    def __init__(self, alphabet: Alphabet, basis_fn: Callable[[DerBasisElem], object], zero, name: str = ""):
        self.alphabet = alphabet
        self.basis_fn = basis_fn
        self.zero = zero
        self.name = name

    def __call__(self, d: Derivation):
        out = self.zero
        for e, coeff in d.terms.items():
            out = out + self.basis_fn(e).scaled(coeff)
        return out

    def __repr__(self):
        return f"LinearCochain({self.name or 'anonymous'})"


def div_cochain(alphabet: Alphabet) -> LinearCochain:
    return LinearCochain(
        alphabet,
        lambda e: div(Derivation(alphabet, {e: 1})),
        BiCyclicPoly(alphabet),
        name="Div",
    )


def sigma_div_cochain(alphabet: Alphabet) -> LinearCochain:
    return LinearCochain(
        alphabet,
        lambda e: sigma_div(Derivation(alphabet, {e: 1})),
        BiCyclicPoly(alphabet),
        name="sigma.Div",
    )


def coboundary(c, d1: Derivation, d2: Derivation):
    """Cocycle defect d1.c(d2) - d2.c(d1) - c([d1, d2]); zero iff the
    1-cocycle identity holds on this pair."""
    return d1.act(c(d2)) - d2.act(c(d1)) - c(d1.bracket(d2))


def n1_classical_cocycles(alphabet: Alphabet) -> tuple[LinearCochain, LinearCochain, LinearCochain]:
    """The three degree-zero cocycles of the one-generator algebra.

    Returns (div (x) 1, 1 (x) div, Div) as evaluators: on x^* (x) x^(k+1)
    their values are (k+1) x^k (x) 1, (k+1) 1 (x) x^k, and the full sum over
    splittings x^s (x) x^t with s + t = k.
    """
    if alphabet.n != 1:
        raise ValueError("classical cocycle table is specific to n = 1")

    def left(e: DerBasisElem) -> BiCyclicPoly:
        k = e.degree
        if k < 0:
            return BiCyclicPoly(alphabet)
        return BiCyclicPoly(alphabet, {((1,) * k, ()): k + 1})

    def right(e: DerBasisElem) -> BiCyclicPoly:
        k = e.degree
        if k < 0:
            return BiCyclicPoly(alphabet)
        return BiCyclicPoly(alphabet, {((), (1,) * k): k + 1})

    def full(e: DerBasisElem) -> BiCyclicPoly:
        k = e.degree
        if k < 0:
            return BiCyclicPoly(alphabet)
        return BiCyclicPoly(alphabet, {((1,) * s, (1,) * (k - s)): 1 for s in range(k + 1)})

    zero = BiCyclicPoly(alphabet)
    return (
        LinearCochain(alphabet, left, zero, name="div(x)1"),
        LinearCochain(alphabet, right, zero, name="1(x)div"),
        LinearCochain(alphabet, full, zero, name="Div"),
    )
