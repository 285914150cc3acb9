"""Exact computation of divergence-type cocycles on derivation Lie algebras."""

from .tensor import Alphabet, NcPoly, bracket, multiply, partial
from .cyclic import BiCyclicPoly, CyclicPoly, project, switch
from .derivation import DerBasisElem, Derivation, der_bracket, enumerate_basis
from .divergence import coboundary, div, n1_classical_cocycles, sigma_div

__all__ = [
    "Alphabet",
    "NcPoly",
    "bracket",
    "multiply",
    "partial",
    "BiCyclicPoly",
    "CyclicPoly",
    "project",
    "switch",
    "DerBasisElem",
    "Derivation",
    "der_bracket",
    "enumerate_basis",
    "coboundary",
    "div",
    "sigma_div",
    "n1_classical_cocycles",
]
