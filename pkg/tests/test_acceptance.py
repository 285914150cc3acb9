"""Acceptance suite: one test per criterion, exact tolerances throughout.

Every check is an exact equality over the rationals; random samples are
seeded and reproducible.  Each test prints one pass/fail line (visible with
pytest -s; the -v test listing carries the same information).
"""

import random
import time
from fractions import Fraction

import pytest

from ncdiv.cyclic import BiCyclicPoly, CyclicPoly, canonical_rotation, project
from ncdiv.derivation import DerBasisElem, Derivation, enumerate_basis, verify_msz_decomposition
from ncdiv.divergence import (
    coboundary,
    div,
    div_cochain,
    div_via_partial,
    n1_classical_cocycles,
    sigma_div_cochain,
)
from ncdiv.linalg import SparseVector, in_span
from ncdiv.solver import (
    CochainAnsatz,
    SystemBuilder,
    n1_coefficient_tables,
    n1_recursion_check,
    n1_recursion_violations,
    n1_table_from_vector,
    named_coefficients,
    random_homogeneous,
    solve,
)
from ncdiv.symplectic import (
    LieElement,
    SymplecticContext,
    Wedge3,
    es_trace,
    es_uniqueness_solve,
    phi_bar_3,
    phi_inject,
    sp_coboundary,
    wedge_basis,
)
from ncdiv.tensor import Alphabet, NcPoly, bracket

F = Fraction


def _report(number: int, name: str, ok: bool, detail: str, elapsed: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number} ({name}): {status} - {detail} [{elapsed:.1f}s]")
    assert ok, f"criterion {number} failed: {detail}"


@pytest.fixture(scope="module")
def theorem_report():
    return solve(CochainAnsatz(Alphabet(3), mode="equivariant", target="bicyclic", max_degree=3), seed=1)


def test_criterion_1_div_cocycle_identity():
    start = time.time()
    alphabet = Alphabet(3)
    rng = random.Random(101)
    cochains = (div_cochain(alphabet), sigma_div_cochain(alphabet))
    pairs = 0
    for _ in range(200):
        d1 = random_homogeneous(alphabet, rng.randint(-1, 4), rng)
        d2 = random_homogeneous(alphabet, rng.randint(-1, 4), rng)
        for c in cochains:
            assert coboundary(c, d1, d2).is_zero()
        pairs += 1
    elapsed = time.time() - start
    _report(1, "Div cocycle identity", pairs == 200 and elapsed < 30,
            f"{pairs} seeded pairs exact, Div and sigma.Div", elapsed)


def test_criterion_2_theorem_1_1_desk_scale(theorem_report):
    start = time.time()
    rep = theorem_report
    ok = rep.dimension == 2
    ok &= rep.identification is not None
    names = set()
    if rep.identification:
        for combo in rep.identification:
            names |= set(combo)
    ok &= names <= {"Div", "sigma.Div"}
    for i in range(rep.dimension):
        c = named_coefficients(rep, i)
        a, t = c["a"], c["b4"]
        ok &= c["alpha"] + c["beta"] == a
        ok &= c["gamma"] + c["omega"] == a
        ok &= c["a1"] == c["alpha"] and c["a2"] == c["beta"] and c["a3"] == 0 and c["a4"] == 0
        ok &= c["c1"] == c["gamma"] and c["c2"] == c["omega"] and c["c3"] == 0 and c["c4"] == 0
        ok &= c["b1"] == c["alpha"] - t and c["b2"] == c["beta"] - c["gamma"] + c["alpha"] - t
        ok &= c["b3"] == c["gamma"] - c["alpha"] + t
        ok &= c["b1"] == 0 and c["b2"] == 0
    elapsed = time.time() - start
    _report(2, "dimension 2 = span{Div, sigma.Div}", ok and elapsed < 60,
            f"dimension {rep.dimension}, all coefficient relations exact", elapsed)


def test_criterion_3_no_single_cyclic_cocycles():
    start = time.time()
    rep = solve(CochainAnsatz(Alphabet(3), mode="equivariant", target="cyclic", max_degree=3), seed=2)
    elapsed = time.time() - start
    _report(3, "no |T|-valued cocycles", rep.dimension == 0 and elapsed < 60,
            f"dimension {rep.dimension}", elapsed)


def test_criterion_4_n1_classification():
    start = time.time()
    rep = solve(CochainAnsatz(Alphabet(1), mode="full", target="bicyclic", max_degree=6), seed=3)
    ok = rep.dimension == 3 and rep.identification is not None

    # the three closed-form tables span the solved space
    tables = n1_coefficient_tables()
    index = {s: i for i, s in enumerate(rep.unknowns)}
    table_vectors = []
    for table in tables.values():
        entries = {}
        for d in range(7):
            elem = DerBasisElem(1, (1,) * (d + 1))
            for s in range(d + 1):
                v = table(s, d - s)
                if v:
                    from ncdiv.solver import FullSlot

                    entries[index[FullSlot(elem, ((1,) * s, (1,) * (d - s)))]] = v
        table_vectors.append(SparseVector(len(rep.unknowns), entries))
    for tv in table_vectors:
        ok &= in_span(rep.basis_vectors, tv) is not None
    for v in rep.basis_vectors:
        ok &= in_span(table_vectors, v) is not None

    # recursion: full sweep on the tables, truncated sweep on solver output
    for table in tables.values():
        ok &= not n1_recursion_violations(table, 8)
        ok &= n1_recursion_check(1, -1, 0, 0, table)
        ok &= n1_recursion_check(2, -1, 0, 1, table)
        ok &= n1_recursion_check(2, -1, 1, 0, table)
    for i in range(rep.dimension):
        ok &= not n1_recursion_violations(n1_table_from_vector(rep, i), 6, max_single=6)
    elapsed = time.time() - start
    _report(4, "n=1 space is the classical triple", ok and elapsed < 10,
            f"dimension {rep.dimension}, tables matched, recursion exact to l+k<=8", elapsed)


def test_criterion_5_generation_decompositions():
    start = time.time()
    r22 = verify_msz_decomposition(Alphabet(2), 2)
    ok = (r22.dim_target, r22.dim_square_image, r22.dim_bracket_span, r22.direct_sum_ok) == (16, 4, 12, True)
    r32 = verify_msz_decomposition(Alphabet(3), 2)
    ok &= (r32.dim_target, r32.dim_square_image, r32.dim_bracket_span, r32.direct_sum_ok) == (81, 9, 72, True)
    r33 = verify_msz_decomposition(Alphabet(3), 3)
    ok &= (r33.dim_target, r33.dim_span, r33.direct_sum_ok) == (243, 243, True)
    elapsed = time.time() - start
    _report(5, "degree-2/3 generation", ok and elapsed < 120,
            "16=4+12, 81=9+72, 243 filled, exact ranks", elapsed)


def test_criterion_6_appendix_regression(theorem_report):
    start = time.time()
    rep = theorem_report
    # four distinct letters are needed; the pattern coefficients do not
    # depend on the alphabet, so evaluate them over four generators
    builder4 = SystemBuilder(CochainAnsatz(Alphabet(4), mode="equivariant", target="bicyclic", max_degree=3))
    assert builder4.slots == rep.unknowns
    A4 = Alphabet(4)
    e = ()
    ok = True
    for i in range(rep.dimension):
        vec = rep.basis_vectors[i]
        g = named_coefficients(rep, i)
        c = lambda word: builder4.value_of_vector(vec.entries, DerBasisElem(1, word))
        ok &= c((1, 2, 3, 4)) == BiCyclicPoly(A4, {((2, 3, 4), e): g["alpha"], (e, (2, 3, 4)): g["beta"]})
        ok &= c((2, 1, 3, 4)) == BiCyclicPoly(
            A4,
            {((2, 3, 4), e): g["b1"], (e, (2, 3, 4)): g["b2"], ((2,), (3, 4)): g["b3"], ((3, 4), (2,)): g["b4"]},
        )
        ok &= c((2, 3, 1, 4)) == BiCyclicPoly(
            A4,
            {((2, 3, 4), e): g["b1"], (e, (2, 3, 4)): g["b2"], ((2, 3), (4,)): g["b3"], ((4,), (2, 3)): g["b4"]},
        )
        ok &= c((2, 3, 4, 1)) == BiCyclicPoly(A4, {((2, 3, 4), e): g["gamma"], (e, (2, 3, 4)): g["omega"]})
    elapsed = time.time() - start
    _report(6, "degree-3 value formulas", ok and elapsed < 10,
            "all four displayed right-hand sides exact for both basis vectors", elapsed)


def test_criterion_7_symplectic_layer():
    start = time.time()
    ok = True
    for n in (2, 3):
        ctx = SymplecticContext(n)
        for triple in wedge_basis(ctx):
            d = phi_inject(Wedge3.basis_element(ctx, *triple))
            ok &= d.symplectic_defect().is_zero()
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    w = Wedge3.basis_element(ctx, ctx.x(i), ctx.y(i), ctx.x(j))
                    ok &= phi_bar_3(w) == LieElement.generator(ctx.alphabet, ctx.x(j))
    ctx = SymplecticContext(2)
    phis = [phi_inject(Wedge3.basis_element(ctx, *t)) for t in wedge_basis(ctx)]
    rng = random.Random(107)

    def rand_phi():
        d = phis[0].scaled(0)
        for p in phis:
            coeff = rng.randint(-2, 2)
            if coeff:
                d = d + p.scaled(F(coeff, rng.randint(1, 2)))
        return d

    pairs = 0
    for _ in range(50):
        d1, d2 = rand_phi(), rand_phi()
        ok &= sp_coboundary(es_trace, d1, d2).is_zero()
        pairs += 1
    elapsed = time.time() - start
    _report(7, "symplectic layer", ok and pairs == 50 and elapsed < 60,
            f"phi image symplectic (n=2,3), contraction identity, trace cocycle on {pairs} pairs", elapsed)


def test_criterion_8_es_trace_uniqueness():
    start = time.time()
    rep = es_uniqueness_solve(SymplecticContext(2), 4, seed=7)
    ok = rep.contains_es_trace and rep.es_trace_nonzero
    ok &= rep.es_trace_coordinates is not None
    # expected dimension 1; a larger truncated kernel must be flagged and
    # accompanied by the dimension-vs-cutoff table
    if rep.dimension != 1:
        ok &= rep.excess_flag
        ok &= set(rep.dimension_by_cutoff) == {1, 2, 3, 4}
    elapsed = time.time() - start
    detail = (
        f"dimension {rep.dimension} at cutoff 4, trace contained, "
        f"cutoff table {rep.dimension_by_cutoff}"
        + (" (excess flagged)" if rep.excess_flag else "")
    )
    _report(8, "trace uniqueness at desk scale", ok, detail, elapsed)


def test_criterion_9_structural_property_suites():
    start = time.time()
    ok = True
    rng = random.Random(109)
    A3 = Alphabet(3)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 3)))
            terms[w] = F(rng.randint(-3, 3) or 1, rng.randint(1, 2))
        return NcPoly(A3, terms)

    for _ in range(25):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        ok &= (bracket(p, bracket(q, r)) + bracket(q, bracket(r, p)) + bracket(r, bracket(p, q))).is_zero()
        ok &= bracket(p, p).is_zero()

    for _ in range(25):
        d1 = random_homogeneous(A3, rng.randint(-1, 3), rng)
        d2 = random_homogeneous(A3, rng.randint(-1, 3), rng)
        d3 = random_homogeneous(A3, rng.randint(-1, 3), rng)
        ok &= d1.bracket(d2) == d2.bracket(d1).scaled(-1)
        total = (
            d1.bracket(d2.bracket(d3)) + d2.bracket(d3.bracket(d1)) + d3.bracket(d1.bracket(d2))
        )
        ok &= total.is_zero()
        degs = d1.bracket(d2).degrees()
        ok &= degs <= {deg1 + deg2 for deg1 in d1.degrees() or {0} for deg2 in d2.degrees() or {0}}

    # projection well-definedness and action compatibility
    for _ in range(25):
        w = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 5)))
        rot = rng.randrange(len(w))
        ok &= project(NcPoly.word(A3, w)) == project(NcPoly.word(A3, w[rot:] + w[:rot]))
        d1 = random_homogeneous(A3, rng.randint(0, 2), rng)
        d2 = random_homogeneous(A3, rng.randint(0, 2), rng)
        val = BiCyclicPoly(A3, {(canonical_rotation(w), (rng.randint(1, 3),)): 1})
        ok &= d1.bracket(d2).act(val) == d1.act(d2.act(val)) - d2.act(d1.act(val))

    for _ in range(20):
        d = random_homogeneous(A3, rng.randint(-1, 4), rng)
        ok &= div(d) == div_via_partial(d)

    evaluators = n1_classical_cocycles(Alphabet(1))
    for c in evaluators:
        for k in range(0, 9):
            for l in range(0, 9):
                d1 = Derivation.basis(Alphabet(1), 1, (1,) * (k + 1))
                d2 = Derivation.basis(Alphabet(1), 1, (1,) * (l + 1))
                ok &= coboundary(c, d1, d2).is_zero()

    elapsed = time.time() - start
    _report(9, "structural property suites", ok and elapsed < 300,
            "Jacobi, antisymmetry, grading, projection, action compatibility, n=1 cocycles", elapsed)
