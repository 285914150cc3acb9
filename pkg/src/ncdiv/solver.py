"""Degree-zero 1-cocycle spaces as exact sparse linear systems.

Two ansatz modes are supported.

*  ``full``: one unknown per (basis derivation of degree d, target basis
   element of degree d) pair, 0 <= d <= max_degree.  This is the raw space
   of degree-zero linear cochains.
*  ``equivariant``: one unknown per contraction pattern.  A pattern picks
   the position j contracted against the dual generator and distributes the
   remaining letter positions into the cyclic factors of the target, each
   factor carrying a fixed cyclic arrangement.  Degrees 0, 1 and 2 carry the
   classical coefficient names a; alpha, beta, gamma, omega; a1..a4, b1..b4,
   c1..c4.

The cocycle identity on a generating set of derivation pairs becomes one
sparse row block per pair.  Cochains are zero on degree -1 (the target has
no negative degrees).  In equivariant mode, patterns that evaluate to the
zero map on the chosen alphabet are quotiented out, so the reported
dimension counts cocycles as maps, not as coefficient tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Mapping, NamedTuple, Sequence

from .cyclic import (
    BiCyclicPoly,
    CyclicPoly,
    bicyclic_basis,
    canonical_rotation,
    necklace_str,
    necklaces,
    pair_str,
)
from .derivation import DerBasisElem, Derivation, elem_key, enumerate_basis
from .divergence import LinearCochain, coboundary, div, n1_classical_cocycles, sigma_div
from .linalg import IntEchelon, SparseMatrix, SparseVector, in_span, kernel_from_echelon, _primitive
from .tensor import Alphabet, word_key

_F0 = Fraction(0)
_F1 = Fraction(1)

MODES = ("equivariant", "full")
TARGETS = ("bicyclic", "cyclic")


class SolverVerificationError(RuntimeError):
    """A reported kernel vector failed the fresh-pair cocycle re-check.

    Indicates an insufficient generating-pair policy; carries a replayable
    counterexample.
    """

    def __init__(self, message: str, counterexample: dict):
        super().__init__(message)
        self.counterexample = counterexample


@dataclass(frozen=True)
class CochainAnsatz:
    """Shape of the unknown cochain space."""

    alphabet: Alphabet
    mode: str = "equivariant"
    target: str = "bicyclic"
    max_degree: int = 3

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")


class EqSlot(NamedTuple):
    """Contraction pattern: matched position plus factor arrangements.

    ``left``/``right`` are tuples of 1-based letter positions; ``right`` is
    None for single-factor (cyclic) targets.
    """

    degree: int
    pos: int
    left: tuple[int, ...]
    right: tuple[int, ...] | None


class FullSlot(NamedTuple):
    elem: DerBasisElem
    key: object


# Classical names for the low-degree bicyclic patterns.
EQ_ALIASES = {
    EqSlot(0, 1, (), ()): "a",
    EqSlot(1, 1, (2,), ()): "alpha",
    EqSlot(1, 1, (), (2,)): "beta",
    EqSlot(1, 2, (1,), ()): "gamma",
    EqSlot(1, 2, (), (1,)): "omega",
    EqSlot(2, 1, (2, 3), ()): "a1",
    EqSlot(2, 1, (), (2, 3)): "a2",
    EqSlot(2, 1, (2,), (3,)): "a3",
    EqSlot(2, 1, (3,), (2,)): "a4",
    EqSlot(2, 2, (1, 3), ()): "b1",
    EqSlot(2, 2, (), (1, 3)): "b2",
    EqSlot(2, 2, (1,), (3,)): "b3",
    EqSlot(2, 2, (3,), (1,)): "b4",
    EqSlot(2, 3, (1, 2), ()): "c1",
    EqSlot(2, 3, (), (1, 2)): "c2",
    EqSlot(2, 3, (1,), (2,)): "c3",
    EqSlot(2, 3, (2,), (1,)): "c4",
}


def _positions_str(ps: Sequence[int]) -> str:
    return ".".join(str(p) for p in ps) if ps else "e"


def slot_name(slot) -> str:
    if isinstance(slot, EqSlot):
        alias = EQ_ALIASES.get(slot)
        if alias and slot.right is not None:
            return alias
        base = f"k{slot.degree}.p{slot.pos}"
        if slot.right is None:
            return f"{base}.C({_positions_str(slot.left)})"
        return f"{base}.L({_positions_str(slot.left)}).R({_positions_str(slot.right)})"
    elem, key = slot
    if isinstance(key, tuple) and key and isinstance(key[0], tuple):
        tgt = pair_str(key)
    elif isinstance(key, tuple):
        tgt = necklace_str(key)
    else:
        tgt = str(key)
    return f"c[{elem}]->{tgt}"


def _cyclic_arrangements(positions: Sequence[int]) -> list[tuple[int, ...]]:
    """Distinct cyclic orders of a position set, smallest position first."""
    ps = sorted(positions)
    if len(ps) <= 1:
        return [tuple(ps)]
    head, rest = ps[0], ps[1:]
    return [(head,) + p for p in sorted(permutations(rest))]


def _eq_slot_sort(slot: EqSlot):
    return (slot.degree, slot.pos, slot.left, slot.right if slot.right is not None else ())


def _target_key_sort(key):
    if key and isinstance(key[0], tuple):
        a, b = key
        return (word_key(a), word_key(b))
    return word_key(key)


def _full_slot_sort(slot: FullSlot):
    return (slot.elem.degree, elem_key(slot.elem), _target_key_sort(slot.key))


def equivariant_slots(target: str, degree: int) -> list[EqSlot]:
    """All contraction patterns of one degree, canonically ordered."""
    out = []
    m = degree + 1
    for j in range(1, m + 1):
        rest = [p for p in range(1, m + 1) if p != j]
        if target == "cyclic":
            for arr in _cyclic_arrangements(rest):
                out.append(EqSlot(degree, j, arr, None))
        else:
            for size in range(len(rest) + 1):
                for subset in combinations(rest, size):
                    comp = [p for p in rest if p not in subset]
                    for la in _cyclic_arrangements(subset):
                        for ra in _cyclic_arrangements(comp):
                            out.append(EqSlot(degree, j, la, ra))
    out.sort(key=_eq_slot_sort)
    return out


def target_basis(alphabet: Alphabet, target: str, degree: int) -> list:
    if degree < 0:
        return []
    if target == "cyclic":
        return necklaces(alphabet, degree)
    return bicyclic_basis(alphabet, degree)


@dataclass
class ConstraintSystem:
    """Assembled sparse system: rows are cocycle conditions, columns unknowns."""

    ansatz: CochainAnsatz
    unknowns: list
    matrix: SparseMatrix
    pair_count: int


class SystemBuilder:
    """Shared caches for symbolic cochain values and module actions."""

    def __init__(self, ansatz: CochainAnsatz):
        self.ansatz = ansatz
        self.alphabet = ansatz.alphabet
        if ansatz.mode == "equivariant":
            slots: list = []
            for d in range(ansatz.max_degree + 1):
                slots.extend(equivariant_slots(ansatz.target, d))
            self.slots = slots
        else:
            slots = []
            for d in range(ansatz.max_degree + 1):
                for elem in enumerate_basis(self.alphabet, d):
                    for key in target_basis(self.alphabet, ansatz.target, d):
                        slots.append(FullSlot(elem, key))
            slots.sort(key=_full_slot_sort)
            self.slots = slots
        self.slot_index = {s: i for i, s in enumerate(self.slots)}
        self._eq_by_degree: dict[int, list[tuple[int, EqSlot]]] = {}
        if ansatz.mode == "equivariant":
            for i, s in enumerate(self.slots):
                self._eq_by_degree.setdefault(s.degree, []).append((i, s))
        self._full_by_elem: dict[DerBasisElem, list[tuple[int, object]]] = {}
        if ansatz.mode == "full":
            for i, s in enumerate(self.slots):
                self._full_by_elem.setdefault(s.elem, []).append((i, s.key))
        self._sym_cache: dict[DerBasisElem, dict] = {}
        self._act_cache: dict[tuple[DerBasisElem, object], dict] = {}
        self._zero = (
            CyclicPoly(self.alphabet) if ansatz.target == "cyclic" else BiCyclicPoly(self.alphabet)
        )

    # -- symbolic cochain values -----------------------------------------

    def _eq_value(self, elem: DerBasisElem) -> dict:
        w = elem.word
        out: dict[object, dict[int, Fraction]] = {}
        for idx, slot in self._eq_by_degree.get(elem.degree, ()):
            if w[slot.pos - 1] != elem.dual:
                continue
            left = canonical_rotation(tuple(w[p - 1] for p in slot.left))
            if slot.right is None:
                key: object = left
            else:
                key = (left, canonical_rotation(tuple(w[p - 1] for p in slot.right)))
            lf = out.setdefault(key, {})
            lf[idx] = lf.get(idx, _F0) + _F1
        return out

    def sym_value(self, elem: DerBasisElem) -> dict:
        """Value of the unknown cochain on one basis derivation, as a map
        from target key to a linear form in the unknowns."""
        cached = self._sym_cache.get(elem)
        if cached is None:
            if self.ansatz.mode == "equivariant":
                cached = self._eq_value(elem)
            else:
                cached = {key: {idx: _F1} for idx, key in self._full_by_elem.get(elem, ())}
            self._sym_cache[elem] = cached
        return cached

    # -- module action on target basis elements ---------------------------

    def act_on_key(self, elem: DerBasisElem, key) -> dict:
        cached = self._act_cache.get((elem, key))
        if cached is None:
            d = Derivation(self.alphabet, {elem: 1})
            if self.ansatz.target == "cyclic":
                poly = d.act_cyclic(CyclicPoly(self.alphabet, {key: 1}))
            else:
                poly = d.act_bicyclic(BiCyclicPoly(self.alphabet, {key: 1}))
            cached = poly.terms
            self._act_cache[(elem, key)] = cached
        return cached

    # -- rows --------------------------------------------------------------

    def pair_rows(self, e1: DerBasisElem, e2: DerBasisElem) -> list[dict[int, Fraction]]:
        """Rows equating c([e1, e2]) with e1.c(e2) - e2.c(e1)."""
        if e1.degree + e2.degree < 0:
            return []
        rows: dict[object, dict[int, Fraction]] = {}

        def add(key, idx, val):
            lf = rows.setdefault(key, {})
            nv = lf.get(idx, _F0) + val
            if nv:
                lf[idx] = nv
            else:
                lf.pop(idx, None)

        b = Derivation(self.alphabet, {e1: 1}).bracket(Derivation(self.alphabet, {e2: 1}))
        for g, cg in b.terms.items():
            for key, lf in self.sym_value(g).items():
                for idx, v in lf.items():
                    add(key, idx, cg * v)
        for key, lf in self.sym_value(e2).items():
            for key2, a in self.act_on_key(e1, key).items():
                for idx, v in lf.items():
                    add(key2, idx, -a * v)
        for key, lf in self.sym_value(e1).items():
            for key2, a in self.act_on_key(e2, key).items():
                for idx, v in lf.items():
                    add(key2, idx, a * v)
        return [lf for lf in rows.values() if lf]

    def null_rows(self) -> Iterable[dict[int, Fraction]]:
        """Evaluation rows whose kernel is the space of zero-map patterns."""
        if self.ansatz.mode != "equivariant":
            return
        for d in range(self.ansatz.max_degree + 1):
            for elem in enumerate_basis(self.alphabet, d):
                for lf in self.sym_value(elem).values():
                    yield lf

    # -- turning coefficient vectors into cochains -------------------------

    def value_of_vector(self, vec: Mapping[int, Fraction], elem: DerBasisElem):
        acc: dict = {}
        for key, lf in self.sym_value(elem).items():
            coeff = _F0
            for idx, v in lf.items():
                x = vec.get(idx)
                if x is not None:
                    coeff += v * x
            if coeff:
                acc[key] = coeff
        if self.ansatz.target == "cyclic":
            return CyclicPoly(self.alphabet, acc)
        return BiCyclicPoly(self.alphabet, acc)

    def evaluator(self, vec: SparseVector, name: str = "") -> LinearCochain:
        entries = vec.entries

        def basis_fn(elem: DerBasisElem):
            return self.value_of_vector(entries, elem)

        return LinearCochain(self.alphabet, basis_fn, self._zero, name=name)


def default_pairs(ansatz: CochainAnsatz) -> list[tuple[DerBasisElem, DerBasisElem]]:
    """Ordered basis pairs: deg d1 in {-1..2}, deg d2 <= max, total <= max."""
    alphabet, mx = ansatz.alphabet, ansatz.max_degree
    out = []
    for p in range(-1, min(2, mx) + 1):
        left = enumerate_basis(alphabet, p)
        for q in range(-1, mx + 1):
            if p + q > mx:
                continue
            right = enumerate_basis(alphabet, q)
            for e1 in left:
                for e2 in right:
                    if e1 != e2:
                        out.append((e1, e2))
    return out


def _annihilated_by(ech: IntEchelon, vec: Mapping[int, Fraction]) -> bool:
    """True when every row of the echelon has zero dot product with vec."""
    for row in ech.pivot_rows.values():
        acc = _F0
        if len(row) <= len(vec):
            for c, a in row.items():
                x = vec.get(c)
                if x is not None:
                    acc += a * x
        else:
            for c, x in vec.items():
                a = row.get(c)
                if a is not None:
                    acc += a * x
        if acc:
            return False
    return True


def _row_signature(row: Mapping[int, Fraction]) -> tuple:
    prim = _primitive(row)
    if not prim:
        return ()
    lead = min(prim)
    if prim[lead] < 0:
        prim = {c: -v for c, v in prim.items()}
    return tuple(sorted(prim.items()))


def build_system(
    ansatz: CochainAnsatz,
    pairs: Iterable[tuple[DerBasisElem, DerBasisElem]] | None = None,
    builder: SystemBuilder | None = None,
) -> ConstraintSystem:
    """Assemble the cocycle constraint matrix over the ansatz unknowns.

    Duplicate rows (up to scale) are dropped; over-constraining is harmless
    for kernel computation.
    """
    builder = builder or SystemBuilder(ansatz)
    if pairs is None:
        pairs = default_pairs(ansatz)
    rows: list[dict[int, Fraction]] = []
    seen: set[tuple] = set()
    count = 0
    for e1, e2 in pairs:
        count += 1
        for row in builder.pair_rows(e1, e2):
            sig = _row_signature(row)
            if sig and sig not in seen:
                seen.add(sig)
                rows.append(row)
    matrix = SparseMatrix.from_rows(rows, len(builder.slots)) if rows else SparseMatrix(0, len(builder.slots))
    return ConstraintSystem(ansatz, list(builder.slots), matrix, count)


@dataclass
class SolverReport:
    """Solved cocycle space with verification metadata."""

    ansatz: CochainAnsatz
    dimension: int
    kernel_dimension: int
    null_dimension: int
    unknown_count: int
    basis: list[dict[str, Fraction]]
    identification: list[dict[str, Fraction]] | None
    residual_checks: dict
    exploratory: bool
    unknowns: list = field(repr=False, default_factory=list)
    basis_vectors: list[SparseVector] = field(repr=False, default_factory=list)
    evaluators: list[LinearCochain] = field(repr=False, default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.ansatz.alphabet.n,
            "mode": self.ansatz.mode,
            "target": self.ansatz.target,
            "max_degree": self.ansatz.max_degree,
            "dimension": self.dimension,
            "kernel_dimension": self.kernel_dimension,
            "null_dimension": self.null_dimension,
            "unknown_count": self.unknown_count,
            "basis": [
                {name: str(v) for name, v in sorted(b.items())} for b in self.basis
            ],
            "identification": (
                None
                if self.identification is None
                else [
                    {name: str(v) for name, v in sorted(c.items())}
                    for c in self.identification
                ]
            ),
            "residual_checks": self.residual_checks,
            "exploratory": self.exploratory,
        }


def _candidate_vectors(builder: SystemBuilder) -> list[tuple[str, dict[int, Fraction]]]:
    """Known cocycles expressed in ansatz coordinates, for identification."""
    ansatz = builder.ansatz
    alphabet = ansatz.alphabet
    if ansatz.target != "bicyclic":
        return []
    out: list[tuple[str, dict[int, Fraction]]] = []
    if ansatz.mode == "equivariant":
        if alphabet.n == 1:
            left_vec: dict[int, Fraction] = {}
            right_vec: dict[int, Fraction] = {}
            full_vec: dict[int, Fraction] = {}
            for d in range(ansatz.max_degree + 1):
                m = d + 1
                for j in range(1, m + 1):
                    rest = tuple(p for p in range(1, m + 1) if p != j)
                    left_vec[builder.slot_index[EqSlot(d, j, rest, ())]] = _F1
                    right_vec[builder.slot_index[EqSlot(d, j, (), rest)]] = _F1
                    div_slot = EqSlot(d, j, tuple(range(1, j)), tuple(range(j + 1, m + 1)))
                    full_vec[builder.slot_index[div_slot]] = _F1
            out = [("div(x)1", left_vec), ("1(x)div", right_vec), ("Div", full_vec)]
        else:
            div_vec: dict[int, Fraction] = {}
            sdiv_vec: dict[int, Fraction] = {}
            for d in range(ansatz.max_degree + 1):
                m = d + 1
                for j in range(1, m + 1):
                    pre = tuple(range(1, j))
                    suf = tuple(range(j + 1, m + 1))
                    div_vec[builder.slot_index[EqSlot(d, j, pre, suf)]] = _F1
                    sdiv_vec[builder.slot_index[EqSlot(d, j, suf, pre)]] = _F1
            out = [("Div", div_vec), ("sigma.Div", sdiv_vec)]
    else:
        if alphabet.n == 1:
            named = list(zip(("div(x)1", "1(x)div", "Div"), n1_classical_cocycles(alphabet)))
            for name, cochain in named:
                vec: dict[int, Fraction] = {}
                for i, slot in enumerate(builder.slots):
                    coeff = cochain(Derivation(alphabet, {slot.elem: 1})).terms.get(slot.key)
                    if coeff:
                        vec[i] = coeff
                out.append((name, vec))
        else:
            for name, fn in (("Div", div), ("sigma.Div", sigma_div)):
                vec = {}
                for i, slot in enumerate(builder.slots):
                    coeff = fn(Derivation(alphabet, {slot.elem: 1})).terms.get(slot.key)
                    if coeff:
                        vec[i] = coeff
                out.append((name, vec))
    return out


def random_homogeneous(alphabet: Alphabet, degree: int, rng: random.Random, terms: int = 2) -> Derivation:
    pool = enumerate_basis(alphabet, degree)
    chosen = rng.sample(pool, min(terms, len(pool)))
    return Derivation(
        alphabet,
        {e: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for e in chosen},
    )


def solve(
    ansatz: CochainAnsatz,
    seed: int = 0,
    pairs: Iterable[tuple[DerBasisElem, DerBasisElem]] | None = None,
    verify_samples: int = 100,
) -> SolverReport:
    """Compute the cocycle space, verify it on fresh pairs, identify it."""
    builder = SystemBuilder(ansatz)
    system = build_system(ansatz, pairs=pairs, builder=builder)
    ncols = len(builder.slots)

    ech = IntEchelon()
    for row in system.matrix.row_dicts():
        ech.insert(row)
    kernel = kernel_from_echelon(ech, ncols)

    # Patterns acting as the zero map satisfy every constraint; quotient
    # them out so dimensions refer to spaces of maps.
    null_ech = IntEchelon()
    null_basis: list[SparseVector] = []
    for row in builder.null_rows():
        null_ech.insert(row)
    for v in kernel_from_echelon(null_ech, ncols) if ansatz.mode == "equivariant" else []:
        null_basis.append(v)
    for v in null_basis:
        if not _annihilated_by(ech, v.entries):
            raise AssertionError("zero-map pattern violates the constraint system")

    reducer = IntEchelon()
    for v in null_basis:
        reducer.insert(v.entries)
    reps: list[SparseVector] = []
    for v in kernel:
        reduced = reducer.reduce(v.entries)
        if reduced:
            reducer.insert(reduced)
            lead = min(reduced)
            vec = SparseVector(ncols, {c: Fraction(x, reduced[lead]) for c, x in reduced.items()})
            reps.append(vec)

    dimension = len(reps)
    evaluators = [builder.evaluator(v, name=f"solution[{i}]") for i, v in enumerate(reps)]

    # Fresh-pair soundness check for every reported basis vector.
    rng = random.Random(seed)
    mx = ansatz.max_degree
    checked = 0
    for _ in range(verify_samples):
        p = rng.randint(-1, mx)
        q = rng.randint(-1, min(mx, mx - p))
        d1 = random_homogeneous(ansatz.alphabet, p, rng)
        d2 = random_homogeneous(ansatz.alphabet, q, rng)
        for i, ev in enumerate(evaluators):
            defect = coboundary(ev, d1, d2)
            if not defect.is_zero():
                raise SolverVerificationError(
                    f"kernel vector {i} fails the cocycle identity on a fresh pair",
                    {
                        "basis_vector": i,
                        "d1": repr(d1),
                        "d2": repr(d2),
                        "defect": repr(defect),
                    },
                )
        checked += 1

    # Identification against the known cocycles.
    identification: list[dict[str, Fraction]] | None = None
    candidates = _candidate_vectors(builder)
    if candidates and dimension == len(candidates):
        cand_ok = all(_annihilated_by(ech, vec) for _, vec in candidates)
        if cand_ok:
            span = [SparseVector(ncols, vec) for _, vec in candidates] + null_basis
            combos = []
            for v in reps:
                coeffs = in_span(span, v)
                if coeffs is None:
                    combos = None
                    break
                combos.append(
                    {name: coeffs[i] for i, (name, _) in enumerate(candidates) if coeffs[i]}
                )
            identification = combos
    n = ansatz.alphabet.n
    exploratory = n == 2 or (n >= 3 and ansatz.max_degree > n)

    named_basis = []
    for v in reps:
        named_basis.append({slot_name(builder.slots[i]): c for i, c in sorted(v.entries.items())})

    return SolverReport(
        ansatz=ansatz,
        dimension=dimension,
        kernel_dimension=len(kernel),
        null_dimension=len(null_basis),
        unknown_count=ncols,
        basis=named_basis,
        identification=identification,
        residual_checks={"samples": checked, "seed": seed, "status": "ok"},
        exploratory=exploratory,
        unknowns=list(builder.slots),
        basis_vectors=reps,
        evaluators=evaluators,
    )


def named_coefficients(report: SolverReport, vector_index: int) -> dict[str, Fraction]:
    """Classical coefficient values of one solved basis vector."""
    vec = report.basis_vectors[vector_index]
    out = {}
    for slot, idx in ((s, i) for i, s in enumerate(report.unknowns)):
        if isinstance(slot, EqSlot):
            alias = EQ_ALIASES.get(slot)
            if alias:
                out[alias] = vec.get(idx)
    return out


def n1_recursion_check(l: int, k: int, s: int, t: int, coeffs) -> bool:
    """Evaluate the one-generator recursion
    (l-k) c_{s,t} = (s-k) c_{s-k,t} + (t-k) c_{s,t-k} - (s-l) c_{s-l,t} - (t-l) c_{s,t-l}
    on a coefficient table, with c_{a,b} = 0 outside the first quadrant."""
    if l < -1 or k < -1 or s < 0 or t < 0 or s + t != l + k:
        raise ValueError(f"inadmissible recursion instance (l={l}, k={k}, s={s}, t={t})")

    if callable(coeffs):
        raw = coeffs
    else:
        raw = lambda a, b: coeffs.get((a, b), 0)

    def c(a, b):
        if a < 0 or b < 0:
            return Fraction(0)
        v = raw(a, b)
        return v if isinstance(v, Fraction) else Fraction(v)

    lhs = (l - k) * c(s, t)
    rhs = (s - k) * c(s - k, t) + (t - k) * c(s, t - k) - (s - l) * c(s - l, t) - (t - l) * c(s, t - l)
    return lhs == rhs


def n1_recursion_violations(
    coeffs, max_total: int, max_single: int | None = None
) -> list[tuple[int, int, int, int]]:
    """Violated instances with l + k <= max_total; empty when clean.

    The recursion at (l, k, s, t) reads coefficients of total degrees l + k,
    l and k, so tables truncated at degree D are swept with
    ``max_single = D`` to keep every reference inside the table.
    """
    bad = []
    for total in range(0, max_total + 1):
        for k in range(-1, total + 2):
            l = total - k
            if l < -1:
                continue
            if max_single is not None and (l > max_single or k > max_single):
                continue
            for s in range(0, total + 1):
                t = total - s
                if not n1_recursion_check(l, k, s, t, coeffs):
                    bad.append((l, k, s, t))
    return bad


def n1_coefficient_tables() -> dict[str, object]:
    """Closed-form coefficient tables of the three n = 1 cocycles."""
    return {
        "div(x)1": lambda s, t: Fraction(s + 1) if t == 0 else Fraction(0),
        "1(x)div": lambda s, t: Fraction(t + 1) if s == 0 else Fraction(0),
        "Div": lambda s, t: Fraction(1),
    }


def n1_table_from_vector(report: SolverReport, vector_index: int, max_degree: int | None = None) -> dict:
    """Extract c_{s,t} from a full-mode n = 1 solution vector."""
    if report.ansatz.alphabet.n != 1 or report.ansatz.mode != "full":
        raise ValueError("coefficient tables require a full-mode n = 1 report")
    vec = report.basis_vectors[vector_index]
    mx = report.ansatz.max_degree if max_degree is None else max_degree
    table = {}
    index = {s: i for i, s in enumerate(report.unknowns)}
    for d in range(mx + 1):
        elem = DerBasisElem(1, (1,) * (d + 1))
        for s in range(d + 1):
            key = ((1,) * s, (1,) * (d - s))
            slot = FullSlot(elem, key)
            table[(s, d - s)] = vec.get(index[slot])
    return table


@dataclass(frozen=True)
class GlTraceReport:
    off_diagonal_zero: bool
    diagonal_equal: bool
    trace_coefficient: Fraction | None

    @property
    def is_trace_multiple(self) -> bool:
        return self.off_diagonal_zero and self.diagonal_equal


def gl_trace_check(report: SolverReport, vector_index: int = 0) -> GlTraceReport:
    """Check that a full-mode solution restricts on degree 0 to a multiple
    of the matrix trace: c(E_ij) = 0 off the diagonal, all c(E_ii) equal."""
    ansatz = report.ansatz
    if ansatz.mode != "full":
        raise ValueError("trace check applies to full-mode solutions")
    alphabet = ansatz.alphabet
    if alphabet.n < 2:
        raise ValueError("trace check needs n >= 2")
    vec = report.basis_vectors[vector_index]
    index = {s: i for i, s in enumerate(report.unknowns)}
    unit_key = ((), ()) if ansatz.target == "bicyclic" else ()
    off_zero = True
    diag: list[Fraction] = []
    for i in alphabet.generators:
        for j in alphabet.generators:
            # E_ij acts by x_j -> x_i, i.e. the basis derivation (j, (i,))
            slot = FullSlot(DerBasisElem(j, (i,)), unit_key)
            value = vec.get(index[slot])
            if i == j:
                diag.append(value)
            elif value:
                off_zero = False
    diag_equal = all(v == diag[0] for v in diag)
    return GlTraceReport(off_zero, diag_equal, diag[0] if diag_equal else None)
