"""Exact sparse linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator).  Vectors and matrices store only nonzero entries.  All
elimination is fraction free: rows are scaled to primitive integer form and
combined by cross multiplication, so results are exact by construction.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

_F0 = Fraction(0)
_F1 = Fraction(1)


class DimensionMismatch(ValueError):
    """Operands have incompatible dimensions."""


def _primitive(row: Mapping[int, Fraction | int]) -> dict[int, int]:
    """Scale a sparse rational row to a primitive integer row."""
    if not row:
        return {}
    lcm = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        lcm = lcm * d // gcd(lcm, d)
    ints = {}
    g = 0
    for c, v in row.items():
        iv = int(v * lcm)
        if iv:
            ints[c] = iv
            g = gcd(g, iv)
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _int_normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _combine(row: dict[int, int], piv: dict[int, int], col: int) -> dict[int, int]:
    """Return a multiple of ``row`` minus a multiple of ``piv`` killing ``col``."""
    a, b = piv[col], row[col]
    g = gcd(a, b)
    ma, mb = a // g, b // g
    new = {c: ma * v for c, v in row.items()}
    for c, v in piv.items():
        w = new.get(c, 0) - mb * v
        if w:
            new[c] = w
        else:
            new.pop(c, None)
    return _int_normalize(new)


class SparseVector:
    """Immutable sparse vector of Fractions with a fixed length."""

    __slots__ = ("length", "entries")

    def __init__(self, length: int, entries: Mapping[int, Fraction | int] | None = None):
        self.length = length
        clean: dict[int, Fraction] = {}
        for i, v in (entries or {}).items():
            if not 0 <= i < length:
                raise IndexError(f"index {i} out of range for length {length}")
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                clean[i] = fv
        self.entries = clean

    def __eq__(self, other):
        return (
            isinstance(other, SparseVector)
            and self.length == other.length
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.length, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        items = ", ".join(f"{i}: {v}" for i, v in sorted(self.entries.items()))
        return f"SparseVector({self.length}, {{{items}}})"

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, i: int) -> Fraction:
        return self.entries.get(i, _F0)

    def scaled(self, a: Fraction | int) -> "SparseVector":
        a = a if isinstance(a, Fraction) else Fraction(a)
        return SparseVector(self.length, {i: a * v for i, v in self.entries.items()})

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if self.length != other.length:
            raise DimensionMismatch("vector lengths differ")
        out = dict(self.entries)
        for i, v in other.entries.items():
            w = out.get(i, _F0) + v
            if w:
                out[i] = w
            else:
                out.pop(i, None)
        return SparseVector(self.length, out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + other.scaled(-1)


class SparseMatrix:
    """Sparse matrix of Fractions, keyed by (row, col)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], Fraction | int] | None = None):
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) out of bounds for {rows}x{cols}")
            fv = v if isinstance(v, Fraction) else Fraction(v)
            if fv:
                clean[(r, c)] = fv
        self.entries = clean

    @classmethod
    def from_rows(cls, row_dicts: Iterable[Mapping[int, Fraction | int]], cols: int) -> "SparseMatrix":
        entries = {}
        n = 0
        for r, row in enumerate(row_dicts):
            n = r + 1
            for c, v in row.items():
                entries[(r, c)] = v
        return cls(n, cols, entries)

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def matvec(m: SparseMatrix, v: SparseVector) -> SparseVector:
    if v.length != m.cols:
        raise DimensionMismatch("matrix columns and vector length differ")
    acc: dict[int, Fraction] = defaultdict(Fraction)
    for (r, c), a in m.entries.items():
        x = v.entries.get(c)
        if x is not None:
            acc[r] += a * x
    return SparseVector(m.rows, acc)


class IntEchelon:
    """Incremental integer row echelon keyed by leading column.

    Rows are kept primitive; insertion order determines which columns become
    pivots, so identical input streams yield identical echelons.
    """

    __slots__ = ("pivot_rows",)

    def __init__(self):
        self.pivot_rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: Mapping[int, Fraction | int]) -> dict[int, int]:
        r = _primitive(row)
        while r:
            c = min(r)
            piv = self.pivot_rows.get(c)
            if piv is None:
                break
            r = _combine(r, piv, c)
        return r

    def insert(self, row: Mapping[int, Fraction | int]) -> bool:
        """Reduce ``row`` against the echelon; keep it if independent."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivot_rows[min(r)] = r
        return True

    def contains(self, row: Mapping[int, Fraction | int]) -> bool:
        return not self.reduce(row)

    def rref(self) -> dict[int, dict[int, Fraction]]:
        """Fully reduced form: pivot column -> row with pivot entry 1."""
        out: dict[int, dict[int, Fraction]] = {}
        for c in sorted(self.pivot_rows, reverse=True):
            lead = self.pivot_rows[c][c]
            row = {col: Fraction(v, lead) for col, v in self.pivot_rows[c].items()}
            for col in sorted(k for k in row if k != c):
                sub = out.get(col)
                if sub is None or col not in row:
                    continue
                coef = row.pop(col)
                for c2, v2 in sub.items():
                    if c2 == col:
                        continue
                    nv = row.get(c2, _F0) - coef * v2
                    if nv:
                        row[c2] = nv
                    else:
                        row.pop(c2, None)
            out[c] = row
        return out


def rank(m: SparseMatrix) -> int:
    """Rank over the rationals, fraction free, pivoting on the sparsest column."""
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = defaultdict(set)
    for i, raw in enumerate(m.row_dicts()):
        r = _primitive(raw)
        if r:
            rows[i] = r
            for c in r:
                col_rows[c].add(i)
    rk = 0
    while rows:
        cand = [(len(s), c) for c, s in col_rows.items() if s]
        if not cand:
            break
        _, c = min(cand)
        users = sorted(col_rows[c])
        pi = min(users, key=lambda i: (len(rows[i]), i))
        piv = rows.pop(pi)
        for col in piv:
            col_rows[col].discard(pi)
        rk += 1
        if rk == m.cols:
            break
        for i in users:
            if i not in rows:
                continue
            old = rows[i]
            new = _combine(old, piv, c)
            for col in old:
                col_rows[col].discard(i)
            if new:
                rows[i] = new
                for col in new:
                    col_rows[col].add(i)
            else:
                del rows[i]
    return rk


def kernel_basis(m: SparseMatrix) -> list[SparseVector]:
    """Basis of the right null space, one vector per free column.

    Deterministic: rows are inserted in index order, free columns are
    scanned in increasing order, and each basis vector is scaled so that its
    first nonzero entry is 1.
    """
    ech = IntEchelon()
    for raw in m.row_dicts():
        ech.insert(raw)
    return kernel_from_echelon(ech, m.cols)


def kernel_from_echelon(ech: IntEchelon, cols: int) -> list[SparseVector]:
    rref = ech.rref()
    pivots = set(rref)
    basis = []
    for f in range(cols):
        if f in pivots:
            continue
        v: dict[int, Fraction] = {f: _F1}
        for c, row in rref.items():
            a = row.get(f)
            if a:
                v[c] = -a
        lead = min(v)
        lv = v[lead]
        if lv != 1:
            v = {c: val / lv for c, val in v.items()}
        basis.append(SparseVector(cols, v))
    return basis


def span_dimension(vectors: list[SparseVector]) -> int:
    """Rank of the matrix whose rows are the given vectors."""
    if not vectors:
        return 0
    n = vectors[0].length
    for v in vectors:
        if v.length != n:
            raise DimensionMismatch("vectors of unequal length")
    return rank(SparseMatrix.from_rows([v.entries for v in vectors], n))


def in_span(vectors: list[SparseVector], target: SparseVector) -> list[Fraction] | None:
    """Coordinates of ``target`` in the span of ``vectors``, or None.

    Solved exactly by eliminating an augmented system; used for identifying
    solver output against known cocycles.
    """
    if not vectors:
        return [] if target.is_zero() else None
    n = vectors[0].length
    if target.length != n:
        raise DimensionMismatch("target length differs from span vectors")
    # Augmented columns: unknown coefficients live at n .. n+len(vectors)-1.
    k = len(vectors)
    rows: list[dict[int, Fraction]] = [dict() for _ in range(n)]
    for j, v in enumerate(vectors):
        for i, a in v.entries.items():
            rows[i][j] = a
    for i, a in target.entries.items():
        rows[i][k] = a
    ech = IntEchelon()
    for r in rows:
        ech.insert(r)
    rref = ech.rref()
    if k in rref:
        return None  # inconsistent: target not in span
    # Particular solution with all free coefficient columns set to zero.
    coeffs = [_F0] * k
    for c, row in rref.items():
        coeffs[c] = row.get(k, _F0)
    # verify (guards against misuse with dependent spans)
    acc: dict[int, Fraction] = {}
    for j, co in enumerate(coeffs):
        if not co:
            continue
        for i, a in vectors[j].entries.items():
            w = acc.get(i, _F0) + co * a
            if w:
                acc[i] = w
            else:
                acc.pop(i, None)
    if acc != target.entries:
        return None
    return coeffs
