"""Exact rational linear algebra.

Vectors are sparse ``dict`` objects mapping an index to a nonzero
``Fraction``.  Matrices are :class:`SparseMatrix` (row dictionaries);
plain lists of lists are accepted wherever a matrix is expected.
Dense integer matrices of moderate density are ranked with fraction-free
Bareiss elimination, everything else with sparse pivoted elimination.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch

Vector = Dict[int, Fraction]


# -- vectors -------------------------------------------------------------------

def vec(entries: Mapping[int, object]) -> Vector:
    return {k: Fraction(v) for k, v in entries.items() if v != 0}


def dense_to_vec(values: Sequence[object]) -> Vector:
    return {k: Fraction(v) for k, v in enumerate(values) if v != 0}


def vec_to_dense(v: Mapping[int, Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * n
    for k, c in v.items():
        out[k] = c
    return out


def axpy(acc: Vector, c: Fraction, v: Mapping[int, Fraction]) -> None:
    """acc += c*v in place, dropping zeros."""
    if c == 0:
        return
    for k, x in v.items():
        y = acc.get(k)
        if y is None:
            acc[k] = c * x
        else:
            y += c * x
            if y:
                acc[k] = y
            else:
                del acc[k]


def vadd(*terms: Tuple[Fraction, Mapping[int, Fraction]]) -> Vector:
    acc: Vector = {}
    for c, v in terms:
        axpy(acc, Fraction(c), v)
    return acc


def vscale(c: object, v: Mapping[int, Fraction]) -> Vector:
    c = Fraction(c)
    if c == 0:
        return {}
    return {k: c * x for k, x in v.items()}


# -- matrices ------------------------------------------------------------------

class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: Optional[int] = None, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        self.nrows = nrows
        self.ncols = nrows if ncols is None else ncols
        self.rows: Dict[int, Vector] = {}
        for (i, j), v in (entries or {}).items():
            self.add_entry(i, j, v)

    def add_entry(self, i: int, j: int, v: object) -> None:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry ({i},{j}) outside {self.nrows}x{self.ncols}")
        v = Fraction(v)
        if v == 0:
            return
        row = self.rows.setdefault(i, {})
        y = row.get(j, Fraction(0)) + v
        if y:
            row[j] = y
        else:
            del row[j]
            if not row:
                del self.rows[i]

    @classmethod
    def from_dense(cls, m: Sequence[Sequence[object]]) -> "SparseMatrix":
        nr = len(m)
        nc = len(m[0]) if nr else 0
        out = cls(nr, nc)
        for i, row in enumerate(m):
            if len(row) != nc:
                raise DimensionMismatch("ragged matrix")
            r = {j: Fraction(v) for j, v in enumerate(row) if v != 0}
            if r:
                out.rows[i] = r
        return out

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def copy(self) -> "SparseMatrix":
        out = SparseMatrix(self.nrows, self.ncols)
        out.rows = {i: dict(r) for i, r in self.rows.items()}
        return out

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows.get(i, {}).get(j, Fraction(0))

    def entries(self) -> Iterable[Tuple[int, int, Fraction]]:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.ncols, self.nrows)
        for i, j, v in self.entries():
            out.rows.setdefault(j, {})[i] = v
        return out

    def _same_shape(self, other: "SparseMatrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch(f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._same_shape(other)
        out = self.copy()
        for i, r in other.rows.items():
            acc = out.rows.get(i, {})
            axpy(acc, Fraction(1), r)
            if acc:
                out.rows[i] = acc
            else:
                out.rows.pop(i, None)
        return out

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def scale(self, c: object) -> "SparseMatrix":
        c = Fraction(c)
        out = SparseMatrix(self.nrows, self.ncols)
        if c:
            out.rows = {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()}
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        out = SparseMatrix(self.nrows, other.ncols)
        orows = other.rows
        for i, r in self.rows.items():
            acc: Vector = {}
            for k, v in r.items():
                ork = orows.get(k)
                if ork:
                    axpy(acc, v, ork)
            if acc:
                out.rows[i] = acc
        return out

    def apply(self, v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, r in self.rows.items():
            s = sum((x * v[j] for j, x in r.items() if j in v), Fraction(0))
            if s:
                out[i] = s
        return out

    def commutator(self, other: "SparseMatrix") -> "SparseMatrix":
        return self @ other - other @ self

    def flatten(self) -> Vector:
        n = self.ncols
        return {i * n + j: v for i, r in self.rows.items() for j, v in r.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


MatrixLike = Union[SparseMatrix, Sequence[Sequence[object]]]


def as_sparse(m: MatrixLike) -> SparseMatrix:
    if isinstance(m, SparseMatrix):
        return m
    return SparseMatrix.from_dense(m)


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return a.commutator(b)


# -- elimination ---------------------------------------------------------------

def _density(m: SparseMatrix) -> float:
    cells = m.nrows * m.ncols
    return m.nnz() / cells if cells else 0.0


def bareiss_rank(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free rank of an integer matrix."""
    a = [list(map(int, row)) for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nr):
            ai = a[i]
            f = ai[c]
            ar = a[r]
            for j in range(c + 1, nc):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
        if r == nr:
            break
    return r


def _sparse_rows(m: MatrixLike) -> List[Vector]:
    s = as_sparse(m)
    return [dict(s.rows[i]) for i in sorted(s.rows)]


def rank(m: MatrixLike) -> int:
    s = as_sparse(m)
    if s.nrows and s.ncols and _density(s) >= 0.1 and all(
        v.denominator == 1 for r in s.rows.values() for v in r.values()
    ):
        return bareiss_rank([[int(x) for x in row] for row in s.to_dense()])
    basis = EchelonBasis()
    for r in _sparse_rows(s):
        basis.add(r)
    return basis.rank


def rank_of_vectors(vectors: Iterable[Mapping[int, Fraction]]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return basis.rank


class EchelonBasis:
    """Incremental echelon form with the combinations that produced each row.

    ``add`` keeps a row when it is independent of the earlier ones;
    ``express`` writes a target in terms of the added vectors.
    """

    def __init__(self, track: bool = True):
        self.track = track
        self.pivots: List[int] = []
        self.rows: Dict[int, Vector] = {}  # pivot column -> row with leading 1 there
        self.combos: Dict[int, Vector] = {}  # pivot column -> coefficients over inputs
        self.count = 0
        self.independent: List[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Mapping[int, Fraction]) -> Tuple[Vector, Vector]:
        r = {k: Fraction(x) for k, x in v.items() if x != 0}
        combo: Vector = {}
        if not r:
            return r, combo
        for p in self.pivots:
            c = r.get(p)
            if c:
                axpy(r, -c, self.rows[p])
                if self.track:
                    axpy(combo, -c, self.combos[p])
                if not r:
                    break
        return r, combo

    def add(self, v: Mapping[int, Fraction]) -> bool:
        idx = self.count
        self.count += 1
        r, combo = self._reduce(v)
        if not r:
            return False
        if self.track:
            combo[idx] = combo.get(idx, Fraction(0)) + 1
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        self.rows[p] = r
        if self.track:
            self.combos[p] = {k: x * inv for k, x in combo.items() if x}
        # keep pivots sorted so reduction meets them in column order
        lo, hi = 0, len(self.pivots)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.pivots[mid] < p:
                lo = mid + 1
            else:
                hi = mid
        self.pivots.insert(lo, p)
        self.independent.append(idx)
        return True

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        r, _ = self._reduce(v)
        return not r

    def express(self, target: Mapping[int, Fraction]) -> Optional[Vector]:
        if not self.track:
            raise ValueError("basis built without tracking")
        r, combo = self._reduce(target)
        if r:
            return None
        return {k: -x for k, x in combo.items() if x}


def _coerce_vectors(vectors: Sequence[object]) -> Tuple[List[Vector], Optional[int]]:
    out = []
    length = None
    for v in vectors:
        if isinstance(v, Mapping):
            out.append({k: Fraction(x) for k, x in v.items() if x != 0})
        else:
            seq = list(v)
            if length is not None and len(seq) != length:
                raise DimensionMismatch("vectors of different lengths")
            length = len(seq)
            out.append(dense_to_vec(seq))
    return out, length


def solve_in_span(vectors: Sequence[object], target: object) -> Optional[List[Fraction]]:
    """Coefficients x with sum x_k vectors[k] = target, or None if target is outside the span."""
    vs, length = _coerce_vectors(vectors)
    (t,), tlen = _coerce_vectors([target])
    if length is not None and tlen is not None and length != tlen:
        raise DimensionMismatch(f"target length {tlen} vs {length}")
    basis = EchelonBasis()
    for v in vs:
        basis.add(v)
    combo = basis.express(t)
    if combo is None:
        return None
    return [combo.get(k, Fraction(0)) for k in range(len(vs))]


def rref(m: MatrixLike) -> Tuple[List[Vector], List[int]]:
    """Reduced row echelon rows (sparse) and their pivot columns."""
    basis = EchelonBasis(track=False)
    for r in _sparse_rows(m):
        basis.add(r)
    return rref_from_basis(basis)


def nullspace(m: MatrixLike) -> List[Vector]:
    s = as_sparse(m)
    rows, piv = rref(s)
    pivset = set(piv)
    out = []
    for f in range(s.ncols):
        if f in pivset:
            continue
        v: Vector = {f: Fraction(1)}
        for r, p in zip(rows, piv):
            c = r.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def solve_linear_system(
    equations: Iterable[Mapping[Optional[int], Fraction]], nvars: int
) -> Tuple[Optional[Dict[int, Fraction]], int]:
    """Solve sum_k a_k x_k + a_None = 0 for every equation.

    Returns (solution or None if inconsistent, rank).  Free variables are
    reported by the rank; when rank < nvars the returned solution sets them to 0.
    """
    basis = EchelonBasis(track=False)
    const_col = nvars
    for eq in equations:
        row = {}
        for k, c in eq.items():
            if c:
                row[const_col if k is None else k] = Fraction(c)
        if not row:
            continue
        basis.add(row)
        if const_col in basis.rows:
            return None, basis.rank
    rows, piv = rref_from_basis(basis)
    sol: Dict[int, Fraction] = {}
    for r, p in zip(rows, piv):
        sol[p] = -r.get(const_col, Fraction(0))
    return sol, len(piv)


def rref_from_basis(basis: EchelonBasis) -> Tuple[List[Vector], List[int]]:
    piv = sorted(basis.rows)
    rows = {p: dict(basis.rows[p]) for p in piv}
    for p in reversed(piv):
        rp = rows[p]
        for q in piv:
            if q < p:
                c = rows[q].get(p)
                if c:
                    axpy(rows[q], -c, rp)
    return [rows[p] for p in piv], piv
