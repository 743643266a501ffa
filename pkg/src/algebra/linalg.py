"""
Exact dense linear algebra over the rationals and over truncated power series.

Rational matrices delegate elimination to sympy's DomainMatrix over QQ. Jet
matrices are reduced here with column operations over the local ring: the
canonical form is the lower-triangular column Hermite form with monomial pivots
t^{a_i} and entries left of each pivot reduced to degree < a_i.
"""
# Importing dependencies.
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..errors import RankDeficientError, TruncationMismatchError
from .exactnum import (
    ONE,
    ZERO,
    Jet,
    ScalarLike,
    from_qq,
    jet_quotient_by_power,
    jet_shift,
    jet_unit_inverse,
    scalar_to_str,
    to_qq,
    valuation,
)


# ------------------------------------------------------------------
# Rational matrices
# ------------------------------------------------------------------
@dataclass(frozen=True)
class ScalarMatrix:
    """
    Row-major rational matrix. Zero rows or columns are allowed (empty kernel bases).
    """
    entries: Tuple[Tuple[Fraction, ...], ...]
    rows: int
    cols: int

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entries do not match the {self.rows}x{self.cols} shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], cols: Optional[int] = None) -> "ScalarMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(data, len(data), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]], rows: int) -> "ScalarMatrix":
        if not columns:
            return cls(tuple(() for _ in range(rows)), rows, 0)
        return cls.from_rows([[col[i] for col in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ScalarMatrix":
        return cls(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ScalarMatrix":
        return cls.from_rows([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "ScalarMatrix":
        nrows, ncols = dm.shape
        data = dm.to_list() if nrows else []
        return cls(tuple(tuple(from_qq(x) for x in row) for row in data), nrows, ncols)

    def to_domain(self) -> DomainMatrix:
        return DomainMatrix(
            [[to_qq(x) for x in row] for row in self.entries], (self.rows, self.cols), QQ
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix.from_columns(list(self.entries), self.cols) if self.rows else ScalarMatrix.zeros(self.cols, 0)

    def select_columns(self, indices: Iterable[int]) -> "ScalarMatrix":
        return ScalarMatrix.from_columns([self.column(j) for j in indices], self.rows)

    def hstack(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return ScalarMatrix(
            tuple(a + b for a, b in zip(self.entries, other.entries)),
            self.rows, self.cols + other.cols,
        )

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if not self.rows or not other.cols or not self.cols:
            return ScalarMatrix.zeros(self.rows, other.cols)
        return ScalarMatrix.from_domain(self.to_domain().matmul(other.to_domain()))

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        return ScalarMatrix(
            tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.entries, other.entries)),
            self.rows, self.cols,
        )

    def __sub__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        return self + (-other)

    def __neg__(self) -> "ScalarMatrix":
        return self.scale(-1)

    def scale(self, c: ScalarLike) -> "ScalarMatrix":
        c = Fraction(c)
        return ScalarMatrix(tuple(tuple(c * x for x in row) for row in self.entries), self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def to_str_rows(self) -> List[List[str]]:
        return [[scalar_to_str(x) for x in row] for row in self.entries]


def rref(m: ScalarMatrix) -> Tuple[ScalarMatrix, Tuple[int, ...]]:
    """Reduced row echelon form (leading ones) and pivot columns."""
    if not m.rows or not m.cols:
        return m, ()
    reduced, pivots = m.to_domain().rref()
    return ScalarMatrix.from_domain(reduced), tuple(pivots)


def rank(m: ScalarMatrix) -> int:
    if not m.rows or not m.cols:
        return 0
    return m.to_domain().rank()


def kernel_basis(m: ScalarMatrix) -> ScalarMatrix:
    """
    Basis of the right kernel, as columns.

    The basis is canonical for the kernel: its transpose is in reduced row
    echelon form, so every basis vector has first nonzero coordinate 1 and two
    matrices with the same kernel get identical bases.
    """
    n = m.cols
    reduced, pivots = rref(m)
    free = [j for j in range(n) if j not in pivots]
    vectors = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in enumerate(pivots):
            v[p] = -reduced[row, f]
        vectors.append(v)
    if not vectors:
        return ScalarMatrix.zeros(n, 0)
    canonical, _ = rref(ScalarMatrix.from_rows(vectors, n))
    return canonical.transpose()


def column_span_form(m: ScalarMatrix) -> ScalarMatrix:
    """Canonical basis (reduced column echelon form) of the column span."""
    reduced, pivots = rref(m.transpose())
    kept = [list(reduced.entries[i]) for i in range(len(pivots))]
    return ScalarMatrix.from_columns(kept, m.rows)


def same_column_span(a: ScalarMatrix, b: ScalarMatrix) -> bool:
    return column_span_form(a) == column_span_form(b)


def determinant(m: ScalarMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if not m.rows:
        return ONE
    return from_qq(m.to_domain().det())


def inverse(m: ScalarMatrix) -> ScalarMatrix:
    """
    Raises:
        ValueError: if m is singular
    """
    if determinant(m) == 0:
        raise ValueError("matrix is singular")
    return ScalarMatrix.from_domain(m.to_domain().inv())


# ------------------------------------------------------------------
# Jet matrices
# ------------------------------------------------------------------
@dataclass(frozen=True)
class JetMatrix:
    """
    Matrix over Q[[t]]/(t^K) with one truncation order shared by every entry.
    """
    entries: Tuple[Tuple[Jet, ...], ...]
    rows: int
    cols: int
    order: int

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entries do not match the {self.rows}x{self.cols} shape")
        if any(x.order != self.order for row in self.entries for x in row):
            raise TruncationMismatchError("entries carry mixed truncation orders")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Jet]], order: Optional[int] = None) -> "JetMatrix":
        data = tuple(tuple(row) for row in rows)
        if order is None:
            order = data[0][0].order
        return cls(data, len(data), len(data[0]) if data else 0, order)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Jet]], order: int) -> "JetMatrix":
        nrows = len(columns[0])
        return cls.from_rows([[col[i] for col in columns] for i in range(nrows)], order)

    @classmethod
    def from_scalar(cls, m: ScalarMatrix, order: int) -> "JetMatrix":
        return cls.from_rows([[Jet.constant(x, order) for x in row] for row in m.entries], order)

    @classmethod
    def identity(cls, n: int, order: int) -> "JetMatrix":
        return cls.from_scalar(ScalarMatrix.identity(n), order)

    @classmethod
    def diagonal(cls, diagonal: Sequence[Jet]) -> "JetMatrix":
        order = diagonal[0].order
        n = len(diagonal)
        zero = Jet.zero(order)
        return cls.from_rows([[diagonal[i] if i == j else zero for j in range(n)] for i in range(n)], order)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: Tuple[int, int]) -> Jet:
        i, j = key
        return self.entries[i][j]

    def column(self, j: int) -> Tuple[Jet, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[Jet, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "JetMatrix":
        return JetMatrix.from_rows(self.columns(), self.order)

    def evaluate_at_zero(self) -> ScalarMatrix:
        return ScalarMatrix.from_rows([[x.constant_term() for x in row] for row in self.entries], self.cols)

    def extend(self, order: int) -> "JetMatrix":
        return JetMatrix.from_rows([[x.extend(order) for x in row] for row in self.entries], order)

    def min_valuation(self) -> int:
        """Smallest entry valuation; the truncation order when the matrix vanishes."""
        return min((valuation(x) for row in self.entries for x in row), default=self.order)

    def shift(self, m: int) -> "JetMatrix":
        """Entrywise division by t^m (every entry must have valuation >= m)."""
        return JetMatrix.from_rows([[jet_shift(x, m) for x in row] for row in self.entries], self.order)

    def __matmul__(self, other: "JetMatrix") -> "JetMatrix":
        return jet_matrix_mul(self, other)

    def to_str_arrays(self) -> List[List[List[str]]]:
        return [[[scalar_to_str(c) for c in x.coefficients] for x in row] for row in self.entries]


def jet_matrix_mul(a: JetMatrix, b: JetMatrix) -> JetMatrix:
    if a.order != b.order:
        raise TruncationMismatchError(f"truncation orders differ: {a.order} vs {b.order}")
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    zero = Jet.zero(a.order)
    b_cols = b.columns()
    out = []
    for row in a.entries:
        out_row = []
        for col in b_cols:
            acc = zero
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return JetMatrix.from_rows(out, a.order)


def scalar_times_jet_matrix(s: ScalarMatrix, a: JetMatrix) -> JetMatrix:
    """s @ a for a rational s, without lifting s to constant jets."""
    if s.cols != a.rows:
        raise ValueError(f"cannot multiply {s.shape} by {a.shape}")
    zero = Jet.zero(a.order)
    a_cols = a.columns()
    out = []
    for row in s.entries:
        out_row = []
        for col in a_cols:
            acc = zero
            for c, x in zip(row, col):
                if c:
                    acc = acc + x.scale(c)
            out_row.append(acc)
        out.append(out_row)
    return JetMatrix.from_rows(out, a.order)


def gram_matrix(a: JetMatrix, form: ScalarMatrix) -> JetMatrix:
    """aᵀ · form · a: the pairing matrix of the columns of a."""
    return jet_matrix_mul(a.transpose(), scalar_times_jet_matrix(form, a))


def _axpy(col: List[Jet], q: Jet, pivot_col: List[Jet]) -> None:
    """col -= q * pivot_col, in place."""
    for k, p in enumerate(pivot_col):
        if not p.is_zero():
            col[k] = col[k] - q * p


def _triangularize(m: JetMatrix) -> Tuple[List[List[Jet]], List[int]]:
    """
    Column-reduces a square jet matrix to lower-triangular form with pivots t^{a_i}.

    Pivot rule: in row i, the column (among j >= i) of minimal valuation, ties
    broken by lowest column index.

    Raises:
        RankDeficientError: when a row has no entry of valuation below K
    """
    if m.rows != m.cols:
        raise ValueError(f"expected a square jet matrix, got {m.shape}")
    n, order = m.rows, m.order
    cols = [list(c) for c in m.columns()]
    exponents: List[int] = []
    for i in range(n):
        best, best_v = None, order
        for j in range(i, n):
            v = valuation(cols[j][i])
            if v < best_v:
                best, best_v = j, v
        if best is None:
            raise RankDeficientError(f"row {i} vanishes modulo t^{order} after elimination")
        cols[i], cols[best] = cols[best], cols[i]

        unit = jet_shift(cols[i][i], best_v)
        inv = jet_unit_inverse(unit)
        cols[i] = [x * inv for x in cols[i]]
        cols[i][i] = Jet.monomial(best_v, order)

        for j in range(i + 1, n):
            entry = cols[j][i]
            if entry.is_zero():
                continue
            _axpy(cols[j], jet_shift(entry, best_v), cols[i])
            cols[j][i] = Jet.zero(order)
        exponents.append(best_v)
    return cols, exponents


def jet_hermite_form(m: JetMatrix) -> JetMatrix:
    """
    Canonical column form of a full-rank square jet matrix.

    Lower triangular, pivots exactly t^{a_i}, and every entry left of a pivot
    t^{a_i} is a polynomial of degree < a_i. Two matrices have the same column
    span over the local ring iff their forms are equal.

    Raises:
        RankDeficientError: if det(m) has valuation >= K
    """
    cols, exponents = _triangularize(m)
    if sum(exponents) >= m.order:
        raise RankDeficientError(
            f"determinant valuation {sum(exponents)} is not below the truncation order {m.order}"
        )
    n = m.rows
    for i in range(n):
        a = exponents[i]
        for j in range(i):
            _, high = jet_quotient_by_power(cols[j][i], a)
            if not high.is_zero():
                _axpy(cols[j], high, cols[i])
    return JetMatrix.from_columns(cols, m.order)


def hermite_exponents(h: JetMatrix) -> List[int]:
    """Pivot exponents a_i of a matrix already in Hermite form."""
    return [valuation(h[i, i]) for i in range(h.rows)]


def jet_det_valuation(m: JetMatrix) -> int:
    """
    Valuation of det(m), i.e. the colength of the column span in the free module.

    Returns the truncation order K when the determinant vanishes modulo t^K
    (the "at least K" outcome).
    """
    try:
        _, exponents = _triangularize(m)
    except RankDeficientError:
        return m.order
    return min(sum(exponents), m.order)


def hermite_reduce(h: JetMatrix, vector: Sequence[Jet]) -> Tuple[Jet, ...]:
    """
    Normal form of a vector modulo the column span of a Hermite form h.

    Row i of the result is a polynomial of degree < a_i; this representative is
    the canonical lift of the vector's residue class.
    """
    v = list(vector)
    for i, a in enumerate(hermite_exponents(h)):
        _, high = jet_quotient_by_power(v[i], a)
        if not high.is_zero():
            _axpy(v, high, list(h.column(i)))
    return tuple(v)


def monomial_basis(h: JetMatrix) -> List[Tuple[int, int]]:
    """
    Basis (row i, power l) of the quotient module: residues of t^l e_i with l < a_i.
    """
    return [(i, power) for i, a in enumerate(hermite_exponents(h)) for power in range(a)]


def standard_complement(m: ScalarMatrix) -> ScalarMatrix:
    """
    Standard basis vectors completing the columns of m to a basis, chosen greedily
    in index order.
    """
    n = m.rows
    current = m
    chosen = []
    for k in range(n):
        if rank(current) == n:
            break
        e_k = [ONE if i == k else ZERO for i in range(n)]
        candidate = current.hstack(ScalarMatrix.from_columns([e_k], n))
        if rank(candidate) > rank(current):
            current = candidate
            chosen.append(e_k)
    return ScalarMatrix.from_columns(chosen, n)
