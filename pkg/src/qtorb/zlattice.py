"""Exact integer lattice algebra.

Everything here works on Python ints, so there is no overflow no matter how
large Smith/Hermite intermediates get.  Matrices are small immutable values
(``IntegerMatrix``); the algorithms copy into plain lists of lists, mutate
those, and wrap the result again.

Conventions:

* ``snf(A)`` returns ``U, D, V`` with ``U @ A @ V == D``.
* ``hnf(A)`` is row-style: ``U @ A == H`` with ``H`` in echelon form, pivots
  positive and entries above each pivot reduced into ``[0, pivot)``.
* Lattice bases are returned as matrix *columns*.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Raised for shape mismatches and non-finite quotients."""


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise LatticeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise LatticeError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int | None = None) -> "IntegerMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(columns, cols=rows).T

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    # -- access -----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def select_columns(self, idx: Iterable[int]) -> "IntegerMatrix":
        idx = list(idx)
        return IntegerMatrix.from_columns([self.col(j) for j in idx], rows=self.rows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise LatticeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntegerMatrix(
            self.rows, other.cols,
            tuple(sum(a * b for a, b in zip(self.row(i), c))
                  for i in range(self.rows) for c in cols),
        )

    def apply(self, v: Sequence[int]) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise LatticeError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def det(self) -> int:
        if self.rows != self.cols:
            raise LatticeError("determinant of a non-square matrix")
        return det(self.to_rows())

    def rank(self) -> int:
        return rank(self.to_rows())

    def __repr__(self):
        return f"IntegerMatrix({self.to_rows()!r})"


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite quotient lattice ``M / S`` with explicit coset representatives.

    ``coset_reps`` are vectors in the ambient integer lattice (the one ``M``
    lives in), one per group element; ``coset_reps[0]`` is zero.
    """

    invariant_factors: tuple
    coset_reps: tuple = field(repr=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if self.is_trivial:
            return "trivial"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)

    @classmethod
    def trivial(cls, ambient_rank: int) -> "FiniteAbelianGroup":
        return cls((), ((0,) * ambient_rank,))


# ---------------------------------------------------------------------------
# scalar helpers on lists of lists


def det(a: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a: Sequence[Sequence]) -> int:
    """Rank over Q of an integer (or rational) matrix."""
    return len(rref([list(map(Fraction, r)) for r in a])[1])


def rref(m: list[list[Fraction]], col_order: Sequence[int] | None = None):
    """Reduced row echelon form over Q, in place on a copy.

    ``col_order`` gives the order in which columns are tried as pivots.
    Returns ``(rows, pivots)`` where ``rows`` are the nonzero reduced rows and
    ``pivots[k]`` is the pivot column of ``rows[k]``.
    """
    m = [list(r) for r in m]
    if not m:
        return [], []
    ncols = len(m[0])
    order = range(ncols) if col_order is None else col_order
    pivots = []
    r = 0
    for c in order:
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / Fraction(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction]:
    """Coefficients ``q`` with ``sum q_i * columns[i] == target``.

    The columns must be linearly independent; raises ``LatticeError`` if the
    target is not in their span.
    """
    k = len(columns)
    n = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    rows, pivots = rref(aug)
    if k in pivots:
        raise LatticeError("vector is not in the span of the given columns")
    if len(pivots) != k:
        raise LatticeError("columns are linearly dependent")
    q = [Fraction(0)] * k
    for row, p in zip(rows, pivots):
        q[p] = row[k]
    return q


# ---------------------------------------------------------------------------
# normal forms


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for r in m:
        r[i], r[j] = r[j], r[i]


def _add_row(m, src, dst, f):
    # row[dst] += f * row[src]
    m[dst] = [a + f * b for a, b in zip(m[dst], m[src])]


def _add_col(m, src, dst, f):
    for r in m:
        r[dst] += f * r[src]


def _ident(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(A: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form ``U @ A @ V == D`` with ``d_i | d_{i+1}``, ``d_i >= 0``."""
    r, c = A.shape
    m = A.to_rows()
    U = _ident(r)
    V = _ident(c)

    for t in range(min(r, c)):
        while True:
            nonzero = [(abs(m[i][j]), i, j) for i in range(t, r) for j in range(t, c) if m[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            if pi != t:
                _swap_rows(m, t, pi)
                _swap_rows(U, t, pi)
            if pj != t:
                _swap_cols(m, t, pj)
                _swap_cols(V, t, pj)
            p = m[t][t]
            dirty = False
            for i in range(t + 1, r):
                if m[i][t]:
                    f = m[i][t] // p
                    _add_row(m, t, i, -f)
                    _add_row(U, t, i, -f)
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, c):
                if m[t][j]:
                    f = m[t][j] // p
                    _add_col(m, t, j, -f)
                    _add_col(V, t, j, -f)
                    dirty = dirty or m[t][j] != 0
            if dirty:
                continue
            # pivot row/column clear; enforce divisibility on the remaining block
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if m[i][j] % p), None)
            if bad is None:
                break
            _add_row(m, bad[0], t, 1)
            _add_row(U, bad[0], t, 1)
        if t < r and t < c and m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(
        IntegerMatrix.from_rows(U, cols=r),
        IntegerMatrix.from_rows(m, cols=c),
        IntegerMatrix.from_rows(V, cols=c),
    )


def hnf(A: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form; returns ``(H, U)`` with ``U @ A == H``."""
    r, c = A.shape
    m = A.to_rows()
    U = _ident(r)
    prow = 0
    for col in range(c):
        if prow == r:
            break
        while True:
            nonzero = [(abs(m[i][col]), i) for i in range(prow, r) if m[i][col]]
            if not nonzero:
                break
            _, pi = min(nonzero)
            if pi != prow:
                _swap_rows(m, prow, pi)
                _swap_rows(U, prow, pi)
            p = m[prow][col]
            done = True
            for i in range(prow + 1, r):
                if m[i][col]:
                    f = m[i][col] // p
                    _add_row(m, prow, i, -f)
                    _add_row(U, prow, i, -f)
                    done = done and m[i][col] == 0
            if done:
                break
        if not m[prow][col]:
            continue
        if m[prow][col] < 0:
            m[prow] = [-x for x in m[prow]]
            U[prow] = [-x for x in U[prow]]
        p = m[prow][col]
        for i in range(prow):
            f = m[i][col] // p
            if f:
                _add_row(m, prow, i, -f)
                _add_row(U, prow, i, -f)
        prow += 1
    return IntegerMatrix.from_rows(m, cols=c), IntegerMatrix.from_rows(U, cols=r)


def _canonical_columns(vectors: Sequence[Sequence[int]], n: int) -> IntegerMatrix:
    """HNF-reduced basis (as columns) of the lattice spanned by ``vectors``."""
    if not vectors:
        return IntegerMatrix.zeros(n, 0)
    H, _ = hnf(IntegerMatrix.from_rows(vectors, cols=n))
    basis = [row for row in H.to_rows() if any(row)]
    return IntegerMatrix.from_columns(basis, rows=n)


def lattice_basis(generators: Sequence[Sequence[int]], ambient_rank: int) -> IntegerMatrix:
    """Canonical (HNF) basis of the lattice spanned by ``generators``."""
    return _canonical_columns([list(g) for g in generators], ambient_rank)


def kernel_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Basis (columns) of the integer kernel ``{x : A x = 0}``.

    The kernel of an integer matrix is always saturated, so this is also a
    basis of the rational kernel intersected with the integer lattice.
    """
    H, U = hnf(A.T)
    vectors = [U.row(i) for i in range(H.rows) if not any(H.row(i))]
    return _canonical_columns(vectors, A.cols)


def saturation(generators: Sequence[Sequence[int]], ambient_rank: int) -> IntegerMatrix:
    """Basis of ``span_Q(generators) ∩ Z^ambient_rank`` as columns."""
    gens = [list(g) for g in generators]
    for g in gens:
        if len(g) != ambient_rank:
            raise LatticeError(f"generator {g} does not have length {ambient_rank}")
    gens = [g for g in gens if any(g)]
    if not gens:
        return IntegerMatrix.zeros(ambient_rank, 0)
    # the saturation is the kernel of the annihilator
    annihilator = kernel_basis(IntegerMatrix.from_rows(gens, cols=ambient_rank))
    if annihilator.cols == 0:
        return IntegerMatrix.identity(ambient_rank)
    return kernel_basis(annihilator.T)


def coordinates(basis: IntegerMatrix, v: Sequence[int]) -> tuple:
    """Integer coordinates of ``v`` in the column basis ``basis``."""
    q = solve_rational(basis.columns(), v)
    if any(x.denominator != 1 for x in q):
        raise LatticeError(f"{list(v)} is not in the lattice spanned by the basis")
    return tuple(int(x) for x in q)


def quotient_group(ambient_basis: IntegerMatrix, sub_generators: IntegerMatrix) -> FiniteAbelianGroup:
    """The finite group ``M / S`` where ``M`` has basis ``ambient_basis`` (columns)
    and ``S`` is generated by the columns of ``sub_generators``.

    Coset representatives are the lifts of the boxes ``0 <= y_i < d_i`` in
    Smith-aligned coordinates, enumerated lexicographically, mapped back into
    the ambient lattice.
    """
    n, r = ambient_basis.shape
    if sub_generators.rows != n:
        raise LatticeError("ambient and sublattice live in different ranks")
    if r == 0:
        if any(sub_generators.entries):
            raise LatticeError("sublattice is not contained in the ambient lattice")
        return FiniteAbelianGroup.trivial(n)
    coords = IntegerMatrix.from_columns(
        [coordinates(ambient_basis, g) for g in sub_generators.columns()], rows=r
    ) if sub_generators.cols else IntegerMatrix.zeros(r, 0)
    dec = snf(coords)
    diag = dec.diagonal + [0] * (r - min(coords.shape))
    if any(d == 0 for d in diag):
        raise LatticeError(
            f"quotient is infinite: sublattice has rank {dec.rank}, ambient rank {r}"
        )
    # colspan(coords) = U^{-1} colspan(D); lift SNF coordinates through U^{-1}
    Uinv = _unimodular_inverse(dec.U)
    lift = ambient_basis @ Uinv
    factors = tuple(d for d in diag if d > 1)
    ranges = [range(d) for d in diag]
    reps = tuple(lift.apply(y) for y in itertools.product(*ranges))
    return FiniteAbelianGroup(factors, reps)


def _unimodular_inverse(U: IntegerMatrix) -> IntegerMatrix:
    n = U.rows
    cols = [solve_rational(U.columns(), e) for e in IntegerMatrix.identity(n).columns()]
    return IntegerMatrix.from_columns([[int(x) for x in c] for c in cols], rows=n)


def inverse_integer(U: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a unimodular matrix; raises if ``|det U| != 1``."""
    if abs(U.det()) != 1:
        raise LatticeError("matrix is not unimodular")
    return _unimodular_inverse(U)
