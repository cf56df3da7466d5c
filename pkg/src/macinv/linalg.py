"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`. Elimination is
done fraction-free on integer rows (each rational row is cleared of
denominators first) by the kernel chosen in :mod:`macinv._backend`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import _backend
from .poly import DualPoly, Jet


class InconsistentSystemError(ValueError):
    """The linear system has no solution: rank(A) < rank(A|b)."""


def _integer_row(row):
    den = 1
    for x in row:
        if not isinstance(x, int):
            den = lcm(den, Fraction(x).denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(Fraction(x) * den) for x in row]


def _echelon(matrix, ncols=None):
    """Integer echelon rows and pivots of ``matrix``."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    return _backend.rref_int([_integer_row(r) for r in matrix], ncols)


def _normalized(rows, pivots):
    out = []
    for row, c in zip(rows, pivots):
        p = row[c]
        out.append([Fraction(x, p) for x in row])
    return out


def rref(matrix):
    """Reduced row-echelon form.

    Returns ``(reduced, rank, pivots)``; ``reduced`` has the shape of the
    input with zero rows at the bottom.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    rows, pivots = _echelon(matrix, ncols)
    reduced = _normalized(rows, pivots)
    reduced += [[Fraction(0)] * ncols for _ in range(nrows - len(reduced))]
    return reduced, len(pivots), pivots


def rank(matrix):
    if not matrix:
        return 0
    return len(_echelon(matrix)[1])


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def vecmat(v, m):
    """Row vector times matrix."""
    ncols = len(m[0]) if m else 0
    out = [Fraction(0)] * ncols
    for x, row in zip(v, m):
        if x:
            for k, y in enumerate(row):
                if y:
                    out[k] += x * y
    return out


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def solve_linear(a, b):
    """One exact solution of ``a x = b`` with every free variable set to 0.

    Raises :class:`InconsistentSystemError` when ranks differ.
    """
    if len(a) != len(b):
        raise ValueError("row counts of A and b differ")
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rows, pivots = _echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise InconsistentSystemError("rank(A) < rank(A|b): no solution")
    x = [Fraction(0)] * ncols
    for row, c in zip(rows, pivots):
        x[c] = Fraction(row[ncols], row[c])
    return x


def nullspace(matrix, ncols=None):
    """Basis of {x : matrix x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows, pivots = _echelon(matrix, ncols) if matrix else ([], [])
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(rows, pivots):
            if row[f]:
                v[c] = Fraction(-row[f], row[c])
        basis.append(v)
    return basis


def inverse(matrix):
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    rows, pivots = _echelon(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise ValueError("matrix is singular")
    return [[Fraction(x, row[i]) for x in row[n:]] for i, row in enumerate(rows)]


def determinant(matrix):
    """Exact determinant by fraction-based elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


_KINDS = {"y": DualPoly, "x": Jet}


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row-reduced basis of a space of polynomials over fixed monomial columns.

    ``side`` is ``'y'`` for dual polynomials and ``'x'`` for series-side
    elements. Two subspaces over the same columns are equal iff their
    reduced bases are equal.
    """

    nvars: int
    side: str
    columns: tuple
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors, columns, nvars, side):
        columns = tuple(columns)
        rows, pivots = _echelon(list(vectors), len(columns)) if vectors else ([], [])
        basis = tuple(tuple(r) for r in _normalized(rows, pivots))
        return cls(nvars, side, columns, basis, tuple(pivots))

    @classmethod
    def from_polys(cls, polys, columns):
        polys = list(polys)
        if not polys:
            raise ValueError("use Subspace.span for an empty family")
        side = polys[0].letter
        return cls.span([p.coefficient_vector(columns) for p in polys], columns, polys[0].nvars, side)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.columns == other.columns:
            return self.side == other.side and self.basis == other.basis
        return self.side == other.side and self.reordered(other.columns).basis == other.basis

    def __hash__(self):
        return hash((self.side, self.columns, self.basis))

    def reordered(self, columns):
        """Same space over a permuted column order."""
        columns = tuple(columns)
        if set(columns) != set(self.columns):
            raise ValueError("column sets differ")
        pos = {a: i for i, a in enumerate(self.columns)}
        vecs = [[row[pos[a]] for a in columns] for row in self.basis]
        return Subspace.span(vecs, columns, self.nvars, self.side)

    def vector_of(self, poly):
        return poly.coefficient_vector(self.columns)

    def contains_vector(self, vec):
        vec = list(vec)
        for row, c in zip(self.basis, self.pivots):
            f = vec[c]
            if f:
                vec = [x - f * y for x, y in zip(vec, row)]
        return not any(vec)

    def contains(self, poly):
        try:
            vec = self.vector_of(poly)
        except KeyError:
            return False
        return self.contains_vector(vec)

    def contains_space(self, other):
        return all(self.contains_vector(self._convert(other, row)) for row in other.basis)

    def _convert(self, other, row):
        if other.columns == self.columns:
            return row
        pos = {a: i for i, a in enumerate(self.columns)}
        vec = [Fraction(0)] * len(self.columns)
        for a, x in zip(other.columns, row):
            if x:
                vec[pos[a]] = x
        return vec

    def elements(self):
        kind = _KINDS[self.side]
        return [kind.from_vector(self.nvars, self.columns, row) for row in self.basis]

    def sum(self, other):
        rows = list(self.basis) + [self._convert(other, r) for r in other.basis]
        return Subspace.span(rows, self.columns, self.nvars, self.side)
