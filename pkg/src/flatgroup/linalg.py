"""Exact linear algebra over Z and Q: canonical forms, kernels, lattices.

Everything is exact: matrix entries are arbitrary-precision ints, vector
coordinates are `fractions.Fraction`.  No float appears anywhere.

Hermite normal form convention (fixed once, used everywhere including
`Lattice` canonical bases): *column-style, upper triangular*.  For
``H, U = hnf(M)``:

* ``H == M * U.forward`` and ``U.forward`` is unimodular;
* the columns of ``H`` span the same lattice as the columns of ``M``;
* nonzero columns come first, zero columns trail;
* the pivot of a column is its lowest nonzero entry; pivot rows strictly
  increase left to right (a full-rank square ``H`` is upper triangular);
* pivots are positive and every entry to the right of a pivot, in the
  pivot's row, is reduced into ``[0, pivot)``.

With this convention ``H`` depends only on the column span of ``M``, which
is what makes `Lattice` equality structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Optional, Sequence


class FlatGroupError(Exception):
    """Base class for all errors raised by this package."""


class NotUnimodular(FlatGroupError):
    """A matrix required to lie in GL_n(Z) has |det| != 1."""


class NotASublattice(FlatGroupError):
    """Containment required between lattices does not hold."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def _check_int(value) -> int:
    # bool is an int subclass; reject it so True never sneaks into a matrix
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"expected int entry, got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class IntMatrix:
    """Immutable integer matrix, row-major tuple-of-tuples, >= 1x1."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("IntMatrix must have at least one row and column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            for v in row:
                _check_int(v)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(v) for v in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]]) -> "IntMatrix":
        n = len(cols[0])
        return IntMatrix(tuple(tuple(c[i] for c in cols) for i in range(n)))

    @staticmethod
    def block_diag(blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        n = sum(b.rows for b in blocks)
        rows = [[0] * n for _ in range(n)]
        at = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    rows[at + i][at + j] = b.entries[i][j]
            at += b.rows
        return IntMatrix.from_rows(rows)

    @staticmethod
    def companion(poly: Sequence[int]) -> "IntMatrix":
        """Companion matrix of a monic polynomial given low-to-high."""
        if poly[-1] != 1:
            raise ValueError("polynomial must be monic")
        n = len(poly) - 1
        rows = [[0] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = 1
        for i in range(n):
            rows[i][n - 1] = -poly[i]
        return IntMatrix.from_rows(rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[list[int]]:
        return [[row[j] for row in self.entries] for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.entries))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-v for v in row) for row in self.entries))

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * v for v in row) for row in self.entries))

    def pow(self, k: int) -> "IntMatrix":
        if not self.is_square or k < 0:
            raise ValueError("pow needs a square matrix and k >= 0")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * v for a, v in zip(row, vec)) for row in self.entries)

    def apply_rat(self, vec: "RatVector") -> "RatVector":
        if vec.dim != self.cols:
            raise ValueError("shape mismatch")
        return RatVector(
            tuple(sum((a * v for a, v in zip(row, vec.coords)), Fraction(0)) for row in self.entries)
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix(tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix(self.entries + other.entries)

    def delete_row_col(self, i: int, j: int) -> "IntMatrix":
        return IntMatrix(
            tuple(
                tuple(v for c, v in enumerate(row) if c != j)
                for r, row in enumerate(self.entries)
                if r != i
            )
        )

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = pivot
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square and abs(self.det()) == 1

    def is_identity(self) -> bool:
        return self.is_square and self == IntMatrix.identity(self.rows)


@dataclass(frozen=True, slots=True)
class RatVector:
    """Immutable vector of Fractions (Fraction stores reduced, q >= 1)."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coords:
            raise ValueError("RatVector must have dimension >= 1")
        for c in self.coords:
            if not isinstance(c, Fraction):
                raise TypeError(f"expected Fraction, got {c!r}")

    @staticmethod
    def from_ints(vec: Sequence[int]) -> "RatVector":
        return RatVector(tuple(Fraction(v) for v in vec))

    @staticmethod
    def zero(n: int) -> "RatVector":
        return RatVector(tuple(Fraction(0) for _ in range(n)))

    @staticmethod
    def unit(n: int, i: int) -> "RatVector":
        return RatVector(tuple(Fraction(1 if j == i else 0) for j in range(n)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __add__(self, other: "RatVector") -> "RatVector":
        return RatVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RatVector") -> "RatVector":
        return RatVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RatVector":
        return RatVector(tuple(-a for a in self.coords))

    def scaled(self, c: Fraction | int) -> "RatVector":
        return RatVector(tuple(a * c for a in self.coords))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def to_int_tuple(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"vector {self} is not integral")
        return tuple(c.numerator for c in self.coords)

    def floor_part(self) -> tuple[int, ...]:
        return tuple(c.numerator // c.denominator for c in self.coords)

    def frac_part(self) -> "RatVector":
        """Coordinatewise reduction into [0, 1)."""
        return RatVector(tuple(c - (c.numerator // c.denominator) for c in self.coords))

    def denominator_lcm(self) -> int:
        return lcm(*(c.denominator for c in self.coords))


class RatMatrix:
    """Small exact rational matrix; plumbing for basis changes."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[Fraction | int]]):
        self.entries: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(v) for v in row) for row in entries
        )
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("ragged rows")

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_int(m: IntMatrix) -> "RatMatrix":
        return RatMatrix(m.entries)

    @staticmethod
    def from_columns(cols: Sequence[RatVector]) -> "RatMatrix":
        n = cols[0].dim
        return RatMatrix([[c.coords[i] for c in cols] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        bt = list(zip(*other.entries))
        return RatMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in bt] for row in self.entries]
        )

    def apply(self, vec: RatVector) -> RatVector:
        return RatVector(
            tuple(sum((a * v for a, v in zip(row, vec.coords)), Fraction(0)) for row in self.entries)
        )

    def inverse(self) -> "RatMatrix":
        """Gauss-Jordan inverse; raises ValueError when singular."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        a = [list(row) for row in self.entries]
        inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col]
            a[col] = [v / p for v in a[col]]
            inv[col] = [v / p for v in inv[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                    inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
        return RatMatrix(inv)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.entries for v in row)

    def to_int_matrix(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix is not integral")
        return IntMatrix(tuple(tuple(v.numerator for v in row) for row in self.entries))

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"RatMatrix({self.entries!r})"


def int_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, again integral."""
    if not m.is_unimodular():
        raise NotUnimodular(f"matrix with det {m.det()} has no integer inverse")
    return RatMatrix.from_int(m).inverse().to_int_matrix()


@dataclass(frozen=True, slots=True)
class UnimodularTransform:
    """A basis change in GL_n(Z), stored with its exact inverse."""

    forward: IntMatrix
    inverse: IntMatrix

    def __post_init__(self):
        if not self.forward.is_square or not self.inverse.is_square:
            raise ValueError("transform matrices must be square")
        if not (self.forward @ self.inverse).is_identity():
            raise ValueError("forward * inverse != identity")

    @staticmethod
    def identity(n: int) -> "UnimodularTransform":
        eye = IntMatrix.identity(n)
        return UnimodularTransform(eye, eye)


@dataclass(frozen=True, slots=True)
class RationalTransform:
    """A rational basis change (old coords = forward * new coords)."""

    forward: RatMatrix
    inverse: RatMatrix

    @staticmethod
    def identity(n: int) -> "RationalTransform":
        eye = RatMatrix.identity(n)
        return RationalTransform(eye, eye)

    def is_identity(self) -> bool:
        return self.forward == RatMatrix.identity(self.forward.rows)


# ---------------------------------------------------------------------------
# Hermite normal form


def _negate(col: list[int]) -> None:
    for t in range(len(col)):
        col[t] = -col[t]


def hnf(m: IntMatrix) -> tuple[IntMatrix, UnimodularTransform]:
    """Column-style HNF: returns (H, U) with H = M * U.forward.

    H is canonical for the column span of M (see module docstring for the
    exact convention).  U.inverse is tracked alongside, so no matrix ever
    has to be inverted after the fact.
    """
    n, mcols = m.rows, m.cols
    cols = m.columns()
    ucols = [[1 if i == j else 0 for i in range(mcols)] for j in range(mcols)]
    vrows = [[1 if i == j else 0 for i in range(mcols)] for j in range(mcols)]

    def swap(r, j):
        cols[r], cols[j] = cols[j], cols[r]
        ucols[r], ucols[j] = ucols[j], ucols[r]
        vrows[r], vrows[j] = vrows[j], vrows[r]

    r = mcols - 1
    for i in range(n - 1, -1, -1):
        if r < 0:
            break
        piv = next((j for j in range(r, -1, -1) if cols[j][i] != 0), None)
        if piv is None:
            continue
        if piv != r:
            swap(piv, r)
        for j in range(r):
            if cols[j][i] == 0:
                continue
            a, b = cols[r][i], cols[j][i]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            for vec in (cols, ucols):
                cr, cj = vec[r], vec[j]
                for t in range(len(cr)):
                    vr, vj = cr[t], cj[t]
                    cr[t] = x * vr + y * vj
                    cj[t] = -bg * vr + ag * vj
            rr, rj = vrows[r], vrows[j]
            for t in range(mcols):
                vr, vj = rr[t], rj[t]
                rr[t] = ag * vr + bg * vj
                rj[t] = -y * vr + x * vj
        if cols[r][i] < 0:
            _negate(cols[r])
            _negate(ucols[r])
            _negate(vrows[r])
        pivot = cols[r][i]
        for k in range(r + 1, mcols):
            q = cols[k][i] // pivot
            if q:
                for t in range(n):
                    cols[k][t] -= q * cols[r][t]
                for t in range(mcols):
                    ucols[k][t] -= q * ucols[r][t]
                for t in range(mcols):
                    vrows[r][t] += q * vrows[k][t]
        r -= 1

    # move the remaining (zero) columns 0..r behind the pivot block
    perm = list(range(r + 1, mcols)) + list(range(r + 1))
    cols = [cols[j] for j in perm]
    ucols = [ucols[j] for j in perm]
    vrows = [vrows[j] for j in perm]

    h = IntMatrix.from_columns(cols)
    u = IntMatrix.from_columns(ucols)
    uinv = IntMatrix.from_rows(vrows)
    return h, UnimodularTransform(u, uinv)


# ---------------------------------------------------------------------------
# Smith normal form


def snf(m: IntMatrix) -> tuple[IntMatrix, UnimodularTransform, UnimodularTransform]:
    """Smith normal form: (S, U, V) with S = U.forward * M * V.forward,
    S diagonal, d_1 | d_2 | ... and all d_i >= 0."""
    n, mc = m.rows, m.cols
    s = [list(row) for row in m.entries]
    urows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    uinvc = [[1 if i == j else 0 for i in range(n)] for j in range(n)]  # columns of U^-1
    vcols = [[1 if i == j else 0 for i in range(mc)] for j in range(mc)]
    vinvr = [[1 if i == j else 0 for j in range(mc)] for i in range(mc)]  # rows of V^-1

    def row_2x2(i1, i2, x, y, u, v):
        # rows (i1, i2) <- (x*r1 + y*r2, u*r1 + v*r2); det must be 1
        for mat in (s, urows):
            r1, r2 = mat[i1], mat[i2]
            for t in range(len(r1)):
                a, b = r1[t], r2[t]
                r1[t] = x * a + y * b
                r2[t] = u * a + v * b
        # U^-1 picks up the inverse on columns: inv([[x,y],[u,v]]) = [[v,-y],[-u,x]]
        c1, c2 = uinvc[i1], uinvc[i2]
        for t in range(n):
            a, b = c1[t], c2[t]
            c1[t] = v * a - u * b
            c2[t] = -y * a + x * b

    def col_2x2(j1, j2, x, y, u, v):
        for row in s:
            a, b = row[j1], row[j2]
            row[j1] = x * a + y * b
            row[j2] = u * a + v * b
        c1, c2 = vcols[j1], vcols[j2]
        for t in range(mc):
            a, b = c1[t], c2[t]
            c1[t] = x * a + y * b
            c2[t] = u * a + v * b
        r1, r2 = vinvr[j1], vinvr[j2]
        for t in range(mc):
            a, b = r1[t], r2[t]
            r1[t] = v * a - u * b
            r2[t] = -y * a + x * b

    def swap_rows(i1, i2):
        s[i1], s[i2] = s[i2], s[i1]
        urows[i1], urows[i2] = urows[i2], urows[i1]
        uinvc[i1], uinvc[i2] = uinvc[i2], uinvc[i1]

    def swap_cols(j1, j2):
        for row in s:
            row[j1], row[j2] = row[j2], row[j1]
        vcols[j1], vcols[j2] = vcols[j2], vcols[j1]
        vinvr[j1], vinvr[j2] = vinvr[j2], vinvr[j1]

    def find_pivot(t):
        best = None
        for i in range(t, n):
            for j in range(t, mc):
                v = s[i][j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        return best

    t = 0
    while t < min(n, mc):
        best = find_pivot(t)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        while True:
            # clear column t; plain elimination when divisible keeps the
            # pivot row fixed, which is what makes this loop terminate
            for i in range(t + 1, n):
                if s[i][t] != 0:
                    a, b = s[t][t], s[i][t]
                    if b % a == 0:
                        row_2x2(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = xgcd(a, b)
                        row_2x2(t, i, x, y, -(b // g), a // g)
            # clear row t
            for j in range(t + 1, mc):
                if s[t][j] != 0:
                    a, b = s[t][t], s[t][j]
                    if b % a == 0:
                        col_2x2(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = xgcd(a, b)
                        col_2x2(t, j, x, y, -(b // g), a // g)
            if any(s[i][t] != 0 for i in range(t + 1, n)):
                continue
            # divisibility: pivot must divide the trailing submatrix
            d = s[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, n) for j in range(t + 1, mc) if s[i][j] % d != 0),
                None,
            )
            if bad is None:
                break
            row_2x2(t, bad[0], 1, 1, 0, 1)  # row_t += row_i, then re-clear
        t += 1

    # negate rows with negative pivots (det -1 per negation, tracked)
    for i in range(min(n, mc)):
        if s[i][i] < 0:
            for t2 in range(mc):
                s[i][t2] = -s[i][t2]
            for t2 in range(n):
                urows[i][t2] = -urows[i][t2]
                uinvc[i][t2] = -uinvc[i][t2]

    smat = IntMatrix.from_rows(s)
    u = UnimodularTransform(IntMatrix.from_rows(urows), IntMatrix.from_columns(uinvc))
    v = UnimodularTransform(IntMatrix.from_columns(vcols), IntMatrix.from_rows(vinvr))
    return smat, u, v


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True, slots=True)
class Lattice:
    """Sublattice of Z^n; `basis` holds HNF-canonical basis columns.

    `basis` may be empty (the zero lattice).  Canonical form makes
    equality structural: two lattices are equal iff their bases are.
    """

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for col in self.basis:
            if len(col) != self.ambient_dim:
                raise ValueError("basis vector of wrong dimension")

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "Lattice":
        vecs = [tuple(int(v) for v in vec) for vec in vectors]
        vecs = [v for v in vecs if any(v)]
        if not vecs:
            return Lattice(ambient_dim, ())
        h, _ = hnf(IntMatrix.from_columns(vecs))
        cols = [tuple(col) for col in h.columns() if any(col)]
        return Lattice(ambient_dim, tuple(cols))

    @staticmethod
    def standard(n: int) -> "Lattice":
        return Lattice.from_vectors(n, [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)])

    @staticmethod
    def zero(n: int) -> "Lattice":
        return Lattice(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_standard(self) -> bool:
        return self == Lattice.standard(self.ambient_dim)

    def basis_matrix(self) -> Optional[IntMatrix]:
        if not self.basis:
            return None
        return IntMatrix.from_columns(self.basis)

    def _pivots(self) -> list[int]:
        # row index of the lowest nonzero entry of each basis column
        out = []
        for col in self.basis:
            out.append(max(i for i, v in enumerate(col) if v != 0))
        return out

    def coordinates_of(self, vec: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer coordinates of `vec` over the basis, or None."""
        if len(vec) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        v = list(vec)
        pivots = self._pivots()
        coeffs = [0] * self.rank
        for j in range(self.rank - 1, -1, -1):
            p = pivots[j]
            piv = self.basis[j][p]
            if v[p] % piv != 0:
                return None
            c = v[p] // piv
            coeffs[j] = c
            if c:
                for t in range(self.ambient_dim):
                    v[t] -= c * self.basis[j][t]
        if any(v):
            return None
        return tuple(coeffs)

    def contains(self, vec: Sequence[int]) -> bool:
        return self.coordinates_of(vec) is not None


def integer_kernel(m: IntMatrix) -> Lattice:
    """{v in Z^cols : M v = 0}; saturated by construction."""
    h, u = hnf(m)
    kernel_cols = [u.forward.column(j) for j in range(m.cols) if not any(h.column(j))]
    return Lattice.from_vectors(m.cols, kernel_cols)


def solve_integer(m: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """One integer solution x of M x = b, or None if there is none."""
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    s, u, v = snf(m)
    c = u.forward.apply(b)
    w = [0] * m.cols
    for i in range(m.rows):
        d = s.entries[i][i] if i < min(m.rows, m.cols) else 0
        if d:
            if c[i] % d != 0:
                return None
            w[i] = c[i] // d
        elif c[i] != 0:
            return None
    return v.forward.apply(w)


def saturate(lat: Lattice) -> Lattice:
    """Smallest lattice L' >= L with L' = (Q-span of L) intersect Z^n."""
    if lat.is_zero():
        return lat
    basis = lat.basis_matrix()
    s, u, _ = snf(basis)
    r = sum(1 for i in range(min(s.rows, s.cols)) if s.entries[i][i] != 0)
    cols = [u.inverse.column(j) for j in range(r)]
    return Lattice.from_vectors(lat.ambient_dim, cols)


def lattice_index(sub: Lattice, sup: Lattice) -> Optional[int]:
    """Index [sup : sub], or None for infinite; NotASublattice if sub is
    not contained in sup."""
    if sub.ambient_dim != sup.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    coords = []
    for col in sub.basis:
        c = sup.coordinates_of(col)
        if c is None:
            raise NotASublattice(f"{col} is not in the claimed superlattice")
        coords.append(c)
    if sub.rank < sup.rank:
        return None
    # equal rank: index is |det| of the coordinate matrix
    return abs(IntMatrix.from_columns(coords).det())


class IncrementalLattice:
    """Mutable column-echelon accumulator over Z^n.

    Cheap repeated `add`; used by span searches where thousands of
    merge-and-test operations happen.  Not canonical - use `to_lattice`
    for a canonical form.
    """

    __slots__ = ("n", "pivot_cols")

    def __init__(self, n: int):
        self.n = n
        self.pivot_cols: dict[int, list[int]] = {}  # pivot row -> column

    def copy(self) -> "IncrementalLattice":
        other = object.__new__(IncrementalLattice)
        other.n = self.n
        other.pivot_cols = {k: v.copy() for k, v in self.pivot_cols.items()}
        return other

    def add(self, vec: Sequence[int]) -> None:
        v = list(vec)
        for i in range(self.n):
            if v[i] == 0:
                continue
            col = self.pivot_cols.get(i)
            if col is None:
                self.pivot_cols[i] = v
                return
            a, b = col[i], v[i]
            if b % a == 0:
                q = b // a
                for t in range(i, self.n):
                    v[t] -= q * col[t]
            else:
                g, x, y = xgcd(a, b)
                ag, mbg = a // g, -(b // g)
                for t in range(i, self.n):
                    ct, vt = col[t], v[t]
                    col[t] = x * ct + y * vt
                    v[t] = mbg * ct + ag * vt

    def add_all(self, vecs: Iterable[Sequence[int]]) -> None:
        for v in vecs:
            self.add(v)

    def merge(self, other: "IncrementalLattice") -> None:
        for col in other.pivot_cols.values():
            self.add(col)

    def is_full(self) -> bool:
        if len(self.pivot_cols) != self.n:
            return False
        return all(abs(col[i]) == 1 for i, col in self.pivot_cols.items())

    def rank(self) -> int:
        return len(self.pivot_cols)

    def to_lattice(self) -> Lattice:
        return Lattice.from_vectors(self.n, list(self.pivot_cols.values()))


# ---------------------------------------------------------------------------
# Finite-order detection in GL_n(Z)


@lru_cache(maxsize=None)
def euler_phi(d: int) -> int:
    result = d
    p = 2
    m = d
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        for j, bv in enumerate(b):
            out[i + j] += av * bv
    return tuple(out)


def _poly_divexact(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    # exact division of polynomials over Z, coefficients low-to-high
    num_l = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num_l[i + len(den) - 1]
        assert c % den[-1] == 0
        q[i] = c // den[-1]
        for j, dv in enumerate(den):
            num_l[i + j] -= q[i] * dv
    assert not any(num_l)
    return tuple(q)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, low-to-high."""
    num = tuple([-1] + [0] * (d - 1) + [1])  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            num = _poly_divexact(num, cyclotomic(e))
    return num


def _poly_at_matrix(poly: tuple[int, ...], m: IntMatrix) -> IntMatrix:
    n = m.rows
    acc = IntMatrix.identity(n).scaled(poly[-1])
    for c in reversed(poly[:-1]):
        acc = acc @ m + IntMatrix.identity(n).scaled(c)
    return acc


def matrix_order(m: IntMatrix) -> Optional[int]:
    """Least k >= 1 with M^k = I, or None for infinite order.

    Detection is by cyclotomic factors of the characteristic polynomial:
    collect every d with phi(d) <= n whose cyclotomic polynomial kills an
    eigenvalue (det Phi_d(M) = 0), candidate order k = lcm of those d, and
    confirm with one exact power.  M^k != I certifies infinite order (a
    non-semisimple unipotent part or a non-root-of-unity eigenvalue).
    """
    if not m.is_square:
        raise ValueError("order of a non-square matrix")
    if abs(m.det()) != 1:
        raise NotUnimodular(f"matrix has determinant {m.det()}")
    n = m.rows
    present = []
    d = 1
    while True:
        if euler_phi(d) <= n:
            if _poly_at_matrix(cyclotomic(d), m).det() == 0:
                present.append(d)
        # phi(d) >= sqrt(d/2), so phi(d) <= n forces d <= 2 n^2 + 1
        if d > 2 * n * n + 1:
            break
        d += 1
    if not present:
        return None
    k = lcm(*present)
    return k if m.pow(k).is_identity() else None
