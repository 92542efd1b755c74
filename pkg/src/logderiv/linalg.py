"""Exact linear algebra over the rationals.

The workhorse is fraction-free Gaussian elimination: rows are cleared to
primitive integer vectors (multiply by the denominator lcm, divide by the
gcd), and every combination step renormalizes, so all divisions are exact and
intermediate growth stays bounded.  Determinants of polynomial matrices use
Bareiss condensation with exact polynomial division.

Matrices are plain sequences of rows; rationals are `fractions.Fraction`.
All orderings are deterministic: pivots are chosen first-nonzero, kernel
vectors are emitted one per free column in ascending column order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .poly import Polynomial

Row = Sequence[Fraction | int]


def _primitive_int_row(row: Row) -> list[int]:
    fr = [Fraction(v) for v in row]
    den = 1
    for v in fr:
        d = v.denominator
        den = den * d // gcd(den, d)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _echelon_int(rows: Sequence[Row], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Forward elimination; returns (pivot rows, pivot columns)."""
    work = []
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
        r = _primitive_int_row(row)
        if any(r):
            work.append(r)
    piv_cols: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(work)) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        pr = work[r]
        pv = pr[c]
        for i in range(r + 1, len(work)):
            f = work[i][c]
            if not f:
                continue
            new = [a * pv - b * f for a, b in zip(work[i], pr)]
            g = 0
            for v in new:
                g = gcd(g, v)
            work[i] = [v // g for v in new] if g > 1 else new
        piv_cols.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], piv_cols


def rank(rows: Sequence[Row], ncols: int | None = None) -> int:
    """Exact rank of a rational matrix."""
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    _, piv = _echelon_int(rows, ncols)
    return len(piv)


def kernel_basis(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Exact basis of the right nullspace {v : rows @ v = 0}.

    One vector per free column, in ascending column order; each has a 1 at its
    free column and 0 at every other free column (reduced parametrization).
    """
    rows = list(rows)
    if rows:
        ech, piv_cols = _echelon_int(rows, ncols)
    else:
        ech, piv_cols = [], []
    piv_set = set(piv_cols)
    free = [c for c in range(ncols) if c not in piv_set]
    basis: list[list[Fraction]] = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        later: list[int] = [f]
        for r in range(len(piv_cols) - 1, -1, -1):
            pc = piv_cols[r]
            row = ech[r]
            s = Fraction(0)
            for c in later:
                if c > pc and row[c]:
                    s += row[c] * v[c]
            if s:
                v[pc] = -s / row[pc]
                later.append(pc)
        basis.append(v)
    return basis


def invert(matrix: Sequence[Row]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix; ValueError if singular."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    aug = [
        [Fraction(v) for v in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise ValueError("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def reduced_row_echelon(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Reduced row echelon form of the row space (leading ones, full reduction)."""
    ech, piv_cols = _echelon_int(rows, ncols) if rows else ([], [])
    for r in range(len(piv_cols) - 1, -1, -1):
        pc = piv_cols[r]
        pr = ech[r]
        for i in range(r):
            f = ech[i][pc]
            if not f:
                continue
            new = [a * pr[pc] - b * f for a, b in zip(ech[i], pr)]
            g = 0
            for v in new:
                g = gcd(g, v)
            ech[i] = [v // g for v in new] if g > 1 else new
    out = []
    for r, pc in enumerate(piv_cols):
        pv = Fraction(ech[r][pc])
        out.append([Fraction(v) / pv for v in ech[r]])
    return out


class IntRowSpace:
    """Incrementally maintained row space, kept as primitive integer echelon rows.

    `add` reduces the incoming row against the stored pivots and inserts the
    remainder when nonzero; it reports whether the rank grew.  Deterministic
    given the insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, row: Row) -> list[int]:
        r = _primitive_int_row(row)
        if len(r) != self.ncols:
            raise ValueError("row length mismatch")
        for pc in sorted(self._rows):
            f = r[pc]
            if not f:
                continue
            pr = self._rows[pc]
            r = [a * pr[pc] - b * f for a, b in zip(r, pr)]
            g = 0
            for v in r:
                g = gcd(g, v)
            if g > 1:
                r = [v // g for v in r]
        return r

    def contains(self, row: Row) -> bool:
        return not any(self._reduce(row))

    def add(self, row: Row) -> bool:
        r = self._reduce(row)
        pc = next((i for i, v in enumerate(r) if v), None)
        if pc is None:
            return False
        if r[pc] < 0:
            r = [-v for v in r]
        self._rows[pc] = r
        return True


def det_poly_matrix(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Bareiss condensation: each 2x2 combination is divided by the previous
    pivot, which is exact over the polynomial ring.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    nvars = rows[0][0].nvars
    for row in rows:
        for p in row:
            if not isinstance(p, Polynomial) or p.nvars != nvars:
                raise ValueError("entries must be polynomials in the same variables")
    m = [list(row) for row in rows]
    zero = Polynomial.zero(nvars)
    prev = Polynomial.one(nvars)
    sign = 1
    for k in range(n - 1):
        p = next((i for i in range(k, n) if not m[i][k].is_zero), None)
        if p is None:
            return zero
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = num.try_div(prev)
                if q is None:
                    raise ArithmeticError("inexact division in fraction-free elimination")
                m[i][j] = q
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
