"""Fraction-free elimination: rank, nullspace, inverse, polynomial determinants."""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from logderiv import Polynomial
from logderiv.linalg import (
    IntRowSpace,
    det_poly_matrix,
    invert,
    kernel_basis,
    rank,
    reduced_row_echelon,
)


def frac_rows(rows):
    return [[Fraction(v) for v in row] for row in rows]


# -- rank and kernel -------------------------------------------------------------


def test_kernel_of_identity_is_empty():
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert kernel_basis(ident, 3) == []
    assert rank(ident) == 3


def test_kernel_of_single_sum_row():
    basis = kernel_basis([[1, 1, 1]], 3)
    assert len(basis) == 2
    for v in basis:
        assert sum(v) == 0
    # reduced parametrization: one per free column, unit there
    assert basis[0][1] == 1 and basis[0][2] == 0
    assert basis[1][1] == 0 and basis[1][2] == 1


def test_kernel_with_no_rows_is_full_space():
    basis = kernel_basis([], 2)
    assert basis == [[1, 0], [0, 1]]


def test_kernel_vectors_annihilate_and_are_independent():
    rng = random.Random(7)
    for _ in range(25):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        rows = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(m)
        ]
        basis = kernel_basis(rows, n)
        for v in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0
        assert rank(rows, n) + len(basis) == n
        if basis:
            assert rank(basis, n) == len(basis)


def test_kernel_is_deterministic():
    rows = [[2, 4, 6, 0], [1, 2, 3, 1]]
    assert kernel_basis(rows, 4) == kernel_basis(rows, 4)


def test_rank_with_fractions():
    rows = frac_rows([[Fraction(1, 2), 1], [1, 2], [3, 6]])
    assert rank(rows) == 1


# -- inverse ----------------------------------------------------------------------


def test_invert_round_trip():
    m = frac_rows([[2, 1, 0], [0, 1, -1], [1, 0, 3]])
    inv = invert(m)
    n = len(m)
    for i in range(n):
        for j in range(n):
            s = sum(m[i][k] * inv[k][j] for k in range(n))
            assert s == (1 if i == j else 0)


def test_invert_singular_rejected():
    with pytest.raises(ValueError):
        invert([[1, 2], [2, 4]])


# -- reduced row echelon ------------------------------------------------------------


def test_rref_leading_ones_and_pivot_cleanup():
    rows = [[2, 4, 2], [1, 2, 3]]
    rref = reduced_row_echelon(rows, 3)
    assert rref == [[1, 2, 0], [0, 0, 1]]


def test_int_row_space_incremental_rank():
    space = IntRowSpace(3)
    assert space.add([1, 1, 0])
    assert not space.add([2, 2, 0])
    assert space.add([0, 1, 1])
    assert space.rank == 2
    assert space.contains([1, 0, -1])
    assert not space.contains([0, 0, 1])


# -- polynomial determinants ----------------------------------------------------------


def det_cofactor(rows):
    """Independent oracle: Leibniz/cofactor expansion (fine up to 4x4)."""
    n = len(rows)
    nvars = rows[0][0].nvars
    total = Polynomial.zero(nvars)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Polynomial.constant(nvars, sign)
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def test_det_diagonal_of_variables():
    for ell in (1, 2, 3, 4):
        rows = [
            [
                Polynomial.variable(ell, i) if i == j else Polynomial.zero(ell)
                for j in range(ell)
            ]
            for i in range(ell)
        ]
        expected = Polynomial.one(ell)
        for i in range(ell):
            expected = expected * Polynomial.variable(ell, i)
        assert det_poly_matrix(rows) == expected


def test_det_repeated_column_is_zero():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    rows = [[x, x], [y, y]]
    assert det_poly_matrix(rows).is_zero


def test_det_matches_cofactor_oracle():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 4)
        nvars = 2
        rows = [
            [
                Polynomial(
                    nvars,
                    {
                        tuple(rng.randint(0, 1) for _ in range(nvars)): Fraction(
                            rng.randint(-3, 3)
                        )
                        for _ in range(rng.randint(0, 2))
                    },
                )
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        assert det_poly_matrix(rows) == det_cofactor(rows)


def test_det_rejects_non_square():
    x = Polynomial.variable(1, 0)
    with pytest.raises(ValueError):
        det_poly_matrix([[x, x]])
