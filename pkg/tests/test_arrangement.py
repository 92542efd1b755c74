"""Arrangement parsing, canonical form, lattice, circuits, bijections."""

import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from logderiv import (
    Arrangement,
    DuplicateHyperplaneError,
    FormatError,
    LinearForm,
    NonEssentialError,
    Polynomial,
    circuits,
    defining_polynomial,
    intersection_lattice,
    is_canonical,
    load_arrangement,
    point_in_complement,
    render_arrangement,
    subset_rank,
    to_canonical,
    verify_lattice_bijection,
    ziegler_arrangement,
)
from logderiv.linalg import kernel_basis, reduced_row_echelon

from conftest import boolean_arrangement, random_essential_arrangement

X2_TEXT = """\
# nine planes
3 9
1 0 0
0 1 0
0 0 1
1 1 -1
1 -1 1
2 -2 1
2 -1 -2
2 1 1
2 -1 -1
"""


# -- parsing ----------------------------------------------------------------------


def test_load_boolean():
    arr = load_arrangement("3 3\n1 0 0\n0 1 0\n0 0 1\n")
    assert arr.ell == 3 and arr.n == 3
    assert is_canonical(arr)


def test_load_x2_matches_fixture():
    arr = load_arrangement(X2_TEXT)
    assert arr.ell == 3 and arr.n == 9
    assert arr == ziegler_arrangement()
    expected = ["x1", "x2", "x3", "x1 + x2 - x3", "x1 - x2 + x3",
                "2*x1 - 2*x2 + x3", "2*x1 - x2 - 2*x3", "2*x1 + x2 + x3",
                "2*x1 - x2 - x3"]
    assert [f.render() for f in arr.forms] == expected


def test_load_non_essential_reports_rank():
    text = "3 9\n" + "\n".join(f"{i} {i + 1} 0" for i in range(1, 10))
    with pytest.raises(NonEssentialError, match="rank 2 < 3"):
        load_arrangement(text)


def test_load_duplicate_hyperplane_rejected():
    with pytest.raises(DuplicateHyperplaneError):
        load_arrangement("2 2\n1 2\n2 4\n")


def test_load_format_errors():
    with pytest.raises(FormatError):
        load_arrangement("")
    with pytest.raises(FormatError):
        load_arrangement("2 2\n1 0\n0\n")
    with pytest.raises(FormatError):
        load_arrangement("2 1\n0 0\n")
    with pytest.raises(FormatError):
        load_arrangement("2 1\n1 x\n")


def test_render_round_trip():
    arr = ziegler_arrangement()
    assert load_arrangement(render_arrangement(arr)) == arr


# -- defining polynomial and complement ---------------------------------------------


def test_defining_polynomial_boolean2():
    arr = boolean_arrangement(2)
    assert defining_polynomial(arr) == Polynomial.parse("x1*x2", 2)


def test_defining_polynomial_x2_at_special_point():
    arr = ziegler_arrangement()
    q = defining_polynomial(arr)
    assert q.degree() == 9
    point = (2, 3, -1)
    # oracle: the product of the nine per-form values
    oracle = Fraction(1)
    for f in arr.forms:
        oracle *= f(point)
    assert oracle == -7776
    assert q.eval(point) == -7776


def test_point_in_complement():
    arr = ziegler_arrangement()
    assert point_in_complement(arr, (2, 3, -1))
    assert not point_in_complement(arr, (0, 0, 0))
    assert not point_in_complement(arr, (1, 1, 2))  # lies on the fourth plane


def test_complement_iff_defining_polynomial_nonzero():
    rng = random.Random(3)
    arr = ziegler_arrangement()
    q = defining_polynomial(arr)
    for _ in range(25):
        p = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
        assert point_in_complement(arr, p) == (q.eval(p) != 0)


# -- canonical form -------------------------------------------------------------------


def test_x2_already_canonical():
    arr = ziegler_arrangement()
    canon, change = to_canonical(arr)
    assert change.is_identity()
    assert canon == arr


def test_canonical_two_vars_example():
    # forms (x+y, x-y, x): solving x = (X1+X2)/2
    arr = Arrangement(2, (LinearForm((1, 1)), LinearForm((1, -1)), LinearForm((1, 0))))
    canon, change = to_canonical(arr)
    assert change.permutation == (1, 2, 3)
    assert canon.forms[0].render() == "x1"
    assert canon.forms[1].render() == "x2"
    assert canon.forms[2].coeffs == (Fraction(1, 2), Fraction(1, 2))


def test_canonical_picks_first_independent_subset():
    # first two forms are parallel-free but dependent with nothing; third needed
    arr = Arrangement(
        2, (LinearForm((1, 1)), LinearForm((2, 2 + 0)), LinearForm((0, 1)))
    ) if False else Arrangement(
        2, (LinearForm((1, 1)), LinearForm((0, 1)), LinearForm((1, 0)))
    )
    canon, change = to_canonical(arr)
    assert change.permutation == (1, 2, 3)
    assert is_canonical(canon)


def test_canonical_preserves_subset_ranks():
    rng = random.Random(17)
    for _ in range(12):
        ell = rng.randint(2, 3)
        n = rng.randint(ell, ell + 3)
        arr = random_essential_arrangement(rng, ell, n)
        canon, change = to_canonical(arr)
        perm = change.permutation
        for size in range(1, ell + 1):
            for combo in combinations(range(1, n + 1), size):
                positions = [perm.index(i) + 1 for i in combo]
                assert subset_rank(arr, combo) == subset_rank(canon, positions)


def test_canonical_q_is_substituted_original_q():
    rng = random.Random(23)
    for _ in range(8):
        ell = rng.randint(2, 3)
        arr = random_essential_arrangement(rng, ell, rng.randint(ell, ell + 2))
        canon, change = to_canonical(arr)
        substituted = defining_polynomial(arr).substitute_linear(change.inverse)
        assert substituted == defining_polynomial(canon)


def test_canonical_matrix_times_inverse_is_identity():
    arr = Arrangement(2, (LinearForm((2, 1)), LinearForm((1, 3)), LinearForm((1, 0))))
    _, change = to_canonical(arr)
    n = len(change.matrix)
    for i in range(n):
        for j in range(n):
            s = sum(change.matrix[i][k] * change.inverse[k][j] for k in range(n))
            assert s == (1 if i == j else 0)


# -- intersection lattice ---------------------------------------------------------------


def lattice_oracle(arr):
    """Independent enumeration: distinct intersection subspaces via nullspaces.

    For every index subset, compute the solution subspace of its forms (as a
    canonical echelon basis), deduplicate, and read off the closed index set by
    evaluating every form on the subspace basis.
    """
    seen = {}
    for size in range(1, arr.n + 1):
        for combo in combinations(range(arr.n), size):
            rows = [arr.forms[i].coeffs for i in combo]
            kern = kernel_basis(rows, arr.ell)
            dim = len(kern)
            if dim == arr.ell:  # not cut down at all (impossible here)
                continue
            key = tuple(tuple(r) for r in reduced_row_echelon(kern, arr.ell)) if kern else ()
            if key in seen:
                continue
            closed = tuple(
                j + 1
                for j in range(arr.n)
                if all(arr.forms[j](v) == 0 for v in kern) or not kern
            )
            seen[key] = (arr.ell - dim, closed)
    return sorted(seen.values())


def test_lattice_boolean3():
    flats = intersection_lattice(boolean_arrangement(3))
    counts = {}
    for f in flats:
        counts[f.rank] = counts.get(f.rank, 0) + 1
    assert counts == {1: 3, 2: 3, 3: 1}


def test_lattice_three_lines_in_plane():
    arr = Arrangement(2, (LinearForm((1, 0)), LinearForm((0, 1)), LinearForm((1, -1))))
    flats = intersection_lattice(arr)
    rank1 = [f for f in flats if f.rank == 1]
    rank2 = [f for f in flats if f.rank == 2]
    assert len(rank1) == 3
    assert len(rank2) == 1
    assert rank2[0].hyperplane_indices == (1, 2, 3)


def test_lattice_x2_matches_subspace_oracle():
    arr = ziegler_arrangement()
    flats = intersection_lattice(arr)
    got = sorted((f.rank, f.hyperplane_indices) for f in flats)
    assert got == lattice_oracle(arr)
    counts = {}
    for f in flats:
        counts[f.rank] = counts.get(f.rank, 0) + 1
    assert counts == {1: 9, 2: 24, 3: 1}  # frozen fingerprint


def test_lattice_deterministic():
    arr = ziegler_arrangement()
    assert intersection_lattice(arr) == intersection_lattice(arr)


# -- circuits -------------------------------------------------------------------------


def test_circuits_boolean_empty():
    assert circuits(boolean_arrangement(3)) == []


def test_circuits_three_lines():
    arr = Arrangement(2, (LinearForm((1, 0)), LinearForm((0, 1)), LinearForm((1, -1))))
    circs = circuits(arr)
    assert len(circs) == 1
    c = circs[0]
    assert c.indices == (1, 2, 3)
    assert c.coefficients == (1, -1, -1)  # x - y - (x - y) = 0


def test_circuits_x2_contains_expected_relation():
    arr = ziegler_arrangement()
    circs = circuits(arr)
    match = [c for c in circs if c.indices == (1, 4, 5)]
    assert len(match) == 1
    # normalized form of 2*a1 - a4 - a5 = 0
    assert match[0].coefficients == (1, Fraction(-1, 2), Fraction(-1, 2))


def test_circuit_relations_hold_and_are_minimal():
    rng = random.Random(5)
    arrs = [ziegler_arrangement()] + [
        random_essential_arrangement(rng, 3, 6) for _ in range(3)
    ]
    for arr in arrs:
        for c in circuits(arr):
            total = [Fraction(0)] * arr.ell
            for i, b in zip(c.indices, c.coefficients):
                for t in range(arr.ell):
                    total[t] += b * arr.forms[i - 1].coeffs[t]
            assert all(v == 0 for v in total)
            assert c.coefficients[0] == 1
            size = len(c.indices)
            for drop in range(size):
                sub = [c.indices[t] for t in range(size) if t != drop]
                assert subset_rank(arr, sub) == size - 1


# -- lattice bijections ------------------------------------------------------------------


def test_bijection_identity():
    arr = ziegler_arrangement()
    assert verify_lattice_bijection(arr, arr, tuple(range(1, 10)))


def test_bijection_detects_different_matroids():
    # every triple of the first arrangement is independent; the second has a
    # dependent triple, so no bijection can match
    a = Arrangement(
        3,
        (
            LinearForm((1, 0, 0)),
            LinearForm((0, 1, 0)),
            LinearForm((0, 0, 1)),
            LinearForm((1, 1, 1)),
        ),
    )
    b = Arrangement(
        3,
        (
            LinearForm((1, 0, 0)),
            LinearForm((0, 1, 0)),
            LinearForm((0, 0, 1)),
            LinearForm((1, 1, 0)),
        ),
    )
    for perm in permutations(range(1, 5)):
        assert not verify_lattice_bijection(a, b, perm)


def test_bijection_rescaled_copy():
    arr = ziegler_arrangement()
    doubled = Arrangement(
        3, tuple(LinearForm(tuple(2 * c for c in f.coeffs)) for f in arr.forms)
    )
    assert verify_lattice_bijection(arr, doubled, tuple(range(1, 10)))


def test_bijection_size_mismatch_rejected():
    a = boolean_arrangement(2)
    b = boolean_arrangement(3)
    with pytest.raises(ValueError):
        verify_lattice_bijection(a, b, (1, 2))
    with pytest.raises(ValueError):
        verify_lattice_bijection(a, a, (1, 1))
