"""Combinatorial constraint structure of a logarithmic derivation.

Write the vector field of theta as a sum over its distinct monomials,
theta-bar = sum_k m_k * v_k with v_k a rational vector.  The *contact value*
c_{k,j} = alpha_j(v_k) records how monomial k meets hyperplane j; the M x n
table of these values carries linear relations of three kinds:

* interior constraints (one hyperplane): reduce each m_k modulo alpha_i and
  group by the reduced monomial; each group sums to zero because alpha_i
  divides theta(alpha_i);
* exterior constraints (across hyperplanes): every circuit relation
  sum_j b_j * alpha_j = 0 induces sum_j b_j * c_{k,j} = 0 for each k;
* hidden constraints: when the associated vector field of theta (the tuple of
  quotients at an independent set of forms) vanishes at a point of the
  complement, the evaluations m_k(c) give one extra relation.

All rows are exact: applying a row to the contact table of its source
derivation yields zero with no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import linalg
from .arrangement import (
    Arrangement,
    Circuit,
    circuits,
    point_in_complement,
    subset_rank,
    verify_lattice_bijection,
)
from .derivations import Derivation, apply_derivation, k_vector
from .poly import Exponent, Polynomial, grlex_key, reduce_mod_linear


@dataclass(frozen=True)
class MonomialDecomposition:
    """theta-bar = sum_k m_k * v_k over the distinct monomials of the coords.

    Monomials are listed in descending graded-lex order; each v_k is nonzero.
    """

    nvars: int
    monomials: tuple[Exponent, ...]
    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def count(self) -> int:
        return len(self.monomials)


def monomial_decomposition(theta: Derivation) -> MonomialDecomposition:
    support: set[Exponent] = set()
    for p in theta.coords:
        support.update(p.terms)
    monos = sorted(support, key=grlex_key, reverse=True)
    vectors = tuple(
        tuple(p.terms.get(m, Fraction(0)) for p in theta.coords) for m in monos
    )
    return MonomialDecomposition(nvars=theta.nvars, monomials=tuple(monos), vectors=vectors)


def reassemble(decomp: MonomialDecomposition) -> Derivation:
    """Inverse of monomial_decomposition."""
    coords = []
    for t in range(decomp.nvars):
        terms = {
            m: decomp.vectors[k][t]
            for k, m in enumerate(decomp.monomials)
            if decomp.vectors[k][t]
        }
        coords.append(Polynomial(decomp.nvars, terms))
    return Derivation(tuple(coords))


@dataclass(frozen=True)
class ContactTable:
    """values[k-1][j-1] = alpha_j(v_k), for k in 1..M and j in 1..n."""

    values: tuple[tuple[Fraction, ...], ...]

    @property
    def m_count(self) -> int:
        return len(self.values)

    @property
    def n_count(self) -> int:
        return len(self.values[0]) if self.values else 0

    def value(self, k: int, j: int) -> Fraction:
        return self.values[k - 1][j - 1]


def contact_table(arr: Arrangement, decomp: MonomialDecomposition) -> ContactTable:
    if decomp.nvars != arr.ell:
        raise ValueError("decomposition and arrangement dimensions differ")
    values = tuple(
        tuple(f(v) for f in arr.forms) for v in decomp.vectors
    )
    return ContactTable(values=values)


@dataclass(frozen=True)
class ConstraintRow:
    """One linear relation among contact-table cells.

    ``coefficients`` maps cells (k, j), both 1-based, to rational weights;
    only nonzero weights are stored, in ascending (k, j) order.
    """

    kind: str  # "interior" | "exterior" | "hidden"
    detail: tuple
    coefficients: tuple[tuple[tuple[int, int], Fraction], ...]

    def evaluate(self, table: ContactTable) -> Fraction:
        return sum(
            (b * table.value(k, j) for (k, j), b in self.coefficients), Fraction(0)
        )


def _interior_rows_for(
    forms: Sequence, decomp: MonomialDecomposition, i: int
) -> list[ConstraintRow]:
    """Interior rows for 1-based hyperplane i of the given form list."""
    form = forms[i - 1]
    pivot = next(t for t, c in enumerate(form.coeffs) if c)
    nvars = decomp.nvars
    reduced = [
        reduce_mod_linear(Polynomial.monomial(nvars, m), form.coeffs, pivot)
        for m in decomp.monomials
    ]
    seen: set[Exponent] = set()
    for r in reduced:
        seen.update(r.terms)
    rows = []
    for nu in sorted(seen, key=grlex_key, reverse=True):
        coeffs = tuple(
            ((k + 1, i), r.terms[nu])
            for k, r in enumerate(reduced)
            if nu in r.terms
        )
        rows.append(ConstraintRow(kind="interior", detail=(i, nu), coefficients=coeffs))
    return rows


def interior_constraints(arr: Arrangement, theta: Derivation, i: int) -> list[ConstraintRow]:
    """Rows within column i: reduce each monomial of theta modulo alpha_i and
    group by the surviving monomial.  Every row annihilates the contact table
    because alpha_i divides theta(alpha_i)."""
    if not 1 <= i <= arr.n:
        raise ValueError(f"hyperplane index {i} out of range 1..{arr.n}")
    k_vector(arr, theta)  # membership is a precondition; raises otherwise
    decomp = monomial_decomposition(theta)
    return _interior_rows_for(arr.forms, decomp, i)


def exterior_constraints(arr: Arrangement, m_count: int) -> list[ConstraintRow]:
    """Rows across columns: one per circuit and per monomial index k.

    The weights depend only on the arrangement; ``m_count`` fixes the range of
    k so the rows can be instantiated as concrete cell relations.
    """
    rows = []
    for circ in circuits(arr):
        for k in range(1, m_count + 1):
            coeffs = tuple(
                ((k, j), b) for j, b in zip(circ.indices, circ.coefficients) if b
            )
            rows.append(
                ConstraintRow(kind="exterior", detail=(circ.indices, k), coefficients=coeffs)
            )
    return rows


@dataclass(frozen=True)
class ConstraintSpace:
    """All interior and exterior rows of a derivation, with the row space
    reduced to echelon form over the M*n contact cells.

    ``generators`` keeps the labelled rows; ``echelon`` is the reduced row
    echelon basis over cells flattened in (k, j) order; ``rank`` its size.
    """

    m_count: int
    n_count: int
    generators: tuple[ConstraintRow, ...]
    echelon: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.echelon)

    def cell_index(self, k: int, j: int) -> int:
        return (k - 1) * self.n_count + (j - 1)


def _row_to_vector(row: ConstraintRow, m_count: int, n_count: int) -> list[Fraction]:
    vec = [Fraction(0)] * (m_count * n_count)
    for (k, j), b in row.coefficients:
        vec[(k - 1) * n_count + (j - 1)] = b
    return vec


def constraint_space(arr: Arrangement, theta: Derivation) -> ConstraintSpace:
    """Assemble every interior row (all hyperplanes) and every exterior row,
    then reduce the span to echelon form for canonical comparison."""
    k_vector(arr, theta)
    decomp = monomial_decomposition(theta)
    gens: list[ConstraintRow] = []
    for i in range(1, arr.n + 1):
        gens.extend(_interior_rows_for(arr.forms, decomp, i))
    gens.extend(exterior_constraints(arr, decomp.count))
    vectors = [_row_to_vector(r, decomp.count, arr.n) for r in gens]
    echelon = linalg.reduced_row_echelon(vectors, decomp.count * arr.n)
    return ConstraintSpace(
        m_count=decomp.count,
        n_count=arr.n,
        generators=tuple(gens),
        echelon=tuple(tuple(r) for r in echelon),
    )


# -- associated vector fields and critical points ------------------------------


@dataclass(frozen=True)
class AssociatedField:
    """The quotients (k_{i_1}, ..., k_{i_ell}) at an independent set of forms."""

    basis_indices: tuple[int, ...]  # 1-based
    q: tuple[Polynomial, ...]


def associated_field(
    arr: Arrangement, theta: Derivation, basis_indices: Sequence[int]
) -> AssociatedField:
    idx = tuple(basis_indices)
    if len(idx) != arr.ell or len(set(idx)) != arr.ell:
        raise ValueError(f"need {arr.ell} distinct form indices")
    if subset_rank(arr, idx) != arr.ell:
        raise ValueError("chosen forms are linearly dependent")
    kv = k_vector(arr, theta)
    return AssociatedField(
        basis_indices=idx, q=tuple(kv.entries[i - 1] for i in idx)
    )


@dataclass(frozen=True)
class CriticalPointCheck:
    is_zero: bool
    in_complement: bool


def verify_critical_point(
    arr: Arrangement, field: AssociatedField, point: Sequence[Fraction | int]
) -> CriticalPointCheck:
    """Exact check: do all quotients vanish at the point, and does the point
    avoid every hyperplane?"""
    if len(point) != arr.ell:
        raise ValueError("point dimension mismatch")
    pt = [Fraction(v) for v in point]
    return CriticalPointCheck(
        is_zero=all(q.eval(pt) == 0 for q in field.q),
        in_complement=point_in_complement(arr, pt),
    )


@dataclass(frozen=True)
class CriticalSearchResult:
    """Zeros of the field found in the complement by a bounded rational scan.

    The scan is not exhaustive over the complement: an empty list is evidence,
    never proof, of the absence of critical points.
    """

    points: tuple[tuple[Fraction, ...], ...]
    height: int
    mode: str  # "projective" | "affine"
    complete: bool = False


def _fraction_values(height: int) -> list[Fraction]:
    vals = {Fraction(0)}
    for den in range(1, height + 1):
        for num in range(1, height + 1):
            if gcd(num, den) == 1:
                vals.add(Fraction(num, den))
                vals.add(Fraction(-num, den))
    return sorted(vals)


def search_critical_points(
    arr: Arrangement, field: AssociatedField, height: int
) -> CriticalSearchResult:
    """Scan rational points of bounded height for complement zeros of the field.

    When every quotient is homogeneous the zero set is a union of rays, so the
    scan normalizes the first nonzero coordinate to 1 (one chart per position);
    otherwise it scans the affine grid of fractions p/q with |p|, q <= height.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    ell = arr.ell
    homogeneous = all(q.is_homogeneous() for q in field.q)
    found: list[tuple[Fraction, ...]] = []

    def probe(pt: tuple[Fraction, ...]) -> None:
        if all(q.eval(pt) == 0 for q in field.q) and point_in_complement(arr, pt):
            found.append(pt)

    values = _fraction_values(height)
    if homogeneous:
        for chart in range(ell):
            tail = ell - chart - 1

            def rec(partial: tuple[Fraction, ...]) -> None:
                if len(partial) == tail:
                    probe(
                        (Fraction(0),) * chart + (Fraction(1),) + partial
                    )
                    return
                for v in values:
                    rec(partial + (v,))

            rec(())
        mode = "projective"
    else:
        seen: set[tuple[Fraction, ...]] = set()
        for den in range(1, height + 1):

            def rec_aff(partial: tuple[Fraction, ...]) -> None:
                if len(partial) == ell:
                    if any(partial) and partial not in seen:
                        seen.add(partial)
                        probe(partial)
                    return
                for num in range(-height, height + 1):
                    rec_aff(partial + (Fraction(num, den),))

            rec_aff(())
        mode = "affine"
        found.sort()
    return CriticalSearchResult(
        points=tuple(found), height=height, mode=mode, complete=False
    )


def hidden_constraint(
    arr: Arrangement,
    theta: Derivation,
    point: Sequence[Fraction | int],
    basis_indices: Sequence[int],
) -> ConstraintRow:
    """The extra relation from a complement critical point of the associated
    field: weight m_k(c) on cell (k, t) for each chosen form t.

    The point is re-verified; a point that is not a complement zero of the
    field is rejected.
    """
    field = associated_field(arr, theta, basis_indices)
    check = verify_critical_point(arr, field, point)
    if not check.is_zero:
        raise ValueError("rejected: the associated field does not vanish at the point")
    if not check.in_complement:
        raise ValueError("rejected: the point lies on a hyperplane")
    decomp = monomial_decomposition(theta)
    pt = [Fraction(v) for v in point]
    coeffs = []
    for k, m in enumerate(decomp.monomials, start=1):
        value = Polynomial.monomial(arr.ell, m).eval(pt)
        if value:
            for t in field.basis_indices:
                coeffs.append(((k, t), value))
    coeffs.sort(key=lambda item: item[0])
    return ConstraintRow(
        kind="hidden",
        detail=(tuple(pt), field.basis_indices),
        coefficients=tuple(coeffs),
    )


# -- combinatorial transport ---------------------------------------------------


@dataclass(frozen=True)
class TransportResult:
    """Outcome of re-solving a derivation's support over another arrangement.

    ``solution_dim`` is the dimension of the space of derivations with the
    same monomial support that are logarithmic for the target; ``witness`` is
    a deterministic member (the exact projection of the source coefficients
    onto the solution space when nonzero, else the first kernel vector),
    normalized so its first nonzero coefficient is 1.
    ``witness_consistent`` reports whether the witness's contact table
    satisfies every transported interior and exterior row.
    """

    solution_dim: int
    witness: Derivation | None
    witness_consistent: bool | None


def _solve_gram(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction]:
    """Solve (B^T B) w = B^T v exactly; columns are linearly independent."""
    dim = len(columns)
    gram = [
        [sum((a * b for a, b in zip(columns[r], columns[c])), Fraction(0)) for c in range(dim)]
        for r in range(dim)
    ]
    rhs = [sum((a * b for a, b in zip(col, target)), Fraction(0)) for col in columns]
    aug = [row + [rhs[r]] for r, row in enumerate(gram)]
    for c in range(dim):
        p = next(i for i in range(c, dim) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for i in range(dim):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [aug[r][dim] for r in range(dim)]


def transport_derivation(
    arr: Arrangement, target: Arrangement, perm: Sequence[int], theta: Derivation
) -> TransportResult:
    """Solve for a derivation over ``target`` with theta's monomial support.

    Requires ``perm`` to be a verified lattice bijection and theta to be
    logarithmic for ``arr``.  Unknowns are one coefficient per (coordinate,
    monomial) cell of theta's support; the conditions are exact divisibility
    of the candidate's image by every target form.
    """
    if not verify_lattice_bijection(arr, target, perm):
        raise ValueError("perm is not a lattice bijection between the arrangements")
    k_vector(arr, theta)
    decomp = monomial_decomposition(theta)
    ell = arr.ell
    monos = list(decomp.monomials)
    m_count = len(monos)
    ncols = ell * m_count
    rows: list[list[Fraction]] = []
    for form in target.forms:
        pivot = next(t for t, c in enumerate(form.coeffs) if c)
        reduced = [
            reduce_mod_linear(Polynomial.monomial(ell, m), form.coeffs, pivot)
            for m in monos
        ]
        seen: set[Exponent] = set()
        for r in reduced:
            seen.update(r.terms)
        for nu in sorted(seen, key=grlex_key, reverse=True):
            row = [Fraction(0)] * ncols
            for mi, r in enumerate(reduced):
                c = r.terms.get(nu)
                if not c:
                    continue
                for t, a in enumerate(form.coeffs):
                    if a:
                        row[t * m_count + mi] = a * c
            rows.append(row)
    kernel = linalg.kernel_basis(rows, ncols)
    if not kernel:
        return TransportResult(solution_dim=0, witness=None, witness_consistent=None)
    source = [Fraction(0)] * ncols
    for k in range(m_count):
        for t in range(ell):
            source[t * m_count + k] = decomp.vectors[k][t]
    weights = _solve_gram(kernel, source)
    witness_vec = [
        sum((w * col[idx] for w, col in zip(weights, kernel)), Fraction(0))
        for idx in range(ncols)
    ]
    if not any(witness_vec):
        witness_vec = kernel[0]
    lead = next(v for v in witness_vec if v)
    witness_vec = [v / lead for v in witness_vec]
    coords = []
    for t in range(ell):
        terms = {
            monos[k]: witness_vec[t * m_count + k]
            for k in range(m_count)
            if witness_vec[t * m_count + k]
        }
        coords.append(Polynomial(ell, terms))
    witness = Derivation(tuple(coords))

    # transported rows: interior rows from theta's monomials over the target
    # forms, plus the target's own circuit rows
    table_values = tuple(
        tuple(
            f(tuple(witness_vec[t * m_count + k] for t in range(ell)))
            for f in target.forms
        )
        for k in range(m_count)
    )
    table = ContactTable(values=table_values)
    consistent = True
    for i in range(1, target.n + 1):
        for row in _interior_rows_for(target.forms, decomp, i):
            if row.evaluate(table) != 0:
                consistent = False
    for row in exterior_constraints(target, m_count):
        if row.evaluate(table) != 0:
            consistent = False
    return TransportResult(
        solution_dim=len(kernel), witness=witness, witness_consistent=consistent
    )
