"""The canonical equation system of an arrangement and its generator sets.

For an arrangement in canonical form (first ell forms are the coordinates
x1..x_ell), a derivation is determined by the first ell quotients
k_1, ..., k_ell, and those quotients satisfy one equation per remaining form:

    k_j * alpha_j = sum_i k_i * (a_ij * x_i),      j = ell+1 .. n,

where a_ij is the coefficient of x_i in alpha_j.  A tuple (k_1, ..., k_ell)
"solves the j-th equation" when the right-hand side is exactly divisible by
alpha_j; the quotient is the induced k_j.

Each equation carries a canonical generating set: the all-ones tuple e (with
k_j = 1), the unit tuple e_r for every variable absent from alpha_j, and one
Koszul-style member per pair of present variables (both with k_j = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, is_canonical
from .derivations import Derivation, KTuple, apply_derivation, euler_derivation, k_vector
from .poly import Polynomial


class NonCanonicalError(ValueError):
    """The arrangement is not in canonical form."""


@dataclass(frozen=True)
class SyzygySystem:
    """Rewrite data of a canonical arrangement: for each j in ell+1..n the
    coefficients (a_1j, ..., a_ellj) with alpha_j = sum_i a_ij * x_i."""

    ell: int
    n: int
    rewrite_coeffs: tuple[tuple[Fraction, ...], ...]

    def coeffs_for(self, j: int) -> tuple[Fraction, ...]:
        if not self.ell + 1 <= j <= self.n:
            raise ValueError(f"equation index {j} out of range {self.ell + 1}..{self.n}")
        return self.rewrite_coeffs[j - self.ell - 1]

    def form_polynomial(self, j: int) -> Polynomial:
        return Polynomial.linear(self.coeffs_for(j))


@dataclass(frozen=True)
class SolutionTuple:
    """A first-ell tuple (k_1..k_ell), optionally completed to all n entries."""

    entries: tuple[Polynomial, ...]
    completed: tuple[Polynomial, ...] | None = None


@dataclass(frozen=True)
class GeneratorSet:
    """The canonical generators of the j-th equation.

    ``members()`` yields (label, tuple) pairs; the induced k_j is 1 for "e"
    and 0 for every other member.
    """

    j: int
    e: tuple[Polynomial, ...]
    unit_members: tuple[tuple[int, tuple[Polynomial, ...]], ...]
    koszul_members: tuple[tuple[tuple[int, int], tuple[Polynomial, ...]], ...]

    def members(self) -> list[tuple[str, tuple[Polynomial, ...]]]:
        out: list[tuple[str, tuple[Polynomial, ...]]] = [("e", self.e)]
        for r, member in self.unit_members:
            out.append((f"e_{r}", member))
        for (s, t), member in self.koszul_members:
            out.append((f"koszul_{s}_{t}", member))
        return out


def build_system(arr: Arrangement) -> SyzygySystem:
    """Extract the rewrite coefficients from a canonical arrangement."""
    if not is_canonical(arr):
        raise NonCanonicalError(
            "arrangement is not canonical: the first ell forms must be x1..x_ell"
        )
    rewrite = tuple(tuple(arr.forms[j].coeffs) for j in range(arr.ell, arr.n))
    return SyzygySystem(ell=arr.ell, n=arr.n, rewrite_coeffs=rewrite)


def canonical_generators(sys: SyzygySystem, j: int) -> GeneratorSet:
    """The generating set of the j-th equation: e, the unit tuples at absent
    variables, and one Koszul member per pair of present variables."""
    a = sys.coeffs_for(j)
    ell = sys.ell
    one = Polynomial.one(ell)
    zero = Polynomial.zero(ell)
    e = tuple(one for _ in range(ell))
    units = []
    for r in range(ell):
        if a[r] == 0:
            member = tuple(one if t == r else zero for t in range(ell))
            units.append((r + 1, member))
    koszul = []
    present = [r for r in range(ell) if a[r] != 0]
    for si in range(len(present)):
        for ti in range(si + 1, len(present)):
            s, t = present[si], present[ti]
            member = list(zero for _ in range(ell))
            member[s] = Polynomial.variable(ell, t) * a[t]
            member[t] = Polynomial.variable(ell, s) * (-a[s])
            koszul.append(((s + 1, t + 1), tuple(member)))
    return GeneratorSet(j=j, e=e, unit_members=tuple(units), koszul_members=tuple(koszul))


@dataclass(frozen=True)
class SolutionCheck:
    ok: bool
    k_j: Polynomial | None


def verify_solution(
    sys: SyzygySystem, sol: Sequence[Polynomial] | SolutionTuple, j: int
) -> SolutionCheck:
    """Does the tuple solve the j-th equation?  On success returns the induced
    quotient k_j; failure is a value, not an exception."""
    entries = sol.entries if isinstance(sol, SolutionTuple) else tuple(sol)
    if len(entries) != sys.ell:
        raise ValueError(f"solution must have {sys.ell} entries")
    a = sys.coeffs_for(j)
    rhs = Polynomial.zero(sys.ell)
    for i in range(sys.ell):
        if a[i]:
            rhs = rhs + entries[i] * Polynomial.variable(sys.ell, i) * a[i]
    quotient = rhs.try_div(sys.form_polynomial(j))
    if quotient is None:
        return SolutionCheck(ok=False, k_j=None)
    return SolutionCheck(ok=True, k_j=quotient)


def complete_solution(
    sys: SyzygySystem, sol: Sequence[Polynomial] | SolutionTuple
) -> SolutionTuple:
    """Extend a first-ell tuple to all n entries; the extension is unique
    because each missing entry is an exact quotient.  Raises ValueError naming
    the first failing equation."""
    entries = sol.entries if isinstance(sol, SolutionTuple) else tuple(sol)
    completed = list(entries)
    for j in range(sys.ell + 1, sys.n + 1):
        check = verify_solution(sys, entries, j)
        if not check.ok:
            raise ValueError(f"tuple fails equation j={j}: right side not divisible")
        completed.append(check.k_j)
    return SolutionTuple(entries=tuple(entries), completed=tuple(completed))


def derivation_from_k(
    sys: SyzygySystem, sol: Sequence[Polynomial] | SolutionTuple
) -> Derivation:
    """The derivation with coordinates (k_1*x_1, ..., k_ell*x_ell).

    The tuple is verified against every equation first; its k-vector then
    reproduces the completed tuple exactly.
    """
    completed = complete_solution(sys, sol)
    coords = tuple(
        completed.entries[i] * Polynomial.variable(sys.ell, i) for i in range(sys.ell)
    )
    return Derivation(coords)


def split_wrt_hyperplane(
    arr: Arrangement, theta: Derivation, i: int
) -> tuple[Derivation, Polynomial]:
    """Split theta against hyperplane i (1-based) as tangential + k_i * Euler.

    The tangential part annihilates alpha_i exactly; the scale is the i-th
    quotient of the k-vector.
    """
    if not 1 <= i <= arr.n:
        raise ValueError(f"hyperplane index {i} out of range 1..{arr.n}")
    kv = k_vector(arr, theta)
    scale = kv.entries[i - 1]
    tangential = theta - scale * euler_derivation(arr.ell)
    return tangential, scale
