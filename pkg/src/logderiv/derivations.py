"""Logarithmic derivations of an arrangement.

A derivation is stored by its coefficient vector field (p_1, ..., p_ell),
meaning theta = sum p_i * d/dx_i.  It is *logarithmic* for an arrangement when
every form divides its own image, i.e. theta(alpha_i) = k_i * alpha_i with
polynomial quotients k_i.  The tuple (k_1, ..., k_n) of those quotients is the
central invariant computed here; membership testing is exact division, which
produces the witness quotient directly.

Also provided: the graded pieces of the module (exact bases, by linear
algebra over the monomial coefficients), Saito's determinant criterion for
freeness, basis shifts by multiples of the Euler derivation, and a greedy
degree-ascending search for a free basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from . import linalg
from .arrangement import Arrangement, defining_polynomial
from .poly import Exponent, Polynomial, grlex_key, monomials_of_degree, reduce_mod_linear


class NotLogarithmicError(ValueError):
    """Raised when form ``index`` (1-based) does not divide its image."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(
            f"NotLogarithmic({index}): form {index} does not divide the "
            f"derivation applied to it"
        )


@dataclass(frozen=True)
class Derivation:
    """Coefficient vector field (p_1, ..., p_ell) of a derivation."""

    coords: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise ValueError("a derivation needs at least one coordinate")
        nv = self.coords[0].nvars
        if len(self.coords) != nv or any(p.nvars != nv for p in self.coords):
            raise ValueError("need exactly one coordinate polynomial per variable")

    @property
    def nvars(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.coords)

    def homogeneous_degree(self) -> int | None:
        """Common degree of the nonzero coordinates, or None if mixed/zero."""
        degrees = {p.degree() for p in self.coords if not p.is_zero}
        if len(degrees) != 1:
            return None
        if any(not p.is_homogeneous() for p in self.coords):
            return None
        return degrees.pop()

    def __add__(self, other: "Derivation") -> "Derivation":
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Derivation") -> "Derivation":
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, factor: Polynomial | Fraction | int) -> "Derivation":
        return Derivation(tuple(p * factor for p in self.coords))

    __rmul__ = __mul__

    def render(self) -> str:
        return "(" + ", ".join(p.render() for p in self.coords) + ")"


def zero_derivation(ell: int) -> Derivation:
    return Derivation(tuple(Polynomial.zero(ell) for _ in range(ell)))


def euler_derivation(ell: int) -> Derivation:
    """The derivation with coordinates (x1, ..., x_ell); theta_E(alpha) = alpha
    on every linear form."""
    return Derivation(tuple(Polynomial.variable(ell, i) for i in range(ell)))


def apply_derivation(theta: Derivation, p: Polynomial) -> Polynomial:
    """theta(p) = sum p_i * dp/dx_i, exact."""
    if p.nvars != theta.nvars:
        raise ValueError("variable count mismatch")
    out = Polynomial.zero(p.nvars)
    for i, coord in enumerate(theta.coords):
        if not coord.is_zero:
            out = out + coord * p.partial(i)
    return out


@dataclass(frozen=True)
class KTuple:
    """The quotients (k_1, ..., k_n), k_i = theta(alpha_i)/alpha_i."""

    entries: tuple[Polynomial, ...]


def k_vector(arr: Arrangement, theta: Derivation) -> KTuple:
    """Membership test with witnesses: divide each theta(alpha_i) by alpha_i.

    Raises NotLogarithmicError(i) at the first form that fails to divide.
    The resulting quotients satisfy sum(k_i) = theta(Q)/Q.
    """
    if theta.nvars != arr.ell:
        raise ValueError("derivation and arrangement dimensions differ")
    entries = []
    for i, f in enumerate(arr.forms):
        image = Polynomial.zero(arr.ell)
        for j, a in enumerate(f.coeffs):
            if a:
                image = image + theta.coords[j] * a
        q = image.try_div(f.polynomial())
        if q is None:
            raise NotLogarithmicError(i + 1)
        entries.append(q)
    return KTuple(entries=tuple(entries))


def is_logarithmic(arr: Arrangement, theta: Derivation) -> bool:
    try:
        k_vector(arr, theta)
        return True
    except NotLogarithmicError:
        return False


def load_derivation(text: str, nvars: int | None = None) -> Derivation:
    """Parse .der text: '#' comments, then one coordinate polynomial per line.

    The number of data lines is the variable count; ``nvars`` cross-checks it.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise ValueError("no data: expected one polynomial per line")
    count = len(lines)
    if nvars is not None and count != nvars:
        raise ValueError(f"expected {nvars} coordinate lines, found {count}")
    coords = []
    for lineno, line in lines:
        try:
            coords.append(Polynomial.parse(line, count))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return Derivation(tuple(coords))


def render_derivation(theta: Derivation) -> str:
    """The .der text for a derivation (inverse of load_derivation)."""
    return "\n".join(p.render() for p in theta.coords) + "\n"


# -- graded pieces -------------------------------------------------------------


@dataclass(frozen=True)
class GradedBasis:
    """An exact basis of the degree-d homogeneous logarithmic derivations."""

    degree: int
    members: tuple[Derivation, ...]

    @property
    def dimension(self) -> int:
        return len(self.members)


def _coefficient_vector(theta: Derivation, monos: list[Exponent]) -> list[Fraction]:
    """Coordinates of a homogeneous derivation in the (coordinate, monomial)
    unknown ordering used by graded_component."""
    pos = {m: i for i, m in enumerate(monos)}
    vec = [Fraction(0)] * (theta.nvars * len(monos))
    for t, p in enumerate(theta.coords):
        for e, c in p.terms.items():
            vec[t * len(monos) + pos[e]] = c
    return vec


def graded_component(arr: Arrangement, degree: int) -> GradedBasis:
    """Exact basis of the degree-d slice of the logarithmic derivation module.

    Unknowns are the monomial coefficients of each coordinate (ordered by
    coordinate index, then descending graded-lex); for each form the image of
    the candidate derivation is reduced modulo the form and required to vanish,
    and the kernel of the assembled system is returned as derivations.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    ell = arr.ell
    monos = monomials_of_degree(ell, degree)
    ncols = ell * len(monos)
    rows: list[list[Fraction]] = []
    for f in arr.forms:
        pivot = next(i for i, c in enumerate(f.coeffs) if c)
        reduced = [reduce_mod_linear(Polynomial.monomial(ell, m), f.coeffs, pivot) for m in monos]
        seen: set[Exponent] = set()
        for r in reduced:
            seen.update(r.terms)
        for nu in sorted(seen, key=grlex_key, reverse=True):
            row = [Fraction(0)] * ncols
            for mi, r in enumerate(reduced):
                c = r.terms.get(nu)
                if not c:
                    continue
                for t, a in enumerate(f.coeffs):
                    if a:
                        row[t * len(monos) + mi] = a * c
            rows.append(row)
    kernel = linalg.kernel_basis(rows, ncols)
    members = []
    for vec in kernel:
        coords = []
        for t in range(ell):
            terms = {
                monos[mi]: vec[t * len(monos) + mi]
                for mi in range(len(monos))
                if vec[t * len(monos) + mi]
            }
            coords.append(Polynomial(ell, terms))
        members.append(Derivation(tuple(coords)))
    return GradedBasis(degree=degree, members=tuple(members))


def euler_multiple_dimension(ell: int, degree: int) -> int:
    """Dimension of {p * theta_E : p homogeneous of degree d-1} inside degree d."""
    if degree < 1:
        return 0
    return comb(degree - 1 + ell - 1, ell - 1)


# -- Saito's criterion and basis shifts ---------------------------------------


@dataclass(frozen=True)
class SaitoResult:
    """Outcome of the determinant criterion: det M = scalar * Q when is_basis."""

    scalar: Fraction
    is_basis: bool
    determinant: Polynomial


def saito_check(arr: Arrangement, thetas: Sequence[Derivation]) -> SaitoResult:
    """Determinant criterion: ell logarithmic derivations form a basis of the
    module iff det of their coefficient matrix is a nonzero scalar times Q."""
    thetas = list(thetas)
    if len(thetas) != arr.ell:
        raise ValueError(f"need exactly {arr.ell} derivations")
    for theta in thetas:
        k_vector(arr, theta)
    det = linalg.det_poly_matrix([list(t.coords) for t in thetas])
    if det.is_zero:
        return SaitoResult(Fraction(0), False, det)
    q = defining_polynomial(arr)
    quot = det.try_div(q)
    if quot is not None and quot.degree() == 0:
        return SaitoResult(quot.coeff((0,) * arr.ell), True, det)
    return SaitoResult(Fraction(0), False, det)


def basis_shift(
    thetas: Sequence[Derivation], i: int, p: Polynomial
) -> tuple[Derivation, ...]:
    """Replace member i (1-based, i >= 2) by itself plus p times the Euler
    derivation; member 1 must be the Euler derivation.  A column operation,
    so the Saito determinant (and scalar) is unchanged."""
    thetas = tuple(thetas)
    if not thetas:
        raise ValueError("empty family")
    ell = thetas[0].nvars
    if thetas[0] != euler_derivation(ell):
        raise ValueError("the first member must be the Euler derivation")
    if i < 2:
        raise ValueError("cannot shift the Euler member (i must be >= 2)")
    if i > len(thetas):
        raise ValueError("member index out of range")
    if p.nvars != ell:
        raise ValueError("shift polynomial has wrong variable count")
    shifted = list(thetas)
    shifted[i - 1] = thetas[i - 1] + p * thetas[0]
    return tuple(shifted)


# -- freeness search -----------------------------------------------------------


@dataclass(frozen=True)
class FreenessReport:
    """Result of the greedy degree-ascending generator search."""

    status: str  # "free" | "inconclusive"
    exponents: tuple[int, ...] | None
    basis: tuple[Derivation, ...] | None
    scalar: Fraction | None
    max_degree: int
    diagnostics: tuple[str, ...] = field(default_factory=tuple)


def find_free_basis(arr: Arrangement, max_degree: int = 12) -> FreenessReport:
    """Greedy search: ascend degrees, keep graded members outside the span of
    multiples of the generators already found, stop at ell members or the cap.

    A "free" verdict is certified by saito_check; anything else is reported as
    inconclusive (the search proves nothing negative).
    """
    ell = arr.ell
    chosen: list[tuple[Derivation, int]] = []
    for d in range(max_degree + 1):
        comp = graded_component(arr, d)
        if not comp.members:
            continue
        monos = monomials_of_degree(ell, d)
        span = linalg.IntRowSpace(ell * len(monos))
        for eta, e in chosen:
            for mu in monomials_of_degree(ell, d - e):
                span.add(_coefficient_vector(Polynomial.monomial(ell, mu) * eta, monos))
        for member in comp.members:
            if span.add(_coefficient_vector(member, monos)):
                chosen.append((member, d))
                if len(chosen) == ell:
                    basis = tuple(eta for eta, _ in chosen)
                    result = saito_check(arr, basis)
                    if result.is_basis:
                        return FreenessReport(
                            status="free",
                            exponents=tuple(e for _, e in chosen),
                            basis=basis,
                            scalar=result.scalar,
                            max_degree=max_degree,
                        )
                    return FreenessReport(
                        status="inconclusive",
                        exponents=tuple(e for _, e in chosen),
                        basis=basis,
                        scalar=None,
                        max_degree=max_degree,
                        diagnostics=(
                            "collected ell generators at degrees "
                            f"{tuple(e for _, e in chosen)} but the determinant "
                            "criterion failed; the arrangement is not proven free",
                        ),
                    )
    return FreenessReport(
        status="inconclusive",
        exponents=None,
        basis=None,
        scalar=None,
        max_degree=max_degree,
        diagnostics=(
            f"degree cap {max_degree} reached with {len(chosen)} generator(s); "
            "raise the cap to continue the search",
        ),
    )
