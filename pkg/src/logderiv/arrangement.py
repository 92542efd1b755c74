"""Central hyperplane arrangements given by rational linear forms.

An arrangement is a list of n nonzero linear forms in ell variables, no two
proportional (simple) and jointly of full rank (essential).  Hyperplane
indices in every public surface are 1-based, matching the usual alpha_1..alpha_n
labelling; coordinates inside tuples are 0-based.

The ``.arr`` text format: '#' starts a comment; the first data line is
"ell n"; then n lines, each with ell rationals (integer or p/q), the
coefficients of one form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .poly import Polynomial


class ArrangementError(ValueError):
    """Base class for arrangement construction and parse failures."""


class FormatError(ArrangementError):
    """Malformed .arr text."""


class DuplicateHyperplaneError(ArrangementError):
    """Two forms define the same hyperplane (they are proportional)."""


class NonEssentialError(ArrangementError):
    """The normal vectors do not span the ambient space."""


@dataclass(frozen=True)
class LinearForm:
    """A nonzero linear form sum(coeffs[i] * x_{i+1})."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if all(c == 0 for c in self.coeffs):
            raise ArrangementError("a linear form must be nonzero")

    def __call__(self, point: Sequence[Fraction | int]) -> Fraction:
        if len(point) != len(self.coeffs):
            raise ValueError("point dimension mismatch")
        return sum((c * Fraction(v) for c, v in zip(self.coeffs, point)), Fraction(0))

    def polynomial(self) -> Polynomial:
        return Polynomial.linear(self.coeffs)

    def is_parallel(self, other: "LinearForm") -> bool:
        """True when the two forms are proportional (same hyperplane)."""
        if len(self.coeffs) != len(other.coeffs):
            return False
        k = next(i for i, c in enumerate(self.coeffs) if c)
        if other.coeffs[k] == 0:
            return False
        ratio = other.coeffs[k] / self.coeffs[k]
        return all(b == ratio * a for a, b in zip(self.coeffs, other.coeffs))

    def render(self) -> str:
        return self.polynomial().render()


@dataclass(frozen=True)
class Arrangement:
    """A simple essential central arrangement of n hyperplanes in ell variables."""

    ell: int
    forms: tuple[LinearForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if self.ell < 1:
            raise ArrangementError("ambient dimension must be positive")
        for f in self.forms:
            if len(f.coeffs) != self.ell:
                raise ArrangementError("form length does not match the ambient dimension")
        for i, j in combinations(range(len(self.forms)), 2):
            if self.forms[i].is_parallel(self.forms[j]):
                raise DuplicateHyperplaneError(
                    f"forms {i + 1} and {j + 1} define the same hyperplane"
                )
        r = linalg.rank([f.coeffs for f in self.forms], self.ell)
        if r < self.ell:
            raise NonEssentialError(
                f"arrangement is not essential: normals span rank {r} < {self.ell}"
            )

    @property
    def n(self) -> int:
        return len(self.forms)

    def coefficient_rows(self) -> list[list[Fraction]]:
        return [list(f.coeffs) for f in self.forms]


@dataclass(frozen=True)
class ChangeOfBasis:
    """An invertible coordinate change X = matrix @ x, plus the form reordering
    applied before it.  ``permutation[k]`` is the 1-based original index of the
    form placed at position k+1."""

    matrix: tuple[tuple[Fraction, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]
    permutation: tuple[int, ...]

    def is_identity(self) -> bool:
        n = len(self.matrix)
        ident = all(
            self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )
        return ident and self.permutation == tuple(range(1, len(self.permutation) + 1))


@dataclass(frozen=True)
class Flat:
    """A lattice element: the closed set of hyperplanes through one intersection."""

    rank: int
    hyperplane_indices: tuple[int, ...]  # 1-based, sorted


@dataclass(frozen=True)
class Circuit:
    """A minimal dependent set of forms with its (essentially unique) relation.

    ``sum(coefficients[t] * forms[indices[t]-1]) == 0`` exactly, and the first
    nonzero coefficient is normalized to 1.
    """

    indices: tuple[int, ...]  # 1-based, sorted
    coefficients: tuple[Fraction, ...]


# -- parsing ----------------------------------------------------------------


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _parse_fraction(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"line {lineno}: bad rational {token!r}") from exc


def load_arrangement(text: str) -> Arrangement:
    """Parse .arr text into a validated Arrangement."""
    lines = _data_lines(text)
    if not lines:
        raise FormatError("no data: expected a header line 'ell n'")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"line {lineno}: header must be 'ell n', got {header!r}")
    try:
        ell, n = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise FormatError(f"line {lineno}: header must hold two integers") from exc
    if ell < 1 or n < 1:
        raise FormatError(f"line {lineno}: ell and n must be positive")
    rows = lines[1:]
    if len(rows) != n:
        raise FormatError(f"expected {n} coefficient lines, found {len(rows)}")
    forms = []
    for lineno, line in rows:
        tokens = line.split()
        if len(tokens) != ell:
            raise FormatError(
                f"line {lineno}: expected {ell} coefficients, found {len(tokens)}"
            )
        coeffs = tuple(_parse_fraction(t, lineno) for t in tokens)
        if all(c == 0 for c in coeffs):
            raise FormatError(f"line {lineno}: zero row does not define a hyperplane")
        forms.append(LinearForm(coeffs))
    return Arrangement(ell, tuple(forms))


def render_arrangement(arr: Arrangement) -> str:
    """The .arr text for an arrangement (inverse of load_arrangement)."""
    lines = [f"{arr.ell} {arr.n}"]
    for f in arr.forms:
        lines.append(" ".join(str(c) for c in f.coeffs))
    return "\n".join(lines) + "\n"


# -- basic operations ---------------------------------------------------------


def defining_polynomial(arr: Arrangement) -> Polynomial:
    """The degree-n product of the forms."""
    q = Polynomial.one(arr.ell)
    for f in arr.forms:
        q = q * f.polynomial()
    return q


def point_in_complement(arr: Arrangement, point: Sequence[Fraction | int]) -> bool:
    """True iff the point lies on none of the hyperplanes."""
    if len(point) != arr.ell:
        raise ValueError("point dimension mismatch")
    return all(f(point) != 0 for f in arr.forms)


def subset_rank(arr: Arrangement, indices: Iterable[int]) -> int:
    """Rank of the normal vectors of the given 1-based hyperplane indices."""
    idx = sorted(set(indices))
    for i in idx:
        if not 1 <= i <= arr.n:
            raise ValueError(f"hyperplane index {i} out of range 1..{arr.n}")
    if not idx:
        return 0
    return linalg.rank([arr.forms[i - 1].coeffs for i in idx], arr.ell)


# -- canonical form -----------------------------------------------------------


def to_canonical(arr: Arrangement) -> tuple[Arrangement, ChangeOfBasis]:
    """Change coordinates so the first ell forms become x1..x_ell exactly.

    The pivot forms are the lexicographically first independent ell-subset.
    The remaining forms are rewritten in the new coordinates, unscaled.  The
    subset-rank structure on (permuted) indices is unchanged.
    """
    space = linalg.IntRowSpace(arr.ell)
    chosen: list[int] = []
    for i, f in enumerate(arr.forms):
        if space.add(f.coeffs):
            chosen.append(i)
            if len(chosen) == arr.ell:
                break
    # essentiality guarantees ell independent forms exist
    order = chosen + [i for i in range(arr.n) if i not in chosen]
    matrix = [list(arr.forms[i].coeffs) for i in chosen]
    inverse = linalg.invert(matrix)
    new_forms = []
    for i in order:
        a = arr.forms[i].coeffs
        new_coeffs = tuple(
            sum((a[r] * inverse[r][c] for r in range(arr.ell)), Fraction(0))
            for c in range(arr.ell)
        )
        new_forms.append(LinearForm(new_coeffs))
    canonical = Arrangement(arr.ell, tuple(new_forms))
    change = ChangeOfBasis(
        matrix=tuple(tuple(row) for row in matrix),
        inverse=tuple(tuple(row) for row in inverse),
        permutation=tuple(i + 1 for i in order),
    )
    return canonical, change


def is_canonical(arr: Arrangement) -> bool:
    """True when the first ell forms are exactly the coordinate forms."""
    for i in range(min(arr.ell, arr.n)):
        coeffs = arr.forms[i].coeffs
        if any(c != (1 if j == i else 0) for j, c in enumerate(coeffs)):
            return False
    return arr.n >= arr.ell


# -- lattice and circuits -----------------------------------------------------


def _closure(arr: Arrangement, idx0: frozenset[int]) -> frozenset[int]:
    base_rows = [arr.forms[i].coeffs for i in sorted(idx0)]
    r = linalg.rank(base_rows, arr.ell)
    closed = set(idx0)
    for j in range(arr.n):
        if j in closed:
            continue
        if linalg.rank(base_rows + [arr.forms[j].coeffs], arr.ell) == r:
            closed.add(j)
    return frozenset(closed)


def intersection_lattice(arr: Arrangement) -> list[Flat]:
    """All flats of rank 1..ell, each as its closed index set.

    Deterministic order: by (rank, index tuple).
    """
    by_rank: list[set[frozenset[int]]] = [set() for _ in range(arr.ell + 1)]
    for i in range(arr.n):
        by_rank[1].add(_closure(arr, frozenset([i])))
    for r in range(1, arr.ell):
        for flat in by_rank[r]:
            for j in range(arr.n):
                if j not in flat:
                    by_rank[r + 1].add(_closure(arr, flat | {j}))
    flats = []
    for r in range(1, arr.ell + 1):
        for flat in sorted(by_rank[r], key=lambda s: tuple(sorted(s))):
            flats.append(Flat(rank=r, hyperplane_indices=tuple(i + 1 for i in sorted(flat))))
    return flats


def circuits(arr: Arrangement) -> list[Circuit]:
    """All minimal dependent sets of size <= ell+1, with exact relations.

    Each relation is normalized so its first nonzero coefficient is 1.
    Deterministic order: by (size, index tuple).
    """
    out: list[Circuit] = []
    for size in range(2, arr.ell + 2):
        for combo in combinations(range(arr.n), size):
            rows = [arr.forms[i].coeffs for i in combo]
            if linalg.rank(rows, arr.ell) != size - 1:
                continue
            if any(
                linalg.rank([rows[t] for t in range(size) if t != drop], arr.ell)
                != size - 1
                for drop in range(size)
            ):
                continue
            # columns = normal vectors; the 1-dimensional kernel is the relation
            cols = [[rows[t][d] for t in range(size)] for d in range(arr.ell)]
            kern = linalg.kernel_basis(cols, size)
            assert len(kern) == 1
            vec = kern[0]
            lead = next(v for v in vec if v)
            coeffs = tuple(v / lead for v in vec)
            out.append(Circuit(indices=tuple(i + 1 for i in combo), coefficients=coeffs))
    return out


def verify_lattice_bijection(
    a: Arrangement, b: Arrangement, perm: Sequence[int]
) -> bool:
    """Check that ``perm`` (1-based images of 1..n) preserves all subset ranks
    up to size ell, i.e. is an isomorphism of the underlying matroids."""
    if a.ell != b.ell or a.n != b.n:
        raise ValueError("arrangements must agree in dimension and size")
    if sorted(perm) != list(range(1, a.n + 1)):
        raise ValueError("perm must be a bijection of 1..n")
    for size in range(1, a.ell + 1):
        for combo in combinations(range(1, a.n + 1), size):
            image = [perm[i - 1] for i in combo]
            if subset_rank(a, combo) != subset_rank(b, image):
                return False
    return True
