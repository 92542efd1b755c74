"""Sparse multivariate polynomial arithmetic over the rationals.

Everything here is exact: coefficients are `fractions.Fraction`, monomials are
exponent tuples, and no operation ever rounds.  The zero polynomial has an
empty term map.

Term order is graded lexicographic with x1 > x2 > ... > xN (compare total
degree first, then the exponent tuple); every deterministic listing in this
package uses it in descending order.

Text grammar, used by `Polynomial.parse` and `Polynomial.render`:

    poly   := term (('+'|'-') term)*      a leading '-' is allowed
    term   := coeff | coeff '*' mono | mono
    coeff  := integer | integer '/' positive-integer
    mono   := factor ('*' factor)*
    factor := 'x'N | 'x'N'^'E             1 <= N <= nvars, E >= 1

Whitespace is insignificant; a Unicode minus sign is accepted on input.
Rendering is deterministic: descending graded-lex order, ASCII minus, and no
redundant leading '+'.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def grlex_key(exponents: Exponent) -> tuple[int, Exponent]:
    """Sort key realizing graded lexicographic order (ascending)."""
    return (sum(exponents), exponents)


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of the given total degree, descending graded-lex."""
    if nvars < 1:
        raise ValueError("nvars must be positive")
    if degree < 0:
        return []
    out: list[Exponent] = []

    def emit(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            emit(prefix + (e,), remaining - e, slots - 1)

    emit((), degree, nvars)
    return out


_TERM_RE = re.compile(r"[+-]?[^+-]+")
_COEFF_RE = re.compile(r"^(\d+)(?:/(\d+))?$")
_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals.

    Terms map exponent tuples to nonzero Fractions; construction drops zero
    coefficients, so equality of term maps is equality of polynomials.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction | int] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                e = tuple(int(v) for v in e)
                if len(e) != nvars or any(v < 0 for v in e):
                    raise ValueError(f"bad exponent tuple {e!r} for nvars={nvars}")
                clean[e] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars: int, value: Fraction | int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """The variable x{index+1}; ``index`` is 0-based."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exponents: Exponent, coeff: Fraction | int = 1) -> "Polynomial":
        return cls(nvars, {tuple(exponents): Fraction(coeff)})

    @classmethod
    def linear(cls, coeffs: Sequence[Fraction | int]) -> "Polynomial":
        """The linear form sum(coeffs[i] * x{i+1})."""
        nvars = len(coeffs)
        terms: dict[Exponent, Fraction] = {}
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                e = [0] * nvars
                e[i] = 1
                terms[tuple(e)] = c
        return cls(nvars, terms)

    # -- basic queries -----------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """The internal term map; treat as read-only."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exponents: Exponent) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        """True if all terms share one total degree (vacuously true for 0)."""
        degrees = {sum(e) for e in self._terms}
        return len(degrees) <= 1

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading term in graded-lex order; ValueError on the zero polynomial."""
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: "Polynomial | Fraction | int") -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return None

    def __add__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        merged = dict(self._terms)
        for e, c in o._terms.items():
            s = merged.get(e, Fraction(0)) + c
            if s:
                merged[e] = s
            else:
                merged.pop(e, None)
        return Polynomial(self.nvars, merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, {e: c * f for e, c in self._terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = prod.get(e, Fraction(0)) + c1 * c2
                if s:
                    prod[e] = s
                else:
                    prod.pop(e, None)
        return Polynomial(self.nvars, prod)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Polynomial":
        if not isinstance(power, int) or power < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.one(self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    # -- evaluation, calculus, division ------------------------------------

    def eval(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for exp, v in zip(e, vals):
                if exp:
                    term *= v**exp
            total += term
        return total

    def partial(self, index: int) -> "Polynomial":
        """Partial derivative with respect to x{index+1} (0-based index)."""
        if not 0 <= index < self.nvars:
            raise ValueError("variable index out of range")
        terms: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            k = e[index]
            if k:
                ne = list(e)
                ne[index] = k - 1
                terms[tuple(ne)] = c * k
        return Polynomial(self.nvars, terms)

    def try_div(self, divisor: "Polynomial") -> "Polynomial | None":
        """Exact quotient self/divisor, or None when the division is inexact.

        Leading-term reduction by a single divisor decides divisibility in the
        polynomial ring, so a None return certifies non-divisibility.
        """
        if not isinstance(divisor, Polynomial) or divisor.nvars != self.nvars:
            raise ValueError("divisor must be a polynomial in the same variables")
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return Polynomial.zero(self.nvars)
        d_e, d_c = divisor.leading()
        rem = dict(self._terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            r_e = max(rem, key=grlex_key)
            if any(r < d for r, d in zip(r_e, d_e)):
                return None
            m = tuple(r - d for r, d in zip(r_e, d_e))
            c = rem[r_e] / d_c
            quot[m] = c
            for de, dc in divisor._terms.items():
                e = tuple(a + b for a, b in zip(m, de))
                s = rem.get(e, Fraction(0)) - c * dc
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return Polynomial(self.nvars, quot)

    def divides(self, other: "Polynomial") -> bool:
        return other.try_div(self) is not None

    def substitute_linear(self, matrix: Sequence[Sequence[Fraction | int]]) -> "Polynomial":
        """Compose with a linear change of variables: x_i -> sum_j matrix[i][j]*x_j."""
        if len(matrix) != self.nvars or any(len(row) != self.nvars for row in matrix):
            raise ValueError("substitution matrix must be square of size nvars")
        images = [Polynomial.linear([Fraction(v) for v in row]) for row in matrix]
        powers: list[list[Polynomial]] = [[Polynomial.one(self.nvars)] for _ in range(self.nvars)]
        acc = Polynomial.zero(self.nvars)
        for e, c in sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
            term = Polynomial.constant(self.nvars, c)
            for i, k in enumerate(e):
                cache = powers[i]
                while len(cache) <= k:
                    cache.append(cache[-1] * images[i])
                if k:
                    term = term * cache[k]
            acc = acc + term
        return acc

    # -- text --------------------------------------------------------------

    def render(self) -> str:
        """Deterministic text form (descending graded-lex)."""
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for e in sorted(self._terms, key=grlex_key, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.render()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int) -> "Polynomial":
        """Parse the text grammar; raises ValueError on malformed input."""
        s = text.replace("−", "-")
        s = re.sub(r"\s+", "", s)
        if not s:
            raise ValueError("empty polynomial text")
        chunks = _TERM_RE.findall(s)
        if "".join(chunks) != s:
            raise ValueError(f"cannot parse polynomial text {text!r}")
        terms: dict[Exponent, Fraction] = {}
        for chunk in chunks:
            sign = 1
            body = chunk
            if body[0] in "+-":
                sign = -1 if body[0] == "-" else 1
                body = body[1:]
            if not body:
                raise ValueError(f"dangling sign in {text!r}")
            coeff = Fraction(sign)
            exps = [0] * nvars
            for factor in body.split("*"):
                m = _COEFF_RE.match(factor)
                if m:
                    num = int(m.group(1))
                    den = int(m.group(2)) if m.group(2) else 1
                    if den == 0:
                        raise ValueError(f"zero denominator in {text!r}")
                    coeff *= Fraction(num, den)
                    continue
                m = _FACTOR_RE.match(factor)
                if m:
                    n = int(m.group(1))
                    e = int(m.group(2)) if m.group(2) else 1
                    if not 1 <= n <= nvars:
                        raise ValueError(
                            f"variable x{n} out of range 1..{nvars} in {text!r}"
                        )
                    if e < 1:
                        raise ValueError(f"exponent must be >= 1 in {text!r}")
                    exps[n - 1] += e
                    continue
                raise ValueError(f"bad factor {factor!r} in polynomial text {text!r}")
            key = tuple(exps)
            s_c = terms.get(key, Fraction(0)) + coeff
            if s_c:
                terms[key] = s_c
            else:
                terms.pop(key, None)
        return cls(nvars, terms)


def reduce_mod_linear(
    p: Polynomial,
    coeffs: Sequence[Fraction | int],
    pivot: int | None = None,
) -> Polynomial:
    """Eliminate one variable of ``p`` using the linear relation sum(coeffs[i]*x_i) = 0.

    The pivot variable (default: the first with a nonzero coefficient) is
    replaced by -(1/a_pivot) * sum of the remaining terms, so the result has
    zero exponent at the pivot and is congruent to ``p`` modulo the form.
    """
    cs = [Fraction(c) for c in coeffs]
    if len(cs) != p.nvars:
        raise ValueError("linear form length must match the variable count")
    if all(c == 0 for c in cs):
        raise ValueError("cannot reduce modulo the zero form")
    if pivot is None:
        pivot = next(i for i, c in enumerate(cs) if c != 0)
    if not 0 <= pivot < p.nvars:
        raise ValueError("pivot index out of range")
    if cs[pivot] == 0:
        raise ValueError(f"pivot coefficient at position {pivot} is zero")
    a = cs[pivot]
    sub = Polynomial(
        p.nvars,
        {
            tuple(1 if j == t else 0 for j in range(p.nvars)): -c / a
            for t, c in enumerate(cs)
            if t != pivot and c != 0
        },
    )
    powers = [Polynomial.one(p.nvars)]
    acc = Polynomial.zero(p.nvars)
    for e, c in sorted(p.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
        k = e[pivot]
        while len(powers) <= k:
            powers.append(powers[-1] * sub)
        rest = list(e)
        rest[pivot] = 0
        acc = acc + powers[k] * Polynomial.monomial(p.nvars, tuple(rest), c)
    return acc
