"""Polynomial arithmetic, the text grammar, and linear reduction."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logderiv import Polynomial, monomials_of_degree, reduce_mod_linear
from logderiv.poly import grlex_key

X = Polynomial.variable(3, 0)
Y = Polynomial.variable(3, 1)
Z = Polynomial.variable(3, 2)


# -- construction and term order ------------------------------------------------


def test_zero_polynomial_has_no_terms():
    assert Polynomial.zero(3).is_zero
    assert Polynomial(3, {(1, 0, 0): 0}).is_zero
    assert Polynomial.zero(2).degree() == -1


def test_monomials_of_degree_descending_grlex():
    monos = monomials_of_degree(3, 2)
    assert monos[0] == (2, 0, 0)
    assert monos[-1] == (0, 0, 2)
    assert monos == sorted(monos, key=grlex_key, reverse=True)
    assert len(monos) == 6
    assert monomials_of_degree(2, 0) == [(0, 0)]


def test_grlex_prefers_total_degree():
    p = X * X + Y * Y * Y
    # y^3 has higher total degree, so it leads
    assert p.leading()[0] == (0, 3, 0)


# -- grammar ---------------------------------------------------------------------


def test_parse_render_round_trip():
    text = "12*x1^3*x2 - 6*x1^2*x2^2 + 1/2*x3 - 7"
    p = Polynomial.parse(text, 3)
    assert Polynomial.parse(p.render(), 3) == p


def test_parse_unicode_minus_and_whitespace():
    a = Polynomial.parse("x1 − x2", 2)
    b = Polynomial.parse("x1-x2", 2)
    assert a == b


def test_parse_fraction_coefficients():
    p = Polynomial.parse("3/4*x1*x2^2", 2)
    assert p.coeff((1, 2)) == Fraction(3, 4)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Polynomial.parse("x1 + + x2", 2)
    with pytest.raises(ValueError):
        Polynomial.parse("x9", 2)
    with pytest.raises(ValueError):
        Polynomial.parse("x1^0", 2)
    with pytest.raises(ValueError):
        Polynomial.parse("", 2)


def test_render_is_descending_and_signed():
    p = Polynomial.parse("x2 - x1^2 + 3", 2)
    assert p.render() == "-x1^2 + x2 + 3"
    assert Polynomial.zero(2).render() == "0"


def test_duplicate_monomials_in_text_are_merged():
    assert Polynomial.parse("x1 + x1", 2) == Polynomial.parse("2*x1", 2)
    assert Polynomial.parse("x1 - x1", 2).is_zero


# -- evaluation -------------------------------------------------------------------


def test_eval_linear_form_example():
    # alpha = x + y - z at (2, 3, -1)
    p = X + Y - Z
    assert p.eval((2, 3, -1)) == 6


def test_eval_zero_polynomial():
    assert Polynomial.zero(3).eval((5, Fraction(1, 2), -3)) == 0


# Quartic quotient fixture of the Ziegler derivation, as published; the
# independent oracle below evaluates it term by term with plain integers.
Q1_TERMS = [
    ((3, 1, 0), 12), ((2, 2, 0), -6), ((1, 3, 0), -6), ((3, 0, 1), -36),
    ((2, 1, 1), 52), ((1, 2, 1), -54), ((0, 3, 1), 32), ((2, 0, 2), -54),
    ((1, 1, 2), 22), ((0, 2, 2), 48), ((1, 0, 3), -18), ((0, 1, 3), -32),
]


def test_eval_quartic_quotient_vanishes_at_special_point():
    point = (2, 3, -1)
    oracle = sum(
        c * point[0] ** a * point[1] ** b * point[2] ** d for (a, b, d), c in Q1_TERMS
    )
    assert oracle == 0
    p = Polynomial(3, {e: Fraction(c) for e, c in Q1_TERMS})
    assert p.eval(point) == 0
    assert p.eval((1, 1, 1)) == sum(c for _, c in Q1_TERMS)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_eval_is_a_ring_homomorphism(data):
    rng = random.Random(data.draw(st.integers(0, 2**30)))
    nvars = rng.randint(1, 3)
    terms = lambda: {
        tuple(rng.randint(0, 2) for _ in range(nvars)): Fraction(rng.randint(-5, 5))
        for _ in range(rng.randint(0, 4))
    }
    p, q = Polynomial(nvars, terms()), Polynomial(nvars, terms())
    point = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(nvars)]
    assert (p + q).eval(point) == p.eval(point) + q.eval(point)
    assert (p * q).eval(point) == p.eval(point) * q.eval(point)


# -- calculus and division ----------------------------------------------------------


def test_partial_derivative():
    p = X**2 * Y + Z
    assert p.partial(0) == 2 * X * Y
    assert p.partial(1) == X**2
    assert p.partial(2) == Polynomial.one(3)


def test_try_div_exact_and_inexact():
    alpha = X + Y - Z
    product = alpha * (X * Y - 3 * Z * Z)
    assert product.try_div(alpha) == X * Y - 3 * Z * Z
    assert (X * Y).try_div(alpha) is None
    assert Polynomial.zero(3).try_div(alpha).is_zero
    with pytest.raises(ZeroDivisionError):
        alpha.try_div(Polynomial.zero(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**30))
def test_division_inverts_multiplication(seed):
    rng = random.Random(seed)
    nvars = rng.randint(1, 3)
    mk = lambda: Polynomial(
        nvars,
        {
            tuple(rng.randint(0, 2) for _ in range(nvars)): Fraction(rng.randint(-4, 4))
            for _ in range(rng.randint(1, 4))
        },
    )
    a, b = mk(), mk()
    if a.is_zero or b.is_zero:
        return
    assert (a * b).try_div(b) == a


# -- reduction modulo a linear form --------------------------------------------------


def test_reduce_product_example():
    # x*y modulo x + y - z, pivot x: substitute x = -y + z
    reduced = reduce_mod_linear(X * Y, (1, 1, -1), pivot=0)
    assert reduced == -Y * Y + Y * Z


def test_reduce_multiple_is_zero():
    alpha = (1, 1, -1)
    g = X * X - 2 * Y + Z * Z * Z
    product = (X + Y - Z) * g
    assert reduce_mod_linear(product, alpha).is_zero


def test_reduce_default_pivot_is_first_nonzero():
    # 0*x1 + 1*x2 - 1*x3: default pivot must be x2
    reduced = reduce_mod_linear(Y * Y, (0, 1, -1))
    assert reduced == Z * Z


def test_reduce_zero_pivot_rejected():
    with pytest.raises(ValueError):
        reduce_mod_linear(X, (0, 1, 0), pivot=0)
    with pytest.raises(ValueError):
        reduce_mod_linear(X, (0, 0, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**30))
def test_reduction_difference_is_divisible_by_form(seed):
    rng = random.Random(seed)
    nvars = rng.randint(2, 3)
    coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(nvars)]
    if not any(coeffs):
        coeffs[0] = Fraction(1)
    p = Polynomial(
        nvars,
        {
            tuple(rng.randint(0, 3) for _ in range(nvars)): Fraction(rng.randint(-5, 5))
            for _ in range(rng.randint(0, 5))
        },
    )
    reduced = reduce_mod_linear(p, coeffs)
    pivot = next(i for i, c in enumerate(coeffs) if c)
    assert all(e[pivot] == 0 for e in reduced.terms)
    diff = p - reduced
    alpha = Polynomial.linear(coeffs)
    assert diff.is_zero or diff.try_div(alpha) is not None


# -- linear substitution ---------------------------------------------------------------


def test_substitute_linear_identity():
    p = X * Y - Z**3
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert p.substitute_linear(ident) == p


def test_substitute_linear_swap():
    p = X - 2 * Y
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert p.substitute_linear(swap) == Y - 2 * X
