"""Shared fixtures and random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from logderiv import (
    Arrangement,
    Derivation,
    LinearForm,
    Polynomial,
    emit_ziegler_fixture,
    graded_component,
)


def boolean_arrangement(ell: int) -> Arrangement:
    forms = tuple(
        LinearForm(tuple(Fraction(1 if j == i else 0) for j in range(ell)))
        for i in range(ell)
    )
    return Arrangement(ell, forms)


B3_ROWS = [
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, -1, 0),
    (1, 1, 0),
    (1, 0, -1),
    (1, 0, 1),
    (0, 1, -1),
    (0, 1, 1),
]


def b3_arrangement() -> Arrangement:
    return Arrangement(3, tuple(LinearForm(r) for r in B3_ROWS))


@pytest.fixture(scope="session")
def ziegler():
    return emit_ziegler_fixture()


@pytest.fixture(scope="session")
def b3():
    return b3_arrangement()


def random_form(rng: random.Random, ell: int, height: int) -> LinearForm:
    while True:
        coeffs = tuple(Fraction(rng.randint(-height, height)) for _ in range(ell))
        if any(coeffs):
            return LinearForm(coeffs)


def random_canonical_arrangement(
    rng: random.Random, ell: int, n: int, height: int = 5
) -> Arrangement:
    """First ell forms are the coordinates; the rest are random, simple."""
    forms = [
        LinearForm(tuple(Fraction(1 if j == i else 0) for j in range(ell)))
        for i in range(ell)
    ]
    while len(forms) < n:
        cand = random_form(rng, ell, height)
        if not any(cand.is_parallel(f) for f in forms):
            forms.append(cand)
    return Arrangement(ell, tuple(forms))


def random_essential_arrangement(
    rng: random.Random, ell: int, n: int, height: int = 3
) -> Arrangement:
    """Random simple essential arrangement (resamples until essential)."""
    while True:
        forms: list[LinearForm] = []
        while len(forms) < n:
            cand = random_form(rng, ell, height)
            if not any(cand.is_parallel(f) for f in forms):
                forms.append(cand)
        try:
            return Arrangement(ell, tuple(forms))
        except ValueError:
            continue


def random_polynomial(
    rng: random.Random, nvars: int, max_degree: int, max_terms: int = 4
) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = Fraction(rng.randint(-4, 4))
    return Polynomial(nvars, terms)


def random_point(rng: random.Random, ell: int, height: int = 7) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.randint(-height, height), rng.randint(1, 3)) for _ in range(ell)
    )


def random_graded_member(
    arr: Arrangement, rng: random.Random, degree: int
) -> Derivation | None:
    """A random rational combination of a graded basis, or None if empty."""
    comp = graded_component(arr, degree)
    if not comp.members:
        return None
    total = None
    for m in comp.members:
        scaled = m * Fraction(rng.randint(-3, 3))
        total = scaled if total is None else total + scaled
    return total


def point_on_hyperplane(
    arr: Arrangement, i: int, rng: random.Random
) -> tuple[Fraction, ...]:
    """A random rational point on hyperplane i (1-based)."""
    coeffs = arr.forms[i - 1].coeffs
    pivot = next(t for t, c in enumerate(coeffs) if c)
    point = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(arr.ell)]
    rest = sum(
        (coeffs[t] * point[t] for t in range(arr.ell) if t != pivot), Fraction(0)
    )
    point[pivot] = -rest / coeffs[pivot]
    return tuple(point)
