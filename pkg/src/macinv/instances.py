"""Seeded random inputs for property suites and the self-test."""

from __future__ import annotations

import random
from fractions import Fraction

from .invsys import hilbert_function
from .linalg import determinant
from .poly import DualPoly, Jet, monomial_basis, monomials_of_degree
from .socle3 import is_nondegenerate


def random_form(rng, nvars, degree, lo=-9, hi=9, density=1.0):
    terms = {}
    for e in monomials_of_degree(nvars, degree):
        if rng.random() < density:
            c = rng.randint(lo, hi)
            if c:
                terms[e] = c
    return DualPoly(nvars, terms)


def random_nondegenerate_cubic(rng, n, lo=-9, hi=9):
    while True:
        F3 = random_form(rng, n, 3, lo, hi, density=rng.choice((0.4, 0.7, 1.0)))
        if not F3.is_zero() and is_nondegenerate(F3):
            return F3


def random_invertible(rng, m, lo=-2, hi=2):
    while True:
        A = [[Fraction(rng.randint(lo, hi)) for _ in range(m)] for _ in range(m)]
        if determinant(A):
            return A


def random_dual(rng, nvars, degree, lo=-5, hi=5, density=0.6):
    """Random polynomial of exact degree ``degree``."""
    while True:
        terms = {e: rng.randint(lo, hi) for e in monomial_basis(nvars, degree) if rng.random() < density}
        F = DualPoly(nvars, terms)
        if F.degree == degree:
            return F


def random_jet(rng, nvars, degree, lo=-5, hi=5, density=0.5):
    terms = {e: rng.randint(lo, hi) for e in monomial_basis(nvars, degree) if rng.random() < density}
    return Jet(nvars, terms)


def canonical_pair(rng, n):
    """(F3, F2) with F3 nondegenerate in n variables and F2 an arbitrary quadric."""
    return random_nondegenerate_cubic(rng, n), random_form(rng, n, 2)


def random_socle3(rng, n, m):
    """A random F in m variables with HF {1, m, n, 1}, hidden by a linear change."""
    while True:
        F3 = random_nondegenerate_cubic(rng, n).embed(m)
        Q = random_form(rng, m, 2, -5, 5, density=0.6)
        L = random_form(rng, m, 1, -5, 5, density=0.5)
        F = F3 + Q + L + rng.randint(-5, 5)
        F = F.linear_substitution(random_invertible(rng, m))
        if hilbert_function(F) == (1, m, n, 1):
            return F
