"""Fixture corpus and property suites, runnable from the command line."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cubics import (
    anharmonic_orbit,
    classify_ternary_cubic,
    j_invariant,
    legendre_cubic,
    model_table,
)
from .errors import DomainError
from .instances import canonical_pair, random_dual, random_invertible, random_jet, random_socle3
from .invsys import annihilator, derivative_span, hilbert_function, ideal_equal
from .poly import contract
from .socle3 import canonical_grading_witness, normalize_socle3, verify_iso


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    passed: bool
    detail: str = ""


def _fixtures():
    for row in model_table():
        s = row.socle_bound
        ok = ideal_equal(row.ideal, annihilator(row.dual, s).generators, s)
        ok = ok and hilbert_function(row.dual) == row.hilbert_function
        yield CaseResult("fixtures", row.key, ok)
    for lam in (2, 3, -1, Fraction(5, 2)):
        row = model_table("EllipticGeneral", lam=lam)[0]
        ok = ideal_equal(row.ideal, annihilator(row.dual).generators, 3)
        yield CaseResult("legendre", f"lambda={lam}", ok and hilbert_function(row.dual) == (1, 3, 3, 1))


def _duality(rng, count):
    for k in range(count):
        m = rng.randint(1, 3)
        F = random_dual(rng, m, rng.randint(1, 4))
        f, h = random_jet(rng, m, 2), random_jet(rng, m, 2)
        ok = contract(f * h, F) == contract(f, contract(h, F))
        ok = ok and derivative_span(F).dim == sum(hilbert_function(F))
        yield CaseResult("duality", f"#{k}", ok)


def _canonical(rng, count):
    for k in range(count):
        n = 1 + k % 4
        F3, F2 = canonical_pair(rng, n)
        F = F3 + F2
        yield CaseResult("canonical", f"n={n} #{k}", verify_iso(F, F3, canonical_grading_witness(F)))


def _normal(rng, count):
    for k in range(count):
        n, m = 1 + k % 3, 4 + k % 2
        F = random_socle3(rng, n, m)
        nf = normalize_socle3(F)
        ok = all(nf.lambdas) and verify_iso(F, nf.normal, nf.witness)
        yield CaseResult("normal_form", f"m={m} n={n} #{k}", ok)


def _classifier(rng, count):
    for row in model_table():
        if row.hilbert_function != (1, 3, 3, 1):
            continue
        base = classify_ternary_cubic(row.dual)
        ok = base.kind.value == row.key
        for _ in range(count):
            ok = ok and classify_ternary_cubic(row.dual.linear_substitution(random_invertible(rng, 3))) == base
        yield CaseResult("classifier", row.key, ok)


def _jcalibration(rng):
    from .grammar import parse_dual

    yield CaseResult("j", "fermat", j_invariant(parse_dual("y1^3 + y2^3 + y3^3")) == 0)
    yield CaseResult("j", "harmonic", j_invariant(legendre_cubic(-1)) == 1728)
    lam = Fraction(rng.randint(2, 20), rng.randint(1, 7))
    if lam == 1:
        lam = Fraction(3)
    js = {j_invariant(legendre_cubic(mu)) for mu in anharmonic_orbit(lam)}
    yield CaseResult("j", f"orbit lambda={lam}", len(js) == 1)


def run(seed=0, scale=1):
    """Run every suite; ``scale`` multiplies the random case counts."""
    rng = random.Random(seed)
    suites = [
        _fixtures(),
        _duality(rng, 20 * scale),
        _canonical(rng, 8 * scale),
        _normal(rng, 3 * scale),
        _classifier(rng, 2 * scale),
        _jcalibration(rng),
    ]
    results = []
    for suite in suites:
        try:
            results.extend(suite)
        except DomainError as exc:
            results.append(CaseResult("error", type(exc).__name__, False, str(exc)))
    return results
