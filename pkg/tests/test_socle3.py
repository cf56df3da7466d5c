import json
import random
from fractions import Fraction
from math import comb

import pytest

from macinv.errors import DomainError
from macinv.instances import canonical_pair, random_invertible, random_nondegenerate_cubic, random_socle3
from macinv.invsys import annihilator, derivative_span, hilbert_function
from macinv.linalg import matmul, rank
from macinv.poly import DualPoly, Jet, monomials_of_degree
from macinv.socle3 import (
    AutMap,
    IsoStatus,
    IsoWitness,
    aut_matrix,
    canonical_grading_witness,
    delta_matrix,
    grading_system,
    is_nondegenerate,
    iso_socle3,
    normalize_socle3,
    reduce_to_F2F3,
    transported_annihilator,
    unit_matrix,
    verify_iso,
    verify_iso_matrices,
)
from macinv.cubics import legendre_cubic
from conftest import P


def test_delta_matrix_examples():
    d = delta_matrix(P("y1^3 - y2^3"))
    assert [list(r) for r in d.entries] == [[6, 0, 0], [0, 0, -6]]
    assert d.rank == 2
    assert delta_matrix(P("y1^3", 2)).rank == 1
    assert delta_matrix(P("y1*y2*y3")).rank == 3
    assert is_nondegenerate(P("y1^2*y2"))
    assert not is_nondegenerate(P("y1^3", 2))
    with pytest.raises(DomainError):
        delta_matrix(P("y1^3 + y2"))


@pytest.mark.parametrize("seed", range(10))
def test_delta_rank_equals_first_hilbert_value(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    F3 = DualPoly(n, {e: rng.randint(-2, 2) for e in monomials_of_degree(n, 3) if rng.random() < 0.4})
    if F3.is_zero():
        F3 = P("y1^3", n)
    assert delta_matrix(F3).rank == hilbert_function(F3)[1]


def test_grading_system_examples():
    one = grading_system(P("y1^3"))
    assert [list(r) for r in one.matrix] == [[12]]
    two = grading_system(P("y1^3 - y2^3"))
    assert len(two.matrix) == 3 and len(two.matrix[0]) == 6 and two.rank == 3
    with pytest.raises(DomainError):
        grading_system(P("y1^3", 2))


def _brute_force_columns(F3, m):
    """Column (l, i) of the system read off phi*(F3) for x_l -> x_l + x^i."""
    n = F3.nvars
    G = F3.embed(m)
    rows = [(l, j) for l in range(n) for j in range(l, n)]
    rows += [(k, j) for j in range(n, m) for k in range(n)]
    cols = {}
    for l in range(m):
        for i in monomials_of_degree(n, 2):
            images = [Jet.variable(m, k, bound=3) for k in range(m)]
            images[l] = images[l] + Jet.monomial(i + (0,) * (m - n)).with_bound(3)
            moved = AutMap(images, 3).dual(G).dual_coefficients()
            col = []
            for a, b in rows:
                e = tuple(int(k == a) + int(k == b) for k in range(m))
                col.append(moved.get(e, 0))
            cols[(l, i)] = col
    return cols


@pytest.mark.parametrize("seed", range(12))
def test_grading_system_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    m = n + rng.randint(0, 2)
    F3 = random_nondegenerate_cubic(rng, n, -4, 4)
    system = grading_system(F3, m)
    cols = _brute_force_columns(F3, m)
    for k, u in enumerate(system.unknowns):
        assert [row[k] for row in system.matrix] == cols[u]
    assert system.rank == comb(n + 1, 2) + n * (m - n)


def test_aut_matrix_worked_example():
    phi = AutMap([Jet(1, {(1,): 1, (2,): Fraction(1, 6)}, bound=3)], 3)
    M = aut_matrix(phi)
    assert M == [[1, 0, 0, 0], [0, 1, 0, 0], [0, Fraction(1, 6), 1, 0], [0, 0, Fraction(1, 3), 1]]
    assert aut_matrix(AutMap.identity(2, 3)) == [[int(i == j) for j in range(10)] for i in range(10)]
    assert unit_matrix(Jet.constant(2, 1, bound=3), 3) == aut_matrix(AutMap.identity(2, 3))
    with pytest.raises(DomainError):
        unit_matrix(Jet.variable(2, 0, bound=3), 3)
    with pytest.raises(DomainError):
        AutMap([Jet(2, {(2, 0): 1}), Jet.variable(2, 1)], 3)


def _random_aut(rng, m, s=3):
    A = random_invertible(rng, m)
    images = []
    for k in range(m):
        terms = {tuple(int(j == jj) for jj in range(m)): A[j][k] for j in range(m)}
        for e in monomials_of_degree(m, 2):
            if rng.random() < 0.4:
                terms[e] = rng.randint(-3, 3)
        images.append(Jet(m, terms, bound=s))
    return AutMap(images, s)


@pytest.mark.parametrize("seed", range(8))
def test_matrix_of_composition(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    phi, psi = _random_aut(rng, m), _random_aut(rng, m)
    assert aut_matrix(phi.compose(psi)) == matmul(aut_matrix(phi), aut_matrix(psi))
    assert phi.compose(phi.inverse()) == AutMap.identity(m, 3)
    G = DualPoly(m, {e: rng.randint(-3, 3) for e in monomials_of_degree(m, 3)}) + P("y1", m)
    assert phi.dual(psi.dual(G)) == psi.compose(phi).dual(G)


def test_linear_automorphism_pulls_back_by_substitution():
    A = [[1, 2], [0, -1]]
    G = P("y1^2*y2 + y2^2 - 3*y1")
    assert AutMap.linear(A, 3).dual(G) == G.linear_substitution(A)


def test_reduce_to_F2F3():
    F = P("y1^3 - y2^3 + y1 + 5")
    G = reduce_to_F2F3(F)
    assert G.homogeneous_part(3) == F.homogeneous_part(3)
    assert not G.homogeneous_part(1).terms and not G.homogeneous_part(0).terms
    assert derivative_span(G) == derivative_span(F)
    H = P("y1*y2*y3")
    assert reduce_to_F2F3(H) == H
    F1 = P("y1^3 + y1^2 + y1")
    assert derivative_span(reduce_to_F2F3(F1)) == derivative_span(P("y1^3 + y1^2"))


def test_canonical_witness_n1():
    F = P("y1^3 + y1^2")
    w = canonical_grading_witness(F)
    assert w.phi.images[0] == Jet(1, {(1,): 1, (2,): Fraction(1, 6)}, bound=3)
    assert verify_iso(F, P("y1^3"), w)
    assert transported_annihilator(w.phi, F, 3) == annihilator(P("y1^3"), 3).kbasis


def test_canonical_witness_homogeneous_is_identity():
    F = P("y1*y2*y3")
    w = canonical_grading_witness(F)
    assert w.phi == AutMap.identity(3, 3)
    assert w.unit == Jet.constant(3, 1, bound=3)


def test_canonical_witness_binary():
    F = P("y1^3 - y2^3 + y1^2")
    w = canonical_grading_witness(F)
    assert rank(w.phi.linear_part()) == 2
    assert w.phi.linear_part() == [[1, 0], [0, 1]]
    assert verify_iso(F, F.top_form(), w)


@pytest.mark.parametrize("seed", range(12))
def test_canonical_witness_random(seed):
    rng = random.Random(seed)
    F3, F2 = canonical_pair(rng, 1 + seed % 4)
    F = F3 + F2
    w = canonical_grading_witness(F)
    assert verify_iso(F, F3, w)
    assert hilbert_function(F) == hilbert_function(F3)


def test_canonical_witness_rejects_socle_four():
    with pytest.raises(DomainError) as exc:
        canonical_grading_witness(P("y1^3*y2 + y2^3"))
    assert "canonical grading" in str(exc.value)


def test_normal_form_examples():
    nf = normalize_socle3(P("y1^3 + y2^2"))
    assert nf.cubic == P("y1^3") and nf.lambdas == (1,)
    F = P("y1^3 + y2^2 + y1*y2")
    nf = normalize_socle3(F)
    assert nf.n == 1 and nf.m == 2 and all(nf.lambdas)
    assert verify_iso(F, nf.normal, nf.witness)
    F = P("y1^2*y2 + y3^2")
    assert hilbert_function(F) == (1, 3, 2, 1)
    nf = normalize_socle3(F)
    assert nf.cubic == P("y1^2*y2") and nf.lambdas == (1,)
    assert nf.closure_form() == F


@pytest.mark.parametrize("seed", range(6))
def test_normal_form_random(seed):
    rng = random.Random(seed)
    n, m = 1 + seed % 3, 4 + seed % 2
    F = random_socle3(rng, n, m)
    nf = normalize_socle3(F)
    assert all(nf.lambdas)
    assert verify_iso(F, nf.normal, nf.witness)
    assert hilbert_function(nf.normal) == (1, m, n, 1)


def test_normal_form_rejects_bad_inputs():
    with pytest.raises(DomainError):
        normalize_socle3(P("y1^3*y2"))
    with pytest.raises(DomainError):
        normalize_socle3(P("y1^3 + y2^2", 3))


def test_verify_iso_rejects_wrong_pairs():
    F, G = P("y1^2*y2"), P("y1^3 - y2^3")
    rng = random.Random(3)
    for _ in range(5):
        w = IsoWitness(_random_aut(rng, 2), Jet(2, {(0, 0): 1, (1, 0): rng.randint(-3, 3)}, bound=3))
        assert not verify_iso(F, G, w)
    ident = IsoWitness(AutMap.identity(2, 3), Jet.constant(2, 1, bound=3))
    assert verify_iso(F, F, ident)


def test_verify_iso_matrices_requires_consistent_matrices():
    F = P("y1^3 + y1^2")
    w = canonical_grading_witness(F)
    M, N = aut_matrix(w.phi, 3), unit_matrix(w.unit, 3)
    assert verify_iso_matrices(F, P("y1^3"), M, N)
    with pytest.raises(ValueError):
        verify_iso_matrices(F, P("y1^3"), M[:3], N)


def test_witness_json_round_trip():
    F = P("y1^3 - y2^3 + y1^2 - 2*y1*y2")
    w = canonical_grading_witness(F)
    data = json.loads(json.dumps(w.to_dict()))
    back = IsoWitness.from_dict(data)
    assert back == w
    assert verify_iso(F, F.top_form(), back)


def test_iso_decisions():
    assert iso_socle3(P("y1^2*y2"), P("y1^3 - y2^3")).status is IsoStatus.NotIsomorphic
    assert iso_socle3(P("y1*y2*y3 + y1^2"), P("y1*y2*y3")).status is IsoStatus.Isomorphic
    assert iso_socle3(legendre_cubic(2), legendre_cubic(Fraction(1, 2))).status is IsoStatus.Isomorphic
    assert iso_socle3(legendre_cubic(2), legendre_cubic(3)).status is IsoStatus.NotIsomorphic
    assert iso_socle3(P("y1^3 + y2^2"), P("y1^3 + y2^2 + y1*y2")).status is IsoStatus.Isomorphic
    assert iso_socle3(P("y1^3 + y2^2", 2), P("y1^2*y2")).status is IsoStatus.NotIsomorphic
    four = P("y1^3 + y2^3 + y3^3 + y4^3")
    assert iso_socle3(four, four + P("y1*y2", 4)).status is IsoStatus.Undecided


def test_iso_with_witness():
    F = P("y1^3 + y2^3 + y3^3 + y4^3 + y1*y2")
    G = F.top_form()
    d = iso_socle3(F, G, witness=canonical_grading_witness(F))
    assert d.status is IsoStatus.Isomorphic
