"""Macaulay duality between ideals of K[[x]] and submodules of K[y].

An ideal is always taken together with a socle bound ``s``: it contains
every monomial of degree ``s + 1``, so all computations happen inside the
finite-dimensional spaces R/M^{s+1} and P_{<=s}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError
from .linalg import Subspace, nullspace
from .poly import (
    DualPoly,
    Jet,
    contract,
    contract_monomial,
    monomial_basis,
    monomial_index,
    unit_vector,
)


def _nonzero(F):
    if not isinstance(F, DualPoly):
        raise TypeError("expected a DualPoly")
    if F.is_zero():
        raise DomainError("the dual generator must be nonzero")


def _derivatives(F):
    return [contract_monomial(a, F) for a in monomial_basis(F.nvars, F.degree)]


def derivative_span(F):
    """Row-reduced basis of <F>_R: F together with all its partial derivatives."""
    _nonzero(F)
    cols = monomial_basis(F.nvars, F.degree)
    vecs = [d.coefficient_vector(cols) for d in _derivatives(F)]
    return Subspace.span(vecs, cols, F.nvars, "y")


def graded_dimensions(space):
    """Dimensions of (M cap P_{<=i} + P_{<i}) / P_{<i} for a space M of dual polynomials.

    With columns sorted by decreasing degree the reduced basis exposes these
    directly: the i-th entry counts rows whose pivot has degree i.
    """
    cols = tuple(reversed(space.columns))
    desc = space.reordered(cols) if cols != space.columns else space
    top = max((sum(a) for a in space.columns), default=0)
    dims = [0] * (top + 1)
    for p in desc.pivots:
        dims[sum(cols[p])] += 1
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return tuple(dims)


def hilbert_function(F):
    """Hilbert function of A_F = R/Ann(F), computed on the dual side."""
    return graded_dimensions(derivative_span(F))


@dataclass(frozen=True)
class IdealDescription:
    """An ideal I of R with M^{s+1} inside it.

    ``kbasis`` spans I / M^{s+1} inside R/M^{s+1}; ``generators`` lift a
    basis of I / MI.
    """

    nvars: int
    bound: int
    kbasis: Subspace
    generators: tuple

    @property
    def colength(self):
        return len(self.kbasis.columns) - self.kbasis.dim


def _times_variables(space, s):
    m = space.nvars
    idx = monomial_index(m, s)
    vecs = []
    for row in space.basis:
        for k in range(m):
            v = [Fraction(0)] * len(space.columns)
            for a, c in zip(space.columns, row):
                if c and sum(a) < s:
                    b = a[:k] + (a[k] + 1,) + a[k + 1:]
                    v[idx[b]] = c
            vecs.append(v)
    return Subspace.span(vecs, space.columns, m, "x")


def minimal_generators(kbasis, s):
    """Representatives of a basis of I / MI.

    Each representative is reduced modulo MI and the family is row reduced
    with columns in decreasing deg-lex order, so leading monomials are as
    small as possible.
    """
    if kbasis.dim == 0:
        return ()
    desc_cols = tuple(reversed(kbasis.columns))
    ideal = kbasis.reordered(desc_cols)
    mi = _times_variables(kbasis, s).reordered(desc_cols)
    reduced = []
    for row in ideal.basis:
        vec = list(row)
        for mrow, c in zip(mi.basis, mi.pivots):
            f = vec[c]
            if f:
                vec = [x - f * y for x, y in zip(vec, mrow)]
        if any(vec):
            reduced.append(vec)
    gens = Subspace.span(reduced, desc_cols, kbasis.nvars, "x")
    out = [Jet.from_vector(kbasis.nvars, desc_cols, row, bound=s) for row in gens.basis]
    # list by leading monomial in lex order, x1 most significant
    return tuple(sorted(out, key=lambda g: tuple(-e for e in g.items()[0][0])))


def annihilator(F, s=None):
    """Ann_R(F) as a K-basis of its image in R/M^{s+1} plus minimal generators."""
    _nonzero(F)
    m = F.nvars
    s = F.degree if s is None else s
    if s < F.degree:
        raise DomainError(f"socle bound {s} is below deg F = {F.degree}")
    cols = monomial_basis(m, s)
    rows_of = monomial_index(m, s)
    # column alpha holds the coefficients of x^alpha o F
    matrix = [[Fraction(0)] * len(cols) for _ in cols]
    for j, a in enumerate(cols):
        for e, c in contract_monomial(a, F).terms.items():
            matrix[rows_of[e]][j] = c
    kbasis = Subspace.span(nullspace(matrix, len(cols)), cols, m, "x")
    return IdealDescription(m, s, kbasis, minimal_generators(kbasis, s))


def ideal_from_generators(gens, s, nvars=None):
    """The ideal (gens) + M^{s+1}, as an :class:`IdealDescription`."""
    m, gens = _lift(list(gens), nvars)
    cols = monomial_basis(m, s)
    idx = monomial_index(m, s)
    vecs = []
    for g in gens:
        g = g.with_bound(s)
        for a in cols:
            v = [Fraction(0)] * len(cols)
            for e, c in g.terms.items():
                b = tuple(x + y for x, y in zip(a, e))
                if sum(b) <= s:
                    v[idx[b]] += c
            if any(v):
                vecs.append(v)
    kbasis = Subspace.span(vecs, cols, m, "x")
    return IdealDescription(m, s, kbasis, minimal_generators(kbasis, s))


def _lift(gens, nvars=None):
    """Common variable count of ``gens`` and the generators embedded into it."""
    for g in gens:
        if not isinstance(g, Jet):
            raise TypeError("ideal generators must be series-side Jets")
    counts = [g.nvars for g in gens]
    if nvars is None:
        if not counts:
            raise ValueError("cannot infer the variable count from an empty generator list")
        nvars = max(counts)
    elif counts and max(counts) > nvars:
        raise ValueError(f"generator in {max(counts)} variables exceeds nvars={nvars}")
    return nvars, [g.embed(nvars) if g.nvars < nvars else g for g in gens]


def perp(gens, s, nvars=None):
    """I^perp = {g in P_{<=s} : h o g = 0 for each generator h}."""
    m, gens = _lift(list(gens), nvars)
    cols = monomial_basis(m, s)
    idx = monomial_index(m, s)
    n = len(cols)
    matrix = []
    for h in gens:
        if h.is_zero():
            raise DomainError("ideal generators must be nonzero")
        block = [[Fraction(0)] * n for _ in range(n)]
        for j, b in enumerate(cols):
            for e, c in contract(h, DualPoly.monomial(b)).terms.items():
                block[idx[e]][j] = c
        matrix.extend(r for r in block if any(r))
    vecs = nullspace(matrix, n) if matrix else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return Subspace.span(vecs, cols, m, "y")


def first_partials_span(space):
    """Span of all first partial derivatives of the elements of ``space``."""
    vecs = []
    for g in space.elements():
        for j in range(space.nvars):
            d = g.derivative(j)
            if not d.is_zero():
                vecs.append(space.vector_of(d))
    return Subspace.span(vecs, space.columns, space.nvars, "y")


class GorensteinCheck(NamedTuple):
    is_gorenstein: bool
    socle_dimension: int
    generator: DualPoly | None


def _socle_data(space):
    inner = first_partials_span(space)
    socle_dim = space.dim - inner.dim
    gen = None
    if socle_dim == 1:
        for g in reversed(space.elements()):
            if not inner.contains(g):
                gen = g
                break
    return socle_dim, gen


@dataclass(frozen=True)
class AlgebraPresentation:
    """An Artinian local algebra A = R/I with M^{s+1} in I.

    Built from a dual generator F (then I = Ann F) or from ideal generators;
    all invariants are computed at construction.
    """

    nvars: int
    socle_bound: int
    dual_generator: DualPoly | None
    ideal_generators: tuple | None
    inverse_system: Subspace
    hilbert_function: tuple
    socle_dimension: int
    cyclic_generator: DualPoly | None

    @classmethod
    def from_dual(cls, F, s=None):
        _nonzero(F)
        s = F.degree if s is None else s
        if s < F.degree:
            raise DomainError(f"socle bound {s} is below deg F = {F.degree}")
        space = derivative_span(F)
        return cls(F.nvars, s, F, None, space, graded_dimensions(space), 1, F)

    @classmethod
    def from_ideal(cls, gens, s, nvars=None):
        gens = tuple(gens)
        space = perp(gens, s, nvars)
        socle_dim, gen = _socle_data(space)
        return cls(space.nvars, s, None, gens, space, graded_dimensions(space), socle_dim, gen)

    @property
    def multiplicity(self):
        return self.inverse_system.dim

    @property
    def embedding_dimension(self):
        return self.hilbert_function[1] if len(self.hilbert_function) > 1 else 0

    @property
    def socle_degree(self):
        return len(self.hilbert_function) - 1

    @property
    def is_gorenstein(self):
        return self.socle_dimension == 1


def is_gorenstein(A):
    """Socle dimension of A and, when it is 1, a cyclic generator of I^perp."""
    if A.dual_generator is not None:
        return GorensteinCheck(True, 1, A.dual_generator)
    socle_dim, gen = _socle_data(A.inverse_system)
    return GorensteinCheck(socle_dim == 1, socle_dim, gen)


def top_form_quotient(F):
    """The graded Gorenstein quotient Q(0) = R/Ann(F_s), F_s the top form of F."""
    _nonzero(F)
    return AlgebraPresentation.from_dual(F.top_form())


def symmetric_hf_criterion(F):
    """True iff the Hilbert function of A_F is a palindrome."""
    hf = hilbert_function(F)
    return hf == hf[::-1]


def ideal_equal(g1, g2, s, nvars=None):
    """Whether (g1) + M^{s+1} and (g2) + M^{s+1} coincide."""
    g1, g2 = list(g1), list(g2)
    m, _ = _lift(g1 + g2, nvars)
    return perp(g1, s, m) == perp(g2, s, m)


def is_stable_subspace(space):
    """Closed under first partials and containing 1, y1, ..., ym."""
    if space.side != "y":
        raise TypeError("expected a space of dual polynomials")
    m = space.nvars
    if not space.contains(DualPoly.constant(m)):
        return False
    if any(not space.contains(DualPoly.monomial(unit_vector(m, j))) for j in range(m)):
        return False
    return space.contains_space(first_partials_span(space))


def transport_ideal(phi, kbasis):
    """Image of an ideal (given by its K-basis mod M^{s+1}) under an automorphism."""
    images = [phi.apply(f) for f in kbasis.elements()]
    return Subspace.span([g.coefficient_vector(kbasis.columns) for g in images],
                         kbasis.columns, kbasis.nvars, "x")
