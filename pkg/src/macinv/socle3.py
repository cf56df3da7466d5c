"""Gorenstein algebras of socle degree three.

Conventions used throughout:

* ``E`` is the monomial basis of R/M^{s+1} in deg-lex order, ``E*`` the
  dual basis y^a/a!, so the E*-coordinate of g at a is a! times its
  coefficient of y^a.
* ``M(phi)`` has as column k the E-coordinates of phi(e_k).
* ``phi*`` is the dual map, <phi(f), G> = <f, phi*(G)>; in coordinates
  [phi* G] = [G] M(phi). For linear phi with phi(x_k) = sum_j A[j][k] x_j
  this is G(A y).
* ``phi.compose(psi)`` applies psi first: M(phi o psi) = M(phi) M(psi)
  and (phi o psi)* = psi* phi*.
* A witness (phi, u) for the pair (F, G) satisfies
  [G] N(u)^t M(phi) = [F], i.e. F = phi*(u o G); then phi(Ann F) = Ann G.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .invsys import annihilator, hilbert_function
from .linalg import (
    InconsistentSystemError,
    Subspace,
    inverse,
    matmul,
    nullspace,
    rank,
    solve_linear,
    transpose,
    vecmat,
)
from .poly import (
    DualPoly,
    Jet,
    contract_monomial,
    monomial_basis,
    monomial_index,
    monomials_of_degree,
    unit_vector,
)

_THM_GRADED = "the canonical grading theorem for HF {1,n,n,1}"
_THM_NORMAL = "the normal form theorem for HF {1,m,n,1}"


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _check_cubic_form(F3):
    if not isinstance(F3, DualPoly):
        raise TypeError("expected a DualPoly")
    if F3.is_zero() or F3.degree != 3 or not F3.is_homogeneous():
        raise DomainError("input must be a nonzero homogeneous cubic")


# -- Delta matrix ---------------------------------------------------------

@dataclass(frozen=True)
class DeltaMatrix:
    """Row j, column i (|i| = 2): the dual coefficient of y^(i + e_j) in F3."""

    n: int
    columns: tuple
    entries: tuple
    rank: int


def delta_matrix(F3):
    _check_cubic_form(F3)
    n = F3.nvars
    alpha = F3.dual_coefficients()
    cols = monomials_of_degree(n, 2)
    rows = tuple(
        tuple(alpha.get(_add(i, unit_vector(n, j)), Fraction(0)) for i in cols) for j in range(n)
    )
    return DeltaMatrix(n, cols, rows, rank([list(r) for r in rows]))


def is_nondegenerate(F3):
    return delta_matrix(F3).rank == F3.nvars


# -- grading system -------------------------------------------------------

@dataclass(frozen=True)
class GradingSystem:
    """Linear conditions on the quadratic tails a^l_i of x_l -> x_l + sum_i a^l_i x^i.

    Rows are pairs (l, j), l <= j, with j < n, followed by pairs (k, j) with
    k < n <= j < m. Unknown (l, i) sits in column l * binom(n+1, 2) + index(i).
    Indices are 0-based.
    """

    n: int
    m: int
    rows: tuple
    unknowns: tuple
    matrix: tuple
    rank: int

    def rhs(self, H):
        """Dual coefficients of the quadric H at e_l + e_j, one per row."""
        beta = H.dual_coefficients()
        return [beta.get(_add(unit_vector(self.m, l), unit_vector(self.m, j)), Fraction(0))
                for l, j in self.rows]

    def solve(self, H):
        """Tail coefficients {(l, i): a} with free unknowns set to zero."""
        sol = solve_linear([list(r) for r in self.matrix], self.rhs(H))
        return {u: v for u, v in zip(self.unknowns, sol) if v}


def grading_system(F3, m=None):
    _check_cubic_form(F3)
    n = F3.nvars
    m = n if m is None else m
    if m < n:
        raise DomainError(f"total variable count m={m} is below n={n}", _THM_NORMAL)
    if not is_nondegenerate(F3):
        raise DomainError("the cubic form must be non-degenerate", _THM_GRADED)
    alpha = F3.embed(m).dual_coefficients()
    quad = monomials_of_degree(n, 2)
    qpos = {i: k for k, i in enumerate(quad)}
    width = len(quad)
    unknowns = tuple((l, i) for l in range(m) for i in quad)
    rows = [(l, j) for l in range(n) for j in range(l, n)]
    rows += [(k, j) for j in range(n, m) for k in range(n)]
    pad = (0,) * (m - n)
    matrix = []
    for l, j in rows:
        row = [Fraction(0)] * (m * width)
        for i in quad:
            im = i + pad
            row[l * width + qpos[i]] += alpha.get(_add(im, unit_vector(m, j)), 0)
            row[j * width + qpos[i]] += alpha.get(_add(im, unit_vector(m, l)), 0)
        matrix.append(tuple(row))
    r = rank([list(x) for x in matrix])
    return GradingSystem(n, m, tuple(rows), unknowns, tuple(matrix), r)


# -- automorphisms --------------------------------------------------------

class AutMap:
    """Automorphism of R/M^{s+1} given by the images z_j of the variables."""

    __slots__ = ("images", "bound", "nvars")

    def __init__(self, images, bound):
        images = tuple(z.with_bound(bound) for z in images)
        if not images:
            raise ValueError("an automorphism needs at least one variable")
        m = len(images)
        if any(z.nvars != m for z in images):
            raise ValueError("each image must live in the same number of variables as the map")
        if any(z.constant_term() for z in images):
            raise DomainError("images of the variables must have zero constant term")
        self.images = images
        self.bound = bound
        self.nvars = m
        if rank(self.linear_part()) < m:
            raise DomainError("the linear part of the substitution is singular")

    @classmethod
    def identity(cls, m, s):
        return cls([Jet.variable(m, j, bound=s) for j in range(m)], s)

    @classmethod
    def linear(cls, A, s):
        """x_k -> sum_j A[j][k] x_j."""
        m = len(A)
        return cls([Jet(m, {unit_vector(m, j): A[j][k] for j in range(m) if A[j][k]}, bound=s)
                    for k in range(m)], s)

    def linear_part(self):
        m = self.nvars
        return [[z.coefficient(unit_vector(m, j)) for z in self.images] for j in range(m)]

    def apply(self, f):
        if f.nvars != self.nvars:
            raise ValueError("variable-count mismatch")
        return f.compose(self.images, bound=self.bound)

    def compose(self, other):
        """self o other (other is applied first)."""
        s = min(self.bound, other.bound)
        return AutMap([z.compose(self.images, bound=s) for z in other.images], s)

    def inverse(self):
        minv = inverse(aut_matrix(self))
        m, s = self.nvars, self.bound
        cols = monomial_basis(m, s)
        idx = monomial_index(m, s)
        images = []
        for j in range(m):
            k = idx[unit_vector(m, j)]
            images.append(Jet.from_vector(m, cols, [row[k] for row in minv], bound=s))
        return AutMap(images, s)

    def dual(self, G):
        """phi*(G), computed as [G] M(phi)."""
        s = self.bound
        return DualPoly.from_dual_vector(self.nvars, s, vecmat(G.dual_vector(s), aut_matrix(self)))

    def __eq__(self, other):
        return isinstance(other, AutMap) and self.bound == other.bound and self.images == other.images

    def __hash__(self):
        return hash((self.bound, self.images))

    def __repr__(self):
        subs = ", ".join(f"x{j + 1} -> {z.to_text()}" for j, z in enumerate(self.images))
        return f"AutMap({subs})"


def aut_matrix(phi, s=None):
    """M(phi) on R/M^{s+1}: column k holds the coordinates of phi(e_k)."""
    s = phi.bound if s is None else s
    m = phi.nvars
    cols = monomial_basis(m, s)
    idx = monomial_index(m, s)
    images = [z.with_bound(s) for z in phi.images]
    powers = [[Jet.constant(m, 1, bound=s)] for _ in range(m)]
    out = [[Fraction(0)] * len(cols) for _ in cols]
    for k, a in enumerate(cols):
        img = Jet.constant(m, 1, bound=s)
        for j, e in enumerate(a):
            while len(powers[j]) <= e:
                powers[j].append(powers[j][-1] * images[j])
            if e:
                img = img * powers[j][e]
        for b, c in img.terms.items():
            out[idx[b]][k] = c
    return out


def unit_matrix(u, s):
    """N(u): the matrix of g -> u o g on P_{<=s} in the basis E*.

    Entry (j, k) is the coefficient of x^k in x^j u; row 0 lists u itself.
    """
    if not u.constant_term():
        raise DomainError("a unit must have nonzero constant term")
    m = u.nvars
    cols = monomial_basis(m, s)
    idx = monomial_index(m, s)
    out = [[Fraction(0)] * len(cols) for _ in cols]
    for j, a in enumerate(cols):
        for e, c in u.terms.items():
            b = _add(a, e)
            if sum(b) <= s:
                out[j][idx[b]] += c
    return out


# -- witnesses ------------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    """A pair (phi, u) with F = phi*(u o G)."""

    phi: AutMap
    unit: Jet

    def to_dict(self):
        return {
            "nvars": self.phi.nvars,
            "socle_bound": self.phi.bound,
            "substitutions": [z.to_text() for z in self.phi.images],
            "unit": self.unit.to_text(),
        }

    @classmethod
    def from_dict(cls, data):
        from .grammar import parse_jet

        subs = data["substitutions"]
        m = int(data.get("nvars", len(subs)))
        s = int(data.get("socle_bound", 3))
        images = [parse_jet(t, nvars=m, bound=s) for t in subs]
        unit = parse_jet(data.get("unit", "1"), nvars=m, bound=s)
        return cls(AutMap(images, s), unit)


def _same_shape(F, G):
    for P in (F, G):
        if not isinstance(P, DualPoly):
            raise TypeError("expected DualPoly arguments")
        if P.is_zero():
            raise DomainError("dual generators must be nonzero")
    if F.nvars != G.nvars:
        raise ValueError(f"variable-count mismatch: {F.nvars} vs {G.nvars}")
    if F.degree != G.degree:
        raise ValueError(f"degree mismatch: {F.degree} vs {G.degree}")
    return F.nvars, F.degree


def _identity_holds(F, G, M, N, s):
    left = vecmat(vecmat(G.dual_vector(s), transpose(N)), M)
    return left == F.dual_vector(s)


def transported_annihilator(phi, F, s):
    """phi(Ann F) as a subspace of R/M^{s+1}."""
    kb = annihilator(F, s).kbasis
    vecs = [phi.apply(f).coefficient_vector(kb.columns) for f in kb.elements()]
    return Subspace.span(vecs, kb.columns, kb.nvars, "x")


def verify_iso(F, G, w, cross_check=True):
    """Check [G] N(u)^t M(phi) = [F] exactly.

    With ``cross_check`` the ideal transport phi(Ann F) = Ann G is
    recomputed independently and must agree as well.
    """
    m, s = _same_shape(F, G)
    if w.phi.nvars != m or w.unit.nvars != m:
        raise ValueError("witness and polynomials live in different numbers of variables")
    if w.phi.bound < s:
        raise ValueError(f"witness is truncated at degree {w.phi.bound} < {s}")
    if not w.unit.constant_term():
        return False
    phi = w.phi if w.phi.bound == s else AutMap(w.phi.images, s)
    ok = _identity_holds(F, G, aut_matrix(phi, s), unit_matrix(w.unit.with_bound(s), s), s)
    if ok and cross_check:
        ok = transported_annihilator(phi, F, s) == annihilator(G, s).kbasis
    return ok


def verify_iso_matrices(F, G, M, N):
    """Verify an isomorphism given directly as the pair of matrices (M, N).

    phi is read off the columns of M at x_1..x_m and u off row 0 of N; both
    matrices must be exactly the ones these data determine, and the identity
    must hold.
    """
    m, s = _same_shape(F, G)
    cols = monomial_basis(m, s)
    r = len(cols)
    if len(M) != r or len(N) != r or any(len(row) != r for row in list(M) + list(N)):
        raise ValueError(f"matrices must be {r} x {r}")
    M = [[Fraction(x) for x in row] for row in M]
    N = [[Fraction(x) for x in row] for row in N]
    idx = monomial_index(m, s)
    images = [Jet.from_vector(m, cols, [row[idx[unit_vector(m, j)]] for row in M], bound=s)
              for j in range(m)]
    unit = Jet.from_vector(m, cols, N[0], bound=s)
    try:
        phi = AutMap(images, s)
        expected_n = unit_matrix(unit, s)
    except DomainError:
        return False
    if aut_matrix(phi, s) != M or expected_n != N:
        return False
    return _identity_holds(F, G, M, N, s)


# -- reductions and normal forms ------------------------------------------

def reduce_to_F2F3(F):
    """An element of <F>_R differing from F by a unit, with no terms of degree <= 1.

    Solves h o F = F_{<=1} for h in M; the result (1 - h) o F = F - F_{<=1}.
    """
    if not isinstance(F, DualPoly) or F.is_zero():
        raise DomainError("input must be a nonzero dual polynomial")
    if F.degree != 3:
        raise DomainError("input must have degree 3")
    low = F.truncated(1)
    if low.is_zero():
        return F
    m = F.nvars
    alphas = [a for a in monomial_basis(m, 3) if sum(a)]
    cols = monomial_basis(m, 3)
    images = [contract_monomial(a, F).coefficient_vector(cols) for a in alphas]
    try:
        solve_linear(transpose(images), low.coefficient_vector(cols))
    except InconsistentSystemError:
        raise DomainError("degree <= 1 part of F is not reachable by derivatives of F",
                          _THM_GRADED) from None
    return F - low


def _kernel_forms(F3):
    """Linear forms l (as coefficient vectors) with l o F3 = 0."""
    m = F3.nvars
    cols = monomial_basis(m, 2)
    partials = [F3.derivative(k).coefficient_vector(cols) for k in range(m)]
    return nullspace(transpose(partials), m)


def _complete_basis(vectors, m):
    """Extend independent ``vectors`` greedily by e_1, e_2, ... to a basis."""
    chosen = []
    current = [list(v) for v in vectors]
    for k in range(m):
        if len(chosen) + len(vectors) == m:
            break
        e = [Fraction(int(i == k)) for i in range(m)]
        if rank(current + [e]) > len(current):
            current.append(e)
            chosen.append(e)
    return chosen


def _diagonalize(Q):
    """T with T^t Q T diagonal, by symmetric elimination; returns (T, diag)."""
    r = len(Q)
    Q = [[Fraction(x) for x in row] for row in Q]
    T = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]

    def congruence(E):
        nonlocal Q, T
        Q = matmul(matmul(transpose(E), Q), E)
        T = matmul(T, E)

    for k in range(r):
        if not Q[k][k]:
            j = next((j for j in range(k + 1, r) if Q[j][j]), None)
            if j is not None:
                E = [[Fraction(int(a == b)) for b in range(r)] for a in range(r)]
                E[k][k] = E[j][j] = Fraction(0)
                E[k][j] = E[j][k] = Fraction(1)
                congruence(E)
            else:
                j = next((j for j in range(k + 1, r) if Q[k][j]), None)
                if j is None:
                    continue
                E = [[Fraction(int(a == b)) for b in range(r)] for a in range(r)]
                E[j][k] = Fraction(1)
                congruence(E)
        E = [[Fraction(int(a == b)) for b in range(r)] for a in range(r)]
        for j in range(k + 1, r):
            E[k][j] = -Q[k][j] / Q[k][k]
        congruence(E)
    return T, [Q[k][k] for k in range(r)]


@dataclass(frozen=True)
class NormalForm:
    """A_F is isomorphic to A_N with N = cubic(y_1..y_n) + sum_k lambdas[k] y_{n+1+k}^2.

    ``witness`` certifies F = Phi*(u o N). Over an algebraically closed
    field each lambda scales to 1; over Q it matters up to squares only.
    """

    F: DualPoly
    hilbert_function: tuple
    cubic: DualPoly
    lambdas: tuple
    normal: DualPoly
    linear_change: tuple
    witness: IsoWitness
    tails: dict = field(default_factory=dict, compare=False)

    @property
    def n(self):
        return self.cubic.nvars

    @property
    def m(self):
        return self.F.nvars

    def closure_form(self):
        """The normal form over the algebraic closure (all lambdas equal to 1)."""
        n, m = self.n, self.m
        out = self.cubic.embed(m)
        for k in range(n, m):
            out = out + DualPoly.monomial(unit_vector(m, k, 2))
        return out


def _split_hf(F, theorem):
    if not isinstance(F, DualPoly) or F.is_zero():
        raise DomainError("input must be a nonzero dual polynomial", theorem)
    if F.degree != 3:
        raise DomainError(f"socle degree must be 3, got {F.degree}", theorem)
    hf = hilbert_function(F)
    if len(hf) != 4 or hf[0] != 1 or hf[3] != 1:
        raise DomainError(f"Hilbert function {list(hf)} is not of the form {{1,m,n,1}}", theorem)
    m, n = hf[1], hf[2]
    if m < n:
        raise DomainError(f"Hilbert function {list(hf)} is not admissible (needs m >= n)", theorem)
    if F.nvars != m:
        raise DomainError(
            f"F uses {F.nvars} variables but its embedding dimension is {m}; "
            f"rewrite F in {m} variables first", theorem)
    return hf, m, n


def _tail_map(tails, m, n, s=3):
    pad = (0,) * (m - n)
    images = []
    for l in range(m):
        terms = {unit_vector(m, l): Fraction(1)}
        for (ll, i), v in tails.items():
            if ll == l:
                terms[i + pad] = v
        images.append(Jet(m, terms, bound=s))
    return AutMap(images, s)


def _solve_unit(N, target, s=3):
    """u with u o N = target (free coefficients set to zero)."""
    m = N.nvars
    alphas = monomial_basis(m, s)
    cols = monomial_basis(m, s)
    images = [contract_monomial(a, N).coefficient_vector(cols) for a in alphas]
    try:
        sol = solve_linear(transpose(images), target.coefficient_vector(cols))
    except InconsistentSystemError:
        raise DomainError("the transported generator is not in the inverse system of the model",
                          _THM_NORMAL) from None
    return Jet.from_vector(m, alphas, sol, bound=s)


def _normalize(F, theorem):
    hf, m, n = _split_hf(F, theorem)
    s = 3
    G0 = reduce_to_F2F3(F)
    F3 = G0.homogeneous_part(3)

    kernel = _kernel_forms(F3)
    if len(kernel) != m - n:
        raise DomainError(f"top form has {m - len(kernel)} essential variables, expected {n}",
                          theorem)
    completion = _complete_basis(kernel, m)
    P = transpose(completion + kernel)  # column k is the image of x_k
    F1 = G0.linear_substitution(P)

    # diagonalize the part of the quadric living only in the trailing variables
    quad = F1.homogeneous_part(2)
    r = m - n
    Q = [[Fraction(0)] * r for _ in range(r)]
    for e, c in quad.terms.items():
        if not any(e[:n]):
            idx = [k - n for k in range(n, m) for _ in range(e[k])]
            a, b = idx
            if a == b:
                Q[a][a] += c
            else:
                Q[a][b] += c / 2
                Q[b][a] += c / 2
    T, diag = _diagonalize(Q)
    if any(d == 0 for d in diag):
        raise DomainError("a diagonal quadric coefficient vanished, contradicting HF(1) = m",
                          theorem)
    chi = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    for a in range(r):
        for b in range(r):
            chi[n + a][n + b] = T[a][b]
    F2 = F1.linear_substitution(chi)

    cubic = F2.homogeneous_part(3).restrict(n)
    diag_part = DualPoly(m, {unit_vector(m, n + k, 2): d for k, d in enumerate(diag)})
    residual = F2.homogeneous_part(2) - diag_part
    if any(not any(e[:n]) for e in residual.terms):
        raise DomainError("quadric diagonalization left trailing terms", theorem)

    system = grading_system(cubic, m)
    if system.rank != len(system.rows):
        raise DomainError("grading system is rank deficient", theorem)
    tails = system.solve(residual)
    phi_a = _tail_map(tails, m, n, s)

    lam = matmul(P, chi)
    Phi = phi_a.compose(AutMap.linear(inverse(lam), s))
    normal = cubic.embed(m) + diag_part
    target = Phi.inverse().dual(F)
    unit = _solve_unit(normal, target, s)
    witness = IsoWitness(Phi, unit)
    return NormalForm(F, hf, cubic, tuple(diag), normal,
                      tuple(tuple(row) for row in lam), witness, tails)


def normalize_socle3(F):
    """Normal form F3(y_1..y_n) + sum lambda_k y_k^2 for HF {1,m,n,1}, with its witness."""
    return _normalize(F, _THM_NORMAL)


def canonical_grading_witness(F):
    """(phi, u) with F = phi*(u o F3) and phi(x_j) = x_j + quadratic terms.

    Requires HF(F) = {1,n,n,1} with n = number of variables.
    """
    if not isinstance(F, DualPoly) or F.is_zero():
        raise DomainError("input must be a nonzero dual polynomial", _THM_GRADED)
    hf = hilbert_function(F)
    n = F.nvars
    if hf != (1, n, n, 1):
        raise DomainError(f"Hilbert function {list(hf)} is not {{1,{n},{n},1}}", _THM_GRADED)
    return _normalize(F, _THM_GRADED).witness


# -- isomorphism decision -------------------------------------------------

class IsoStatus(enum.Enum):
    Isomorphic = "Isomorphic"
    NotIsomorphic = "NotIsomorphic"
    Undecided = "Undecided"


@dataclass(frozen=True)
class IsoDecision:
    status: IsoStatus
    reason: str
    invariants: dict = field(default_factory=dict)

    def __bool__(self):
        return self.status is IsoStatus.Isomorphic


def essential_form(F3):
    """F3 rewritten in its essential variables (a cubic in rank-many variables)."""
    _check_cubic_form(F3)
    m = F3.nvars
    kernel = _kernel_forms(F3)
    n = m - len(kernel)
    P = transpose(_complete_basis(kernel, m) + kernel)
    return F3.linear_substitution(P).restrict(n)


def iso_socle3(F, G, witness=None):
    """Decide A_F ~ A_G for Gorenstein algebras with HF {1,m,n,1} (over the algebraic closure)."""
    for P in (F, G):
        if not isinstance(P, DualPoly) or P.is_zero() or P.degree != 3:
            raise DomainError("both inputs must be dual polynomials of degree 3")
    hf_f, hf_g = hilbert_function(F), hilbert_function(G)
    inv = {"hf": [list(hf_f), list(hf_g)]}
    for hf in (hf_f, hf_g):
        if len(hf) != 4 or hf[1] < hf[2]:
            raise DomainError(f"Hilbert function {list(hf)} is not of the form {{1,m,n,1}}, m >= n",
                              _THM_NORMAL)
    if hf_f != hf_g:
        return IsoDecision(IsoStatus.NotIsomorphic, "Hilbert functions differ", inv)
    if witness is not None and F.nvars == G.nvars and verify_iso(F, G, witness):
        return IsoDecision(IsoStatus.Isomorphic, "supplied witness verifies", inv)
    n = hf_f[2]
    cf, cg = essential_form(F.top_form()), essential_form(G.top_form())
    if n == 1:
        return IsoDecision(IsoStatus.Isomorphic, "equal Hilbert functions with n = 1", inv)
    from .cubics import classify_binary_cubic, classify_ternary_cubic

    if n == 2:
        kf, kg = classify_binary_cubic(cf), classify_binary_cubic(cg)
        inv["types"] = [kf.name, kg.name]
    elif n == 3:
        kf, kg = classify_ternary_cubic(cf), classify_ternary_cubic(cg)
        inv["types"] = [kf.label(), kg.label()]
    else:
        inv["delta_rank"] = [delta_matrix(cf).rank, delta_matrix(cg).rank]
        return IsoDecision(IsoStatus.Undecided,
                           "projective equivalence of cubics in n >= 4 variables is not decided",
                           inv)
    if kf == kg:
        return IsoDecision(IsoStatus.Isomorphic, "top forms are projectively equivalent", inv)
    return IsoDecision(IsoStatus.NotIsomorphic, "top forms are not projectively equivalent", inv)
