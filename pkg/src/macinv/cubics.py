"""Binary and ternary cubic forms: classification, invariants, model algebras."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import lcm

from . import _upoly as up
from .errors import DomainError
from .grammar import parse_dual, parse_jet
from .linalg import determinant, rank
from .poly import DualPoly, monomials_of_degree, multi_factorial
from .socle3 import delta_matrix


def _check_form(F, nvars):
    if not isinstance(F, DualPoly):
        raise TypeError("expected a DualPoly")
    if F.nvars != nvars or F.is_zero() or F.degree != 3 or not F.is_homogeneous():
        raise DomainError(f"input must be a nonzero cubic form in {nvars} variables")


# -- binary cubics --------------------------------------------------------

class BinaryCubicClass(enum.Enum):
    PerfectCube = "PerfectCube"
    DoublePlusSimple = "DoublePlusSimple"
    ThreeDistinct = "ThreeDistinct"

    @property
    def degenerate(self):
        return self is BinaryCubicClass.PerfectCube


def binary_discriminant(F):
    _check_form(F, 2)
    a, b, c, d = (F.coefficient((3 - k, k)) for k in range(4))
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def classify_binary_cubic(F):
    _check_form(F, 2)
    if delta_matrix(F).rank == 1:
        return BinaryCubicClass.PerfectCube
    if binary_discriminant(F):
        return BinaryCubicClass.ThreeDistinct
    return BinaryCubicClass.DoublePlusSimple


# -- Aronhold invariants --------------------------------------------------

_SIGNED_PERMS = tuple(
    (p, 1 if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0 else -1)
    for p in permutations(range(3))
)

# bracket (abc) is the determinant of the symbolic coordinate vectors a, b, c
_S_BRACKETS = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
_T_BRACKETS = ((0, 1, 2), (0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5), (3, 4, 5))


@lru_cache(maxsize=None)
def _symbolic_expansion(brackets, nsym):
    """Product of brackets as {(exponents of each symbol): integer coefficient}."""
    zero = tuple((0, 0, 0) for _ in range(nsym))
    terms = {zero: 1}
    for br in brackets:
        new = {}
        for key, c in terms.items():
            for perm, sign in _SIGNED_PERMS:
                k = [list(e) for e in key]
                for sym, coord in zip(br, perm):
                    k[sym][coord] += 1
                kk = tuple(tuple(e) for e in k)
                new[kk] = new.get(kk, 0) + sign * c
        terms = {k: v for k, v in new.items() if v}
    return tuple(terms.items())


def _evaluate(brackets, nsym, F):
    # a symbol monomial a^g stands for the third derivative d^g F
    vals = {g: F.coefficient(g) * multi_factorial(g) for g in monomials_of_degree(3, 3)}
    den = lcm(*(v.denominator for v in vals.values()))
    D = {g: int(v * den) for g, v in vals.items()}
    total = 0
    for key, c in _symbolic_expansion(brackets, nsym):
        for g in key:
            x = D[g]
            if not x:
                break
            c *= x
        else:
            total += c
    return Fraction(total, den ** nsym)


def aronhold_invariants(F):
    """(S, T): S = (abc)(abd)(acd)(bcd), T = (abc)(abd)(ace)(bcf)(def)^2."""
    _check_form(F, 3)
    return _evaluate(_S_BRACKETS, 4, F), _evaluate(_T_BRACKETS, 6, F)


# Calibration constants; tests recompute both from their defining conditions.
DISCRIMINANT_RATIO = Fraction(1, 6)  # discriminant = T^2 - DISCRIMINANT_RATIO * S^3
J_SCALE = Fraction(-288)  # j = J_SCALE * S^3 / discriminant


def discriminant(F):
    S, T = aronhold_invariants(F)
    return T * T - DISCRIMINANT_RATIO * S ** 3


def j_invariant(F):
    S, T = aronhold_invariants(F)
    disc = T * T - DISCRIMINANT_RATIO * S ** 3
    if not disc:
        raise DomainError("the cubic curve is singular, j is undefined")
    return J_SCALE * S ** 3 / disc


def legendre_cubic(lam):
    """y2^2 y3 - y1 (y1 - y3)(y1 - lam y3)."""
    lam = Fraction(lam)
    if lam in (0, 1):
        raise DomainError("the Legendre cubic is singular for lambda in {0, 1}")
    return DualPoly(3, {
        (0, 2, 1): 1,
        (3, 0, 0): -1,
        (2, 0, 1): 1 + lam,
        (1, 0, 2): -lam,
    })


def legendre_j(lam):
    """256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)."""
    lam = Fraction(lam)
    if lam in (0, 1):
        raise DomainError("j is undefined for lambda in {0, 1}")
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)


def anharmonic_orbit(lam):
    lam = Fraction(lam)
    if lam in (0, 1):
        raise DomainError("lambda must avoid {0, 1}")
    return (lam, 1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam)


# -- singular cubics: Jacobian scheme profile ------------------------------

def _partials(F):
    return [F.derivative(j) for j in range(F.nvars)]


def jacobian_colengths(F, degrees=range(2, 11)):
    """{d: dim P_d / J_d} for the Jacobian ideal J of F."""
    parts = _partials(F)
    out = {}
    for d in degrees:
        cols = monomials_of_degree(3, d)
        vecs = []
        for b in monomials_of_degree(3, d - 2):
            mon = DualPoly.monomial(b)
            for p in parts:
                vecs.append((mon * p).coefficient_vector(cols))
        out[d] = len(cols) - (rank(vecs) if vecs else 0)
    return out


def _dehomogenized(g):
    # g(t, 1, z) as z-coefficients (c0, c1, c2), each a polynomial in t
    coeffs = [[], [], []]
    for e, c in g.terms.items():
        coeffs[e[2]] = up.add(coeffs[e[2]], [0] * e[0] + [c])
    return coeffs


def _quadratic_resultant(a, b):
    a0, a1, a2 = a
    b0, b1, b2 = b
    x = up.sub(up.mul(a2, b0), up.mul(a0, b2))
    y = up.sub(up.mul(a2, b1), up.mul(a1, b2))
    z = up.sub(up.mul(a1, b0), up.mul(a0, b1))
    return up.sub(up.mul(x, x), up.mul(y, z))


def _count_points_once(F, rng):
    while True:
        A = [[rng.randint(-40, 40) for _ in range(3)] for _ in range(3)]
        if determinant(A):
            break
    parts = _partials(F.linear_substitution(A))
    gs = []
    for _ in range(3):
        w = [rng.randint(-40, 40) for _ in range(3)]
        g = DualPoly(3)
        for wk, p in zip(w, parts):
            g = g + p.scale(wk)
        gs.append(_dehomogenized(g))
    if any(len(up.trim(g[2])) != 1 for g in gs):
        return None
    r12 = _quadratic_resultant(gs[0], gs[1])
    r13 = _quadratic_resultant(gs[0], gs[2])
    if up.degree(r12) < 4 or up.degree(r13) < 4:
        return None
    return up.degree(up.squarefree_part(up.gcd(r12, r13)))


def count_singular_points(F, seed=0, max_tries=200):
    """Number of distinct projective common zeros of the partials of F.

    Random projection with resultants; a draw is discarded when the chart or
    the projection is unlucky, and two accepted draws must agree.
    """
    rng = random.Random(seed)
    last = None
    for _ in range(max_tries):
        p = _count_points_once(F, rng)
        if p is None:
            continue
        if p == last:
            return p
        last = p
    raise RuntimeError("point count did not stabilize")


def jacobian_scheme_profile(F, seed=0):
    """(c, p): colength of the Jacobian scheme and its number of points."""
    _check_form(F, 3)
    if discriminant(F):
        raise DomainError("the cubic curve is smooth; its Jacobian scheme is empty")
    return _profile(F, seed)


def _profile(F, seed):
    cl = jacobian_colengths(F)
    if cl[9] != cl[10]:
        raise RuntimeError(f"Jacobian colength did not stabilize: {cl}")
    return cl[10], count_singular_points(F, seed)


# -- ternary classification -----------------------------------------------

class TernaryType(enum.Enum):
    ThreeLines = "ThreeLines"
    ConicTangentLine = "ConicTangentLine"
    ConicTransversalLine = "ConicTransversalLine"
    NodalIrreducible = "NodalIrreducible"
    CuspidalIrreducible = "CuspidalIrreducible"
    EllipticFermat = "EllipticFermat"
    EllipticGeneral = "EllipticGeneral"


_PROFILES = {
    (1, 1): TernaryType.NodalIrreducible,
    (2, 1): TernaryType.CuspidalIrreducible,
    (2, 2): TernaryType.ConicTransversalLine,
    (3, 3): TernaryType.ThreeLines,
    (3, 1): TernaryType.ConicTangentLine,
}


@dataclass(frozen=True)
class TernaryCubicClass:
    kind: TernaryType
    j: Fraction | None = None

    def label(self):
        if self.kind is TernaryType.EllipticGeneral:
            return f"EllipticGeneral(j={self.j})"
        return self.kind.value

    def __str__(self):
        return self.label()


def classify_ternary_cubic(F, seed=0):
    _check_form(F, 3)
    if delta_matrix(F).rank < 3:
        raise DomainError("degenerate ternary cubic: it is a form in fewer variables; "
                          "classify its essential form instead")
    S, T = aronhold_invariants(F)
    disc = T * T - DISCRIMINANT_RATIO * S ** 3
    if disc:
        j = J_SCALE * S ** 3 / disc
        if j == 0:
            return TernaryCubicClass(TernaryType.EllipticFermat, Fraction(0))
        return TernaryCubicClass(TernaryType.EllipticGeneral, j)
    profile = _profile(F, seed)
    try:
        return TernaryCubicClass(_PROFILES[profile])
    except KeyError:
        raise DomainError(f"unrecognized Jacobian profile {profile}") from None


# -- model algebras -------------------------------------------------------

@dataclass(frozen=True)
class ModelRow:
    key: str
    hilbert_function: tuple
    ideal: tuple
    dual: DualPoly
    label: str
    erratum: str | None = None

    @property
    def socle_bound(self):
        return self.dual.degree


def _row(key, hf, gens, F, label, nvars, erratum=None):
    s = parse_dual(F, nvars).degree
    return ModelRow(key, hf, tuple(parse_jet(g, nvars, bound=s) for g in gens),
                    parse_dual(F, nvars), label, erratum)


def legendre_ideal(lam):
    """(x1 x2, H1, H2), the annihilator of the Legendre cubic."""
    lam = Fraction(lam)
    legendre_cubic(lam)
    from .poly import Jet

    H1 = Jet(3, {(2, 0, 0): lam * lam, (1, 0, 1): lam * (1 + lam), (0, 0, 2): lam * lam - lam + 1},
             bound=3)
    H2 = Jet(3, {(0, 2, 0): lam * lam, (1, 0, 1): lam, (0, 0, 2): 1 + lam}, bound=3)
    return (Jet(3, {(1, 1, 0): 1}, bound=3), H1, H2)


def model_table(key=None, lam=2):
    """Model algebras: ideal generators, dual generator, geometric label.

    ``key`` filters by class name or by Hilbert function ('1,3,3,1').
    """
    rows = [
        _row("DoublePlusSimple", (1, 2, 2, 1), ["x1^3", "x2^2"], "y1^2*y2",
             "Double point plus a simple point", 2),
        _row("ThreeDistinct", (1, 2, 2, 1), ["x1*x2", "x1^3 + x2^3"], "y1^3 - y2^3",
             "Three distinct points", 2,
             "printed with x1^3 - x2^3, which maps y1^3 - y2^3 to 12; the sign is corrected"),
        _row("ThreeLines", (1, 3, 3, 1), ["x1^2", "x2^2", "x3^2"], "y1*y2*y3",
             "Three independent lines", 3),
        _row("ConicTangentLine", (1, 3, 3, 1),
             ["x1^2", "x1*x3", "x3*x2^2", "x2^3", "x3^2 + x1*x2"], "y2*(y1*y2 - y3^2)",
             "Conic and a tangent line", 3),
        _row("ConicTransversalLine", (1, 3, 3, 1), ["x1^2", "x2^2", "x3^2 + 6*x1*x2"],
             "y3*(y1*y2 - y3^2)", "Conic and a non-tangent line", 3,
             "dual generator printed in x-variables; read as a polynomial in y"),
        _row("NodalIrreducible", (1, 3, 3, 1), ["x3^2", "x1*x2", "x1^2 + x2^2 - 3*x1*x3"],
             "y2^2*y3 - y1^2*(y1 + y3)", "Irreducible nodal cubic", 3),
        _row("CuspidalIrreducible", (1, 3, 3, 1),
             ["x3^2", "x1*x2", "x1*x3", "x2^3", "x1^3 + 3*x2^2*x3"], "y2^2*y3 - y1^3",
             "Irreducible cuspidal cubic", 3),
        _row("EllipticFermat", (1, 3, 3, 1),
             ["x2*x3", "x1*x3", "x1*x2", "x2^3 - x3^3", "x1^3 - x3^3"], "y1^3 + y2^3 + y3^3",
             "Elliptic Fermat curve", 3),
        ModelRow("EllipticGeneral", (1, 3, 3, 1), legendre_ideal(lam), legendre_cubic(lam),
                 f"Elliptic non Fermat curve (lambda = {Fraction(lam)})"),
        _row("Graded22221", (1, 2, 2, 2, 1), ["x1^4", "x2^2"], "y1^3*y2",
             "HF {1,2,2,2,1}, isomorphic to its associated graded ring", 2),
        _row("NonGraded22221", (1, 2, 2, 2, 1), ["x1^4", "-x1^3 + x2^2"], "y1^3*y2 + y2^3",
             "HF {1,2,2,2,1}, not isomorphic to its associated graded ring", 2),
        _row("Quartic22221", (1, 2, 2, 2, 1), ["x1^2 + x2^2", "x2^4"], "y1*y2*(y1^2 - y2^2)",
             "HF {1,2,2,2,1}, graded, dual generator a product of four lines", 2),
    ]
    if key is None:
        return rows
    key = str(key).strip()
    if key.replace(" ", "").strip("{}") and all(ch in "0123456789, {}" for ch in key):
        hf = tuple(int(x) for x in key.strip("{} ").replace(" ", "").split(",") if x)
        out = [r for r in rows if r.hilbert_function == hf]
    else:
        out = [r for r in rows if r.key == key]
    if not out:
        raise DomainError(f"no model rows for {key!r}")
    return out

