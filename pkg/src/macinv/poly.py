"""Sparse exact polynomials in the series variables x and the dual variables y.

Exponent vectors are plain tuples of ints. Monomials are ordered by
total degree first, then lexicographically with variable 1 most
significant, so in two variables the degree-two block reads
``x1^2, x1*x2, x2^2``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm, prod
from types import MappingProxyType


def deglex_key(a):
    return (sum(a), tuple(-e for e in a))


@lru_cache(maxsize=None)
def monomials_of_degree(m, d):
    """All exponent vectors of length ``m`` and degree ``d``, in deg-lex order."""
    if m == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(m - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_basis(m, s):
    """Exponent vectors of degree <= s in deg-lex order; ``comb(m + s, s)`` of them."""
    if m < 1 or s < 0:
        raise ValueError("need m >= 1 and s >= 0")
    out = []
    for d in range(s + 1):
        out.extend(monomials_of_degree(m, d))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(m, s):
    return MappingProxyType({a: i for i, a in enumerate(monomial_basis(m, s))})


def unit_vector(m, j, k=1):
    return tuple(k if i == j else 0 for i in range(m))


def multi_factorial(a):
    return prod(factorial(e) for e in a)


def multi_binomial(b, a):
    """prod_i binom(b_i, a_i), zero unless b >= a componentwise."""
    out = 1
    for bi, ai in zip(b, a):
        if ai > bi:
            return 0
        out *= comb(bi, ai)
    return out


def falling_factorial(b, a):
    """prod_i b_i! / (b_i - a_i)!, the scalar in d^a/dy^a (y^b); zero unless b >= a."""
    out = 1
    for bi, ai in zip(b, a):
        if ai > bi:
            return 0
        out *= perm(bi, ai)
    return out


def _fmt_coeff(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class _Poly:
    """Shared machinery; use :class:`DualPoly` or :class:`Jet`."""

    __slots__ = ("nvars", "_terms", "_hash")
    letter = "?"

    def __init__(self, nvars, terms=()):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        items = terms.items() if hasattr(terms, "items") else terms
        clean = {}
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != nvars or any(v < 0 for v in e):
                raise ValueError(f"bad exponent {e} for {nvars} variables")
            clean[e] = clean.get(e, 0) + Fraction(c)
        self.nvars = nvars
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms, **kw):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        for k, v in kw.items():
            setattr(obj, k, v)
        return obj

    def _like(self, terms):
        return type(self)._raw(self.nvars, terms)

    # -- access ---------------------------------------------------------
    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        """Terms by decreasing degree, deg-lex order within a degree (x1^2 before x1*x2)."""
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), deglex_key(t[0])[1]))

    def coefficient(self, e):
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self):
        return not self._terms

    @property
    def degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def order(self):
        """Lowest degree of a term; -1 for zero."""
        return min((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d):
        return self._like({e: c for e, c in self._terms.items() if sum(e) == d})

    def top_form(self):
        return self.homogeneous_part(self.degree)

    def truncated(self, d):
        """Terms of degree <= d."""
        return self._like({e: c for e, c in self._terms.items() if sum(e) <= d})

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def used_variables(self):
        return sorted({i for e in self._terms for i, v in enumerate(e) if v})

    def coefficient_vector(self, columns):
        index = {a: i for i, a in enumerate(columns)}
        vec = [Fraction(0)] * len(columns)
        for e, c in self._terms.items():
            vec[index[e]] = c
        return vec

    @classmethod
    def from_vector(cls, nvars, columns, vec, **kw):
        return cls._raw(nvars, {a: Fraction(c) for a, c in zip(columns, vec) if c}, **kw)

    @classmethod
    def monomial(cls, e, coeff=1, **kw):
        e = tuple(e)
        return cls(len(e), {e: coeff}, **kw)

    @classmethod
    def variable(cls, nvars, j, **kw):
        return cls.monomial(unit_vector(nvars, j), **kw)

    @classmethod
    def constant(cls, nvars, c=1, **kw):
        return cls(nvars, {(0,) * nvars: c}, **kw)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.constant(self.nvars, other) if other else self._like({})
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._combine(other, out)

    __radd__ = __add__

    def _combine(self, other, terms):
        return self._like(terms)

    def __neg__(self):
        return self._like({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k):
        k = Fraction(k)
        if not k:
            return self._like({})
        return self._like({e: c * k for e, c in self._terms.items()})

    def _mul_terms(self, other, bound=None):
        out = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                if bound is not None and sum(e) > bound:
                    continue
                out[e] = out.get(e, 0) + ca * cb
        return {e: c for e, c in out.items() if c}

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return self._combine(other, self._mul_terms(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.constant(self.nvars, 1)
        out = self._combine(self, out._terms)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        if type(other) is not type(self):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- text -------------------------------------------------------------
    def to_text(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"{self.letter}{i + 1}" + (f"^{v}" if v > 1 else "")
                for i, v in enumerate(e)
                if v
            )
            mag = abs(c)
            if not mono:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"{type(self).__name__}({self.nvars}, {self.to_text()!r})"


class DualPoly(_Poly):
    """Element of the dual ring K[y1..ym], stored in the plain monomial basis."""

    __slots__ = ()
    letter = "y"

    def derivative(self, j):
        out = {}
        for e, c in self._terms.items():
            if e[j]:
                f = e[:j] + (e[j] - 1,) + e[j + 1:]
                out[f] = c * e[j]
        return self._like(out)

    def dual_coefficients(self):
        """Coordinates in the divided-power basis y^b / b!, i.e. {b: c * b!}."""
        return {e: c * multi_factorial(e) for e, c in self._terms.items()}

    @classmethod
    def from_dual_coefficients(cls, nvars, coeffs):
        return cls(nvars, {e: Fraction(c) / multi_factorial(e) for e, c in coeffs.items()})

    def dual_vector(self, s=None):
        """Row vector of coordinates in the dual monomial basis of P_{<=s}."""
        s = self.degree if s is None else s
        idx = monomial_index(self.nvars, s)
        vec = [Fraction(0)] * len(idx)
        for e, c in self._terms.items():
            vec[idx[e]] = c * multi_factorial(e)
        return vec

    @classmethod
    def from_dual_vector(cls, nvars, s, vec):
        basis = monomial_basis(nvars, s)
        return cls._raw(nvars, {a: Fraction(c) / multi_factorial(a) for a, c in zip(basis, vec) if c})

    def linear_substitution(self, A):
        """Return G(A y): each y_j becomes sum_k A[j][k] y_k."""
        m = self.nvars
        if len(A) != m or any(len(row) != m for row in A):
            raise ValueError("substitution matrix must be square of size nvars")
        forms = [DualPoly(m, {unit_vector(m, k): A[j][k] for k in range(m) if A[j][k]}) for j in range(m)]
        powers = [[DualPoly.constant(m)] for _ in range(m)]
        out = DualPoly(m)
        for e, c in self._terms.items():
            term = DualPoly.constant(m, c)
            for j, v in enumerate(e):
                while len(powers[j]) <= v:
                    powers[j].append(powers[j][-1] * forms[j])
                term = term * powers[j][v]
            out = out + term
        return out

    def embed(self, m):
        """Same polynomial viewed in m >= nvars variables."""
        if m < self.nvars:
            raise ValueError("cannot embed into fewer variables")
        pad = (0,) * (m - self.nvars)
        return DualPoly._raw(m, {e + pad: c for e, c in self._terms.items()})

    def restrict(self, n):
        """Drop trailing variables; they must not occur."""
        if any(any(e[n:]) for e in self._terms):
            raise ValueError(f"polynomial uses variables beyond y{n}")
        return DualPoly._raw(n, {e[:n]: c for e, c in self._terms.items()})


class Jet(_Poly):
    """Element of K[[x1..xm]] truncated above degree ``bound`` (None: no truncation)."""

    __slots__ = ("bound",)
    letter = "x"

    def __init__(self, nvars, terms=(), bound=None):
        super().__init__(nvars, terms)
        self.bound = bound
        if bound is not None:
            self._terms = {e: c for e, c in self._terms.items() if sum(e) <= bound}

    @classmethod
    def _raw(cls, nvars, terms, bound=None):
        return super()._raw(nvars, terms, bound=bound)

    def _like(self, terms):
        return Jet._raw(self.nvars, terms, bound=self.bound)

    def _combine(self, other, terms):
        bound = _min_bound(self.bound, getattr(other, "bound", None))
        if bound is not None:
            terms = {e: c for e, c in terms.items() if sum(e) <= bound}
        return Jet._raw(self.nvars, terms, bound=bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        bound = _min_bound(self.bound, other.bound)
        return Jet._raw(self.nvars, self._mul_terms(other, bound), bound=bound)

    def with_bound(self, s):
        return Jet(self.nvars, self._terms, bound=s)

    def embed(self, m):
        """Same series viewed in m >= nvars variables."""
        if m < self.nvars:
            raise ValueError("cannot embed into fewer variables")
        pad = (0,) * (m - self.nvars)
        return Jet._raw(m, {e + pad: c for e, c in self._terms.items()}, bound=self.bound)

    def compose(self, images, bound=None):
        """Substitute x_j -> images[j], truncating above ``bound``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars
        bound = self.bound if bound is None else bound
        one = Jet.constant(m, 1, bound=bound)
        powers = [[one] for _ in images]
        out = Jet(m, bound=bound)
        for e, c in self._terms.items():
            term = one.scale(c)
            for j, v in enumerate(e):
                while len(powers[j]) <= v:
                    powers[j].append(powers[j][-1] * images[j].with_bound(bound))
                term = term * powers[j][v]
            out = out + term
        return out


def _min_bound(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def contract(f, g):
    """Apolar action f o g = f(d/dy1, ..., d/dym)(g)."""
    if not isinstance(f, Jet) or not isinstance(g, DualPoly):
        raise TypeError("contract expects a series-side Jet and a DualPoly")
    if f.nvars != g.nvars:
        raise ValueError(f"variable-count mismatch: {f.nvars} vs {g.nvars}")
    out = {}
    for a, ca in f._terms.items():
        for b, cb in g._terms.items():
            k = falling_factorial(b, a)
            if k:
                e = tuple(x - y for x, y in zip(b, a))
                out[e] = out.get(e, 0) + ca * cb * k
    return DualPoly._raw(g.nvars, {e: c for e, c in out.items() if c})


def contract_monomial(a, g):
    """x^a o g for an exponent vector a."""
    out = {}
    for b, cb in g._terms.items():
        k = falling_factorial(b, a)
        if k:
            out[tuple(x - y for x, y in zip(b, a))] = cb * k
    return DualPoly._raw(g.nvars, out)


def pairing(f, g):
    """<f, g> = (f o g)(0)."""
    if not isinstance(f, Jet) or not isinstance(g, DualPoly):
        raise TypeError("pairing expects a Jet and a DualPoly")
    if f.nvars != g.nvars:
        raise ValueError(f"variable-count mismatch: {f.nvars} vs {g.nvars}")
    total = Fraction(0)
    for a, ca in f._terms.items():
        cb = g._terms.get(a)
        if cb:
            total += ca * cb * multi_factorial(a)
    return total
