"""Independent sympy-based oracles shared by several test modules."""

import sympy

from macinv.instances import random_invertible

Y = sympy.symbols("y1:4")


def to_sympy(F):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([y ** k for y, k in zip(Y, e)])
               for e, c in F.terms.items())


def groebner_profile(F, rng):
    """(colength, point count) of the singular scheme from an affine chart.

    A random change of coordinates keeps every singular point off y3 = 0;
    the chart y3 = 1 then carries the whole scheme, the colength is the
    number of standard monomials of a Groebner basis, and the points are
    the distinct solutions.
    """
    while True:
        A = random_invertible(rng, 3, -3, 3)
        G = to_sympy(F.linear_substitution(A))
        parts = [sympy.diff(G, y) for y in Y]
        at_infinity = sympy.solve([p.subs(Y[2], 0) for p in parts], Y[:2], dict=True)
        if all(all(v == 0 for v in sol.values()) and len(sol) == 2 for sol in at_infinity):
            break
    affine = [sympy.expand(p.subs(Y[2], 1)) for p in parts]
    gb = sympy.groebner(affine, Y[0], Y[1], order="grevlex")
    leads = [sympy.Poly(g, Y[0], Y[1]).monoms(order="grevlex")[0] for g in gb.exprs]
    count = 0
    for a in range(12):
        for b in range(12):
            if not any(a >= l[0] and b >= l[1] for l in leads):
                count += 1
    points = sympy.solve(affine, Y[0], Y[1], dict=True)
    return count, len({(sol[Y[0]], sol[Y[1]]) for sol in points})
