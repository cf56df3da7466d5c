"""Dense univariate polynomials over Q as coefficient lists, lowest degree first."""

from fractions import Fraction


def trim(p):
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_(p, q):
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    quot = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    while len(r) >= len(q):
        k = len(r) - len(q)
        f = r[-1] / q[-1]
        quot[k] = f
        r = trim([c - f * (q[i - k] if 0 <= i - k < len(q) else 0) for i, c in enumerate(r)])
    return trim(quot), r


def monic(p):
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def gcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def squarefree_part(p):
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    return monic(divmod_(p, gcd(p, derivative(p)))[0])
