"""Time the compiled elimination kernel against the pure-Python one.

    python3 benchmarks/bench_kernels.py [--repeat N]

Matrices come from real workloads: annihilator matrices of random dual
generators and Jacobian-ideal matrices of ternary cubics.
"""

import argparse
import random
import timeit

from macinv import _kernels_py
from macinv.instances import random_dual, random_invertible
from macinv.poly import DualPoly, contract_monomial, monomial_basis, monomial_index, monomials_of_degree

try:
    from macinv import _kernels
except ImportError:
    _kernels = None


def _integral(rows):
    from math import lcm

    out = []
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
    return out


def annihilator_matrix(F):
    m, s = F.nvars, F.degree
    cols = monomial_basis(m, s)
    idx = monomial_index(m, s)
    mat = [[0] * len(cols) for _ in cols]
    for j, a in enumerate(cols):
        for e, c in contract_monomial(a, F).terms.items():
            mat[idx[e]][j] = c
    return _integral(mat)


def jacobian_matrix(F, d=8):
    cols = monomials_of_degree(3, d)
    rows = []
    for b in monomials_of_degree(3, d - 2):
        mon = DualPoly.monomial(b)
        for j in range(3):
            rows.append((mon * F.derivative(j)).coefficient_vector(cols))
    return _integral(rows)


def workloads(seed=0):
    rng = random.Random(seed)
    yield "annihilator m=3 s=4", [annihilator_matrix(random_dual(rng, 3, 4, density=0.8)) for _ in range(5)]
    yield "annihilator m=4 s=3", [annihilator_matrix(random_dual(rng, 4, 3, density=0.8)) for _ in range(5)]
    cusp = DualPoly(3, {(0, 2, 1): 1, (3, 0, 0): -1})
    yield "jacobian d=8 (model)", [jacobian_matrix(cusp)]
    yield "jacobian d=8 (moved)", [jacobian_matrix(cusp.linear_substitution(random_invertible(rng, 3)))]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'workload':26} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, mats in workloads():
        def run(kernel):
            for a in mats:
                kernel.rref_int(a, len(a[0]))

        py = min(timeit.repeat(lambda: run(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if _kernels is None:
            print(f"{name:26} {py:12.2f} {'n/a':>12} {'-':>8}")
            continue
        for a in mats:
            assert _kernels.rref_int(a, len(a[0])) == _kernels_py.rref_int(a, len(a[0]))
        cy = min(timeit.repeat(lambda: run(_kernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:26} {py:12.2f} {cy:12.2f} {py / cy:8.2f}x")


if __name__ == "__main__":
    main()
