"""Slow, independent reference implementations used to check the library.

Nothing here imports the code under test except plain data types, so an
agreement between an oracle and the library is evidence for both.
"""

from fractions import Fraction
from functools import reduce
from itertools import combinations, combinations_with_replacement, product
from math import gcd

import numpy as np


def det(rows):
    """Determinant by Gaussian elimination over Q."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        for r in range(c + 1, n):
            q = a[r][c] / a[c][c]
            if q:
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
    res = sign * out
    assert res.denominator == 1
    return int(res)


def elementary_divisors(rows):
    """Invariant factors from determinantal divisors: d_k = D_k / D_(k-1).

    D_k is the gcd of all k x k minors.  Zero factors fill the tail.
    """
    n = len(rows)
    dk = [1]
    for k in range(1, n + 1):
        g = 0
        for ri in combinations(range(n), k):
            for ci in combinations(range(n), k):
                g = gcd(g, det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        dk.append(g)
    divs = [dk[i] // dk[i - 1] for i in range(1, len(dk))]
    return tuple(divs + [0] * (n - len(divs)))


def matmul_vec(rows, x, mod):
    return tuple(sum(a * b for a, b in zip(r, x)) % mod for r in rows)


def exhaustive_solutions(rows, t, mod):
    """All x in (Z/mod)^dim with rows @ x == t."""
    dim = len(rows)
    t = tuple(c % mod for c in t)
    return [x for x in product(range(mod), repeat=dim) if matmul_vec(rows, x, mod) == t]


def torus_fixed_points(linear, shift, level):
    """Points x of (1/level)Z^4/Z^4 with linear x + shift = x.

    ``shift`` is given in units of 1/level.
    """
    out = []
    for x in product(range(level), repeat=4):
        y = matmul_vec(linear, x, level)
        if all((yi + si - xi) % level == 0 for yi, si, xi in zip(y, shift, x)):
            out.append(x)
    return out


def torus_fixed_points_np(linear, shift, level):
    """Vectorized torus_fixed_points, returned as an (m, 4) integer array."""
    pts = np.array(list(product(range(level), repeat=4)), dtype=np.int64)
    lin = np.array(linear, dtype=np.int64) - np.eye(4, dtype=np.int64)
    ok = np.all((pts @ lin.T + np.array(shift, dtype=np.int64)) % level == 0, axis=1)
    return pts[ok]


def kummer_fixed_multisets(linear, shift, n, level):
    """Multisets of n+1 points of A[level] summing to 0 that the map permutes.

    Straight enumeration over sorted (n+1)-tuples; meant for tiny cases only.
    """
    pts = list(product(range(level), repeat=4))

    def image(x):
        y = matmul_vec(linear, x, level)
        return tuple((a + b) % level for a, b in zip(y, shift))

    found = []
    for combo in combinations_with_replacement(pts, n + 1):
        total = reduce(lambda acc, p: tuple((a + b) % level for a, b in zip(acc, p)), combo)
        if any(total):
            continue
        if sorted(image(p) for p in combo) == list(combo):
            found.append(combo)
    return found
