"""
Index tables for purely nonsymplectic quotients
===============================================

A purely nonsymplectic automorphism of order d acting on a 2n-dimensional
IHS manifold gives a quotient whose canonical class has an index that depends
only on n mod d.  This script prints the table for a few orders and checks
the periodicity by eye.
"""

from logenriques.index import canonical_index, etale_chi_constraint, index_table

# one period of the table for each order
for d in (2, 3, 4, 6, 12):
    cells = []
    for n, res in index_table(d, 1, d):
        cells.append(f"{n}:{'K' if res.k_trivial else res.index}")
    print(f"d={d:>2}  " + "  ".join(cells))

# the index equals d exactly when gcd(n, d) = 1
print()
print("n=5, d=12 ->", canonical_index(5, 12).label())
print("n=6, d=12 ->", canonical_index(6, 12).label())

# an étale quotient needs d | n+1, and then the index is the full order
print()
for d in (2, 3, 4):
    ns = [n for n in range(1, 13) if etale_chi_constraint(n, d)]
    print(f"d={d}: étale-compatible n <= 12: {ns}, index {[canonical_index(n, d).index for n in ns]}")
