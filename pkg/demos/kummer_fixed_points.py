"""
Fixed points on generalized Kummer varieties
============================================

An automorphism f(x, y) = (alpha x + u, beta y + v) of E1 x E2 acts on the
generalized Kummer variety Kum_n when (n+1)u and (n+1)v vanish.  The quotient
is smooth exactly when no point of Kum_n is fixed.  Reduced torsion
subschemes give a finite slice of Kum_n we can enumerate outright, which is
enough to spot fixed points but not to prove they are absent.
"""

from fractions import Fraction as F

from logenriques.abelian import (
    KummerScenario,
    SurfaceAffineAuto,
    brute_force_fixed_configurations,
    fixed_points_exist_on_surface,
    freeness_predicate,
    kummer_quotient_classification,
)

half = F(1, 2)

# the involution (-x + u, y + v) on a product of two generic curves
for u, v in [((0, 0), (half, 0)), ((half, 0), (half, 0)), ((half, 0), (0, 0))]:
    f = SurfaceAffineAuto.make("generic", "generic", "-1", "1", u=u, v=v)
    free = freeness_predicate(f, 1).free
    oracle = brute_force_fixed_configurations(f, 1, 4)
    print(f"u={f.u.fractions()}, v={f.v.fractions()}: criterion says free={free}, "
          f"{len(oracle.reduced)} reduced fixed configurations among {oracle.enumerated} at level 4")

# the last line shows fixed pairs {p, -p} even though the criterion calls it free
f = SurfaceAffineAuto.make("generic", "generic", "-1", "1", u=(half, 0))
p, q = brute_force_fixed_configurations(f, 1, 4).reduced[0].points
print("example fixed pair:", p.fractions(), q.fractions())

# on the surface itself: without eigenvalue 1 there is always a fixed point
print()
for c1, c2, m1, m2, u in [("generic", "generic", "-1", "1", (0, 0)),
                          ("generic", "eisenstein", "1", "w", (F(1, 3), 0)),
                          ("gauss", "eisenstein", "i", "w", (F(1, 3), 0))]:
    f = SurfaceAffineAuto.make(c1, c2, m1, m2, u=u)
    r = fixed_points_exist_on_surface(f)
    print(f"{f.describe()}: fixed point {r.exists}, elementary divisors {r.elementary_divisors}")

# a full classification report for the order-12 example on Kum_4
print()
f = SurfaceAffineAuto.make("gauss", "eisenstein", "i", "w")
rep = kummer_quotient_classification(KummerScenario(f, 4))
print(f"order {rep.order}, multiplier exponent {rep.multiplier_exponent}, "
      f"dim {rep.dim}, {rep.index.label()}")
for note in rep.notes:
    print("  note:", note)
