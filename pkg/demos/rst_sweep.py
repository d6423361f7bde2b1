"""
Ages of prime-order quotient singularities
==========================================

Every fixed component of a prime-order nonsymplectic automorphism has a
local model (p, n, s, t, a_list).  The age of the generator never depends on
the a_j, because each pair (a, p+1-a) contributes exactly one to the sum.
We sweep a small range, then look at a case where a power of the generator
has smaller age than the generator itself.
"""

from collections import Counter

from logenriques.singular import (
    FixedComponentModel,
    age,
    classify_all_powers,
    classify_generator,
    enumerate_models,
    symbolic_age,
    weights_from_model,
)

# sweep p <= 7, n <= 5 and tally the classes
tally = Counter()
for p in (2, 3, 5, 7):
    for n in range(1, 6):
        if n % p == 0:
            continue  # K-trivial quotient, nothing to classify
        for m in enumerate_models(p, n):
            assert age(weights_from_model(m)) == symbolic_age(p, n, m.s)
            tally[classify_generator(m).value] += 1
print("generator classes over p <= 7, n <= 5:", dict(tally))

# a single model in detail
m = FixedComponentModel(5, 3, 1, 1, [2])
w = weights_from_model(m)
print()
print("model", tuple(m), "weights", list(w.exps), "age", age(w))

# the generator (weights 2, 4) is terminal, yet phi^3 has weights (1, 2) of age 3/5
m = FixedComponentModel(5, 1, 0, 1, [2])
rep = classify_all_powers(m)
print()
print("generator:", rep.generator_class.value, "age", rep.generator_age)
k = rep.ages.index(rep.min_age_over_powers) + 1
print("worst power: phi^%d," % k, rep.all_powers_class.value, "age", rep.min_age_over_powers)
print("discrepancy between generator and all powers:", rep.discrepancy)
