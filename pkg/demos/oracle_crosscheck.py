"""
Cross-checking against classical constructions
==============================================

Random integer binary forms are run through the trace formula, the
Sylvester determinant and a floating-point root product. The ratios
are tallied per degree profile.
"""

import random
from collections import Counter

from reskit import (PolySystem, Polynomial, numeric_root_product, resultant,
                    sylvester_resultant)
from reskit.oracles import relative_error

rng = random.Random(0)


def binary_form(r):
    # keep the x2^r coefficient non-zero so the root product is defined
    terms = {(r - j, j): rng.randint(-5, 5) for j in range(r)}
    terms[(0, r)] = rng.choice([-1, 1]) * rng.randint(1, 5)
    return Polynomial(2, r, terms)


tally = Counter()
worst = 0.0
for r1 in range(1, 5):
    for r2 in range(1, 5):
        for _ in range(10):
            f1, f2 = binary_form(r1), binary_form(r2)
            exact = resultant(PolySystem([f1, f2]))
            oracle = sylvester_resultant(f1, f2)
            tally[(r1, r2), "equal" if exact == oracle else "different"] += 1
            if exact:
                worst = max(worst, relative_error(numeric_root_product(f1, f2), exact))

for key, count in sorted(tally.items()):
    print(key, count)
print("largest relative error of the root product:", worst)
