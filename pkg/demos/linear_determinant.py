"""
Linear forms: the resultant is a determinant
=============================================

For n linear forms the resultant is the determinant of the coefficient
matrix. This script computes it symbolically through traces and checks it
against the classical determinant.
"""

from reskit import (ParamPoly, PolySystem, Polynomial, build_trace_table, determinant_resultant,
                    parse_polynomial, resultant)

# Two generic linear forms in x1, x2 with symbolic coefficients.
names = ["a", "b", "c", "d"]
system = PolySystem([
    parse_polynomial("a*x1 + b*x2", 2, names),
    parse_polynomial("c*x1 + d*x2", 2, names),
])

# The trace table is tiny here: indices run over {0,1}^2.
table = build_trace_table(system)
for k, value in table.items():
    print(f"T{list(k)} = {value}")

# Recombining the traces gives ad - bc.
value = resultant(system)
print("resultant:", value)
print("determinant:", determinant_resultant(system))

# The same holds for a numeric 4x4 system.
rows = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 1, 1, 4], [-3, 0, 2, 1]]
unit = [tuple(int(i == j) for j in range(4)) for i in range(4)]
numeric = PolySystem([Polynomial(4, 1, dict(zip(unit, row))) for row in rows])
print("4x4:", resultant(numeric), "vs", determinant_resultant(numeric))
assert resultant(numeric) == determinant_resultant(numeric)
a, b, c, d = ParamPoly.gens(names)
assert value == a * d - b * c
