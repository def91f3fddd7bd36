"""
From traces to the resultant
============================

The resultant is read off from exp(-sum T_v lambda^v). This script shows
the first multi-Schur polynomials in formal trace symbols, then follows a
numeric pair of binary quadrics through the whole pipeline.
"""

from reskit import (ParamPoly, PolySystem, build_trace_table, degree_vector, mpq,
                    parse_polynomial, schur_direct, schur_recurrence, sylvester_resultant)
from reskit.traces import index_box

# Formal symbols T_i_j for a 2-variable table up to (2, 1).
bound = (2, 1)
names = ["T_%d_%d" % v for v in index_box(bound) if any(v)]
symbols = dict(zip((v for v in index_box(bound) if any(v)), ParamPoly.gens(names)))
symbols[(0, 0)] = mpq(0)
for k in [(1, 0), (2, 0), (2, 1)]:
    print(f"P{list(k)} =", schur_direct(symbols, k))

# A concrete system.
f1 = parse_polynomial("x1^2 - 3*x1*x2 + 2*x2^2", 2)
f2 = parse_polynomial("x1^2 + x1*x2 - x2^2", 2)
system = PolySystem([f1, f2])
dv = degree_vector(system)
table = build_trace_table(system)
print("non-zero traces:", len(table.nonzero()), "of", len(table))

# The recurrence fills every P_k in the box at once.
P = schur_recurrence(table, dv.d)
value = (-1) ** dv.total * P[dv.d]
print("R =", value, " Sylvester:", sylvester_resultant(f1, f2))
