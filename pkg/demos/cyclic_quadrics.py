"""
Three cyclic quadrics
=====================

A symbolic resultant for three ternary quadrics that share one parameter,
alpha, cross-checked against the Macaulay matrix construction.
"""

from reskit import PolySystem, degree_vector, macaulay_resultant, parse_coefficient, parse_polynomial, resultant

names = ["a", "b", "c", "alpha"]
system = PolySystem([parse_polynomial(t, 3, names) for t in (
    "a*x1^2 + alpha*x2*x3",
    "b*x2^2 + alpha*x1*x3",
    "c*x3^2 + alpha*x1*x2",
)])

# Each f_i enters the resultant with degree d_i = 8 / 2 = 4.
dv = degree_vector(system)
print("degree vector:", dv.d, "total", dv.total)

value = resultant(system)
print("R =", value)

# The Macaulay matrix at critical degree 4 has 15 rows; its quotient by the
# non-reduced minor is an independent route to the same polynomial.
oracle = macaulay_resultant(system)
print("Macaulay agrees:", oracle == value)

# With alpha = 0 the system is diagonal up to scaling, so R = a^4 b^4 c^4.
special = value.subs({"alpha": 0})
print("alpha -> 0:", special)
assert special == parse_coefficient("a^4*b^4*c^4", ("a", "b", "c"))

# Any point where a*b*c = -alpha^3 makes the system solvable.
print("a=b=1, c=-1, alpha=1:", value.subs({"a": 1, "b": 1, "c": -1, "alpha": 1}))
