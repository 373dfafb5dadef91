"""
Magmas, identities and duality
==============================

A magma here is just a Cayley table.  This walk-through loads a few named
tables, checks identities on them and looks at the mirror image of both.
"""

from magmakit import get_model, get_variety, parse_identity, satisfies
from magmakit.magma import dual_magma, format_magma, in_variety, violation

q = get_model("Q")
print(format_magma(q))

# Q is commutative, and its only nonzero product is 1*2 = 2*1 = 3
z = parse_identity("x*y = z*u")
print("Q satisfies", z, "?", satisfies(q, z))
print("first falsifying assignment:", violation(q, z))

# membership in a variety is the conjunction over its identities
print("Q in L1 and C:", in_variety(q, get_variety("L1_C")))

# transposing a table mirrors every identity it satisfies
lz = get_model("2_LZ")
print(format_magma(dual_magma(lz)))
print("mirror of xy = x is", parse_identity("y*x = x"),
      "and the transposed table satisfies it:", in_variety(dual_magma(lz), get_variety("RZ")))
