"""
Finite rings and their subsets
==============================

Every ring is a set of indices 0..N-1 with 0 as the additive zero. Sets are
boolean masks over those indices, so sumsets and product sets are a few
numpy operations.
"""

# %%
# Build a few rings from catalog shorthands.
from sumprod import RSet, check_ring_axioms, classify_non_zero_divisors, ring_from_name, units

gf9 = ring_from_name("gf9")
m2 = ring_from_name("m2f2")
print(gf9, m2)

# %%
# GF(9) is F_3[α]/(α²+1). Index 3 is α, and α² is -1.
alpha = gf9.parse_element("α")
print("α =", alpha, " α² =", gf9.format_element(gf9.mul(alpha, alpha)))

# %%
# The axiom checker scans every triple for rings this small.
rep = check_ring_axioms(m2)
print("M2(F2) axioms ok:", rep.ok, " commutative:", rep.commutative)

# %%
# Non-zero-divisors and units agree in a finite ring with identity.
print("units of M2(F2):", units(m2).tolist())
print("R^*:", classify_non_zero_divisors(m2).tolist())

# %%
# Set arithmetic uses the ordinary operators.
A = RSet.from_indices(gf9, [1, alpha])
print("A      =", A)
print("A + A  =", A + A)
print("A * A  =", A * A)
print("A - A  =", A - A)
