"""
The model ring of a set without identity
========================================

A = {α, 2α} in GF(9) generates graded groups G_n = <A^n>. They stabilise
at three elements and carry a ring structure with φ the identity.
"""

# %%
from sumprod import RSet, build_freiman_model, compute_graded_groups, ring_from_name

gf9 = ring_from_name("gf9")
A = RSet.from_indices(gf9, [3, 6])
gg = compute_graded_groups(A)
print("sizes of G_1..G_7:", gg.sizes, " n0 =", gg.n0)

model = build_freiman_model(A, gg)
print("carrier:", model.carrier.tolist(), " identity (local):", model.identity)
print("multiplication table:\n", model.mul_table)
print("checks:", model.verification)

# %%
# In M2(F2) the twist φ is a genuine automorphism.
m2 = ring_from_name("m2f2")
B = RSet.from_indices(m2, [0, 6, 7])
mb = build_freiman_model(B)
print("|R0| =", mb.size, " φ =", mb.phi.tolist(), " ok:", mb.ok)
