"""
Structured sets S_r
===================

S_r collects the x for which x.A + r.A stays small. In GF(9) with A the
prime field the unit set recovers F_3 at threshold 5.
"""

# %%
from sumprod import UNIT, RSet, SrConfig, compute_sr, ring_from_name, verify_sr_properties

gf9 = ring_from_name("gf9")
A = RSet.from_indices(gf9, [0, 1, 2])
cfg = SrConfig(threshold_override=5)

S = compute_sr(A, 1, UNIT, cfg)
print("S_unit =", S.members)

# %%
# Check the structural properties on the scope {1, 2}.
rep = verify_sr_properties(A, 1, cfg, scope=[1, 2])
for key, prop in rep.properties.items():
    print(f"{key:>4s} {prop.name:32s} passed={prop.passed}")

# %%
# Raising the threshold past |R| makes every S_r the whole ring.
print(compute_sr(A, 1, UNIT, SrConfig(threshold_override=9)).to_dict())
