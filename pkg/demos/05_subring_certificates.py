"""
Subring certificates
====================

The inhomogeneous pipeline looks for a subring containing A. The unital
homogeneous pipeline looks for a dilate a.S of a subring.
"""

# %%
from sumprod import (
    RSet,
    SrConfig,
    homogeneous_structure_invertible,
    inhomogeneous_structure,
    ring_from_name,
    validate_certificate,
)

gf9 = ring_from_name("gf9")
cfg = SrConfig(threshold_override=5)

A = RSet.from_indices(gf9, [1, 2])
cert = inhomogeneous_structure(A, cfg=cfg)
print(cert.to_dict(), "valid:", validate_certificate(A, cert))

# %%
# {α, 2α} is not inside a proper subring but it is α times F_3.
B = RSet.from_indices(gf9, [3, 6])
cert = homogeneous_structure_invertible(B, a=3, cfg=cfg)
print(cert.to_dict(), "valid:", validate_certificate(B, cert))

# %%
# The diagonal of F5 x F5 is itself a subring.
f55 = ring_from_name("f5xf5")
D = RSet.from_indices(f55, [0, 6, 12, 18, 24])
print(inhomogeneous_structure(D).to_dict())
