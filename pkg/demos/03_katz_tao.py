"""
Extracting a good subset
========================

In a field every non-zero element is invertible, so the extraction always
returns a subset A' of A together with the pair-count evidence.
"""

# %%
from sumprod import RSet, katz_tao_extract, ring_from_name, validate_extraction

r = ring_from_name("z13")
A = RSet.from_indices(r, [1, 3, 4, 9, 10, 12])  # the non-zero squares, a multiplicative subgroup
out = katz_tao_extract(A)
print(out.to_dict())
print("validated:", validate_extraction(A, out.K, out))

# %%
# The pair counts always beat the Cauchy-Schwarz bound |A|^4 / |A.A|.
print(out.pair_count_total, ">=", out.cauchy_schwarz_bound)

# %%
# In F3 x F3 the differences of (1,1) and (2,1) vanish on the second factor,
# and the extraction stops in the zero-divisor branch instead.
p = ring_from_name("f3xf3")
B = RSet.from_indices(p, [p.parse_element("(1,1)"), p.parse_element("(2,1)")])
print(katz_tao_extract(B).to_dict())
