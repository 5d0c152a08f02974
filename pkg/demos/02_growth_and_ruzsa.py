"""
Growth and Ruzsa calculus
=========================

Compare a progression with a random set of the same size in Z/101 and run
the covering lemma and the triangle inequality on them.
"""

# %%
import numpy as np

from sumprod import RSet, growth_report, plunnecke_check, ring_from_name, ruzsa_cover, triangle_check, validate_cover

r = ring_from_name("z101")
progression = RSet.from_indices(r, [3 * i for i in range(10)])
rng = np.random.default_rng(7)
scattered = RSet.from_indices(r, rng.choice(101, 10, replace=False))

# %%
# A progression barely grows; a random set nearly squares.
for name, A in [("progression", progression), ("random", scattered)]:
    rep = growth_report(A)
    print(f"{name:12s} |A+A| = {rep.sumset:3d}  |A.A| = {rep.product:3d}  K_inhom = {rep.K_inhom}")

# %%
# Cover the random set by translates of progression - progression.
w = ruzsa_cover(scattered, progression)
print("X =", w.X.tolist(), " bound |A+B|/|B| =", w.bound, " valid:", validate_cover(scattered, progression, w))

# %%
# Triangle inequality and a Plünnecke budget.
print(triangle_check(progression, scattered, progression).to_dict())
print(plunnecke_check(progression, progression, 2, 2).to_dict())
