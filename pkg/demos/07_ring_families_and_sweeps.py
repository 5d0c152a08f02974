"""
Ring families and sweeps
========================

Cyclic rings, products of fields and small algebras each get a dedicated
experiment. A sweep runs one recipe over many seeded instances.
"""

# %%
from sumprod import RSet, cyclic_ring_experiment, m2_annihilator_spaces, ring_from_name
from sumprod.harness import export_plot_data, sweep

z9 = ring_from_name("z9")
print(cyclic_ring_experiment(RSet.from_indices(z9, [0, 3, 6])).to_dict())
print(cyclic_ring_experiment(RSet.from_indices(z9, [1, 2, 4, 5, 7, 8])).details)

# %%
# The six maximal zero-divisor planes of M2(F2) are annihilators of lines.
for w in m2_annihilator_spaces(ring_from_name("m2f2")):
    print(f"{w.label:14s} V = {w.V.tolist()}")

# %%
# Sweep outputs depend only on the seed, never on the thread count.
res = sweep("hom-general", ["z7", "gf9", "m2f2"], "random:3", seed=3, count=4, threads=4)
print(export_plot_data(res))
