"""
Merging positioned groups
=========================

After mapping, every song carries a real position. Merging sorts all songs
by position, breaking exact ties by group id and then by the song's rank
within its group. Three strategies give identical results.
"""
import numpy as np

from cdshuffle.core import Item, PositionedItem
from cdshuffle.merge import float_key, merge_comparison, merge_kway, merge_radix

# Floats map to unsigned integers with the same order, so a radix sort works.
for x in (-2.5, -1e-300, -0.0, 0.0, 1e-300, 3.0):
    print(f"{x:>8}: {float_key(x):#018x}")

rng = np.random.default_rng(2)
groups = []
for gid, n in enumerate([3, 2, 4]):
    pos = np.sort(rng.choice([-0.5, 0.0, 0.5], n))  # plenty of exact ties
    groups.append([PositionedItem(Item(gid, f"g{gid}s{i}", i), float(pos[i]), i) for i in range(n)])

for merge in (merge_comparison, merge_kway, merge_radix):
    print(f"{merge.__name__:>16}:", " ".join(it.item_id for it in merge(groups)))
