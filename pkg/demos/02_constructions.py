#!/usr/bin/env python3

# Dense digraphs of large chromatic number that avoid the unforced orientations.

import numpy as np

from orientlab import (
    CyclePattern,
    augmented_flip_free,
    balance_by_cloning,
    blowup_cycle,
    chromatic_bounds,
    contains_pattern,
    degree_histograms,
    forbidden_family_check,
    min_out_degree,
)
from orientlab.construct import audit_groups, doubling_schedule

# blow up a directed 5-cycle, blobs of size 3
D = blowup_cycle(4, 3)
print(D, "min out-degree", min_out_degree(D), "chi in", chromatic_bounds(D).lower, "..", chromatic_bounds(D).upper)
for j in range(2, 5):
    print(f"  directed {j}-cycle:", contains_pattern(D, CyclePattern("F" * j)))
print("  directed 5-cycle:", contains_pattern(D, CyclePattern("FFFFF")))

# the augmented shift construction (m = k = 3) has no 2-cycle, directed or transitive triangle
D, layout = augmented_flip_free(3, 3)
print(D, layout.sizes())
for p, outcome in forbidden_family_check(D, 3).items():
    print(f"  {p.signs:>4}: {outcome}")

# out-degrees are lopsided until the small groups are doubled up
outs, _ = degree_histograms(D)
print("  out-degree range", np.flatnonzero(outs).min(), "..", np.flatnonzero(outs).max())

print("doubling schedule", doubling_schedule(layout))
B, blay = balance_by_cloning(D, layout)
a = audit_groups(B, blay)
print(B, a.group_sizes)
print("  min out-degree", a.min_out_degree, "=", float(a.min_out_fraction), "of |V|, bound", 1 / 512)
print("  T -> CoreG", a.min_t_to_core, " CoreG -> S", a.min_core_to_s)

outs, _ = degree_histograms(B)
nz = np.flatnonzero(outs)
print("  out-degree range after cloning", nz.min(), "..", nz.max())

# cloning never creates a forbidden cycle
print("  still family-free:", all(not o.found for o in forbidden_family_check(B, 3).values()))
