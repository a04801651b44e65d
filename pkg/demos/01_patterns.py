#!/usr/bin/env python3

# Which orientations of a cycle are forced?
# Count the three classes for every cycle length up to 10.

import numpy as np

from orientlab import PatternClass, all_patterns, blocks, classify

ks = np.arange(3, 11)
classes = list(PatternClass)
table = np.zeros((len(ks), len(classes)), dtype=int)

for i, k in enumerate(ks):
    for p in all_patterns(int(k)):
        table[i, classes.index(classify(p))] += 1

print("k   " + "  ".join(f"{c.value:>14}" for c in classes))
for k, row in zip(ks, table):
    print(f"{k:<3} " + "  ".join(f"{x:>14}" for x in row))

# directed and single-flip cycles: exactly one and one per length (k >= 3)
assert (table[:, classes.index(PatternClass.DIRECTED_CYCLE)] == 1).all()
assert (table[:, classes.index(PatternClass.SINGLE_FLIP)] == 1).all()

# block structure of the forced ones at k = 6
for p in all_patterns(6):
    if classify(p) is PatternClass.ALWAYS_APPEARS:
        print(p.signs, list(blocks(p).block_lengths))
