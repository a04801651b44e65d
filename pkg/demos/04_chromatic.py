#!/usr/bin/env python3

# Shift digraphs: no long directed paths to speak of, yet the chromatic number grows.

import math

import numpy as np

from orientlab import chromatic_exact, gallai_roy_path, random_digraph, shift_digraph

for m in range(3, 11):
    r = chromatic_exact(shift_digraph(m, 2))
    print(f"S({m},2): {r.upper} colours (log2 m = {math.log2(m):.2f}), proved by {r.lower_by}, {r.nodes} nodes")

# every colouring from the level function is proper and the path is long
gaps = []
for seed in range(30):
    D = random_digraph(25, 0.2, seed=seed)
    path, levels = gallai_roy_path(D)
    chi = chromatic_exact(D).value
    gaps.append(len(path) - chi)
gaps = np.array(gaps)
print("path vertices minus chi: min", gaps.min(), "mean", gaps.mean().round(2), "max", gaps.max())
