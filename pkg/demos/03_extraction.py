#!/usr/bin/env python3

# Pull forced orientations out of random dense digraphs and look at the traces.

from fractions import Fraction

import numpy as np

from orientlab import ExtractionFailed, ExtractionParams, extract_any, random_digraph
from orientlab.extract import route_for

D = random_digraph(40, 0.6, seed=3)
params = ExtractionParams.from_digraph(D, cap=Fraction(2, 5))
print(D, "epsilon", params.epsilon)

for word in ["FBFB", "FFBB", "FFFBBB", "FFBFFB"]:
    emb, trace = extract_any(D, word, params)
    print(f"{word:7} route {trace.route:13} phase {trace.phase:14} map {list(emb.map)}")
    if trace.sequence:
        print("        sequence", trace.sequence, "set sizes", [len(s) for s in trace.sets])
    for note in trace.notes:
        print("        -", note)

# the thresholds that would guarantee success are far away
t = trace.thresholds
print("three-block thresholds: n >=", t.min_n, " chi >=", t.min_chi)

# success rate against density
densities = np.linspace(0.15, 0.6, 10)
rates = []
for p in densities:
    hits = 0
    for seed in range(10):
        G = random_digraph(30, float(p), seed=seed)
        try:
            prm = ExtractionParams.from_digraph(G, cap=Fraction(2, 5), search_budget=200_000)
            extract_any(G, "FFBFFB", prm)
            hits += 1
        except (ExtractionFailed, ValueError):
            pass
    rates.append(hits / 10)
for p, r in zip(densities, rates):
    print(f"p={p:.2f}  {'#' * int(r * 20):20}  {r:.0%}")
print("route for FFBFFB:", route_for("FFBFFB"))
