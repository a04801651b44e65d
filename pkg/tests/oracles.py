"""Brute-force reference implementations, deliberately naive and independent
of the package's search and colouring code.  Only the Digraph accessors
``n``, ``arcs`` are used."""

from __future__ import annotations

import itertools

import numpy as np


def adjacency(D) -> np.ndarray:
    A = np.zeros((D.n, D.n), dtype=bool)
    for u, v in D.arcs():
        A[u, v] = True
    return A


def all_injective_maps(n: int, k: int) -> np.ndarray:
    if k > n:
        return np.zeros((0, k), dtype=np.int64)
    return np.array(list(itertools.permutations(range(n), k)), dtype=np.int64).reshape(-1, k)


def cycle_map_ok(A: np.ndarray, word: str, maps: np.ndarray) -> np.ndarray:
    """Row mask of maps under which every arc of the cyclic word is present."""
    k = len(word)
    ok = np.ones(len(maps), dtype=bool)
    for i, s in enumerate(word):
        a, b = maps[:, i], maps[:, (i + 1) % k]
        ok &= A[a, b] if s == "F" else A[b, a]
    return ok


def brute_contains(D, word: str) -> bool:
    """Does some injective map of the cyclic word into D preserve all arcs?"""
    if len(word) > D.n:
        return False
    maps = all_injective_maps(D.n, len(word))
    return bool(cycle_map_ok(adjacency(D), word, maps).any())


def brute_family_free(D, k: int) -> bool:
    """No directed cycle of length 2..k and no single-flip cycle of length 3..k."""
    for j in range(2, k + 1):
        if brute_contains(D, "F" * j):
            return False
        if j >= 3 and brute_contains(D, "F" * (j - 1) + "B"):
            return False
    return True


def _undirected(D, vertices) -> dict[int, set[int]]:
    vs = set(vertices)
    nb = {v: set() for v in vs}
    for u, v in D.arcs():
        if u in vs and v in vs:
            nb[u].add(v)
            nb[v].add(u)
    return nb


def colorable(D, vertices, q: int) -> bool:
    """Plain backtracking: can the underlying graph on ``vertices`` be q-coloured?"""
    vs = sorted(vertices)
    nb = _undirected(D, vs)
    col: dict[int, int] = {}

    def go(i: int) -> bool:
        if i == len(vs):
            return True
        v = vs[i]
        taken = {col[u] for u in nb[v] if u in col}
        # symmetry: never open more than one new colour at a time
        top = max(col.values(), default=-1) + 1
        for c in range(min(q, top + 1)):
            if c in taken:
                continue
            col[v] = c
            if go(i + 1):
                return True
            del col[v]
        return False

    return go(0)


def brute_chi(D, vertices=None) -> int:
    vs = list(range(D.n)) if vertices is None else list(vertices)
    q = 0
    while not colorable(D, vs, q):
        q += 1
    return q


def brute_cohesive(D, X, c, r: int) -> bool:
    """Every v in X: chi(X minus the r-in-dominators of N+(v)) <= c * chi(X)."""
    X = set(X)
    out = {v: set() for v in range(D.n)}
    for u, v in D.arcs():
        out[u].add(v)
    chi_x = brute_chi(D, X)
    for v in X:
        S = out[v]
        dominators = {u for u in range(D.n) if u not in S and len(out[u] & S) >= r}
        if brute_chi(D, X - dominators) > c * chi_x:
            return False
    return True
