"""Seeded random digraphs for experiments and suites."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .digraph import Digraph


class SamplingFailed(RuntimeError):
    pass


def random_digraph(
    n: int,
    p: float,
    seed: int = 0,
    min_out_fraction: Optional[float] = None,
    max_tries: int = 1000,
) -> Digraph:
    """Each ordered pair ``(u, v)``, ``u != v``, is an arc with probability ``p``.

    With ``min_out_fraction`` set, samples are redrawn (same generator stream)
    until every vertex has out-degree at least that fraction of ``n``.
    """
    if n < 0 or not 0 <= p <= 1:
        raise ValueError("need n >= 0 and 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    need = 0 if min_out_fraction is None else min_out_fraction * n
    for _ in range(max_tries):
        adj = rng.random((n, n)) < p
        np.fill_diagonal(adj, False)
        if n and adj.sum(axis=1).min() < need:
            continue
        D = Digraph(n)
        for u in range(n):
            heads = 0
            for v in np.flatnonzero(adj[u]):
                heads |= 1 << int(v)
            if heads:
                D.add_arcs_from(u, heads)
        return D
    raise SamplingFailed(
        f"no sample with min out-degree >= {min_out_fraction}*n in {max_tries} tries (n={n}, p={p})"
    )
