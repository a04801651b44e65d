"""Batch property suites behind ``orientlab suite``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .chromatic import chromatic_exact, greedy_clique, gallai_roy_path, is_proper
from .construct import blowup_cycle
from .digraph import Digraph, min_out_degree
from .pattern import CyclePattern
from .sample import random_digraph
from .search import contains_pattern, forbidden_family_check

SUITES = ("cloning", "gallai-roy", "blowup")


@dataclass
class SuiteReport:
    name: str
    params: dict
    passed: int = 0
    total: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passed == self.total and not self.failures

    def record(self, ok: bool, what: str) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(what)

    def summary(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}: {verdict} {self.passed}/{self.total} ({self.seconds:.2f}s) {ps}"


def family_clear(D: Digraph, k: int) -> bool:
    return all(o.exhaustive and not o.found for o in forbidden_family_check(D, k).values())


def sample_family_free(rng: np.random.Generator, n_max: int, k: int, tries: int = 10_000) -> Digraph:
    """Random sparse digraph on 3..n_max vertices with no directed or single-flip cycle up to ``k``."""
    for _ in range(tries):
        n = int(rng.integers(3, n_max + 1))
        p = float(rng.uniform(0.05, 0.3))
        D = random_digraph(n, p, seed=int(rng.integers(2**32)))
        if D.arc_count and family_clear(D, k):
            return D
    raise RuntimeError("could not sample a family-free digraph")


def run_cloning(trials: int = 200, seed: int = 7, n_max: int = 12, ks=(3, 4)) -> SuiteReport:
    """Cloning a vertex of a family-free digraph keeps it family-free."""
    rep = SuiteReport("cloning", {"trials": trials, "seed": seed, "n_max": n_max, "k": list(ks)})
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    for t in range(trials):
        k = ks[t % len(ks)]
        D = sample_family_free(rng, n_max, k)
        v = int(rng.integers(D.n))
        E = D.copy()
        E.clone(v)
        rep.record(family_clear(E, k), f"trial {t}: clone of {v} created a forbidden cycle (k={k})")
    rep.seconds = time.perf_counter() - t0
    return rep


def _is_directed_path(D: Digraph, path: list[int]) -> bool:
    return len(set(path)) == len(path) and all(D.has_arc(a, b) for a, b in zip(path, path[1:]))


def run_gallai_roy(n: int = 30, trials: int = 100, seed: int = 0) -> SuiteReport:
    """Level colouring is proper and the path has at least chi - 1 arcs."""
    rep = SuiteReport("gallai-roy", {"n": n, "trials": trials, "seed": seed})
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    for t in range(trials):
        size = int(rng.integers(1, n + 1))
        p = float(rng.uniform(0.05, 0.5))
        D = random_digraph(size, p, seed=int(rng.integers(2**32)))
        path, col = gallai_roy_path(D)
        chi = chromatic_exact(D).value
        ok = is_proper(D, col) and _is_directed_path(D, path) and len(path) >= chi
        rep.record(ok, f"trial {t}: n={size} p={p:.3f} path={len(path) - 1} arcs chi={chi}")
    rep.seconds = time.perf_counter() - t0
    return rep


def run_blowup(kmax: int = 6, blobs=(2, 3)) -> SuiteReport:
    """Cycle blow-ups: no short directed cycles, out-degree exactly the blob size, a blob-size clique."""
    rep = SuiteReport("blowup", {"kmax": kmax, "blobs": list(blobs)})
    t0 = time.perf_counter()
    for k in range(2, kmax + 1):
        for ell in blobs:
            D = blowup_cycle(k, ell)
            for j in range(2, k + 1):
                o = contains_pattern(D, CyclePattern("F" * j))
                rep.record(o.exhaustive and not o.found, f"k={k} blob={ell}: directed {j}-cycle found")
            rep.record(min_out_degree(D) == ell, f"k={k} blob={ell}: min out-degree {min_out_degree(D)}")
            rep.record(len(greedy_clique(D)) >= ell, f"k={k} blob={ell}: no clique of size {ell}")
    rep.seconds = time.perf_counter() - t0
    return rep


def run_suite(name: str, **kw) -> SuiteReport:
    if name == "cloning":
        return run_cloning(**kw)
    if name == "gallai-roy":
        return run_gallai_roy(**kw)
    if name == "blowup":
        return run_blowup(**kw)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
