"""JSON certificates that can be replayed against the digraph file they describe.

A certificate file holds a header (schema, tool version, sha256 of the input
file bytes) and a list of entries.  Each entry has a ``kind`` and a
``payload``; :func:`replay` re-derives the verdict from the input alone.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .chromatic import Coloring, ChromaticResult, chromatic_exact, is_clique, is_proper
from .digraph import Digraph, from_text, min_in_degree, min_out_degree
from .pattern import CyclePattern, PathPattern
from .search import Embedding, Status, contains_pattern, forbidden_family_check, verify_embedding

SCHEMA = "orientlab-certificate/1"
KINDS = ("embedding", "coloring", "non-containment", "degree-audit", "extraction-trace")


class CertificateError(ValueError):
    pass


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class CertificateFile:
    input_sha256: str
    entries: list[dict]
    tool_version: str = __version__
    schema: str = SCHEMA

    def add(self, kind: str, payload: dict) -> None:
        if kind not in KINDS:
            raise CertificateError(f"unknown certificate kind {kind!r}")
        self.entries.append({"kind": kind, "payload": payload})

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": self.schema,
                "tool_version": self.tool_version,
                "input_sha256": self.input_sha256,
                "certificates": self.entries,
            },
            indent=2,
            sort_keys=True,
        ) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8", newline="\n")

    @classmethod
    def from_json(cls, text: str) -> "CertificateFile":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"not JSON: {exc}") from exc
        if d.get("schema") != SCHEMA:
            raise CertificateError(f"unsupported schema {d.get('schema')!r}")
        return cls(d["input_sha256"], list(d["certificates"]), d.get("tool_version", "?"), d["schema"])

    @classmethod
    def read(cls, path) -> "CertificateFile":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


# -- payload builders -------------------------------------------------------------

def embedding_payload(e: Embedding) -> dict:
    shape = "cycle" if e.is_cycle else "path"
    return {"shape": shape, "word": e.pattern.word, "map": list(e.map)}


def coloring_payload(r: ChromaticResult, budget: Optional[int]) -> dict:
    return {
        "lower": r.lower,
        "upper": r.upper,
        "lower_by": r.lower_by,
        "clique": list(r.clique),
        "coloring": {str(v): c for v, c in sorted(r.coloring.color.items())},
        "budget": budget,
        "nodes": r.nodes,
    }


def non_containment_payload(word: str, budget: Optional[int], steps: int, family: Optional[int] = None) -> dict:
    return {"word": word, "budget": budget, "steps": steps, "family": family}


def degree_audit_payload(D: Digraph, extra: Optional[dict] = None) -> dict:
    out = {
        "n": D.n,
        "m": D.arc_count,
        "min_out_degree": min_out_degree(D) if D.n else 0,
        "min_in_degree": min_in_degree(D) if D.n else 0,
    }
    if extra:
        out["extra"] = extra
    return out


# -- replay -----------------------------------------------------------------------

def _embedding_from(payload: dict) -> Embedding:
    word = payload["word"]
    pat = CyclePattern(word) if payload["shape"] == "cycle" else PathPattern(word)
    return Embedding(pat, tuple(payload["map"]))


def replay_entry(D: Digraph, entry: dict) -> tuple[bool, str]:
    kind, p = entry.get("kind"), entry.get("payload", {})
    if kind == "embedding":
        ok = verify_embedding(D, _embedding_from(p))
        return ok, "embedding replays" if ok else "embedding does not replay"
    if kind == "extraction-trace":
        emb = p.get("embedding")
        if emb is None:
            return True, "failed extraction trace (nothing to replay)"
        ok = verify_embedding(D, Embedding(CyclePattern(p["pattern"]), tuple(emb)))
        return ok, "extracted embedding replays" if ok else "extracted embedding does not replay"
    if kind == "coloring":
        col = Coloring({int(v): c for v, c in p["coloring"].items()}, p["upper"])
        if not is_proper(D, col):
            return False, "coloring is not proper"
        if not is_clique(D, p["clique"]) or len(p["clique"]) > p["lower"]:
            return False, "clique witness invalid"
        if p["lower_by"] == "search" or len(p["clique"]) != p["lower"]:
            r = chromatic_exact(D, budget=p.get("budget"))
            if (r.lower, r.upper) != (p["lower"], p["upper"]):
                return False, f"re-run gave [{r.lower}, {r.upper}]"
        return True, f"chromatic number in [{p['lower']}, {p['upper']}] replays"
    if kind == "non-containment":
        if p.get("family") is not None:
            rep = forbidden_family_check(D, p["family"], p.get("budget"))
            outcome = rep.get(CyclePattern(p["word"]))
        else:
            outcome = contains_pattern(D, CyclePattern(p["word"]), p.get("budget"))
        ok = outcome is not None and outcome.status is Status.NOT_FOUND and outcome.exhaustive
        return ok, f"{p['word']} absent (exhaustive)" if ok else f"{p['word']} non-containment does not replay"
    if kind == "degree-audit":
        got = degree_audit_payload(D)
        ok = all(got[key] == p[key] for key in ("n", "m", "min_out_degree", "min_in_degree"))
        return ok, "degrees replay" if ok else f"degrees differ: {got}"
    return False, f"unknown certificate kind {kind!r}"


def replay(cert: CertificateFile, data: bytes) -> list[tuple[bool, str]]:
    """Check the digest, then replay every entry against the parsed digraph."""
    if digest(data) != cert.input_sha256:
        return [(False, "input digest mismatch")]
    D = from_text(data.decode("utf-8"))
    return [replay_entry(D, e) for e in cert.entries]
