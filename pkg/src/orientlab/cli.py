"""Command-line front end: ``orientlab <verb> ...``.

Exit codes: 0 when a verdict was reached (present or absent), 2 when a
budget ran out first, 3 for unusable input, 1 when a certificate fails to
replay.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certificates import (
    CertificateError,
    CertificateFile,
    coloring_payload,
    degree_audit_payload,
    digest,
    embedding_payload,
    non_containment_payload,
    replay,
)
from .chromatic import chromatic_bounds, chromatic_exact
from .construct import (
    DEFAULT_CAP,
    SizeRejected,
    audit_groups,
    augmented_flip_free,
    balance_by_cloning,
    blowup_cycle,
    general_shift_digraph,
    shift_digraph,
)
from .digraph import DigraphError, from_text, to_text
from .extract import (
    ExtractionError,
    ExtractionFailed,
    ExtractionParams,
    PatternNotGuaranteed,
    extract_any,
    route_for,
)
from .pattern import CyclePattern, PatternError, blocks, classify, parse_word
from .search import Status, contains_pattern, forbidden_family_check
from .suites import SUITES, run_suite

OK, FAILED_REPLAY, INCONCLUSIVE, BAD_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return from_text(data.decode("utf-8")), data
    except (DigraphError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _pattern(text: str) -> CyclePattern:
    try:
        return CyclePattern(text)
    except PatternError as exc:
        raise InputError(str(exc)) from exc


def _cert_path(args, default_suffix: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(args.input + default_suffix)


def _write_bytes(path: Path, text: str) -> bytes:
    data = text.encode("utf-8")
    path.write_bytes(data)
    return data


# -- verbs ----------------------------------------------------------------------

def cmd_gen(args) -> int:
    layout = None
    try:
        if args.construction == "blowup":
            D = blowup_cycle(args.k, args.blob)
        elif args.construction == "shift":
            D = shift_digraph(args.m, args.r)
        elif args.construction == "gshift":
            D = general_shift_digraph(args.m, args.k, cap=args.cap)
        else:
            D, layout = augmented_flip_free(args.m, args.k, cap=args.cap)
            if args.construction == "balanced" or args.balance:
                D, layout = balance_by_cloning(D, layout)
    except SizeRejected as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    out = Path(args.out)
    data = _write_bytes(out, to_text(D))
    extra = None
    if layout is not None:
        Path(str(out) + ".layout.json").write_text(json.dumps(layout.to_dict(), indent=1) + "\n")
        a = audit_groups(D, layout)
        extra = {
            "group_sizes": a.group_sizes,
            "min_out_fraction": str(a.min_out_fraction),
            "min_t_to_core": str(a.min_t_to_core),
            "min_core_to_s": str(a.min_core_to_s),
        }
    cert = CertificateFile(digest(data), [])
    cert.add("degree-audit", degree_audit_payload(D, extra))
    cert.write(str(out) + ".audit.cert.json")
    print(f"wrote {out}: {D.n} vertices, {D.arc_count} arcs")
    if extra:
        print("groups " + " ".join(f"{g}={s}" for g, s in extra["group_sizes"].items()))
    return OK


def cmd_check(args) -> int:
    D, data = _load(args.input)
    cert = CertificateFile(digest(data), [])
    inconclusive = False
    if args.family is not None:
        if args.family < 2:
            raise InputError("--family needs k >= 2")
        outcomes = forbidden_family_check(D, args.family, args.budget)
    else:
        p = _pattern(args.pattern)
        outcomes = {p: contains_pattern(D, p, args.budget)}
    for p, o in outcomes.items():
        print(f"{p.signs}: {o}")
        if o.status is Status.FOUND:
            cert.add("embedding", embedding_payload(o.embedding))
        elif o.status is Status.NOT_FOUND:
            cert.add("non-containment", non_containment_payload(p.word, args.budget, o.steps, args.family))
        else:
            inconclusive = True
    if args.family is not None:
        absent = sum(o.status is Status.NOT_FOUND for o in outcomes.values())
        print(f"{absent}/{len(outcomes)} NotFound")
    if cert.entries:
        cert.write(_cert_path(args, ".check.cert.json"))
    return INCONCLUSIVE if inconclusive else OK


def cmd_chi(args) -> int:
    D, data = _load(args.input)
    if args.bounds:
        r = chromatic_bounds(D)
        budget = None
    else:
        r = chromatic_exact(D, budget=args.budget)
        budget = args.budget
    if r.exact:
        print(f"chi = {r.upper}")
    else:
        print(f"{r.lower} <= chi <= {r.upper}" + (" (budget exhausted)" if r.budget_exhausted else ""))
    cert = CertificateFile(digest(data), [])
    cert.add("coloring", coloring_payload(r, budget))
    cert.write(_cert_path(args, ".chi.cert.json"))
    if args.bounds:
        return OK
    return OK if r.exact else INCONCLUSIVE


def cmd_extract(args) -> int:
    D, data = _load(args.input)
    p = _pattern(args.pattern)
    try:
        route_for(p)
        if args.epsilon is None:
            params = ExtractionParams.from_digraph(
                D, search_budget=args.budget, chi_budget=args.chi_budget
            )
        else:
            params = ExtractionParams(
                Fraction(args.epsilon).limit_denominator(10**6),
                search_budget=args.budget,
                chi_budget=args.chi_budget,
            )
        emb, trace = extract_any(D, p, params)
    except PatternNotGuaranteed as exc:
        print(f"PatternNotGuaranteed: {exc}", file=sys.stderr)
        return BAD_INPUT
    except ExtractionFailed as exc:
        trace = exc.trace
        _write_trace(args, data, trace)
        print(f"ExtractionFailed ({trace.route}): " + "; ".join(trace.notes), file=sys.stderr)
        return INCONCLUSIVE
    except (ExtractionError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    print(f"Found {p.signs} via {trace.route} ({trace.phase}): {list(emb.map)}")
    if trace.sequence:
        print("sequence " + " ".join(map(str, trace.sequence)))
        print("set sizes " + " ".join(str(len(s)) for s in trace.sets))
    cert = CertificateFile(digest(data), [])
    cert.add("embedding", embedding_payload(emb))
    cert.write(_cert_path(args, ".extract.cert.json"))
    _write_trace(args, data, trace)
    return OK


def _write_trace(args, data: bytes, trace) -> None:
    path = Path(args.trace) if args.trace else Path(args.input + ".trace.json")
    cert = CertificateFile(digest(data), [])
    cert.add("extraction-trace", trace.to_dict())
    cert.write(path)


def cmd_classify(args) -> int:
    try:
        word = parse_word(args.pattern)
        p = CyclePattern(word)
    except PatternError as exc:
        raise InputError(str(exc)) from exc
    c = p.canonical
    bd = blocks(c)
    print(f"canonical {c.signs}")
    print(f"class {classify(c)}")
    print("blocks [" + ",".join(map(str, bd.block_lengths)) + "]")
    return OK


def cmd_suite(args) -> int:
    kw = {}
    if args.name == "cloning":
        kw = {"trials": args.trials or 200, "seed": args.seed}
    elif args.name == "gallai-roy":
        kw = {"n": args.n or 30, "trials": args.trials or 100, "seed": args.seed}
    elif args.name == "blowup":
        kw = {"kmax": args.kmax}
    rep = run_suite(args.name, **kw)
    print(rep.summary())
    for f in rep.failures[:20]:
        print("  " + f)
    return OK if rep.ok else FAILED_REPLAY


def cmd_cert_verify(args) -> int:
    try:
        cert = CertificateFile.read(args.certificate)
    except (OSError, CertificateError, KeyError) as exc:
        raise InputError(f"{args.certificate}: {exc}") from exc
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        results = replay(cert, data)
    except DigraphError as exc:
        raise InputError(str(exc)) from exc
    for ok, msg in results:
        print(("ok   " if ok else "FAIL ") + msg)
    return OK if all(ok for ok, _ in results) else FAILED_REPLAY


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orientlab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"orientlab {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="generate a construction")
    g.add_argument("construction", choices=["blowup", "shift", "gshift", "augmented", "balanced"])
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--blob", type=int, default=2)
    g.add_argument("--m", type=int, default=3)
    g.add_argument("--r", type=int, default=2)
    g.add_argument("--balance", action="store_true", help="clone groups up to balance (augmented)")
    g.add_argument("--cap", type=int, default=DEFAULT_CAP)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="search for a cycle pattern or the forbidden family")
    c.add_argument("input")
    which = c.add_mutually_exclusive_group(required=True)
    which.add_argument("--pattern")
    which.add_argument("--family", type=int)
    c.add_argument("--budget", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    x = sub.add_parser("chi", help="chromatic number of the underlying graph")
    x.add_argument("input")
    mode = x.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--bounds", action="store_true")
    x.add_argument("--budget", type=int)
    x.add_argument("--out")
    x.set_defaults(func=cmd_chi)

    e = sub.add_parser("extract", help="constructively find a forced pattern")
    e.add_argument("input")
    e.add_argument("pattern")
    e.add_argument("--epsilon", type=str, help="out-degree fraction, e.g. 0.4 or 2/5 (default: from the digraph)")
    e.add_argument("--budget", type=int, help="search extension steps")
    e.add_argument("--chi-budget", type=int, default=50_000)
    e.add_argument("--out")
    e.add_argument("--trace")
    e.set_defaults(func=cmd_extract)

    k = sub.add_parser("classify", help="class and blocks of a pattern")
    k.add_argument("pattern")
    k.set_defaults(func=cmd_classify)

    s = sub.add_parser("suite", help="run a property suite")
    s.add_argument("name", choices=SUITES)
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--n", type=int)
    s.add_argument("--kmax", type=int, default=6)
    s.set_defaults(func=cmd_suite)

    ct = sub.add_parser("cert", help="certificate tools")
    csub = ct.add_subparsers(dest="cert_verb", required=True)
    v = csub.add_parser("verify", help="replay a certificate against its input")
    v.add_argument("certificate")
    v.add_argument("--input", required=True)
    v.set_defaults(func=cmd_cert_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
