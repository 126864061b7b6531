"""Command line entry point: ``semiring-lab``.

Exit codes: 0 when everything passes, 1 when any check fails, 2 on usage
or parse errors.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import report
from .bits import SubsetHandle
from .core import (
    FiniteSemiring,
    is_entire,
    is_local,
    is_mult_idempotent,
    is_semidomain,
    is_yoked,
    mc_elements,
    units,
    validate_semiring,
)
from .corpus import Corpus, load_corpus
from .enumeration import enumerate_semirings
from .errors import AxiomViolation, ParseError, SemiringLabError, UnknownBase
from .fileformat import format_structure, parse_structures
from .harness import check_all, get_theorem, probes, registry, search_counterexample
from .ideals import all_ideals, classify_ideals, maximal_ideals, maximals_all_subtractive
from .localization import is_invertible_ideal, localize_at_prime, total_quotient
from .semimodule import (
    FiniteSemimodule,
    all_subsemimodules,
    cyclic_generator,
    fixpoint_set,
    ideal_times_module,
    is_cancellative,
    is_faithful,
    is_mc_semimodule,
    is_torsionfree,
    multiplication_witness,
    p_cyclic_witness,
    residual,
    t_p_set,
    theta,
    validate_semimodule,
)


class UsageError(Exception):
    pass


def _members(h: SubsetHandle) -> list[int]:
    return list(h)


def _fmt(h: SubsetHandle) -> str:
    return str(h)


def _lookup(corpus: Corpus, name: str):
    if name not in corpus:
        raise UsageError(f"no structure named {name!r} in the corpus")
    return corpus.get(name)


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated indices, got {text!r}") from None


# -- subcommands; each returns (exit code, document, text lines) ---------------


def cmd_validate(args, corpus):
    structures, lines, status = [], [], 0
    if args.files:
        bases = {S.name: S for S in corpus.semirings}
        for f in args.files:
            try:
                found = parse_structures(Path(f).read_text(), bases)
            except AxiomViolation as exc:
                status = 1
                structures.append({"source": f, "valid": False, "axiom": exc.axiom,
                                   "witness": list(exc.witness), "line": getattr(exc, "line", None)})
                lines.append(f"INVALID {f}: {exc}")
                continue
            except OSError as exc:
                raise UsageError(str(exc)) from None
            for X in found:
                bases.update({X.name: X} if isinstance(X, FiniteSemiring) else {})
                structures.append({"name": X.name, "source": f, "valid": True, "order": X.order})
                lines.append(f"VALID   {X.name} ({_kind(X)}, order {X.order}) from {f}")
    else:
        for X in corpus.structures:
            try:
                if isinstance(X, FiniteSemiring):
                    validate_semiring(X.add, X.mul, X.one, X.name)
                else:
                    validate_semimodule(X.base, X.add, X.action, X.name)
                ok, note = True, ""
            except AxiomViolation as exc:
                ok, note, status = False, f": {exc}", 1
            structures.append({"name": X.name, "kind": _kind(X), "valid": ok, "order": X.order})
            lines.append(f"{'VALID  ' if ok else 'INVALID'} {X.name} ({_kind(X)}, order {X.order}){note}")
    return status, report.document("validate", structures), lines


def _kind(X) -> str:
    return "semiring" if isinstance(X, FiniteSemiring) else "semimodule"


def _analyze_semiring(S):
    local = is_local(S)
    data = {
        "name": S.name, "kind": "semiring", "order": S.order, "one": S.one,
        "yoked": is_yoked(S), "entire": is_entire(S), "semidomain": is_semidomain(S),
        "mult_idempotent": is_mult_idempotent(S), "local": local,
        "units": _members(units(S)), "mc_elements": _members(mc_elements(S)),
        "ideals": len(all_ideals(S)),
        "maximal_ideals": [_members(m) for m in maximal_ideals(S)],
        "maximals_subtractive": maximals_all_subtractive(S),
    }
    return data


def _analyze_module(M):
    S = M.base
    wit = multiplication_witness(M)
    data = {
        "name": M.name, "kind": "semimodule", "base": S.name, "order": M.order,
        "multiplication": wit is None,
        "multiplication_witness": None if wit is None else _members(wit),
        "cancellative": is_cancellative(M), "faithful": is_faithful(M),
        "mc": is_mc_semimodule(M),
        "torsionfree": is_torsionfree(M) if is_semidomain(S) else None,
        "cyclic_generator": cyclic_generator(M),
        "theta": _members(theta(M)),
        "subsemimodules": len(all_subsemimodules(M)),
        "maximal": [],
    }
    for p in maximal_ideals(S):
        w = p_cyclic_witness(M, p)
        fix = fixpoint_set(M, p)
        data["maximal"].append({
            "ideal": _members(p),
            "pM": _members(ideal_times_module(p, M)),
            "T_p": _members(t_p_set(M, p)),
            "p_cyclic": None if w is None else list(w),
            "fixpoints": _members(fix.members),
            "fixpoints_closed": fix.is_subsemimodule,
        })
    return data


def cmd_analyze(args, corpus):
    X = _lookup(corpus, args.name)
    data = _analyze_semiring(X) if isinstance(X, FiniteSemiring) else _analyze_module(X)
    lines = [f"{X.name}"]
    for k, v in data.items():
        if k in ("name",):
            continue
        if k == "maximal":
            for entry in v:
                lines.append(f"  at maximal {entry['ideal']}: " + ", ".join(
                    f"{kk}={vv}" for kk, vv in entry.items() if kk != "ideal"))
        else:
            lines.append(f"  {k}: {v}")
    return 0, report.document("analyze", [data]), lines


def cmd_ideals(args, corpus):
    S = _lookup(corpus, args.name)
    if not isinstance(S, FiniteSemiring):
        raise UsageError(f"{args.name} is not a semiring")
    rows = []
    lines = [f"{S.name}: {len(all_ideals(S))} ideals"]
    for I, flags in classify_ideals(S):
        row = {"members": _members(I), "subtractive": flags.subtractive, "prime": flags.prime,
               "maximal": flags.maximal, "proper": flags.proper}
        rows.append(row)
        tags = [k for k in ("proper", "subtractive", "prime", "maximal") if row[k]]
        lines.append(f"  {_fmt(I):20s} {' '.join(tags)}")
    return 0, report.document("ideals", [{"name": S.name, "ideals": rows}]), lines


def cmd_subs(args, corpus):
    M = _lookup(corpus, args.name)
    if not isinstance(M, FiniteSemimodule):
        raise UsageError(f"{args.name} is not a semimodule")
    rows = []
    subs = all_subsemimodules(M)
    lines = [f"{M.name}: {len(subs)} subsemimodules"]
    for N in subs:
        r = residual(N, M.full, M)
        ok = ideal_times_module(r, M) == N
        rows.append({"members": _members(N), "residual": _members(r), "equals_residual_times_M": ok})
        lines.append(f"  {_fmt(N):20s} (N:M)={_fmt(r):16s} {'N=(N:M)M' if ok else 'N!=(N:M)M'}")
    return 0, report.document("subs", [{"name": M.name, "subsemimodules": rows}]), lines


def cmd_localize(args, corpus):
    X = _lookup(corpus, args.name)
    S = X if isinstance(X, FiniteSemiring) else X.base
    p = S.subset(_parse_indices(args.prime))
    L = localize_at_prime(X, p)
    classes = [[list(pair) for pair in c] for c in L.classes]
    data = {"name": X.name, "prime": _members(p), "order": L.order,
            "classes": classes, "embedding": list(L.embedding), "add": [list(r) for r in L.add]}
    lines = [f"{X.name} localized at {_fmt(p)}: order {L.order}"]
    for i, c in enumerate(L.classes):
        numerators = sorted({x for x, _ in c})
        lines.append(f"  class {i}: numerators {numerators} ({len(c)} pairs)")
    return 0, report.document("localize", [data]), lines


def cmd_quotient(args, corpus):
    S = _lookup(corpus, args.name)
    if not isinstance(S, FiniteSemiring):
        raise UsageError(f"{args.name} is not a semiring")
    Q = total_quotient(S)
    inv = [_members(I) for I in all_ideals(S) if is_invertible_ideal(S, I)]
    data = {"name": S.name, "order": Q.order, "embedding": list(Q.embedding),
            "denominators": _members(mc_elements(S)), "invertible_ideals": inv}
    lines = [f"Q({S.name}): order {Q.order}", f"  denominators: {data['denominators']}",
             f"  embedding: {data['embedding']}", f"  invertible ideals: {inv}"]
    return 0, report.document("quotient", [data]), lines


def _figure_outputs(args, doc, results, title):
    if getattr(args, "report_dir", None):
        paths = report.write_report_dir(args.report_dir, doc, results, title)
        return [f"wrote {p}" for p in paths]
    return []


def cmd_check(args, corpus):
    if not args.all and not args.theorem:
        raise UsageError("check needs --theorem ID or --all")
    ids = None if args.all else [args.theorem]
    if ids:
        get_theorem(ids[0])
    results = check_all(corpus.structures, ids)
    status = 1 if any(r.verdict == "fail" for r in results) else 0
    doc = report.document("check", [{"corpus": args.corpus, "count": len(corpus)}], results,
                          {r.id: round(r.elapsed, 6) for r in results})
    lines = [r.line() for r in results]
    lines += _figure_outputs(args, doc, results, f"theorem checks on corpus {args.corpus}")
    return status, doc, lines


def cmd_enumerate(args, corpus):
    found = list(enumerate_semirings(args.order, up_to_iso=args.iso))
    data = [{"name": S.name, "one": S.one, "add": [list(r) for r in S.add], "mul": [list(r) for r in S.mul]}
            for S in found]
    header = f"{len(found)} semirings of order {args.order}" + (" up to isomorphism" if args.iso else "")
    lines = [header]
    if args.print:
        # a comment header keeps the whole output loadable as a corpus file
        lines = [f"# {header}"] + [format_structure(S) for S in found]
    return 0, report.document("enumerate", [{"order": args.order, "iso": args.iso, "count": len(found),
                                             "semirings": data}]), lines


def cmd_search(args, corpus):
    probe_ids = {p.id for p in probes()}
    if args.all:
        ids = [t.id for t in registry()]
    elif args.theorem:
        ids = [args.theorem]
        if args.theorem not in probe_ids:
            get_theorem(args.theorem)
    else:
        raise UsageError("search needs --theorem ID or --all")
    from .harness import census

    start = time.perf_counter()
    universe = census(args.max_order)
    enum_time = time.perf_counter() - start
    results = [search_counterexample(i, args.max_order, universe) for i in ids]
    status = 1 if any(r.outcome == "witness" and r.id not in probe_ids for r in results) else 0
    timings = {"enumeration": round(enum_time, 6)}
    timings.update({r.id: round(r.elapsed, 6) for r in results})
    doc = report.document("search", [{"max_order": args.max_order, "count": len(universe)}], results, timings)
    lines = [f"census up to order {args.max_order}: {len(universe)} structures"]
    lines += [r.line() for r in results]
    lines += _figure_outputs(args, doc, results, f"exhaustive search, order <= {args.max_order}")
    return status, doc, lines


COMMANDS = {
    "validate": cmd_validate, "analyze": cmd_analyze, "ideals": cmd_ideals, "subs": cmd_subs,
    "localize": cmd_localize, "quotient": cmd_quotient, "check": cmd_check,
    "enumerate": cmd_enumerate, "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--corpus", default=argparse.SUPPRESS,
                        help="directory of .sr files, or 'builtin' (default)")
    parser = argparse.ArgumentParser(prog="semiring-lab", parents=[common],
                                     description="Finite semirings, semimodules and multiplication-semimodule checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate structure files or the corpus")
    p.add_argument("files", nargs="*")
    for name, helptext in (("analyze", "predicates of one structure"), ("ideals", "ideals with flags"),
                           ("subs", "subsemimodules and residuals"), ("quotient", "total quotient semiring")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("name")
    p = sub.add_parser("localize", parents=[common], help="localize at a prime ideal")
    p.add_argument("name")
    p.add_argument("--prime", required=True, help="comma-separated element indices")
    p = sub.add_parser("check", parents=[common], help="check theorems on the corpus")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theorem")
    g.add_argument("--all", action="store_true")
    p.add_argument("--report-dir", help="also write report.json, theorems.tsv and theorems.png here")
    p = sub.add_parser("enumerate", parents=[common], help="enumerate semirings of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--iso", action="store_true", help="one representative per isomorphism class")
    p.add_argument("--print", action="store_true", help="print each structure in file format")
    p = sub.add_parser("search", parents=[common], help="exhaustive counterexample search")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theorem")
    g.add_argument("--all", action="store_true")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--report-dir", help="also write report.json, theorems.tsv and theorems.png here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    args.format = getattr(args, "format", "text")
    args.corpus = getattr(args, "corpus", "builtin")
    try:
        corpus = load_corpus(args.corpus)
        status, doc, lines = COMMANDS[args.command](args, corpus)
    except (UsageError, ParseError, UnknownBase, SemiringLabError, FileNotFoundError) as exc:
        print(f"semiring-lab: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(report.dumps(doc))
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
