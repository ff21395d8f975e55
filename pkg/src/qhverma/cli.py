"""Command-line interface: scan, classify, tables, link, verify-hwv."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus
from .chevalley import ChevalleyBasis
from .linkage import (LinkCertificate, LinkQuery, Verdict, classify_phi, default_budget,
                      link_exists, replay_check)
from .omega import Unknown
from .parabolic import ParabolicError, parabolic, parse_target, scan_quasi_heisenberg
from .roots import RootSystemError, Weight, build_root_system, format_alpha, format_eps, parse_type
from .tables import TABLE_IDS, RankSpecError, parse_ranks, regenerate
from .verma import (VermaError, condition_h_solve, root_gap_check, type2_identity,
                    type2_reachability)

SCHEMA = "qhverma.report"
SCHEMA_VERSION = 1

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def rational(q) -> str:
    """Exact "p/q" text for a rational (integers print without a denominator)."""
    return str(Fraction(q))


def weight_json(w: Weight) -> list[str]:
    return [rational(c) for c in w]


def _fmt(rs, w: Weight) -> str:
    return format_eps(rs, w) if rs.family in "BCD" else format_alpha(w)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "schema_version": SCHEMA_VERSION,
               "command": args.command, **payload}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]


def _budget(args) -> int:
    if args.budget is not None:
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        return args.budget
    try:
        return default_budget()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- scan ---------------------------------------------------------------------------


def cmd_scan(args) -> int:
    max_rank = args.max_rank
    fam, lo = None, 1
    if args.ranks:
        fam, lo, hi = parse_ranks(args.ranks)
        max_rank = min(max_rank, hi)
    found = [t for t in scan_quasi_heisenberg(max_rank)
             if t[1] >= lo and (fam is None or t[0] == fam)]
    names = [parabolic(*t).name for t in found]
    payload = {"max_rank": max_rank,
               "parabolics": [{"family": f, "rank": r, "node": n, "name": nm}
                              for (f, r, n), nm in zip(found, names)]}
    lines = [f"quasi-Heisenberg maximal parabolics up to rank {max_rank}: {len(names)}"]
    by_type: dict[str, list[str]] = {}
    for (f, r, n) in found:
        by_type.setdefault(f"{f}{r}", []).append(str(n))
    lines += [f"  {t}: nodes {', '.join(ns)}" for t, ns in by_type.items()]
    _emit(args, payload, lines)
    return EXIT_OK


# -- classify ------------------------------------------------------------------------


def _cert_json(rs, cert: LinkCertificate) -> dict:
    return {"outcome": cert.outcome, "explored": cert.explored, "budget_hit": cert.budget_hit,
            "reason": cert.reason,
            "sequence": [{"root": weight_json(s.root), "label": _fmt(rs, s.root),
                          "pairing": rational(s.pairing)} for s in cert.steps]}


def _verdict_json(rs, v: Verdict) -> dict:
    c = v.constituent
    nz = v.standard_map_nonzero
    out = {
        "map": v.map_id,
        "highest_weight": weight_json(c.hw),
        "type": c.ctype,
        "special_value": None if isinstance(c.special_value, Unknown) else rational(c.special_value),
        "dual_highest_weight": weight_json(c.nu),
        "standard_map_nonzero": None if isinstance(nz, Unknown) else nz,
        "classification": v.phi_classification,
        "witness": {"tag": v.witness.tag, "explored": v.witness.explored},
    }
    if v.witness.certificate is not None:
        out["witness"]["alpha"] = v.witness.alpha + 1
        out["witness"]["certificate"] = _cert_json(rs, v.witness.certificate)
    return out


def _witness_text(rs, v: Verdict) -> str:
    w = v.witness
    if w.tag == "link":
        seq = ", ".join(_fmt(rs, s.root) for s in w.certificate.steps)
        return f"link from alpha_{w.alpha + 1}: ({seq})"
    if w.tag == "exhaustive":
        return f"no link ({w.explored} weights searched)"
    if w.tag == "shortcut":
        return "shortcut: nu = -(1 - s0) alpha_q"
    if w.tag == "inconclusive":
        return f"budget exhausted after {w.explored} weights"
    return "special value unknown"


def cmd_classify(args) -> int:
    pd = parse_target(args.family, args.rank, args.node)
    budget = _budget(args)
    verdicts = classify_phi(pd.rs.family, pd.rs.rank, pd.node, budget)
    for v in verdicts:
        w = v.witness
        if w.certificate is not None and w.certificate.outcome == "found":
            if not replay_check(w.query, w.certificate):
                sys.stderr.write(f"witness for {v.map_id} failed independent replay\n")
                return EXIT_MISMATCH
    rs = pd.rs
    present = {v.map_id for v in verdicts}
    payload = {"target": pd.name, "budget": budget,
               "verdicts": [_verdict_json(rs, v) for v in verdicts],
               "absent": [m for m in ("omega2-gamma", "omega2-ngamma") if m not in present]}
    rows = [["map", "type", "s0", "nu", "phi", "witness"]]
    for v in verdicts:
        c = v.constituent
        rows.append([v.map_id, c.ctype, str(c.special_value), _fmt(rs, c.nu),
                     {"unknown": "?"}.get(v.phi_classification, v.phi_classification),
                     _witness_text(rs, v)])
    for m in payload["absent"]:
        rows.append([m, "-", "-", "-", "-", "l_ngamma = 0"])
    _emit(args, payload, [f"{pd.name}"] + _table(rows))
    return EXIT_OK


# -- tables ---------------------------------------------------------------------------


def cmd_tables(args) -> int:
    table = args.table.upper()
    if table not in TABLE_IDS:
        raise UsageError(f"unknown table {args.table!r}; choose from {', '.join(TABLE_IDS)}")
    parse_ranks(args.ranks)
    corpus_dir = Path(args.corpus) if args.corpus else None
    if corpus_dir is not None and not corpus_dir.is_dir():
        raise UsageError(f"corpus directory {corpus_dir} does not exist")
    report = regenerate(table, args.ranks, corpus_dir, _budget(args))
    payload = {"table": table, "ranks": args.ranks, "match": report.ok,
               "cells": [{"target": c.target, "kind": c.kind, "computed": c.computed,
                          "expected": c.expected, "match": c.match} for c in report.cells],
               "mismatches": len(report.mismatches)}
    rows = [["target", "kind", "computed", "corpus", ""]]
    rows += [[c.target, c.kind, c.computed, c.expected, "" if c.match else "MISMATCH"]
             for c in report.cells]
    status = "all cells match" if report.ok else f"{len(report.mismatches)} cell(s) differ"
    lines = [f"{table}: {status}"] + (_table(rows) if report.cells else ["(no instances)"])
    if not report.ok:
        lines += [f"mismatch {c.target} {c.kind}: computed {c.computed!r}, corpus {c.expected!r}"
                  for c in report.mismatches]
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_MISMATCH


# -- link -------------------------------------------------------------------------------


def cmd_link(args) -> int:
    try:
        fam, rank = parse_type(args.type)
        rs = build_root_system(fam, rank)
        delta, lam = Weight.parse(args.source), Weight.parse(args.target)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if len(delta) != rank or len(lam) != rank:
        raise UsageError(f"weights must have {rank} coordinates for {rs.name}")
    budget = _budget(args)
    q = LinkQuery(delta, lam, rs)
    cert = link_exists(q, budget)
    if cert.outcome == "found" and not replay_check(q, cert):
        sys.stderr.write("certificate failed independent replay\n")
        return EXIT_MISMATCH
    payload = {"type": rs.name, "from": weight_json(delta), "to": weight_json(lam),
               "budget": budget, "certificate": _cert_json(rs, cert)}
    lines = [f"{rs.name}: {cert.outcome} ({cert.explored} weights explored)"]
    if cert.reason:
        lines.append(f"  {cert.reason}")
    lines += [f"  step {k + 1}: reflect in {format_alpha(s.root)} (pairing {rational(s.pairing)})"
              for k, s in enumerate(cert.steps)]
    _emit(args, payload, lines)
    return EXIT_OK


# -- verify-hwv ---------------------------------------------------------------------------


def cmd_verify_hwv(args) -> int:
    pd = parse_target(args.family, args.rank, args.node)
    rs = pd.rs
    cb = ChevalleyBasis(rs)
    checks = []
    lines = [f"{pd.name} (structure constants: extraspecial pairs, all signs +1)"]
    n, i = rs.rank, pd.node
    if rs.family == "B" and 3 <= i <= n - 1:
        res = condition_h_solve(pd, cb)
        gap = root_gap_check(pd)
        checks.append({
            "check": "condition-h", "dimension": res.dimension, "annihilated": res.annihilated,
            "normal_form_only": res.normal_form_only,
            "coefficients": {k: rational(v) for k, v in sorted(res.coefficients.items())},
            "relations": [{"name": r.name, "computed": rational(r.lhs), "expected": rational(r.rhs),
                           "ok": r.ok} for r in res.relations],
            "ok": res.ok})
        checks.append({"check": "root-gap", "ok": gap})
        lines.append(f"  Condition (H): solution space dimension {res.dimension}")
        lines += [f"    {k} = {rational(v)}" for k, v in sorted(res.coefficients.items())]
        lines += [f"    relation {r.name}: {rational(r.lhs)} vs {rational(r.rhs)} "
                  f"{'ok' if r.ok else 'FAILED'}" for r in res.relations]
        lines.append(f"    annihilated by Pi(l): {res.annihilated}")
        lines.append(f"  2 eps_i - beta outside positive roots: {gap}")
    if rs.family == "B" and i == n:
        res = type2_identity(pd, cb)
        checks.append({"check": "type2-identity", "coefficient": _opt(res.coefficient),
                       "expected": _opt(res.expected), "ok": res.ok})
        lines.append(f"  X_(e1-e{n})^2 X_(-e1)^2: coefficient {_opt(res.coefficient)}, "
                     f"expected 2N^2 = {_opt(res.expected)} {'ok' if res.ok else 'FAILED'}")
    if rs.family in "BCF" and (i == n or rs.family == "C" or rs.name == "F4"):
        res = type2_reachability(pd, cb)
        checks.append({"check": "type2-reachability", "path": [j + 1 for j in res.path],
                       "coefficient": _opt(res.coefficient), "ok": res.ok})
        lines.append(f"  X_(-mu)^2 raised to X_(-alpha_q)^2: coefficient {_opt(res.coefficient)} "
                     f"via nodes {[j + 1 for j in res.path]} {'ok' if res.ok else 'FAILED'}")
    if not checks:
        raise UsageError(f"{pd.name}: verify-hwv covers B_n(i) with 3 <= i <= n and the "
                         "type 2 cases C_n(i), F4(4)")
    ok = all(c["ok"] for c in checks)
    _emit(args, {"target": pd.name, "checks": checks, "ok": ok}, lines)
    return EXIT_OK if ok else EXIT_MISMATCH


def _opt(q):
    return None if q is None else rational(q)


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhverma", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=None,
                        help="max weights visited per link search (default 10^7, "
                             "or $QHVERMA_BUDGET)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", parents=[common], help="list quasi-Heisenberg maximal parabolics")
    s.add_argument("--max-rank", type=int, default=8)
    s.add_argument("--ranks", help="restrict to a rank range: a..b or B5..B8")
    s.set_defaults(func=cmd_scan)

    for name, func, hlp in (("classify", cmd_classify, "standard/non-standard verdicts"),
                            ("verify-hwv", cmd_verify_hwv, "highest weight vector computations")):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.add_argument("family")
        c.add_argument("rank", type=int)
        c.add_argument("node", type=int)
        c.set_defaults(func=func)

    t = sub.add_parser("tables", parents=[common], help="regenerate a table and diff it")
    t.add_argument("table", help="T1 | T2 | T3 | T4 | T5")
    t.add_argument("--ranks", help="a..b or B5..B8")
    t.add_argument("--corpus", help="directory with alternative corpus files")
    t.set_defaults(func=cmd_tables)

    lk = sub.add_parser("link", parents=[common], help="search for a link between two weights")
    lk.add_argument("--type", required=True, help="root system, e.g. E6 or B5")
    lk.add_argument("--from", dest="source", required=True, help="comma-separated simple-root coefficients")
    lk.add_argument("--to", dest="target", required=True, help="comma-separated simple-root coefficients")
    lk.set_defaults(func=cmd_link)
    return p


def _glue_weight_args(argv: list[str]) -> list[str]:
    # "--to -1,0,2" would otherwise be read as an unknown option
    out, k = [], 0
    while k < len(argv):
        if argv[k] in ("--from", "--to") and k + 1 < len(argv) and argv[k + 1].startswith("-"):
            out.append(f"{argv[k]}={argv[k + 1]}")
            k += 2
        else:
            out.append(argv[k])
            k += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_weight_args(argv))
    if args.command == "scan" and args.max_rank < 1:
        parser.error("--max-rank must be positive")
    try:
        return args.func(args)
    except (UsageError, ParabolicError, RootSystemError, RankSpecError, VermaError,
            corpus.CorpusError) as exc:
        sys.stderr.write(f"qhverma {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
