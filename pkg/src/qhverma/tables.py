"""Regenerate the constituent, type, special-value and verdict tables and diff them."""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import corpus as _corpus
from .linkage import classify_constituent
from .omega import InvariantViolation, NoCorpusData, Unknown, omega2_constituents
from .parabolic import levi_structure, parabolic, scan_quasi_heisenberg
from .roots import format_alpha, format_eps

TABLE_IDS = ("T1", "T2", "T3", "T4", "T5")
KINDS = ("gamma", "ngamma")
DEFAULT_MAX_RANK = 8


class RankSpecError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    target: str
    kind: str
    computed: str
    expected: str

    @property
    def match(self) -> bool:
        return self.computed == self.expected


@dataclass(frozen=True)
class TableReport:
    table: str
    cells: tuple

    @property
    def mismatches(self) -> list[Cell]:
        return [c for c in self.cells if not c.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def parse_ranks(spec: Optional[str]):
    """Parse ``a..b`` (all families) or ``B5..B8`` (one family) into a filter.

    Returns ``(family or None, lo, hi)``.
    """
    if spec is None:
        return None, 1, DEFAULT_MAX_RANK
    m = re.fullmatch(r"\s*([A-Ga-g]?)(\d+)\s*\.\.\s*([A-Ga-g]?)(\d+)\s*", spec)
    if not m:
        raise RankSpecError(f"bad rank range {spec!r}; expected a..b or B5..B8")
    f1, lo, f2, hi = m.group(1).upper(), int(m.group(2)), m.group(3).upper(), int(m.group(4))
    if f1 != f2 and f2:
        raise RankSpecError(f"rank range {spec!r} mixes families")
    if lo > hi:
        raise RankSpecError(f"empty rank range {spec!r}")
    if hi > DEFAULT_MAX_RANK:
        raise RankSpecError(f"ranks above {DEFAULT_MAX_RANK} are not supported")
    return (f1 or None), lo, hi


def instances(ranks: Optional[str] = None, table: Optional[str] = None) -> list[tuple[str, int, int]]:
    family, lo, hi = parse_ranks(ranks)
    out = []
    for fam, rank, node in scan_quasi_heisenberg(hi):
        if rank < lo or (family and fam != family):
            continue
        if table == "T1" and fam not in "BCD":
            continue
        if table == "T2" and fam in "BCD":
            continue
        out.append((fam, rank, node))
    return out


def _fmt_weight(pd, w) -> str:
    return format_eps(pd.rs, w) if pd.rs.family in "BCD" else format_alpha(w)


def _expected(corpus: _corpus.Corpus, table: str, pd, kind: str) -> str:
    rs = pd.rs
    rec = corpus.lookup(rs.family, rs.rank, pd.node, kind)
    if rec is None:
        return "<no row>"
    v = rec.value
    if v in (_corpus.ABSENT, _corpus.UNKNOWN_MARK):
        return v
    if table in ("T1", "T2"):
        try:
            return _fmt_weight(pd, _corpus.parse_weight(v, rs, pd.node))
        except _corpus.CorpusError as exc:
            return f"<bad cell: {exc}>"
    if table == "T4":
        try:
            return str(_corpus.eval_affine(v, rs.rank, pd.node))
        except _corpus.CorpusError as exc:
            return f"<bad cell: {exc}>"
    return v


def _computed(table: str, pd, constituents: dict, budget) -> dict[str, str]:
    out = {}
    for kind in KINDS:
        c = constituents.get(kind)
        if c is None:
            out[kind] = _corpus.ABSENT
        elif table in ("T1", "T2"):
            out[kind] = _fmt_weight(pd, c.hw)
        elif table == "T3":
            out[kind] = c.ctype
        elif table == "T4":
            out[kind] = "?" if isinstance(c.special_value, Unknown) else str(c.special_value)
        else:
            v = classify_constituent(c, pd, budget)
            out[kind] = {"unknown": "?"}.get(v.phi_classification, v.phi_classification)
    return out


def regenerate(table: str, ranks: Optional[str] = None, corpus_dir: Optional[Path] = None,
               budget: Optional[int] = None) -> TableReport:
    """Recompute ``table`` over the quasi-Heisenberg instances in ``ranks``."""
    if table not in TABLE_IDS:
        raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLE_IDS)}")
    file_id = "T12" if table in ("T1", "T2") else table
    reference = _corpus.load_table(file_id, corpus_dir)
    hw_table = _corpus.load_table("T12", corpus_dir)
    cells = []
    for fam, rank, node in instances(ranks, table):
        pd = parabolic(fam, rank, node)
        try:
            cs = {c.kind: c for c in omega2_constituents(pd, levi_structure(pd), hw_table)}
            computed = _computed(table, pd, cs, budget)
        except (InvariantViolation, NoCorpusData, _corpus.CorpusError) as exc:
            computed = {k: f"<error: {exc}>" for k in KINDS}
        for kind in KINDS:
            cells.append(Cell(pd.name, kind, computed[kind], _expected(reference, table, pd, kind)))
    return TableReport(table, tuple(cells))

