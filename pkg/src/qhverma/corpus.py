"""Golden corpus files: per-family table rows as pipe-separated text records.

Each non-comment line is ``family | nodes | kind | value``:

``family``
    ``B``, ``C``, ``D`` (rank left free, written ``n``) or a fixed type such
    as ``E6`` or ``F4``.
``nodes``
    The crossed node ``i``: a single expression (``n-1``, ``3``) or a closed
    range ``lo..hi`` whose bounds may use ``n``.
``kind``
    ``gamma`` or ``ngamma``.
``value``
    Table-specific.  Weights are ``eps: 2e[1]+e[i+1]`` (classical epsilon
    coordinates, indices may use ``i`` and ``n``) or ``alpha: 1,2,2,4,3,2``
    (simple-root coefficients).  Rationals are affine expressions in ``n``
    and ``i`` (``n-i-1/2``).  ``-`` marks an absent entry and ``?`` an
    unknown one.

Lines starting with ``#`` are comments; ``# format-version: N`` is required.
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .roots import RootSystem, Weight

FORMAT_VERSION = 1
TABLE_FILES = {
    "T12": "t12_constituents.txt",
    "T3": "t3_types.txt",
    "T4": "t4_special_values.txt",
    "T5": "t5_verdicts.txt",
}
ABSENT = "-"
UNKNOWN_MARK = "?"


class CorpusError(ValueError):
    pass


_ALLOWED_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
                   ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}


def eval_affine(expr: str, n: int, i: int) -> Fraction:
    """Evaluate an arithmetic expression in ``n`` and ``i`` exactly."""
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError:
        raise CorpusError(f"bad expression {expr!r}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id in ("n", "i"):
            return Fraction(n if node.id == "n" else i)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _ALLOWED_BINOPS:
            return _ALLOWED_BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise CorpusError(f"unsupported token in {expr!r}")

    return ev(tree)


@dataclass(frozen=True)
class Record:
    family: str
    nodes: str
    kind: str
    value: str
    line: int = 0

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.family, self.nodes, self.kind)

    def matches(self, family: str, rank: int, node: int) -> bool:
        if len(self.family) == 1:
            if self.family != family:
                return False
        elif self.family != f"{family}{rank}":
            return False
        if ".." in self.nodes:
            lo, hi = self.nodes.split("..")
            return eval_affine(lo, rank, node) <= node <= eval_affine(hi, rank, node)
        return eval_affine(self.nodes, rank, node) == node

    def format(self) -> str:
        return f"{self.family} | {self.nodes} | {self.kind} | {self.value}"


@dataclass(frozen=True)
class Corpus:
    name: str
    records: tuple[Record, ...]

    def lookup(self, family: str, rank: int, node: int, kind: str) -> Optional[Record]:
        hits = [r for r in self.records if r.kind == kind and r.matches(family, rank, node)]
        if len(hits) > 1:
            raise CorpusError(f"{self.name}: {len(hits)} rows match {family}{rank}({node}) {kind}")
        return hits[0] if hits else None

    def format(self) -> str:
        lines = [f"# {self.name}", f"# format-version: {FORMAT_VERSION}"]
        lines += [r.format() for r in self.records]
        return "\n".join(lines) + "\n"


def parse_corpus(text: str, name: str = "corpus") -> Corpus:
    version = None
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*format-version:\s*(\d+)", line)
            if m:
                version = int(m.group(1))
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4 or not all(parts):
            raise CorpusError(f"{name}:{lineno}: expected 'family | nodes | kind | value'")
        family, nodes, kind, value = parts
        if kind not in ("gamma", "ngamma"):
            raise CorpusError(f"{name}:{lineno}: unknown kind {kind!r}")
        if not re.fullmatch(r"[BCD]|[A-G]\d+", family):
            raise CorpusError(f"{name}:{lineno}: bad family {family!r}")
        records.append(Record(family, nodes, kind, value, lineno))
    if version != FORMAT_VERSION:
        raise CorpusError(f"{name}: missing or unsupported format-version (got {version})")
    keys = [r.key for r in records]
    if len(set(keys)) != len(keys):
        raise CorpusError(f"{name}: duplicate rows")
    return Corpus(name, tuple(records))


def data_dir() -> Path:
    return Path(str(resources.files("qhverma") / "data"))


def load_table(table: str, directory: Optional[Path] = None) -> Corpus:
    fname = TABLE_FILES[table]
    path = Path(directory or data_dir()) / fname
    return parse_corpus(path.read_text(encoding="utf-8"), fname)


_EPS_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*e\[([^\]]+)\]")


def parse_weight(value: str, rs: RootSystem, node: int) -> Weight:
    """Evaluate a corpus weight (``eps:`` or ``alpha:``) for a concrete rank/node."""
    tag, _, body = value.partition(":")
    tag = tag.strip()
    if tag == "alpha":
        w = Weight.parse(body)
        if len(w) != rs.rank:
            raise CorpusError(f"weight {value!r} has {len(w)} coordinates, {rs.name} has rank {rs.rank}")
        return w
    if tag != "eps":
        raise CorpusError(f"unknown weight tag {tag!r}")
    x = [Fraction(0)] * rs.rank
    pos = 0
    body = body.strip()
    while pos < len(body):
        m = _EPS_TERM.match(body, pos)
        if not m or m.end() == pos:
            raise CorpusError(f"cannot parse epsilon weight {body!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        idx = eval_affine(m.group(3), rs.rank, node)
        if idx.denominator != 1 or not 1 <= idx <= rs.rank:
            raise CorpusError(f"epsilon index {m.group(3)!r} out of range for {rs.name}")
        x[int(idx) - 1] += sign * coef
        pos = m.end()
    return rs.from_eps(x)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def iter_instances(records: Iterable[Record]):
    """Distinct (family, nodes) row keys in file order."""
    seen = []
    for r in records:
        if (r.family, r.nodes) not in seen:
            seen.append((r.family, r.nodes))
    return seen
