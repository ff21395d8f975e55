"""Special constituents of l (x) z(n): types, special values, dual weights."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Union

from . import corpus as _corpus
from .parabolic import LeviStructure, ParabolicData, levi_structure
from .roots import Weight, dominant_representative


class Unknown:
    """Marker for a special value or verdict that is not determined."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNKNOWN"

    def __str__(self):
        return "?"

    def __reduce__(self):
        return (Unknown, ())


UNKNOWN = Unknown()
SpecialValue = Union[Fraction, Unknown]


class NoCorpusData(LookupError):
    pass


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Constituent:
    kind: str  # "gamma" | "ngamma" | "omega1"
    hw: Weight
    epsilon: Optional[Weight] = None
    ctype: str = "n/a"  # "1a" | "1b" | "2" | "3" | "n/a"
    special_value: SpecialValue = UNKNOWN
    nu: Optional[Weight] = None


def _validate(hw: Weight, kind: str, pd: ParabolicData, ls: LeviStructure) -> None:
    rs = pd.rs
    where = f"{pd.name} {kind}"
    bad = [j + 1 for j in pd.pi_l if rs.pairing_simple(hw, j) < 0]
    if bad:
        raise InvariantViolation(f"{where}: {hw} is not Pi(l)-dominant (nodes {bad})")
    if hw - pd.mu not in set(pd.delta_g1):
        raise InvariantViolation(f"{where}: {hw} - mu is not a weight of g(1)")
    l_part = set(pd.delta_l) | {-b for b in pd.delta_l} | {Weight.zero(rs.rank)}
    if not any(hw - z in l_part for z in pd.delta_zn):
        raise InvariantViolation(f"{where}: {hw} is not (root of l or 0) + (root of z(n))")


def omega2_constituents(pd: ParabolicData, ls: Optional[LeviStructure] = None,
                        table: Optional[_corpus.Corpus] = None) -> list[Constituent]:
    """The special constituents V(mu+eps_gamma) and, if l_ngamma != 0, V(mu+eps_ngamma).

    The gamma highest weight is read from the corpus; the ngamma one is
    computed as xi_ngamma + gamma and compared with the corpus row.
    """
    ls = ls or levi_structure(pd)
    table = table or _corpus.load_table("T12")
    rs = pd.rs
    fam, rank, node = rs.family, rs.rank, pd.node

    rec = table.lookup(fam, rank, node, "gamma")
    if rec is None or rec.value in (_corpus.ABSENT, _corpus.UNKNOWN_MARK):
        raise NoCorpusData(f"no gamma-constituent data for {pd.name}")
    hws = [("gamma", _corpus.parse_weight(rec.value, rs, node))]

    rec_ng = table.lookup(fam, rank, node, "ngamma")
    if ls.l_ngamma:
        computed = ls.xi_ngamma + ls.gamma
        if rec_ng is not None and rec_ng.value != _corpus.ABSENT:
            listed = _corpus.parse_weight(rec_ng.value, rs, node)
            if listed != computed:
                raise InvariantViolation(
                    f"{pd.name} ngamma: computed {computed} but corpus lists {listed}")
        hws.append(("ngamma", computed))
    elif rec_ng is not None and rec_ng.value != _corpus.ABSENT:
        raise InvariantViolation(f"{pd.name}: corpus lists an ngamma constituent but l_ngamma = 0")

    out = []
    for kind, hw in hws:
        _validate(hw, kind, pd, ls)
        c = Constituent(kind=kind, hw=hw, epsilon=hw - pd.mu)
        c = replace(c, ctype=classify_type(c, pd))
        c = replace(c, special_value=special_value(c, pd), nu=dual_highest_weight(c, pd))
        out.append(c)
    return out


def omega1_constituent(pd: ParabolicData) -> Constituent:
    c = Constituent(kind="omega1", hw=pd.mu, special_value=Fraction(0))
    return replace(c, nu=dual_highest_weight(c, pd))


def classify_type(c: Constituent, pd: ParabolicData) -> str:
    """Type 1a / 1b / 2 / 3 of an Omega_2 constituent V(mu+eps)."""
    if c.kind == "omega1":
        return "n/a"
    rs = pd.rs
    mu = pd.mu
    eps = c.hw - mu
    if rs.is_root(c.hw):
        return "3"
    if eps == mu:
        return "2"
    if rs.is_long(mu) and rs.is_long(eps):
        return "1a"
    return "1b"


def delta_mu_eps(c: Constituent, pd: ParabolicData) -> list[Weight]:
    """Roots a of g(1) with hw - a also a root of g(1)."""
    g1 = set(pd.delta_g1)
    return [a for a in pd.delta_g1 if c.hw - a in g1]


def special_value(c: Constituent, pd: ParabolicData) -> SpecialValue:
    if c.kind == "omega1":
        return Fraction(0)
    ctype = c.ctype if c.ctype != "n/a" else classify_type(c, pd)
    if ctype == "1a":
        return Fraction(len(delta_mu_eps(c, pd)), 2) - 1
    if ctype == "2":
        return Fraction(-1)
    return UNKNOWN


def dual_highest_weight(c: Constituent, pd: ParabolicData) -> Weight:
    """Highest weight of V(hw)^*, i.e. the Pi(l)-dominant conjugate of -hw."""
    rs = pd.rs
    if any(rs.pairing_simple(c.hw, j) < 0 for j in pd.pi_l):
        raise ValueError(f"{c.hw} is not Pi(l)-dominant")
    nu = dominant_representative(-c.hw, pd.pi_l, rs)
    if nu.is_zero():
        raise InvariantViolation(f"{pd.name} {c.kind}: dual highest weight is 0")
    return nu


def all_constituents(pd: ParabolicData) -> list[Constituent]:
    return [omega1_constituent(pd)] + omega2_constituents(pd)
