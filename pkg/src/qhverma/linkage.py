"""Linkage of Verma module parameters and the standard/non-standard classifier."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import _kernel
from .omega import (UNKNOWN, Constituent, InvariantViolation, Unknown,
                    all_constituents)
from .parabolic import ParabolicData, parse_target
from .roots import RootSystem, Weight

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV = "QHVERMA_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class LinkQuery:
    delta: Weight
    lam: Weight
    rs: RootSystem


@dataclass(frozen=True)
class LinkStep:
    root: Weight
    pairing: Fraction


@dataclass(frozen=True)
class LinkCertificate:
    outcome: str  # "found" | "none" | "inconclusive"
    steps: tuple = ()
    explored: int = 0
    budget_hit: bool = False
    reason: str = ""

    @property
    def sequence(self) -> tuple[Weight, ...]:
        return tuple(s.root for s in self.steps)

    def __len__(self):
        return len(self.steps)


def link_exists(q: LinkQuery, budget: Optional[int] = None, *, search=None) -> LinkCertificate:
    """Search for positive roots b_1..b_t carrying delta to lambda.

    Each step needs a pairing <w, b^vee> in {1, 2, ...}; zero pairings fix
    the weight and are skipped.  ``search`` overrides the kernel backend.
    """
    budget = default_budget() if budget is None else budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    rs = q.rs
    diff = q.delta - q.lam
    if not diff.is_integral() or any(c < 0 for c in diff):
        return LinkCertificate("none", explored=0,
                               reason=f"delta - lambda = {diff.format()} is not a nonnegative integral combination")
    bound = [int(c) for c in diff]

    roots, kept = [], []
    for beta in rs.positive_roots:
        d = rs.pairing(q.delta, beta)
        if d.denominator != 1:
            continue  # half-integral pairings never become integral inside the box
        row = [rs.pairing(a, beta) for a in rs.simple_roots]
        roots.append((int(d), [int(c) for c in beta], [int(x) for x in row]))
        kept.append(beta)

    status, path, explored = (search or _kernel.search)(bound, roots, budget)
    if status == 0:
        steps = tuple(LinkStep(kept[p], Fraction(c)) for p, c in path)
        return LinkCertificate("found", steps, explored)
    if status == 1:
        return LinkCertificate("none", explored=explored, reason="search box exhausted")
    return LinkCertificate("inconclusive", explored=explored, budget_hit=True,
                           reason=f"budget of {budget} weights exhausted")


def replay_check(q: LinkQuery, cert: LinkCertificate) -> bool:
    """Re-verify a found certificate step by step with exact arithmetic."""
    if cert.outcome != "found":
        return False
    rs = q.rs
    w = q.delta
    for step in cert.steps:
        if not rs.is_positive_root(step.root):
            return False
        c = rs.pairing(w, step.root)
        if c != step.pairing or c.denominator != 1 or c < 0:
            return False
        w = w - step.root * c
    return w == q.lam


@dataclass(frozen=True)
class Witness:
    tag: str  # "shortcut" | "link" | "exhaustive" | "inconclusive" | "unknown-special-value"
    alpha: Optional[int] = None  # 0-based simple root whose query produced the link
    query: Optional[LinkQuery] = field(default=None, repr=False)
    certificate: Optional[LinkCertificate] = None
    explored: int = 0


@dataclass(frozen=True)
class Verdict:
    map_id: str  # "omega1" | "omega2-gamma" | "omega2-ngamma"
    standard_map_nonzero: Union[bool, Unknown]
    phi_classification: str  # "standard" | "non-standard" | "unknown"
    witness: Witness
    constituent: Constituent


def _regular_dominant(w: Weight, pd: ParabolicData) -> None:
    rs = pd.rs
    for j in pd.pi_l:
        c = rs.pairing_simple(w, j)
        if c.denominator != 1 or c < 1:
            raise ValueError(f"{w.format()} fails dominance-regularity at node {j + 1}: pairing {c}")


def _shortcut_applies(nu: Weight, s0: Fraction, pd: ParabolicData) -> bool:
    m = 1 - s0
    return m.denominator == 1 and m >= 1 and nu == pd.alpha_q * (-m)


def standard_map_nonzero(nu: Weight, s0: Fraction, pd: ParabolicData,
                         budget: Optional[int] = None, *, search=None):
    """Whether the standard map into M_q(nu - s0 lambda_q + rho) is nonzero.

    Returns ``(True | False | UNKNOWN, Witness)``.  The map vanishes exactly
    when some -alpha - s0 lambda_q + rho (alpha in Pi(l)) links to the target.
    """
    rs = pd.rs
    shift = rs.rho - pd.lambda_q * s0
    target = nu + shift
    _regular_dominant(target, pd)
    _regular_dominant(shift, pd)

    found = None
    total = 0
    inconclusive = None
    for j in pd.pi_l:
        q = LinkQuery(-rs.simple_roots[j] + shift, target, rs)
        cert = link_exists(q, budget, search=search)
        total += cert.explored
        if cert.outcome == "found":
            if not replay_check(q, cert):
                raise InvariantViolation(f"link certificate failed replay for alpha_{j + 1}")
            found = Witness("link", j, q, cert, total)
            break
        if cert.outcome == "inconclusive" and inconclusive is None:
            inconclusive = Witness("inconclusive", j, q, cert, total)

    if found is not None:
        searched = False
    elif inconclusive is not None:
        searched = UNKNOWN
    else:
        searched = True

    if _shortcut_applies(nu, s0, pd):
        if searched is False:
            raise InvariantViolation(f"{pd.name}: shortcut says nonzero but a link was found")
        return True, Witness("shortcut", explored=total)
    if found is not None:
        return False, found
    if inconclusive is not None:
        return UNKNOWN, inconclusive
    return True, Witness("exhaustive", explored=total)


_MAP_IDS = {"omega1": "omega1", "gamma": "omega2-gamma", "ngamma": "omega2-ngamma"}


def classify_constituent(c: Constituent, pd: ParabolicData,
                         budget: Optional[int] = None, *, search=None) -> Verdict:
    map_id = _MAP_IDS[c.kind]
    if isinstance(c.special_value, Unknown):
        return Verdict(map_id, UNKNOWN, "unknown", Witness("unknown-special-value"), c)
    nonzero, witness = standard_map_nonzero(c.nu, c.special_value, pd, budget, search=search)
    if isinstance(nonzero, Unknown):
        cls = "unknown"
    else:
        cls = "standard" if nonzero else "non-standard"
    return Verdict(map_id, nonzero, cls, witness, c)


def classify_phi(family: str, rank: int, node: int, budget: Optional[int] = None,
                 *, search=None) -> list[Verdict]:
    """Verdicts for the Omega_1 map and each Omega_2 constituent."""
    pd = parse_target(family, rank, node)
    return [classify_constituent(c, pd, budget, search=search) for c in all_constituents(pd)]
