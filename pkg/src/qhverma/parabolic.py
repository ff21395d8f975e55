"""Maximal parabolic subalgebras: grading, quasi-Heisenberg test, Levi factors."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .roots import RootSystem, RootSystemError, Weight, build_root_system

SCAN_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


class ParabolicError(ValueError):
    pass


class ThreeFactorLevi(ParabolicError):
    """The semisimple Levi part has three simple ideals (type D_n(n-2))."""


@dataclass(frozen=True)
class ParabolicData:
    rs: RootSystem
    crossed: int  # 0-based index of alpha_q
    level: dict = field(repr=False, compare=False)
    delta_l: tuple = field(repr=False)
    delta_g1: tuple = field(repr=False)
    delta_zn: tuple = field(repr=False)
    depth: int
    is_quasi_heisenberg: bool
    lambda_q: Weight = field(repr=False)

    @property
    def node(self) -> int:
        """1-based Bourbaki label of the crossed node."""
        return self.crossed + 1

    @property
    def name(self) -> str:
        return f"{self.rs.name}({self.node})"

    @property
    def alpha_q(self) -> Weight:
        return self.rs.simple_roots[self.crossed]

    @property
    def pi_l(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.rs.rank) if j != self.crossed)

    @property
    def mu(self) -> Weight:
        """Highest weight of g(1)."""
        return extreme_weight(self.delta_g1, self.pi_l, self.rs, "highest")


def build_parabolic(rs: RootSystem, crossed: int) -> ParabolicData:
    """Grade ``rs`` by the multiplicity of the simple root ``crossed`` (0-based)."""
    if not 0 <= crossed < rs.rank:
        raise ParabolicError(f"node {crossed + 1} is not a node of {rs.name}")
    level = {beta: int(beta[crossed]) for beta in rs.positive_roots}
    depth = max(level.values())
    by_level: dict[int, list] = {}
    for beta in rs.positive_roots:
        by_level.setdefault(level[beta], []).append(beta)
    delta_zn = tuple(by_level.get(2, ())) if depth == 2 else ()
    return ParabolicData(
        rs=rs,
        crossed=crossed,
        level=level,
        delta_l=tuple(by_level.get(0, ())),
        delta_g1=tuple(by_level.get(1, ())),
        delta_zn=delta_zn,
        depth=depth,
        is_quasi_heisenberg=depth == 2 and len(delta_zn) > 1,
        lambda_q=rs.fundamental_weights[crossed],
    )


@lru_cache(maxsize=None)
def parabolic(family: str, rank: int, node: int) -> ParabolicData:
    """Cached ``build_parabolic`` keyed by Bourbaki data (node is 1-based)."""
    return build_parabolic(build_root_system(family, rank), node - 1)


def ranks_for(family: str, max_rank: int) -> list[int]:
    lo = {"A": 1, "B": 2, "C": 3, "D": 4}
    if family in lo:
        return list(range(lo[family], max_rank + 1))
    fixed = {"E": [6, 7, 8], "F": [4], "G": [2]}[family]
    return [r for r in fixed if r <= max_rank]


def scan_quasi_heisenberg(max_rank: int, *, include_three_factor: bool = False) -> list[tuple[str, int, int]]:
    """All (family, rank, node) with a quasi-Heisenberg maximal parabolic.

    Parabolics whose Levi factor has three simple ideals (D_n(n-2)) are left
    out unless ``include_three_factor`` is set; they are quasi-Heisenberg but
    admit no split into l_gamma and l_ngamma.
    """
    if max_rank < 1:
        raise ParabolicError("max_rank must be positive")
    found = []
    for family in SCAN_FAMILIES:
        for rank in ranks_for(family, max_rank):
            for node in range(1, rank + 1):
                pd = parabolic(family, rank, node)
                if not pd.is_quasi_heisenberg:
                    continue
                if not include_three_factor and len(levi_components(pd)) > 2:
                    continue
                found.append((family, rank, node))
    return found


def _components(rs: RootSystem, nodes) -> list[tuple[int, ...]]:
    remaining = set(nodes)
    comps = []
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        while stack:
            a = stack.pop()
            for b in list(remaining - comp):
                if rs.gram[a][b] != 0:
                    comp.add(b)
                    stack.append(b)
        remaining -= comp
        comps.append(tuple(sorted(comp)))
    return sorted(comps)


def levi_components(pd: ParabolicData) -> list[tuple[int, ...]]:
    """Connected components of the Dynkin diagram on Pi(l) (0-based nodes)."""
    return _components(pd.rs, pd.pi_l)


def highest_root_of(rs: RootSystem, support) -> Optional[Weight]:
    """Highest positive root supported on the simple roots ``support``."""
    support = set(support)
    cands = [b for b in rs.positive_roots
             if all(c == 0 for j, c in enumerate(b) if j not in support)]
    if not cands:
        return None
    return max(cands, key=rs.height)


@dataclass(frozen=True)
class LeviStructure:
    pi_l: tuple
    components: tuple
    alpha_gamma: int  # 0-based simple-root index
    l_gamma: tuple
    l_ngamma: tuple  # empty when l_ngamma = {0}
    gamma: Weight
    xi_gamma: Weight
    xi_ngamma: Optional[Weight]

    def roots_of(self, pd: ParabolicData, part: str) -> tuple[Weight, ...]:
        """Positive roots of ``l_gamma`` or ``l_ngamma``."""
        nodes = set(self.l_gamma if part == "gamma" else self.l_ngamma)
        return tuple(b for b in pd.delta_l
                     if all(c == 0 for j, c in enumerate(b) if j not in nodes))


def levi_structure(pd: ParabolicData) -> LeviStructure:
    rs = pd.rs
    if rs.family == "A":
        raise ParabolicError("type A has no unique simple root attached to the highest root")
    if not pd.is_quasi_heisenberg:
        raise ParabolicError(f"{pd.name} is not of quasi-Heisenberg type")
    comps = levi_components(pd)
    if len(comps) > 2:
        raise ThreeFactorLevi(
            f"{pd.name}: Levi factor has {len(comps)} simple ideals; "
            "the l_gamma / l_ngamma split needs at most two")
    gamma = rs.highest_root
    touching = [j for j in range(rs.rank) if rs.pairing_simple(gamma, j) != 0]
    if len(touching) != 1:
        raise ParabolicError(f"{rs.name}: highest root is not orthogonal to {len(touching)} simple roots")
    a_gamma = touching[0]
    if a_gamma == pd.crossed:
        raise ParabolicError(f"{pd.name}: crossed node is the Heisenberg node")
    l_gamma = next(c for c in comps if a_gamma in c)
    l_ngamma = tuple(sorted(j for c in comps if c != l_gamma for j in c))
    return LeviStructure(
        pi_l=pd.pi_l,
        components=tuple(comps),
        alpha_gamma=a_gamma,
        l_gamma=l_gamma,
        l_ngamma=l_ngamma,
        gamma=gamma,
        xi_gamma=highest_root_of(rs, l_gamma),
        xi_ngamma=highest_root_of(rs, l_ngamma) if l_ngamma else None,
    )


def extreme_weight(roots, pi_l, rs: RootSystem, which: str = "highest") -> Weight:
    """Unique highest (or lowest) element of ``roots`` under Pi(l).

    ``roots`` must be the weight support of an irreducible l-module with
    one-dimensional extreme weight spaces, e.g. g(1) or z(n).
    """
    if which not in ("highest", "lowest"):
        raise ValueError("which must be 'highest' or 'lowest'")
    sign = 1 if which == "highest" else -1
    pool = set(roots)
    simple = [rs.simple_roots[j] for j in pi_l]
    ext = [w for w in pool if all(w + sign * a not in pool for a in simple)]
    if len(ext) != 1:
        raise ParabolicError(f"{which} weight is not unique ({len(ext)} candidates)")
    return ext[0]


def parse_target(family: str, rank: int, node: int) -> ParabolicData:
    """Build the parabolic and require the quasi-Heisenberg property."""
    try:
        pd = parabolic(family.upper(), int(rank), int(node))
    except RootSystemError as exc:
        raise ParabolicError(str(exc)) from None
    if not pd.is_quasi_heisenberg:
        raise ParabolicError(f"{pd.name} is not of quasi-Heisenberg type "
                             f"(nilradical depth {pd.depth}, dim z(n) = {len(pd.delta_zn)})")
    return pd
