"""Exact root systems of the simple Lie algebras A-G.

Weights are stored as rational coordinate vectors in the basis of simple
roots.  The inner product comes from a Gram matrix normalised so that long
roots have squared length 2.  Positive roots are generated by closing the
simple roots under root strings; no root tables are hard-coded.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy

FAMILIES = "ABCDEFG"

# Bourbaki Dynkin diagrams: edges between simple roots (1-based).
_EDGES_E = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


class RootSystemError(ValueError):
    pass


class Weight:
    """An exact rational vector in the simple-root basis."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Iterable):
        self.coords = tuple(Fraction(c) for c in coords)
        self._hash = hash(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, Weight):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Weight":
        return Weight(-a for a in self.coords)

    def __mul__(self, k) -> "Weight":
        k = Fraction(k)
        return Weight(k * a for a in self.coords)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Weight({', '.join(str(c) for c in self.coords)})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls([0] * rank)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse ``"1,0,-1/2"`` (comma-separated rationals)."""
        try:
            return cls(Fraction(part.strip()) for part in text.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse weight {text!r}: {exc}") from None

    def format(self) -> str:
        return ",".join(str(c) for c in self.coords)


def _diagram(family: str, rank: int):
    """Return (edges, squared lengths) in Bourbaki numbering."""
    n = rank
    chain = [(j, j + 1) for j in range(1, n)]
    two = Fraction(2)
    if family == "A":
        return chain, [two] * n
    if family == "B":
        return chain, [two] * (n - 1) + [Fraction(1)]
    if family == "C":
        return chain, [Fraction(1)] * (n - 1) + [two]
    if family == "D":
        return chain[:-1] + [(n - 2, n)], [two] * n
    if family == "E":
        return [e for e in _EDGES_E if max(e) <= n], [two] * n
    if family == "F":
        return chain, [two, two, Fraction(1), Fraction(1)]
    if family == "G":
        return chain, [Fraction(2, 3), two]
    raise AssertionError(family)


def validate_type(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 3,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(family)
    if not ok:
        if ok is None:
            raise RootSystemError(f"unknown family {family!r}; expected one of {FAMILIES}")
        raise RootSystemError(f"{family}{rank} is not a valid simple type "
                              "(A1+, B2+, C3+, D4+, E6-E8, F4, G2)")


def parse_type(text: str) -> tuple[str, int]:
    """``"E6"`` -> ``("E", 6)``."""
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
    if not m:
        raise RootSystemError(f"cannot parse Lie type {text!r}")
    return m.group(1).upper(), int(m.group(2))


class RootSystem:
    """Roots, Gram data, rho and fundamental weights of one simple type.

    Instances are immutable after construction; use :func:`build_root_system`
    which caches them.
    """

    def __init__(self, family: str, rank: int):
        validate_type(family, rank)
        self.family = family
        self.rank = rank
        self.name = f"{family}{rank}"
        edges, lengths = _diagram(family, rank)
        gram = [[Fraction(0)] * rank for _ in range(rank)]
        for i in range(rank):
            gram[i][i] = lengths[i]
        for a, b in edges:
            # <alpha_a, alpha_b> = -(longer squared length)/2 on any bond
            gram[a - 1][b - 1] = gram[b - 1][a - 1] = -max(lengths[a - 1], lengths[b - 1]) / 2
        self.gram = tuple(tuple(row) for row in gram)
        # cartan[i][j] = <alpha_i, alpha_j^vee>
        self.cartan = tuple(
            tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(rank)) for i in range(rank)
        )
        self.simple_roots = tuple(
            Weight(1 if j == i else 0 for j in range(rank)) for i in range(rank)
        )
        self.positive_roots = self._enumerate_positive_roots()
        self._root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self._max_norm = max(self.norm2(r) for r in self.positive_roots)
        half = Fraction(1, 2)
        total = [Fraction(0)] * rank
        for r in self.positive_roots:
            for j in range(rank):
                total[j] += r[j]
        self.rho = Weight(half * t for t in total)
        inv = sympy.Matrix(self.cartan).inv()
        # lambda_i = sum_j inv[i, j] alpha_j  since <alpha_j, alpha_k^vee> = cartan[j][k]
        self.fundamental_weights = tuple(
            Weight(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(rank))
            for i in range(rank)
        )
        self.highest_root = max(self.positive_roots, key=self.height)

    def __repr__(self):
        return f"RootSystem({self.name})"

    def _enumerate_positive_roots(self) -> tuple[Weight, ...]:
        # Closure by root strings: beta + alpha_i is a root iff q > 0, where
        # p - q = <beta, alpha_i^vee> and p is the length of the downward string.
        rank = self.rank
        level = list(self.simple_roots)
        found = set(level)
        ordered = list(level)
        while level:
            nxt = []
            for beta in level:
                for i in range(rank):
                    p = 0
                    down = beta - self.simple_roots[i]
                    while down in found:
                        p += 1
                        down = down - self.simple_roots[i]
                    q = p - self.pairing_simple(beta, i)
                    if q > 0:
                        up = beta + self.simple_roots[i]
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            nxt.sort(key=lambda w: tuple(-c for c in w))
            ordered.extend(nxt)
            level = nxt
        return tuple(ordered)

    # -- bilinear form -------------------------------------------------
    def inner(self, u: Weight, v: Weight) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for i, ui in enumerate(u.coords):
            if ui:
                row = g[i]
                for j, vj in enumerate(v.coords):
                    if vj and row[j]:
                        total += ui * row[j] * vj
        return total

    def norm2(self, u: Weight) -> Fraction:
        return self.inner(u, u)

    def pairing_simple(self, w: Weight, i: int) -> Fraction:
        """<w, alpha_i^vee> for the i-th simple root (0-based)."""
        return sum((c * self.cartan[j][i] for j, c in enumerate(w.coords) if c), Fraction(0))

    def dynkin_labels(self, w: Weight) -> tuple[Fraction, ...]:
        return tuple(self.pairing_simple(w, i) for i in range(self.rank))

    # -- roots ---------------------------------------------------------
    @property
    def roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + tuple(-r for r in self.positive_roots)

    def is_root(self, w: Weight) -> bool:
        return w in self._root_index or -w in self._root_index

    def is_positive_root(self, w: Weight) -> bool:
        return w in self._root_index

    def root_index(self, w: Weight) -> int:
        """Index of a positive root in :attr:`positive_roots`."""
        try:
            return self._root_index[w]
        except KeyError:
            raise RootSystemError(f"{w} is not a positive root of {self.name}") from None

    def height(self, w: Weight) -> Fraction:
        return sum(w.coords, Fraction(0))

    def is_long(self, w: Weight) -> bool:
        return self.norm2(w) == self._max_norm

    def coroot_coefficients(self, beta: Weight) -> tuple[Fraction, ...]:
        """Coefficients of beta^vee in the simple coroot basis."""
        n2 = self.norm2(beta)
        return tuple(beta[j] * self.gram[j][j] / n2 for j in range(self.rank))

    def _check_root(self, beta: Weight) -> None:
        if not self.is_root(beta):
            raise RootSystemError(f"{beta} is not a root of {self.name}")

    def pairing(self, w: Weight, beta: Weight) -> Fraction:
        """<w, beta^vee> = 2<w, beta>/<beta, beta>."""
        self._check_root(beta)
        return 2 * self.inner(w, beta) / self.norm2(beta)

    def reflect(self, w: Weight, beta: Weight) -> Weight:
        return w - self.pairing(w, beta) * beta

    # -- classical epsilon coordinates ------------------------------------
    @property
    def eps_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Simple roots written in the standard epsilon basis (B, C, D only)."""
        n = self.rank
        if self.family not in "BCD":
            raise RootSystemError(f"no epsilon realization for type {self.family}")
        rows = []
        for j in range(n - 1):
            row = [Fraction(0)] * n
            row[j], row[j + 1] = Fraction(1), Fraction(-1)
            rows.append(row)
        last = [Fraction(0)] * n
        if self.family == "B":
            last[n - 1] = Fraction(1)
        elif self.family == "C":
            last[n - 1] = Fraction(2)
        else:
            last[n - 2] = last[n - 1] = Fraction(1)
        rows.append(last)
        return tuple(tuple(r) for r in rows)

    def to_eps(self, w: Weight) -> tuple[Fraction, ...]:
        e = self.eps_matrix
        return tuple(
            sum((w[j] * e[j][k] for j in range(self.rank)), Fraction(0)) for k in range(self.rank)
        )

    def from_eps(self, x: Sequence) -> Weight:
        e = self.eps_matrix
        sol = sympy.Matrix(e).T.solve(sympy.Matrix([sympy.Rational(str(Fraction(v))) for v in x]))
        return Weight(Fraction(int(s.p), int(s.q)) for s in sol)

    def eps(self, *terms: tuple) -> Weight:
        """``rs.eps((2, 1), (1, 3))`` is 2e1 + e3 (1-based indices)."""
        x = [Fraction(0)] * self.rank
        for coef, idx in terms:
            x[idx - 1] += Fraction(coef)
        return self.from_eps(x)


def format_eps(rs: RootSystem, w: Weight) -> str:
    return format_linear(rs.to_eps(w), "e")


def format_alpha(w: Weight) -> str:
    return format_linear(w.coords, "a")


def format_linear(coeffs: Sequence[Fraction], symbol: str) -> str:
    parts = []
    for k, c in enumerate(coeffs, start=1):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = f"{symbol}{k}" if mag == 1 else f"{mag}{symbol}{k}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct (and cache) the root system of type ``family``\\ ``rank``.

    Raises
    ------
    RootSystemError
        If ``(family, rank)`` is not a valid simple type.
    """
    return RootSystem(family.upper(), int(rank))


def pairing(w: Weight, beta: Weight, rs: RootSystem) -> Fraction:
    return rs.pairing(w, beta)


def reflect(w: Weight, beta: Weight, rs: RootSystem) -> Weight:
    return rs.reflect(w, beta)


def dominant_representative(w: Weight, subset: Iterable[int], rs: RootSystem) -> Weight:
    """Move ``w`` into the dominant chamber of the Weyl group of ``subset``.

    ``subset`` holds 0-based simple-root indices.  Reflections are applied at
    any simple root with negative pairing until none remains; this terminates
    because each step raises the weight in the dominance order of a finite orbit.
    """
    idx = sorted(subset)
    while True:
        for i in idx:
            c = rs.pairing_simple(w, i)
            if c < 0:
                w = w - c * rs.simple_roots[i]
                break
        else:
            return w
