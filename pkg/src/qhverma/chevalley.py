"""Chevalley basis structure constants via extraspecial pairs.

Convention: [X_a, X_b] = N(a, b) X_{a+b}, [X_a, X_{-a}] = H_a (the coroot),
[H, X_b] = <b, H> X_b, and N(-a, -b) = -N(a, b).  Positive roots are totally
ordered by their position in ``rs.positive_roots`` (height first).  For each
non-simple positive root xi the extraspecial pair (alpha, beta) has alpha the
earliest root with xi - alpha positive; N(alpha, beta) = sign * (p + 1) with
the sign taken from ``signs`` (default +1).  Everything else follows from the
antisymmetry, cyclic and four-root relations among the N's.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .roots import RootSystem, Weight, build_root_system


class ChevalleyBasis:
    def __init__(self, rs: RootSystem, signs: Optional[dict] = None):
        self.rs = rs
        pos = rs.positive_roots
        self._order = {b: k for k, b in enumerate(pos)}
        self._roots = set(rs.roots)
        self.extraspecial: dict[Weight, tuple[Weight, Weight]] = {}
        for xi in pos:
            for a in pos:
                if self._order[a] >= self._order[xi]:
                    break
                if xi - a in self._order:
                    self.extraspecial[xi] = (a, xi - a)
                    break
        signs = signs or {}
        unknown = set(signs) - set(self.extraspecial)
        if unknown:
            raise ValueError(f"sign given for roots without an extraspecial pair: {sorted(map(str, unknown))}")
        self.signs = {xi: signs.get(xi, 1) for xi in self.extraspecial}
        if any(s not in (1, -1) for s in self.signs.values()):
            raise ValueError("extraspecial signs must be +1 or -1")
        self._pos_memo: dict[tuple[Weight, Weight], int] = {}

    # -- structure constants -------------------------------------------------

    def string_below(self, a: Weight, b: Weight) -> int:
        """p = max{k : b - k a is a root}."""
        p = 0
        while b - a * (p + 1) in self._roots:
            p += 1
        return p

    def N(self, a: Weight, b: Weight) -> int:
        """Structure constant N_{a,b}; zero when a + b is not a root."""
        s = a + b
        if s not in self._roots:
            return 0
        a_pos = a in self._order
        b_pos = b in self._order
        if a_pos and b_pos:
            return self._npos(a, b)
        if not a_pos and not b_pos:
            return -self._npos(-a, -b)
        # mixed signs: rotate a + b + c = 0 so that the pair has equal signs
        rs = self.rs
        c = -s
        c_pos = c in self._order
        if c_pos == b_pos:
            val = rs.norm2(c) / rs.norm2(a) * self.N(b, c)
        else:
            val = rs.norm2(c) / rs.norm2(b) * self.N(c, a)
        return _as_int(val)

    def _npos(self, r: Weight, s: Weight) -> int:
        key = (r, s)
        hit = self._pos_memo.get(key)
        if hit is not None:
            return hit
        xi = r + s
        alpha, beta = self.extraspecial[xi]
        if (r, s) == (alpha, beta):
            val = self.signs[xi] * (self.string_below(alpha, beta) + 1)
        elif (s, r) == (alpha, beta):
            val = -self._npos(alpha, beta)
        else:
            rs = self.rs
            total = Fraction(0)
            if beta - r in self._roots:
                total += self.N(beta, -r) * self.N(alpha, -s) / rs.norm2(beta - r)
            if alpha - r in self._roots:
                total += self.N(-r, alpha) * self.N(beta, -s) / rs.norm2(alpha - r)
            val = _as_int(rs.norm2(xi) * total / self._npos(alpha, beta))
        self._pos_memo[key] = val
        return val

    # -- Lie bracket on basis elements ---------------------------------------
    # Elements are dicts; keys are ("x", root) or ("h", j) with h_j the
    # coroot of the j-th simple root.

    def coroot_element(self, a: Weight) -> dict:
        sign = 1
        if a not in self._order:
            a, sign = -a, -1
        return {("h", j): sign * c for j, c in enumerate(self.rs.coroot_coefficients(a)) if c}

    def bracket_basis(self, u, v) -> dict:
        rs = self.rs
        if u[0] == "h" and v[0] == "h":
            return {}
        if u[0] == "h":
            c = rs.pairing_simple(v[1], u[1])
            return {v: c} if c else {}
        if v[0] == "h":
            c = rs.pairing_simple(u[1], v[1])
            return {u: -c} if c else {}
        a, b = u[1], v[1]
        if (a + b).is_zero():
            return self.coroot_element(a)
        n = self.N(a, b)
        return {("x", a + b): n} if n else {}

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, cu in x.items():
            for v, cv in y.items():
                for w, cw in self.bracket_basis(u, v).items():
                    out[w] = out.get(w, 0) + cu * cv * cw
        return {k: c for k, c in out.items() if c}

    def basis(self) -> list:
        roots = list(self.rs.positive_roots) + [-b for b in self.rs.positive_roots]
        return [("x", a) for a in roots] + [("h", j) for j in range(self.rs.rank)]

    # -- checks ----------------------------------------------------------------

    def check_string_lengths(self) -> list[str]:
        bad = []
        for a in self.rs.roots:
            for b in self.rs.roots:
                if a + b in self._roots:
                    n = self.N(a, b)
                    if abs(n) != self.string_below(a, b) + 1:
                        bad.append(f"|N({a},{b})| = {abs(n)}")
                    if n != -self.N(b, a):
                        bad.append(f"N({a},{b}) not antisymmetric")
                    if self.N(-a, -b) != -n:
                        bad.append(f"N(-a,-b) != -N(a,b) at ({a},{b})")
        return bad

    def jacobi_residual(self, roots_only: bool = True) -> int:
        """Number of basis triples where the Jacobi identity fails."""
        full = self.basis()
        index = {u: k for k, u in enumerate(full)}
        dim = len(full)
        table = [[tuple((index[w], c) for w, c in self.bracket_basis(u, v).items())
                  for v in full] for u in full]
        elems = [index[u] for u in full if not roots_only or u[0] == "x"]

        def nested(x, y, z, acc):
            # acc += [x, [y, z]]
            for w, c in table[y][z]:
                for t, d in table[x][w]:
                    acc[t] += c * d

        failures = 0
        for x in elems:
            for y in elems:
                for z in elems:
                    acc = [0] * dim
                    nested(x, y, z, acc)
                    nested(y, z, x, acc)
                    nested(z, x, y, acc)
                    if any(acc):
                        failures += 1
        return failures


def _as_int(q) -> int:
    q = Fraction(q)
    if q.denominator != 1:
        raise ArithmeticError(f"structure constant {q} is not an integer")
    return int(q)


def random_signs(rs: RootSystem, seed: int) -> dict:
    """A reproducible random sign assignment on the extraspecial pairs."""
    rng = random.Random(seed)
    cb = ChevalleyBasis(rs)
    return {xi: rng.choice((1, -1)) for xi in cb.extraspecial}


@lru_cache(maxsize=None)
def build_chevalley(family: str, rank: int) -> ChevalleyBasis:
    rs = build_root_system(family, rank)
    if rank > 8:
        raise ValueError("rank must be at most 8")
    return ChevalleyBasis(rs)
