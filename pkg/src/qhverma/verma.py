"""Low-degree calculus in M_q(-s0 lambda_q + rho), identified with U(nbar) (x) 1.

Elements are dicts from PBW monomials to Fractions.  A monomial is a sorted
tuple of indices into ``rs.positive_roots``; index k stands for
Y_k = X_{-beta_k} with beta_k a root of the nilradical.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy

from .chevalley import ChevalleyBasis
from .parabolic import ParabolicData
from .roots import Weight


class VermaError(ValueError):
    pass


def _add(acc: dict, elem: dict, scale=1) -> None:
    for m, c in elem.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


class VermaModule:
    def __init__(self, pd: ParabolicData, s0, cb: ChevalleyBasis):
        if cb.rs is not pd.rs and cb.rs.name != pd.rs.name:
            raise VermaError("Chevalley basis and parabolic live on different root systems")
        self.pd = pd
        self.cb = cb
        self.s0 = Fraction(s0)
        rs = pd.rs
        self._index = {b: k for k, b in enumerate(rs.positive_roots)}
        self._nbar = {k for k, b in enumerate(rs.positive_roots) if pd.level[b] >= 1}
        self._mul_memo: dict = {}
        self._act_memo: dict = {}

    # -- helpers ---------------------------------------------------------------

    def y(self, beta: Weight) -> int:
        k = self._index.get(beta)
        if k is None or k not in self._nbar:
            raise VermaError(f"{beta} is not a root of the nilradical")
        return k

    def monomial(self, *betas: Weight) -> dict:
        """Y_{b1} Y_{b2} ... (x) 1 in PBW form."""
        elem = {(): Fraction(1)}
        for b in reversed(betas):
            elem = self.left_mul(self.y(b), elem)
        return elem

    def sym(self, b1: Weight, b2: Weight) -> dict:
        """Symmetrized product (Y_{b1} Y_{b2} + Y_{b2} Y_{b1}) / 2 (x) 1."""
        out: dict = {}
        _add(out, self.monomial(b1, b2), Fraction(1, 2))
        _add(out, self.monomial(b2, b1), Fraction(1, 2))
        return out

    def weight(self, mono: tuple) -> Weight:
        w = Weight.zero(self.pd.rs.rank)
        for k in mono:
            w = w - self.pd.rs.positive_roots[k]
        return w

    def character(self, j: int) -> Fraction:
        """Value of -s0 lambda_q on the simple coroot h_j."""
        return -self.s0 if j == self.pd.crossed else Fraction(0)

    # -- products and the g-action ------------------------------------------------

    def left_mul(self, k: int, elem: dict) -> dict:
        out: dict = {}
        for m, c in elem.items():
            _add(out, self._left_mul_mono(k, m), c)
        return out

    def _left_mul_mono(self, k: int, mono: tuple) -> dict:
        key = (k, mono)
        hit = self._mul_memo.get(key)
        if hit is not None:
            return hit
        if not mono or k <= mono[0]:
            out = {(k,) + mono: Fraction(1)}
        else:
            # Y_k Y_m = Y_m Y_k + [Y_k, Y_m]
            first, rest = mono[0], mono[1:]
            out = {}
            _add(out, self.left_mul(first, self._left_mul_mono(k, rest)))
            rs = self.pd.rs
            bk, bm = rs.positive_roots[k], rs.positive_roots[first]
            n = self.cb.N(-bk, -bm)
            if n:
                _add(out, self._left_mul_mono(self._index[bk + bm], rest), n)
        self._mul_memo[key] = out
        return out

    def act(self, x: dict, elem: dict) -> dict:
        """x . elem for x a Lie algebra element in ChevalleyBasis dict form."""
        out: dict = {}
        for b, cb_coef in x.items():
            for m, c in elem.items():
                _add(out, self._act_basis(b, m), cb_coef * c)
        return out

    def _act_basis(self, b, mono: tuple) -> dict:
        key = (b, mono)
        hit = self._act_memo.get(key)
        if hit is not None:
            return hit
        if b[0] == "x" and -b[1] in self._index and self._index[-b[1]] in self._nbar:
            out = self._left_mul_mono(self._index[-b[1]], mono)
        elif not mono:
            out = {(): self.character(b[1])} if b[0] == "h" and self.character(b[1]) else {}
        else:
            first, rest = mono[0], mono[1:]
            y_first = ("x", -self.pd.rs.positive_roots[first])
            out = self.act(self.cb.bracket_basis(b, y_first), {rest: Fraction(1)})
            _add(out, self.left_mul(first, self._act_basis(b, rest)))
        self._act_memo[key] = out
        return out

    def raise_(self, alpha: Weight, elem: dict) -> dict:
        """Apply the root vector X_alpha to elem."""
        if not self.pd.rs.is_root(alpha):
            raise VermaError(f"{alpha} is not a root")
        return self.act({("x", alpha): 1}, elem)


# -- Condition (H) on B_n(i) ------------------------------------------------------


@dataclass
class RelationCheck:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class ConditionHResult:
    target: str
    dimension: int
    coefficients: dict  # label -> Fraction, normalized so the X^2_{-eps_i} coefficient is 1
    b: dict  # k -> b_k
    relations: list = field(default_factory=list)
    annihilated: bool = False
    normal_form_only: bool = False

    @property
    def ok(self) -> bool:
        return (self.dimension == 1 and self.annihilated and self.normal_form_only
                and all(r.ok for r in self.relations))


def _require_b_interior(pd: ParabolicData) -> tuple[int, int]:
    n, i = pd.rs.rank, pd.node
    if pd.rs.family != "B" or not 3 <= i <= n - 1:
        raise VermaError(f"{pd.name}: needs type B_n(i) with 3 <= i <= n-1")
    return n, i


def condition_h_solve(pd: ParabolicData, cb: ChevalleyBasis, s0=None) -> ConditionHResult:
    """Solve for degree-2 elements of weight -2 eps_i killed by every X_alpha, alpha in Pi(l)."""
    n, i = _require_b_interior(pd)
    rs = pd.rs
    s0 = Fraction(2 * (n - i) - 1, 2) if s0 is None else s0
    vm = VermaModule(pd, s0, cb)
    e = lambda *t: rs.eps(*t)
    two_eps = e((2, i))

    nil = list(pd.delta_g1) + list(pd.delta_zn)
    pairs = []
    for a_pos, a in enumerate(nil):
        for b in nil[a_pos:]:
            if a + b == two_eps:
                pairs.append((a, b))
    if rs.is_root(two_eps):
        raise VermaError("2 eps_i unexpectedly a root")

    eps_i = e((1, i))
    labels = {}
    for a, b in pairs:
        if a == b == eps_i:
            labels[(a, b)] = "A"
        else:
            plus, minus = (a, b) if a - b in (e((2, k)) for k in range(i + 1, n + 1)) else (b, a)
            k = next((k for k in range(i + 1, n + 1) if plus == e((1, i), (1, k))), None)
            labels[(a, b)] = f"B{k}" if k is not None and minus == e((1, i), (-1, k)) else None
    normal_form_only = all(v is not None for v in labels.values())

    columns = [vm.sym(a, b) for a, b in pairs]
    rows: dict = {}
    for j in pd.pi_l:
        alpha = rs.simple_roots[j]
        for col, elem in enumerate(columns):
            for m, c in vm.raise_(alpha, elem).items():
                rows.setdefault((j, m), [Fraction(0)] * len(columns))[col] += c
    mat = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows.values()]) \
        if rows else sympy.zeros(0, len(columns))
    null = mat.nullspace() if rows else [sympy.eye(len(columns))[:, k] for k in range(len(columns))]
    result = ConditionHResult(pd.name, len(null), {}, {}, normal_form_only=normal_form_only)
    if len(null) != 1:
        return result

    vec = [Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in null[0]]
    a_col = next(c for c, p in enumerate(pairs) if labels[p] == "A")
    if vec[a_col] == 0:
        return result
    vec = [v / vec[a_col] for v in vec]
    for p, v in zip(pairs, vec):
        result.coefficients[labels[p] or f"{p[0]}*{p[1]}"] = v
    result.b = {int(lbl[1:]): v for lbl, v in result.coefficients.items() if lbl and lbl.startswith("B")}

    u = {}
    for col, elem in enumerate(columns):
        _add(u, elem, vec[col])
    result.annihilated = all(not vm.raise_(rs.simple_roots[j], u) for j in pd.pi_l)

    # b_n = -2 N(eps_n, -eps_i) / N(eps_n, -(eps_i + eps_n))
    N = cb.N
    bn = Fraction(-2 * N(e((1, n)), -e((1, i))), N(e((1, n)), -e((1, i), (1, n))))
    result.relations.append(RelationCheck(f"b_{n}", result.b.get(n), bn))
    for j in range(i + 1, n):
        prod = Fraction(1)
        for k in range(j, n):
            alpha_k = rs.simple_roots[k - 1]
            prod *= Fraction(N(alpha_k, -e((1, i), (-1, k + 1))), N(alpha_k, -e((1, i), (1, k))))
        expected = (-1) ** (n - j) * result.b.get(n) * prod
        result.relations.append(RelationCheck(f"b_{j}", result.b.get(j), expected))
    return result


def root_gap_check(pd: ParabolicData) -> bool:
    """2 eps_i - beta is never a positive root for beta in Delta+(l) or Delta(z(n))."""
    _, i = _require_b_interior(pd)
    rs = pd.rs
    two_eps = rs.eps((2, i))
    positive = set(rs.positive_roots)
    return all(two_eps - b not in positive for b in list(pd.delta_l) + list(pd.delta_zn))


# -- type 2 constituents -----------------------------------------------------------


@dataclass
class RaisingResult:
    target: str
    path: list  # simple roots (0-based) applied in order
    coefficient: Optional[Fraction]
    expected: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        if self.coefficient is None or self.coefficient == 0:
            return False
        return self.expected is None or self.coefficient == self.expected


def type2_identity(pd: ParabolicData, cb: ChevalleyBasis) -> RaisingResult:
    """X_{e1-en}^2 . X_{-e1}^2 (x) 1 = 2 N(e1-en, -e1)^2 X_{-en}^2 (x) 1 on B_n(n)."""
    rs = pd.rs
    n = rs.rank
    if rs.family != "B" or pd.node != n:
        raise VermaError(f"{pd.name}: the raising identity is stated for B_n(n)")
    vm = VermaModule(pd, -1, cb)
    e1, en = rs.eps((1, 1)), rs.eps((1, n))
    x = e1 - en
    out = vm.raise_(x, vm.raise_(x, vm.monomial(e1, e1)))
    target = (vm.y(en), vm.y(en))
    if set(out) - {target}:
        return RaisingResult(pd.name, [], None)
    coef = out.get(target, Fraction(0))
    return RaisingResult(pd.name, [], coef, Fraction(2 * cb.N(x, -e1) ** 2))


def type2_reachability(pd: ParabolicData, cb: ChevalleyBasis, mu: Optional[Weight] = None) -> RaisingResult:
    """Raise X_{-mu}^2 (x) 1 by simple Levi roots until it reaches weight -2 alpha_q."""
    rs = pd.rs
    mu = pd.mu if mu is None else mu
    vm = VermaModule(pd, -1, cb)
    aq = pd.alpha_q
    goal = (vm.y(aq), vm.y(aq))

    goal_w = aq * -2

    def dfs(elem, w, path):
        if w == goal_w:
            if set(elem) == {goal}:
                return path, elem[goal]
            return None
        for j in pd.pi_l:
            nxt_w = w + rs.simple_roots[j]
            if any(c < 0 for c in goal_w - nxt_w):
                continue
            nxt = vm.raise_(rs.simple_roots[j], elem)
            if nxt:
                found = dfs(nxt, nxt_w, path + [j])
                if found:
                    return found
        return None

    found = dfs(vm.monomial(mu, mu), mu * -2, [])
    if found is None:
        return RaisingResult(pd.name, [], None)
    return RaisingResult(pd.name, found[0], found[1])
