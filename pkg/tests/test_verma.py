from fractions import Fraction

import pytest

from qhverma.chevalley import ChevalleyBasis, random_signs
from qhverma.omega import omega2_constituents
from qhverma.parabolic import parabolic
from qhverma.verma import (VermaError, VermaModule, condition_h_solve, root_gap_check,
                           type2_identity, type2_reachability)


def basis(pd, seed=None):
    return ChevalleyBasis(pd.rs, random_signs(pd.rs, seed) if seed is not None else None)


@pytest.mark.parametrize("n,i", [(5, 3), (5, 4), (6, 3), (6, 5), (7, 4)])
def test_condition_h_has_one_dimensional_solution(n, i):
    pd = parabolic("B", n, i)
    res = condition_h_solve(pd, basis(pd))
    assert res.dimension == 1
    assert res.annihilated and res.normal_form_only
    assert set(res.b) == set(range(i + 1, n + 1))
    assert all(r.ok for r in res.relations) and res.ok


@pytest.mark.parametrize("seed", [5, 11, 23])
def test_condition_h_dimension_is_basis_independent(seed):
    pd = parabolic("B", 6, 4)
    res = condition_h_solve(pd, basis(pd, seed))
    assert res.dimension == 1 and res.ok


def test_condition_h_requires_b_interior():
    with pytest.raises(VermaError):
        condition_h_solve(parabolic("B", 5, 5), basis(parabolic("B", 5, 5)))
    with pytest.raises(VermaError):
        condition_h_solve(parabolic("D", 6, 3), basis(parabolic("D", 6, 3)))


def test_weight_minus_two_eps_i_has_alpha_i_multiplicity_two():
    pd = parabolic("B", 6, 4)
    w = pd.rs.eps((2, 4))
    assert w[pd.crossed] == 2
    # every nilradical root has alpha_i coefficient at least 1, so degree <= 2
    assert min(pd.level[b] for b in pd.delta_g1 + pd.delta_zn) == 1


@pytest.mark.parametrize("n,i", [(5, 3), (6, 4), (7, 5), (5, 4)])
def test_root_gap(n, i):
    assert root_gap_check(parabolic("B", n, i))


def test_root_gap_exclusion_only_covers_levi_and_centre():
    pd = parabolic("B", 5, 3)
    rs = pd.rs
    control = rs.eps((2, 3)) - rs.eps((1, 3), (-1, 4))
    assert control == rs.eps((1, 3), (1, 4)) and control in set(pd.delta_g1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_type_two_raising_identity(n):
    pd = parabolic("B", n, n)
    res = type2_identity(pd, basis(pd))
    assert res.ok and res.coefficient == res.expected


@pytest.mark.parametrize("target", [("B", 4, 4), ("C", 4, 2), ("C", 5, 3), ("F", 4, 4)])
def test_type_two_reachability(target):
    pd = parabolic(*target)
    c = next(c for c in omega2_constituents(pd) if c.ctype == "2")
    res = type2_reachability(pd, basis(pd), c.epsilon)
    assert res.ok
    assert all(j in pd.pi_l for j in res.path)


def test_raise_respects_weights():
    pd = parabolic("B", 5, 3)
    rs = pd.rs
    vm = VermaModule(pd, Fraction(3, 2), basis(pd))
    u = vm.sym(rs.eps((1, 3), (1, 4)), rs.eps((1, 3), (-1, 4)))
    for alpha in pd.delta_l:
        out = vm.raise_(alpha, u)
        for mono in out:
            assert vm.weight(mono) == rs.eps((-2, 3)) + alpha
    assert vm.raise_(pd.delta_l[0], {}) == {}


def test_character_on_the_crossed_coroot():
    pd = parabolic("B", 4, 4)
    vm = VermaModule(pd, -1, basis(pd))
    y = vm.monomial(pd.alpha_q)
    # X_{alpha_q} Y_{alpha_q} (x) 1 = H_{alpha_q} (x) 1 = <-s0 lambda_q, alpha_q^vee> = 1
    assert vm.raise_(pd.alpha_q, y) == {(): Fraction(1)}


def test_pbw_reordering_uses_commutators():
    pd = parabolic("B", 4, 4)
    rs = pd.rs
    vm = VermaModule(pd, -1, basis(pd))
    e1, e4 = rs.eps((1, 1)), rs.eps((1, 4))
    a, b = vm.monomial(e1, e4), vm.monomial(e4, e1)
    diff = {k: a.get(k, 0) - b.get(k, 0) for k in set(a) | set(b)}
    diff = {k: v for k, v in diff.items() if v}
    n = vm.cb.N(-e1, -e4)
    assert diff == {(vm.y(e1 + e4),): Fraction(n)}


def test_non_nilradical_root_rejected():
    pd = parabolic("B", 4, 4)
    vm = VermaModule(pd, -1, basis(pd))
    with pytest.raises(VermaError):
        vm.monomial(pd.rs.simple_roots[0])
