from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricverify.exact import IntLattice
from toricverify.reidtai import CyclicQuotient, check_U_cone_types, is_terminal_reid_tai, sign_split_type
from toricverify.toric import terminal_points_check


def simplex_cone(q: CyclicQuotient) -> list[tuple[int, ...]]:
    """Rays e_i written in a basis of Z^n + Z (a / m)."""
    n = len(q.weights)
    gens = [[int(i == j) for j in range(n)] for i in range(n)] + [[Fraction(a, q.order) for a in q.weights]]
    L = IntLattice.from_generators(gens)
    return [tuple(int(c) for c in L.coordinates([int(i == j) for j in range(n)])) for i in range(n)]


@st.composite
def unit_quotients(draw):
    m = draw(st.integers(2, 19))
    n = draw(st.integers(2, 4))
    units = [a for a in range(1, m) if gcd(a, m) == 1]
    return CyclicQuotient(m, tuple(draw(st.sampled_from(units)) for _ in range(n)))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_full_weight_quotients_terminal(p):
    assert is_terminal_reid_tai(CyclicQuotient(p, tuple(range(1, p)))).terminal


def test_controls():
    v = is_terminal_reid_tai(CyclicQuotient(2, (1, 1)))
    assert not v.terminal and v.violating_r == 1
    assert is_terminal_reid_tai(CyclicQuotient(5, (1, 4, 2, 3))).terminal
    assert not is_terminal_reid_tai(CyclicQuotient(3, (1, 1, 1))).terminal  # canonical, not terminal


@pytest.mark.parametrize("n", [4, 6])
def test_sign_split_types(n):
    r = check_U_cone_types(n)
    assert r.count == 2 ** n and r.all_terminal and not r.failures


def test_sign_split_weights():
    assert sign_split_type(4, {1, 3}).weights == (4, 2, 2, 4)


def test_zero_weight_is_flagged():
    v = is_terminal_reid_tai(CyclicQuotient(4, (1, 0, 3)))
    assert v.flags


@given(unit_quotients(), st.randoms(use_true_random=False))
def test_invariant_under_permutation_and_unit_scaling(q, rnd):
    m = q.order
    units = [c for c in range(1, m) if gcd(c, m) == 1]
    c = rnd.choice(units)
    w = list(q.weights)
    rnd.shuffle(w)
    q2 = CyclicQuotient(m, tuple(c * a for a in w))
    assert is_terminal_reid_tai(q).terminal == is_terminal_reid_tai(q2).terminal
    assert q.normalized() == q2.normalized()


@given(unit_quotients())
def test_agrees_with_lattice_point_oracle(q):
    ok, _ = terminal_points_check(simplex_cone(q))
    assert ok == is_terminal_reid_tai(q).terminal
