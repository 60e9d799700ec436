from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toricverify.constructions import linear_system_dim
from toricverify.data import PACKAGE_DATA
from toricverify.exact import Cyc, ExactMatrix
from toricverify.molien import invariant_dims, parse_matrix_group
from toricverify.polyinv import (
    BURKHARDT_FORM, Poly, act, build_M_member, burkhardt_generators, burkhardt_generators_text, burkhardt_nodes,
    burkhardt_quartic, cyclic_shift_matrix, format_poly, free_parameter_count, hermitian_reflection,
    is_semi_invariant, klein_cubic, klein_readings, m_member_span_rank, parse_poly, permutation_substitution,
)

small = st.integers(-3, 3)
exps3 = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys3 = st.dictionaries(exps3, small.filter(bool), max_size=5).map(lambda d: Poly(3, d))
mats3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


@given(mats3, mats3, polys3)
def test_action_is_a_right_action(g, h, p):
    gh = (ExactMatrix(h) @ ExactMatrix(g))
    assert act(g, act(h, p)) == act(gh, p)


def test_action_convention_example():
    x1 = Poly.var(2, 0)
    assert act([[1, 1], [0, 1]], x1) == x1 + Poly.var(2, 1)


@given(polys3, polys3, mats3)
def test_action_is_a_ring_map(p, q, g):
    assert act(g, p * q) == act(g, p) * act(g, q)
    assert act(g, p + q) == act(g, p) + act(g, q)


@given(polys3)
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p), 3) == p


def test_parse_cyclotomic_coefficients():
    p = parse_poly("(z) * x1^2 - 3/2 * x1 x2 + x3", 3, conductor=3)
    assert p.coefficient((2, 0, 0)) == Cyc.zeta(3, 1)
    assert p.coefficient((1, 1, 0)) == Fraction(-3, 2)
    assert parse_poly(format_poly(p), 3, conductor=3) == p
    with pytest.raises(ValueError):
        parse_poly("x4", 3)


def test_semi_invariant_multiplier_and_witness():
    # x1 x2 under x1 -> -x1 picks up -1
    p = parse_poly("x1 x2", 2)
    v = is_semi_invariant(p, [[[-1, 0], [0, 1]]])
    assert v.semi_invariant and not v.invariant and v.multipliers == [-1]
    v = is_semi_invariant(parse_poly("x1 + x2^2", 2), [[[2, 0], [0, 1]]])
    assert not v.semi_invariant and v.failing_generator == 0 and v.counterexample is not None


def test_burkhardt_permutation_invariance():
    B = burkhardt_quartic()
    for images in ([0, 2, 1, 3, 4], [0, 2, 3, 4, 1], [0, 4, 3, 2, 1]):
        assert act(permutation_substitution(images), B) == B
    assert act(permutation_substitution([1, 0, 2, 3, 4]), B) != B


def test_burkhardt_nodes_are_singular():
    B = burkhardt_quartic()
    nodes = burkhardt_nodes()
    assert len(nodes) == len(set(nodes)) == 45
    grads = [B.derivative(i) for i in range(5)]
    for v in nodes:
        assert B.evaluate(v) == 0
        assert all(g.evaluate(v) == 0 for g in grads)


def test_non_node_is_not_singular():
    B = burkhardt_quartic()
    v = (1, -1, -1, -1, 1)
    assert any(B.derivative(i).evaluate(v) != 0 for i in range(5))


def _hermitian(u, v):
    return sum((Cyc(1, [f]) * (a if isinstance(a, Cyc) else Cyc(1, [a])).conjugate() * b
                for f, a, b in zip(BURKHARDT_FORM, u, v)), Cyc(1, [0]))


def test_every_node_reflection_preserves_the_quartic():
    B = burkhardt_quartic()
    for v in burkhardt_nodes():
        s = hermitian_reflection(v)
        assert s @ s == ExactMatrix.identity(5)
        assert act(s, B) == B


def test_reflections_preserve_the_form():
    w = Cyc.zeta(3, 1)
    vecs = [(1, 0, w, 0, 2), (0, 1, 1, -w, 0)]
    for s in burkhardt_generators():
        images = [[sum((s[i, j] * x for j, x in enumerate(v)), Cyc(1, [0])) for i in range(5)] for v in vecs]
        assert _hermitian(images[0], images[1]) == _hermitian(vecs[0], vecs[1])


def test_generators_text_matches_asset():
    assert burkhardt_generators_text() == (PACKAGE_DATA / "burkhardt_generators.txt").read_text(encoding="utf-8")


def test_node_reflection_group():
    G, prov = parse_matrix_group((PACKAGE_DATA / "burkhardt_generators.txt").read_text(encoding="utf-8"))
    assert prov.startswith("derived by")
    assert G.order() == 51840
    assert invariant_dims(G, 6) == [0, 0, 0, 1, 0, 1]
    assert is_semi_invariant(burkhardt_quartic(), G.generators).invariant


def test_klein_readings():
    r = {k.name: k for k in klein_readings()}
    assert not r["printed"].homogeneous and r["printed"].degrees == {3, 5}
    assert r["cyclic"].homogeneous and r["cyclic"].degrees == {3}
    assert is_semi_invariant(klein_cubic("cyclic"), [cyclic_shift_matrix(5)]).invariant
    assert not is_semi_invariant(klein_cubic("printed"), [cyclic_shift_matrix(5)]).semi_invariant
    with pytest.raises(ValueError):
        klein_cubic("other")


@pytest.mark.parametrize("n,expected", [(3, 14), (4, 40)])
def test_m_span_rank(n, expected):
    assert m_member_span_rank(n) == (expected, expected)
    assert free_parameter_count(n) == expected == linear_system_dim(n) + 1


def test_build_m_member():
    p = build_M_member(3, parse_poly("x1^2", 4), [0, 0, 0, 0])
    assert str(p) == "x1^3 x2 x3 x4"
    q = build_M_member(3, Poly(4), [1, 0, 0, 0])
    assert q == parse_poly("x2^2 x3^2 x4^2", 4)
    with pytest.raises(ValueError):
        build_M_member(3, parse_poly("x1", 4), [0] * 4)
    with pytest.raises(ValueError):
        build_M_member(3, parse_poly("x1^2 + x2", 4), [0] * 4)
    with pytest.raises(ValueError):
        build_M_member(3, parse_poly("x1^2", 4), [0] * 3)
