from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricverify.exact import (Cyc, ExactMatrix, IntLattice, cyclotomic_poly, det, euler_phi, format_cyc,
                               format_matrix, hermite_normal_form, int_matmul, nullspace, parse_cyc, parse_matrix,
                               rank, smith_invariants, smith_normal_form, solve)

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 13]
rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


@st.composite
def cycs(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    return Cyc(m, draw(st.lists(rationals, min_size=euler_phi(m), max_size=euler_phi(m))))


@st.composite
def cyc_triples(draw):
    m = draw(st.sampled_from(CONDUCTORS))
    return draw(cycs(m)), draw(cycs(m)), draw(cycs(m))


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert [euler_phi(m) for m in (1, 2, 9, 13, 60)] == [1, 1, 6, 12, 16]


def test_roots_of_unity():
    z = Cyc.zeta(5)
    assert z ** 5 == 1
    assert sum((Cyc.zeta(5, k) for k in range(5)), Cyc(5)) == 0
    w = Cyc.zeta(3)
    assert w * w + w + 1 == 0
    assert Cyc.zeta(4) ** 2 == -1


def test_gauss_sum_squares_to_13():
    from toricverify.sl2chars import gauss_sqrt

    g = gauss_sqrt(13)
    assert not g.is_rational()
    assert g * g == 13


def test_lift_and_mixed_arithmetic():
    a = Cyc.zeta(3)
    b = Cyc.zeta(4)
    c = a * b
    assert c.m == 12
    assert c == Cyc.zeta(12, 7)


@given(cyc_triples())
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(cycs())
def test_conjugation_is_an_automorphism(a):
    assert a.conjugate().conjugate() == a
    n = a * a.conjugate()
    assert n.normalized_trace() >= 0


@given(cycs())
def test_format_parse_roundtrip(a):
    assert parse_cyc(format_cyc(a), a.m) == a


def test_rational_linear_algebra():
    M = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
    assert det(M) == -3
    assert rank(M) == 3
    x = solve(M, [1, 2, 3])
    assert [sum(Fraction(M[i][j]) * x[j] for j in range(3)) for i in range(3)] == [1, 2, 3]
    N = [[1, 2, 3], [2, 4, 6]]
    ns = nullspace(N)
    assert len(ns) == 2
    assert all(sum(r[j] * v[j] for j in range(3)) == 0 for r in N for v in ns)


def test_exact_matrix_inverse_and_charpoly():
    w = Cyc.zeta(3)
    M = ExactMatrix([[0, 1], [-1, w]])
    assert M @ M.inverse() == ExactMatrix.identity(2)
    cp = M.charpoly()
    assert len(cp) == 3
    assert parse_matrix(format_matrix(M)) == M


small_int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=1, max_size=5))


@given(small_int_matrices)
def test_hermite_normal_form(M):
    H, U = hermite_normal_form(M)
    assert int_matmul(U, M) == H
    assert abs(det(U)) == 1
    last = -1
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        assert nz[0] > last
        last = nz[0]
        assert row[nz[0]] > 0


@given(small_int_matrices)
def test_smith_normal_form(M):
    D, U, V = smith_normal_form(M)
    assert int_matmul(int_matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


def test_smith_invariants_known():
    assert smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_lattice_index():
    L = IntLattice.from_generators([[2, 0], [0, 3]])
    assert L.rank == 2
    assert L.index_in(IntLattice.standard(2)) == 6
    assert L.contains([4, 3]) and not L.contains([1, 0])


def test_conductor_limit():
    with pytest.raises(ValueError):
        Cyc(61)
