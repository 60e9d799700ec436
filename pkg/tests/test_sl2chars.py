from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toricverify.data import PACKAGE_DATA
from toricverify.exact import Cyc
from toricverify.sl2chars import (
    DERIVED_TABLES, GF, _monomial, _norm, brauer_certificate, cuspidal_character, derived_asset_text,
    gauss_sqrt, induced_split, mat_inv, mat_mul, sl2_8_data, sl2_elements,
)


@pytest.fixture(scope="module")
def sl2_8():
    return sl2_8_data()


@pytest.fixture(scope="module")
def split13():
    return induced_split(13)


@pytest.mark.parametrize("p,k", [(2, 3), (2, 6), (13, 1)])
def test_field_axioms(p, k):
    F = GF(p, k)
    q = F.q
    for x in range(q):
        assert F.add[x][F.neg[x]] == 0
        assert F.mul[x][1] == x
        if x:
            assert F.mul[x][F.inv[x]] == 1
    assert F.order(F.generator) == q - 1


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_gf64_distributive(a, b, c):
    F = _GF64
    assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
    assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]


_GF64 = GF(2, 6)


def test_sl2_orders(sl2_8, split13):
    assert len(sl2_8.elements) == 504
    assert len(sl2_elements(GF(13))) == 2184
    assert len(split13.elements) == 1092
    # GF(8) inside GF(64)
    assert len(sl2_8.sub) == 8


def test_sl2_8_closed_under_products(sl2_8):
    F, els = sl2_8.field, set(sl2_8.elements)
    sample = sl2_8.elements[::37]
    for x in sample:
        assert mat_inv(F, x) in els
        for y in sample:
            assert mat_mul(F, x, y) in els


def test_gauss_sum_squares_to_p():
    for p in (5, 13, 17):
        s = gauss_sqrt(p)
        assert s * s == Cyc(1, [p])


def test_commutant_element(split13):
    S = split13
    n = len(S.J)
    assert n == 14 and S.c == 13
    assert sum(S.J[i][i] for i in range(n)) == 0
    J2 = [[sum(S.J[i][k] * S.J[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert all(J2[i][j] == (S.c if i == j else 0) for i in range(n) for j in range(n))
    assert S.sqrt_c * S.sqrt_c == Cyc(1, [S.c])


def _monomial_matrix(perm, signs):
    n = len(perm)
    M = [[0] * n for _ in range(n)]
    for k in range(n):
        M[perm[k]][k] = signs[k]
    return M


def test_commutant_commutes_with_sampled_elements(split13):
    S = split13
    n = len(S.J)
    for g in S.elements[::97]:
        R = _monomial_matrix(*_monomial(S.field, g))
        RJ = [[sum(R[i][k] * S.J[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        JR = [[sum(S.J[i][k] * R[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert RJ == JR


def test_split_characters(split13):
    S = split13
    plus, minus, induced = [], [], []
    for g in S.elements:
        perm, signs = S.monomial(g)
        t = sum(signs[P] for P in range(len(perm)) if perm[P] == P)
        a, b = S.character(g, 1), S.character(g, -1)
        assert a + b == Cyc(1, [t])
        plus.append(a)
        minus.append(b)
        induced.append(Cyc(1, [t]))
    N = len(S.elements)
    assert _norm(plus, N) == 1
    assert _norm(minus, N) == 1
    assert _norm(induced, N) == 2
    identity = S.elements.index((1, 0, 0, 1))
    assert plus[identity] == Cyc(1, [7]) and minus[identity] == Cyc(1, [7])


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_cuspidal_characters_certified(sl2_8, m):
    cert = brauer_certificate(sl2_8, cuspidal_character(sl2_8, m))
    assert cert["centralizer_orders"] == {"unipotent": 8, "split": 7, "nonsplit": 9}
    assert cert["norm"] == 1
    assert cert["degree"] == Cyc(1, [7])
    assert cert["certified"]


def test_perturbed_class_function_rejected(sl2_8):
    chi = cuspidal_character(sl2_8, 1)
    split = sl2_8.split_traces

    def bad(x):
        if sl2_8.field.add[x[0]][x[3]] in split:
            return Cyc(9, [1])
        return chi(x)

    cert = brauer_certificate(sl2_8, bad)
    assert not cert["certified"]
    assert not cert["integral"]


def test_trivial_torus_character_not_irreducible(sl2_8):
    # m = 0 is the sum of two characters, not a cuspidal one
    cert = brauer_certificate(sl2_8, cuspidal_character(sl2_8, 0))
    assert cert["norm"] != 1 and not cert["certified"]


@pytest.mark.parametrize("name", sorted(DERIVED_TABLES))
def test_shipped_tables_regenerate(name):
    assert derived_asset_text(name) == (PACKAGE_DATA / name).read_text(encoding="utf-8")
