import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricverify.exact import det, int_matmul
from toricverify.latgroups import (IntMatrixGroup, fixed_sublattice_rank, format_group, int_inverse,
                                   nonconjugacy_certificate, parse_group, q_irreducible, standard_matrices,
                                   verify_conjugation, verify_intertwiner)
from toricverify.molien import MatrixGroup, invariant_dims

REFERENCE_N4 = {
    "A": [[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]],
    "B": [[-4, 0, 0, -5], [1, 0, 0, 1], [2, 1, 0, 2], [3, 0, 1, 3]],
    "S": [[-1, 0, 0, 0], [-1, 0, 0, 1], [-1, 0, 1, 0], [-1, 1, 0, 0]],
    "T": [[-1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 1, 0, 0]],
}


@st.composite
def unimodular(draw, n=4):
    C = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(1, 8))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            continue
        c = draw(st.integers(-2, 2))
        E = [[int(a == b) + (c if (a, b) == (i, j) else 0) for b in range(n)] for a in range(n)]
        C = int_matmul(C, E)
    return C


def test_n4_matches_reference_entries():
    M = standard_matrices(4)
    for k, v in REFERENCE_N4.items():
        assert getattr(M, k) == v


@pytest.mark.parametrize("n", range(4, 9))
def test_cyclic_intertwiner(n):
    M = standard_matrices(n)
    assert verify_intertwiner(M.A, M.B, M.C_cyclic)
    assert abs(det(M.C_cyclic)) == 1


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dihedral_conjugation_even(n):
    M = standard_matrices(n)
    assert verify_conjugation([(M.A, M.B), (M.S, M.T_prime)], M.C_dihedral)
    assert M.T_prime == [[-x for x in r] for r in M.T]


@pytest.mark.parametrize("n", [5, 7])
def test_dihedral_pattern_is_singular_for_odd_n(n):
    M = standard_matrices(n)
    assert det(M.C_dihedral) == 0
    with pytest.raises(ValueError):
        verify_conjugation([(M.A, M.B), (M.S, M.T_prime)], M.C_dihedral)


def test_nonconjugacy_witness_n4():
    G1 = IntMatrixGroup([REFERENCE_N4["A"], REFERENCE_N4["S"]])
    G2 = IntMatrixGroup([REFERENCE_N4["B"], REFERENCE_N4["T"]])
    assert G1.order() == G2.order() == 10
    cert = nonconjugacy_certificate(G1, G2)
    assert cert.verdict == "not-conjugate"
    assert cert.modulus == 5
    assert cert.searched == [2, 3, 4, 5]


@given(unimodular())
def test_nonconjugacy_is_sound(C):
    G = IntMatrixGroup([REFERENCE_N4["A"], REFERENCE_N4["S"]])
    H = G.conjugate(C)
    assert H.order() == G.order()
    cert = nonconjugacy_certificate(G, H, m_max=5)
    assert cert.verdict != "not-conjugate"


@given(unimodular())
def test_conjugation_preserves_fixed_rank(C):
    G = IntMatrixGroup([REFERENCE_N4["A"]])
    assert fixed_sublattice_rank(G.conjugate(C)) == fixed_sublattice_rank(G)


def test_int_inverse():
    C = standard_matrices(6).C_cyclic
    I = int_matmul(C, int_inverse(C))
    assert I == [[int(i == j) for j in range(6)] for i in range(6)]


@pytest.mark.parametrize("gens", [
    [REFERENCE_N4["A"]],
    [REFERENCE_N4["A"], REFERENCE_N4["S"]],
    [[[0, 1, 0], [1, 0, 0], [0, 0, 1]]],
    [[[-1, 0], [0, 1]]],
])
def test_degree_one_invariants_equal_fixed_rank(gens):
    assert invariant_dims(MatrixGroup(gens), 1) == [fixed_sublattice_rank(IntMatrixGroup(gens))]


def test_q_irreducible():
    assert q_irreducible(IntMatrixGroup([REFERENCE_N4["A"]])).verdict == "irreducible"
    assert q_irreducible(IntMatrixGroup([[[0, 1, 0], [1, 0, 0], [0, 0, 1]]])).verdict == "reducible"


def test_group_file_roundtrip():
    G = IntMatrixGroup([REFERENCE_N4["B"], REFERENCE_N4["T"]])
    assert parse_group(format_group(G)).generators == G.generators


def test_non_unimodular_generator_rejected():
    with pytest.raises(ValueError):
        IntMatrixGroup([[[2, 0], [0, 1]]])
