from math import comb
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricverify import permgroups as pg
from toricverify.exact import Cyc, ExactMatrix, nullspace
from toricverify.molien import (ELEMENT_CAP, WEYL_ORDERS, CharacterError, MatrixGroup, MolienError,
                                SymmetricFunctionOracle, TraceTable, build_deleted_permutation_rep,
                                build_reflection_rep, builtin_group, complete_homogeneous, deleted_rep_from_name,
                                format_matrix_group, invariant_dims, molien_cross_check, parse_character,
                                parse_matrix_group, semi_invariant_dims, twist_descends, we7_sign_trace_table)
from toricverify.polyinv import Poly, act
from toricverify.data import PACKAGE_DATA


def monomials(n, d):
    if n == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in monomials(n - 1, d - a)]


def oracle_dims(gens, d_max, character=None):
    """Nullity of the stacked maps p -> p(g x) - lambda(g) p on degree-d monomials."""
    gens = [g if isinstance(g, ExactMatrix) else ExactMatrix(g) for g in gens]
    n = gens[0].nrows
    character = character or [1] * len(gens)
    out = []
    for d in range(1, d_max + 1):
        basis = monomials(n, d)
        index = {e: i for i, e in enumerate(basis)}
        rows = []
        for g, lam in zip(gens, character):
            cols = []
            for e in basis:
                img = act(g, Poly.monomial(e)) - Poly.monomial(e, lam)
                cols.append({index[k]: v for k, v in img.terms.items()})
            for r in range(len(basis)):
                rows.append([cols[c].get(r, 0) for c in range(len(basis))])
        out.append(len(nullspace(rows, len(basis))))
    return out


W = Cyc.zeta(3)
I4 = Cyc.zeta(4)


def test_newton_identity_on_identity():
    n = 4
    h = complete_homogeneous([n] * 6, 6)
    assert h == [comb(n + d - 1, d) for d in range(7)]


@pytest.mark.parametrize("r", [3, 4, 5])
def test_deleted_symmetric_matches_both_oracles(r):
    G = build_deleted_permutation_rep(pg.symmetric_group(r))
    dims = invariant_dims(G, 4)
    assert dims == SymmetricFunctionOracle(r).dims(4)
    assert dims == oracle_dims([g.tolist() for g in G.generators], 4)


def test_symmetric_oracle_larger_r():
    for r in (6, 7):
        assert invariant_dims(deleted_rep_from_name(f"S{r}"), 5) == SymmetricFunctionOracle(r).dims(5)


def test_psl27_against_linear_algebra():
    G = deleted_rep_from_name("PSL27-7")
    assert G.order() == 168
    assert invariant_dims(G, 3) == oracle_dims([g.tolist() for g in G.generators], 3)


def test_we6_against_linear_algebra():
    G = build_reflection_rep("E6")
    assert G.order() == WEYL_ORDERS["E6"]
    assert invariant_dims(G, 3) == oracle_dims([g.tolist() for g in G.generators], 3) == [0, 1, 0]


@pytest.mark.parametrize("name", ["S5", "S6", "PSL27-7"])
def test_trace_table_mode_matches_enumeration(name):
    a, b = molien_cross_check(deleted_rep_from_name(name), 5)
    assert a == b


@st.composite
def unimodular3(draw):
    C = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(draw(st.integers(1, 6))):
        i, j = draw(st.sampled_from([(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]))
        c = draw(st.integers(-2, 2))
        for row in C:
            row[j] += c * row[i]
    return C


@given(unimodular3())
def test_dims_invariant_under_conjugation(C):
    G = build_deleted_permutation_rep(pg.symmetric_group(4))
    assert invariant_dims(G.conjugate(C), 4) == invariant_dims(G, 4)


@given(st.integers(0, 2), st.integers(0, 2), st.booleans())
def test_lattice_path_agrees_with_exact_path(a, b, swap):
    gens = [ExactMatrix([[W ** a, 0, 0], [0, W ** b, 0], [0, 0, 1]])]
    if swap:
        gens.append(ExactMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    gens.append(ExactMatrix([[1, 0, 0], [0, 1, 0], [0, 0, -1]]))
    fast = MatrixGroup(gens)
    slow = MatrixGroup(gens, use_lattice=False)
    assert fast.order() == slow.order()
    assert set(fast.elements()) == set(slow.elements())
    assert invariant_dims(fast, 5) == invariant_dims(slow, 5)


def test_lattice_path_contains():
    G = MatrixGroup([ExactMatrix([[I4, 0], [0, 1]]), ExactMatrix([[0, 1], [1, 0]])])
    assert G.order() == 32
    assert G.contains(ExactMatrix([[0, I4], [1, 0]]))
    assert not G.contains(ExactMatrix([[W, 0], [0, 1]]))


def test_cyclotomic_group_against_linear_algebra():
    gens = [ExactMatrix([[W, 0, 0], [0, 1, 0], [0, 0, 1]]), ExactMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])]
    G = MatrixGroup(gens)
    assert G.order() == 81
    assert invariant_dims(G, 4) == oracle_dims(gens, 4)


def test_semi_invariants_of_sign_character():
    G = build_deleted_permutation_rep(pg.symmetric_group(3))
    gens = [g.tolist() for g in G.generators]
    sign = [(-1) ** sum(len(c) - 1 for c in g.cycles()) for g in pg.symmetric_group(3).generators]
    dims = semi_invariant_dims(G, 6, sign)
    assert dims == oracle_dims(gens, 6, sign)
    assert dims[2] == 1  # the discriminant-type cubic


def test_semi_invariant_convention():
    # P(g x) = lambda(g) P(x): x1 under x1 -> w x1 has lambda = w, not w^2
    G = MatrixGroup([ExactMatrix([[W, 0], [0, 1]])])
    assert semi_invariant_dims(G, 1, [W]) == [1]
    assert semi_invariant_dims(G, 1, [W * W]) == [0]


def test_inconsistent_character_rejected():
    # a 3-cycle cannot take the value -1
    G = MatrixGroup([[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]]], character=[-1, -1])
    with pytest.raises(CharacterError):
        semi_invariant_dims(G, 2)


def test_non_root_of_unity_rejected():
    with pytest.raises(CharacterError):
        MatrixGroup([[[0, 1], [1, 0]]], character=[2])


def test_trace_table_roundtrip_and_validation():
    G = deleted_rep_from_name("S5")
    T = G.trace_table(4, provenance="unit test")
    assert TraceTable.from_text(T.to_text()) == T
    with pytest.raises(ValueError):
        TraceTable(T.order, T.dim, T.dmax, " ", T.records)
    with pytest.raises(ValueError):
        TraceTable(T.order + 1, T.dim, T.dmax, "x", T.records)


def test_non_group_table_is_rejected():
    T = TraceTable(2, 2, 2, "fake", [(1, (2, 2)), (1, (1, 1))])
    with pytest.raises(MolienError):
        invariant_dims(T, 2)


def test_weyl_groups():
    assert twist_descends("E7")
    assert not twist_descends("E6")
    G = build_reflection_rep("E6")
    assert invariant_dims(G, 5) == [0, 1, 0, 1, 1]


def test_cached_we7_table_is_fast():
    import time

    t0 = time.perf_counter()
    T = TraceTable.load(PACKAGE_DATA / "we7_sign.trace")
    dims = invariant_dims(T, 6)
    assert time.perf_counter() - t0 < 5
    assert T.order == WEYL_ORDERS["E7"] // 2
    assert dims == [0, 1, 0, 1, 0, 2]


@pytest.mark.slow
def test_we7_table_regenerates_byte_identically():
    T = we7_sign_trace_table(8, jobs=2)
    assert T.to_text() == (PACKAGE_DATA / "we7_sign.trace").read_text(encoding="utf-8")


def test_group_file_roundtrip():
    G = MatrixGroup([ExactMatrix([[W, 0], [0, 1]]), ExactMatrix([[0, 1], [1, 0]])], name="test")
    H, prov = parse_matrix_group(format_matrix_group(G, "unit test"))
    assert H.generators == G.generators and prov == "unit test"


def test_parse_character():
    vals = parse_character("conductor: 3\n1\nz\n")
    assert vals[1] == W


def test_builtin_names():
    assert builtin_group("WE6").order() == 51840
    with pytest.raises(KeyError):
        builtin_group("nope")


def test_element_cap():
    assert ELEMENT_CAP >= WEYL_ORDERS["E7"]
    with pytest.raises(OverflowError):
        MatrixGroup(deleted_rep_from_name("S6").generators, cap=100).order()
