"""Acceptance criteria 1-10.

Each test records its outcome with ``record_criterion``; the terminal summary
prints one PASS/FAIL line per criterion (run with ``-s`` to also see the
per-part lines as they happen).  Parts that cannot be met are strict xfails.
"""

import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from conftest import record_criterion
from toricverify import permgroups as pg
from toricverify.constructions import (
    FanGroupAction, build_listing_polytope, build_m_variety, build_permutohedron, build_U, build_V, build_Y,
    check_eq_T, cremona_swaps_levels, discrepancies, discrepancies_toric, discrepancy_closed_forms,
    invariant_class_rank, linear_system_dim, linear_system_dim_by_count, m_system_exponents, u_group_generators,
)
from toricverify.data import load_asset
from toricverify.latgroups import (
    IntMatrixGroup, int_matmul, nonconjugacy_certificate, standard_matrices, verify_conjugation, verify_intertwiner,
)
from toricverify.molien import (
    TraceTable, build_reflection_rep, deleted_rep_from_name, invariant_dims, parse_matrix_group,
)
from toricverify.polyinv import burkhardt_quartic, is_semi_invariant
from toricverify.reidtai import CyclicQuotient, check_U_cone_types, is_terminal_reid_tai
from toricverify.toric import Fan, LatticePolytope


@contextmanager
def criterion(n, part, budget=None):
    t0 = time.perf_counter()
    try:
        yield
        if budget is not None:
            dt = time.perf_counter() - t0
            assert dt < budget, f"took {dt:.1f} s, budget {budget} s"
    except BaseException:
        record_criterion(n, part, False)
        raise
    record_criterion(n, part, True)


@pytest.fixture(scope="module")
def m4():
    return build_m_variety(4)


# ---------------------------------------------------------------------------
# 1. the degree-8 system variety for n = 4


def test_c1_invariants(m4):
    with criterion(1, "class/Picard rank, terminal, not smooth, #A", budget=60):
        assert m4.class_group()[0] == 6
        assert m4.picard_rank() == 1
        assert m4.is_terminal()[0] is True
        assert m4.is_smooth() is False
        exps = m_system_exponents(4)
        assert len(LatticePolytope([e[:4] for e in exps]).lattice_points()) == len(exps)
        P, nA = build_listing_polytope("listing")
        assert len(P.lattice_points()) == nA


@pytest.mark.xfail(strict=True, reason="the rays of this fan force (-K)^4 = 625/6; see the decisions ledger")
def test_c1_anticanonical_degree(m4):
    with criterion(1, "(-K)^4 = 70"):
        assert m4.anticanonical_degree() == 70


def test_c1_degree_value_is_pinned(m4):
    # keeps the xfail above honest: the computed value is a fixed, known number
    assert m4.anticanonical_degree() == Fraction(625, 6)


# ---------------------------------------------------------------------------
# 2. Reid-Tai


def test_c2_reid_tai():
    with criterion(2, "primes, sign splits, 1/2(1,1)", budget=5):
        for p in (5, 7, 11, 13, 17, 19, 23):
            assert is_terminal_reid_tai(CyclicQuotient(p, tuple(range(1, p)))).terminal
        for n in (4, 6):
            r = check_U_cone_types(n)
            assert r.count == 2 ** n and r.all_terminal
        assert not is_terminal_reid_tai(CyclicQuotient(2, (1, 1))).terminal


# ---------------------------------------------------------------------------
# 3. GL_n(Z)

REFERENCE_N4 = {
    "A": "Matrix([[0,0,0,-1],[1,0,0,-1],[0,1,0,-1],[0,0,1,-1]])",
    "B": "Matrix([[-4,0,0,-5],[1,0,0,1],[2,1,0,2],[3,0,1,3]])",
    "S": "Matrix([[-1,0,0,0],[-1,0,0,1],[-1,0,1,0],[-1,1,0,0]])",
    "T": "Matrix([[-1,0,0,0],[1,0,0,1],[1,0,1,0],[1,1,0,0]])",
}


def _listing(M):
    return "Matrix([" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in M) + "])"


def test_c3_cyclic_intertwiners_and_listing():
    with criterion(3, "C A = B C for n = 4..8; n = 4 listing", budget=30):
        for n in range(4, 9):
            M = standard_matrices(n)
            assert verify_intertwiner(M.A, M.B, M.C_cyclic)
        M = standard_matrices(4)
        for k, text in REFERENCE_N4.items():
            assert _listing(getattr(M, k)) == text


@pytest.mark.parametrize("n", [4, 6, 8])
def test_c3_dihedral(n):
    with criterion(3, f"dihedral conjugation n = {n}"):
        M = standard_matrices(n)
        assert verify_conjugation([(M.A, M.B), (M.S, M.T_prime)], M.C_dihedral)


@pytest.mark.xfail(strict=True, raises=(AssertionError, ValueError),
                   reason="the dihedral intertwiner pattern is singular when n + 1 is not prime")
@pytest.mark.parametrize("n", [5, 7])
def test_c3_dihedral_odd(n):
    with criterion(3, f"dihedral conjugation n = {n}"):
        M = standard_matrices(n)
        assert verify_conjugation([(M.A, M.B), (M.S, M.T_prime)], M.C_dihedral)


def test_c3_nonconjugacy_certificate():
    with criterion(3, "non-conjugacy certificate n = 4", budget=30):
        M = standard_matrices(4)
        cert = nonconjugacy_certificate(IntMatrixGroup([M.A, M.S]), IntMatrixGroup([M.B, M.T]), m_max=13)
        assert cert.verdict == "not-conjugate"
        assert cert.modulus is not None and cert.modulus <= 13
        print(f"  witness: {cert.invariant} at modulus {cert.modulus}, searched {cert.searched}")


# ---------------------------------------------------------------------------
# 4. Molien on constructible representations


def test_c4_deleted_and_psl27():
    with criterion(4, "deleted permutation reps and PSL2(7)"):
        assert invariant_dims(deleted_rep_from_name("S6"), 4) == [0, 1, 1, 2]
        for name in ("A7", "S7", "A8", "S8"):
            assert invariant_dims(deleted_rep_from_name(name), 4)[3] == 2
        assert invariant_dims(deleted_rep_from_name("PSL27-7"), 3)[2] == 2
        assert invariant_dims(deleted_rep_from_name("PSL27-8"), 5)[4] == 2


def test_c4_we6():
    with criterion(4, "W(E6) dims 1..5"):
        assert invariant_dims(build_reflection_rep("E6"), 5) == [0, 1, 0, 1, 1]


def test_c4_we7_cached():
    with criterion(4, "sign-twisted W(E7) from the cached table", budget=5):
        asset = load_asset("we7_sign.trace")
        assert asset is not None
        assert invariant_dims(TraceTable.from_text(asset.text), 6)[5] == 2


@pytest.mark.slow
def test_c4_we7_full_enumeration():
    with criterion(4, "sign-twisted W(E7) by full enumeration", budget=600):
        G = build_reflection_rep("E7", twist="sign")
        dims = invariant_dims(G, 6, jobs=2)
        assert dims[5] == 2
        asset = load_asset("we7_sign.trace")
        assert dims == invariant_dims(TraceTable.from_text(asset.text), 6)


# ---------------------------------------------------------------------------
# 5. permutohedral fan and the degree-2n system


def test_c5_permutohedron_and_discrepancies():
    with criterion(5, "permutohedron, relation (T), Cremona, discrepancies, N", budget=10):
        for n in (3, 4, 5):
            P = build_permutohedron(n)
            assert (len(P.rays), len(P.cones)) == (2 ** (n + 1) - 2, factorial(n + 1))
            assert P.is_smooth()
            assert check_eq_T(n)
            assert not check_eq_T(n, perturb=(0, 1))
            assert cremona_swaps_levels(n)
        for n in range(4, 11):
            assert all(discrepancy_closed_forms(n).values())
            a = discrepancies(n)
            assert a[n - 2] == Fraction(-1, n)
            assert a == discrepancies_toric(n)
        for n in range(3, 8):
            assert linear_system_dim(n) == n + comb(2 * n - 1, n) == linear_system_dim_by_count(n)


# ---------------------------------------------------------------------------
# 6. invariant class ranks


def test_c6_invariant_ranks(m4):
    with criterion(6, "invariant class ranks", budget=10):
        for G, expected in ((pg.cyclic_group(5), 2), (pg.dihedral_group(5), 2), (pg.semidirect_5_4(), 1),
                            (pg.alternating_group(5), 1), (pg.symmetric_group(5), 1)):
            assert invariant_class_rank(m4, FanGroupAction.from_permutations(m4, G)) == expected
        U = build_U(4)
        assert invariant_class_rank(U, FanGroupAction.from_ambient(U, u_group_generators(4, True))) == 1
        assert invariant_class_rank(U, FanGroupAction.from_ambient(U, u_group_generators(4, False))) == 2


# ---------------------------------------------------------------------------
# 7. pair orbits of primitive groups


def _is_polygon_group(G):
    """Independent test for the regular cyclic or dihedral action: contains an r-cycle, order r or 2r."""
    r = G.degree
    if G.order() not in (r, 2 * r):
        return False
    return any(len(g.cycles()) == 1 and len(g.cycles()[0]) == r for g in G.elements())


def test_c7_pair_orbit_bound():
    with criterion(7, "primitive groups of degree >= 3", budget=60):
        checked = 0
        for name, G in pg.primitive_corpus(500):
            r = G.degree
            if r < 3 or not G.is_primitive()[0]:
                continue
            checked += 1
            s = min(G.pair_orbit_lengths())
            assert s >= r, name
            if s == r:
                assert _is_polygon_group(G), name
        assert checked > 100


# ---------------------------------------------------------------------------
# 8. cross-oracle terminality

FANS = {"V4": lambda: build_V(4), "U4": lambda: build_U(4), "Y4": lambda: build_Y(4),
        "X": lambda: build_m_variety(4), "P4": lambda: build_permutohedron(4)}
_FAN_CACHE = {}


def _fan(name):
    if name not in _FAN_CACHE:
        _FAN_CACHE[name] = FANS[name]()
    return _FAN_CACHE[name]


@pytest.mark.parametrize("name", sorted(FANS))
def test_c8_every_maximal_cone(name):
    with criterion(8, f"every cone of {name}"):
        F = _fan(name)
        for i in range(len(F.cones)):
            rep = F.cone_report(i)
            assert rep.terminal_points == rep.terminal_reid_tai, (name, i)


@st.composite
def unimodular4(draw):
    C = [[int(i == j) for j in range(4)] for i in range(4)]
    for _ in range(draw(st.integers(1, 6))):
        i, j = draw(st.integers(0, 3)), draw(st.integers(0, 3))
        if i != j:
            E = [[int(a == b) + (draw(st.integers(-2, 2)) if (a, b) == (i, j) else 0) for b in range(4)]
                 for a in range(4)]
            C = int_matmul(C, E)
    return C


@settings(max_examples=40)
@given(st.sampled_from(sorted(FANS)), st.integers(0, 10 ** 6), unimodular4())
def test_c8_property_under_change_of_basis(name, k, U):
    F = _fan(name)
    i = k % len(F.cones)
    moved = Fan([tuple(sum(U[a][b] * r[b] for b in range(4)) for a in range(4)) for r in F.rays], F.cones)
    rep, base = moved.cone_report(i), F.cone_report(i)
    ok = rep.terminal_points == rep.terminal_reid_tai == base.terminal_points
    if not ok:
        record_criterion(8, "change of basis", False)
    assert ok


# ---------------------------------------------------------------------------
# 9. quotient fan structure


def test_c9_quotient_fans():
    with criterion(9, "V has five 1/5(1,2,3,4) cones; Y smooth Fano with 10 rays"):
        V = build_V(4)
        assert len(V.cones) == 5
        target = CyclicQuotient(5, (1, 2, 3, 4)).normalized()
        for i in range(len(V.cones)):
            q = V.quotient_type(i)
            assert q.is_cyclic() and q.as_cyclic().normalized() == target
        Y = build_Y(4)
        assert Y.is_smooth() and Y.is_fano() and len(Y.rays) == 10


# ---------------------------------------------------------------------------
# 10. data-dependent checks


def _asset_or_skip(name):
    a = load_asset(name)
    if a is None:
        pytest.skip(f"{name} not present")
    assert a.provenance
    return a


def test_c10_burkhardt():
    a = _asset_or_skip("burkhardt_generators.txt")
    with criterion(10, "Burkhardt quartic under attributed generators"):
        G, prov = parse_matrix_group(a.text)
        assert prov
        assert is_semi_invariant(burkhardt_quartic(), G.generators).semi_invariant


@pytest.mark.parametrize("name,degree,expected", [
    ("psl2_13_7dim.trace", 4, 2),
    ("sl2_8_7dim_rational.trace", 6, 5),
    ("sl2_8_7dim_galois.trace", 4, 2),
])
def test_c10_trace_tables(name, degree, expected):
    a = _asset_or_skip(name)
    with criterion(10, f"{name} dim_{degree}"):
        assert invariant_dims(TraceTable.from_text(a.text), degree)[degree - 1] == expected
