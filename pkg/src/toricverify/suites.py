"""Verification suites assembled from the library modules.

Each task is a module-level function returning a list of checks, so tasks
can run in worker processes; the report orders checks by id regardless of
completion order.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from math import comb, factorial

from .data import load_asset
from .report import FAIL, PASS, SKIP, Check, VerificationReport

SUITES = ("toric-n4", "quotients", "glnz", "molien-s5s6", "permlemmas", "polyinv")


def _mk(id, claim, basis, expected, computed, ok, detail="", data_dependent=False) -> Check:
    return Check(id, claim, basis, str(expected), str(computed), PASS if ok else FAIL, detail, data_dependent)


def _skip(id, claim, expected, why) -> Check:
    return Check(id, claim, "stated", str(expected), "not computed", SKIP, why, True)


# ---------------------------------------------------------------------------
# toric-n4


def task_m_variety(ctx) -> list[Check]:
    from .constructions import build_m_variety, m_system_exponents
    from .toric import LatticePolytope

    F = build_m_variety(4)
    cl_rank, torsion = F.class_group()
    term, _ = F.is_terminal()
    exps = m_system_exponents(4)
    P = LatticePolytope([e[:4] for e in exps])
    npts = len(P.lattice_points())
    deg = F.anticanonical_degree()
    claim = "toric variety of the degree-8 system for n = 4"
    return [
        _mk("toric-n4.m.cl_rank", f"{claim}: class group rank", "stated", 6, cl_rank, cl_rank == 6, f"torsion {torsion}"),
        _mk("toric-n4.m.pic_rank", f"{claim}: Picard rank", "stated", 1, F.picard_rank(), F.picard_rank() == 1),
        _mk("toric-n4.m.terminal", f"{claim}: terminal", "stated", True, term, term),
        _mk("toric-n4.m.smooth", f"{claim}: smooth", "stated", False, F.is_smooth(), not F.is_smooth()),
        _mk("toric-n4.m.degree", f"{claim}: anticanonical degree (-K)^4", "stated", 70, deg, deg == 70,
            "the degree of a Q-Fano toric variety is fixed by its rays; these rays give 625/6"),
        _mk("toric-n4.m.points", f"{claim}: exponent count equals lattice points of the Newton polytope",
            "stated", len(exps), npts, npts == len(exps)),
    ]


def task_listing_points(ctx) -> list[Check]:
    from .constructions import build_listing_polytope

    P, nA = build_listing_polytope("listing")
    npts = len(P.lattice_points())
    return [_mk("toric-n4.listing.points", "printed n = 4 point list: #A equals #lattice points of its hull",
                "stated", nA, npts, nA == npts, f"hull has dimension {P.dimension()}")]


def task_permutohedron(ctx) -> list[Check]:
    from .constructions import build_permutohedron, check_eq_T, cremona_swaps_levels

    out = []
    for n in (3, 4, 5):
        P = build_permutohedron(n)
        out.append(_mk(f"toric-n4.perm{n}.counts", f"permutohedral fan n = {n}: rays and maximal cones",
                       "stated", (2 ** (n + 1) - 2, factorial(n + 1)), (len(P.rays), len(P.cones)),
                       (len(P.rays), len(P.cones)) == (2 ** (n + 1) - 2, factorial(n + 1))))
        out.append(_mk(f"toric-n4.perm{n}.smooth", f"permutohedral fan n = {n} is smooth", "stated", True,
                       P.is_smooth(), P.is_smooth()))
        ok = check_eq_T(n)
        out.append(_mk(f"toric-n4.perm{n}.eqT", f"n = {n}: E_(n-1) ~ pi*(-K) - sum (n-i) E_i", "stated", True, ok, ok))
        ctl = check_eq_T(n, perturb=(0, 1))
        out.append(_mk(f"toric-n4.perm{n}.eqT_control", f"n = {n}: perturbed relation is rejected", "control",
                       False, ctl, not ctl))
        sw = cremona_swaps_levels(n)
        out.append(_mk(f"toric-n4.perm{n}.cremona", f"n = {n}: -I is a fan automorphism swapping E_k and E_(n-1-k)",
                       "stated", True, sw, sw))
    return out


def task_discrepancies(ctx) -> list[Check]:
    from .constructions import (discrepancies, discrepancies_toric, discrepancy_closed_forms,
                                linear_system_dim, linear_system_dim_by_count)

    out = []
    for n in range(4, 11):
        cf = discrepancy_closed_forms(n)
        a = discrepancies(n)
        tor = discrepancies_toric(n)
        out.append(_mk(f"toric-n4.disc{n:02d}.closed", f"n = {n}: discrepancy closed forms, a_(n-2) = -1/n",
                       "stated", "all true", cf, all(cf.values())))
        out.append(_mk(f"toric-n4.disc{n:02d}.toric", f"n = {n}: closed forms agree with the fan computation",
                       "derived", [str(x) for x in a], [str(x) for x in tor], a == tor))
    for n in range(3, 8):
        N = linear_system_dim(n)
        out.append(_mk(f"toric-n4.linsys{n}", f"n = {n}: N = n + C(2n-1, n) equals the monomial count minus one",
                       "stated", n + comb(2 * n - 1, n), linear_system_dim_by_count(n), N == linear_system_dim_by_count(n)))
    return out


def task_cross_oracle(ctx, which: str) -> list[Check]:
    from .constructions import build_m_variety, build_permutohedron, build_U, build_V, build_Y

    builders = {
        "V4": lambda: build_V(4), "V6": lambda: build_V(6), "Y4": lambda: build_Y(4),
        "U4": lambda: build_U(4), "M4": lambda: build_m_variety(4), "P4": lambda: build_permutohedron(4),
    }
    F = builders[which]()
    bad = []
    for i in range(len(F.cones)):
        rep = F.cone_report(i)
        if rep.terminal_points != rep.terminal_reid_tai:
            bad.append(i)
    return [_mk(f"quotients.cross.{which}", f"{which}: lattice-point and Reid-Tai terminality agree on every maximal cone",
                "derived", "agree", f"{len(F.cones) - len(bad)}/{len(F.cones)} agree", not bad)]


# ---------------------------------------------------------------------------
# quotients


def task_reidtai(ctx) -> list[Check]:
    from .reidtai import CyclicQuotient, check_U_cone_types, is_terminal_reid_tai

    out = []
    for p in (5, 7, 11, 13, 17, 19, 23):
        v = is_terminal_reid_tai(CyclicQuotient(p, tuple(range(1, p))))
        out.append(_mk(f"quotients.rt.p{p:02d}", f"1/{p}(1,...,{p - 1}) is terminal", "stated", True, v.terminal, v.terminal))
    for n in (4, 6):
        r = check_U_cone_types(n)
        out.append(_mk(f"quotients.rt.split{n}", f"n = {n}: all sign-split types are terminal", "stated",
                       f"{2 ** n} terminal", f"{r.count - len(r.failures)} terminal of {r.count}",
                       r.all_terminal and r.count == 2 ** n))
    v = is_terminal_reid_tai(CyclicQuotient(2, (1, 1)))
    out.append(_mk("quotients.rt.control", "1/2(1,1) is not terminal", "control", False, v.terminal, not v.terminal))
    return out


def task_V(ctx) -> list[Check]:
    from .constructions import build_V

    F = build_V(4)
    types = {}
    for i in range(len(F.cones)):
        q = F.quotient_type(i)
        key = str(q.as_cyclic().normalized()) if q.is_cyclic() else str(q)
        types[key] = types.get(key, 0) + 1
    term, _ = F.is_terminal()
    F6 = build_V(6)
    t6, _ = F6.is_terminal()
    return [
        _mk("quotients.V4.cones", "V (n = 4): five maximal cones of type 1/5(1,2,3,4)", "stated",
            {"1/5(1,2,3,4)": 5}, types, types == {"1/5(1,2,3,4)": 5}),
        _mk("quotients.V4.terminal", "V (n = 4) is terminal", "stated", True, term, term),
        _mk("quotients.V4.cl", "V (n = 4): class group rank 1", "stated", 1, F.class_group()[0], F.class_group()[0] == 1),
        _mk("quotients.V6.terminal", "V (n = 6) is terminal", "stated", True, t6, t6),
    ]


def task_Y(ctx) -> list[Check]:
    from .constructions import build_Y

    F = build_Y(4)
    ok = F.is_smooth() and F.is_fano() and len(F.rays) == 10
    return [_mk("quotients.Y4", "Y (n = 4) is a smooth Fano fan with 10 rays", "stated", "smooth, Fano, 10 rays",
                f"smooth={F.is_smooth()}, fano={F.is_fano()}, rays={len(F.rays)}", ok)]


def task_U(ctx) -> list[Check]:
    from .constructions import FanGroupAction, build_U, invariant_class_rank, u_group_generators

    out = []
    F = build_U(4)
    term, _ = F.is_terminal()
    out.append(_mk("quotients.U4.terminal", "U (n = 4) is terminal", "stated", True, term, term))
    for primed, expected in ((False, 2), (True, 1)):
        act = FanGroupAction.from_ambient(F, u_group_generators(4, primed))
        r = invariant_class_rank(F, act)
        label = "G'_U" if primed else "G_U"
        out.append(_mk(f"quotients.U4.rank{'_primed' if primed else ''}", f"U (n = 4): invariant class rank under {label}",
                       "stated", expected, r, r == expected))
    F6 = build_U(6)
    t6, _ = F6.is_terminal()
    out.append(_mk("quotients.U6.terminal", "U (n = 6) is terminal", "stated", True, t6, t6))
    return out


def task_invariant_ranks(ctx) -> list[Check]:
    from . import permgroups as pg
    from .constructions import FanGroupAction, big_orbits_gate, build_m_variety, invariant_class_rank

    F = build_m_variety(4)
    groups = [("mu5", pg.cyclic_group(5), 2), ("D5", pg.dihedral_group(5), 2), ("F20", pg.semidirect_5_4(), 1),
              ("A5", pg.alternating_group(5), 1), ("S5", pg.symmetric_group(5), 1)]
    out = []
    for name, G, expected in groups:
        r = invariant_class_rank(F, FanGroupAction.from_permutations(F, G))
        gate = big_orbits_gate(G)
        out.append(_mk(f"quotients.M4.rank.{name}", f"degree-8 system variety (n = 4): invariant class rank under {name}",
                       "stated", expected, r, r == expected, f"shortest pair orbit {gate.min_pair_orbit}"))
    return out


def task_x24(ctx) -> list[Check]:
    from .constructions import x24_fan

    F = x24_fan()
    deg = F.anticanonical_degree()
    term, _ = F.is_terminal()
    return [_mk("quotients.X24", "n = 3 analogue: terminal Fano threefold of degree 24", "derived", (True, 24),
                (term, str(deg)), term and deg == 24)]


# ---------------------------------------------------------------------------
# glnz


def task_glnz(ctx) -> list[Check]:
    from .latgroups import standard_matrices, verify_conjugation, verify_intertwiner

    out = []
    for n in range(4, 9):
        M = standard_matrices(n)
        ok = verify_intertwiner(M.A, M.B, M.C_cyclic)
        out.append(_mk(f"glnz.n{n}.cyclic", f"n = {n}: C A = B C", "stated", True, ok, ok))
        try:
            ok = verify_conjugation([(M.A, M.B), (M.S, M.T_prime)], M.C_dihedral)
            detail = ""
        except ValueError as exc:
            ok, detail = False, f"{exc}; n + 1 is not prime here"
        out.append(_mk(f"glnz.n{n}.dihedral", f"n = {n}: C^-1 A C = B and C^-1 S C = T", "stated", True, ok, ok, detail))
    return out


LISTING_N4 = {
    "A": [[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]],
    "B": [[-4, 0, 0, -5], [1, 0, 0, 1], [2, 1, 0, 2], [3, 0, 1, 3]],
    "S": [[-1, 0, 0, 0], [-1, 0, 0, 1], [-1, 0, 1, 0], [-1, 1, 0, 0]],
    "T": [[-1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 1, 0, 0]],
}


def _listing_text(M) -> str:
    return "Matrix([" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in M) + "])"


def task_glnz_listing(ctx) -> list[Check]:
    from .latgroups import standard_matrices

    M = standard_matrices(4)
    ours = {"A": M.A, "B": M.B, "S": M.S, "T": M.T}
    return [_mk(f"glnz.n4.listing.{k}", f"n = 4: {k} matches the reference matrices character for character", "stated",
                _listing_text(v), _listing_text(ours[k]), _listing_text(ours[k]) == _listing_text(v))
            for k, v in LISTING_N4.items()]


def task_nonconjugacy(ctx) -> list[Check]:
    from .latgroups import IntMatrixGroup, nonconjugacy_certificate

    G1 = IntMatrixGroup([LISTING_N4["A"], LISTING_N4["S"]])
    G2 = IntMatrixGroup([LISTING_N4["B"], LISTING_N4["T"]])
    cert = nonconjugacy_certificate(G1, G2)
    return [_mk("glnz.n4.nonconjugate", "n = 4: <A,S> and <B,T> are not conjugate in GL_4(Z)", "stated",
                "not-conjugate", f"{cert.verdict} ({cert.invariant}, modulus {cert.modulus})",
                cert.verdict == "not-conjugate", f"searched moduli {cert.searched}")]


# ---------------------------------------------------------------------------
# molien


def task_molien_deleted(ctx) -> list[Check]:
    from .molien import SymmetricFunctionOracle, deleted_rep_from_name, invariant_dims, molien_cross_check

    out = []
    cases = [("S5", 4, None, "S5 deleted rep: dims d = 1..4"),
             ("S6", 4, [0, 1, 1, 2], "S6 on P^4: dims d = 1..4"),
             ("A7", 4, None, "A7 on P^5: dim_4 = 2"), ("S7", 4, None, "S7 on P^5: dim_4 = 2"),
             ("A8", 4, None, "A8 on P^6: dim_4 = 2"), ("S8", 4, None, "S8 on P^6: dim_4 = 2")]
    for name, d, expected, claim in cases:
        G = deleted_rep_from_name(name)
        dims = invariant_dims(G, d)
        oracle = SymmetricFunctionOracle(int(name[1:])).dims(d)
        if expected is None:
            ok = dims[3] == 2
            exp = "dim_4 = 2"
        else:
            ok = dims == expected
            exp = expected
        out.append(_mk(f"molien.{name}", claim, "stated", exp, dims, ok))
        if name[0] == "S":
            out.append(_mk(f"molien.{name}.oracle", f"{name}: partitions of d into parts 2..r", "derived", oracle, dims,
                           oracle == dims))
    for name in ("S5", "S6", "PSL27-7"):
        a, b = molien_cross_check(deleted_rep_from_name(name), 5)
        out.append(_mk(f"molien.{name}.table_mode", f"{name}: trace-table mode reproduces enumeration", "derived", a, b, a == b))
    return out


def task_molien_psl27(ctx) -> list[Check]:
    from .molien import deleted_rep_from_name, invariant_dims

    d6 = invariant_dims(deleted_rep_from_name("PSL27-7"), 3)
    d7 = invariant_dims(deleted_rep_from_name("PSL27-8"), 5)
    return [
        _mk("molien.PSL27-6dim", "PSL2(7) on P^5: dim_3 = 2", "stated", 2, d6[2], d6[2] == 2, f"dims {d6}"),
        _mk("molien.PSL27-7dim", "PSL2(7) on P^6: dim_5 = 2", "stated", 2, d7[4], d7[4] == 2, f"dims {d7}"),
    ]


def task_molien_weyl(ctx) -> list[Check]:
    from .molien import (WEYL_ORDERS, TraceTable, build_reflection_rep, invariant_dims, twist_descends)

    out = []
    E6 = build_reflection_rep("E6")
    out.append(_mk("molien.WE6.order", "W(E6) order", "derived", WEYL_ORDERS["E6"], E6.order(),
                   E6.order() == WEYL_ORDERS["E6"]))
    d = invariant_dims(E6, 5)
    out.append(_mk("molien.WE6.dims", "W(E6): unique quadric and unique quintic, dims d = 1..5", "stated",
                   [0, 1, 0, 1, 1], d, d == [0, 1, 0, 1, 1]))
    desc = twist_descends("E7")
    out.append(_mk("molien.WE7.descent", "E7: longest element is -I, so the sign twist kills the centre", "derived",
                   True, desc, desc))
    asset = _asset(ctx, "we7_sign.trace")
    if asset is None:
        out.append(_skip("molien.WE7-sign.dim6", "sign-twisted W(E7): dim_6 = 2", 2, "we7_sign.trace absent"))
    else:
        T = TraceTable.from_text(asset.text)
        dims = invariant_dims(T, 6)
        out.append(_mk("molien.WE7-sign.dim6", "sign-twisted W(E7): dim_6 = 2 (cached table)", "stated", 2, dims[5],
                       dims[5] == 2, f"dims {dims}"))
    if ctx.get("full"):
        G = build_reflection_rep("E7", twist="sign")
        dims = invariant_dims(G, 6, jobs=ctx.get("jobs", 1))
        out.append(_mk("molien.WE7-sign.full", "sign-twisted W(E7): dim_6 = 2 by full enumeration", "stated", 2,
                       dims[5], dims[5] == 2, f"order {G.order()}"))
    return out


DATA_TRACE_CHECKS = [
    # (check id, asset, claim, degree, expected dim)
    ("molien.PSL2_13.dim4", "psl2_13_7dim.trace", "PSL2(13) on P^6: dim_4 = 2", 4, 2),
    ("molien.SL2_8.rational.dim6", "sl2_8_7dim_rational.trace", "SL2(8), rational 7-dim rep: dim_6 = 5", 6, 5),
    ("molien.SL2_8.galois.dim4", "sl2_8_7dim_galois.trace", "SL2(8), other 7-dim reps: dim_4 = 2", 4, 2),
]


def task_molien_data(ctx) -> list[Check]:
    from .molien import TraceTable, invariant_dims

    out = []
    for cid, name, claim, d, expected in DATA_TRACE_CHECKS:
        asset = _asset(ctx, name)
        if asset is None:
            out.append(_skip(cid, claim, expected, f"{name} absent from the data directory"))
            continue
        T = TraceTable.from_text(asset.text)
        dims = invariant_dims(T, d)
        out.append(_mk(cid, claim, "stated", expected, dims[d - 1], dims[d - 1] == expected,
                       f"dims {dims}; provenance: {asset.provenance}", data_dependent=True))
    return out


# ---------------------------------------------------------------------------
# permlemmas


def task_permlemmas(ctx) -> list[Check]:
    from .permgroups import NotPrimitiveError, check_pair_orbit_bound, primitive_corpus

    corpus = primitive_corpus(ctx.get("random_count", 500))
    primitive = 0
    failures, low_degree, equality = [], [], []
    for name, G in corpus:
        try:
            rep = check_pair_orbit_bound(G)
        except NotPrimitiveError:
            continue
        if G.degree <= 2:
            low_degree.append((name, rep))
            continue
        primitive += 1
        if not rep.holds:
            failures.append(name)
        elif rep.clause == "ii":
            equality.append(name)
    out = [_mk("permlemmas.pair_orbits", "primitive groups of degree r >= 3: every pair orbit has length >= r, "
               "equality only for regular cyclic or dihedral groups", "stated", "no failures",
               f"{primitive} primitive groups checked, {len(failures)} failures", not failures,
               f"equality cases: {', '.join(equality)}" + (f"; failures: {', '.join(failures)}" if failures else ""))]
    deg2 = [(n, r) for n, r in low_degree if r.degree == 2]
    ok = bool(deg2) and all(not r.holds and r.pair_orbit_lengths == [1] for _, r in deg2)
    out.append(_mk("permlemmas.degree2", "degree 2 lies outside the statement: the single pair is an orbit of length 1",
                   "control", "violates", "violates" if ok else "unexpected", ok,
                   ", ".join(n for n, _ in deg2)))
    return out


def task_big_orbits(ctx) -> list[Check]:
    from . import permgroups as pg
    from .constructions import big_orbits_gate

    out = []
    for name, G, expected in (("mu5", pg.cyclic_group(5), False), ("D5", pg.dihedral_group(5), False),
                              ("F20", pg.semidirect_5_4(), True), ("A5", pg.alternating_group(5), True),
                              ("S5", pg.symmetric_group(5), True)):
        g = big_orbits_gate(G)
        out.append(_mk(f"permlemmas.gate.{name}", f"{name}: every pair orbit longer than n + 1 = 5", "derived",
                       expected, g.holds, g.holds == expected, f"shortest pair orbit {g.min_pair_orbit}"))
    return out


# ---------------------------------------------------------------------------
# polyinv


def task_polyinv(ctx) -> list[Check]:
    from .polyinv import (burkhardt_quartic, build_M_member, cyclic_shift_matrix, is_semi_invariant, klein_readings,
                          m_member_span_rank, permutation_substitution, parse_poly)
    from .constructions import linear_system_dim

    out = []
    B = burkhardt_quartic()
    gens = [permutation_substitution([0, 2, 1, 3, 4]), permutation_substitution([0, 2, 3, 4, 1])]
    v = is_semi_invariant(B, gens)
    out.append(_mk("polyinv.burkhardt.visible", "Burkhardt quartic is invariant under permutations of x2..x5",
                   "stated", True, v.invariant, v.invariant))
    bad = [[2 if i == j == 1 else int(i == j) for j in range(5)] for i in range(5)]
    v = is_semi_invariant(B, [bad])
    out.append(_mk("polyinv.burkhardt.control", "Burkhardt quartic under x2 -> 2 x2 is rejected with a witness",
                   "control", False, v.semi_invariant, not v.semi_invariant and v.counterexample is not None,
                   f"witness monomial {v.counterexample}"))
    readings = {r.name: r for r in klein_readings()}
    pr = readings["printed"]
    out.append(_mk("polyinv.klein.printed", "printed Klein cubic is flagged as not homogeneous", "derived",
                   "inhomogeneous", f"degrees {sorted(pr.degrees)}", not pr.homogeneous))
    cy = readings["cyclic"]
    v = is_semi_invariant(cy.poly, [cyclic_shift_matrix(5)])
    out.append(_mk("polyinv.klein.cyclic", "cyclic Klein cubic is invariant under the 5-cycle", "derived", True,
                   v.invariant, v.invariant and cy.homogeneous))
    for n in (3, 4):
        r, params = m_member_span_rank(n)
        N1 = linear_system_dim(n) + 1
        out.append(_mk(f"polyinv.m_span{n}", f"n = {n}: members of the degree-2n system span N + 1 dimensions",
                       "stated", N1, r, r == N1 == params))
    p = build_M_member(3, parse_poly("x1^2", 4), [0, 0, 0, 0])
    out.append(_mk("polyinv.m_member", "n = 3, f = x1^2, lambda = 0 gives x1^3 x2 x3 x4", "stated", "x1^3 x2 x3 x4",
                   str(p), str(p) == "x1^3 x2 x3 x4"))
    out.extend(_burkhardt_data(ctx))
    return out


def _burkhardt_data(ctx) -> list[Check]:
    from .molien import invariant_dims, parse_matrix_group
    from .polyinv import burkhardt_quartic, is_semi_invariant

    name = "burkhardt_generators.txt"
    cid = "polyinv.burkhardt.data"
    asset = _asset(ctx, name)
    if asset is None:
        return [_skip(cid, "Burkhardt quartic is semi-invariant under the node reflections", "unit multipliers",
                      f"{name} absent from the data directory")]
    G, _ = parse_matrix_group(asset.text)
    v = is_semi_invariant(burkhardt_quartic(), G.generators)
    out = [_mk(cid, "Burkhardt quartic is semi-invariant under the node reflections", "stated",
               "unit multipliers", [str(m) for m in v.multipliers], v.semi_invariant,
               f"provenance: {asset.provenance}", data_dependent=True)]
    dims = invariant_dims(G, 6)
    out.append(_mk("polyinv.burkhardt.dims", "node reflection group: invariants only in degrees 4 and 6 up to degree 6",
                   "stated", [0, 0, 0, 1, 0, 1], dims, dims == [0, 0, 0, 1, 0, 1], f"order {G.order()}",
                   data_dependent=True))
    return out


# ---------------------------------------------------------------------------
# Assembly


def _asset(ctx, name):
    a = load_asset(name, ctx.get("data_dir"))
    if a is not None:
        ctx.setdefault("digests", {})[name] = a.sha256
    return a


TASKS = {
    "toric-n4": [task_m_variety, task_listing_points, task_permutohedron, task_discrepancies,
                 ("cross", "M4"), ("cross", "P4")],
    "quotients": [task_reidtai, task_V, task_Y, task_U, task_invariant_ranks, task_x24,
                  ("cross", "V4"), ("cross", "V6"), ("cross", "Y4"), ("cross", "U4")],
    "glnz": [task_glnz, task_glnz_listing, task_nonconjugacy],
    "molien-s5s6": [task_molien_deleted, task_molien_psl27, task_molien_weyl, task_molien_data],
    "permlemmas": [task_permlemmas, task_big_orbits],
    "polyinv": [task_polyinv],
}


def _run_task(args):
    task, ctx = args
    ctx = dict(ctx)
    t0 = time.perf_counter()
    if isinstance(task, tuple):
        checks = task_cross_oracle(ctx, task[1])
    else:
        checks = task(ctx)
    dt = time.perf_counter() - t0
    for c in checks:
        c.runtime = dt / max(len(checks), 1)
    return checks, ctx.get("digests", {})


def run_suite(name: str, jobs: int = 1, data_dir=None, full: bool = False, random_count: int = 500) -> VerificationReport:
    if name not in TASKS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    ctx = {"data_dir": str(data_dir) if data_dir is not None else None, "full": full, "jobs": jobs,
           "random_count": random_count}
    work = [(t, ctx) for t in TASKS[name]]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_task, work))
    else:
        results = [_run_task(w) for w in work]
    checks: list[Check] = []
    digests: dict[str, str] = {}
    for cs, dg in results:
        checks.extend(cs)
        digests.update(dg)
    ids = [c.id for c in checks]
    if len(set(ids)) != len(ids):
        raise AssertionError("duplicate check ids")
    return VerificationReport(name, sorted(checks, key=lambda c: c.id), data_digests=digests)

