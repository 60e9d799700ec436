"""Command-line front end: ``toricverify <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .data import DataAssetError, provenance_of
from .report import emit


def _dump(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2, ensure_ascii=False, default=str) + "\n"
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"- **{k}**:")
            lines.extend(f"  - {kk}: {vv}" for kk, vv in v.items())
        else:
            lines.append(f"- **{k}**: {v}")
    return "\n".join(lines) + "\n"


def _read_attributed(path: str) -> str:
    text = Path(path).read_text(encoding="utf-8")
    if provenance_of(text) is None:
        raise DataAssetError(f"{path} has no provenance line; refusing unattributed data")
    return text


# ---------------------------------------------------------------------------
# Subcommands


def cmd_verify(args) -> int:
    from .suites import run_suite

    report = run_suite(args.suite, jobs=args.jobs, data_dir=args.data_dir, full=args.full)
    sys.stdout.write(emit(report, args.format, timings=args.timings))
    return 0 if report.ok() else 1


TORIC_CONSTRUCTIONS = ("projective", "permutohedron", "m-variety", "listing-polytope", "V", "Y", "U", "x24")


def cmd_toric(args) -> int:
    from . import constructions as c
    from .toric import face_fan, invariants_report

    n = args.n
    name = args.construction
    if name == "listing-polytope":
        P, nA = c.build_listing_polytope("listing")
        out = {"construction": name, "points_listed": nA, "lattice_points": len(P.lattice_points()),
               "dimension": P.dimension()}
        if P.dimension() == 4:
            try:
                out["face_fan"] = invariants_report(face_fan(P), with_types=False)
            except ValueError as exc:
                out["face_fan"] = f"not defined: {exc}"
        sys.stdout.write(_dump(out, args.format))
        return 0
    builders = {
        "projective": c.build_projective_fan, "permutohedron": c.build_permutohedron,
        "m-variety": c.build_m_variety, "V": c.build_V, "Y": c.build_Y, "U": c.build_U,
    }
    F = c.x24_fan() if name == "x24" else builders[name](n)
    rep = {"construction": name, "n": F.dim}
    rep.update(invariants_report(F, with_types=not args.no_types))
    if args.fan_file:
        rep["fan"] = F.to_text()
    sys.stdout.write(_dump(rep, args.format))
    return 0


def cmd_reidtai(args) -> int:
    from .reidtai import CyclicQuotient, is_terminal_reid_tai

    w = tuple(int(x) for x in args.weights.replace(",", " ").split())
    q = CyclicQuotient(args.order, w)
    v = is_terminal_reid_tai(q)
    out = {"type": str(q), "normalized": str(q.normalized()), "terminal": v.terminal,
           "violating_r": v.violating_r, "flags": v.flags}
    sys.stdout.write(_dump(out, args.format))
    return 0


def _load_molien_input(path: str):
    from .molien import TraceTable, builtin_group, parse_matrix_group

    p = Path(path)
    if not p.exists():
        return "group", builtin_group(path), "builtin"
    text = _read_attributed(path)
    if any(ln.strip().startswith("order:") for ln in text.splitlines()):
        T = TraceTable.from_text(text)
        return "table", T, T.provenance
    G, prov = parse_matrix_group(text)
    return "group", G, prov


def cmd_molien(args) -> int:
    from .molien import invariant_dims, parse_character, semi_invariant_dims

    kind, G, prov = _load_molien_input(args.group)
    out = {"input": args.group, "provenance": prov}
    if kind == "table":
        if args.character:
            raise SystemExit("a character needs a matrix group, not a trace table")
        out["order"] = G.order
        out["dims"] = invariant_dims(G, args.dmax)
    else:
        out["order"] = G.order()
        if args.character:
            chi = parse_character(Path(args.character).read_text(encoding="utf-8"))
            out["character"] = [str(x) for x in chi]
            out["semi_invariant_dims"] = semi_invariant_dims(G, args.dmax, chi, jobs=args.jobs)
        else:
            out["dims"] = invariant_dims(G, args.dmax, jobs=args.jobs)
    out["degrees"] = list(range(1, args.dmax + 1))
    sys.stdout.write(_dump(out, args.format))
    return 0


def cmd_glnz(args) -> int:
    from .latgroups import (IntMatrixGroup, nonconjugacy_certificate, standard_matrices, verify_conjugation,
                            verify_intertwiner)
    from .exact import ExactMatrix, format_matrix

    n = args.n
    M = standard_matrices(n)
    out = {"n": n}
    for k in ("A", "B", "S", "T", "C_cyclic", "C_dihedral"):
        out[k] = format_matrix(ExactMatrix(getattr(M, k))).replace("\n", " / ")
    out["CA=BC"] = verify_intertwiner(M.A, M.B, M.C_cyclic)
    try:
        out["C^-1AC=B and C^-1SC=T"] = verify_conjugation([(M.A, M.B), (M.S, M.T_prime)], M.C_dihedral)
    except ValueError as exc:
        out["C^-1AC=B and C^-1SC=T"] = f"not applicable: {exc}"
    if args.certificate:
        cert = nonconjugacy_certificate(IntMatrixGroup([M.A, M.S]), IntMatrixGroup([M.B, M.T]), m_max=args.m_max)
        out["certificate"] = {"verdict": cert.verdict, "invariant": cert.invariant, "modulus": cert.modulus,
                              "searched": cert.searched}
    sys.stdout.write(_dump(out, args.format))
    return 0


def cmd_polyinv(args) -> int:
    from .molien import parse_matrix_group
    from .polyinv import is_semi_invariant, parse_poly

    ptext = Path(args.poly).read_text(encoding="utf-8")
    lines = [ln for ln in ptext.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    conductor = 1
    body = []
    for ln in lines:
        key, sep, val = ln.partition(":")
        if sep and key.strip() == "conductor":
            conductor = int(val)
        elif not (sep and key.strip() in ("provenance", "name")):
            body.append(ln)
    G, prov = parse_matrix_group(_read_attributed(args.group))
    p = parse_poly(" ".join(body), G.dim, max(conductor, G.conductor))
    v = is_semi_invariant(p, G.generators)
    out = {"poly": str(p), "group_provenance": prov, "semi_invariant": v.semi_invariant, "invariant": v.invariant,
           "multipliers": [str(m) for m in v.multipliers]}
    if not v.semi_invariant:
        out["failing_generator"] = v.failing_generator
        out["counterexample_monomial"] = v.counterexample
    sys.stdout.write(_dump(out, args.format))
    return 0 if v.semi_invariant else 1


def cmd_perm(args) -> int:
    from . import permgroups as pg

    if args.gens:
        G = pg.PermGroup.from_cycles(args.degree, *args.gens)
    else:
        named = {"cyclic": pg.cyclic_group, "dihedral": pg.dihedral_group, "symmetric": pg.symmetric_group,
                 "alternating": pg.alternating_group}
        G = named[args.family](args.degree)
    prim, blocks = G.is_primitive()
    out = {"degree": G.degree, "order": G.order(), "transitive": G.is_transitive(), "primitive": prim,
           "pair_orbit_lengths": G.pair_orbit_lengths() if G.degree >= 2 else []}
    if not prim:
        out["block_witness"] = blocks
    else:
        rep = pg.check_pair_orbit_bound(G)
        out["pair_orbit_statement"] = {"holds": rep.holds, "clause": rep.clause, "detail": rep.detail}
    sys.stdout.write(_dump(out, args.format))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES
    from .molien import MAX_DEGREE

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--data-dir", default=None, help="data asset directory (default: bundled assets)")

    ap = argparse.ArgumentParser(prog="toricverify",
                                 description="Exact verification of toric, lattice-group and invariant-theory computations.")
    ap.add_argument("--version", action="version", version=f"toricverify {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--full", action="store_true", help="also run the slow full-enumeration checks")
    p.add_argument("--timings", action="store_true", help="include per-check runtimes (not deterministic)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("toric", parents=[common], help="invariants of a built-in fan")
    p.add_argument("construction", choices=TORIC_CONSTRUCTIONS)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--no-types", action="store_true", help="skip the singular face census")
    p.add_argument("--fan-file", action="store_true", help="include the fan in text form")
    p.set_defaults(func=cmd_toric)

    p = sub.add_parser("reidtai", parents=[common], help="Reid-Tai test for 1/m(a_1,...,a_n)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--weights", required=True, help="comma separated weights")
    p.set_defaults(func=cmd_reidtai)

    p = sub.add_parser("molien", parents=[common], help="invariant dimensions of a matrix group or trace table")
    p.add_argument("--group", required=True, help="group file, trace-table file, or builtin name")
    p.add_argument("--dmax", type=int, required=True, choices=range(1, MAX_DEGREE + 1), metavar=f"1..{MAX_DEGREE}")
    p.add_argument("--character", default=None, help="file with one root of unity per generator")
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("glnz", parents=[common], help="matrix identities and a non-conjugacy search")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--certificate", action="store_true")
    p.add_argument("--m-max", type=int, default=13)
    p.set_defaults(func=cmd_glnz)

    p = sub.add_parser("polyinv", parents=[common], help="polynomial invariance")
    psub = p.add_subparsers(dest="action", required=True)
    c = psub.add_parser("check", parents=[common])
    c.add_argument("--poly", required=True)
    c.add_argument("--group", required=True)
    c.set_defaults(func=cmd_polyinv)

    p = sub.add_parser("perm", parents=[common], help="primitivity and pair orbits of a permutation group")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--family", choices=("cyclic", "dihedral", "symmetric", "alternating"), default="symmetric")
    p.add_argument("--gens", nargs="*", help='generators in cycle notation, e.g. "(1 2 3)" "(1 2)"')
    p.set_defaults(func=cmd_perm)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except DataAssetError as exc:
        print(f"toricverify: data error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError) as exc:
        print(f"toricverify: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
