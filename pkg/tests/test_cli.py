import json
import shutil

import pytest

from toricverify.cli import main
from toricverify.data import PACKAGE_DATA
from toricverify.molien import MatrixGroup, format_matrix_group

S3_GENS = [[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]]]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def s3_file(tmp_path):
    p = tmp_path / "s3.txt"
    p.write_text(format_matrix_group(MatrixGroup(S3_GENS, name="S3"), provenance="permutation matrices"),
                 encoding="utf-8")
    return p


def test_verify_passing_suite(capsys):
    code, d = run_json(capsys, "verify", "quotients")
    assert code == 0 and d["verdict"] == "pass"


def test_verify_failing_suite(capsys):
    code, d = run_json(capsys, "verify", "glnz")
    assert code == 1 and d["verdict"] == "fail"
    failed = {c["id"] for c in d["checks"] if c["verdict"] == "fail"}
    assert failed and all("dihedral" in i for i in failed)


def test_verify_markdown(capsys):
    code, out, _ = run(capsys, "verify", "permlemmas", "--format", "markdown")
    assert code == 0 and out.startswith("# Suite `permlemmas`")


def test_verify_bad_data_returns_2(capsys, tmp_path):
    d = tmp_path / "data"
    shutil.copytree(PACKAGE_DATA, d, ignore=shutil.ignore_patterns("__pycache__"))
    p = d / "we7_sign.trace"
    p.write_text(p.read_text(encoding="utf-8") + "# edited\n", encoding="utf-8")
    code, out, err = run(capsys, "verify", "molien-s5s6", "--data-dir", str(d))
    assert code == 2 and "data error" in err and out == ""


def test_verify_empty_data_dir_passes_with_skips(capsys, tmp_path):
    code, d = run_json(capsys, "verify", "molien-s5s6", "--data-dir", str(tmp_path))
    assert code == 0 and d["verdict"] == "pass-with-skips"


def test_reidtai(capsys):
    code, d = run_json(capsys, "reidtai", "--order", "5", "--weights", "1,2,3,4")
    assert code == 0 and d["terminal"] is True
    code, d = run_json(capsys, "reidtai", "--order", "2", "--weights", "1,1")
    assert d["terminal"] is False and d["violating_r"] is not None


def test_molien_builtin_and_file(capsys, s3_file):
    code, d = run_json(capsys, "molien", "--group", str(s3_file), "--dmax", "3")
    assert code == 0 and d["order"] == 6 and d["dims"] == [1, 2, 3]
    assert d["provenance"] == "permutation matrices"


def test_molien_trace_table(capsys):
    code, d = run_json(capsys, "molien", "--group", str(PACKAGE_DATA / "psl2_13_7dim.trace"), "--dmax", "8")
    assert code == 0 and d["order"] == 1092 and d["dims"] == [0, 1, 0, 2, 0, 4, 1, 7]


def test_molien_character(capsys, s3_file, tmp_path):
    chi = tmp_path / "sign.txt"
    chi.write_text("1\n-1\n", encoding="utf-8")
    code, d = run_json(capsys, "molien", "--group", str(s3_file), "--dmax", "3", "--character", str(chi))
    assert code == 0 and d["semi_invariant_dims"] == [0, 0, 1]


def test_molien_refuses_unattributed(capsys, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("dim: 1\n\n-1\n", encoding="utf-8")
    code, _, err = run(capsys, "molien", "--group", str(p), "--dmax", "2")
    assert code == 2 and "provenance" in err


def test_molien_dmax_bounds():
    with pytest.raises(SystemExit):
        main(["molien", "--group", "S3", "--dmax", "0"])


def test_toric(capsys):
    code, d = run_json(capsys, "toric", "V", "--n", "4")
    assert code == 0 and d["n"] == 4
    code, d = run_json(capsys, "toric", "projective", "--n", "2", "--fan-file")
    assert code == 0 and "fan" in d


def test_glnz(capsys):
    code, d = run_json(capsys, "glnz", "--n", "4", "--certificate", "--m-max", "5")
    assert code == 0 and d["CA=BC"] is True
    assert d["certificate"]["modulus"] == 5
    code, d = run_json(capsys, "glnz", "--n", "5")
    assert str(d["C^-1AC=B and C^-1SC=T"]).startswith("not applicable")


def test_perm(capsys):
    code, d = run_json(capsys, "perm", "--degree", "5", "--family", "dihedral")
    assert code == 0 and d["primitive"] is True and d["pair_orbit_statement"]["holds"]
    code, d = run_json(capsys, "perm", "--degree", "4", "--gens", "(1 2 3 4)")
    assert d["primitive"] is False and d["block_witness"]


def test_polyinv_check(capsys, s3_file, tmp_path):
    poly = tmp_path / "p.txt"
    poly.write_text("x1 x2 x3\n", encoding="utf-8")
    code, d = run_json(capsys, "polyinv", "check", "--poly", str(poly), "--group", str(s3_file))
    assert code == 0 and d["invariant"] is True
    poly.write_text("x1^2 x2\n", encoding="utf-8")
    code, d = run_json(capsys, "polyinv", "check", "--poly", str(poly), "--group", str(s3_file))
    assert code == 1 and d["failing_generator"] == 0


def test_polyinv_check_burkhardt(capsys, tmp_path):
    poly = tmp_path / "b.txt"
    poly.write_text("x1^4 + x1 x2^3 + x1 x3^3 + x1 x4^3 + x1 x5^3 + 3 * x2 x3 x4 x5\n", encoding="utf-8")
    code, d = run_json(capsys, "polyinv", "check", "--poly", str(poly),
                       "--group", str(PACKAGE_DATA / "burkhardt_generators.txt"))
    assert code == 0 and d["invariant"] is True


def test_toric_listing_polytope(capsys):
    code, d = run_json(capsys, "toric", "listing-polytope")
    assert code == 0 and d["points_listed"] == d["lattice_points"]
    assert str(d["face_fan"]).startswith("not defined")
