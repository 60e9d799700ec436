import json
import shutil

import pytest

from toricverify.data import PACKAGE_DATA, DataAssetError, load_asset, read_manifest, sha256_file, write_manifest
from toricverify.report import FAIL, PASS, PASS_WITH_SKIPS, SKIP, Check, VerificationReport, emit
from toricverify.suites import run_suite


def _copy_data(tmp_path):
    d = tmp_path / "data"
    shutil.copytree(PACKAGE_DATA, d, ignore=shutil.ignore_patterns("__pycache__", "*.py"))
    return d


def test_bundled_manifest_matches():
    manifest = read_manifest(PACKAGE_DATA)
    assert manifest
    for name, digest in manifest.items():
        assert sha256_file(PACKAGE_DATA / name) == digest
        asset = load_asset(name)
        assert asset.provenance


def test_tampered_asset_refused(tmp_path):
    d = _copy_data(tmp_path)
    p = d / "we7_sign.trace"
    p.write_text(p.read_text(encoding="utf-8") + "\n", encoding="utf-8")
    with pytest.raises(DataAssetError, match="digest"):
        load_asset("we7_sign.trace", d)


def test_unlisted_asset_refused(tmp_path):
    d = _copy_data(tmp_path)
    (d / "extra.trace").write_text("provenance: test\n", encoding="utf-8")
    with pytest.raises(DataAssetError, match="not listed"):
        load_asset("extra.trace", d)


def test_unattributed_asset_refused(tmp_path):
    d = tmp_path / "data"
    d.mkdir()
    (d / "x.trace").write_text("order: 1\n", encoding="utf-8")
    write_manifest(d)
    with pytest.raises(DataAssetError, match="provenance"):
        load_asset("x.trace", d)


def test_missing_asset_is_none(tmp_path):
    assert load_asset("we7_sign.trace", tmp_path) is None


def test_write_manifest_reproduces_bundled(tmp_path):
    d = _copy_data(tmp_path)
    (d / "MANIFEST").unlink()
    assert write_manifest(d) == (PACKAGE_DATA / "MANIFEST").read_text(encoding="utf-8")


def _report():
    return VerificationReport("demo", [
        Check("b", "second | claim", "derived", "1", "1", PASS, detail="note"),
        Check("a", "first", "stated", "x", "y", SKIP),
    ], data_digests={"f": "00"})


def test_verdict_rules():
    assert _report().verdict == PASS_WITH_SKIPS
    assert VerificationReport("e", []).verdict == FAIL
    r = _report()
    r.checks.append(Check("c", "bad", "control", "0", "1", FAIL))
    assert r.verdict == FAIL and not r.ok()


def test_json_round_trip():
    r = _report()
    d = json.loads(emit(r, "json"))
    assert [c["id"] for c in d["checks"]] == ["a", "b"]
    assert "runtime" not in d["checks"][0]
    back = VerificationReport.from_dict(d)
    assert back.to_dict() == r.to_dict()


def test_from_dict_rejects_wrong_verdict():
    d = _report().to_dict()
    d["verdict"] = PASS
    with pytest.raises(ValueError):
        VerificationReport.from_dict(d)


def test_markdown_rows_and_escaping():
    md = emit(_report(), "markdown")
    rows = [ln for ln in md.splitlines() if ln.startswith("| ") and not ln.startswith("| id")]
    assert len(rows) == 2
    assert "second \\| claim" in md
    assert "- `b`: note" in md
    with pytest.raises(ValueError):
        emit(_report(), "xml")


def test_suite_output_is_deterministic():
    a = emit(run_suite("permlemmas"), "json")
    b = emit(run_suite("permlemmas"), "json")
    c = emit(run_suite("permlemmas", jobs=2), "json")
    assert a == b == c


def test_data_suite_skips_without_assets(tmp_path):
    rep = run_suite("molien-s5s6", data_dir=tmp_path)
    skipped = [c for c in rep.checks if c.verdict == SKIP]
    assert skipped and all(c.verdict in (PASS, SKIP) for c in rep.checks)
    assert rep.verdict == PASS_WITH_SKIPS and rep.ok()
    assert rep.data_digests == {}


def test_data_suite_records_digests():
    rep = run_suite("molien-s5s6")
    assert rep.verdict == PASS
    assert rep.data_digests == {k: v for k, v in read_manifest(PACKAGE_DATA).items() if k in rep.data_digests}
    assert "we7_sign.trace" in rep.data_digests


def test_tampered_data_dir_raises(tmp_path):
    d = _copy_data(tmp_path)
    p = d / "psl2_13_7dim.trace"
    p.write_text(p.read_text(encoding="utf-8").replace("order:", "order: ", 1), encoding="utf-8")
    with pytest.raises(DataAssetError):
        run_suite("molien-s5s6", data_dir=d)
