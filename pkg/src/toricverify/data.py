"""Versioned data assets with digests and mandatory provenance.

A data directory holds a ``MANIFEST`` with lines ``<sha256>  <file name>``.
Every asset must also carry a ``provenance:`` line.  Missing assets are
reported as absent; assets that are present but unlisted, unattributed or
whose digest does not match are refused.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

DATA_VERSION = "1"
PACKAGE_DATA = Path(__file__).with_name("data")


class DataAssetError(ValueError):
    """An asset exists but cannot be trusted."""


@dataclass(frozen=True)
class Asset:
    name: str
    path: Path
    sha256: str
    provenance: str
    text: str


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def read_manifest(data_dir) -> dict[str, str]:
    path = Path(data_dir) / "MANIFEST"
    if not path.exists():
        return {}
    out = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        digest, _, name = line.partition("  ")
        if not name:
            raise DataAssetError(f"malformed manifest line {line!r}")
        out[name.strip()] = digest.strip()
    return out


def provenance_of(text: str) -> str | None:
    for line in text.splitlines():
        key, sep, val = line.partition(":")
        if sep and key.strip().lstrip("#").strip() == "provenance" and val.strip():
            return val.strip()
    return None


def resolve_data_dir(data_dir=None) -> Path:
    return Path(data_dir) if data_dir is not None else PACKAGE_DATA


def load_asset(name: str, data_dir=None) -> Asset | None:
    """The verified asset, or None when it is absent from the directory."""
    root = resolve_data_dir(data_dir)
    path = root / name
    if not path.exists():
        return None
    manifest = read_manifest(root)
    if name not in manifest:
        raise DataAssetError(f"{name} is not listed in {root / 'MANIFEST'}")
    digest = sha256_file(path)
    if digest != manifest[name]:
        raise DataAssetError(f"{name}: digest {digest[:12]} does not match the manifest")
    text = path.read_text(encoding="utf-8")
    prov = provenance_of(text)
    if prov is None:
        raise DataAssetError(f"{name} has no provenance line")
    return Asset(name, path, digest, prov, text)


def write_manifest(data_dir) -> str:
    """Regenerate MANIFEST from the files present (maintenance helper)."""
    root = Path(data_dir)
    lines = [f"# data version {DATA_VERSION}"]
    for p in sorted(root.iterdir()):
        if p.name == "MANIFEST" or p.name.startswith(".") or not p.is_file():
            continue
        lines.append(f"{sha256_file(p)}  {p.name}")
    text = "\n".join(lines) + "\n"
    (root / "MANIFEST").write_text(text, encoding="utf-8")
    return text
