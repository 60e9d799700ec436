"""Verification reports and their JSON / markdown renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import __version__

PASS, FAIL, SKIP = "pass", "fail", "skipped"
PASS_WITH_SKIPS = "pass-with-skips"


@dataclass
class Check:
    id: str
    claim: str
    basis: str  # "stated": value asserted by the source; "derived": independent computation; "control"
    expected: str
    computed: str
    verdict: str
    detail: str = ""
    data_dependent: bool = False
    runtime: float | None = None


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check]
    version: str = __version__
    data_digests: dict[str, str] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        verdicts = {c.verdict for c in self.checks}
        if FAIL in verdicts or not self.checks:
            return FAIL
        if SKIP in verdicts:
            return PASS_WITH_SKIPS
        return PASS

    def ok(self) -> bool:
        return self.verdict in (PASS, PASS_WITH_SKIPS)

    def to_dict(self, timings: bool = False) -> dict:
        checks = []
        for c in sorted(self.checks, key=lambda c: c.id):
            d = asdict(c)
            if not timings:
                d.pop("runtime")
            checks.append(d)
        return {
            "suite": self.suite,
            "version": self.version,
            "verdict": self.verdict,
            "data_digests": dict(sorted(self.data_digests.items())),
            "checks": checks,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        checks = [Check(**c) for c in d["checks"]]
        rep = cls(d["suite"], checks, d["version"], dict(d.get("data_digests", {})))
        if rep.verdict != d["verdict"]:
            raise ValueError("stored verdict disagrees with the checks")
        return rep


def emit(report: VerificationReport, fmt: str = "json", timings: bool = False) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(timings), indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    if fmt == "markdown":
        return _markdown(report, timings)
    raise ValueError(f"unknown format {fmt!r}")


def _cell(s: str) -> str:
    return str(s).replace("|", "\\|").replace("\n", " ")


def _markdown(report: VerificationReport, timings: bool) -> str:
    lines = [
        f"# Suite `{report.suite}`",
        "",
        f"- toolkit version: {report.version}",
        f"- verdict: **{report.verdict}**",
    ]
    if report.data_digests:
        for name, digest in sorted(report.data_digests.items()):
            lines.append(f"- data `{name}`: sha256 {digest}")
    else:
        lines.append("- data: none used")
    lines.append("")
    head = "| id | claim | basis | expected | computed | verdict |"
    rule = "|---|---|---|---|---|---|"
    if timings:
        head += " seconds |"
        rule += "---|"
    lines += [head, rule]
    for c in sorted(report.checks, key=lambda c: c.id):
        row = f"| {c.id} | {_cell(c.claim)} | {c.basis} | {_cell(c.expected)} | {_cell(c.computed)} | {c.verdict} |"
        if timings:
            row += f" {c.runtime:.2f} |" if c.runtime is not None else " |"
        lines.append(row)
    notes = [c for c in sorted(report.checks, key=lambda c: c.id) if c.detail]
    if notes:
        lines += ["", "## Notes", ""]
        lines += [f"- `{c.id}`: {c.detail}" for c in notes]
    return "\n".join(lines) + "\n"
