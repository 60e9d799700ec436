import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# Acceptance bookkeeping: criterion number -> {part: passed}
_ACCEPTANCE: dict[int, dict[str, bool]] = {}


def record_criterion(n: int, part: str, ok: bool) -> None:
    _ACCEPTANCE.setdefault(n, {})[part] = ok
    print(f"criterion {n} [{part}]: {'PASS' if ok else 'FAIL'}")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[n]
        failed = [p for p, ok in parts.items() if not ok]
        line = f"criterion {n}: {'FAIL' if failed else 'PASS'}"
        if failed:
            line += f" (failing: {', '.join(failed)})"
        terminalreporter.write_line(line)
