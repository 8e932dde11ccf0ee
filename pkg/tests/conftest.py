import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: dict[int, tuple[str, bool, str, float]] = {}


@pytest.fixture(scope="session")
def acceptance():
    """Callable recording one outcome per acceptance criterion."""

    def record(number: int, title: str, passed: bool, detail: str, elapsed: float) -> None:
        _ACCEPTANCE[number] = (title, passed, detail, elapsed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, detail, elapsed = _ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:2d} {title}: {detail} ({elapsed:.1f}s)")
