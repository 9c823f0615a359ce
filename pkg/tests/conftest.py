import pytest

_RESULTS: dict = {}


class Acceptance:
    """Collects one verdict per acceptance criterion for the terminal summary."""

    def record(self, number: int, title: str, ok: bool, detail: str = "") -> None:
        _RESULTS[number] = (title, ok, detail)

    @staticmethod
    def failures(check, seeds) -> list:
        """Run ``check(seed)`` over ``seeds`` and return ``(seed, message)`` per failure."""
        out = []
        for seed in seeds:
            try:
                check(seed)
            except AssertionError as exc:
                out.append((seed, str(exc)))
        return out


@pytest.fixture
def acceptance():
    return Acceptance()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, detail = _RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")
