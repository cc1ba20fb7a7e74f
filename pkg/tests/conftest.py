import pytest

import ocexec

# (criterion, True/False, or None when skipped, detail)
ACCEPTANCE_RESULTS: list[tuple[str, bool | None, str]] = []


@pytest.fixture
def fig2_bytes():
    return ocexec.fixture_bytes()


@pytest.fixture
def fig2(fig2_bytes):
    return ocexec.parse_log(fig2_bytes)


@pytest.fixture
def fig2_components(fig2):
    return ocexec.extract_components(fig2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  {detail}")
