import pytest

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
ACCEPTANCE_COUNT = 14


@pytest.fixture
def record(request):
    parts = request.node.name.split("_")
    if len(parts) > 2 and parts[1] == "criterion":
        ACCEPTANCE[int(parts[2])] = (False, "raised before recording a result")

    def _record(criterion: int, passed: bool, detail: str) -> bool:
        ACCEPTANCE[criterion] = (bool(passed), detail)
        return bool(passed)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in range(1, ACCEPTANCE_COUNT + 1):
        if k not in ACCEPTANCE:
            tr.write_line(f"criterion {k:2d}: NOT RUN")
            continue
        passed, detail = ACCEPTANCE[k]
        tr.write_line(f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
