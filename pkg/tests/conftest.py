import pytest

from incidence_lab.ff import PrimeField

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F101():
    return PrimeField(101)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body sets ``detail`` and asserts."""
    entry = {"name": request.node.name, "detail": ""}
    yield entry
    failed = getattr(request.node, "_failed", False)
    _ACCEPTANCE.append((entry["name"], not failed, entry["detail"]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and rep.failed:
        item._failed = True


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
