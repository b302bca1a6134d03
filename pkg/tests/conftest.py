import pytest

from ismcentrality import load_fixture


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per criterion, then assert."""
    lines = request.config._acceptance_lines

    def check(label, ok, detail=""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        assert ok, f"{label}: {detail}"

    return check


@pytest.fixture(scope="session")
def kite():
    return load_fixture("kite")


@pytest.fixture(scope="session")
def chain10():
    return load_fixture("chain10")


@pytest.fixture(scope="session")
def example4():
    return load_fixture("example4")


@pytest.fixture(scope="session")
def dutch():
    return load_fixture("dutch32")
