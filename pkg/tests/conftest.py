import pytest

from possnet import load, sample_path


@pytest.fixture(scope="session")
def table1():
    return load(sample_path("table1.pnet"))


@pytest.fixture(scope="session")
def table1_kbs():
    return load(sample_path("table1.pkb"))


@pytest.fixture(scope="session")
def table3():
    return load(sample_path("table3.pfnet"))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when != "call":
                continue
            props = dict(report.user_properties)
            if "criterion" in props:
                lines.append((props["criterion"], outcome.upper()[:4], props.get("title", "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for crit, status, title in sorted(lines):
            terminalreporter.write_line(f"{status} criterion {crit}: {title}")
