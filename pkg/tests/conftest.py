import pytest

from symdg.construct import build_gamma, build_sigma

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def sigma():
    return build_sigma()


@pytest.fixture(scope="session")
def gamma_instances():
    return {s: build_gamma(s) for s in (2, 3, 4, 5)}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for marker in report.keywords:
        if marker.startswith("acceptance_criterion_"):
            number = int(marker.rsplit("_", 1)[1])
            status = "PASS" if report.passed else "FAIL"
            name = report.nodeid.split("::")[-1]
            ACCEPTANCE_RESULTS[number] = (status, name)


def pytest_configure(config):
    for k in range(1, 7):
        config.addinivalue_line("markers", f"acceptance_criterion_{k}: acceptance criterion {k}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, name = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {status} ({name})")
