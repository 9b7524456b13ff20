import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def surfaces():
    from quarticlines.verify import _load
    return {
        "schur": _load("schur", (13, 1)),
        "example60": _load("example60", (19, 1)),
        "z_member": _load("z_member"),
        "z_member_i2": _load("z_member_i2"),
    }


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
