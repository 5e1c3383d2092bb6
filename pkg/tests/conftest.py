import pytest

from eitengine import derive_rates, reference_params, populations


@pytest.fixture
def ref():
    return reference_params()


@pytest.fixture
def ref_rates(ref):
    return derive_rates(ref)


@pytest.fixture
def ref_steady(ref, ref_rates):
    return populations(ref_rates, ref.drive, ref.system)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
