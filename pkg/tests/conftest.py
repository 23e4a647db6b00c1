import pytest

from biint.corpus import data_dir, load_derivation

COUNTEREXAMPLE = "p |- q, r -> ((p -< q) & r)"


def shipped(name):
    return load_derivation(data_dir() / f"{name}.deriv")[1]


@pytest.fixture
def cut_standard():
    return shipped("cut-standard")


@pytest.fixture
def unnest_nested():
    return shipped("unnest-nested")


@pytest.fixture
def monot_labelled():
    return shipped("monot-labelled")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, _ in test_acceptance.CRITERIA:
        if label in test_acceptance.RESULTS:
            ok, detail = test_acceptance.RESULTS[label]
            terminalreporter.write_line(test_acceptance.report_line(label, ok, detail))
