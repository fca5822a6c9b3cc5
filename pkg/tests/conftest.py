import random

import pytest

from arabidx.normalize import NormalizationConfig


@pytest.fixture
def cfg():
    return NormalizationConfig()


@pytest.fixture
def bare_cfg():
    """No stop words, so token counts are easy to reason about."""
    return NormalizationConfig(stopwords=frozenset())


@pytest.fixture
def rng():
    return random.Random(1234)


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome == "failed":
        _ACCEPTANCE[report.nodeid] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in sorted(_ACCEPTANCE.items(), key=lambda kv: kv[0].split("::")[-1]):
        terminalreporter.write_line(f"{outcome}  {nodeid.split('::')[-1]}")
