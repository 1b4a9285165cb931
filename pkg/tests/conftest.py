import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        status = "PASS" if report.passed else "FAIL"
        _ACCEPTANCE.append(f"criterion {props['criterion']}: {status}  {props.get('detail', '')}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(record_property):
    """Register an acceptance test: ``criterion(n)`` then ``criterion.detail(text)``."""

    class _Rec:
        def __call__(self, n):
            record_property("criterion", n)
            return self

        def detail(self, text):
            record_property("detail", text)
            print(text)

    return _Rec()
