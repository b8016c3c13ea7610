import pytest

from gaitplan import InterpretationConfig, derive_body_geometry, plan_timeline, regress_gait_parameters

SPEEDS = (0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2)
HEIGHT = 1.71


@pytest.fixture
def sp12():
    return regress_gait_parameters(1.2)


@pytest.fixture
def bm12(sp12):
    return derive_body_geometry(HEIGHT, sp12.step_width)


@pytest.fixture
def tl12(sp12, bm12):
    return plan_timeline(sp12, bm12, InterpretationConfig())


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])
