import random
import re
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ietgroups.iet import Iet, random_iet, rotation

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def fig2() -> Iet:
    """Three intervals, the last one fixed."""
    return Iet([F(3, 10), F(1, 5), F(1, 2)], [2, 1, 3])


def rot(x) -> Iet:
    return rotation(F(x))


@st.composite
def iets(draw, max_n=5, cubic=None):
    n = draw(st.integers(1, max_n))
    use_cubic = draw(st.booleans()) if cubic is None else cubic
    seed = draw(st.integers(0, 2**32 - 1))
    return random_iet(random.Random(seed), n, cubic=use_cubic)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=50)


@pytest.fixture
def rng():
    return random.Random(20240607)


# -- acceptance report -------------------------------------------------------

_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or report.when not in ("setup", "call"):
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    number = int(re.match(r"test_criterion_(\d+)", name).group(1))
    entry = _ACCEPTANCE.setdefault(number, {"ok": True, "failed": []})
    if report.failed:
        entry["ok"] = False
        entry["failed"].append(name)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[number]
        status = "PASS" if entry["ok"] else "FAIL"
        detail = "" if entry["ok"] else "  (" + ", ".join(entry["failed"]) + ")"
        terminalreporter.write_line(f"criterion {number}: {status}{detail}")
