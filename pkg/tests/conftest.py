import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hassecheck.construct import PrimeTuple, build_surfaces  # noqa: E402
from hassecheck.quadfield import QuadField  # noqa: E402

EXAMPLE = (17, 13, 53, 41, 3, 13)


@pytest.fixture(scope="session")
def Li():
    return QuadField(-1)


@pytest.fixture(scope="session")
def example_tuple(Li):
    return PrimeTuple(*EXAMPLE, field=Li)


@pytest.fixture(scope="session")
def hasse_family(example_tuple):
    return build_surfaces(example_tuple)


@pytest.fixture(scope="session")
def hasse_branch(hasse_family):
    """All four chart eliminations, computed once per session (about 15 s)."""
    from hassecheck.branch import run_branch

    start = time.perf_counter()
    report = run_branch(hasse_family)
    report.elapsed = time.perf_counter() - start
    return report


# Acceptance criteria record their verdicts here; the summary hook prints them.
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        ACCEPTANCE[number] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, verdict = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {verdict}: {title}")


@pytest.fixture(scope="session")
def wa_family():
    from hassecheck.construct import build_wa_surface

    return build_wa_surface()
