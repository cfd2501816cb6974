import sys
from pathlib import Path

import pytest

from spatialvote import spatial
from spatialvote.demo import demo_profile

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def demo():
    profile, _ = demo_profile()
    return profile


@pytest.fixture(scope="session")
def fixture_rows():
    return spatial.load_weights(spatial.fixture_weights_path())


@pytest.fixture(scope="session")
def balanced_bimodal(fixture_rows):
    return spatial.find_weights(fixture_rows, "balanced", "bimodal")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, ok in RESULTS:
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}")
