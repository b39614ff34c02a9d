import math

import numpy as np
import pytest

from axicurv import Profile, random_suite

SUITE_SIZE = 200
SEEDS = {"inner-convex": 11, "axiconvex": 22, "admissible": 33}

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def suites():
    return {kind: random_suite(kind, SUITE_SIZE, seed) for kind, seed in SEEDS.items()}


@pytest.fixture(scope="session")
def all_profiles(suites):
    return [p for kind in SEEDS for p in suites[kind]]


def polygon_profile():
    """Non-smooth axiconvex profile whose curve closes on the axis by symmetry."""
    # theta(L - s) = pi - theta(s) makes x(L) = 0
    s = np.array([0.0, 0.4, 1.0, 1.3, 1.7, 2.0, 2.6, 3.0])
    half = np.array([0.0, 1.0, 1.0, 1.2])
    return Profile(s, np.concatenate([half, math.pi - half[::-1]]))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda t: t[0]):
            terminalreporter.write_line(line[1])
