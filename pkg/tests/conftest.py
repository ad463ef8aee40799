import random
import re

import pytest

from hasse_witt.curve import normalize
from hasse_witt.exceptions import HasseWittError

GOLDEN_F = [23, 19, 17, 13, 11, 7, 5, 3, 2]
GOLDEN_W = [[9, 37, 54], [70, 62, 16], [61, 4, 26]]


def random_curve(rng, genus, bound=50, c=None):
    """Random squarefree f of genus ``genus`` with coefficients in [-bound, bound]."""
    while True:
        d = rng.choice((2 * genus + 1, 2 * genus + 2))
        f = [rng.randint(-bound, bound) for _ in range(d + 1)]
        if f[-1] == 0:
            continue
        if c == 1 or (c is None and rng.random() < 0.2):
            f[0] = 0
        try:
            return normalize(f)
        except HasseWittError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def golden():
    return normalize(GOLDEN_F)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in criterion order."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_acceptance\.py::test_(\d+)_", rep.nodeid)
            if not m or rep.when != "call" and rep.passed:
                continue
            props = dict(getattr(rep, "user_properties", ()))
            status = "PASS" if rep.passed else "FAIL"
            n = int(m.group(1))
            lines.append((n, "criterion %2d %s  %s" % (n, status, props.get("detail", ""))))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
