import numpy as np
import pytest

from besovlab import Grid, SampledFunction
from besovlab.experiments.generators import smooth_bump


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def g1():
    return Grid(1, 16, 6)


@pytest.fixture
def g2():
    return Grid(2, 4, 4)


def bump(grid, center=None, radius=0.5, height=1.0):
    center = (grid.W / 2,) * grid.d if center is None else center
    return SampledFunction(grid, smooth_bump(grid, center, radius, height))


_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line, echoed in the terminal summary."""
    lines = request.config.stash.setdefault(_VERDICTS, [])

    def record(number, ok, text):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
