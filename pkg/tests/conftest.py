from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from quotposet.partition import Partition  # noqa: E402
from quotposet.poset import Poset, from_covers  # noqa: E402

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=1500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run the extended n = 5 sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("QUOTPOSET_SLOW"):
        return
    skip = pytest.mark.skip(reason="extended run; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")


# ----------------------------------------------------------------- strategies


@st.composite
def posets(draw, max_n: int = 6, min_n: int = 0) -> Poset:
    """Random poset: random relation between naturally ordered points,
    transitively closed, then relabeled by a random permutation."""
    n = draw(st.integers(min_n, max_n))
    less = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            less[i][j] = draw(st.booleans())
    for k in range(n):
        for i in range(n):
            if less[i][k]:
                for j in range(n):
                    if less[k][j]:
                        less[i][j] = True
    perm = draw(st.permutations(range(n)))
    up = [0] * n
    for i in range(n):
        row = 1 << perm[i]
        for j in range(n):
            if less[i][j]:
                row |= 1 << perm[j]
        up[perm[i]] = row
    p = Poset(tuple(up), tuple(str(i) for i in range(n)))
    p.validate()
    return p


@st.composite
def partitions_of(draw, n: int) -> Partition:
    labels: list[int] = []
    top = -1
    for _ in range(n):
        x = draw(st.integers(0, top + 1))
        labels.append(x)
        top = max(top, x)
    return Partition.from_labels(labels)


@st.composite
def poset_and_partition(draw, max_n: int = 6, min_n: int = 0):
    p = draw(posets(max_n=max_n, min_n=min_n))
    return p, draw(partitions_of(p.n))


# ------------------------------------------------------------ named fixtures


@pytest.fixture
def chain3() -> Poset:
    return from_covers(3, [(0, 1), (1, 2)], ["p", "q", "r"])


@pytest.fixture
def two_chains() -> Poset:
    """``p < q`` and ``q' < r``: equating ``q`` and ``q'`` gives a
    non-transitive quotient relation."""
    return from_covers(4, [(0, 1), (2, 3)], ["p", "q", "q'", "r"])


@pytest.fixture
def ends_merged() -> Partition:
    return Partition.from_blocks(3, [[0, 2], [1]])


@pytest.fixture
def middle_merged() -> Partition:
    return Partition.from_blocks(4, [[0], [1, 2], [3]])


# ------------------------------------------------------- shared experiment runs


@pytest.fixture(scope="session")
def matrix4():
    from quotposet.experiment import verify_matrix

    return verify_matrix(4)


@pytest.fixture(scope="session")
def table4():
    from quotposet.experiment import table_checks

    return table_checks(4)
