import sys
import random

import pytest
from hypothesis import strategies as st

from fibergroup.words import free_reduce


@pytest.fixture
def rng():
    return random.Random(1234)


def words(rank, max_len=12):
    letter = st.tuples(st.integers(0, rank - 1), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_len).map(lambda ls: free_reduce(rank, ls))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
