import sys
from pathlib import Path

import pytest

from syncword.automaton import Automaton, parse_fa

HELPERS = Path(__file__).parent / "helpers"

# Three-state example: a cycles 1->2->3->1, b maps 3 to 1 and fixes the
# rest; shortest synchronizing sequence is baab (length 4).
A1_TEXT = "3 2\n2 1\n3 2\n1 1\n"


@pytest.fixture
def a1() -> Automaton:
    return parse_fa(A1_TEXT)


@pytest.fixture
def swap() -> Automaton:
    # Single symbol permuting two states: never synchronizable.
    return parse_fa("2 1\n2\n1\n")


@pytest.fixture
def one_state() -> Automaton:
    return parse_fa("1 1\n1\n")


@pytest.fixture
def fake_sat_cmd() -> str:
    return f"{sys.executable} {HELPERS / 'fake_sat_solver.py'} {{file}}"


@pytest.fixture
def fake_asp_cmd() -> str:
    return f"{sys.executable} {HELPERS / 'fake_asp_solver.py'} {{file}}"
