"""Shared fixtures for the convopoly test suite."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from cli.commands import main as cli_main
from convopoly.cycles import CornerVector
from convopoly.debruijn import build_debruijn, build_double_debruijn
from convopoly.hull import Polytope

GOLDEN_DIR = Path(__file__).parent / "golden"

# Corner list of the d = 2 difference polytope, in coordinate order
D2_CORNERS = [
    (Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(0)),
    (Fraction(1), Fraction(1)),
]

# One candidate per simple cycle of G for d = 2, in enumeration order
D2_CANDIDATES = [
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(1)),
    (Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(0)),
    (Fraction(1, 3), Fraction(1, 3)),
    (Fraction(1, 4), Fraction(0)),
]


@pytest.fixture
def g1():
    return build_debruijn(1)


@pytest.fixture
def g2():
    return build_debruijn(2)


@pytest.fixture
def g3():
    return build_debruijn(3)


@pytest.fixture
def gg1():
    return build_double_debruijn(1)


@pytest.fixture
def gg2():
    return build_double_debruijn(2)


@pytest.fixture
def h2():
    """The d = 2 difference polytope built from its four corners."""
    return Polytope(2, tuple(CornerVector.from_fractions(c) for c in D2_CORNERS))


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""

    def run(argv):
        code = cli_main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def load_golden():
    def load(name: str):
        with open(GOLDEN_DIR / name, "r") as f:
            return json.load(f)

    return load
