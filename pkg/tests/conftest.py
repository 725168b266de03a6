"""Shared fixtures: project root on sys.path and the shipped benchmark systems"""

import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.automata.dfa import Dfa  # noqa: E402
from src.frontend.parser import parse_file, parse_script  # noqa: E402

BENCHMARKS = project_root / "benchmarks"


def load_benchmark(name: str):
    return parse_file(BENCHMARKS / f"{name}.smt2")


@pytest.fixture
def mu_system():
    return load_benchmark("mu_puzzle")


@pytest.fixture
def mu_unsafe_system():
    return load_benchmark("mu_unsafe")


@pytest.fixture
def eqdist_system():
    return load_benchmark("eqdist")


@pytest.fixture
def counter_system():
    return load_benchmark("counter")


def mod_three_invariant(system) -> Dfa:
    """Words whose number of I is not a multiple of three"""
    i = system.alphabet.index("I")
    rows = []
    for q in range(3):
        rows.append(tuple((q + 1) % 3 if k == i else q for k in range(len(system.alphabet))))
    return Dfa(3, system.alphabet, tuple(rows), 0, frozenset({1, 2}))


@pytest.fixture
def mu_invariant(mu_system):
    return mod_three_invariant(mu_system)


@pytest.fixture
def benchmark_paths():
    return sorted(BENCHMARKS.glob("*.smt2"))


@pytest.fixture
def parse():
    return parse_script
