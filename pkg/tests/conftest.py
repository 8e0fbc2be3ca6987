import itertools
from fractions import Fraction

import pytest

from omegastar.chaindyn import FiniteSystem, unit_metric

LABELS = "abcdefghijklmnop"

_acceptance_lines: list = []


def cycle(n: int, prefix: str = "x", metric: bool = False) -> FiniteSystem:
    states = tuple(f"{prefix}{i}" for i in range(n))
    return FiniteSystem(states, {states[i]: states[(i + 1) % n] for i in range(n)},
                        unit_metric(n) if metric else None)


def all_systems(n: int, metric=None):
    """Every total map on the first n labels, in lexicographic order of image tuples."""
    states = tuple(LABELS[:n])
    for images in itertools.product(states, repeat=n):
        yield FiniteSystem(states, dict(zip(states, images)), metric)


def line_metric(n: int) -> tuple:
    return tuple(tuple(Fraction(abs(i - j)) for j in range(n)) for i in range(n))


@pytest.fixture
def record_acceptance():
    def record(number: int, ok: bool, detail: str) -> None:
        _acceptance_lines.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
