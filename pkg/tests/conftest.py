from __future__ import annotations

from fractions import Fraction

import pytest

from bvbfv.grassmann import Generator
from bvbfv.lie import make_builtin


@pytest.fixture(scope="session")
def su2():
    return make_builtin("su2")


def canonical_pairs(k: int) -> tuple[list[Generator], list[tuple[Generator, Generator, int]]]:
    """Five canonical pairs (x_i, y_i) covering all parity combinations for a degree-k bracket."""
    gens: list[Generator] = []
    pairing = []
    for i, (form, gh) in enumerate([(0, 0), (0, 1), (1, 0), (1, 1), (0, 2)]):
        x = Generator(f"x{i}", form, gh, order=(0, i))
        y = Generator(f"y{i}", form, gh + k, order=(1, i))
        gens += [x, y]
        pairing.append((x, y, 1))
    return gens, pairing


HALF = Fraction(1, 2)


# criterion number -> summary line, filled by test_acceptance.py
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(ACCEPTANCE[key])
