from __future__ import annotations

import math
import random

import pytest

from finroot.abelian import FiniteAbelianGroup
from finroot.symplectic import Bicharacter


def random_bicharacter(rng: random.Random, max_size: int = 256, orders_pool=(2, 3, 4, 6, 8)) -> Bicharacter:
    """A random well-defined alternating bicharacter on a random small group."""
    while True:
        rank = rng.randint(1, 5)
        orders = [rng.choice(orders_pool) for _ in range(rank)]
        if math.prod(orders) <= max_size:
            break
    G = FiniteAbelianGroup(orders)
    N = G.exponent
    B = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            step = N // math.gcd(orders[i], orders[j])
            B[i][j] = rng.randrange(math.gcd(orders[i], orders[j])) * step % N
            B[j][i] = -B[i][j] % N
    return Bicharacter(G, B)


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance criteria report -------------------------------------------------

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(capsys):
    """Record and print one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> None:
        _CRITERIA[number] = (ok, detail)
        with capsys.disabled():
            print(f"\nCRITERION {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
