from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_bicharacter
from finroot.abelian import FiniteAbelianGroup, GroupHom, NotAHomomorphism
from finroot.cyclotomic import zeta
from finroot.symplectic import (
    Bicharacter,
    Cocycle,
    InvalidForm,
    is_isometry,
    is_nonsingular,
    is_square,
    orthogonal_sum,
    polarize,
    pullback,
    radical,
    radical_bruteforce,
    split,
)
from finroot.rootsystem import transvection


def pauli_pairs(k: int) -> Bicharacter:
    """(-1)^(sum a_{2i} b_{2i-1} - a_{2i-1} b_{2i}) on Z_2^{2k}."""
    G = FiniteAbelianGroup([2] * (2 * k))
    C = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        C[2 * i + 1][2 * i] = 1
    return polarize(Cocycle(G, C))


def test_rejects_bad_matrices():
    G = FiniteAbelianGroup([4, 2])
    with pytest.raises(InvalidForm):
        Bicharacter(G, [[0, 1], [1, 0]])  # not skew mod 4
    with pytest.raises(InvalidForm):
        Bicharacter(G, [[1, 0], [0, 0]])  # nonzero diagonal
    with pytest.raises(InvalidForm):
        Bicharacter(G, [[0, 1], [3, 0]])  # zeta_4 is not defined on an order-2 coordinate


def test_symmetric_cocycle_gives_trivial_form():
    G = FiniteAbelianGroup([3, 3])
    assert polarize(Cocycle(G, [[1, 2], [2, 0]])).is_trivial()
    assert all(c == 0 for row in split(Bicharacter(G, [[0, 0], [0, 0]])).matrix for c in row)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_clock_shift_form(n):
    G = FiniteAbelianGroup([n, n])
    xi = Cocycle(G, [[0, 0], [1, 0]])
    beta = polarize(xi)
    for (i, j), (s, t) in itertools.product(G.elements(), repeat=2):
        assert xi.value((i, j), (s, t)) == zeta(n, j * s)
        assert beta.value((i, j), (s, t)) == zeta(n, j * s - i * t)
    assert split(beta).matrix == xi.matrix
    assert is_nonsingular(beta)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pauli_pairs_split(k):
    beta = pauli_pairs(k)
    xi = split(beta)
    assert polarize(xi) == beta
    G = beta.group
    for a, b in itertools.product(G.elements(), repeat=2):
        sign = sum(a[2 * i + 1] * b[2 * i] + a[2 * i] * b[2 * i + 1] for i in range(k)) % 2
        assert beta.exp(a, b) == sign
    assert is_nonsingular(beta)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_all_ones_radical(n):
    G = FiniteAbelianGroup([2] * n)
    B = [[int(i != j) for j in range(n)] for i in range(n)]
    assert radical(Bicharacter(G, B)) == {G.zero, (1,) * n}


@pytest.mark.parametrize("k", [1, 2])
def test_radical_of_padded_form(k):
    beta = pauli_pairs(k)
    padded = orthogonal_sum([beta, Bicharacter(FiniteAbelianGroup([2]), [[0]])])
    e_last = (0,) * (2 * k) + (1,)
    assert radical(padded) == {padded.group.zero, e_last}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_radical_and_square_index(seed):
    beta = random_bicharacter(random.Random(seed))
    rad = radical(beta)
    assert rad == radical_bruteforce(beta)
    assert is_square(beta.group.size // len(rad))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_cocycle_identity(seed):
    rng = random.Random(seed)
    beta = random_bicharacter(rng)
    xi = split(beta)
    G = xi.group
    assert polarize(xi) == beta
    elems = G.elements()
    for _ in range(20):
        a, b, c = (rng.choice(elems) for _ in range(3))
        lhs = xi.exp(a, b) + xi.exp(G.add(a, b), c)
        rhs = xi.exp(a, G.add(b, c)) + xi.exp(b, c)
        assert (lhs - rhs) % G.exponent == 0
        assert beta.exp(a, a) == 0
        assert (beta.exp(a, b) + beta.exp(b, a)) % G.exponent == 0


def test_coprime_components_pair_trivially():
    # Z_2 x Z_3 admits no nontrivial alternating form between the two factors
    G = FiniteAbelianGroup([2, 3])
    with pytest.raises(InvalidForm):
        Bicharacter(G, [[0, 1], [-1, 0]])
    assert radical(Bicharacter(G, [[0, 0], [0, 0]])) == frozenset(G.elements())


def test_isometries():
    G = FiniteAbelianGroup([2, 2])
    beta = Bicharacter(G, [[0, 1], [1, 0]])
    assert is_isometry(GroupHom.identity(G), beta)
    assert is_isometry(GroupHom(G, G, [[0, 1], [1, 0]]), beta)
    for a in G.elements():
        if a != G.zero:
            assert is_isometry(transvection(a, beta), beta)
    assert transvection((1, 0), beta)((0, 1)) == (1, 1)
    assert not is_isometry(GroupHom(G, G, [[1, 1], [0, 0]]), beta)


def test_swap_on_mixed_orders_is_rejected():
    G = FiniteAbelianGroup([4, 2])
    with pytest.raises(NotAHomomorphism):
        GroupHom(G, G, [[0, 1], [1, 0]])
    beta = Bicharacter(G, [[0, 2], [2, 0]])
    assert not is_isometry(GroupHom(G, G, [[1, 0], [0, 0]]), beta)
    assert is_isometry(GroupHom(G, G, [[1, 0], [1, 1]]), beta)


def test_pullback_along_isomorphism():
    G = FiniteAbelianGroup([3, 3])
    beta = Bicharacter(G, [[0, 1], [2, 0]])
    phi = GroupHom(G, G, [[1, 1], [0, 1]])
    back = pullback(beta, phi)
    for a, b in itertools.product(G.elements(), repeat=2):
        assert back.exp(a, b) == beta.exp(phi(a), phi(b))
