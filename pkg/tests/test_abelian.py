from __future__ import annotations

import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from finroot.abelian import (
    FiniteAbelianGroup,
    GroupHom,
    NotAHomomorphism,
    NotASubgroup,
    element_order,
    invariant_factors,
    kernel_mod,
    quotient,
    smith_normal_form,
    solve_congruences,
    subgroup_generated,
)

small_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_snf_factorization(A):
    D, U, V, Ui = smith_normal_form(A)
    assert _matmul(_matmul(U, A), V) == D
    n = len(A)
    assert _matmul(U, Ui) == [[int(i == j) for j in range(n)] for i in range(n)]
    diag = [D[i][i] for i in range(min(len(A), len(A[0])))]
    assert all(d >= 0 for d in diag)
    for x, y in zip(diag, diag[1:]):
        assert y % x == 0 if x else y == 0
    assert all(D[i][j] == 0 for i in range(len(A)) for j in range(len(A[0])) if i != j)


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_snf_matches_sympy(A):
    D = smith_normal_form(A)[0]
    ours = [D[i][i] for i in range(min(len(A), len(A[0]))) if D[i][i]]
    theirs = [abs(int(x)) for x in sympy_invariant_factors(sympy.Matrix(A)) if x]
    assert ours == theirs


def test_invariant_factors():
    assert invariant_factors([4, 2, 6]) == [2, 2, 12]
    assert invariant_factors([2, 3]) == [6]
    assert invariant_factors([2, 2, 2]) == [2, 2, 2]
    assert FiniteAbelianGroup([6, 4]).invariant_factors == [2, 12]


def test_element_indexing_round_trip():
    G = FiniteAbelianGroup([3, 4, 2])
    elems = G.elements()
    assert len(elems) == G.size == 24
    assert elems == sorted(elems)
    for i, a in enumerate(elems):
        assert G.index(a) == i
        assert G.from_index(i) == a


def test_group_arithmetic():
    G = FiniteAbelianGroup([4, 6])
    a, b = (3, 5), (2, 4)
    assert G.add(a, b) == (1, 3)
    assert G.neg(a) == (1, 1)
    assert G.add(a, G.neg(a)) == G.zero
    assert G.scale(4, a) == (0, 2)
    assert element_order(G, a) == 12
    assert element_order(G, G.zero) == 1
    assert G.element((7, -1)) == (3, 5)


def test_subgroup_generated():
    G = FiniteAbelianGroup([4, 2])
    assert subgroup_generated(G, [(2, 0)]) == {(0, 0), (2, 0)}
    assert len(subgroup_generated(G, [(1, 1)])) == 4
    assert len(subgroup_generated(G, [(1, 0), (0, 1)])) == 8


def test_kernel_mod_and_congruences():
    A = [[2, 4], [0, 3]]
    N = 6
    lattice = kernel_mod(A, N)
    G = FiniteAbelianGroup([N, N])
    brute = {x for x in G.elements() if all(sum(r[j] * x[j] for j in range(2)) % N == 0 for r in A)}
    assert subgroup_generated(G, [G.element(v) for v in lattice]) == brute
    x = solve_congruences([[1, 1], [1, -1]], [3, 1], 4)
    assert x is not None and (x[0] + x[1]) % 4 == 3 and (x[0] - x[1]) % 4 == 1
    assert solve_congruences([[2]], [1], 4) is None


def test_hom_validation():
    G = FiniteAbelianGroup([4, 2])
    with pytest.raises(NotAHomomorphism):
        GroupHom(G, G, [[0, 1], [1, 0]])  # generator of order 2 cannot map onto an order-4 element
    swap = GroupHom(FiniteAbelianGroup([2, 2]), FiniteAbelianGroup([2, 2]), [[0, 1], [1, 0]])
    assert swap.is_bijective()
    assert swap.compose(swap) == GroupHom.identity(FiniteAbelianGroup([2, 2]))


def test_quotient_drops_coordinate():
    G = FiniteAbelianGroup([2] * 5)
    e5 = G.basis()[4]
    Q = quotient(G, {G.zero, e5})
    assert Q.group.orders == (2, 2, 2, 2)
    for a in G.elements():
        assert Q.projection(a) == Q.projection(G.add(a, e5))
    assert len({Q.projection(a) for a in G.elements()}) == 16
    for i, x in enumerate(Q.lifts):
        assert Q.projection(x) == Q.group.basis()[i]


def test_quotient_cyclic():
    G = FiniteAbelianGroup([4])
    Q = quotient(G, {(0,), (2,)})
    assert Q.group.orders == (2,)
    assert [Q.projection(a) for a in G.elements()] == [(0,), (1,), (0,), (1,)]
    with pytest.raises(NotASubgroup):
        quotient(G, {(0,), (1,)})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=3), st.data())
def test_quotient_properties(orders, data):
    G = FiniteAbelianGroup(orders)
    gens = data.draw(st.lists(st.sampled_from(G.elements()), max_size=2))
    H = subgroup_generated(G, gens)
    Q = quotient(G, H)
    assert Q.group.size * len(H) == G.size
    fibres = {}
    for a in G.elements():
        fibres.setdefault(Q.projection(a), set()).add(a)
    assert len(fibres) == Q.group.size
    assert fibres[Q.group.zero] == set(H)
    for a, b in itertools.product(G.elements()[:6], repeat=2):
        assert Q.projection(G.add(a, b)) == Q.group.add(Q.projection(a), Q.projection(b))
