from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finroot import catalog
from finroot.abelian import FiniteAbelianGroup, GroupHom
from finroot.rootsystem import (
    BudgetExceeded,
    CapExceeded,
    NotInRadical,
    RootSystem,
    components,
    direct_sum,
    find_isomorphism,
    is_irreducible,
    is_isomorphism,
    quotient_system,
    reduce,
    transvection,
    verify,
    weyl_group,
)
from finroot.symplectic import Bicharacter, is_isometry


def full_system(beta: Bicharacter) -> RootSystem:
    G = beta.group
    return RootSystem(G, beta, [a for a in G.elements() if a != G.zero])


def remove(R: RootSystem, a) -> RootSystem:
    return RootSystem(R.group, R.beta, R.roots - {a})


def test_complement_of_zero_is_a_root_system():
    for n in (2, 3, 5):
        G = FiniteAbelianGroup([n, n])
        assert verify(full_system(Bicharacter(G, [[0, 1], [-1, 0]]))).ok


def test_quadric_systems_verify():
    for k in (3, 4):
        assert verify(catalog.make("V", k)).ok
        assert verify(catalog.make("III", k)).ok


def test_removing_a_root_gives_witness():
    R = catalog.make("V", 3)
    a = R.root_list[5]
    report = verify(remove(R, a))
    assert not report.ok
    bad = report.failures()[0]
    assert bad.name == "FRS2:closure"
    x, y = map(tuple, bad.witness)
    assert R.beta.exp(x, y) and R.group.add(x, y) == a


def test_negation_failure_in_odd_order():
    R = catalog.make("I", 3)
    a = (0, 1)
    report = verify(remove(R, a))
    names = {c.name for c in report.failures()}
    assert "FRS1:negation" in names
    neg = next(c for c in report.failures() if c.name == "FRS1:negation")
    assert tuple(neg.witness) == R.group.neg(a)


def test_radical_and_generation_failures():
    G = FiniteAbelianGroup([2, 2])
    trivial = Bicharacter(G, [[0, 0], [0, 0]])
    report = verify(RootSystem(G, trivial, [(1, 0)]))
    names = {c.name for c in report.failures()}
    assert names == {"FRS0:avoids-radical", "FRS0:generates"}


def test_transvection_basics():
    G = FiniteAbelianGroup([2, 2])
    beta = Bicharacter(G, [[0, 1], [1, 0]])
    s = transvection((1, 0), beta)
    assert s((0, 1)) == (1, 1)
    assert s((1, 0)) == (1, 0)
    G3 = FiniteAbelianGroup([3, 3])
    beta3 = Bicharacter(G3, [[0, 1], [2, 0]])
    for a, b in itertools.product(G3.elements(), repeat=2):
        if a == G3.zero:
            continue
        sa = transvection(a, beta3)
        assert sa(a) == a
        if beta3.exp(a, b) == 0:
            assert sa(b) == b


@pytest.mark.parametrize("tag", ["I:3", "I:4", "II:2", "III:2", "V:3"])
def test_transvections_preserve_roots(tag):
    R = catalog.make_tag(tag)
    for a in R.root_list:
        s = transvection(a, R.beta)
        assert is_isometry(s, R.beta)
        assert {s(b) for b in R.roots} == R.roots


@pytest.mark.parametrize("tag,order", [("I:2", 6), ("I:3", 24), ("I:4", 48), ("II:2", 120), ("III:2", 120)])
def test_weyl_orders_small(tag, order):
    R = catalog.make_tag(tag)
    W = weyl_group(R)
    assert W.order == order
    for w in W.elements()[:50]:
        assert is_isometry(w, R.beta)
        assert {w(a) for a in R.roots} == R.roots


def test_weyl_group_is_closed():
    W = weyl_group(catalog.make("I", 3))
    perms = {p.tobytes() for p in W.permutations}
    for p in W.permutations:
        for q in W.permutations[:10]:
            assert p[q].tobytes() in perms


def test_weyl_cap_and_resume():
    R = catalog.make("II", 2)
    with pytest.raises(CapExceeded) as info:
        weyl_group(R, cap=30)
    W = weyl_group(R, resume=info.value.state)
    full = weyl_group(R)
    assert W.order == 120
    assert np.array_equal(W.permutations, full.permutations)


def test_weyl_group_deterministic():
    a = weyl_group(catalog.make("I", (2, 2)))
    b = weyl_group(catalog.make("I", (2, 2)))
    assert a.order == 720
    assert np.array_equal(a.permutations, b.permutations)


def test_reduce_with_trivial_subgroup():
    R = catalog.make("I", 3)
    R0 = reduce(R, [R.group.zero])
    assert len(R0) == len(R) and R0.group.size == R.group.size
    assert find_isomorphism(R, R0).found


def test_reduce_requires_radical():
    R = catalog.make("Iprime", 2)
    with pytest.raises(NotInRadical):
        reduce(R, [R.group.zero, R.root_list[0]])


@pytest.mark.parametrize("k", [2, 3])
def test_reduce_iprime(k):
    R = catalog.make("Iprime", k)
    assert not R.is_reduced
    Rbar, proj = quotient_system(R)
    assert Rbar.is_reduced
    assert Rbar.roots == {a for a in Rbar.group.elements() if a != Rbar.group.zero}
    assert all(proj(a) in Rbar.roots for a in R.roots)
    assert verify(Rbar).ok


def test_irreducibility():
    I2 = catalog.make("I", 2)
    assert is_irreducible(I2)
    both = direct_sum(I2, I2)
    assert verify(both).ok
    assert len(components(both)) == 2
    assert not is_irreducible(both)
    for fam, params in catalog.entries(28):
        assert is_irreducible(catalog.make(fam, params))


@pytest.mark.parametrize("left,right", [("II:1", "I:2"), ("III:1", "I:2"), ("III:2", "II:2"), ("IV:3", "I:2,2")])
def test_coincidences_found(left, right):
    R1, R2 = catalog.make_tag(left), catalog.make_tag(right)
    res = find_isomorphism(R1, R2)
    assert res.found and is_isomorphism(res.isomorphism, R1, R2)


def test_non_isomorphic_pairs():
    res = find_isomorphism(catalog.make("II", 2), catalog.make("V", 3))
    assert not res.found and res.reason == "group orders differ"
    res = find_isomorphism(catalog.make("I", 4), catalog.make("I", (2, 2)))
    assert not res.found
    res = find_isomorphism(catalog.make("I", (2, 2)), catalog.make("II", 2))
    assert not res.found


def test_exhaustive_proof_of_non_isomorphism():
    # same group and root count, but one is reduced and the other is not
    G = FiniteAbelianGroup([2, 2, 2])
    b1 = Bicharacter(G, [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    R1 = RootSystem(G, b1, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
    R2 = RootSystem(G, b1, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1)])
    assert verify(R1).ok
    res = find_isomorphism(R1, R2)
    assert not res.found and res.reason == "search space exhausted" and res.nodes > 0


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        find_isomorphism(catalog.make("IV", 4), catalog.make("V", 3), budget=5)


def test_json_round_trip():
    R = catalog.make("III", 2)
    doc = json.loads(json.dumps(R.to_json()))
    R2 = RootSystem.from_json(doc)
    assert R2.roots == R.roots and R2.beta == R.beta
    with pytest.raises(ValueError):
        RootSystem.from_json({"schema": "frs-1", "orders": [2, 2]})
    with pytest.raises(ValueError):
        RootSystem.from_json({"schema": "other", "orders": [2], "beta": [[0]], "roots": []})


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["I:2", "I:3", "II:2", "III:2", "IV:3"]), st.data())
def test_isomorphism_of_relabelled_system(tag, data):
    R = catalog.make_tag(tag)
    G = R.group
    W = weyl_group(R)
    w = W.elements()[data.draw(st.integers(0, W.order - 1))]
    # Weyl elements fix R setwise; a coordinate permutation gives a relabelled copy
    assert {w(a) for a in R.roots} == R.roots
    rows = data.draw(st.permutations(range(G.rank))) if len(set(G.orders)) == 1 else list(range(G.rank))
    P = GroupHom(G, G, [[int(rows[j] == i) for j in range(G.rank)] for i in range(G.rank)])
    Pinv = GroupHom(G, G, [[int(rows[i] == j) for j in range(G.rank)] for i in range(G.rank)])
    B = [[R.beta.exp(Pinv(x), Pinv(y)) for y in G.basis()] for x in G.basis()]
    S = RootSystem(G, Bicharacter(G, B), [P(a) for a in R.roots])
    assert verify(S).ok
    res = find_isomorphism(R, S)
    assert res.found and is_isomorphism(res.isomorphism, R, S)
