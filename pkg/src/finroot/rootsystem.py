"""Finite root systems (G, beta, R): axioms, transvections, Weyl groups, reduction,
irreducibility and isomorphism search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable

import numpy as np

from .abelian import (
    Element,
    FiniteAbelianGroup,
    GroupHom,
    element_order,
    quotient,
    subgroup_generated,
)
from .symplectic import Bicharacter, orthogonal_sum, radical, restrict_exponents

SCHEMA = "frs-1"
DEFAULT_WEYL_CAP = 10**7
DEFAULT_ISO_BUDGET = 10**8


class ZeroElement(ValueError):
    pass


class NotInRadical(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Raised by weyl_group; ``state`` can be passed back as ``resume=``."""

    def __init__(self, cap: int, state: dict):
        super().__init__(f"Weyl group closure exceeded cap {cap} (found {len(state['seen'])} elements)")
        self.cap = cap
        self.state = state


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"isomorphism search exceeded its budget of {budget} nodes")
        self.budget = budget


class RootSystem:
    """A subset R of a symplectic abelian group (G, beta)."""

    def __init__(self, group: FiniteAbelianGroup, beta: Bicharacter, roots: Iterable[Element]):
        if beta.group != group:
            raise ValueError("bicharacter lives on a different group")
        roots = [tuple(int(x) for x in r) for r in roots]
        for r in roots:
            if not group.contains(r):
                raise ValueError(f"{r} is not a normalized element of {group}")
        self.group = group
        self.beta = beta
        self.roots = frozenset(roots)
        self.root_list = tuple(sorted(self.roots))

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.group}, |R|={len(self.roots)})"

    @cached_property
    def radical(self) -> frozenset[Element]:
        return radical(self.beta)

    @property
    def is_reduced(self) -> bool:
        return len(self.radical) == 1

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "orders": list(self.group.orders),
            "beta": [list(r) for r in self.beta.matrix],
            "roots": [list(r) for r in self.root_list],
        }

    @classmethod
    def from_json(cls, doc: dict) -> RootSystem:
        if not isinstance(doc, dict):
            raise ValueError("root-system document must be a JSON object")
        if doc.get("schema", SCHEMA) != SCHEMA:
            raise ValueError(f"unsupported schema {doc.get('schema')!r}")
        try:
            G = FiniteAbelianGroup(doc["orders"])
            beta = Bicharacter(G, doc["beta"])
            return cls(G, beta, doc["roots"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed root-system document: {exc}") from exc


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

@dataclass
class AxiomCheck:
    name: str
    ok: bool
    witness: Any = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {"axiom": self.name, "ok": self.ok, "witness": self.witness, "detail": self.detail}


@dataclass
class VerifyReport:
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}


def verify(R: RootSystem) -> VerifyReport:
    """Check FRS0 (avoids the radical, generates G), FRS1 and FRS2, with witnesses."""
    G, beta = R.group, R.beta
    rad = R.radical
    report = VerifyReport()

    bad = next((a for a in R.root_list if a in rad), None)
    report.checks.append(AxiomCheck(
        "FRS0:avoids-radical", bad is None, list(bad) if bad else None,
        "" if bad is None else "root lies in Rad(beta)",
    ))
    span = subgroup_generated(G, R.roots)
    report.checks.append(AxiomCheck(
        "FRS0:generates", len(span) == G.size, None if len(span) == G.size else len(span),
        "" if len(span) == G.size else f"roots generate a subgroup of order {len(span)} < {G.size}",
    ))
    bad = next((a for a in R.root_list if G.neg(a) not in R.roots), None)
    report.checks.append(AxiomCheck(
        "FRS1:negation", bad is None, list(bad) if bad else None,
        "" if bad is None else "negative of root is not a root",
    ))
    witness = None
    for a in R.root_list:
        for b in R.root_list:
            if beta.exp(a, b) and G.add(a, b) not in R.roots:
                witness = [list(a), list(b)]
                break
        if witness:
            break
    report.checks.append(AxiomCheck(
        "FRS2:closure", witness is None, witness,
        "" if witness is None else "beta(a,b) != 1 but a+b is not a root",
    ))
    return report


# ---------------------------------------------------------------------------
# transvections and the Weyl group
# ---------------------------------------------------------------------------

def transvection_exponent(beta: Bicharacter, a: Element, b: Element) -> int:
    """i with beta(a, b) = eps^i, eps = exp(2 pi i / ord(a))."""
    n = element_order(beta.group, a)
    e = beta.exp(a, b)
    step = beta.group.exponent // n
    assert e % step == 0
    return e // step


def transvection(a: Element, beta: Bicharacter) -> GroupHom:
    """s_a : b -> b - i(b) a where beta(a, b) = eps^i(b)."""
    G = beta.group
    if a == G.zero:
        raise ZeroElement("transvection of the zero element")
    images = [G.sub(e, G.scale(transvection_exponent(beta, a, e), a)) for e in G.basis()]
    return GroupHom.from_images(G, G, images)


def _as_permutation(hom: GroupHom, elements: list[Element]) -> np.ndarray:
    G = hom.source
    return np.array([G.index(hom(x)) for x in elements], dtype=np.int32)


@dataclass
class WeylGroup:
    group: FiniteAbelianGroup
    generators: list[GroupHom]
    permutations: np.ndarray  # one row per element, as a permutation of G's index order

    @property
    def order(self) -> int:
        return len(self.permutations)

    def matrices(self) -> np.ndarray:
        """Element matrices (order x m x m), column j = image of generator j."""
        G = self.group
        m = G.rank
        out = np.zeros((self.order, m, m), dtype=np.int64)
        for j, e in enumerate(G.basis()):
            idx = self.permutations[:, G.index(e)].astype(np.int64)
            for i in reversed(range(m)):
                idx, r = np.divmod(idx, G.orders[i])
                out[:, i, j] = r
        return out

    def elements(self) -> list[GroupHom]:
        G = self.group
        return [GroupHom(G, G, M.tolist()) for M in self.matrices()]


def weyl_group(R: RootSystem, cap: int = DEFAULT_WEYL_CAP, resume: dict | None = None) -> WeylGroup:
    """Breadth-first closure of the root transvections under composition.

    Elements are sorted lexicographically by matrix.  Raises CapExceeded when
    more than ``cap`` elements are found; its ``state`` resumes the search.
    """
    G = R.group
    elements = G.elements()
    gens: list[GroupHom] = []
    perms: list[np.ndarray] = []
    keys = set()
    for a in R.root_list:
        s = transvection(a, R.beta)
        p = _as_permutation(s, elements)
        if p.tobytes() not in keys:
            keys.add(p.tobytes())
            gens.append(s)
            perms.append(p)

    if resume is None:
        ident = np.arange(G.size, dtype=np.int32)
        seen = {ident.tobytes(): ident}
        frontier = [ident]
    else:
        seen, frontier = resume["seen"], resume["frontier"]

    while frontier:
        F = np.array(frontier)
        nxt = []
        for p in perms:
            for row in F[:, p]:
                key = row.tobytes()
                if key not in seen:
                    seen[key] = row
                    nxt.append(row)
            if len(seen) > cap:
                # the current layer is replayed on resume; duplicates are skipped
                raise CapExceeded(cap, {"seen": seen, "frontier": frontier})
        frontier = nxt

    W = WeylGroup(G, gens, np.array(list(seen.values())))
    mats = W.matrices().reshape(W.order, -1)
    order = np.lexsort(mats.T[::-1])
    W.permutations = W.permutations[order]
    return W


# ---------------------------------------------------------------------------
# reduction and decomposition
# ---------------------------------------------------------------------------

def quotient_system(R: RootSystem, H: Iterable[Element] | None = None) -> tuple[RootSystem, GroupHom]:
    """(G/H, beta-bar, image of R) together with the projection G -> G/H."""
    rad = R.radical
    H = rad if H is None else frozenset(H)
    if not H <= rad:
        raise NotInRadical("H is not contained in Rad(beta)")
    Q = quotient(R.group, H)
    beta_bar = Bicharacter(Q.group, restrict_exponents(R.beta, Q.lifts, Q.group))
    roots = {Q.projection(a) for a in R.roots}
    return RootSystem(Q.group, beta_bar, roots), Q.projection


def reduce(R: RootSystem, H: Iterable[Element] | None = None) -> RootSystem:
    """Quotient root system modulo H (default: the whole radical)."""
    return quotient_system(R, H)[0]


def components(R: RootSystem) -> list[list[Element]]:
    """Connected components of the graph on R with edges beta(a, b) != 1."""
    todo = set(R.roots)
    comps = []
    for start in R.root_list:
        if start not in todo:
            continue
        todo.discard(start)
        comp, stack = [start], [start]
        while stack:
            a = stack.pop()
            for b in sorted(todo):
                if R.beta.exp(a, b):
                    todo.discard(b)
                    comp.append(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def is_irreducible(R: RootSystem) -> bool:
    """False iff R splits into two orthogonal root systems on complementary subgroups."""
    comps = components(R)
    if len(comps) <= 1:
        return True
    G = R.group
    for mask in range(1, 2 ** (len(comps) - 1)):
        R1 = [a for k, c in enumerate(comps) if mask >> k & 1 for a in c]
        R2 = [a for k, c in enumerate(comps) if not mask >> k & 1 for a in c]
        G1 = subgroup_generated(G, R1)
        G2 = subgroup_generated(G, R2)
        if len(G1) * len(G2) != G.size or len(G1 & G2) != 1:
            continue
        if _avoids_local_radical(R.beta, R1, G1) and _avoids_local_radical(R.beta, R2, G2):
            return False
    return True


def _avoids_local_radical(beta: Bicharacter, roots, subgroup) -> bool:
    return all(any(beta.exp(a, g) for g in subgroup) for a in roots)


def direct_sum(R1: RootSystem, R2: RootSystem) -> RootSystem:
    """Orthogonal direct sum on G1 x G2."""
    beta = orthogonal_sum([R1.beta, R2.beta])
    z1, z2 = R1.group.zero, R2.group.zero
    roots = [a + z2 for a in R1.roots] + [z1 + b for b in R2.roots]
    return RootSystem(beta.group, beta, roots)


# ---------------------------------------------------------------------------
# isomorphism search
# ---------------------------------------------------------------------------

@dataclass
class IsoResult:
    isomorphism: GroupHom | None
    nodes: int
    reason: str

    @property
    def found(self) -> bool:
        return self.isomorphism is not None


def is_isomorphism(phi: GroupHom, R1: RootSystem, R2: RootSystem) -> bool:
    """phi bijective, beta-preserving and phi(R1) = R2."""
    if phi.source != R1.group or phi.target != R2.group or not phi.is_bijective():
        return False
    basis = R1.group.basis()
    imgs = [phi(e) for e in basis]
    if R1.group.exponent != R2.group.exponent:
        return False
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if R1.beta.exp(x, y) != R2.beta.exp(imgs[i], imgs[j]):
                return False
    return {phi(a) for a in R1.roots} == R2.roots


def find_isomorphism(R1: RootSystem, R2: RootSystem, budget: int = DEFAULT_ISO_BUDGET) -> IsoResult:
    """Backtracking search for an isomorphism of root systems.

    Generators of G1 (roots first) are assigned images one at a time; each
    assignment must keep beta-values against earlier generators, be a
    well-defined injective extension, and map roots exactly onto roots on the
    newly reached coset.  A None result is a proof of non-isomorphism; running
    out of budget raises BudgetExceeded instead.
    """
    G1, G2 = R1.group, R2.group
    if G1.size != G2.size:
        return IsoResult(None, 0, "group orders differ")
    if G1.invariant_factors != G2.invariant_factors:
        return IsoResult(None, 0, "groups are not isomorphic")
    if len(R1) != len(R2):
        return IsoResult(None, 0, "root counts differ")
    if len(R1.radical) != len(R2.radical):
        return IsoResult(None, 0, "radical orders differ")

    # generating sequence and the coset structure it induces
    seq: list[Element] = []
    levels = []  # (generator, multiplier m, m*g expressed in span, new elements [(x, h, t)])
    span = [G1.zero]
    span_set = {G1.zero}
    pool = list(R1.root_list) + [e for e in G1.basis()]
    for g in pool:
        if g in span_set:
            continue
        m = 1
        while G1.scale(m, g) not in span_set:
            m += 1
        new = []
        for t in range(1, m):
            tg = G1.scale(t, g)
            for h in span:
                new.append((G1.add(h, tg), h, t))
        seq.append(g)
        levels.append((g, m, G1.scale(m, g), new))
        span = span + [x for x, _, _ in new]
        span_set.update(x for x, _, _ in new)
        if len(span) == G1.size:
            break

    candidates = []
    for g in seq:
        n = element_order(G1, g)
        if g in R1.roots:
            pool2 = R2.root_list
        else:
            pool2 = [x for x in G2.elements() if x not in R2.roots]
        candidates.append([y for y in pool2 if element_order(G2, y) == n])

    nodes = 0
    images: dict[Element, Element] = {G1.zero: G2.zero}
    used = {G2.zero}

    def search(level: int) -> bool:
        nonlocal nodes
        if level == len(seq):
            return True
        g, m, mg, new = levels[level]
        for y in candidates[level]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget)
            if G2.scale(m, y) != images[mg]:
                continue
            if any(R2.beta.exp(y, images[seq[j]]) != R1.beta.exp(g, seq[j]) for j in range(level)):
                continue
            added = []
            ok = True
            for x, h, t in new:
                img = G2.add(images[h], G2.scale(t, y))
                if img in used or ((x in R1.roots) != (img in R2.roots)):
                    ok = False
                    break
                images[x] = img
                used.add(img)
                added.append(x)
            if ok and search(level + 1):
                return True
            for x in added:
                used.discard(images.pop(x))
        return False

    if search(0):
        phi = GroupHom.from_images(G1, G2, [images[e] for e in G1.basis()])
        assert is_isomorphism(phi, R1, R2)
        return IsoResult(phi, nodes, "isomorphism found")
    return IsoResult(None, nodes, "search space exhausted")


def coset_generators(R: RootSystem) -> list[Element]:
    """Greedy generating set of G chosen from the roots (deterministic)."""
    out: list[Element] = []
    span = {R.group.zero}
    for a in R.root_list:
        if a not in span:
            out.append(a)
            span = set(subgroup_generated(R.group, out))
    return out


def all_pairs(R: RootSystem):
    return itertools.product(R.root_list, repeat=2)
