"""Finite abelian groups Z_{n_1} x ... x Z_{n_m} and integer linear algebra.

Elements are plain tuples of residues, always normalized so that
``0 <= a[i] < orders[i]``.  Homomorphisms are integer matrices whose column
``j`` holds the image of the ``j``-th standard generator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, NamedTuple, Sequence

Element = tuple[int, ...]
IntMatrix = list[list[int]]


class NotASubgroup(ValueError):
    pass


class NotAHomomorphism(ValueError):
    pass


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V, U_inv)`` with ``U @ A @ V == D`` over the integers.

    ``D`` is diagonal with nonnegative entries and ``D[i][i] | D[i+1][i+1]``;
    ``U`` and ``V`` are unimodular.  Pivot choice is deterministic.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = _identity(m)
    Ui = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        if q == 0:
            return
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (pivot is None or abs(v) < abs(D[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for row in Ui:
                row[t] = -row[t]
    return D, U, V, Ui


def invariant_factors(orders: Sequence[int]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of Z_{n_1} x ... x Z_{n_m} (1's dropped)."""
    if not orders:
        return []
    D = smith_normal_form([[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)])[0]
    return [D[i][i] for i in range(len(orders)) if D[i][i] != 1]


def kernel_mod(A: Sequence[Sequence[int]], N: int) -> list[list[int]]:
    """Generators of the lattice ``{x in Z^n : A x = 0 (mod N)}``."""
    k = len(A)
    n = len(A[0])
    D, _, V, _ = smith_normal_form(A)
    gens = []
    for i in range(n):
        d = D[i][i] if i < k else 0
        step = N // math.gcd(d, N)
        gens.append([V[r][i] * step for r in range(n)])
    return gens


def solve_congruences(A: Sequence[Sequence[int]], rhs: Sequence[int], M: int) -> list[int] | None:
    """A solution ``x`` (entries in [0, M)) of ``A x = rhs (mod M)``, or None."""
    k = len(A)
    n = len(A[0]) if k else 0
    D, U, V, _ = smith_normal_form(A)
    s = [sum(U[i][j] * rhs[j] for j in range(k)) for i in range(k)]
    y = [0] * n
    for i in range(k):
        d = D[i][i] if i < n else 0
        g = math.gcd(d, M)
        if s[i] % g:
            return None
        if i < n and d:
            mod = M // g
            y[i] = (s[i] // g) * pow(d // g, -1, mod) % mod if mod > 1 else 0
    return [sum(V[r][i] * y[i] for i in range(n)) % M for r in range(n)]


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...]
    exponent: int = field(init=False, compare=False)

    def __init__(self, orders: Iterable[int]):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "exponent", lcm(orders))

    def __repr__(self) -> str:
        return "Z" + "xZ".join(map(str, self.orders)) if self.orders else "0"

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def invariant_factors(self) -> list[int]:
        return invariant_factors(self.orders)

    def element(self, coords: Iterable[int]) -> Element:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {coords}")
        return tuple(c % n for c, n in zip(coords, self.orders))

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def basis(self) -> list[Element]:
        return [self.element(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a: Element) -> Element:
        return tuple(-x % n for x, n in zip(a, self.orders))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.orders))

    def scale(self, t: int, a: Element) -> Element:
        return tuple(t * x % n for x, n in zip(a, self.orders))

    def contains(self, a: Sequence[int]) -> bool:
        return len(a) == self.rank and all(0 <= x < n for x, n in zip(a, self.orders))

    def elements(self) -> list[Element]:
        """All elements in lexicographic order (index order)."""
        return list(itertools.product(*(range(n) for n in self.orders)))

    def index(self, a: Element) -> int:
        i = 0
        for x, n in zip(a, self.orders):
            i = i * n + x
        return i

    def from_index(self, i: int) -> Element:
        out = []
        for n in reversed(self.orders):
            i, r = divmod(i, n)
            out.append(r)
        return tuple(reversed(out))

    def product(self, other: FiniteAbelianGroup) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.orders + other.orders)


def element_order(G: FiniteAbelianGroup, g: Element) -> int:
    """Least t >= 1 with t*g = 0."""
    return lcm(n // math.gcd(n, x) for x, n in zip(g, G.orders))


def subgroup_generated(G: FiniteAbelianGroup, S: Iterable[Element]) -> frozenset[Element]:
    """Closure of S and 0 under addition (negation follows in a finite group)."""
    seen = {G.zero}
    frontier = [G.zero]
    gens = sorted(set(S))
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.add(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def generating_subset(G: FiniteAbelianGroup, S: Iterable[Element]) -> list[Element]:
    """Greedy subset of S (in sorted order) generating the same subgroup."""
    chosen: list[Element] = []
    span = frozenset({G.zero})
    for s in sorted(set(S)):
        if s not in span:
            chosen.append(s)
            span = subgroup_generated(G, chosen)
    return chosen


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class GroupHom:
    """Homomorphism given by an integer matrix (column j = image of generator j)."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FiniteAbelianGroup, target: FiniteAbelianGroup, matrix: Sequence[Sequence[int]]):
        if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
            raise ValueError("matrix shape does not match groups")
        M = tuple(tuple(x % target.orders[i] for x in row) for i, row in enumerate(matrix))
        for j, n in enumerate(source.orders):
            col = [M[i][j] for i in range(target.rank)]
            if any(n * c % target.orders[i] for i, c in enumerate(col)):
                raise NotAHomomorphism(f"generator {j} of order {n} cannot map to {tuple(col)}")
        self.source = source
        self.target = target
        self.matrix = M

    @classmethod
    def from_images(cls, source, target, images: Sequence[Element]) -> GroupHom:
        return cls(source, target, [[images[j][i] for j in range(source.rank)] for i in range(target.rank)])

    @classmethod
    def identity(cls, G: FiniteAbelianGroup) -> GroupHom:
        return cls(G, G, _identity(G.rank))

    def __call__(self, a: Element) -> Element:
        return tuple(
            sum(r * x for r, x in zip(row, a)) % n for row, n in zip(self.matrix, self.target.orders)
        )

    def column(self, j: int) -> Element:
        return tuple(row[j] for row in self.matrix)

    def compose(self, other: GroupHom) -> GroupHom:
        """``self o other``."""
        return GroupHom.from_images(other.source, self.target, [self(other.column(j)) for j in range(other.source.rank)])

    def is_bijective(self) -> bool:
        if self.source.size != self.target.size:
            return False
        image = subgroup_generated(self.target, [self.column(j) for j in range(self.source.rank)])
        return len(image) == self.target.size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"GroupHom({self.source} -> {self.target}, {[list(r) for r in self.matrix]})"


GroupEndomorphism = GroupHom


class Quotient(NamedTuple):
    group: FiniteAbelianGroup
    projection: GroupHom
    lifts: list[Element]  # preimages of the quotient's standard generators


def quotient(G: FiniteAbelianGroup, H: Iterable[Element]) -> Quotient:
    """G/H in invariant-factor form, via the Smith form of the relation matrix."""
    H = frozenset(H)
    if G.zero not in H or any(G.add(a, b) not in H for a in H for b in H):
        raise NotASubgroup("H is not closed under addition")
    gens = generating_subset(G, H)
    m = G.rank
    rel = [[(G.orders[i] if i == j else 0) for j in range(m)] + [h[i] for h in gens] for i in range(m)]
    D, U, _, Ui = smith_normal_form(rel)
    keep = [i for i in range(m) if D[i][i] != 1]
    Q = FiniteAbelianGroup(D[i][i] for i in keep)
    proj = GroupHom(G, Q, [U[i] for i in keep])
    lifts = [G.element(Ui[r][i] for r in range(m)) for i in keep]
    return Quotient(Q, proj, lifts)
