"""Alternating bicharacters and bimultiplicative 2-cocycles on finite abelian groups.

Both are stored as exponent matrices relative to zeta_N, N the group exponent:
``beta(a, b) = zeta_N ** sum(a[i] * b[j] * B[i][j])``.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .abelian import Element, FiniteAbelianGroup, GroupHom, kernel_mod, subgroup_generated
from .cyclotomic import CyclotomicNumber


class InvalidForm(ValueError):
    pass


def _check_well_defined(G: FiniteAbelianGroup, M) -> None:
    N = G.exponent
    for i, ni in enumerate(G.orders):
        for j, nj in enumerate(G.orders):
            if (ni * M[i][j]) % N or (nj * M[i][j]) % N:
                raise InvalidForm(f"entry ({i},{j})={M[i][j]} is not well defined on Z{ni} x Z{nj}")


def rescale_exponent(e: int, N_from: int, N_to: int) -> int:
    """Rewrite zeta_{N_from}^e as zeta_{N_to}^f; raises if it is not an N_to-th root."""
    num = e * N_to
    if num % N_from:
        raise InvalidForm(f"zeta_{N_from}^{e} is not an {N_to}-th root of unity")
    return (num // N_from) % N_to


class _ExponentForm:
    __slots__ = ("group", "matrix")

    def __init__(self, group: FiniteAbelianGroup, matrix: Sequence[Sequence[int]]):
        m = group.rank
        if len(matrix) != m or any(len(row) != m for row in matrix):
            raise InvalidForm(f"expected a {m}x{m} matrix")
        N = group.exponent
        M = tuple(tuple(int(x) % N for x in row) for row in matrix)
        _check_well_defined(group, M)
        self.group = group
        self.matrix = M

    @property
    def modulus(self) -> int:
        return self.group.exponent

    def exp(self, a: Element, b: Element) -> int:
        M = self.matrix
        total = 0
        for i, x in enumerate(a):
            if x:
                row = M[i]
                for j, y in enumerate(b):
                    if y:
                        total += x * y * row[j]
        return total % self.group.exponent

    def value(self, a: Element, b: Element) -> CyclotomicNumber:
        return CyclotomicNumber.root(self.modulus, self.exp(a, b))

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.group == other.group and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.group, self.matrix))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.group}, {[list(r) for r in self.matrix]})"


class Bicharacter(_ExponentForm):
    """Alternating bicharacter: B[i][i] = 0 and B[i][j] = -B[j][i] (mod N)."""

    __slots__ = ()

    def __init__(self, group, matrix):
        super().__init__(group, matrix)
        N = group.exponent
        B = self.matrix
        for i in range(group.rank):
            if B[i][i]:
                raise InvalidForm(f"diagonal entry {i} is {B[i][i]}, not 0")
            for j in range(i):
                if (B[i][j] + B[j][i]) % N:
                    raise InvalidForm(f"entries ({i},{j}) and ({j},{i}) are not opposite mod {N}")

    def is_trivial(self) -> bool:
        return not any(any(row) for row in self.matrix)


class Cocycle(_ExponentForm):
    """Bimultiplicative 2-cocycle xi(a, b) = zeta_N ** (a^T C b)."""

    __slots__ = ()


def polarize(xi: Cocycle) -> Bicharacter:
    """beta(a, b) = xi(a, b) / xi(b, a)."""
    C = xi.matrix
    m = xi.group.rank
    return Bicharacter(xi.group, [[C[i][j] - C[j][i] for j in range(m)] for i in range(m)])


def split(beta: Bicharacter) -> Cocycle:
    """Lower-triangular cocycle with polarize(split(beta)) == beta."""
    B = beta.matrix
    m = beta.group.rank
    return Cocycle(beta.group, [[B[i][j] if i > j else 0 for j in range(m)] for i in range(m)])


def radical(beta: Bicharacter) -> frozenset[Element]:
    """Rad(beta) from the integer kernel of B^T modulo N."""
    G = beta.group
    if G.rank == 0:
        return frozenset({G.zero})
    B = beta.matrix
    A = [[B[i][j] for i in range(G.rank)] for j in range(G.rank)]
    gens = [G.element(v) for v in kernel_mod(A, G.exponent)]
    return subgroup_generated(G, gens)


def radical_bruteforce(beta: Bicharacter) -> frozenset[Element]:
    G = beta.group
    basis = G.basis()
    return frozenset(a for a in G.elements() if all(beta.exp(a, e) == 0 for e in basis))


def is_nonsingular(beta: Bicharacter) -> bool:
    return len(radical(beta)) == 1


def is_isometry(phi: GroupHom, beta: Bicharacter) -> bool:
    """phi invertible and beta(phi a, phi b) = beta(a, b) on generator pairs."""
    G = beta.group
    if phi.source != G or phi.target != G or not phi.is_bijective():
        return False
    cols = [phi.column(j) for j in range(G.rank)]
    return all(
        beta.exp(cols[i], cols[j]) == beta.matrix[i][j] for i in range(G.rank) for j in range(G.rank)
    )


def pullback(form: _ExponentForm, hom: GroupHom) -> _ExponentForm:
    """The form (a, b) -> form(hom a, hom b) on hom.source."""
    S, T = hom.source, hom.target
    if T != form.group:
        raise ValueError("homomorphism target does not match the form's group")
    cols = [hom.column(j) for j in range(S.rank)]
    M = [
        [rescale_exponent(form.exp(cols[i], cols[j]), T.exponent, S.exponent) for j in range(S.rank)]
        for i in range(S.rank)
    ]
    return type(form)(S, M)


def restrict_exponents(form: _ExponentForm, lifts: Sequence[Element], target: FiniteAbelianGroup) -> list[list[int]]:
    """Exponent matrix of the form on the elements ``lifts`` rewritten relative to target's exponent."""
    N_from = form.group.exponent
    return [[rescale_exponent(form.exp(x, y), N_from, target.exponent) for y in lifts] for x in lifts]


def orthogonal_sum(forms: Iterable[_ExponentForm]) -> _ExponentForm:
    """Block-diagonal form on the direct product of the groups."""
    forms = list(forms)
    orders = [n for f in forms for n in f.group.orders]
    G = FiniteAbelianGroup(orders)
    N = G.exponent
    M = [[0] * G.rank for _ in range(G.rank)]
    off = 0
    for f in forms:
        scale = N // f.group.exponent
        for i in range(f.group.rank):
            for j in range(f.group.rank):
                M[off + i][off + j] = f.matrix[i][j] * scale
        off += f.group.rank
    return type(forms[0])(G, M)


def is_square(n: int) -> bool:
    r = math.isqrt(n)
    return r * r == n
