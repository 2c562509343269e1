"""Matrix realizations: generalized Pauli matrices, epsilon-gradings, involutions,
tensor gradings, explicit isomorphisms L(R) -> sl / so / sp and the dual action."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .abelian import Element, FiniteAbelianGroup, lcm
from .cyclotomic import CyclotomicNumber
from .liealg import GradedLieAlgebra, constants_table, solve_rescaling


class NotCompatible(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def _lift(x: CyclotomicNumber, m: int) -> CyclotomicNumber:
    return x if x.modulus == m else x.lift(m)


class ExactMatrix:
    """Sparse n x n matrix over Q(zeta_N); row i is a dict {column: entry}."""

    __slots__ = ("n", "modulus", "rows")

    def __init__(self, n: int, modulus: int, rows: Sequence[dict[int, CyclotomicNumber]] | None = None):
        self.n = n
        self.modulus = modulus
        if rows is None:
            rows = [{} for _ in range(n)]
        self.rows = tuple(
            {j: _lift(v, modulus) for j, v in sorted(r.items()) if v} for r in rows
        )

    # constructors -------------------------------------------------------
    @classmethod
    def from_entries(cls, entries: Sequence[Sequence], modulus: int = 1) -> ExactMatrix:
        n = len(entries)
        rows = []
        for r in entries:
            row = {}
            for j, v in enumerate(r):
                if not isinstance(v, CyclotomicNumber):
                    v = CyclotomicNumber.scalar(modulus, v)
                if v:
                    row[j] = v
            rows.append(row)
        m = lcm([modulus] + [v.modulus for r in rows for v in r.values()])
        return cls(n, m, rows)

    @classmethod
    def identity(cls, n: int, modulus: int = 1) -> ExactMatrix:
        one = CyclotomicNumber.one(modulus)
        return cls(n, modulus, [{i: one} for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, modulus: int = 1) -> ExactMatrix:
        """E_ij: 1 in row i, column j."""
        rows = [{} for _ in range(n)]
        rows[i][j] = CyclotomicNumber.one(modulus)
        return cls(n, modulus, rows)

    # helpers ------------------------------------------------------------
    def lift(self, modulus: int) -> ExactMatrix:
        return self if modulus == self.modulus else ExactMatrix(self.n, modulus, self.rows)

    def _common(self, other: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
        if self.n != other.n:
            raise ValueError("matrix sizes differ")
        m = lcm([self.modulus, other.modulus])
        return self.lift(m), other.lift(m)

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        return self.rows[i].get(j) or CyclotomicNumber.zero(self.modulus)

    def to_lists(self) -> list[list[CyclotomicNumber]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    # ring operations ----------------------------------------------------
    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        a, b = self._common(other)
        rows = []
        for ra, rb in zip(a.rows, b.rows):
            r = dict(ra)
            for j, v in rb.items():
                r[j] = r[j] + v if j in r else v
            rows.append(r)
        return ExactMatrix(a.n, a.modulus, rows)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(self.n, self.modulus, [{j: -v for j, v in r.items()} for r in self.rows])

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, c) -> ExactMatrix:
        if isinstance(c, CyclotomicNumber):
            m = lcm([self.modulus, c.modulus])
            c = _lift(c, m)
            src = self.lift(m)
        else:
            src = self
        return ExactMatrix(src.n, src.modulus, [{j: v * c for j, v in r.items()} for r in src.rows])

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        a, b = self._common(other)
        rows = []
        for ra in a.rows:
            r: dict[int, CyclotomicNumber] = {}
            for k, v in ra.items():
                for j, w in b.rows[k].items():
                    p = v * w
                    r[j] = r[j] + p if j in r else p
            rows.append(r)
        return ExactMatrix(a.n, a.modulus, rows)

    def __pow__(self, k: int) -> ExactMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactMatrix.identity(self.n, self.modulus)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self) -> ExactMatrix:
        rows = [{} for _ in range(self.n)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return ExactMatrix(self.n, self.modulus, rows)

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def trace(self) -> CyclotomicNumber:
        total = CyclotomicNumber.zero(self.modulus)
        for i, r in enumerate(self.rows):
            if i in r:
                total = total + r[i]
        return total

    def commutator(self, other: ExactMatrix) -> ExactMatrix:
        return self @ other - other @ self

    def kron(self, other: ExactMatrix) -> ExactMatrix:
        a, b = self.lift(lcm([self.modulus, other.modulus])), other.lift(lcm([self.modulus, other.modulus]))
        n = a.n * b.n
        rows = []
        for i in range(a.n):
            for k in range(b.n):
                r = {}
                for j, v in a.rows[i].items():
                    for l, w in b.rows[k].items():
                        r[j * b.n + l] = v * w
                rows.append(r)
        return ExactMatrix(n, a.modulus, rows)

    def inverse(self) -> ExactMatrix:
        """Gauss-Jordan elimination over Q(zeta_N)."""
        n, N = self.n, self.modulus
        A = [[self.entry(i, j) for j in range(n)] + [CyclotomicNumber.scalar(N, int(i == j)) for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if A[r][col]), None)
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            A[col], A[piv] = A[piv], A[col]
            inv = A[col][col].inverse()
            A[col] = [x * inv for x in A[col]]
            for r in range(n):
                if r != col and A[r][col]:
                    f = A[r][col]
                    A[r] = [x - f * y for x, y in zip(A[r], A[col])]
        return ExactMatrix(n, N, [{j: A[i][n + j] for j in range(n) if A[i][n + j]} for i in range(n)])

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_monomial(self) -> bool:
        cols = [j for r in self.rows for j in r]
        return all(len(r) == 1 for r in self.rows) and len(set(cols)) == self.n

    def scalar_multiple_of(self, other: ExactMatrix) -> CyclotomicNumber | None:
        """c with self == c * other, or None (other must be nonzero)."""
        a, b = self._common(other)
        i = next(i for i, r in enumerate(b.rows) if r)
        j = next(iter(b.rows[i]))
        c = a.entry(i, j) / b.rows[i][j]
        return c if a == b.scale(c) else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix) or self.n != other.n:
            return False
        a, b = self._common(other)
        return a.rows == b.rows

    def __hash__(self) -> int:
        return hash((self.n, tuple(tuple(sorted(r)) for r in self.rows)))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.n}, Q(zeta_{self.modulus}), nnz={sum(map(len, self.rows))})"

    def to_json(self) -> list:
        return [[self.entry(i, j).to_json() for j in range(self.n)] for i in range(self.n)]


# ---------------------------------------------------------------------------
# Pauli matrices and gradings
# ---------------------------------------------------------------------------

def generalized_pauli(n: int) -> tuple[ExactMatrix, ExactMatrix]:
    """X = diag(eps^{n-1}, ..., eps, 1) and the cyclic shift Y, with XY = eps YX."""
    if n < 2:
        raise ValueError("n must be at least 2")
    X = ExactMatrix(n, n, [{i: CyclotomicNumber.root(n, n - 1 - i)} for i in range(n)])
    one = CyclotomicNumber.one(n)
    Y = ExactMatrix(n, n, [{(i + 1) % n: one} for i in range(n)])
    return X, Y


@dataclass
class MatrixGrading:
    group: FiniteAbelianGroup
    basis: dict[Element, ExactMatrix]

    @property
    def support(self) -> list[Element]:
        return sorted(self.basis)

    @property
    def size(self) -> int:
        return next(iter(self.basis.values())).n

    def restrict(self, support: Iterable[Element]) -> MatrixGrading:
        return MatrixGrading(self.group, {a: self.basis[a] for a in support})

    def product_constant(self, a: Element, b: Element) -> CyclotomicNumber | None:
        """xi with M_a M_b = xi M_{a+b}, or None if the grading law fails."""
        P = self.basis[a] @ self.basis[b]
        c = self.group.add(a, b)
        if c not in self.basis:
            return None if not P.is_zero() else CyclotomicNumber.zero(P.modulus)
        return P.scalar_multiple_of(self.basis[c])

    def check_grading_law(self) -> tuple[bool, tuple | None]:
        for a in self.support:
            for b in self.support:
                if self.product_constant(a, b) is None:
                    return False, (a, b)
        return True, None


def epsilon_grading(n: int) -> MatrixGrading:
    """M(n, C) = sum over (i, j) in Z_n^2 of C X^i Y^{-j}."""
    X, Y = generalized_pauli(n)
    Yinv = Y.inverse()
    G = FiniteAbelianGroup([n, n])
    return MatrixGrading(G, {(i, j): (X ** i) @ (Yinv ** j) for i in range(n) for j in range(n)})


def pauli2_grading() -> MatrixGrading:
    """Standard Z_2 x Z_2 grading Z_(i,j) = X_2^i Y_2^j (here Y_2^{-1} = Y_2)."""
    return epsilon_grading(2)


@dataclass
class Involution:
    """X* = Phi^{-1} X^t Phi for a symmetric or skew-symmetric Phi."""

    phi: ExactMatrix
    symmetric: bool
    phi_inv: ExactMatrix = field(init=False, repr=False)

    def __post_init__(self):
        sign_ok = self.phi.T == (self.phi if self.symmetric else -self.phi)
        if not sign_ok:
            raise NotCompatible("form matrix does not have the declared symmetry")
        self.phi_inv = self.phi.inverse()

    def __call__(self, X: ExactMatrix) -> ExactMatrix:
        return self.phi_inv @ X.T @ self.phi

    @classmethod
    def orthogonal(cls, n: int = 2) -> Involution:
        return cls(ExactMatrix.identity(n), True)

    @classmethod
    def symplectic2(cls) -> Involution:
        return cls(ExactMatrix.from_entries([[0, 1], [-1, 0]]), False)


def split_by_involution(grading: MatrixGrading, inv: Involution) -> tuple[list[Element], list[Element]]:
    """(K-support, H-support): components with M_a* = -M_a and M_a* = M_a."""
    K, H = [], []
    for a in grading.support:
        M = grading.basis[a]
        S = inv(M)
        if S == -M:
            K.append(a)
        elif S == M:
            H.append(a)
        else:
            raise NotCompatible(f"component {a} is not a *-eigenvector")
    return K, H


def tensor_grading(factors: Sequence[tuple[MatrixGrading, Involution | None]]) -> tuple[MatrixGrading, Involution | None]:
    """Kronecker-product grading on the direct product group, with the tensor involution."""
    if not factors:
        raise ValueError("need at least one factor")
    G = FiniteAbelianGroup([n for g, _ in factors for n in g.group.orders])
    basis = {}
    for combo in itertools.product(*[sorted(g.basis.items()) for g, _ in factors]):
        a = tuple(x for key, _ in combo for x in key)
        M = combo[0][1]
        for _, B in combo[1:]:
            M = M.kron(B)
        basis[a] = M
    invs = [inv for _, inv in factors]
    if any(inv is None for inv in invs):
        return MatrixGrading(G, basis), None
    phi = invs[0].phi
    for inv in invs[1:]:
        phi = phi.kron(inv.phi)
    skew = sum(not inv.symmetric for inv in invs)
    return MatrixGrading(G, basis), Involution(phi, skew % 2 == 0)


def pauli_tensor_model(k: int, skew_first: bool) -> tuple[MatrixGrading, Involution]:
    """k copies of (M(2), I_2), the first one replaced by (M(2), Phi_1) if skew_first."""
    P = pauli2_grading()
    factors = [(P, Involution.symplectic2() if (skew_first and i == 0) else Involution.orthogonal()) for i in range(k)]
    return tensor_grading(factors)


def epsilon_tensor_model(ns: Sequence[int]) -> MatrixGrading:
    """Tensor product of the epsilon-gradings of M(n_1), ..., M(n_k)."""
    return tensor_grading([(epsilon_grading(n), None) for n in ns])[0]


# ---------------------------------------------------------------------------
# isomorphisms L(R) -> matrix algebra
# ---------------------------------------------------------------------------

@dataclass
class IsoCheck:
    ok: bool
    pairs: int
    witness: tuple[Element, Element] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_iso(L: GradedLieAlgebra, phi: dict[Element, ExactMatrix]) -> IsoCheck:
    """Exact check of [phi(u_a), phi(u_b)] = phi([u_a, u_b]) on all support pairs.

    phi must be defined on exactly the support, with nonzero images.
    """
    if set(phi) != set(L.support) or any(M.is_zero() for M in phi.values()):
        return IsoCheck(False, 0, None)
    G = L.group
    zero_n = next(iter(phi.values())).n
    count = 0
    for a, b in itertools.combinations(L.support, 2):
        count += 1
        lhs = phi[a].commutator(phi[b])
        c = L.constant(a, b)
        s = G.add(a, b)
        if s in phi:
            rhs = phi[s].scale(c)
        elif c:
            return IsoCheck(False, count, (a, b))
        else:
            rhs = ExactMatrix(zero_n, 1)
        if lhs != rhs:
            return IsoCheck(False, count, (a, b))
    return IsoCheck(True, count)


def model_constants(model: dict[Element, ExactMatrix], group: FiniteAbelianGroup):
    """c_M(a, b) with [M_a, M_b] = c_M(a, b) M_{a+b}; None if a commutator leaves the span."""
    out = {}
    for a, b in itertools.combinations(sorted(model), 2):
        comm = model[a].commutator(model[b])
        if comm.is_zero():
            continue
        s = group.add(a, b)
        if s not in model:
            return None
        c = comm.scalar_multiple_of(model[s])
        if c is None:
            return None
        out[(a, b)] = c
    return out


def solve_eta(L: GradedLieAlgebra, model: dict[Element, ExactMatrix]) -> dict[Element, CyclotomicNumber] | None:
    """Roots of unity eta(a) making u_a -> eta(a) M_a a homomorphism, or None."""
    if set(model) != set(L.support):
        return None
    cM = model_constants(model, L.group)
    if cM is None:
        return None
    return solve_rescaling(L.group, L.support, cM, constants_table(L))


def apply_eta(model: dict[Element, ExactMatrix], eta: dict[Element, CyclotomicNumber]) -> dict[Element, ExactMatrix]:
    return {a: M.scale(eta[a]) for a, M in model.items()}


def model_sl(ns: Sequence[int], support: Iterable[Element]) -> dict[Element, ExactMatrix]:
    """u_a -> X^{i_1} Y^{-j_1} (x) ... for type I(n_1, ..., n_k)."""
    grading = epsilon_tensor_model(ns)
    return {a: grading.basis[a] for a in support}


def model_so_pairs(n: int) -> dict[Element, ExactMatrix]:
    """u_{e_i+e_j} -> 2(E_ij - E_ji), i < j, keyed by the dropped-coordinate element."""
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i] = v[j] = 1
            out[tuple(v[: n - 1])] = (ExactMatrix.unit(n, i, j) - ExactMatrix.unit(n, j, i)).scale(2)
    return out


def model_pauli_tensor(k: int, skew_first: bool) -> tuple[dict[Element, ExactMatrix], list[Element]]:
    """u_a -> Z_(a1,a2) (x) ... (x) Z_(a_{2k-1},a_{2k}) on the K-support of the tensor model."""
    grading, inv = pauli_tensor_model(k, skew_first)
    K, _ = split_by_involution(grading, inv)
    return {a: grading.basis[a] for a in K}, K


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

@dataclass
class DualActionCheck:
    ok: bool
    characters: list[dict[Element, CyclotomicNumber]]
    separates: bool
    witness: tuple[int, Element] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_dual_action(grading: MatrixGrading, generators: Sequence[ExactMatrix]) -> DualActionCheck:
    """Each g must act on every component by g M_a g^-1 = chi_g(a) M_a, and the
    characters chi_g together must separate the support."""
    chars: list[dict[Element, CyclotomicNumber]] = []
    for k, g in enumerate(generators):
        try:
            ginv = g.inverse()
        except SingularMatrix:
            return DualActionCheck(False, chars, False, (k, None))
        chi = {}
        for a in grading.support:
            M = grading.basis[a]
            c = (g @ M @ ginv).scalar_multiple_of(M)
            if c is None:
                return DualActionCheck(False, chars, False, (k, a))
            chi[a] = c
        chars.append(chi)
    sig = {tuple(c[a] for c in chars) for a in grading.support}
    separates = len(sig) == len(grading.support)
    return DualActionCheck(separates, chars, separates, None)


def pauli_generators(k: int) -> list[ExactMatrix]:
    """X_2 and Y_2 placed in each of the k tensor slots."""
    X, Y = generalized_pauli(2)
    I = ExactMatrix.identity(2, 2)
    out = []
    for slot in range(k):
        for P in (X, Y):
            M = None
            for t in range(k):
                F = P if t == slot else I
                M = F if M is None else M.kron(F)
            out.append(M)
    return out


def tau_signs(k: int) -> dict[Element, int]:
    """tau(A) = -A^t on the Q(2,...,2) components of sl(2^k): the sign s with tau(Z_a) = s Z_a."""
    grading = tensor_grading([(pauli2_grading(), None) for _ in range(k)])[0]
    out = {}
    for a in grading.support:
        if not any(a):
            continue
        M = grading.basis[a]
        t = -M.T
        if t == M:
            out[a] = 1
        elif t == -M:
            out[a] = -1
        else:
            raise NotCompatible(f"tau does not preserve the component {a}")
    return out
