"""G-graded Lie algebras L(xi) and L(R) with exact structure constants in Q(zeta_N)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .abelian import Element, FiniteAbelianGroup, lcm, solve_congruences
from .cyclotomic import MAX_MODULUS, CyclotomicNumber, certify_positive_real
from .rootsystem import RootSystem, verify
from .symplectic import Cocycle, radical, split


class InvalidRootSystem(ValueError):
    pass


class OracleMismatch(AssertionError):
    """Two independent computations of the same quantity disagree."""


class GradedLieAlgebra:
    """Basis u_a (a in support) with [u_a, u_b] = (xi(a,b) - xi(b,a)) u_{a+b}."""

    def __init__(self, cocycle: Cocycle, support: Iterable[Element], overrides: dict | None = None):
        self.cocycle = cocycle
        self.group: FiniteAbelianGroup = cocycle.group
        self.modulus = self.group.exponent
        self.support = tuple(sorted(set(support)))
        self.support_set = frozenset(self.support)
        # corrupted or hand-set constants, keyed by (a, b) with a < b
        self._overrides = dict(overrides or {})
        self._cache: dict[tuple[Element, Element], CyclotomicNumber] = {}

    @property
    def dim(self) -> int:
        return len(self.support)

    def __repr__(self) -> str:
        return f"GradedLieAlgebra(dim={self.dim}, {self.group})"

    def xi(self, a: Element, b: Element) -> CyclotomicNumber:
        return self.cocycle.value(a, b)

    def constant(self, a: Element, b: Element) -> CyclotomicNumber:
        """c(a, b) = xi(a,b) - xi(b,a)."""
        if a == b:
            return CyclotomicNumber.zero(self.modulus)
        if b < a:
            return -self.constant(b, a)
        key = (a, b)
        if key in self._overrides:
            return self._overrides[key]
        c = self._cache.get(key)
        if c is None:
            N = self.modulus
            e1, e2 = self.cocycle.exp(a, b), self.cocycle.exp(b, a)
            c = CyclotomicNumber.zero(N) if e1 == e2 else CyclotomicNumber.from_exponents(N, {e1: 1, e2: -1})
            self._cache[key] = c
        return c

    def bracket(self, a: Element, b: Element) -> tuple[Element, CyclotomicNumber]:
        return self.group.add(a, b), self.constant(a, b)

    def with_constant(self, a: Element, b: Element, value: CyclotomicNumber) -> GradedLieAlgebra:
        """Copy with c(a, b) replaced (and c(b, a) = -value)."""
        over = dict(self._overrides)
        if a < b:
            over[(a, b)] = value
        else:
            over[(b, a)] = -value
        return GradedLieAlgebra(self.cocycle, self.support, over)

    def bracket_table(self) -> list[tuple[Element, Element, CyclotomicNumber]]:
        """Nonzero brackets [u_a, u_b] with a < b."""
        out = []
        for a, b in itertools.combinations(self.support, 2):
            c = self.constant(a, b)
            if c:
                out.append((a, b, c))
        return out

    def to_json(self) -> list:
        return [[list(a), list(b), c.to_json()] for a, b, c in self.bracket_table()]


def build_full(cocycle: Cocycle) -> GradedLieAlgebra:
    """L(xi) on all of G."""
    return GradedLieAlgebra(cocycle, cocycle.group.elements())


def build_root(R: RootSystem, cocycle: Cocycle | None = None) -> GradedLieAlgebra:
    """L(R) spanned by u_a, a in R; the cocycle defaults to the canonical splitting of beta."""
    report = verify(R)
    if not report.ok:
        bad = report.failures()[0]
        raise InvalidRootSystem(f"{bad.name} fails (witness {bad.witness})")
    if cocycle is None:
        cocycle = split(R.beta)
    elif cocycle.group != R.group:
        raise ValueError("cocycle lives on a different group")
    else:
        from .symplectic import polarize

        if polarize(cocycle) != R.beta:
            raise ValueError("cocycle does not polarize to the root system's bicharacter")
    return GradedLieAlgebra(cocycle, R.roots)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

@dataclass
class JacobiResult:
    ok: bool
    triples: int
    witness: tuple[Element, Element, Element] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_jacobi(L: GradedLieAlgebra) -> JacobiResult:
    """Exact Jacobi identity over all triples of distinct support elements.

    Triples with a repeated element hold by antisymmetry.  Brackets leaving
    the support count as a failure unless their constant vanishes.
    """
    G = L.group
    S = L.support_set
    zero = CyclotomicNumber.zero(L.modulus)

    def double(x, y, z):
        c1 = L.constant(x, y)
        if not c1:
            return zero
        xy = G.add(x, y)
        if xy not in S:
            return None
        c2 = L.constant(xy, z)
        return c1 * c2 if c2 else zero

    count = 0
    for a, b, c in itertools.combinations(L.support, 3):
        count += 1
        terms = (double(a, b, c), double(b, c, a), double(c, a, b))
        if any(t is None for t in terms) or terms[0] + terms[1] + terms[2]:
            return JacobiResult(False, count, (a, b, c))
    # brackets that leave the support break closure even without a failing triple
    for a, b in itertools.combinations(L.support, 2):
        if L.constant(a, b) and G.add(a, b) not in S:
            return JacobiResult(False, count, (a, b, G.add(a, b)))
    return JacobiResult(True, count)


def center(L: GradedLieAlgebra) -> frozenset[Element]:
    """Support of Z(L), read off the brackets (the grading makes this coordinatewise)."""
    return frozenset(a for a in L.support if not any(L.constant(a, b) for b in L.support))


def derived(L: GradedLieAlgebra) -> frozenset[Element]:
    """Support of [L, L]."""
    G = L.group
    return frozenset(G.add(a, b) for a, b in itertools.combinations(L.support, 2) if L.constant(a, b))


def check_center_derived(L: GradedLieAlgebra) -> tuple[frozenset, frozenset]:
    """center and derived support, cross-checked against Rad(beta) for full algebras."""
    from .symplectic import polarize

    Z, D = center(L), derived(L)
    rad = radical(polarize(L.cocycle)) & L.support_set
    if L.support_set == frozenset(L.group.elements()):
        if Z != rad or D != L.support_set - rad:
            raise OracleMismatch("center/derived disagree with the radical")
    return Z, D


@dataclass
class KillingReport:
    """Diagonal Killing pairings (u_a, u_{-a}).

    ``trace`` holds tr(ad u_{-a} ad u_a).  ``closed_form`` holds
    sum_b (2 - beta(a,b) - beta(a,b)^-1), which equals xi(a,a) * trace.
    """

    trace: dict[Element, CyclotomicNumber] = field(default_factory=dict)
    closed_form: dict[Element, CyclotomicNumber] = field(default_factory=dict)
    normalization: dict[Element, CyclotomicNumber] = field(default_factory=dict)
    nondegenerate: bool = False
    closed_form_positive: bool = False
    trace_positive: bool = False

    @property
    def closed_form_equals_trace(self) -> bool:
        return all(self.trace[a] == self.closed_form[a] for a in self.trace)

    def mismatches(self) -> list[Element]:
        return [a for a in sorted(self.trace) if self.trace[a] != self.closed_form[a]]

    def as_dict(self) -> dict:
        return {
            "nondegenerate": self.nondegenerate,
            "closed_form_positive": self.closed_form_positive,
            "trace_positive": self.trace_positive,
            "closed_form_equals_trace": self.closed_form_equals_trace,
            "values": [
                {
                    "root": list(a),
                    "trace": self.trace[a].to_json(),
                    "closed_form": self.closed_form[a].to_json(),
                    "xi_aa": self.normalization[a].to_json(),
                }
                for a in sorted(self.trace)
            ],
        }


def trace_pairing(L: GradedLieAlgebra, a: Element, b: Element) -> CyclotomicNumber:
    """tr(ad u_b o ad u_a) by summing over the basis."""
    G = L.group
    total = CyclotomicNumber.zero(L.modulus)
    for x in L.support:
        c1 = L.constant(a, x)
        if not c1:
            continue
        y = G.add(a, x)
        if y not in L.support_set or G.add(b, y) != x:
            continue
        total = total + c1 * L.constant(b, y)
    return total


def killing(L: GradedLieAlgebra, certify: bool = True) -> KillingReport:
    """Diagonal Killing values by two routes, related by the factor xi(a, a)."""
    G = L.group
    N = L.modulus
    rep = KillingReport()
    beta_exp = lambda a, b: (L.cocycle.exp(a, b) - L.cocycle.exp(b, a)) % N  # noqa: E731
    for a in L.support:
        na = G.neg(a)
        if na not in L.support_set:
            raise ValueError(f"support is not closed under negation at {a}")
        t = trace_pairing(L, a, na)
        terms: dict[int, int] = {}
        for b in L.support:
            e = beta_exp(a, b)
            if e:
                terms[0] = terms.get(0, 0) + 2
                terms[e] = terms.get(e, 0) - 1
                terms[-e % N] = terms.get(-e % N, 0) - 1
        s = CyclotomicNumber.from_exponents(N, terms)
        xaa = L.xi(a, a)
        if not L._overrides and xaa * t != s:
            raise OracleMismatch(f"trace and closed form disagree beyond xi(a,a) at {a}")
        rep.trace[a] = t
        rep.closed_form[a] = s
        rep.normalization[a] = xaa
    rep.nondegenerate = all(rep.trace[a] for a in L.support)
    if certify:
        rep.closed_form_positive = all(
            v.is_real() and certify_positive_real(v) for v in rep.closed_form.values()
        )
        rep.trace_positive = all(v.is_real() and certify_positive_real(v) for v in rep.trace.values())
    return rep


def rescale(L: GradedLieAlgebra, eta: dict[Element, CyclotomicNumber]) -> dict[tuple[Element, Element], CyclotomicNumber]:
    """Constants of L in the basis v_a = eta(a) u_a, keyed by (a, b) with a < b."""
    out = {}
    G = L.group
    for a, b in itertools.combinations(L.support, 2):
        c = L.constant(a, b)
        if c:
            s = G.add(a, b)
            m = lcm([c.modulus, eta[a].modulus, eta[b].modulus, eta[s].modulus])
            out[(a, b)] = c.lift(m) * eta[a].lift(m) * eta[b].lift(m) / eta[s].lift(m)
    return out


def solve_rescaling(
    group: FiniteAbelianGroup,
    support: Iterable[Element],
    source: dict[tuple[Element, Element], CyclotomicNumber],
    target: dict[tuple[Element, Element], CyclotomicNumber],
) -> dict[Element, CyclotomicNumber] | None:
    """Roots of unity eta with source(a,b) eta(a) eta(b) / eta(a+b) = target(a,b).

    Both tables are keyed by (a, b) with a < b, zero entries omitted.  Each
    nonzero entry gives eta(a) + eta(b) - eta(a+b) = r(a, b) in exponents; the
    integer system is solved modulo K, 2K, 4K, ... by Smith normal form.
    Returns None when the tables have different zero patterns, a ratio is not
    a root of unity, or no solution exists below MAX_MODULUS.
    """
    supp = sorted(set(support))
    idx = {a: i for i, a in enumerate(supp)}
    if set(source) != set(target):
        return None
    K = lcm([1] + [c.modulus for c in source.values()] + [c.modulus for c in target.values()])
    eqs = []
    for (a, b), c in sorted(source.items()):
        ratio = target[(a, b)].lift(K) / c.lift(K)
        e = ratio.root_exponent()
        if e is None:
            return None
        s = group.add(a, b)
        if s not in idx:
            return None
        eqs.append((a, b, s, e))
    M = K
    while M <= MAX_MODULUS:
        if not eqs:
            return {a: CyclotomicNumber.one(M) for a in supp}
        rows, rhs = [], []
        for a, b, s, e in eqs:
            row = [0] * len(supp)
            row[idx[a]] += 1
            row[idx[b]] += 1
            row[idx[s]] -= 1
            rows.append(row)
            rhs.append(e * (M // K))
        x = solve_congruences(rows, rhs, M)
        if x is not None:
            return {a: CyclotomicNumber.root(M, x[idx[a]]) for a in supp}
        M *= 2
    return None


def constants_table(L: GradedLieAlgebra) -> dict[tuple[Element, Element], CyclotomicNumber]:
    return {(a, b): c for a, b, c in L.bracket_table()}


def compare_tables(L1: GradedLieAlgebra, L2: GradedLieAlgebra, f) -> tuple[Element, Element] | None:
    """First pair (a, b) of L1 with c1(a, b) != c2(f a, f b); f must biject the supports
    and be additive on them.  None means the tables agree."""
    G1 = L1.group
    if sorted(f(a) for a in L1.support) != list(L2.support):
        return (L1.support[0], L1.support[0])
    for a, b in itertools.combinations(L1.support, 2):
        if f(G1.add(a, b)) != L2.group.add(f(a), f(b)) and L1.constant(a, b):
            return (a, b)
        c2 = L2.constant(f(a), f(b))
        c1 = L1.constant(a, b)
        m = lcm([c1.modulus, c2.modulus])
        if c1.lift(m) != c2.lift(m):
            return (a, b)
    return None
