"""Named finite root systems I, I', II, III, IV, IV', V with expected metadata."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from functools import lru_cache

from .abelian import Element, FiniteAbelianGroup, subgroup_generated
from .rootsystem import RootSystem, reduce
from .symplectic import Bicharacter, Cocycle, split

FAMILIES = ("I", "Iprime", "II", "III", "IV", "IVprime", "V")


class BadParameters(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    params: tuple[int, ...]
    name: str
    group_orders: tuple[int, ...]
    num_roots: int
    lie_type: str
    lie_dim: int
    reduced: bool
    irreducible: bool
    weyl_label: str
    weyl_order: int | None

    @property
    def tag(self) -> str:
        return f"{self.family}:{','.join(map(str, self.params))}"

    def as_dict(self) -> dict:
        d = asdict(self)
        d["params"] = list(self.params)
        d["group_orders"] = list(self.group_orders)
        d["tag"] = self.tag
        return d


# ---------------------------------------------------------------------------
# tags and parameter checks
# ---------------------------------------------------------------------------

def parse_tag(tag: str) -> tuple[str, tuple[int, ...]]:
    """'I:2,2' -> ('I', (2, 2)).  Raises BadParameters on malformed input."""
    if ":" not in tag:
        raise BadParameters(f"tag {tag!r} must look like FAMILY:params, e.g. I:2,2")
    fam, _, rest = tag.partition(":")
    fam = fam.strip()
    if fam not in FAMILIES:
        raise BadParameters(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
    try:
        params = tuple(int(x) for x in rest.split(",") if x.strip())
    except ValueError as exc:
        raise BadParameters(f"bad parameters in {tag!r}") from exc
    check_params(fam, params)
    return fam, params


def check_params(family: str, params: tuple[int, ...]) -> None:
    if family == "I":
        if not params or any(n < 2 for n in params):
            raise BadParameters("I needs parameters n_i >= 2")
        if any(params[i + 1] % params[i] for i in range(len(params) - 1)):
            raise BadParameters("I(n_1,...,n_k) needs n_i | n_{i+1}")
        return
    if len(params) != 1:
        raise BadParameters(f"{family} takes exactly one parameter k")
    k = params[0]
    least = {"Iprime": 2, "II": 1, "III": 1, "IV": 3, "IVprime": 3, "V": 3}[family]
    if k < least:
        raise BadParameters(f"{family}(k) needs k >= {least}")


def display_name(family: str, params: tuple[int, ...]) -> str:
    if family == "Iprime":
        return "I'(" + ",".join(["2"] * params[0]) + ")"
    if family == "IVprime":
        return f"IV'({params[0]})"
    return f"{family}({','.join(map(str, params))})"


# ---------------------------------------------------------------------------
# quadratic forms over F_2
# ---------------------------------------------------------------------------

def form_g(a: Element) -> int:
    """g(a) = sum a_{2i-1} a_{2i}."""
    return sum(a[2 * i] * a[2 * i + 1] for i in range(len(a) // 2)) % 2


def form_f(a: Element) -> int:
    """f(a) = a_1 + a_2 + g(a) over F_2."""
    return (a[0] + a[1] + form_g(a)) % 2


def form_h(a: Element) -> int:
    """h(a) = g(a_1..a_{2k}) + a_{2k+1} on F_2^{2k+1}."""
    return (form_g(a[:-1]) + a[-1]) % 2


def _standard_symplectic(m: int, N: int = 2) -> list[list[int]]:
    """Exponents of (-1)^{sum a_{2i} b_{2i-1} - a_{2i-1} b_{2i}} on the first 2*(m//2) coordinates."""
    B = [[0] * m for _ in range(m)]
    half = N // 2
    for i in range(m // 2):
        B[2 * i + 1][2 * i] = half
        B[2 * i][2 * i + 1] = -half % N
    return B


def _quadric_system(k: int, q) -> RootSystem:
    G = FiniteAbelianGroup([2] * (2 * k))
    beta = Bicharacter(G, _standard_symplectic(2 * k))
    return RootSystem(G, beta, [a for a in G.elements() if q(a) == 1])


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _make_I(ns: tuple[int, ...]) -> RootSystem:
    orders = [n for n in ns for _ in range(2)]
    G = FiniteAbelianGroup(orders)
    N = G.exponent
    B = [[0] * G.rank for _ in range(G.rank)]
    for t, n in enumerate(ns):
        s = N // n
        # beta((i,j),(s,t)) = eps^{js - it}
        B[2 * t + 1][2 * t] = s
        B[2 * t][2 * t + 1] = -s % N
    beta = Bicharacter(G, B)
    return RootSystem(G, beta, [a for a in G.elements() if any(a)])


def _make_Iprime(k: int) -> RootSystem:
    G = FiniteAbelianGroup([2] * (2 * k + 1))
    beta = Bicharacter(G, _standard_symplectic(2 * k + 1))
    rad = {G.zero, G.basis()[-1]}
    return RootSystem(G, beta, [a for a in G.elements() if a not in rad and form_h(a) == 1])


def even_weight_lift(a: Element) -> Element:
    """Coordinates on the even-weight subgroup of Z_2^n: drop the last entry; this restores it."""
    return tuple(a) + (sum(a) % 2,)


def _make_pairs(n: int) -> RootSystem:
    """R = {e_i + e_j} inside the even-weight subgroup of Z_2^n, as Z_2^(n-1)."""
    m = n - 1
    G = FiniteAbelianGroup([2] * m)
    # beta(a, b) = (-1)^{sum a_i b_i} on even-weight vectors, i.e. B = J - I after dropping a_n
    beta = Bicharacter(G, [[0 if p == q else 1 for q in range(m)] for p in range(m)])
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i] = v[j] = 1
            roots.append(tuple(v[:m]))
    return RootSystem(G, beta, roots)


def pair_root(n: int, i: int, j: int) -> Element:
    """Coordinates of e_i + e_j (0-based, i != j) in the II / IV' group."""
    v = [0] * n
    v[i] = v[j] = 1
    return tuple(v[: n - 1])


@lru_cache(maxsize=None)
def _make_cached(family: str, params: tuple[int, ...]) -> RootSystem:
    if family == "I":
        return _make_I(params)
    k = params[0]
    if family == "Iprime":
        return _make_Iprime(k)
    if family == "II":
        return _make_pairs(2 * k + 1)
    if family == "IVprime":
        return _make_pairs(2 * k)
    if family == "IV":
        return reduce(_make_pairs(2 * k))
    if family == "III":
        return _quadric_system(k, form_f)
    if family == "V":
        return _quadric_system(k, form_g)
    raise BadParameters(family)


def make(family: str, params) -> RootSystem:
    """The root system of the given family, e.g. make('I', (2, 2))."""
    params = tuple(int(p) for p in (params if isinstance(params, (tuple, list)) else (params,)))
    check_params(family, params)
    return _make_cached(family, params)


def make_tag(tag: str) -> RootSystem:
    return make(*parse_tag(tag))


def natural_cocycle(family: str, params) -> Cocycle:
    """The cocycle used in the standard matrix realizations.

    For I, I' and V this is the canonical splitting.  For II and IV' it is
    (-1)^{sum_{j<i} a_i b_j} pulled back to the dropped-coordinate model.  For
    III it is (-1)^{a_1 b_1 + a_2 b_2 + sum a_{2i} b_{2i-1}}.
    """
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    R = make(family, params)
    G = R.group
    m = G.rank
    if family in ("II", "IVprime"):
        C = [[(int(q < p) + 1) % 2 for q in range(m)] for p in range(m)]
        return Cocycle(G, C)
    if family == "III":
        C = [list(row) for row in split(R.beta).matrix]
        C[0][0] = (C[0][0] + 1) % 2
        C[1][1] = (C[1][1] + 1) % 2
        return Cocycle(G, C)
    return split(R.beta)


# ---------------------------------------------------------------------------
# expected metadata
# ---------------------------------------------------------------------------

def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def order_SL2(n: int) -> int:
    """|SL(2, Z_n)| = n^3 prod_{p | n} (1 - p^-2)."""
    num, den = n**3, 1
    for p in _prime_divisors(n):
        num *= p * p - 1
        den *= p * p
    return num // den


def order_Sp(k: int, n: int = 2) -> int:
    """|Sp(2k, Z_n)| = n^{2k^2+k} prod_{p | n} prod_{i=1}^k (1 - p^{-2i})."""
    num, den = n ** (2 * k * k + k), 1
    for p in _prime_divisors(n):
        for i in range(1, k + 1):
            num *= p ** (2 * i) - 1
            den *= p ** (2 * i)
    return num // den


def order_O2(k: int, plus: bool) -> int:
    """|O^{+/-}(2k, 2)| = 2 * 2^{k(k-1)} (2^k -/+ 1) prod_{i<k} (4^i - 1)."""
    out = 2 * 2 ** (k * (k - 1)) * (2**k - 1 if plus else 2**k + 1)
    for i in range(1, k):
        out *= 4**i - 1
    return out


def expected(family: str, params) -> CatalogEntry:
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    check_params(family, params)
    name = display_name(family, params)
    if family == "I":
        n = math.prod(params)
        orders = tuple(x for x in params for _ in range(2))
        if len(params) == 1:
            wl, wo = f"SL(2,Z_{n})", order_SL2(n)
        elif len(set(params)) == 1:
            wl, wo = "Sp(G,beta)", order_Sp(len(params), params[0])
        else:
            wl, wo = "Sp(G,beta)", None
        return CatalogEntry(family, params, name, orders, n * n - 1, f"sl({n})", n * n - 1, True, True, wl, wo)
    k = params[0]
    if family == "Iprime":
        n = 2**k
        return CatalogEntry(family, params, name, (2,) * (2 * k + 1), n * n - 1, f"sl({n})", n * n - 1,
                            False, True, f"Sp({2 * k},F_2)", order_Sp(k, 2))
    if family == "II":
        d = k * (2 * k + 1)
        return CatalogEntry(family, params, name, (2,) * (2 * k), d, f"so({2 * k + 1})", d, True, True,
                            f"S_{2 * k + 1}", math.factorial(2 * k + 1))
    if family in ("IV", "IVprime"):
        d = k * (2 * k - 1)
        rank = 2 * k - 2 if family == "IV" else 2 * k - 1
        return CatalogEntry(family, params, name, (2,) * rank, d, f"so({2 * k})", d, family == "IV", True,
                            f"S_{2 * k}", math.factorial(2 * k))
    if family == "III":
        d = 2 ** (2 * k - 1) + 2 ** (k - 1)
        return CatalogEntry(family, params, name, (2,) * (2 * k), d, f"sp({2**k})", d, True, True,
                            "O(G,f)", order_O2(k, plus=False))
    if family == "V":
        d = 2 ** (2 * k - 1) - 2 ** (k - 1)
        return CatalogEntry(family, params, name, (2,) * (2 * k), d, f"so({2**k})", d, True, True,
                            "O(G,g)", order_O2(k, plus=True))
    raise BadParameters(family)


def entries(max_dim: int = 63) -> list[tuple[str, tuple[int, ...]]]:
    """Every (family, params) whose Lie algebra has dimension <= max_dim."""
    out: list[tuple[str, tuple[int, ...]]] = []

    def chains(prefix):
        n = math.prod(prefix)
        if prefix:
            yield tuple(prefix)
        last = prefix[-1] if prefix else 2
        m = last
        while (n * m) ** 2 - 1 <= max_dim:
            if not prefix or m % last == 0:
                yield from chains(prefix + [m])
            m += 1

    out.extend(("I", p) for p in sorted(chains([]), key=lambda p: (len(p), p)))
    k = 2
    while 4**k - 1 <= max_dim:
        out.append(("Iprime", (k,)))
        k += 1
    k = 1
    while k * (2 * k + 1) <= max_dim:
        out.append(("II", (k,)))
        k += 1
    k = 1
    while 2 ** (2 * k - 1) + 2 ** (k - 1) <= max_dim:
        out.append(("III", (k,)))
        k += 1
    k = 3
    while k * (2 * k - 1) <= max_dim:
        out.append(("IVprime", (k,)))
        out.append(("IV", (k,)))
        k += 1
    k = 3
    while 2 ** (2 * k - 1) - 2 ** (k - 1) <= max_dim:
        out.append(("V", (k,)))
        k += 1
    return out


def coincidences() -> list[tuple[tuple[str, tuple], tuple[str, tuple], bool]]:
    """Pairs claimed isomorphic (True) or non-isomorphic (False)."""
    return [
        (("II", (1,)), ("I", (2,)), True),
        (("III", (1,)), ("I", (2,)), True),
        (("III", (2,)), ("II", (2,)), True),
        (("IV", (3,)), ("I", (2, 2)), True),
        (("IV", (4,)), ("V", (3,)), False),
    ]


# ---------------------------------------------------------------------------
# generating-set certificates
# ---------------------------------------------------------------------------

def _e(m: int, *idx: int) -> Element:
    v = [0] * m
    for i in idx:
        v[i - 1] ^= 1
    return tuple(v)


def generating_certificate(family: str, params) -> dict:
    """A subset B of R that generates G, with both facts checked."""
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    R = make(family, params)
    G = R.group
    k = params[0]
    if family == "V":
        m = 2 * k
        B = [_e(m, 2 * i - 1, 2 * i) for i in range(1, k + 1)]
        B += [_e(m, 2 * i - 1, 2 * i, 2 * i + 1 if i < k else 1) for i in range(1, k + 1)]
    elif family == "III":
        m = 2 * k
        if k == 1:
            B = [_e(m, 1), _e(m, 1, 2)]
        else:
            B = [_e(m, 1)] + [_e(m, 2 * i - 1, 2 * i) for i in range(1, k + 1)]
            B += [_e(m, 2 * i - 1, 2 * i, 2 * i + 1) for i in range(1, k)]
    elif family == "Iprime":
        m = 2 * k + 1
        B = [_e(m, 2 * i - 1, 2 * i) for i in range(1, k + 1)] + [_e(m, 2 * i, m) for i in range(1, k + 1)]
        B.append(_e(m, *range(2 * k - 3, 2 * k + 2)))
    else:
        B = []
        span = {G.zero}
        for a in R.root_list:
            if a not in span:
                B.append(a)
                span = set(subgroup_generated(G, B))
    B = sorted(set(B))
    return {
        "set": [list(b) for b in B],
        "in_roots": all(b in R.roots for b in B),
        "generates": len(subgroup_generated(G, B)) == G.size,
    }
