"""Exact arithmetic in Q(zeta_N), power basis modulo the N-th cyclotomic polynomial."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

import mpmath

MAX_MODULUS = 64

Rational = Union[int, Fraction]


class ModulusMismatch(ValueError):
    pass


class NotReal(ValueError):
    pass


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Division of polynomials (low-to-high coefficient lists), den monic or rational."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            c = c // lead if isinstance(c, int) and isinstance(lead, int) and c % lead == 0 else Fraction(c) / lead
            q[shift] = c
            for k, d in enumerate(den):
                num[shift + k] -= c * d
    rem = num[: len(den) - 1] or [0]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Phi_N as integer coefficients, lowest degree first.

    Obtained by dividing x^N - 1 by Phi_d for every proper divisor d of N.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(int(c) for c in poly)


def euler_phi(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


class _Field(NamedTuple):
    phi: tuple[int, ...]
    degree: int
    powers: tuple[tuple[int, ...], ...]  # x^e mod Phi_N for e in [0, N)


@lru_cache(maxsize=None)
def _field(N: int) -> _Field:
    if N > MAX_MODULUS:
        raise ValueError(f"modulus {N} exceeds the configured bound {MAX_MODULUS}")
    phi = cyclotomic_polynomial(N)
    d = len(phi) - 1
    powers = []
    v = [1] + [0] * (d - 1)
    for _ in range(N):
        powers.append(tuple(v))
        # multiply by x
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            v = [c - top * p for c, p in zip(v, phi)]
    return _Field(phi, d, tuple(powers))


def _norm(c) -> tuple:
    return tuple(x.numerator if type(x) is Fraction and x.denominator == 1 else x for x in c)


class CyclotomicNumber:
    """An element of Q(zeta_N) stored as phi(N) rational coordinates."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs):
        self.modulus = modulus
        self.coeffs = _norm(coeffs)

    # constructors -------------------------------------------------------
    @classmethod
    def root(cls, modulus: int, exponent: int) -> CyclotomicNumber:
        return cls(modulus, _field(modulus).powers[exponent % modulus])

    @classmethod
    def scalar(cls, modulus: int, value: Rational) -> CyclotomicNumber:
        d = _field(modulus).degree
        return cls(modulus, (value,) + (0,) * (d - 1))

    @classmethod
    def zero(cls, modulus: int) -> CyclotomicNumber:
        return cls.scalar(modulus, 0)

    @classmethod
    def one(cls, modulus: int) -> CyclotomicNumber:
        return cls.scalar(modulus, 1)

    @classmethod
    def from_exponents(cls, modulus: int, terms: dict[int, Rational]) -> CyclotomicNumber:
        """Sum of c * zeta^e over ``terms = {e: c}``."""
        F = _field(modulus)
        acc = [0] * F.degree
        for e, c in terms.items():
            if c:
                for k, p in enumerate(F.powers[e % modulus]):
                    if p:
                        acc[k] += c * p
        return cls(modulus, acc)

    # helpers ------------------------------------------------------------
    def _coerce(self, other) -> CyclotomicNumber:
        if isinstance(other, CyclotomicNumber):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"Q(zeta_{self.modulus}) vs Q(zeta_{other.modulus})")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.scalar(self.modulus, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def lift(self, modulus: int) -> CyclotomicNumber:
        """Image under Q(zeta_n) -> Q(zeta_m), zeta_n -> zeta_m^(m/n)."""
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ModulusMismatch(f"{self.modulus} does not divide {modulus}")
        step = modulus // self.modulus
        return CyclotomicNumber.from_exponents(modulus, {k * step: c for k, c in enumerate(self.coeffs)})

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.modulus, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.modulus, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.modulus, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.modulus, [x * other for x in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        d = len(a)
        if d == 1:
            return CyclotomicNumber(self.modulus, (a[0] * b[0],))
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        phi = _field(self.modulus).phi
        for e in range(2 * d - 2, d - 1, -1):
            c = prod[e]
            if c:
                prod[e] = 0
                for k in range(d):
                    if phi[k]:
                        prod[e - d + k] -= c * phi[k]
        return CyclotomicNumber(self.modulus, prod[:d])

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        phi = list(_field(self.modulus).phi)
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [0], [1]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r1 is a nonzero constant
        c = Fraction(r1[0])
        coeffs = [Fraction(x) / c for x in s1]
        d = len(phi) - 1
        coeffs += [0] * (d - len(coeffs))
        return CyclotomicNumber(self.modulus, coeffs[:d])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.modulus, [Fraction(x) / other for x in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.one(self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> CyclotomicNumber:
        """Complex conjugation zeta^e -> zeta^(N-e)."""
        N = self.modulus
        return CyclotomicNumber.from_exponents(N, {(-k) % N: c for k, c in enumerate(self.coeffs)})

    def is_real(self) -> bool:
        return self.conj() == self

    def root_exponent(self) -> int | None:
        """e with self == zeta_N^e, if self is an N-th root of unity."""
        powers = _field(self.modulus).powers
        for e in range(self.modulus):
            if powers[e] == self.coeffs:
                return e
        return None

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"Q(zeta_{self.modulus}) vs Q(zeta_{other.modulus})")
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.modulus, self.coeffs))

    def __complex__(self) -> complex:
        N = self.modulus
        return sum(
            (complex(float(c)) * complex(math.cos(2 * math.pi * k / N), math.sin(2 * math.pi * k / N))
             for k, c in enumerate(self.coeffs) if c),
            0j,
        )

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.modulus}^{k}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def zeta(modulus: int, exponent: int = 1) -> CyclotomicNumber:
    return CyclotomicNumber.root(modulus, exponent)


def add(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x + y


def mul(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x * y


def neg(x: CyclotomicNumber) -> CyclotomicNumber:
    return -x


def conj(x: CyclotomicNumber) -> CyclotomicNumber:
    return x.conj()


def sign_of_real(x: CyclotomicNumber, max_prec: int = 1 << 14) -> int:
    """Sign (-1, 0, 1) of a conjugation-fixed element, certified by interval arithmetic."""
    if not x.is_real():
        raise NotReal(f"{x!r} is not fixed by complex conjugation")
    if x.is_zero():
        return 0
    N = x.modulus
    iv = mpmath.iv
    saved = iv.prec
    prec = 64
    try:
        while prec <= max_prec:
            iv.prec = prec
            total = iv.mpf(0)
            for k, c in enumerate(x.coeffs):
                if c:
                    frac = Fraction(c)
                    total += iv.mpf(frac.numerator) / frac.denominator * iv.cos(2 * iv.pi * k / N)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
    finally:
        iv.prec = saved
    raise ArithmeticError(f"could not certify the sign of {x!r}")


def certify_positive_real(x: CyclotomicNumber) -> bool:
    """True iff x is a real number > 0.  Raises NotReal if conj(x) != x."""
    return sign_of_real(x) > 0


def mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result
