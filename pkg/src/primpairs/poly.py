"""Dense polynomials over F_p.

A polynomial is stored as a tuple of residues, index i holding the coefficient
of x**i, trailing zeros trimmed. The zero polynomial is the empty tuple and has
degree ``NEG_INF``.
"""

from __future__ import annotations

import math
from math import gcd
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .field import PrimeField

NEG_INF = -math.inf
MAX_DEGREE = 64


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError("coefficients must be reduced mod p")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_ints(cls, coeffs: Iterable[int], p: int) -> "Polynomial":
        return cls(_trim([c % p for c in coeffs]), p)

    @classmethod
    def x(cls, p: int) -> "Polynomial":
        return cls((0, 1), p)

    @classmethod
    def const(cls, c: int, p: int) -> "Polynomial":
        return cls.from_ints([c], p)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "Polynomial") -> "Polynomial":
        _same_p(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Polynomial.from_ints(a, self.p)

    def __neg__(self) -> "Polynomial":
        return Polynomial.from_ints([-c for c in self.coeffs], self.p)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        _same_p(self, other)
        if self.is_zero or other.is_zero:
            return Polynomial((), self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial.from_ints(out, self.p)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.const(1, self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        return Polynomial.from_ints([c * a for a in self.coeffs], self.p)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def _trim(a: list[int]) -> tuple[int, ...]:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _same_p(a: Polynomial, b: Polynomial) -> None:
    if a.p != b.p:
        raise ValueError(f"polynomials over different fields ({a.p} vs {b.p})")


def _check_field(f: Polynomial, field: PrimeField) -> None:
    if f.p != field.p:
        raise ValueError(f"polynomial over F_{f.p} used with F_{field.p}")


def evaluate(f: Polynomial, x: int, field: Optional[PrimeField] = None) -> int:
    """Horner evaluation of ``f`` at ``x``."""
    if field is not None:
        _check_field(f, field)
    p = f.p
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % p
    return acc


def evaluate_all(f: Polynomial) -> np.ndarray:
    """Values ``f(0), f(1), ..., f(p-1)`` as an int64 array (vectorized Horner)."""
    p = f.p
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = (acc * xs + c) % p
    return acc


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    _same_p(a, b)
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    p = a.p
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    inv_lc = pow(b.lc, -1, p)
    if len(rem) - 1 < db:
        return Polynomial((), p), a
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] * inv_lc % p
        if c:
            quot[i - db] = c
            for j, bc in enumerate(b.coeffs):
                rem[i - db + j] = (rem[i - db + j] - c * bc) % p
    return Polynomial.from_ints(quot, p), Polynomial.from_ints(rem[:db], p)


def poly_mod(a: Polynomial, b: Polynomial) -> Polynomial:
    return poly_divmod(a, b)[1]


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    q, r = poly_divmod(a, b)
    if not r.is_zero:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def monic(f: Polynomial) -> Polynomial:
    if f.is_zero:
        return f
    return f.scale(pow(f.lc, -1, f.p))


def derivative(f: Polynomial) -> Polynomial:
    return Polynomial.from_ints([i * c for i, c in enumerate(f.coeffs)][1:], f.p)


def poly_gcd(a: Polynomial, b: Polynomial, field: Optional[PrimeField] = None) -> Polynomial:
    """Monic greatest common divisor; gcd(0, 0) is rejected."""
    if field is not None:
        _check_field(a, field)
        _check_field(b, field)
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, poly_mod(a, b)
    return monic(a)


def powmod_x(e: int, modulus: Polynomial) -> Polynomial:
    """``x**e`` reduced modulo ``modulus`` by repeated squaring in F_p[x]/(modulus)."""
    p = modulus.p
    result = poly_mod(Polynomial.const(1, p), modulus)
    base = poly_mod(Polynomial.x(p), modulus)
    while e:
        if e & 1:
            result = poly_mod(result * base, modulus)
        base = poly_mod(base * base, modulus)
        e >>= 1
    return result


def distinct_root_count(f: Polynomial, field: Optional[PrimeField] = None) -> int:
    """R(f): the number of distinct zeros of ``f`` in F_p, as deg gcd(f, x^p - x)."""
    if field is not None:
        _check_field(f, field)
    if f.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    if f.degree == 0:
        return 0
    xp = powmod_x(f.p, f)
    return int(poly_gcd(f, xp - Polynomial.x(f.p)).degree)


def squarefree_multiplicities(f: Polynomial) -> dict[int, Polynomial]:
    """Yun's decomposition: multiplicity ``i`` -> product of irreducible factors of multiplicity ``i``.

    Only valid when ``deg f < p`` (no factor can have multiplicity divisible by p).
    """
    if f.degree < 1:
        return {}
    if f.degree >= f.p:
        raise ValueError("squarefree decomposition needs deg f < p")
    f = monic(f)
    df = derivative(f)
    a0 = poly_gcd(f, df)
    b = exact_div(f, a0)
    c = exact_div(df, a0)
    d = c - derivative(b)
    out = {}
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = c - derivative(b)
        if a.degree > 0:
            out[i] = a
        i += 1
    return out


def is_dth_power(
    f: Polynomial, d: int, field: Optional[PrimeField] = None, *, up_to_constant: bool = False
) -> bool:
    """Whether ``f = h**d`` for some ``h`` in F_p[x].

    With ``up_to_constant`` the leading coefficient is ignored, i.e. the test is
    whether ``f = c * h**d`` for some constant ``c``; that is the form excluded by
    the Weil bound.
    """
    if field is not None:
        _check_field(f, field)
    if d < 2:
        raise ValueError(f"d = {d}: need d >= 2")
    if f.is_zero or f.degree < 1:
        raise ValueError("need a polynomial of positive degree")
    if f.degree >= f.p:
        raise ValueError(f"deg f = {f.degree} must be below p = {f.p}")
    if any(i % d for i in squarefree_multiplicities(f)):
        return False
    if up_to_constant:
        return True
    p = f.p
    return pow(f.lc, (p - 1) // gcd(d, p - 1), p) == 1


@dataclass(frozen=True)
class AdmissibilityResult:
    coprime_to_x: bool
    offending_d: Optional[int]
    r_f: int

    @property
    def admissible(self) -> bool:
        return self.coprime_to_x and self.offending_d is None

    def reason(self) -> Optional[str]:
        """Human-readable name of the first violated hypothesis, if any."""
        if not self.coprime_to_x:
            return "f(x) and x are not coprime (f(0) = 0)"
        if self.offending_d is not None:
            return f"f is a constant times a d-th power for d = {self.offending_d}, which divides p - 1"
        return None


def check_admissibility(f: Polynomial, field: PrimeField) -> AdmissibilityResult:
    """Test the counting hypotheses: f(0) != 0 and f is no d-th power for d | p-1, d > 1.

    Prime divisors q of p-1 suffice. The d-th power test is taken up to a
    constant factor.
    """
    _check_field(f, field)
    if f.degree < 1:
        raise ValueError("admissibility needs a nonconstant polynomial")
    offending = next(
        (q for q in field.pm1_factored.primes if is_dth_power(f, q, up_to_constant=True)),
        None,
    )
    return AdmissibilityResult(
        coprime_to_x=f.coeffs[0] != 0,
        offending_d=offending,
        r_f=distinct_root_count(f),
    )


def from_roots(roots: Sequence[int], p: int) -> Polynomial:
    f = Polynomial.const(1, p)
    for a in roots:
        f = f * Polynomial.from_ints([-a, 1], p)
    return f
