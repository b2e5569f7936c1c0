"""Multiplicative characters mod p.

``Character(field, a)`` is chi_a(n) = zeta**(a * ind(n)) with
zeta = exp(2*pi*i/(p-1)) and chi_a(0) = 0. Values are handled as exact
exponents mod p-1 and turned into complex numbers only when summed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .field import PrimeField
from .numtheory import divisors
from .poly import Polynomial, evaluate_all


class SumRange(enum.Enum):
    FULL_FIELD = "full"
    NONZERO_ONLY = "nonzero"


FullField = SumRange.FULL_FIELD
NonzeroOnly = SumRange.NONZERO_ONLY

#: Marker returned by ``eval_exponent`` at n = 0.
ZERO_VALUE = None


@dataclass(frozen=True, eq=False)
class Character:
    field: PrimeField
    a: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.field.order)

    def __eq__(self, other):
        return isinstance(other, Character) and other.field.p == self.field.p and other.a == self.a

    def __hash__(self):
        return hash((self.field.p, self.a))

    def __repr__(self):
        return f"Character(p={self.field.p}, a={self.a})"

    @property
    def order(self) -> int:
        m = self.field.order
        return m // gcd(self.a, m)

    @property
    def is_principal(self) -> bool:
        return self.a == 0

    def __call__(self, n: int) -> complex:
        e = eval_exponent(self, n)
        return 0j if e is ZERO_VALUE else unity_table(self.field.order)[e]


def unity_table(m: int) -> np.ndarray:
    """``zeta**e`` for e in 0..m-1, zeta = exp(2*pi*i/m)."""
    return _UNITY.setdefault(m, np.exp(2j * np.pi * np.arange(m) / m))


_UNITY: dict[int, np.ndarray] = {}


def principal(field: PrimeField) -> Character:
    return Character(field, 0)


def characters_of_order(field: PrimeField, d: int) -> list[Character]:
    """The phi(d) characters of exact order d, ascending by exponent."""
    m = field.order
    if d < 1 or m % d:
        raise ValueError(f"{d} does not divide p - 1 = {m}")
    step = m // d
    exps = sorted(step * t % m for t in range(1, d + 1) if gcd(t, d) == 1)
    return [Character(field, a) for a in exps]


def all_characters(field: PrimeField) -> list[Character]:
    return [c for d in divisors(field.pm1_factored) for c in characters_of_order(field, d)]


def eval_exponent(chi: Character, n: int) -> Optional[int]:
    """Exponent e with chi(n) = zeta**e, or ``ZERO_VALUE`` when n = 0 mod p."""
    n %= chi.field.p
    if n == 0:
        return ZERO_VALUE
    return chi.a * int(chi.field.index_table[n]) % chi.field.order


def char_power(chi: Character, e: int) -> Character:
    return Character(chi.field, chi.a * e)


def char_product(chi1: Character, chi2: Character) -> Character:
    if chi1.field.p != chi2.field.p:
        raise ValueError("characters live on different fields")
    return Character(chi1.field, chi1.a + chi2.a)


def accumulate(exponents: np.ndarray, m: int) -> complex:
    """Sum of zeta**e over an array of exact exponents mod m.

    Exponents are histogrammed exactly; the m-term weighted sum is then
    reduced by numpy's pairwise summation.
    """
    if exponents.size == 0:
        return 0j
    counts = np.bincount(exponents, minlength=m)
    return complex(np.sum(counts * unity_table(m)))


def _index_of_values(field: PrimeField, values: np.ndarray) -> np.ndarray:
    """ind(v) for each value, with -1 where v = 0."""
    return field.index_table[values]


def char_sum(chi: Character, f: Polynomial, domain: SumRange = FullField) -> complex:
    """Sum of chi(f(n)) over F_p or over its nonzero elements."""
    field = chi.field
    if f.p != field.p:
        raise ValueError("polynomial and character over different fields")
    vals = evaluate_all(f)
    if domain is NonzeroOnly:
        vals = vals[1:]
    ind = _index_of_values(field, vals)
    ind = ind[ind >= 0]
    return accumulate(chi.a * ind % field.order, field.order)


def product_sum(chis: Sequence[Character], fs: Sequence[Polynomial], domain: SumRange = NonzeroOnly) -> complex:
    """Sum of prod_i chi_i(f_i(n)); a term vanishes as soon as one f_i(n) = 0."""
    if not chis or len(chis) != len(fs):
        raise ValueError("need equally many characters and polynomials (at least one)")
    field = chis[0].field
    m = field.order
    start = 1 if domain is NonzeroOnly else 0
    total = np.zeros(field.p - start, dtype=np.int64)
    alive = np.ones(field.p - start, dtype=bool)
    for chi, f in zip(chis, fs):
        if chi.field.p != field.p or f.p != field.p:
            raise ValueError("mixed fields in product sum")
        ind = _index_of_values(field, evaluate_all(f)[start:])
        alive &= ind >= 0
        total = (total + chi.a * np.where(ind >= 0, ind, 0)) % m
    return accumulate(total[alive] % m, m)


def twisted_sum(chi1: Character, alpha: int, chi2: Character, f: Polynomial) -> complex:
    """Sum over n in 1..p-1 of chi1(n**alpha) * chi2(f(n)), via chi1(n**alpha) = chi1**alpha(n)."""
    field = chi1.field
    if f.coeffs[:1] in ((), (0,)):
        raise ValueError("f(0) = 0: f must be coprime to x")
    return product_sum([char_power(chi1, alpha), chi2], [Polynomial.x(field.p), f], NonzeroOnly)

