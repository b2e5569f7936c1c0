"""The prime field F_p: smallest primitive root, discrete-log table, element orders."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .numtheory import Factorization, factorize, is_prime

MAX_FIELD_PRIME = 10**7


class ZeroInverseError(ZeroDivisionError):
    """Raised when 0 is raised to a negative power (an evaluation at a zero of f)."""


@dataclass(frozen=True, eq=False)
class PrimeField:
    """An odd prime ``p`` with ``p - 1`` factored, a primitive root and its index table.

    ``index_table[n]`` is ``ind(n)`` for ``n`` in ``1..p-1``; slot 0 holds -1.
    ``power_table[e]`` is ``g**e mod p`` for ``e`` in ``0..p-2``.
    """

    p: int
    pm1_factored: Factorization
    g: int
    index_table: np.ndarray = dc_field(repr=False)
    power_table: np.ndarray = dc_field(repr=False)

    @property
    def order(self) -> int:
        """Order of the multiplicative group, ``p - 1``."""
        return self.p - 1

    def ind(self, n: int) -> int:
        n %= self.p
        if n == 0:
            raise ValueError("0 has no discrete logarithm")
        return int(self.index_table[n])


def _is_generator(g: int, p: int, pm1_primes: list[int]) -> bool:
    return all(pow(g, (p - 1) // q, p) != 1 for q in pm1_primes)


def _power_table(g: int, p: int) -> np.ndarray:
    # g^(i*B + j) = (g^B)^i * g^j; every product stays below p^2 < 2^63.
    m = p - 1
    block = max(1, isqrt(m))
    small = np.empty(block, dtype=np.int64)
    acc = 1
    for j in range(block):
        small[j] = acc
        acc = acc * g % p
    g_block = acc
    rows = -(-m // block)
    big = np.empty(rows, dtype=np.int64)
    acc = 1
    for i in range(rows):
        big[i] = acc
        acc = acc * g_block % p
    return ((big[:, None] * small[None, :]) % p).ravel()[:m]


@lru_cache(maxsize=64)
def build_field(p: int) -> PrimeField:
    """Construct F_p with its smallest primitive root and full index table."""
    if p == 2:
        raise ValueError("p = 2 is not an odd prime")
    if p < 3 or p > MAX_FIELD_PRIME:
        raise ValueError(f"p = {p} outside supported range 3..{MAX_FIELD_PRIME}")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    pm1 = factorize(p - 1)
    g = next(c for c in range(2, p) if _is_generator(c, p, pm1.primes))
    powers = _power_table(g, p)
    index = np.full(p, -1, dtype=np.int64)
    index[powers] = np.arange(p - 1, dtype=np.int64)
    powers.setflags(write=False)
    index.setflags(write=False)
    return PrimeField(p, pm1, g, index, powers)


def pow_mod(field: PrimeField, base: int, exp: int) -> int:
    """``base**exp mod p``; a negative exponent raises the inverse of ``base``."""
    p = field.p
    base %= p
    if exp < 0:
        if base == 0:
            raise ZeroInverseError("0 has no inverse mod p")
        return pow(pow(base, -1, p), -exp, p)
    return pow(base, exp, p)


def element_order(field: PrimeField, n: int) -> int:
    m = field.order
    return m // gcd(field.ind(n), m)


def is_primitive_root(field: PrimeField, n: int) -> bool:
    n %= field.p
    if n == 0:
        return False
    return gcd(int(field.index_table[n]), field.order) == 1


def primitive_root_mask(field: PrimeField) -> np.ndarray:
    """Boolean array over residues ``0..p-1``: True exactly at the primitive roots."""
    m = field.order
    ind = field.index_table
    mask = np.zeros(field.p, dtype=bool)
    mask[1:] = np.gcd(ind[1:], m) == 1
    return mask
