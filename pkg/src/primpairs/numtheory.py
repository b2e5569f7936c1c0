"""Arithmetic functions on ordinary integers: factorization, phi, mu, omega, divisors."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

MAX_FACTOR_INPUT = 10**12


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``value`` as ascending ``(prime, exponent)`` pairs."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for q, e in self.factors:
            if q <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = q
            prod *= q**e
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]


def factorize(n: int) -> Factorization:
    """Factor ``n`` by trial division; ``n`` must lie in ``1..10**12``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}: need n >= 1")
    if n > MAX_FACTOR_INPUT:
        raise ValueError(f"cannot factor {n}: exceeds {MAX_FACTOR_INPUT}")
    factors = []
    m = n
    for q in (2, 3):
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e:
            factors.append((q, e))
    q = 5
    step = 2
    while q * q <= m:
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e:
            factors.append((q, e))
        q += step
        step = 6 - step
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def euler_phi(f: Factorization) -> int:
    result = 1
    for q, e in f.factors:
        result *= q ** (e - 1) * (q - 1)
    return result


def mobius(f: Factorization) -> int:
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def omega(f: Factorization) -> int:
    return len(f.factors)


def divisors(f: Factorization) -> list[int]:
    divs = [1]
    for q, e in f.factors:
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    q = 5
    r = isqrt(n)
    while q <= r:
        if n % q == 0 or n % (q + 2) == 0:
            return False
        q += 6
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes in the closed interval ``[lo, hi]`` (sieve of Eratosthenes)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray(b"\x01") * (hi + 1)
    sieve[:2] = b"\x00\x00"
    for q in range(2, isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytes(len(range(q * q, hi + 1, q)))
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]
