"""Counting pairs (xi, xi^alpha f(xi)) of simultaneous primitive roots mod p.

Two independent routes:

* ``count_bruteforce`` walks F_p^* and tests primitivity through the index
  table (gcd(ind, p-1) = 1).
* ``count_decomposition`` expands the product of two Carlitz indicators into
  character sums and evaluates every inner sum over n for every pair of
  characters of squarefree order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .characters import characters_of_order, unity_table
from .field import PrimeField, is_primitive_root, pow_mod
from .numtheory import divisors, euler_phi, factorize, mobius, omega
from .poly import AdmissibilityResult, Polynomial, check_admissibility, evaluate, evaluate_all

#: Absolute tolerance for comparing the decomposition against the exact count.
DECOMPOSITION_TOL = 1e-6
#: The decomposition materializes (p-1) x (p-1) character tables.
DECOMPOSITION_MAX_P = 2000


class HypothesisError(ValueError):
    """The instance violates a hypothesis of the counting theorem."""


class VerificationError(RuntimeError):
    """An internal consistency check failed; this signals a bug."""


@dataclass(frozen=True)
class PairCountInstance:
    field: PrimeField
    alpha: int
    f: Polynomial
    admissibility: AdmissibilityResult

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def k(self) -> int:
        return int(self.f.degree)

    @property
    def r_f(self) -> int:
        return self.admissibility.r_f

    @property
    def omega_pm1(self) -> int:
        return omega(self.field.pm1_factored)

    @property
    def phi_pm1(self) -> int:
        return euler_phi(self.field.pm1_factored)

    @property
    def density(self) -> float:
        """phi(p-1)/(p-1), the proportion of primitive roots in F_p^*."""
        return self.phi_pm1 / (self.p - 1)


def make_instance(
    field: PrimeField, alpha: int, f: Polynomial, *, allow_inadmissible: bool = False
) -> PairCountInstance:
    if f.p != field.p:
        raise ValueError(f"polynomial over F_{f.p} used with F_{field.p}")
    if f.degree < 1:
        raise HypothesisError("f must have positive degree")
    if f.degree >= field.p:
        raise HypothesisError(f"deg f = {f.degree} must be below p = {field.p}")
    adm = check_admissibility(f, field)
    if not adm.admissible and not allow_inadmissible:
        raise HypothesisError(adm.reason())
    return PairCountInstance(field, alpha, f, adm)


def carlitz_weights(field: PrimeField) -> tuple[np.ndarray, np.ndarray]:
    """Exponents ``a`` of all characters with mu(ord) != 0, and weights mu(d)/phi(d).

    The principal character comes first.
    """
    exps, weights = [], []
    for d in divisors(field.pm1_factored):
        fd = factorize(d)
        mu = mobius(fd)
        if mu == 0:
            continue
        w = mu / euler_phi(fd)
        for chi in characters_of_order(field, d):
            exps.append(chi.a)
            weights.append(w)
    return np.array(exps, dtype=np.int64), np.array(weights)


def primitivity_indicator(field: PrimeField, n: int) -> float:
    """Carlitz's character-sum expression for [n is a primitive root]."""
    n %= field.p
    if n == 0:
        raise ValueError("the indicator is defined on F_p^* only")
    m = field.order
    pm1 = field.pm1_factored
    ind_n = int(field.index_table[n])
    zeta = unity_table(m)
    total = 0j
    for d in divisors(pm1):
        fd = factorize(d)
        mu = mobius(fd)
        if mu == 0:
            continue
        inner = sum(zeta[chi.a * ind_n % m] for chi in characters_of_order(field, d))
        total += mu / euler_phi(fd) * inner
    value = euler_phi(pm1) / m * total
    if abs(value.imag) > DECOMPOSITION_TOL:
        raise VerificationError(f"indicator at n={n} has imaginary part {value.imag:g}")
    return value.real


def pair_values(inst: PairCountInstance) -> np.ndarray:
    """``xi**alpha * f(xi) mod p`` for xi in 1..p-1."""
    field = inst.field
    m = field.order
    ind = field.index_table[1:]
    xi_pow = field.power_table[(inst.alpha * ind) % m]
    return xi_pow * evaluate_all(inst.f)[1:] % field.p


def count_bruteforce(inst: PairCountInstance) -> int:
    """N(alpha, f; p): xi in F_p^* with xi and xi^alpha f(xi) both primitive roots."""
    field = inst.field
    m = field.order
    ind = field.index_table
    xi_ok = np.gcd(ind[1:], m) == 1
    vals = pair_values(inst)
    val_ok = (vals != 0) & (np.gcd(ind[vals], m) == 1)
    return int(np.count_nonzero(xi_ok & val_ok))


def primitive_pairs(inst: PairCountInstance) -> list[int]:
    """The xi counted by ``count_bruteforce``, ascending (scalar loop)."""
    field = inst.field
    out = []
    for xi in range(1, field.p):
        fx = evaluate(inst.f, xi)
        if fx and is_primitive_root(field, xi) and is_primitive_root(field, pow_mod(field, xi, inst.alpha) * fx):
            out.append(xi)
    return out


@dataclass(frozen=True)
class DecompositionResult:
    """The character-sum expansion of N(alpha, f; p).

    ``term_s1`` is the first correction exactly as a sum of chi1(n) over all of
    F_p^*, which vanishes by orthogonality. The true d2 = 1 contribution also
    carries chi0(f(n)), which kills the zeros of f; the difference is kept in
    ``term_zero_correction`` so that ``total`` reproduces the exact count.
    """

    main_term: float
    term_s1: complex
    term_zero_correction: complex
    term_s2: complex
    term_s12: complex
    total: float
    char_exponents: np.ndarray = dc_field(repr=False)
    char_weights: np.ndarray = dc_field(repr=False)
    inner_s2: np.ndarray = dc_field(repr=False)
    inner_s12: np.ndarray = dc_field(repr=False)

    @property
    def imag_residual(self) -> float:
        return abs((self.term_s1 + self.term_zero_correction + self.term_s2 + self.term_s12).imag)


def count_decomposition(inst: PairCountInstance) -> DecompositionResult:
    field = inst.field
    p, m = field.p, field.order
    if p > DECOMPOSITION_MAX_P:
        raise ValueError(f"decomposition is limited to p <= {DECOMPOSITION_MAX_P}")
    c2 = inst.density**2
    zeta = unity_table(m)

    exps, weights = carlitz_weights(field)
    exps, weights = exps[1:], weights[1:]  # drop the principal character (d = 1)

    u = field.index_table[1:]  # ind(n), n = 1..p-1
    fvals = evaluate_all(inst.f)[1:]
    alive = fvals != 0
    v = (inst.alpha * u + field.index_table[fvals]) % m  # ind(n^alpha f(n)) where alive

    chi_n = zeta[np.outer(exps, u) % m]  # chi_a(n)
    chi_pair = zeta[np.outer(exps, v) % m] * alive  # chi_a(n^alpha f(n)), 0 at zeros of f

    inner_s1 = chi_n.sum(axis=1)
    roots = np.flatnonzero(~alive)
    inner_zero = -chi_n[:, roots].sum(axis=1)
    inner_s2 = chi_pair.sum(axis=1)
    inner_s12 = chi_n @ chi_pair.T  # [a1, a2] -> sum_n chi_a1(n) chi_a2(n^alpha f(n))

    main = (p - 1 - inst.r_f) * c2
    s1 = c2 * complex(weights @ inner_s1)
    zc = c2 * complex(weights @ inner_zero)
    s2 = c2 * complex(weights @ inner_s2)
    s12 = c2 * complex(weights @ inner_s12 @ weights)
    rest = s1 + zc + s2 + s12
    if abs(rest.imag) > DECOMPOSITION_TOL:
        raise VerificationError(f"decomposition has imaginary residue {rest.imag:g}")
    return DecompositionResult(
        main_term=main,
        term_s1=s1,
        term_zero_correction=zc,
        term_s2=s2,
        term_s12=s12,
        total=main + rest.real,
        char_exponents=exps,
        char_weights=weights,
        inner_s2=inner_s2,
        inner_s12=inner_s12,
    )


def claim_terms(inst: PairCountInstance, decomp: Optional[DecompositionResult] = None) -> tuple[float, float, float]:
    """Magnitudes of the three correction terms (s1, s2, s12)."""
    if decomp is None:
        decomp = count_decomposition(inst)
    return abs(decomp.term_s1), abs(decomp.term_s2), abs(decomp.term_s12)


def search_existence(field: PrimeField, f: Polynomial) -> Optional[int]:
    """Smallest xi with xi and f(xi) both primitive roots, or None."""
    if f.degree < 1:
        raise ValueError("f must be nonconstant")
    ind = field.index_table
    m = field.order
    vals = evaluate_all(f)
    xs = np.arange(1, field.p)
    ok = (np.gcd(ind[1:], m) == 1) & (vals[1:] != 0) & (np.gcd(ind[vals[1:]], m) == 1)
    hits = xs[ok]
    return int(hits[0]) if hits.size else None


def han_zhang_instance(field: PrimeField, m_coef: int, n_coef: int, k: int) -> tuple[int, Polynomial]:
    """Rewrite the pair (xi, m*xi^k + n*xi) as (xi, xi^alpha f(xi)).

    k > 1 gives alpha = 1, f = m x^(k-1) + n; k < 1 gives alpha = k,
    f = n x^(1-k) + m.
    """
    p = field.p
    if k == 1:
        raise ValueError("k = 1 is excluded")
    if k > 1:
        coeffs = [0] * k
        coeffs[0] += n_coef
        coeffs[k - 1] += m_coef
        return 1, Polynomial.from_ints(coeffs, p)
    coeffs = [0] * (2 - k)
    coeffs[0] += m_coef
    coeffs[1 - k] += n_coef
    return k, Polynomial.from_ints(coeffs, p)

