"""Numerical checks of the character-sum bounds and of the counting estimate.

Every check yields a ``BoundCheckRecord``. Where a sum runs over F_p^* but the
classical bound is stated over all of F_p, the record carries both the bound
used for pass/fail (one extra unit of slack for the missing n = 0 term) and
the strict form, whose failure is reported as a finding only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .characters import (
    Character,
    FullField,
    NonzeroOnly,
    all_characters,
    char_power,
    char_sum,
    product_sum,
    twisted_sum,
)
from .counting import (
    DECOMPOSITION_TOL,
    DecompositionResult,
    HypothesisError,
    PairCountInstance,
    count_bruteforce,
    count_decomposition,
)
from .field import PrimeField
from .poly import Polynomial, is_dth_power, poly_gcd

BOUND_TOL = 1e-6


@dataclass(frozen=True)
class BoundCheckRecord:
    lemma_id: str
    lhs: float
    rhs: float
    strict_rhs: Optional[float] = None
    branch: Optional[str] = None
    detail: Optional[str] = None
    slack: float = dc_field(init=False)
    holds: bool = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "slack", self.rhs - self.lhs)
        object.__setattr__(self, "holds", self.slack >= -BOUND_TOL)

    @property
    def strict_holds(self) -> bool:
        rhs = self.rhs if self.strict_rhs is None else self.strict_rhs
        return rhs - self.lhs >= -BOUND_TOL


def _require_screen(chi: Character, f: Polynomial, label: str) -> None:
    if chi.is_principal:
        raise HypothesisError(f"{label}: the character must be non-principal")
    if f.degree < 1:
        raise HypothesisError(f"{label}: polynomial must have positive degree")
    d = chi.order
    if is_dth_power(f, d, up_to_constant=True):
        raise HypothesisError(f"{label}: f = {f} is a constant times a {d}-th power")


def verify_weil(field: PrimeField, chi: Character, f: Polynomial) -> tuple[BoundCheckRecord, BoundCheckRecord]:
    """Weil's bound for sum chi(f(n)): over F_p, and over F_p^* with one unit of slack."""
    _require_screen(chi, f, "Weil")
    sqrt_p = math.sqrt(field.p)
    k = int(f.degree)
    full = abs(char_sum(chi, f, FullField))
    restricted = abs(char_sum(chi, f, NonzeroOnly))
    return (
        BoundCheckRecord("Weil", full, (k - 1) * sqrt_p, branch="full-field"),
        BoundCheckRecord(
            "Weil", restricted, (k - 1) * sqrt_p + 1, strict_rhs=(k - 1) * sqrt_p, branch="nonzero-only"
        ),
    )


def verify_wan(field: PrimeField, chis: Sequence[Character], fs: Sequence[Polynomial]) -> BoundCheckRecord:
    """Wan's bound for sum over F_p^* of prod chi_i(f_i(n))."""
    if not chis or len(chis) != len(fs):
        raise ValueError("need equally many characters and polynomials (at least one)")
    for i, (chi, f) in enumerate(zip(chis, fs)):
        _require_screen(chi, f, f"Wan (factor {i + 1})")
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if poly_gcd(fs[i], fs[j]).degree > 0:
                raise HypothesisError(f"Wan: f_{i + 1} and f_{j + 1} are not coprime")
    sqrt_p = math.sqrt(field.p)
    ksum = sum(int(f.degree) for f in fs)
    lhs = abs(product_sum(chis, fs, NonzeroOnly))
    return BoundCheckRecord("Wan", lhs, (ksum - 1) * sqrt_p + 1, strict_rhs=(ksum - 1) * sqrt_p)


def lemma4_bound(p: int, k: int, principal: bool) -> tuple[float, float]:
    """(bound used for pass/fail, strict bound) for a twisted sum."""
    sqrt_p = math.sqrt(p)
    if principal:
        return (k - 1) * sqrt_p + 1, (k - 1) * sqrt_p
    return k * sqrt_p, k * sqrt_p


def verify_lemma4(
    field: PrimeField, chi1: Character, alpha: int, chi2: Character, f: Polynomial
) -> BoundCheckRecord:
    _require_screen(chi2, f, "Lemma4")
    if f.coeffs[0] == 0:
        raise HypothesisError("Lemma4: f(x) and x must be coprime")
    principal = char_power(chi1, alpha).is_principal
    rhs, strict = lemma4_bound(field.p, int(f.degree), principal)
    lhs = abs(twisted_sum(chi1, alpha, chi2, f))
    return BoundCheckRecord(
        "Lemma4", lhs, rhs, strict_rhs=strict, branch="principal" if principal else "non-principal"
    )


@dataclass(frozen=True)
class TheoremReport:
    p: int
    alpha: int
    f_description: str
    k: int
    r_f: int
    omega_pm1: int
    phi_pm1: int
    exact_count: int
    main_term: float
    error_bound: float
    theta: float
    theorem_holds: bool
    hypothesis_violation: Optional[str] = None
    near_boundary: bool = False


def main_term(inst: PairCountInstance) -> float:
    return (inst.p - 1 - inst.r_f) * inst.density**2


def error_bound(inst: PairCountInstance) -> float:
    return inst.k * 4**inst.omega_pm1 * math.sqrt(inst.p) * inst.density**2


def verify_theorem(inst: PairCountInstance, exact: Optional[int] = None) -> TheoremReport:
    """Exact count against main term +- error bound; theta = (exact - main) / bound."""
    if exact is None:
        exact = count_bruteforce(inst)
    main = main_term(inst)
    bound = error_bound(inst)
    theta = (exact - main) / bound
    return TheoremReport(
        p=inst.p,
        alpha=inst.alpha,
        f_description=str(inst.f),
        k=inst.k,
        r_f=inst.r_f,
        omega_pm1=inst.omega_pm1,
        phi_pm1=inst.phi_pm1,
        exact_count=exact,
        main_term=main,
        error_bound=bound,
        theta=theta,
        theorem_holds=abs(theta) < 1,
        hypothesis_violation=inst.admissibility.reason(),
        near_boundary=abs(abs(theta) - 1) < BOUND_TOL,
    )


def verify_claims(inst: PairCountInstance, decomp: Optional[DecompositionResult] = None) -> list[BoundCheckRecord]:
    """Claims 1-3 on the unscaled correction sums, plus the worst inner twisted sum.

    The correction terms of the decomposition carry the factor
    (phi(p-1)/(p-1))**2; the claim bounds apply to the sums without it.
    """
    if decomp is None:
        decomp = count_decomposition(inst)
    c2 = inst.density**2
    sqrt_p = math.sqrt(inst.p)
    k = inst.k
    sq = 2**inst.omega_pm1 - 1
    records = [
        BoundCheckRecord("Claim1", abs(decomp.term_s1) / c2, 1e-9 * inst.p),
        BoundCheckRecord("Claim2", abs(decomp.term_s2) / c2, sq * k * sqrt_p),
        BoundCheckRecord("Claim3", abs(decomp.term_s12) / c2, sq**2 * k * sqrt_p),
    ]
    records.append(_worst_inner_sum(inst, decomp))
    return records


def _worst_inner_sum(inst: PairCountInstance, decomp: DecompositionResult) -> BoundCheckRecord:
    # Each inner sum is a twisted sum: chi2(n^a f(n)) = chi2^a(n) chi2(f(n)) and
    # chi1(n) chi2(n^a f(n)) = (chi1 chi2^a)(n) chi2(f(n)).
    m = inst.field.order
    exps = decomp.char_exponents
    if exps.size == 0:
        return BoundCheckRecord("Lemma4", 0.0, 0.0, detail="no non-principal characters")
    tw_s2 = (inst.alpha * exps) % m == 0
    tw_s12 = (exps[:, None] + inst.alpha * exps[None, :]) % m == 0
    hi, _ = lemma4_bound(inst.p, inst.k, True)
    nonp, _ = lemma4_bound(inst.p, inst.k, False)
    rhs_s2 = np.where(tw_s2, hi, nonp)
    rhs_s12 = np.where(tw_s12, hi, nonp)
    slack_s2 = rhs_s2 - np.abs(decomp.inner_s2)
    slack_s12 = rhs_s12 - np.abs(decomp.inner_s12)
    if slack_s2.min() <= slack_s12.min():
        i = int(slack_s2.argmin())
        principal = bool(tw_s2[i])
        lhs = float(abs(decomp.inner_s2[i]))
        detail = f"chi2=chi_{exps[i]}"
    else:
        i, j = np.unravel_index(int(slack_s12.argmin()), slack_s12.shape)
        principal = bool(tw_s12[i, j])
        lhs = float(abs(decomp.inner_s12[i, j]))
        detail = f"chi1=chi_{exps[i]}, chi2=chi_{exps[j]}"
    rhs, strict = lemma4_bound(inst.p, inst.k, principal)
    return BoundCheckRecord(
        "Lemma4", lhs, rhs, strict_rhs=strict, branch="principal" if principal else "non-principal", detail=detail
    )


def verify_chain(inst: PairCountInstance, exact: int, decomp: DecompositionResult) -> list[BoundCheckRecord]:
    """The closing inequality chain, one record per link.

    |N - main| <= sum of |correction terms|
               <= (2^w - 1) k sqrt(p) c2 + (2^w - 1)^2 k sqrt(p) c2 + |zero correction|
               <  k 4^w sqrt(p) c2
    """
    c2 = inst.density**2
    sqrt_p = math.sqrt(inst.p)
    sq = 2**inst.omega_pm1 - 1
    deviation = abs(exact - decomp.main_term)
    zc = abs(decomp.term_zero_correction)
    parts = abs(decomp.term_s1) + zc + abs(decomp.term_s2) + abs(decomp.term_s12)
    claims = (sq + sq**2) * inst.k * sqrt_p * c2 + zc
    return [
        BoundCheckRecord("Chain", deviation, parts, detail="triangle inequality"),
        BoundCheckRecord("Chain", parts, claims, detail="claim bounds"),
        BoundCheckRecord("Chain", claims, error_bound(inst), detail="closing estimate"),
    ]


def decomposition_matches(exact: int, decomp: DecompositionResult) -> bool:
    return abs(decomp.total - exact) < DECOMPOSITION_TOL


def weil_grid(field: PrimeField, fs: Sequence[Polynomial]) -> tuple[list[tuple[Character, Polynomial, BoundCheckRecord]], list[str]]:
    """Weil records for every non-principal character and every polynomial passing the screen."""
    rows = []
    skipped = []
    for f in fs:
        for chi in all_characters(field):
            if chi.is_principal:
                continue
            try:
                full, restricted = verify_weil(field, chi, f)
            except HypothesisError as exc:
                skipped.append(f"p={field.p} chi_{chi.a}: {exc}")
                continue
            rows.append((chi, f, full))
            rows.append((chi, f, restricted))
    return rows, skipped

