"""Exit criteria. Run ``pytest tests/test_acceptance.py`` (one summary line per
criterion at the end of the run) or ``python tests/test_acceptance.py``."""

import math
import os
import subprocess
import sys
import time
from functools import lru_cache

import pytest

from primpairs.bounds import verify_theorem, verify_weil
from primpairs.characters import all_characters
from primpairs.cli import parse_poly
from primpairs.corpus import ALPHAS, P_MAX, P_MIN, POLY_SPECS
from primpairs.counting import (
    HypothesisError, claim_terms, count_bruteforce, count_decomposition, make_instance, primitivity_indicator,
)
from primpairs.field import build_field
from primpairs.numtheory import euler_phi, primes_between
from primpairs.poly import Polynomial, distinct_root_count, is_dth_power

sys.path.insert(0, os.path.dirname(__file__))
from conftest import ACCEPTANCE_LINES  # noqa: E402
from oracles import consecutive_primitive_pairs, legendre_euler, naive_order  # noqa: E402

DECOMP_TOL = 1e-6
BOUND_TOL = 1e-6


def report(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@lru_cache(maxsize=1)
def grid():
    """Every admissible (p, alpha, f) of the corpus with its exact count and decomposition."""
    out = []
    for p in primes_between(P_MIN, P_MAX):
        field = build_field(p)
        for spec in POLY_SPECS:
            f = parse_poly(spec, field)
            for alpha in ALPHAS:
                try:
                    inst = make_instance(field, alpha, f)
                except HypothesisError:
                    continue
                out.append((inst, count_bruteforce(inst), count_decomposition(inst)))
    return out


def test_c1_oracle_equivalence():
    t0 = time.perf_counter()
    rows = grid()
    elapsed = time.perf_counter() - t0
    worst = max(abs(d.total - n) for _, n, d in rows)
    report("C1 oracle equivalence", worst < DECOMP_TOL and elapsed < 60,
           f"{len(rows)} instances, max |total - exact| = {worst:.2e}, {elapsed:.1f}s")


def test_c2_theorem():
    thetas = [verify_theorem(inst, n) for inst, n, _ in grid()]
    bad = [r for r in thetas if not r.theorem_holds]
    worst = max(abs(r.theta) for r in thetas)
    report("C2 theorem |theta| < 1", not bad, f"{len(thetas)} instances, max |theta| = {worst:.4f}, failures {len(bad)}")


def test_c3_indicator():
    worst_point, worst_sum, count = 0.0, 0.0, 0
    for p in primes_between(3, 300):
        field = build_field(p)
        values = [primitivity_indicator(field, n) for n in range(1, p)]
        truth = [naive_order(n, p) == p - 1 for n in range(1, p)]
        worst_point = max(worst_point, max(abs(v - t) for v, t in zip(values, truth)))
        worst_sum = max(worst_sum, abs(sum(values) - euler_phi(field.pm1_factored)))
        count += p - 1
    report("C3 Carlitz indicator", worst_point < 1e-6 and worst_sum < 1e-4,
           f"{count} points, max pointwise error {worst_point:.2e}, max sum error {worst_sum:.2e}")


def test_c4_claim1():
    worst = max(abs(d.term_s1) / inst.p for inst, _, d in grid())
    report("C4 Claim 1 exact zero", worst < 1e-9, f"max |s1|/p = {worst:.2e} (< 1e-9)")


def test_c5_claims_2_3():
    fails, margin2, margin3 = 0, math.inf, math.inf
    for inst, _, d in grid():
        s1, s2, s12 = claim_terms(inst, d)
        sq = 2**inst.omega_pm1 - 1
        base = inst.k * math.sqrt(inst.p)
        c2 = inst.density**2
        # scaled terms as returned, and the sums without the (phi/(p-1))^2 prefactor
        for lhs2, lhs3 in ((s2, s12), (s2 / c2, s12 / c2)):
            ok2 = lhs2 <= sq * base + BOUND_TOL
            ok3 = lhs3 <= sq**2 * base + BOUND_TOL
            fails += (not ok2) + (not ok3)
        margin2 = min(margin2, sq * base - s2 / c2)
        margin3 = min(margin3, sq**2 * base - s12 / c2)
    report("C5 Claims 2-3 bounds", fails == 0,
           f"{len(grid())} instances, min unscaled slack claim2 {margin2:.3f}, claim3 {margin3:.3f}")


def test_c6_weil():
    checked, fails, strict_findings = 0, 0, 0
    for p in primes_between(3, 100):
        field = build_field(p)
        for spec in POLY_SPECS:
            f = parse_poly(spec, field)
            if f.degree >= p:
                continue
            for chi in all_characters(field):
                if chi.is_principal or is_dth_power(f, chi.order, up_to_constant=True):
                    continue
                full, restricted = verify_weil(field, chi, f)
                k = int(f.degree)
                fails += full.lhs > (k - 1) * math.sqrt(p) + BOUND_TOL
                fails += restricted.lhs > (k - 1) * math.sqrt(p) + 1 + BOUND_TOL
                strict_findings += not restricted.strict_holds
                checked += 1
    report("C6 Weil bound", fails == 0,
           f"{checked} (chi, f) pairs, failures {fails}; nonzero-only sums over the strict bound: {strict_findings}")


def test_c7_specializations():
    fixtures_ok = (
        count_bruteforce(make_instance(build_field(5), 0, Polynomial.from_ints([1, 1], 5))) == 1
        and count_bruteforce(make_instance(build_field(7), 0, Polynomial.from_ints([1, 1], 7))) == 0
    )
    import csv, io
    res = subprocess.run(
        [sys.executable, "-m", "primpairs", "sweep", "--p-range", "3..200", "--alpha", "0", "--poly", "x+1",
         "--format", "csv"], capture_output=True, text=True)
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    mismatches = [r["p"] for r in rows if int(r["exact"]) != consecutive_primitive_pairs(int(r["p"]))]
    ok = fixtures_ok and res.returncode == 0 and len(rows) == len(primes_between(3, 200)) and not mismatches
    report("C7 specializations", ok, f"fixtures {'ok' if fixtures_ok else 'WRONG'}, "
           f"{len(rows)} sweep rows vs nested enumeration, mismatches {mismatches}")


def test_c8_remark():
    bad = []
    primes = primes_between(3, 500)
    for p in primes:
        f = Polynomial.from_ints([1, 0, 1], p)
        if distinct_root_count(f) != 1 + legendre_euler(-1, p):
            bad.append(p)
    report("C8 zeros of x^2+1", not bad, f"{len(primes)} primes, mismatches {bad}")


def test_c9_performance():
    t0 = time.perf_counter()
    res = subprocess.run(
        [sys.executable, "-m", "primpairs", "sweep", "--p-range", "5..1000", "--alpha", "0", "--poly", "x+1",
         "--parallelism", "4", "--format", "csv"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    nrows = len(res.stdout.splitlines()) - 1
    ok = res.returncode == 0 and elapsed < 120 and nrows == len(primes_between(5, 1000))
    report("C9 sweep 5..1000 performance", ok, f"{nrows} rows in {elapsed:.2f}s (exit {res.returncode})")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
