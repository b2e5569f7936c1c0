import math

import pytest

from primpairs.bounds import (
    BoundCheckRecord, error_bound, main_term, verify_chain, verify_claims, verify_lemma4,
    verify_theorem, verify_wan, verify_weil, weil_grid,
)
from primpairs.characters import Character, characters_of_order
from primpairs.counting import HypothesisError, count_bruteforce, count_decomposition, make_instance
from primpairs.field import build_field
from primpairs.numtheory import primes_between
from primpairs.poly import Polynomial, is_dth_power

P = Polynomial.from_ints


def test_record_holds_flag():
    assert BoundCheckRecord("Weil", 1.0, 1.0 - 5e-7).holds
    assert not BoundCheckRecord("Weil", 1.0, 1.0 - 2e-6).holds
    r = BoundCheckRecord("Weil", 1.0, 1.5, strict_rhs=0.5)
    assert r.slack == 0.5 and r.holds and not r.strict_holds


def test_weil_examples():
    F3 = build_field(3)
    full, _ = verify_weil(F3, Character(F3, 1), P([1, 0, 1], 3))
    assert full.lhs == pytest.approx(1) and full.rhs == pytest.approx(math.sqrt(3)) and full.holds
    F5 = build_field(5)
    full, restricted = verify_weil(F5, Character(F5, 2), P([1, 1], 5))
    assert full.lhs == pytest.approx(0, abs=1e-12) and full.rhs == 0 and full.holds
    assert restricted.lhs == pytest.approx(1) and restricted.holds and not restricted.strict_holds
    full, _ = verify_weil(F5, Character(F5, 1), P([0, 0, 1], 5))
    assert full.lhs == pytest.approx(0, abs=1e-12) and full.holds


def test_weil_rejections():
    F5 = build_field(5)
    with pytest.raises(HypothesisError):
        verify_weil(F5, Character(F5, 0), P([1, 1], 5))
    with pytest.raises(HypothesisError):
        verify_weil(F5, Character(F5, 2), P([0, 0, 1], 5))
    with pytest.raises(HypothesisError):
        verify_weil(F5, Character(F5, 2), P([0, 0, 2], 5))


def test_wan():
    F7 = build_field(7)
    quad, cubic = Character(F7, 3), Character(F7, 2)
    r = verify_wan(F7, [quad, cubic], [P([1, 1], 7), P([2, 1], 7)])
    assert r.lhs == pytest.approx(math.sqrt(3))
    assert r.rhs == pytest.approx(math.sqrt(7) + 1) and r.holds
    single = verify_wan(F7, [quad], [P([1, 0, 1], 7)])
    _, restricted = verify_weil(F7, quad, P([1, 0, 1], 7))
    assert single.lhs == pytest.approx(restricted.lhs)
    with pytest.raises(HypothesisError, match="coprime"):
        verify_wan(F7, [quad, cubic], [P([1, 1], 7), P([1, 1], 7)])


@pytest.mark.parametrize("p", [11, 13, 31, 37])
def test_wan_grid(p):
    F = build_field(p)
    fs = [P([1, 1], p), P([3, 0, 1], p), P([1, 1, 0, 1], p)]
    for c1 in characters_of_order(F, 2):
        for d in (3, 5):
            if (p - 1) % d:
                continue
            for c2 in characters_of_order(F, d):
                try:
                    r = verify_wan(F, [c1, c2], fs[:2])
                except HypothesisError:
                    continue
                assert r.holds


def test_lemma4_examples():
    F5 = build_field(5)
    quad = Character(F5, 2)
    f = P([1, 1], 5)
    assert verify_lemma4(F5, Character(F5, 0), 3, quad, f).branch == "principal"
    r = verify_lemma4(F5, Character(F5, 1), 2, quad, f)
    assert r.branch == "non-principal" and r.lhs == pytest.approx(1) and r.rhs == pytest.approx(math.sqrt(5))
    assert verify_lemma4(F5, Character(F5, 1), 4, quad, f).branch == "principal"


@pytest.mark.parametrize("p", [7, 11, 13, 17, 29, 31])
def test_lemma4_exhaustive(p):
    F = build_field(p)
    f = P([2, 1, 1], p)
    for a1 in range(p - 1):
        for a2 in range(1, p - 1):
            chi2 = Character(F, a2)
            if is_dth_power(f, chi2.order, up_to_constant=True):
                continue
            for alpha in (-2, -1, 0, 1, 2, 3):
                r = verify_lemma4(F, Character(F, a1), alpha, chi2, f)
                assert r.holds
                assert (r.branch == "principal") == ((a1 * alpha) % (p - 1) == 0)


def test_theorem_examples():
    r = verify_theorem(make_instance(build_field(5), 0, P([1, 1], 5)))
    assert (r.exact_count, r.main_term) == (1, pytest.approx(0.75))
    assert r.error_bound == pytest.approx(math.sqrt(5))
    assert r.theta == pytest.approx(0.25 / math.sqrt(5)) and r.theorem_holds
    r = verify_theorem(make_instance(build_field(7), 0, P([1, 1], 7)))
    assert r.exact_count == 0 and r.main_term == pytest.approx(5 / 9)
    assert r.error_bound == pytest.approx(16 * math.sqrt(7) / 9)
    assert r.theta == pytest.approx(-0.1181138978) and r.theorem_holds


def test_claims_p5():
    recs = verify_claims(make_instance(build_field(5), 0, P([1, 1], 5)))
    assert [r.lemma_id for r in recs] == ["Claim1", "Claim2", "Claim3", "Lemma4"]
    assert recs[1].rhs == pytest.approx(math.sqrt(5)) and recs[2].rhs == pytest.approx(math.sqrt(5))
    assert all(r.holds for r in recs)


@pytest.mark.parametrize("p", [5, 7, 13, 31, 61, 101, 151, 199])
def test_chain(p):
    for alpha in (-1, 0, 2):
        for coeffs in ([1, 1], [1, 0, 1], [1, 1, 0, 1]):
            try:
                i = make_instance(build_field(p), alpha, P(coeffs, p))
            except HypothesisError:
                continue
            d = count_decomposition(i)
            assert all(r.holds for r in verify_chain(i, count_bruteforce(i), d))


def test_weil_grid_skips_powers():
    F = build_field(13)
    rows, skipped = weil_grid(F, [P([1, 2, 1], 13)])
    assert len(skipped) == 1 and "chi_6" in skipped[0]
    assert all(r.holds for _, _, r in rows)
    assert all(chi.order != 2 for chi, _, _ in rows)


def test_literal_dth_power_reading_breaks_theorem():
    # 3(x+1)^2 mod 1049: 3 is a non-residue, so the literal test says "not a square",
    # yet every value is a non-residue and the estimate fails.
    p = 1049
    F = build_field(p)
    f = P([3, 6, 3], p)
    assert not is_dth_power(f, 2) and is_dth_power(f, 2, up_to_constant=True)
    with pytest.raises(HypothesisError):
        make_instance(F, 0, f)
    r = verify_theorem(make_instance(F, 0, f, allow_inadmissible=True))
    assert r.hypothesis_violation and not r.theorem_holds and r.theta > 1


def test_error_bound_positive():
    for p in primes_between(3, 100):
        i = make_instance(build_field(p), 0, P([2, 1], p), allow_inadmissible=True)
        assert error_bound(i) > 0 and main_term(i) >= 0
