"""Simultaneous primitive roots xi and xi^alpha f(xi) modulo a prime: exact counts and character-sum checks."""

from .bounds import BoundCheckRecord, TheoremReport, verify_claims, verify_lemma4, verify_theorem, verify_wan, verify_weil
from .characters import Character, FullField, NonzeroOnly, char_power, char_product, char_sum, characters_of_order, twisted_sum
from .counting import (
    DecompositionResult,
    HypothesisError,
    PairCountInstance,
    claim_terms,
    count_bruteforce,
    count_decomposition,
    make_instance,
    primitivity_indicator,
    search_existence,
)
from .field import PrimeField, build_field, element_order, is_primitive_root, pow_mod
from .numtheory import Factorization, divisors, euler_phi, factorize, mobius, omega
from .poly import Polynomial, check_admissibility, distinct_root_count, evaluate, is_dth_power, poly_gcd

__version__ = "0.1.0"
