import random
from fractions import Fraction
from math import log

import numpy as np
import pytest

from btuples import count_S, parse_field, validate_family
from btuples.arith import factor_int
from btuples.sieve import (
    ResidueSet,
    SieveConsistencyError,
    gamma_factor,
    in_pi_star,
    omega_bar,
    omega_members,
    pi_star_primes,
    selberg_upper_bound,
    sieve_system,
    theta,
    v_y_exact,
    v_y_restricted,
    verify_proposition,
)


@pytest.fixture(scope="module")
def sys_twins(gaussian, twins):
    return sieve_system(gaussian, twins)


@pytest.fixture(scope="module")
def sys_triples(gaussian, triples):
    return sieve_system(gaussian, triples)


def v_sum_bruteforce(system, y_exclusive: int) -> Fraction:
    """Direct transcription oracle: every d < Y, product of theta steps per p**a."""
    total = Fraction(0)
    for d in range(1, y_exclusive):
        term = Fraction(1)
        for p, a in factor_int(d):
            term *= 1 / theta(system, p, a) - 1 / theta(system, p, a - 1)
            if term == 0:
                break
        total += term
    return total


def test_exclusion_data(sys_twins, gaussian):
    assert sys_twins.exclusion_product in (-1, 1)
    assert sys_twins.excluded_primes == frozenset()
    s = sieve_system(gaussian, validate_family([(2, 1), (3, -1)]))
    assert s.excluded_primes == frozenset({2, 3, 5})
    assert s.exclusion_product == 2 * 3 * (-5) * 5


def test_in_pi_star_examples(sys_twins, gaussian):
    assert in_pi_star(sys_twins, 3)
    assert not in_pi_star(sys_twins, 5)      # split prime, class 1
    assert not in_pi_star(sys_twins, 2)      # ramified
    s13 = sieve_system(gaussian, validate_family([(1, 0), (1, 3)]))
    assert not in_pi_star(s13, 3)            # divides the exclusion product


def test_pi_star_excludes_m_minus_one():
    c5 = parse_field("cyclotomic:5")
    triples = validate_family([(1, 0), (1, 1), (1, 2)])
    s = sieve_system(c5, triples)
    assert not in_pi_star(s, 2)              # p = M - 1 guard
    twins = validate_family([(1, 0), (1, 1)])
    assert in_pi_star(sieve_system(c5, twins), 2)


def test_omega_bar_examples(sys_twins):
    assert omega_bar(sys_twins, 3, 2).classes == (2, 3, 5, 6)
    assert omega_bar(sys_twins, 3, 1).classes == ()
    assert omega_bar(sys_twins, 3, 3).classes == ()   # r = 2 divides alpha - 1
    assert omega_bar(sys_twins, 5, 2).classes == ()   # 5 not a sieving prime
    with pytest.raises(ValueError):
        omega_bar(sys_twins, 3, 0)


def test_omega_bar_sizes_and_ranges(sys_twins, sys_triples):
    for system in (sys_twins, sys_triples):
        m = system.M
        for p in pi_star_primes(system, 30):
            for alpha in range(2, 6):
                rs = omega_bar(system, p, alpha)
                if rs.classes:
                    assert len(rs.classes) == m * (p - 1), (p, alpha)
                    assert all(0 <= c < p**alpha for c in rs.classes)


def test_residue_set_validation():
    with pytest.raises(ValueError):
        ResidueSet(3, 1, (4,))
    with pytest.raises(ValueError):
        ResidueSet(3, 2, (5, 5))


def test_theta_examples(sys_twins):
    assert theta(sys_twins, 3, 2) == Fraction(5, 9)
    assert theta(sys_twins, 3, 0) == 1
    for p in (3, 7, 11, 5, 2):
        assert theta(sys_twins, p, 1) == 1
    assert 1 / theta(sys_twins, 3, 2) - 1 / theta(sys_twins, 3, 1) == Fraction(4, 5)


def test_theta_monotone_and_step_bound(sys_twins, sys_triples):
    for system in (sys_twins, sys_triples):
        for p in pi_star_primes(system, 30):
            prev = Fraction(1)
            for alpha in range(1, 8):
                cur = theta(system, p, alpha)
                assert 0 < cur <= prev, (p, alpha)
                prev = cur
            # second-power step dominates M/p for sieving primes
            step = 1 / theta(system, p, 2) - 1 / theta(system, p, 1)
            assert step >= Fraction(system.M, p), p


def test_theta_closed_form_at_second_power(sys_twins, sys_triples):
    for system in (sys_twins, sys_triples):
        m = system.M
        for p in pi_star_primes(system, 40):
            assert theta(system, p, 2) == 1 - Fraction(m * (p - 1), p * p)


def test_theta_consistency_guard(gaussian, twins):
    system = sieve_system(gaussian, twins)
    system._omega_size_cache[(3, 2)] = 100  # poison: forces theta below zero
    with pytest.raises(SieveConsistencyError):
        theta(system, 3, 2)


def test_v_y_examples(sys_twins):
    assert v_y_exact(sys_twins, 10) == Fraction(9, 5)
    assert v_y_exact(sys_twins, 1.5) == 1
    assert v_y_exact(sys_twins, Fraction(3, 2)) == 1
    with pytest.raises(ValueError):
        v_y_exact(sys_twins, 1)


def test_v_y_against_bruteforce(gaussian, sys_twins, sys_triples):
    s_mixed = sieve_system(gaussian, validate_family([(2, 1), (3, -1)]))
    c5 = parse_field("cyclotomic:5")
    s_c5 = sieve_system(c5, validate_family([(1, 0), (1, 1)]))
    for system in (sys_twins, sys_triples, s_mixed, s_c5):
        for y in (2, 10, 50, 100, 260):
            assert v_y_exact(system, y) == v_sum_bruteforce(system, y), y


def test_v_y_restricted_examples(sys_twins):
    assert v_y_restricted(sys_twins, 10) == Fraction(5, 3)
    assert v_y_restricted(sys_twins, 2) == 1
    with pytest.raises(ValueError):
        v_y_restricted(sys_twins, 0.5)


def test_v_y_restricted_below_exact(sys_twins, sys_triples):
    for system in (sys_twins, sys_triples):
        for y in (2, 5, 10, 100, 1000, 4000):
            assert v_y_restricted(system, y) <= v_y_exact(system, y), y


def test_selberg_bound_examples(sys_twins):
    assert selberg_upper_bound(sys_twins, 100, 10) == Fraction(1000, 9)
    # vacuous parameter: only d = 1 contributes, bound is x + Y**2
    assert selberg_upper_bound(sys_twins, 100, 1.5) == 100 + Fraction(9, 4)
    with pytest.raises(ValueError):
        selberg_upper_bound(sys_twins, 100, 1)
    with pytest.raises(ValueError):
        selberg_upper_bound(sys_twins, 1, "sqrt")


def test_selberg_bound_sqrt_rule_is_exact(sys_twins):
    # Y = sqrt(x) enters as Y**2 = x and d ranges over d*d < x
    assert selberg_upper_bound(sys_twins, 10_000, "sqrt") == Fraction(
        2 * 10_000
    ) / v_y_exact(sys_twins, 100)
    assert selberg_upper_bound(sys_twins, 10_001, "sqrt") == Fraction(
        2 * 10_001
    ) / v_y_exact(sys_twins, 101)


def test_bound_dominates_count_small_cases(gaussian, twins, triples):
    for fam in (twins, triples, validate_family([(2, 1), (3, -1)])):
        system = sieve_system(gaussian, fam)
        for x in (10, 100, 1000, 4096):
            assert count_S(gaussian, fam, x) <= selberg_upper_bound(system, x, "sqrt")


def test_gamma_examples(gaussian, sys_twins):
    assert gamma_factor(sys_twins) == ((), Fraction(1))
    s13 = sieve_system(gaussian, validate_family([(1, 0), (1, 3)]))
    assert gamma_factor(s13) == ((3,), Fraction(5, 3))
    s15 = sieve_system(gaussian, validate_family([(1, 0), (1, 5)]))
    assert gamma_factor(s15) == ((), Fraction(1))


def test_gamma_sanity_bounds(gaussian):
    rng = random.Random(99)
    fams = []
    while len(fams) < 12:
        pairs = [(rng.randrange(1, 10**6), rng.randrange(-(10**6), 10**6))
                 for _ in range(rng.choice((2, 3)))]
        try:
            fams.append(validate_family(pairs))
        except Exception:
            continue
    for fam in fams:
        system = sieve_system(gaussian, fam)
        primes, gamma = gamma_factor(system)
        ceiling = Fraction(1)
        for p in primes:
            ceiling *= Fraction(p, p - 1) ** system.M
        assert gamma <= ceiling
        assert float(gamma) <= (20 * log(log(10**6))) ** system.M


def test_exactness_types(sys_twins):
    assert isinstance(theta(sys_twins, 3, 2), Fraction)
    assert isinstance(v_y_exact(sys_twins, 10), Fraction)
    assert isinstance(v_y_restricted(sys_twins, 10), Fraction)
    assert isinstance(selberg_upper_bound(sys_twins, 100, 10), Fraction)
    assert isinstance(gamma_factor(sys_twins)[1], Fraction)


def test_omega_members(sys_twins):
    members = omega_members(sys_twins, 3, 2, 40)
    # classes {2, 3, 5, 6} mod 9
    assert members.tolist() == sorted(
        k for k in range(1, 41) if k % 9 in (2, 3, 5, 6)
    )


def test_lifted_sets_disjoint(sys_twins, sys_triples):
    # blocked sets for different powers never overlap, checked inside [1, p**6]
    for system in (sys_twins, sys_triples):
        for p in pi_star_primes(system, 50):
            limit = p**6
            alphas = [a for a in range(2, 7) if omega_bar(system, p, a).classes]
            for i, a1 in enumerate(alphas):
                if not alphas[i + 1 :]:
                    break
                table = np.zeros(p**a1, dtype=bool)
                table[np.asarray(omega_bar(system, p, a1).classes)] = True
                for a2 in alphas[i + 1 :]:
                    higher = omega_members(system, p, a2, limit)
                    assert not table[higher % (p**a1)].any(), (p, a1, a2)


def test_verify_proposition_passes(sys_twins, sys_triples):
    rep = verify_proposition(sys_twins, 3, 4)
    assert rep.all_passed
    assert rep.clauses["i"].checked == 2          # alphas 2 and 4
    assert rep.clauses["iii"].checked == 3**4
    rep = verify_proposition(sys_triples, 7, 2)
    assert rep.all_passed
    assert len(omega_bar(sys_triples, 7, 2).classes) == 18


def test_verify_proposition_rejects_non_sieving_prime(sys_twins):
    with pytest.raises(ValueError):
        verify_proposition(sys_twins, 5, 3)


def test_verify_proposition_fault_injection(sys_twins):
    def tampered(system, p, alpha):
        rs = omega_bar(system, p, alpha)
        if rs.classes:
            return ResidueSet(p, alpha, rs.classes[1:])
        return rs

    rep = verify_proposition(sys_twins, 3, 4, omega_fn=tampered)
    clause = rep.clauses["i"]
    assert not clause.passed
    assert clause.witness == {"alpha": 2, "size": 3, "expected": 4}


def test_report_serializes(sys_twins):
    import json

    rep = verify_proposition(sys_twins, 3, 3)
    doc = json.loads(rep.to_json())
    assert doc["p"] == 3 and doc["all_passed"] is True
    assert set(doc["clauses"]) == {"i", "ii", "iii", "iv", "v"}
    assert all("passed" in c and "checked" in c for c in doc["clauses"].values())
