"""
Tests for the Bohr-lift arithmetic layer.
Covers the prime table, factorization, divisor functions and log additivity.
"""

import math
import sys
import threading

import pytest


def test_prime_table_starts_at_two():
    """Test that the shared table is 1-based and verified by trial division."""
    from bohr_arith import get_prime_table, is_prime

    table = get_prime_table(min_count=100)
    assert table.prime(1) == 2, "p_1 must be 2"
    assert table.prime(2) == 3
    assert table.prime(10) == 29, f"p_10 should be 29, got {table.prime(10)}"
    assert all(is_prime(p) for p in table.primes[:200]), "Table contains a composite"
    assert table.index_of(29) == 10
    assert table.index_of(30) == 0


def test_ten_thousandth_prime():
    """Test the table entries used by the Bennett-tail fixture."""
    from bohr_arith import get_prime_table

    table = get_prime_table(min_count=10_000)
    assert table.prime(10_000) == 104729, f"p_10000 = {table.prime(10_000)}"
    assert table.prime(9_999) == 104723


def test_prime_index_out_of_range():
    """Test that prime(0) is rejected."""
    from bohr_arith import ArithmeticDomainError, get_prime_table

    with pytest.raises(ArithmeticDomainError):
        get_prime_table().prime(0)


def test_factorize_examples():
    """Test multi-indices of small integers."""
    from bohr_arith import factorize

    assert factorize(1) == ()
    assert factorize(2) == (1,)
    assert factorize(12) == (2, 1), f"12 = 2^2 * 3, got {factorize(12)}"
    assert factorize(15) == (0, 1, 1)
    assert factorize(29) == (0,) * 9 + (1,)
    assert factorize(45000) == (3, 2, 4), "45000 = 2^3 * 3^2 * 5^4"


def test_factorize_rejects_nonpositive():
    """Test that 0 and negative integers are domain errors."""
    from bohr_arith import ArithmeticDomainError, factorize

    for n in (0, -6):
        with pytest.raises(ArithmeticDomainError):
            factorize(n)


def test_lift_drop_roundtrip():
    """Test that bohr_drop inverts bohr_lift on 1..2000."""
    from bohr_arith import bohr_drop, bohr_lift

    for n in range(1, 2001):
        assert bohr_drop(bohr_lift(n)) == n, f"Round trip failed at {n}"


def test_bohr_drop_rejects_negative_exponent():
    """Test that negative exponents are rejected."""
    from bohr_arith import ArithmeticDomainError, bohr_drop

    assert bohr_drop(()) == 1
    assert bohr_drop((1, 1)) == 6
    with pytest.raises(ArithmeticDomainError):
        bohr_drop((1, -1))


def test_trim():
    """Test trailing-zero normalization."""
    from bohr_arith import trim

    assert trim((1, 0, 2, 0, 0)) == (1, 0, 2)
    assert trim((0, 0)) == ()


def test_omega_and_divisor_count():
    """Test Omega and d(n) on worked examples."""
    from bohr_arith import divisor_count, omega

    assert omega(1) == 0
    assert omega(12) == 3
    assert omega(2 ** 10) == 10
    assert divisor_count(1) == 1
    assert divisor_count(12) == 6
    assert divisor_count(6) == 4
    assert divisor_count(30) == 8


def test_divisor_count_matches_enumeration():
    """Test d(n) against a brute-force count."""
    from bohr_arith import divisor_count, divisors

    for n in range(1, 400):
        brute = sum(1 for k in range(1, n + 1) if n % k == 0)
        assert divisor_count(n) == brute, f"d({n}) mismatch"
        assert len(divisors(n)) == brute


def test_divisor_pairs():
    """Test ordered factorizations with and without trivial factors."""
    from bohr_arith import divisor_count, divisor_pairs

    assert divisor_pairs(6) == ((1, 6), (2, 3), (3, 2), (6, 1))
    assert divisor_pairs(6, 2) == ((2, 3), (3, 2))
    assert divisor_pairs(7, 2) == ()
    for n in (12, 30, 64, 210):
        assert len(divisor_pairs(n, 2)) == divisor_count(n) - 2, f"d(n) - 2 pairs expected for {n}"


def test_log_integer_additive():
    """Test that log_integer is additive up to rounding."""
    from bohr_arith import log_integer

    assert log_integer(1) == 0.0
    assert abs(log_integer(1000) - math.log(1000)) < 1e-12
    for m, n in ((2, 3), (4, 15), (7, 11 * 13)):
        gap = abs(log_integer(m * n) - log_integer(m) - log_integer(n))
        assert gap <= 4 * sys.float_info.epsilon * log_integer(m * n), f"log({m}*{n}) not additive: {gap}"


def test_factorize_beyond_default_table():
    """Test that a large prime cofactor grows the table on demand."""
    from bohr_arith import factorize, get_prime_table, sieve_primes

    big = sieve_primes(100_001).prime(100_001)
    kappa = factorize(2 * big)
    assert kappa[0] == 1 and kappa[-1] == 1 and sum(kappa) == 2
    assert get_prime_table().prime(len(kappa)) == big


def test_identities_up_to_a_million():
    """Test lift/drop, Omega, d(n) and divisor pairs on a sample of [1, 10^6]."""
    import numpy as np

    from bohr_arith import bohr_drop, bohr_lift, divisor_count, divisor_pairs, omega

    rng = np.random.default_rng(11)
    sample = sorted(set(rng.integers(1, 10 ** 6 + 1, size=1500).tolist()) | {1, 999_983, 10 ** 6})
    for n in sample:
        kappa = bohr_lift(n)
        assert bohr_drop(kappa) == n, f"Round trip failed at {n}"
        assert omega(n) == sum(kappa)
        brute = sum(2 if k * k != n else 1 for k in range(1, math.isqrt(n) + 1) if n % k == 0)
        assert divisor_count(n) == brute, f"d({n}) = {divisor_count(n)}, expected {brute}"
        assert divisor_count(n) == math.prod(k + 1 for k in kappa)
        assert len(divisor_pairs(n, 1)) == brute, f"divisor_pairs({n}) has the wrong length"


def test_drop_lift_roundtrip():
    """Test that bohr_lift inverts bohr_drop on random multi-indices."""
    import numpy as np

    from bohr_arith import bohr_drop, bohr_lift, trim

    rng = np.random.default_rng(12)
    for _ in range(1000):
        kappa = tuple(rng.integers(0, 4, size=int(rng.integers(0, 7))).tolist())
        assert bohr_lift(bohr_drop(kappa)) == trim(kappa), f"Round trip failed at {kappa}"


def test_primes_upto():
    """Test the prime prefix below a bound."""
    from bohr_arith import get_prime_table

    table = get_prime_table(min_count=100)
    assert table.primes_upto(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    assert table.primes_upto(1) == ()
    assert table.primes_upto(2) == (2,)


def test_concurrent_table_access():
    """Test that concurrent readers see one consistent table."""
    from bohr_arith import get_prime_table

    seen = []

    def reader():
        seen.append(get_prime_table(min_count=1000).prime(1000))

    threads = [threading.Thread(target=reader) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert seen == [7919] * 8, f"Inconsistent tables: {seen}"


def run_all_tests():
    """Run all tests."""
    print("=" * 60)
    print("Bohr arithmetic - Test Suite")
    print("=" * 60)
    tests = [
        test_prime_table_starts_at_two,
        test_ten_thousandth_prime,
        test_prime_index_out_of_range,
        test_factorize_examples,
        test_factorize_rejects_nonpositive,
        test_lift_drop_roundtrip,
        test_bohr_drop_rejects_negative_exponent,
        test_trim,
        test_omega_and_divisor_count,
        test_divisor_count_matches_enumeration,
        test_divisor_pairs,
        test_log_integer_additive,
        test_factorize_beyond_default_table,
        test_identities_up_to_a_million,
        test_drop_lift_roundtrip,
        test_primes_upto,
        test_concurrent_table_access,
    ]
    try:
        for test in tests:
            test()
            print(f"✓ {test.__name__} passed")
        print("✓ ALL TESTS PASSED!")
        return True
    except AssertionError as e:
        print(f"\n✗ TEST FAILED: {e}")
        return False


if __name__ == "__main__":
    sys.exit(0 if run_all_tests() else 1)
