"""Tests for the classical number theory helpers."""

from fractions import Fraction

import pytest

from qalgo.errors import NotCoprimeError
from qalgo.numtheory import (
    continued_fraction_convergents,
    gcd,
    is_prime,
    modpow,
    modpow_array,
    order_bruteforce,
    prime_factors,
    prime_power_base,
    reduce_to_order,
)


class TestGcd:
    """Tests for gcd()."""

    def test_euclid(self) -> None:
        """Test gcd(48, 15) == 3."""
        assert gcd(48, 15) == 3

    def test_zero_argument(self) -> None:
        """Test gcd(a, 0) == a."""
        assert gcd(12, 0) == 12

    def test_coprime(self) -> None:
        """Test gcd(7, 15) == 1."""
        assert gcd(7, 15) == 1

    def test_both_zero(self) -> None:
        """Test gcd(0, 0) is rejected."""
        with pytest.raises(ValueError):
            gcd(0, 0)


class TestModpow:
    """Tests for modpow() and modpow_array()."""

    @pytest.mark.parametrize(
        ("e", "expected"), [(0, 1), (1, 7), (2, 4), (3, 13), (4, 1)]
    )
    def test_powers_of_seven(self, e: int, expected: int) -> None:
        """Test powers of 7 mod 15."""
        assert modpow(7, e, 15) == expected

    def test_matches_builtin(self) -> None:
        """Test agreement with pow() over a grid."""
        for x in range(0, 40, 3):
            for e in range(0, 60, 7):
                assert modpow(x, e, 41) == pow(x, e, 41)

    def test_rejects_small_modulus(self) -> None:
        """Test a modulus below 2 is rejected."""
        with pytest.raises(ValueError):
            modpow(3, 2, 1)

    def test_array_matches_scalar(self) -> None:
        """Test modpow_array() agrees with modpow() elementwise."""
        exponents = list(range(300))
        result = modpow_array(2, exponents, 35)
        assert result.tolist() == [modpow(2, e, 35) for e in exponents]


class TestOrderBruteforce:
    """Tests for order_bruteforce()."""

    def test_seven_mod_fifteen(self) -> None:
        """Test the order of 7 mod 15 is 4."""
        assert order_bruteforce(7, 15) == 4

    def test_one(self) -> None:
        """Test the order of 1 is 1."""
        assert order_bruteforce(1, 21) == 1

    def test_two_mod_twentyone(self) -> None:
        """Test the order of 2 mod 21 is 6."""
        assert order_bruteforce(2, 21) == 6

    def test_not_coprime(self) -> None:
        """Test a base sharing a factor is rejected."""
        with pytest.raises(NotCoprimeError):
            order_bruteforce(6, 15)


class TestContinuedFractions:
    """Tests for continued_fraction_convergents()."""

    def test_quarter(self) -> None:
        """Test 1/4 gives [(0,1), (1,4)]."""
        assert continued_fraction_convergents(1, 4, 10) == [(0, 1), (1, 4)]

    def test_zero(self) -> None:
        """Test 0/den gives [(0,1)]."""
        assert continued_fraction_convergents(0, 256, 10) == [(0, 1)]

    def test_bound_cuts_off(self) -> None:
        """Test 85/256 includes 1/3 and stops at the bound."""
        result = continued_fraction_convergents(85, 256, 20)
        assert (1, 3) in result
        assert all(q <= 20 for _, q in result)

    def test_convergent_law(self) -> None:
        """Test lowest terms and |x - p/q| < 1/q^2 for every den <= 64."""
        for den in range(1, 65):
            for num in range(den + 1):
                target = Fraction(num, den)
                result = continued_fraction_convergents(num, den, den)
                assert result[-1] == (target.numerator, target.denominator)
                for p, q in result:
                    assert gcd(p, q) == 1
                    assert abs(target - Fraction(p, q)) < Fraction(1, q * q)

    def test_rejects_bad_fraction(self) -> None:
        """Test a numerator above the denominator is rejected."""
        with pytest.raises(ValueError):
            continued_fraction_convergents(5, 4, 10)


class TestPrimes:
    """Tests for prime_factors(), is_prime() and prime_power_base()."""

    def test_prime_factors(self) -> None:
        """Test distinct prime factors of 360."""
        assert prime_factors(360) == [2, 3, 5]

    @pytest.mark.parametrize("value", [2, 3, 13, 97])
    def test_primes(self, value: int) -> None:
        """Test small primes are recognized."""
        assert is_prime(value)

    @pytest.mark.parametrize("value", [1, 9, 15, 49])
    def test_non_primes(self, value: int) -> None:
        """Test small non-primes are rejected."""
        assert not is_prime(value)

    def test_prime_power(self) -> None:
        """Test 27 is a power of 3."""
        assert prime_power_base(27) == 3

    def test_not_prime_power(self) -> None:
        """Test 15 and 7 are not prime powers."""
        assert prime_power_base(15) is None
        assert prime_power_base(7) is None


class TestReduceToOrder:
    """Tests for reduce_to_order()."""

    def test_multiple_reduces(self) -> None:
        """Test 12, a multiple of ord(7 mod 15), reduces to 4."""
        assert reduce_to_order(7, 12, 15) == 4

    def test_exact_order_kept(self) -> None:
        """Test the order itself is left alone."""
        assert reduce_to_order(2, 6, 21) == 6
