"""Classical number theory for Shor's pipeline."""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from qalgo.errors import NotCoprimeError


def gcd(a: int, b: int) -> int:
    """Greatest common divisor by Euclid's algorithm.

    Raises:
        ValueError: If either argument is negative or both are zero.
    """
    if a < 0 or b < 0:
        raise ValueError(f"gcd needs non-negative integers, got {a}, {b}")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a


def modpow(x: int, e: int, modulus: int) -> int:
    """``x**e mod modulus`` by square-and-multiply.

    Raises:
        ValueError: If ``modulus < 2`` or ``e < 0``.
    """
    if modulus < 2:
        raise ValueError(f"Modulus must be at least 2, got {modulus}")
    if e < 0:
        raise ValueError(f"Exponent must be non-negative, got {e}")
    result = 1
    base = x % modulus
    while e:
        if e & 1:
            result = result * base % modulus
        base = base * base % modulus
        e >>= 1
    return result


def modpow_array(
    x: int, exponents: npt.ArrayLike, modulus: int
) -> npt.NDArray[np.int64]:
    """Elementwise :func:`modpow` over an array of exponents.

    The modulus must satisfy ``modulus**2 < 2**63`` so products fit.
    """
    if modulus < 2:
        raise ValueError(f"Modulus must be at least 2, got {modulus}")
    if modulus >= 2**31:
        raise ValueError(f"Modulus {modulus} too large for int64 products")
    e = np.array(exponents, dtype=np.int64)
    if np.any(e < 0):
        raise ValueError("Exponents must be non-negative")
    result = np.ones_like(e)
    base = np.full_like(e, x % modulus)
    while np.any(e):
        odd = (e & 1).astype(bool)
        result[odd] = result[odd] * base[odd] % modulus
        base = base * base % modulus
        e >>= 1
    return result


def order_bruteforce(x: int, modulus: int) -> int:
    """Least ``r >= 1`` with ``x**r == 1 (mod modulus)``, by iteration.

    Raises:
        NotCoprimeError: If ``gcd(x, modulus) != 1``.
    """
    if gcd(x % modulus, modulus) != 1:
        raise NotCoprimeError(f"{x} is not coprime to {modulus}")
    if modulus == 1:
        return 1
    r, value = 1, x % modulus
    while value != 1:
        value = value * x % modulus
        r += 1
    return r


def continued_fraction_convergents(
    num: int, den: int, denominator_bound: int
) -> list[tuple[int, int]]:
    """Convergents ``p/q`` of ``num/den`` with ``q <= denominator_bound``.

    Returned in increasing ``q`` order, each in lowest terms.

    Raises:
        ValueError: If ``den <= 0`` or ``num`` is outside ``[0, den]``.
    """
    if den <= 0:
        raise ValueError(f"Denominator must be positive, got {den}")
    if not 0 <= num <= den:
        raise ValueError(f"Numerator {num} outside [0, {den}]")
    convergents: list[tuple[int, int]] = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while den:
        a, remainder = divmod(num, den)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if q > denominator_bound:
            break
        convergents.append((p, q))
        num, den = den, remainder
    return convergents


def prime_factors(value: int) -> list[int]:
    """Distinct prime factors by trial division, ascending."""
    factors: list[int] = []
    candidate = 2
    while candidate * candidate <= value:
        if value % candidate == 0:
            factors.append(candidate)
            while value % candidate == 0:
                value //= candidate
        candidate += 1 if candidate == 2 else 2
    if value > 1:
        factors.append(value)
    return factors


def is_prime(value: int) -> bool:
    """Primality by trial division (desk-scale inputs only)."""
    return value >= 2 and prime_factors(value) == [value]


def prime_power_base(value: int) -> int | None:
    """The prime ``p`` if ``value == p**k`` with ``k >= 2``, else None."""
    factors = prime_factors(value)
    if len(factors) == 1 and factors[0] != value:
        return factors[0]
    return None


def reduce_to_order(x: int, multiple: int, modulus: int) -> int:
    """Shrink a multiple of the order of ``x`` to the order itself.

    Divides out prime factors of ``multiple`` while ``x`` still raises
    to 1, which leaves the least exponent.
    """
    r = multiple
    for p in prime_factors(multiple):
        while r % p == 0 and modpow(x, r // p, modulus) == 1:
            r //= p
    return r
