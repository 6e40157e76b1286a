"""Modular arithmetic utilities: gcd, inverse, power, order, primality."""
from __future__ import annotations

from .errors import NotCoprimeError, NotInvertibleError


def gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m by square-and-multiply."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("exponent must be >= 0")
    result = 1
    base %= m
    while exp:
        if exp & 1:
            result = result * base % m
        base = base * base % m
        exp >>= 1
    return result


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m by the extended Euclidean algorithm."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    t, new_t = 0, 1
    r, new_r = m, a % m
    while new_r:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if r != 1:
        raise NotInvertibleError(f"{a} has no inverse modulo {m} (gcd = {r})")
    return t % m


def order_of(x: int, n: int) -> int:
    """Smallest r >= 1 with x**r = 1 (mod n), by direct iteration."""
    x %= n
    if gcd(x, n) != 1:
        raise NotCoprimeError(f"order is undefined: gcd({x}, {n}) != 1")
    r = 1
    acc = x
    while acc != 1:
        acc = acc * x % n
        r += 1
    return r


def is_prime(n: int) -> bool:
    """Trial-division primality test; fine at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
