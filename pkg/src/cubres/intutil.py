"""
Exact rational-integer helpers: gcd, valuations, cube detection,
primality, sieving and square roots modulo a prime.

Everything works on Python ints, so there is no overflow anywhere.
Factorization is plain trial division and is only meant for the
desk-scale numbers (coordinates, norms, discriminants) that show up
in this package.
"""
from __future__ import annotations

import math
from typing import Dict, List, Optional

__all__ = [
    "gcd",
    "valuation",
    "cube_root_exact",
    "factorize",
    "is_squarefree",
    "largest_cube_divisor",
    "is_prime",
    "primes_up_to",
    "legendre",
    "sqrt_mod",
    "MR_BASES",
    "MR_DETERMINISTIC_BOUND",
]

# First 12 primes as Miller-Rabin bases: deterministic for n < 3.3 * 10**24
# (Sorenson & Webster 2015), which covers every n < 2**64 with room to spare.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def gcd(a: int, b: int) -> int:
    """Non-negative gcd; gcd(0, 0) == 0."""
    return math.gcd(a, b)


def valuation(q: int, n: int) -> int:
    """
    Largest e with q**e dividing n.

    >>> valuation(2, 24)
    3
    """
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    e = 0
    n = abs(n)
    while n % q == 0:
        n //= q
        e += 1
    return e


def _icbrt(n: int) -> int:
    # floor of the real cube root, n >= 0
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def cube_root_exact(n: int) -> Optional[int]:
    """
    Return m with m**3 == n, or None when n is not a perfect cube.

    >>> cube_root_exact(-658503)
    -87
    """
    m = _icbrt(abs(n))
    if m ** 3 != abs(n):
        return None
    return -m if n < 0 else m


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of |n| by trial division, as {prime: exponent}."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: Dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    step = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    if n <= 1:
        raise ValueError("is_squarefree expects n > 1")
    return all(e == 1 for e in factorize(n).values())


def largest_cube_divisor(g: int) -> int:
    """
    The largest perfect cube dividing g > 0.

    >>> largest_cube_divisor(48)
    8
    """
    if g <= 0:
        raise ValueError("largest_cube_divisor expects g > 0")
    t = 1
    for q, e in factorize(g).items():
        t *= q ** (3 * (e // 3))
    return t


def _strong_probable_prime(n: int, base: int, d: int, s: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """
    Miller-Rabin with the fixed bases MR_BASES.

    Deterministic for n < MR_DETERMINISTIC_BOUND (about 3.3e24). Above
    that bound the answer is only a strong probable-prime verdict, which
    never matters at the sizes used here.
    """
    if n < 2:
        return False
    for q in MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_strong_probable_prime(n, b, d, s) for b in MR_BASES)


def primes_up_to(limit: int) -> List[int]:
    """Sieve of Eratosthenes; all primes <= limit in ascending order."""
    if limit < 2:
        raise ValueError("primes_up_to expects limit >= 2")
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def legendre(n: int, p: int) -> int:
    """Legendre symbol (n/p) for an odd prime p, as -1, 0 or 1."""
    r = pow(n, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_mod(n: int, p: int) -> Optional[int]:
    """
    Tonelli-Shanks. Returns s in [0, p) with s*s == n (mod p), or None
    when n is a non-residue. The root returned is whichever the algorithm
    reaches first; the other one is p - s.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"sqrt_mod expects an odd prime, got {p}")
    n %= p
    if n == 0:
        raise ValueError(f"{p} divides the radicand")
    if legendre(n, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r
