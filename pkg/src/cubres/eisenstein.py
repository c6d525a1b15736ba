"""
Arithmetic in the Eisenstein integers Z[w], w = (-1 + sqrt(-3))/2, and
the cubic residue (Jacobi) symbol.

Elements are written c0 + c1*w and multiplied with w**2 = -1 - w.

Two independent routes compute the cubic symbol:

* :func:`cubic_symbol_oracle` factors the denominator and applies
  Euler's criterion prime by prime (alpha^((N(pi)-1)/3) mod pi).
* :func:`cubic_symbol` never factors anything. It runs a Euclid-style
  loop: reduce the numerator, strip units and powers of 1 - w using the
  supplementary laws, then swap numerator and denominator by cubic
  reciprocity.

Only denominators whose norm is prime to 3 are supported; units and the
ramified prime 1 - w are rejected as denominators.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

from .intutil import factorize, sqrt_mod

__all__ = [
    "EisensteinInt",
    "CubicSymbol",
    "ONE",
    "OMEGA",
    "SQRT_MINUS_3",
    "UNITS",
    "ORACLE_NORM_CAP",
    "conj",
    "norm",
    "divrem",
    "gcd_eis",
    "ramified_valuation",
    "semiprimary_associate",
    "is_semiprimary",
    "cubic_symbol_oracle",
    "oracle_for",
    "cubic_symbol",
    "cubic_symbol_int",
]

ORACLE_NORM_CAP = 10**12


@dataclass(frozen=True)
class EisensteinInt:
    """The element c0 + c1*w of Z[w]."""

    c0: int
    c1: int = 0

    @classmethod
    def coerce(cls, x: Union["EisensteinInt", int]) -> "EisensteinInt":
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")

    @classmethod
    def parse(cls, text: str) -> "EisensteinInt":
        """Parse "c0+c1w", "c0-c1w", "c0", "c1w" (also "w", "-w")."""
        m = _PARSE_RE.match(text.replace(" ", ""))
        if not m or not text.strip():
            raise ValueError(f"not an Eisenstein integer literal: {text!r}")
        real, imag = m.group(1), m.group(2)
        c0 = int(real) if real else 0
        if imag is None:
            c1 = 0
        elif imag in ("", "+"):
            c1 = 1
        elif imag == "-":
            c1 = -1
        else:
            c1 = int(imag)
        return cls(c0, c1)

    def __str__(self) -> str:
        if self.c1 == 0:
            return str(self.c0)
        return f"{self.c0}{self.c1:+d}w"

    def __add__(self, other):
        o = EisensteinInt.coerce(other)
        return EisensteinInt(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __sub__(self, other):
        o = EisensteinInt.coerce(other)
        return EisensteinInt(self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other):
        return EisensteinInt.coerce(other) - self

    def __neg__(self):
        return EisensteinInt(-self.c0, -self.c1)

    def __mul__(self, other):
        o = EisensteinInt.coerce(other)
        return EisensteinInt(*_mul(self.c0, self.c1, o.c0, o.c1))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def __divmod__(self, other):
        return divrem(self, other)

    def __mod__(self, other):
        return divrem(self, other)[1]

    def conj(self) -> "EisensteinInt":
        return EisensteinInt(self.c0 - self.c1, -self.c1)

    def norm(self) -> int:
        return _norm(self.c0, self.c1)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, other) -> bool:
        o = EisensteinInt.coerce(other)
        if not self:
            return not o
        return not divrem(o, self)[1]


_PARSE_RE = re.compile(r"^([+-]?\d+)?(?:([+-]?\d*)w)?$")

ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
SQRT_MINUS_3 = EisensteinInt(1, 2)  # 1 + 2w, squares to -3
# (-w)**k for k = 0..5; -w generates the unit group
UNITS = tuple(EisensteinInt(*u) for u in ((1, 0), (0, -1), (-1, -1), (-1, 0), (0, 1), (1, 1)))


class CubicSymbol(Enum):
    """Values of the cubic residue symbol: 0 or a cube root of unity."""

    ZERO = "0"
    ONE = "1"
    OMEGA = "w"
    OMEGA_SQ = "w2"

    @classmethod
    def from_exponent(cls, k: Optional[int]) -> "CubicSymbol":
        """w**k, or ZERO for k=None."""
        if k is None:
            return cls.ZERO
        return _BY_EXPONENT[k % 3]

    @classmethod
    def parse(cls, text: str) -> "CubicSymbol":
        return cls(text)

    @property
    def exponent(self) -> Optional[int]:
        return None if self is CubicSymbol.ZERO else _EXPONENTS[self]

    def __mul__(self, other: "CubicSymbol") -> "CubicSymbol":
        if self is CubicSymbol.ZERO or other is CubicSymbol.ZERO:
            return CubicSymbol.ZERO
        return CubicSymbol.from_exponent(self.exponent + other.exponent)

    def __pow__(self, k: int) -> "CubicSymbol":
        if self is CubicSymbol.ZERO:
            if k <= 0:
                raise ZeroDivisionError("0 has no non-positive powers")
            return self
        return CubicSymbol.from_exponent(self.exponent * k)

    def inverse(self) -> "CubicSymbol":
        return self ** -1

    def to_eisenstein(self) -> EisensteinInt:
        if self is CubicSymbol.ZERO:
            return EisensteinInt(0, 0)
        return (ONE, OMEGA, EisensteinInt(-1, -1))[self.exponent]

    def __str__(self) -> str:
        return self.value


_EXPONENTS = {CubicSymbol.ONE: 0, CubicSymbol.OMEGA: 1, CubicSymbol.OMEGA_SQ: 2}
_BY_EXPONENT = (CubicSymbol.ONE, CubicSymbol.OMEGA, CubicSymbol.OMEGA_SQ)


# -- raw coordinate helpers; the symbol loop runs on bare ints -------------

def _mul(a0, a1, b0, b1):
    t = a1 * b1
    return a0 * b0 - t, a0 * b1 + a1 * b0 - t


def _norm(a0, a1):
    return a0 * a0 - a0 * a1 + a1 * a1


def _round_div(x, n):
    # nearest integer to x/n for n > 0, halves rounded up
    return (2 * x + n) // (2 * n)


def _divrem(a0, a1, b0, b1):
    n = _norm(b0, b1)
    x, y = _mul(a0, a1, b0 - b1, -b1)
    q0, q1 = _round_div(x, n), _round_div(y, n)
    p0, p1 = _mul(q0, q1, b0, b1)
    return q0, q1, a0 - p0, a1 - p1


def _strip_ramified(a0, a1):
    # divide by 1 - w while the norm is divisible by 3
    k = 0
    while (a0 + a1) % 3 == 0:
        # a / (1 - w) = a * (2 + w) / 3
        a0, a1 = (2 * a0 - a1) // 3, (a0 + a1) // 3
        k += 1
    return k, a0, a1


def _semiprimary(a0, a1):
    # (u0, u1, k) with (-w)**k * a = u0 + u1*w and u0 + u1*w = +-1 mod 3
    for k in range(6):
        if a1 % 3 == 0 and a0 % 3:
            return a0, a1, k
        a0, a1 = a1, a1 - a0
    raise ValueError("norm divisible by 3: no semiprimary associate")


def _symbol_exponent(a0, a1, b0, b1):
    """
    Exponent k with (a/b)_3 = w**k, or None when the symbol is 0.
    b must be semiprimary (b0 = +-1 mod 3, 3 | b1).
    """
    e = 0
    while True:
        nb = _norm(b0, b1)
        if nb == 1:
            return e % 3
        _, _, a0, a1 = _divrem(a0, a1, b0, b1)
        if a0 == 0 and a1 == 0:
            return None
        # (w/b) = w^((N(b)-1)/3)
        w_exp = (nb - 1) // 3
        # (1+2w / m+3nw) = w^(-j*n) with j = m mod 3 as +-1; the sign
        # matches Euler's criterion, see tests/test_eisenstein.py
        j = 1 if b0 % 3 == 1 else -1
        s_exp = -j * (b1 // 3)
        # 1+2w = w(1-w)
        ram_exp = s_exp - w_exp
        k, a0, a1 = _strip_ramified(a0, a1)
        a0, a1, u = _semiprimary(a0, a1)
        # a = (-w)^(-u) (1-w)^k a'; -1 is a cube
        e += k * ram_exp - u * w_exp
        if _norm(a0, a1) == 1:
            return e % 3
        # reciprocity for coprime-to-3 semiprimary pair
        a0, a1, b0, b1 = b0, b1, a0, a1


# -- public operations -----------------------------------------------------

def conj(alpha: EisensteinInt) -> EisensteinInt:
    return alpha.conj()


def norm(alpha: EisensteinInt) -> int:
    return alpha.norm()


def divrem(alpha, beta) -> Tuple[EisensteinInt, EisensteinInt]:
    """
    Euclidean division alpha = q*beta + r with N(r) < N(beta).

    q is alpha/beta rounded to the nearest lattice point coordinatewise in
    the basis (1, w); the rounding error then has norm at most 3/4.
    """
    alpha = EisensteinInt.coerce(alpha)
    beta = EisensteinInt.coerce(beta)
    if not beta:
        raise ZeroDivisionError("division by zero in Z[w]")
    q0, q1, r0, r1 = _divrem(alpha.c0, alpha.c1, beta.c0, beta.c1)
    return EisensteinInt(q0, q1), EisensteinInt(r0, r1)


def canonical_associate(alpha: EisensteinInt) -> EisensteinInt:
    """The unique associate with 0 <= c1 < c0 (0 maps to itself)."""
    if not alpha:
        return alpha
    for u in UNITS:
        v = u * alpha
        if 0 <= v.c1 < v.c0:
            return v
    raise AssertionError(f"no canonical associate for {alpha}")


def gcd_eis(alpha, beta) -> EisensteinInt:
    """A gcd of alpha and beta, normalized by :func:`canonical_associate`."""
    alpha = EisensteinInt.coerce(alpha)
    beta = EisensteinInt.coerce(beta)
    if not alpha and not beta:
        raise ValueError("gcd_eis(0, 0) is undefined")
    while beta:
        alpha, beta = beta, divrem(alpha, beta)[1]
    return canonical_associate(alpha)


def ramified_valuation(alpha) -> Tuple[int, EisensteinInt]:
    """(k, rest) with alpha = (1 - w)**k * rest and 3 not dividing N(rest)."""
    alpha = EisensteinInt.coerce(alpha)
    if not alpha:
        raise ValueError("ramified_valuation of 0")
    k, a0, a1 = _strip_ramified(alpha.c0, alpha.c1)
    return k, EisensteinInt(a0, a1)


def is_semiprimary(alpha: EisensteinInt) -> bool:
    return alpha.c1 % 3 == 0 and alpha.c0 % 3 != 0


def semiprimary_associate(alpha) -> Tuple[EisensteinInt, int]:
    """
    (alpha*, k) where alpha* = (-w)**k * alpha has the shape m + 3n*w
    with 3 not dividing m. k is the first exponent in 0..5 that works.
    """
    alpha = EisensteinInt.coerce(alpha)
    if alpha.norm() % 3 == 0:
        raise ValueError(f"N({alpha}) is divisible by 3")
    a0, a1, k = _semiprimary(alpha.c0, alpha.c1)
    return EisensteinInt(a0, a1), k


def _check_denominator(beta: EisensteinInt) -> None:
    n = beta.norm()
    if n == 0:
        raise ValueError("cubic symbol with zero denominator")
    if n == 1:
        raise ValueError(f"cubic symbol with unit denominator {beta}")
    if n % 3 == 0:
        raise ValueError(f"cubic symbol denominator {beta} has norm divisible by 3")


def cubic_symbol(alpha, beta) -> CubicSymbol:
    """Cubic Jacobi symbol (alpha/beta)_3 by the reciprocity loop."""
    alpha = EisensteinInt.coerce(alpha)
    beta = EisensteinInt.coerce(beta)
    _check_denominator(beta)
    b0, b1, _ = _semiprimary(beta.c0, beta.c1)
    return CubicSymbol.from_exponent(_symbol_exponent(alpha.c0, alpha.c1, b0, b1))


def cubic_symbol_int(alpha, n: int) -> CubicSymbol:
    """(alpha/n)_3 for a rational integer n prime to 3; ONE when n = +-1."""
    if n % 3 == 0:
        raise ValueError(f"denominator {n} is divisible by 3")
    if abs(n) == 1:
        return CubicSymbol.ONE
    return cubic_symbol(alpha, EisensteinInt(n, 0))


# -- oracle ------------------------------------------------------------------

def _root_of_unity_mod(q: int) -> int:
    # a root of x^2 + x + 1 mod q, q = 1 mod 3
    s = sqrt_mod(-3, q)
    return (-1 + s) * pow(2, -1, q) % q


def _pow_mod_q(a0, a1, e, q):
    r0, r1 = 1, 0
    a0, a1 = a0 % q, a1 % q
    while e:
        if e & 1:
            r0, r1 = _mul(r0, r1, a0, a1)
            r0, r1 = r0 % q, r1 % q
        a0, a1 = _mul(a0, a1, a0, a1)
        a0, a1 = a0 % q, a1 % q
        e >>= 1
    return r0, r1


def _split_prime_exponent(alpha, r, q):
    # residue field Z[w]/P = F_q with w -> r
    x = (alpha.c0 + alpha.c1 * r) % q
    if x == 0:
        return None
    t = pow(x, (q - 1) // 3, q)
    for k, img in enumerate((1, r, r * r % q)):
        if t == img:
            return k
    raise AssertionError(f"Euler criterion gave a non-root of unity mod {q}")


def _inert_prime_exponent(alpha, q):
    # residue field Z[w]/q = F_{q^2}
    if alpha.c0 % q == 0 and alpha.c1 % q == 0:
        return None
    t = _pow_mod_q(alpha.c0, alpha.c1, (q * q - 1) // 3, q)
    for k, img in enumerate(((1, 0), (0, 1), ((-1) % q, (-1) % q))):
        if t == img:
            return k
    raise AssertionError(f"Euler criterion gave a non-root of unity mod {q}")


def _divides(pi: EisensteinInt, beta: EisensteinInt, q: int) -> bool:
    # pi | beta  iff  q | beta * conj(pi), where q = N(pi)
    t = beta * pi.conj()
    return t.c0 % q == 0 and t.c1 % q == 0


def oracle_for(beta) -> Callable[[EisensteinInt], CubicSymbol]:
    """
    The definitional symbol (./beta)_3 with the factorization of beta done
    once: returns alpha -> product over Eisenstein primes pi^e || beta of
    alpha^((N(pi)-1)/3) mod pi. Limited to N(beta) <= ORACLE_NORM_CAP.
    """
    beta = EisensteinInt.coerce(beta)
    _check_denominator(beta)
    n = beta.norm()
    if n > ORACLE_NORM_CAP:
        raise ValueError(f"oracle limited to denominators of norm <= {ORACLE_NORM_CAP}")
    inert, split = [], []
    for q, e in factorize(n).items():
        if q % 3 == 2:
            inert.append((q, e // 2))
            continue
        r = _root_of_unity_mod(q)
        pi = gcd_eis(q, EisensteinInt(-r, 1))
        # the two primes above q: pi (w -> r) and conj(pi) (w -> r^2)
        for prime, img in ((pi, r), (pi.conj(), r * r % q)):
            mult, rest = 0, beta
            while _divides(prime, rest, q):
                rest = divrem(rest, prime)[0]
                mult += 1
            if mult:
                split.append((q, img, mult))

    def symbol(alpha) -> CubicSymbol:
        alpha = EisensteinInt.coerce(alpha)
        total = 0
        for q, mult in inert:
            k = _inert_prime_exponent(alpha, q)
            if k is None:
                return CubicSymbol.ZERO
            total += k * mult
        for q, img, mult in split:
            k = _split_prime_exponent(alpha, img, q)
            if k is None:
                return CubicSymbol.ZERO
            total += k * mult
        return CubicSymbol.from_exponent(total)

    return symbol


def cubic_symbol_oracle(alpha, beta) -> CubicSymbol:
    """
    (alpha/beta)_3 straight from the definition: factor beta into
    Eisenstein primes and multiply the Euler-criterion values
    alpha^((N(pi)-1)/3) mod pi. Limited to N(beta) <= ORACLE_NORM_CAP.
    """
    return oracle_for(beta)(alpha)
