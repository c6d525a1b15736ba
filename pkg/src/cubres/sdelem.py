"""
Real quadratic integers u = A + B*sqrt(D) with cube norm.

:func:`validate` accepts u when D > 1 is squarefree, A^2 - B^2 D is a
perfect cube, no prime cube divides both A and B, and u is not the cube
of an integer of Q(sqrt(D)). The accepted element carries the derived
invariants C, Q and d = -27 C^2 D used by the residuacity criterion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .intutil import (
    cube_root_exact,
    factorize,
    gcd,
    is_squarefree,
    largest_cube_divisor,
    valuation,
)

__all__ = [
    "SdElement",
    "InvalidElement",
    "validate",
    "cube_in_O_test",
    "compute_C",
    "compute_Q",
    "make_u2",
    "lemma21_violations",
    "D_NOT_GT_1",
    "D_NOT_SQUAREFREE",
    "B_ZERO",
    "NORM_NOT_CUBE",
    "COORDS_CUBE_DIVISIBLE",
    "U_IS_CUBE",
]

D_NOT_GT_1 = "D-not-greater-than-1"
D_NOT_SQUAREFREE = "D-not-squarefree"
B_ZERO = "B-zero"
NORM_NOT_CUBE = "norm-not-cube"
COORDS_CUBE_DIVISIBLE = "coordinates-cube-divisible"
U_IS_CUBE = "u-is-cube"


class InvalidElement(ValueError):
    """Raised by :func:`validate`; ``violations`` lists every failed condition."""

    def __init__(self, A: int, B: int, D: int, violations: List[str]):
        self.A, self.B, self.D = A, B, D
        self.violations = violations
        super().__init__(f"{A}+{B}*sqrt({D}) rejected: {', '.join(violations)}")


@dataclass(frozen=True)
class SdElement:
    A: int
    B: int
    D: int
    norm: int
    norm_root: int
    C: int
    Q: int

    @property
    def d(self) -> int:
        return -27 * self.C * self.C * self.D

    @property
    def B_over_C(self) -> int:
        q, r = divmod(self.B, self.C)
        assert r == 0
        return q

    def conjugate(self) -> Tuple[int, int, int]:
        """Coordinates (A, -B, D) of u' = A - B sqrt(D)."""
        return self.A, -self.B, self.D

    def __str__(self) -> str:
        return f"{self.A}{'+' if self.B >= 0 else '-'}{abs(self.B)}*sqrt({self.D})"

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "D": self.D,
            "norm": self.norm,
            "norm_root": self.norm_root,
            "C": self.C,
            "Q": self.Q,
            "d": self.d,
        }


def compute_C(A: int, B: int, D: int) -> int:
    """Product of the distinct odd primes dividing gcd(A, B) but not D."""
    g = gcd(A, B)
    if g == 0:
        raise ValueError("compute_C needs (A, B) != (0, 0)")
    C = 1
    for q in factorize(g) if g > 1 else ():
        if q != 2 and D % q:
            C *= q
    return C


def compute_Q(u: SdElement) -> int:
    return gcd(u.A, u.B_over_C)


def _divisors(n: int) -> List[int]:
    divs = [1]
    for q, e in factorize(n).items():
        divs = [x * q**k for x in divs for k in range(e + 1)]
    return divs


def cube_in_O_test(A: int, B: int, D: int, m: int) -> Optional[Tuple[int, int]]:
    """
    Look for v = (x + y sqrt(D))/2 in O with v^3 = A + B sqrt(D).

    Such a v has trace x and norm m, so x is an integer root of
    x^3 - 3 m x - 2A = 0 and y^2 = (x^2 - 4m)/D. Returns (x, y) or None.
    """
    if m ** 3 != A * A - B * B * D:
        raise ValueError("m^3 must equal the norm A^2 - B^2 D")
    if A == 0:
        # x (x^2 - 3m) = 0
        candidates = {0}
        r = _isqrt_exact(3 * m)
        if r is not None:
            candidates |= {r, -r}
    else:
        candidates = {s * x for x in _divisors(2 * A) for s in (1, -1)}
    for x in sorted(candidates, key=lambda t: (abs(t), t)):
        if x ** 3 - 3 * m * x - 2 * A:
            continue
        num = x * x - 4 * m
        if num % D:
            continue
        y2 = num // D
        y = _isqrt_exact(y2)
        if y is None:
            continue
        for y in {y, -y}:
            if (x - y) % 2:
                continue
            if x % 2 and D % 4 != 1:
                continue
            # (x + y sqrt D)^3 = 8 (A + B sqrt D)
            if x ** 3 + 3 * x * y * y * D == 8 * A and 3 * x * x * y + y ** 3 * D == 8 * B:
                return x, y
    return None


def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def validate(A: int, B: int, D: int) -> SdElement:
    """Check membership in S_D; raise :class:`InvalidElement` listing all failures."""
    violations = []
    if D <= 1:
        violations.append(D_NOT_GT_1)
    elif not is_squarefree(D):
        violations.append(D_NOT_SQUAREFREE)
    if B == 0:
        violations.append(B_ZERO)
    n = A * A - B * B * D
    m = cube_root_exact(n)
    if m is None:
        violations.append(NORM_NOT_CUBE)
    g = gcd(A, B)
    if g > 1 and largest_cube_divisor(g) > 1:
        violations.append(COORDS_CUBE_DIVISIBLE)
    if m is not None and D > 1 and cube_in_O_test(A, B, D, m) is not None:
        violations.append(U_IS_CUBE)
    if violations:
        raise InvalidElement(A, B, D, violations)
    C = compute_C(A, B, D)
    Q = gcd(A, B // C)
    return SdElement(A, B, D, n, m, C, Q)


def make_u2(u: SdElement) -> SdElement:
    """
    u2 = (B D^2 + A D sqrt(D)) / T = sqrt(D)^3 u / T, T the largest cube
    dividing gcd(B D^2, A D).
    """
    A2, B2 = u.B * u.D**2, u.A * u.D
    T = largest_cube_divisor(gcd(A2, B2))
    u2 = validate(A2 // T, B2 // T, u.D)
    assert u2.norm * T * T == -u.D**3 * u.norm
    assert u2.C == u.C
    return u2


def lemma21_violations(u: SdElement) -> List[Tuple[int, int, int]]:
    """
    Primes q | Q breaking the valuation pattern: with s = v_q(A) and
    r = v_q(B/C), s > r is expected unless q = 2 and D is odd, where s = r.
    Returns the offending (q, s, r); empty when all is well.
    """
    bad = []
    if u.Q == 1:
        return bad
    for q in factorize(u.Q):
        s, r = valuation(q, u.A), valuation(q, u.B_over_C)
        if q == 2 and u.D % 2:
            ok = s == r
        else:
            ok = s > r
        if not ok:
            bad.append((q, s, r))
    return bad
