"""
The symbols R(u, f) and L(u, f, x, y), the coprimality conditions under
which they agree, and a brute-force cubic residuacity oracle.

For u = A + B sqrt(D) and a form f = [a, 2b, c] of discriminant 4d:

    R = ((9A - (B/C) b (1 + 2w)) / a)_3                  (3 does not divide a)
    L = ((9Ay + (B/C)(ax + by)(1 + 2w)) / f(x, y))_3     (3 does not divide f(x, y))

For a prime p = f(x, y) = 1 (mod 3) with gcd(a p, 3 N(u) D y) = 1, u is a
cubic residue mod p exactly when R = 1. The oracle decides residuacity
directly from u^((p-1)/3) mod p.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .eisenstein import CubicSymbol, EisensteinInt, cubic_symbol_int
from .intutil import gcd, is_prime, sqrt_mod
from .qform import QuadForm, representations
from .sdelem import SdElement, make_u2

__all__ = [
    "ResiduacityVerdict",
    "PreconditionError",
    "NoRepresentation",
    "TheoremViolation",
    "condition_11",
    "condition_17",
    "compute_R",
    "compute_L",
    "r_numerator",
    "l_numerator",
    "oracle_is_cubic",
    "theorem11_check",
    "theorem24_check",
    "lemma_substitution_check",
]


class PreconditionError(ValueError):
    """A named precondition failed; ``name`` identifies which one."""

    def __init__(self, name: str, detail: str = ""):
        self.name = name
        super().__init__(f"{name}: {detail}" if detail else name)


class NoRepresentation(PreconditionError):
    def __init__(self, form: QuadForm, p: int):
        super().__init__("not-represented", f"{form} does not represent {p}")


class TheoremViolation(AssertionError):
    """An identity that is a theorem failed to hold; carries the inputs."""

    def __init__(self, message: str, **inputs):
        self.inputs = inputs
        dump = ", ".join(f"{k}={v}" for k, v in inputs.items())
        super().__init__(f"{message} [{dump}]")


@dataclass(frozen=True)
class ResiduacityVerdict:
    u: SdElement
    form: QuadForm
    p: int
    xy: Tuple[int, int]
    R: CubicSymbol
    L: CubicSymbol
    oracle_cubic: bool

    @property
    def consistent(self) -> bool:
        return self.R == self.L and self.oracle_cubic == (self.R is CubicSymbol.ONE)

    def to_dict(self) -> dict:
        return {
            "u": str(self.u),
            "form": str(self.form),
            "p": self.p,
            "xy": list(self.xy),
            "R": str(self.R),
            "L": str(self.L),
            "oracle_cubic": self.oracle_cubic,
            "consistent": self.consistent,
        }


def _radical_part(u: SdElement) -> int:
    # 3 N(u) D, the quantity every coprimality condition is taken against
    return 3 * u.norm * u.D


def condition_11(u: SdElement, f: QuadForm, p: int, x: int, y: int) -> bool:
    """gcd(a p, 3 N(u) D y) == 1, for a representation p = f(x, y)."""
    if f(x, y) != p:
        raise PreconditionError("bad-representation", f"{f}({x},{y}) != {p}")
    return gcd(f.a * p, _radical_part(u) * y) == 1


def condition_17(u: SdElement, f: QuadForm, x: int, y: int) -> bool:
    """gcd(a f(x, y), 3 N(u) D y) == 1; f(x, y) need not be prime."""
    return gcd(f.a * f(x, y), _radical_part(u) * y) == 1


def r_numerator(u: SdElement, f: QuadForm) -> EisensteinInt:
    k = u.B_over_C * f.b
    # 9A - k(1 + 2w)
    return EisensteinInt(9 * u.A - k, -2 * k)


def l_numerator(u: SdElement, f: QuadForm, x: int, y: int) -> EisensteinInt:
    k = u.B_over_C * (f.a * x + f.b * y)
    # 9Ay + k(1 + 2w)
    return EisensteinInt(9 * u.A * y + k, 2 * k)


def compute_R(u: SdElement, f: QuadForm) -> CubicSymbol:
    if f.a % 3 == 0:
        raise PreconditionError("3-divides-a", str(f))
    return cubic_symbol_int(r_numerator(u, f), f.a)


def compute_L(u: SdElement, f: QuadForm, x: int, y: int) -> CubicSymbol:
    n = f(x, y)
    if n % 3 == 0:
        raise PreconditionError("3-divides-f", f"{f}({x},{y}) = {n}")
    return cubic_symbol_int(l_numerator(u, f, x, y), n)


def oracle_is_cubic(u: SdElement, p: int) -> bool:
    """
    Whether A + B sqrt(D) is a cube mod p, via (A + B s)^((p-1)/3) = 1
    with s a square root of D mod p. Both roots are tried and must agree.
    """
    if not is_prime(p):
        raise PreconditionError("p-not-prime", str(p))
    if p % 3 != 1:
        raise PreconditionError("p-not-1-mod-3", str(p))
    if gcd(p, _radical_part(u)) != 1:
        raise PreconditionError("p-divides-3ND", f"p = {p}, 3 N(u) D = {_radical_part(u)}")
    s = sqrt_mod(u.D, p)
    if s is None:
        raise PreconditionError("D-not-QR", f"{u.D} is not a square mod {p}")
    e = (p - 1) // 3
    first = pow((u.A + u.B * s) % p, e, p) == 1
    second = pow((u.A - u.B * s) % p, e, p) == 1
    if first != second:
        raise TheoremViolation("residuacity depends on the square root of D", u=u, p=p)
    return first


def _reps_with_condition(u: SdElement, f: QuadForm, p: int) -> Iterator[Tuple[int, int]]:
    for x, y in representations(f, p):
        if condition_11(u, f, p, x, y):
            yield x, y


def theorem11_check(
    u: SdElement, f: QuadForm, p: int, xy: Optional[Tuple[int, int]] = None
) -> ResiduacityVerdict:
    """
    Compare R(u, f), L(u, f, x, y) and the oracle at a prime p = f(x, y).

    Without ``xy`` the representations of p by f are searched in the order
    of :func:`cubres.qform.representations` for one satisfying
    gcd(a p, 3 N(u) D y) = 1.
    """
    if not is_prime(p):
        raise PreconditionError("p-not-prime", str(p))
    if p % 3 != 1:
        raise PreconditionError("p-not-1-mod-3", str(p))
    if xy is None:
        if next(representations(f, p), None) is None:
            raise NoRepresentation(f, p)
        xy = next(_reps_with_condition(u, f, p), None)
        if xy is None:
            raise PreconditionError("condition-1.1", f"no representation of {p} by {f} qualifies")
    elif not condition_11(u, f, p, *xy):
        raise PreconditionError("condition-1.1", f"{xy} for {p} by {f}")
    x, y = xy
    return ResiduacityVerdict(
        u=u,
        form=f,
        p=p,
        xy=(x, y),
        R=compute_R(u, f),
        L=compute_L(u, f, x, y),
        oracle_cubic=oracle_is_cubic(u, p),
    )


def theorem24_check(u: SdElement, f: QuadForm, x: int, y: int) -> bool:
    """L == R whenever gcd(a f(x, y), 3 N(u) D y) = 1."""
    if not condition_17(u, f, x, y):
        raise PreconditionError("condition-1.7", f"{u}, {f}, ({x},{y})")
    return compute_L(u, f, x, y) == compute_R(u, f)


def lemma_substitution_check(
    u: SdElement, f: QuadForm, x: int, y: int, u2: Optional[SdElement] = None
) -> bool:
    """R(u) == R(u2) and L(u) == L(u2) for the companion element u2."""
    if not condition_17(u, f, x, y):
        raise PreconditionError("condition-1.7", f"{u}, {f}, ({x},{y})")
    if u2 is None:
        u2 = make_u2(u)
    return compute_R(u, f) == compute_R(u2, f) and compute_L(u, f, x, y) == compute_L(u2, f, x, y)
