"""
Bulk verification runs: the residuacity criterion over all primes up to a
limit, L = R on random (u, f, x, y) tuples, and the u -> u2 substitution.

Every run raises TheoremViolation on the first counterexample, so a
returned SweepResult always has zero failures.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .classmap import compute_J, scan_primes
from .eisenstein import CubicSymbol, EisensteinInt, cubic_symbol, divrem, oracle_for
from .qform import DEFAULT_SEARCH_BOUND, ClassGroup, Matrix, class_group, transform
from .residuacity import (
    TheoremViolation,
    compute_L,
    compute_R,
    condition_17,
)
from .sdelem import SdElement, make_u2, validate

__all__ = [
    "CATALOG",
    "catalog",
    "SweepResult",
    "theorem11_sweep",
    "random_tuples",
    "theorem24_sweep",
    "lemma_sweep",
    "semiprimary_denominators",
    "symbol_sweep",
]

# (A, B, D) of the reference elements
CATALOG: Tuple[Tuple[int, int, int], ...] = (
    (19, 3, 2),
    (1342, 99, 3),
    (3047, 176, 5),
    (1633, 437, 6),
    (232, 319, 7),
    (6, 3, 7),
    (17, 51, 2),
    (1, 1, 2),
)


def catalog() -> List[SdElement]:
    return [validate(*t) for t in CATALOG]


@dataclass
class SweepResult:
    name: str
    checks: int = 0
    failures: int = 0
    skipped: int = 0
    cubic: int = 0
    details: Dict[str, int] = field(default_factory=dict)

    def summary(self) -> str:
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return f"{self.name}: {self.checks} checks, {self.failures} failures{extra}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checks": self.checks,
            "failures": self.failures,
            "skipped": self.skipped,
            "cubic": self.cubic,
        }


def theorem11_sweep(
    u: SdElement,
    prime_limit: int,
    bound: int = DEFAULT_SEARCH_BOUND,
    group: Optional[ClassGroup] = None,
) -> SweepResult:
    """
    For every prime p <= prime_limit with p = 1 (mod 3) represented by H(4d),
    check oracle(u, p) <=> R = 1 and L = R on a form of each class
    representing p, and that R agrees with J of the class.
    """
    if group is None:
        group = class_group(u.d)
    J = compute_J(u, group, bound)
    res = SweepResult(f"criterion {u}")
    for p, samples in scan_primes(u, prime_limit, bound):
        if not samples:
            res.skipped += 1
            continue
        res.cubic += samples[0].cubic
        for s in samples:
            res.checks += 1
            if s.R != J[s.cls]:
                raise TheoremViolation("R depends on the form", u=u, cls=s.cls, form=s.form, p=p)
    return res


def _random_unimodular(rng: random.Random, steps: int = 3, size: int = 4) -> Matrix:
    m = ((1, 0), (0, 1))
    for _ in range(steps):
        t = rng.randint(-size, size)
        e = ((1, t), (0, 1)) if rng.random() < 0.5 else ((1, 0), (t, 1))
        (p, q), (r, s) = m
        (a, b), (c, d) = e
        m = ((p * a + q * c, p * b + q * d), (r * a + s * c, r * b + s * d))
    return m


def random_tuples(
    elements: Sequence[SdElement],
    count: int,
    seed: int = 0,
    xy_range: int = 30,
    groups: Optional[Dict[int, ClassGroup]] = None,
):
    """
    ``count`` random (u, f, x, y) with gcd(a f(x, y), 3 N(u) D y) = 1.
    f is a random class representative moved by a random unimodular
    substitution, so leading coefficients vary; f(x, y) is often composite.
    """
    rng = random.Random(seed)
    groups = dict(groups or {})
    out = []
    while len(out) < count:
        u = rng.choice(elements)
        if u.d not in groups:
            groups[u.d] = class_group(u.d)
        k = rng.choice(groups[u.d].classes)
        f = transform(k, _random_unimodular(rng))
        x, y = rng.randint(-xy_range, xy_range), rng.randint(-xy_range, xy_range)
        if condition_17(u, f, x, y):
            out.append((u, f, x, y))
    return out


def theorem24_sweep(tuples) -> SweepResult:
    res = SweepResult("L = R")
    for u, f, x, y in tuples:
        L, R = compute_L(u, f, x, y), compute_R(u, f)
        res.checks += 1
        if L != R or R is CubicSymbol.ZERO:
            raise TheoremViolation("L != R", u=u, form=f, x=x, y=y, L=L, R=R)
    return res


def lemma_sweep(tuples) -> SweepResult:
    res = SweepResult("u -> u2 substitution")
    companions: Dict[SdElement, SdElement] = {}
    for u, f, x, y in tuples:
        if u not in companions:
            companions[u] = make_u2(u)
        u2 = companions[u]
        res.checks += 1
        R1, R2 = compute_R(u, f), compute_R(u2, f)
        L1, L2 = compute_L(u, f, x, y), compute_L(u2, f, x, y)
        if R1 != R2 or L1 != L2:
            raise TheoremViolation(
                "substitution changed a symbol", u=u, u2=u2, form=f, x=x, y=y,
                R=R1, R2=R2, L=L1, L2=L2,
            )
    return res


def semiprimary_denominators(max_norm: int) -> List[EisensteinInt]:
    """All m + 3n*w with 3 not dividing m and 1 < norm < max_norm, by norm."""
    out = []
    r = math.isqrt(4 * max_norm // 3) + 2
    for m in range(-r, r + 1):
        if m % 3 == 0:
            continue
        for n in range(-r // 3 - 1, r // 3 + 2):
            b = EisensteinInt(m, 3 * n)
            if 1 < b.norm() < max_norm:
                out.append(b)
    out.sort(key=lambda b: (b.norm(), b.c0, b.c1))
    return out


def _residues(beta: EisensteinInt):
    # i + j*w, 0 <= i < N/g, 0 <= j < g, is a complete system mod beta
    n = beta.norm()
    g = math.gcd(beta.c0, beta.c1)
    for j in range(g):
        for i in range(n // g):
            yield divrem(EisensteinInt(i, j), beta)[1]


def symbol_sweep(max_norm: int, budget: Optional[float] = None) -> SweepResult:
    """
    cubic_symbol == oracle over a complete residue system modulo every
    semiprimary denominator of norm < max_norm.

    This covers every numerator: the fast path starts by replacing the
    numerator with its remainder and only sees the semiprimary associate
    of the denominator. ``budget`` (seconds) stops early;
    details["complete"] says whether the sweep finished.
    """
    res = SweepResult(f"symbol engine, norm < {max_norm}")
    start = time.monotonic()
    res.details.update(complete=0, denominators=0, covered_norm=0)
    for beta in semiprimary_denominators(max_norm):
        if budget is not None and time.monotonic() - start > budget:
            return res
        oracle = oracle_for(beta)
        for r in _residues(beta):
            res.checks += 1
            fast = cubic_symbol(r, beta)
            if fast is not oracle(r):
                raise TheoremViolation(
                    "fast symbol disagrees with the oracle", alpha=r, beta=beta,
                    fast=fast, oracle=oracle(r),
                )
        res.details["denominators"] += 1
        res.details["covered_norm"] = beta.norm()
    res.details["complete"] = 1
    return res
