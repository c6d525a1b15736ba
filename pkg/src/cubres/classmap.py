"""
The character J on the form class group H(4d) attached to u, the index-2
subgroup H2 of classes representing primes = 1 (mod 3), and its kernel G.

J(K) is R(u, f) for any form f in K whose leading coefficient is prime to
3 N(u) D. G = {K in H2 : J(K) = 1} has index 3 in H2 and 6 in H, and its
classes are exactly those representing primes modulo which u is a cube.
"""
from __future__ import annotations

import csv
import io
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from .eisenstein import CubicSymbol
from .intutil import gcd, legendre, primes_up_to
from .qform import (
    DEFAULT_SEARCH_BOUND,
    ClassGroup,
    QuadForm,
    class_group,
    compose,
    find_coprime_rep,
    h2_marker,
    inverse,
    prime_form,
    representations,
)
from .residuacity import (
    TheoremViolation,
    compute_R,
    condition_11,
    theorem11_check,
)
from .sdelem import SdElement, validate

__all__ = [
    "ClassReport",
    "ClassRow",
    "witness_form",
    "compute_J",
    "verify_homomorphism",
    "subgroup_h2",
    "kernel_G",
    "classify",
    "scan_primes",
    "sample_prime",
    "PrimeSample",
]

log = logging.getLogger(__name__)


def witness_form(
    u: SdElement, f: QuadForm, bound: int = DEFAULT_SEARCH_BOUND, skip: int = 0
) -> QuadForm:
    """A form in the class of f with leading coefficient prime to 3 N(u) D."""
    return find_coprime_rep(f, 3 * u.norm * u.D, bound, skip)


def compute_J(
    u: SdElement,
    group: ClassGroup,
    bound: int = DEFAULT_SEARCH_BOUND,
    skip: int = 0,
    witnesses: Optional[Dict[QuadForm, QuadForm]] = None,
) -> Dict[QuadForm, CubicSymbol]:
    """
    J on every class of ``group``. Pass a dict as ``witnesses`` to collect
    the form each value was computed from; ``skip`` selects a later witness
    (J must not depend on it).
    """
    if group.d != u.d:
        raise ValueError(f"group has d = {group.d} but u has d = {u.d}")
    J = {}
    for k in group:
        w = witness_form(u, k, bound, skip)
        J[k] = compute_R(u, w)
        if witnesses is not None:
            witnesses[k] = w
    return J


def _pairs(group: ClassGroup, exhaustive_limit: int, samples: int, seed: int):
    n = len(group)
    if n <= exhaustive_limit:
        for i in range(n):
            for j in range(n):
                yield group.classes[i], group.classes[j]
        return
    rng = random.Random(seed)
    for _ in range(samples):
        yield rng.choice(group.classes), rng.choice(group.classes)


def verify_homomorphism(
    J: Dict[QuadForm, CubicSymbol],
    group: ClassGroup,
    exhaustive_limit: int = 100,
    samples: int = 5000,
    seed: int = 0,
) -> bool:
    """
    J(K1 K2) == J(K1) J(K2) over all pairs when |H| <= exhaustive_limit,
    otherwise over ``samples`` random pairs. Raises on the first failure.
    """
    use_table = len(group) <= exhaustive_limit
    if use_table:
        table = group.cayley()
    for k1, k2 in _pairs(group, exhaustive_limit, samples, seed):
        if use_table:
            k3 = group.classes[table[group.index(k1)][group.index(k2)]]
        else:
            k3 = compose(k1, k2)
        if J[k3] != J[k1] * J[k2]:
            raise TheoremViolation(
                "J is not multiplicative", K1=k1, K2=k2, product=k3,
                J1=J[k1], J2=J[k2], J3=J[k3],
            )
    return True


def subgroup_h2(group: ClassGroup, exhaustive_limit: int = 100, seed: int = 0) -> Set[QuadForm]:
    """Classes with h2_marker 1; checked to be a subgroup of index 2."""
    h2 = {k for k in group if h2_marker(k) == 1}
    if 2 * len(h2) != len(group):
        raise TheoremViolation("H2 does not have index 2", d=group.d, h=len(group), h2=len(h2))
    members = sorted(h2, key=group.index)
    if len(members) <= exhaustive_limit:
        pairs = [(k1, k2) for k1 in members for k2 in members]
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(members), rng.choice(members)) for _ in range(2000)]
    for k1, k2 in pairs:
        if group.mul(k1, k2) not in h2:
            raise TheoremViolation("H2 is not closed", K1=k1, K2=k2)
    return h2


def kernel_G(
    u: SdElement,
    group: ClassGroup,
    J: Optional[Dict[QuadForm, CubicSymbol]] = None,
    h2: Optional[Set[QuadForm]] = None,
) -> Set[QuadForm]:
    """Classes of H2 where J is 1; must have index 6 in H and 3 in H2."""
    if J is None:
        J = compute_J(u, group)
    if h2 is None:
        h2 = subgroup_h2(group)
    G = {k for k in h2 if J[k] is CubicSymbol.ONE}
    if len(group) != 6 * len(G) or len(h2) != 3 * len(G):
        raise TheoremViolation(
            "kernel has the wrong index", u=u, h=len(group), h2=len(h2), g=len(G)
        )
    return G


@dataclass(frozen=True)
class PrimeSample:
    """One prime p, the class it was attributed to and the verdict there."""

    p: int
    cls: QuadForm
    form: QuadForm
    xy: Tuple[int, int]
    R: CubicSymbol
    L: CubicSymbol
    cubic: bool


def _witnesses(u, k, bound, tries):
    seen = []
    for skip in range(tries):
        try:
            w = witness_form(u, k, bound, skip)
        except RuntimeError:
            break
        if w not in seen:
            seen.append(w)
            yield w


def _good_prime(u: SdElement, p: int) -> bool:
    # p = 1 mod 3, prime to 3 N(u) D C, and D a square mod p
    return p % 3 == 1 and gcd(p, 3 * u.norm * u.D * u.C) == 1 and legendre(u.D, p) == 1


def sample_prime(
    u: SdElement, k: QuadForm, p: int, bound: int = DEFAULT_SEARCH_BOUND, tries: int = 3
) -> Optional[PrimeSample]:
    """
    Run :func:`theorem11_check` at p on the first witness form of class k
    having a representation of p with gcd(a p, 3 N(u) D y) = 1. None if no
    tried witness qualifies; an inconsistent verdict raises TheoremViolation.
    """
    for w in _witnesses(u, k, bound, tries):
        xy = next((v for v in representations(w, p) if condition_11(u, w, p, *v)), None)
        if xy is None:
            continue
        verdict = theorem11_check(u, w, p, xy)
        if not verdict.consistent:
            raise TheoremViolation(
                "R, L and the oracle disagree", u=u, form=w, p=p, xy=xy,
                R=verdict.R, L=verdict.L, oracle=verdict.oracle_cubic,
            )
        return PrimeSample(p, k, w, xy, verdict.R, verdict.L, verdict.oracle_cubic)
    return None


def scan_primes(
    u: SdElement,
    prime_limit: int,
    bound: int = DEFAULT_SEARCH_BOUND,
    tries: int = 3,
    primes: Optional[Iterable[int]] = None,
) -> Iterator[Tuple[int, List[PrimeSample]]]:
    """
    Walk the primes p = 1 (mod 3) up to ``prime_limit`` represented by
    some class of H and prime to 3 N(u) D C. Each such p is represented
    by a class K and by its inverse; :func:`sample_prime` runs on both.
    Yields (p, samples), where samples may be empty when no tried form
    meets the coprimality condition.
    """
    if primes is None:
        primes = primes_up_to(prime_limit) if prime_limit >= 2 else []
    for p in primes:
        if not _good_prime(u, p):
            continue
        k = prime_form(u.d, p)
        samples = []
        for cls in dict.fromkeys((k, inverse(k))):
            s = sample_prime(u, cls, p, bound, tries)
            if s is not None:
                samples.append(s)
        yield p, samples


@dataclass
class ClassRow:
    cls: QuadForm
    in_h2: bool
    J: CubicSymbol
    witness: QuadForm
    samples: List[Tuple[int, bool]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "form": str(self.cls),
            "in_h2": self.in_h2,
            "J": str(self.J),
            "witness": str(self.witness),
            "samples": [{"p": p, "cubic": c} for p, c in self.samples],
        }


@dataclass
class ClassReport:
    u: SdElement
    group: ClassGroup
    rows: List[ClassRow]
    kernel: Set[QuadForm]
    primes_scanned: int = 0
    primes_cubic: int = 0
    warnings: List[str] = field(default_factory=list)

    @property
    def h2_count(self) -> int:
        return sum(r.in_h2 for r in self.rows)

    @property
    def cubic_fraction(self) -> Optional[float]:
        if not self.primes_scanned:
            return None
        return self.primes_cubic / self.primes_scanned

    def kernel_forms(self) -> List[QuadForm]:
        # [a,2b,c] before [a,-2b,c]
        return sorted(self.kernel, key=lambda k: (k.a, abs(k.b), k.b < 0, k.c))

    def consistent(self) -> bool:
        """Every sampled verdict agrees with J of its class."""
        return all(
            cubic == (row.J is CubicSymbol.ONE) for row in self.rows for _, cubic in row.samples
        )

    def to_dict(self) -> dict:
        return {
            "u": self.u.to_dict(),
            "d": self.u.d,
            "class_count": len(self.group),
            "h2_count": self.h2_count,
            "kernel": [str(k) for k in self.kernel_forms()],
            "table": [r.to_dict() for r in self.rows],
            "primes_scanned": self.primes_scanned,
            "primes_cubic": self.primes_cubic,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassReport":
        u = validate(data["u"]["A"], data["u"]["B"], data["u"]["D"])
        group = class_group(data["d"])
        rows = [
            ClassRow(
                cls=QuadForm.parse(r["form"]),
                in_h2=r["in_h2"],
                J=CubicSymbol.parse(r["J"]),
                witness=QuadForm.parse(r["witness"]),
                samples=[(s["p"], s["cubic"]) for s in r["samples"]],
            )
            for r in data["table"]
        ]
        return cls(
            u=u,
            group=group,
            rows=rows,
            kernel={QuadForm.parse(k) for k in data["kernel"]},
            primes_scanned=data["primes_scanned"],
            primes_cubic=data["primes_cubic"],
            warnings=list(data["warnings"]),
        )

    def to_text(self) -> str:
        lines = [
            f"u = {self.u}   N(u) = {self.u.norm} = ({self.u.norm_root})^3   "
            f"C = {self.u.C}   d = {self.u.d}",
            f"H(4d) = H({4 * self.u.d}): {len(self.group)} classes, "
            f"{self.h2_count} represent primes = 1 (mod 3)",
            "",
            f"{'class':<22} {'H2':<3} {'J':<3} {'witness':<24} samples (p: cubic?)",
        ]
        for r in self.rows:
            samples = " ".join(f"{p}:{'y' if c else 'n'}" for p, c in r.samples)
            lines.append(
                f"{str(r.cls):<22} {'y' if r.in_h2 else 'n':<3} {str(r.J):<3} "
                f"{str(r.witness):<24} {samples}"
            )
        lines.append("")
        lines.append(f"kernel ({len(self.kernel)} classes): " + " ".join(map(str, self.kernel_forms())))
        if self.primes_scanned:
            lines.append(
                f"cubic fraction: {self.primes_cubic}/{self.primes_scanned} = "
                f"{self.cubic_fraction:.4f}"
            )
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["form", "in_h2", "J", "in_kernel", "witness", "samples"])
        for r in self.rows:
            writer.writerow([
                str(r.cls),
                int(r.in_h2),
                str(r.J),
                int(r.cls in self.kernel),
                str(r.witness),
                ";".join(f"{p}:{int(c)}" for p, c in r.samples),
            ])
        return buf.getvalue()


def classify(
    u: SdElement,
    prime_limit: int = 100_000,
    per_class_samples: int = 5,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> ClassReport:
    """
    Build H, H2, J and G for u, then attach up to ``per_class_samples``
    oracle verdicts to each class of H2 from primes <= prime_limit.

    Scanning stops once every class of H2 is full; with per_class_samples = 0
    every prime up to the limit is scanned. A sampled verdict that
    disagrees with J raises TheoremViolation.
    """
    group = class_group(u.d)
    witnesses: Dict[QuadForm, QuadForm] = {}
    J = compute_J(u, group, bound, witnesses=witnesses)
    h2 = subgroup_h2(group)
    G = kernel_G(u, group, J, h2)
    rows = {k: ClassRow(k, k in h2, J[k], witnesses[k]) for k in group}
    report = ClassReport(u, group, [rows[k] for k in group], G)

    open_classes = set(h2) if per_class_samples > 0 else set()
    for p, samples in scan_primes(u, prime_limit, bound):
        if not samples:
            continue
        report.primes_scanned += 1
        report.primes_cubic += samples[0].cubic
        for sample in samples:
            row = rows[sample.cls]
            if sample.cubic != (row.J is CubicSymbol.ONE):
                raise TheoremViolation("oracle disagrees with J", u=u, cls=sample.cls, p=p)
            if sample.cls in open_classes:
                row.samples.append((p, sample.cubic))
                if len(row.samples) >= per_class_samples:
                    open_classes.discard(sample.cls)
        if per_class_samples > 0 and not open_classes:
            break
    for k in sorted(open_classes, key=group.index):
        msg = f"{k}: only {len(rows[k].samples)} primes <= {prime_limit} sampled"
        log.warning(msg)
        report.warnings.append(msg)
    return report
