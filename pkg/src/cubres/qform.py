"""
Positive definite binary quadratic forms a*x^2 + 2b*xy + c*y^2.

A form stores the *half* middle coefficient b, and its discriminant
parameter is d = b^2 - a*c (the classical discriminant is 4d). Forms are
printed as [a,2b,c] with the full middle coefficient.

A form class is identified with its reduced representative, so a
"FormClass" below is simply a reduced :class:`QuadForm`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .intutil import gcd, sqrt_mod

__all__ = [
    "QuadForm",
    "FormClass",
    "ClassGroup",
    "Matrix",
    "evaluate",
    "reduce",
    "is_reduced",
    "class_group",
    "compose",
    "inverse",
    "identity",
    "find_coprime_rep",
    "vectors_by_value",
    "transform",
    "representations",
    "represent_prime",
    "h2_marker",
    "prime_form",
    "DEFAULT_SEARCH_BOUND",
]

DEFAULT_SEARCH_BOUND = 50

# 2x2 integer matrix ((p, q), (r, s)) acting on column vectors (x, y)
Matrix = Tuple[Tuple[int, int], Tuple[int, int]]
IDENTITY_MATRIX: Matrix = ((1, 0), (0, 1))


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - self.a * self.c

    @property
    def middle(self) -> int:
        return 2 * self.b

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, 2 * self.b), self.c) == 1

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + 2 * self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return f"[{self.a},{2 * self.b},{self.c}]"

    @classmethod
    def from_coefficients(cls, a: int, middle: int, c: int) -> "QuadForm":
        """Build from [a, 2b, c]; the middle coefficient must be even."""
        if middle % 2:
            raise ValueError(f"middle coefficient {middle} is odd")
        return cls(a, middle // 2, c)

    @classmethod
    def parse(cls, text: str) -> "QuadForm":
        """Parse "[a,2b,c]" or "a,2b,c"."""
        parts = text.strip().strip("[]()").split(",")
        if len(parts) != 3:
            raise ValueError(f"not a form literal: {text!r}")
        return cls.from_coefficients(*(int(p) for p in parts))


FormClass = QuadForm


def evaluate(f: QuadForm, x: int, y: int) -> int:
    return f(x, y)


def _matmul(m: Matrix, n: Matrix) -> Matrix:
    (p, q), (r, s) = m
    (t, u), (v, w) = n
    return ((p * t + q * v, p * u + q * w), (r * t + s * v, r * u + s * w))


def _matinv(m: Matrix) -> Matrix:
    (p, q), (r, s) = m
    assert p * s - q * r == 1
    return ((s, -q), (-r, p))


def transform(f: QuadForm, m: Matrix) -> QuadForm:
    """The form g(X, Y) = f(p X + q Y, r X + s Y) for m = ((p, q), (r, s))."""
    (p, q), (r, s) = m
    a = f(p, r)
    c = f(q, s)
    b = f.a * p * q + f.b * (p * s + q * r) + f.c * r * s
    return QuadForm(a, b, c)


def _check_form(f: QuadForm) -> None:
    if not f.is_positive_definite():
        raise ValueError(f"{f} is not positive definite")
    if not f.is_primitive():
        raise ValueError(f"{f} is not primitive")


def is_reduced(f: QuadForm) -> bool:
    a, b2, c = f.a, 2 * f.b, f.c
    if not (abs(b2) <= a <= c):
        return False
    if (abs(b2) == a or a == c) and b2 < 0:
        return False
    return True


def reduce(f: QuadForm) -> Tuple[QuadForm, Matrix]:
    """
    Reduced representative of the class of f, with |2b| <= a <= c and
    b >= 0 when |2b| = a or a = c.

    Returns (rep, t) where t is in SL2(Z) and f(v) == rep(t v) for all v.
    """
    _check_form(f)
    a, b, c = f.a, f.b, f.c
    m = IDENTITY_MATRIX  # invariant: (a, b, c) == transform(f, m)
    while True:
        # translate so that -a < 2b <= a
        t = (a - 2 * b) // (2 * a)
        if t:
            c = a * t * t + 2 * b * t + c
            b = b + a * t
            m = _matmul(m, ((1, t), (0, 1)))
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            m = _matmul(m, ((0, -1), (1, 0)))
            continue
        break
    rep = QuadForm(a, b, c)
    return rep, _matinv(m)


def _rep(f: QuadForm) -> QuadForm:
    return reduce(f)[0]


def identity(d: int) -> FormClass:
    if d >= 0:
        raise ValueError("identity expects d < 0")
    return QuadForm(1, 0, -d)


def inverse(f: QuadForm) -> FormClass:
    return _rep(QuadForm(f.a, -f.b, f.c))


def _completion(x: int, y: int) -> Matrix:
    # unimodular ((x, r), (y, s)) with first column (x, y), gcd(x, y) = 1
    g, s, r = _ext_gcd(x, y)
    assert g == 1
    # x*s + y*r == 1 -> x*s - y*(-r) == 1
    return ((x, -r), (y, s))


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    # (g, u, v) with a*u + b*v == g == gcd(a, b) >= 0
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def vectors_by_value(f: QuadForm, bound: int = DEFAULT_SEARCH_BOUND) -> Iterator[Tuple[int, int]]:
    """
    Primitive (x, y), one per sign pair, with max(|x|, |y|) <= bound, in
    increasing order of f(x, y); ties go to smaller y, then smaller |x|,
    then x > 0.

    The box is grown by doubling. Outside a box of radius s every value
    is at least |d| (s+1)^2 / (a+c), since the smallest eigenvalue of f
    is at least |d| / (a + c); values under that are final.
    """
    if not f.is_positive_definite():
        raise ValueError(f"{f} is not positive definite")
    done = set()
    s = 1
    while True:
        s = min(s, bound)
        box = [
            (f(x, y), y, abs(x), x < 0, x)
            for y in range(0, s + 1)
            for x in range(-s if y else 1, s + 1)
            if gcd(x, y) == 1 and (x, y) not in done
        ]
        box.sort()
        final = s >= bound
        for value, y, _, _, x in box:
            if not final and value * (f.a + f.c) >= -f.disc * (s + 1) ** 2:
                break
            done.add((x, y))
            yield (x, y)
        if final:
            return
        s *= 2


def find_coprime_rep(
    f: QuadForm, m: int, bound: int = DEFAULT_SEARCH_BOUND, skip: int = 0
) -> QuadForm:
    """
    A form SL2(Z)-equivalent to f whose leading coefficient is prime to m.

    Walks the values of f upward (see :func:`vectors_by_value`) and
    completes the first primitive (x, y) with gcd(f(x, y), m) = 1 to a
    unimodular substitution; ``skip`` passes over that many earlier hits.
    """
    if m == 0:
        raise ValueError("find_coprime_rep expects m != 0")
    if skip == 0 and gcd(f.a, m) == 1:
        return f
    for x, y in vectors_by_value(f, bound):
        if gcd(f(x, y), m) != 1:
            continue
        if skip:
            skip -= 1
            continue
        g = transform(f, _completion(x, y))
        assert g(1, 0) == f(x, y) and g.disc == f.disc
        return g
    raise RuntimeError(
        f"no value of {f} prime to {m} with |x|, |y| <= {bound}; raise the search bound"
    )


def compose(f1: QuadForm, f2: QuadForm, bound: int = DEFAULT_SEARCH_BOUND) -> FormClass:
    """
    Dirichlet composition. With gcd(a1, a2) = 1 the product is
    [a1*a2, 2*b3, c3] where b3 = b1 (mod a1) and b3 = b2 (mod a2);
    otherwise f2 is first replaced by an equivalent form with leading
    coefficient prime to a1.
    """
    if f1.disc != f2.disc:
        raise ValueError(f"discriminant mismatch: {f1} has {f1.disc}, {f2} has {f2.disc}")
    d = f1.disc
    if gcd(f1.a, f2.a) != 1:
        f2 = find_coprime_rep(f2, f1.a, bound)
    a1, a2 = f1.a, f2.a
    # CRT: b3 = b1 + a1 * k with a1 * k = b2 - b1 (mod a2)
    k = (f2.b - f1.b) * pow(a1, -1, a2) % a2 if a2 > 1 else 0
    a3 = a1 * a2
    b3 = f1.b + a1 * k
    num = b3 * b3 - d
    assert num % a3 == 0
    return _rep(QuadForm(a3, b3, num // a3))


def representations(f: QuadForm, n: int) -> Iterator[Tuple[int, int]]:
    """
    All (x, y) with f(x, y) = n, for positive definite f.

    From (a x + b y)^2 - d y^2 = a n we get |y| <= sqrt(a n / |d|).
    Order: y = 0, 1, -1, 2, -2, ... and for each y the root with the
    smaller |x| first (x >= 0 before x < 0 on ties).
    """
    a, b, d = f.a, f.b, f.disc
    if n <= 0:
        return
    ymax = math.isqrt(a * n // -d)
    for y in _signed_range(ymax):
        disc = a * n + d * y * y
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        xs = set()
        for s in (r, -r):
            t = s - b * y
            if t % a == 0:
                xs.add(t // a)
        for x in sorted(xs, key=lambda x: (abs(x), x < 0)):
            yield (x, y)


def _signed_range(n: int) -> Iterator[int]:
    yield 0
    for k in range(1, n + 1):
        yield k
        yield -k


def represent_prime(f: QuadForm, p: int) -> Optional[Tuple[int, int]]:
    """First (x, y) with f(x, y) = p in the order of :func:`representations`."""
    return next(representations(f, p), None)


def h2_marker(f: QuadForm) -> int:
    """
    a mod 3 when 3 does not divide a, else c mod 3. Requires 3 | d. The
    value 1 marks the classes representing primes = 1 (mod 3).
    """
    if f.disc % 3:
        raise ValueError(f"h2_marker needs 3 | d, got d = {f.disc}")
    if f.a % 3:
        return f.a % 3
    return f.c % 3


@dataclass
class ClassGroup:
    """The reduced primitive forms of a fixed d < 0 under composition."""

    d: int
    classes: List[QuadForm]
    _index: Dict[QuadForm, int] = field(init=False, repr=False)
    _table: Optional[List[List[int]]] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self._index = {f: i for i, f in enumerate(self.classes)}

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __contains__(self, f: QuadForm) -> bool:
        return f in self._index

    @property
    def identity(self) -> QuadForm:
        return identity(self.d)

    def index(self, f: QuadForm) -> int:
        return self._index[_rep(f)]

    def mul(self, f1: QuadForm, f2: QuadForm) -> QuadForm:
        if self._table is not None:
            return self.classes[self._table[self.index(f1)][self.index(f2)]]
        return compose(f1, f2)

    def cayley(self) -> List[List[int]]:
        """Composition table as class indices; built on first use."""
        if self._table is None:
            n = len(self.classes)
            table = [[0] * n for _ in range(n)]
            for i, f in enumerate(self.classes):
                for j in range(i, n):
                    k = self._index[compose(f, self.classes[j])]
                    table[i][j] = table[j][i] = k
            self._table = table
        return self._table

    def order(self, f: QuadForm) -> int:
        e, g, k = self.identity, _rep(f), 1
        while g != e:
            g = compose(g, f)
            k += 1
        return k


def _reduced_forms(d: int) -> List[QuadForm]:
    forms = []
    amax = math.isqrt(-4 * d // 3)
    for a in range(1, amax + 1):
        # |2b| <= a
        for b in range(-(a // 2), a // 2 + 1):
            num = b * b - d
            if num % a:
                continue
            c = num // a
            f = QuadForm(a, b, c)
            if is_reduced(f) and f.is_primitive():
                forms.append(f)
    return forms


def class_group(d: int) -> ClassGroup:
    """All reduced primitive forms [a, 2b, c] with b^2 - ac = d < 0."""
    if d >= 0:
        raise ValueError("class_group expects d < 0")
    return ClassGroup(d, _reduced_forms(d))


def prime_form(d: int, p: int) -> QuadForm:
    """
    Reduced form of [p, 2b, c] with b^2 = d (mod p): one of the two mutually
    inverse classes representing the odd prime p, which must not divide d.
    """
    b = sqrt_mod(d, p)
    if b is None:
        raise ValueError(f"{d} is not a square mod {p}; no form of this discriminant represents it")
    return _rep(QuadForm(p, b, (b * b - d) // p))
