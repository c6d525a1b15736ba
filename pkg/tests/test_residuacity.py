import pytest

from cubres.eisenstein import CubicSymbol, EisensteinInt as E
from cubres.qform import QuadForm as F, class_group, find_coprime_rep
from cubres.residuacity import (
    NoRepresentation,
    PreconditionError,
    compute_L,
    compute_R,
    condition_11,
    condition_17,
    l_numerator,
    lemma_substitution_check,
    oracle_is_cubic,
    r_numerator,
    theorem11_check,
    theorem24_check,
)
from cubres.intutil import primes_up_to
from cubres.sdelem import make_u2, validate

U = validate(6, 3, 7)
P = F(1, 0, 1701)
K19 = F.parse("[19,6,90]")
K10 = F.parse("[10,6,171]")


def test_condition_11():
    assert condition_11(U, P, 1801, 10, 1)
    with pytest.raises(PreconditionError) as info:
        condition_11(U, P, 1801, 10, 2)
    assert info.value.name == "bad-representation"


def test_condition_11_y_zero():
    # gcd(a p, 0) = a p > 1
    assert not condition_11(U, F(7, 0, 243), 7, 1, 0)
    assert not condition_17(U, F(7, 0, 243), 1, 0)


def test_condition_17():
    assert P(2, 1) == 1705
    assert condition_17(U, P, 2, 1)
    # 3 | f(x, y)
    assert P(1, 1) % 3 == 1 and not condition_17(U, P, 3, 1)


def test_numerators():
    assert r_numerator(U, K19) == E(54 - 3, -6)
    assert l_numerator(U, P, 10, 1) == E(54, 0) + E(10, 20)


def test_compute_R_examples():
    assert compute_R(U, K19) is CubicSymbol.ONE
    assert compute_R(U, P) is CubicSymbol.ONE
    assert compute_R(U, K10) in (CubicSymbol.OMEGA, CubicSymbol.OMEGA_SQ)
    with pytest.raises(PreconditionError) as info:
        compute_R(U, F(9, 0, 189))
    assert info.value.name == "3-divides-a"


def test_compute_L_examples():
    assert compute_L(U, P, 10, 1) is CubicSymbol.ONE
    # y = 0 violates the coprimality condition; the symbol is still computed
    assert compute_L(U, F(19, 3, 90), 1, 0) in set(CubicSymbol)
    for x, y in [(1, 1), (2, 1), (1, 2), (4, -1)]:
        if condition_17(U, K19, x, y):
            assert compute_L(U, K19, x, y) is CubicSymbol.ONE
    with pytest.raises(PreconditionError):
        compute_L(U, P, 3, 0)


def test_nonvanishing():
    for k in class_group(-1701):
        w = find_coprime_rep(k, 3 * U.norm * U.D)
        assert compute_R(U, w) is not CubicSymbol.ZERO
        for x in range(-5, 6):
            for y in range(-5, 6):
                if condition_17(U, w, x, y):
                    assert compute_L(U, w, x, y) is not CubicSymbol.ZERO


@pytest.mark.parametrize("A,B,D,p,cubic", [
    (17, 51, 2, 79, False), (17, 51, 2, 919, False), (17, 51, 2, 1759, False),
    (19, 3, 2, 31, False), (6, 3, 7, 1801, True),
])
def test_oracle_examples(A, B, D, p, cubic):
    assert oracle_is_cubic(validate(A, B, D), p) is cubic


def test_oracle_by_brute_force():
    # compare with a direct search for v with v^3 = A + B s (mod p)
    u = validate(19, 3, 2)
    for p in primes_up_to(400):
        if p % 3 != 1 or (3 * u.norm * u.D) % p == 0:
            continue
        try:
            cubic = oracle_is_cubic(u, p)
        except PreconditionError:
            continue
        s = next(t for t in range(p) if t * t % p == 2)
        cubes = {v**3 % p for v in range(1, p)}
        assert cubic == ((u.A + u.B * s) % p in cubes)


@pytest.mark.parametrize("p,name", [(1800, "p-not-prime"), (29, "p-not-1-mod-3"),
                                    (13, "D-not-QR"), (7, "p-divides-3ND")])
def test_oracle_preconditions(p, name):
    u = validate(19, 3, 2)
    with pytest.raises(PreconditionError) as info:
        oracle_is_cubic(u, p)
    assert info.value.name == name


def test_oracle_p_divides():
    # 232 + 319 sqrt 7 has norm -87^3 = -(3 * 29)^3; 29 is 2 mod 3
    with pytest.raises(PreconditionError) as info:
        oracle_is_cubic(validate(232, 319, 7), 7)
    assert info.value.name == "p-divides-3ND"


def test_theorem11_principal():
    v = theorem11_check(U, P, 1801)
    assert v.xy == (10, 1) and v.consistent and v.oracle_cubic
    assert v.R is v.L is CubicSymbol.ONE
    assert v.to_dict()["consistent"] is True


def _first_prime(f):
    for p in primes_up_to(10**5):
        if p % 3 != 1:
            continue
        try:
            return theorem11_check(U, f, p)
        except PreconditionError:
            continue


def test_theorem11_non_kernel_class():
    v = _first_prime(K10)
    assert v.consistent and v.R is not CubicSymbol.ONE and not v.oracle_cubic


def test_theorem11_kernel_class():
    v = _first_prime(K19)
    assert v.consistent and v.R is CubicSymbol.ONE and v.oracle_cubic


def test_theorem11_errors():
    with pytest.raises(NoRepresentation):
        theorem11_check(U, P, 1759)
    with pytest.raises(PreconditionError):
        theorem11_check(U, P, 1803)


def test_R_independent_of_representative():
    m = 3 * U.norm * U.D
    for k in class_group(-1701):
        values = {compute_R(U, find_coprime_rep(k, m, skip=s)) for s in range(4)}
        assert len(values) == 1


def test_theorem24_examples():
    assert theorem24_check(U, P, 2, 1)
    with pytest.raises(PreconditionError):
        theorem24_check(U, K19, 1, 0)


def test_lemma_substitution_examples():
    assert make_u2(U).A == 147
    for x, y in [(1, 1), (2, 1), (1, 2), (5, 7)]:
        if condition_17(U, K19, x, y):
            assert lemma_substitution_check(U, K19, x, y)
    u = validate(19, 3, 2)
    assert lemma_substitution_check(u, F(1, 0, 54), 1, 1)
    with pytest.raises(PreconditionError):
        lemma_substitution_check(U, F(9, 0, 189), 1, 1)
