import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from thetapairs.poly import (
    IntPolynomial,
    charpoly,
    charpoly_berkowitz,
    charpoly_crt,
    det_bareiss,
    parse_factored,
    poly_to_series,
    series_inverse,
    series_mul,
)

X = sympy.Symbol("x")


def sympy_charpoly(m):
    coeffs = sympy.Matrix(m).charpoly(X).all_coeffs()
    return IntPolynomial(reversed([int(c) for c in coeffs]))


def random_matrix(rng, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def test_canonical_form():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial([0, 0]).coeffs == (0,)
    assert IntPolynomial([]).is_zero()


def test_arithmetic():
    p = IntPolynomial([1, 1])        # 1 + x
    q = IntPolynomial([-1, 1])       # -1 + x
    assert (p * q).coeffs == (-1, 0, 1)
    assert (p + q).coeffs == (0, 2)
    assert (p - q).coeffs == (2,)
    assert (p ** 3).coeffs == (1, 3, 3, 1)
    assert (2 * p).coeffs == (2, 2)
    assert p(3) == 4 and q(-1) == -2


def test_reflect():
    p = parse_factored("(x-1)*(x+2)")
    assert p.reflect() == parse_factored("(-x-1)*(-x+2)")
    assert p.reflect().reflect() == p


def test_exact_division_and_failure():
    a = parse_factored("(x-3)*(x-1)*x**2*(x+2)**2")
    b = parse_factored("x*(x+2)")
    assert a.exact_divide(b) * b == a
    with pytest.raises(ValueError):
        a.exact_divide(parse_factored("x-7"))
    with pytest.raises(ZeroDivisionError):
        a.exact_divide(IntPolynomial.zero())


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8),
       st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_exact_divide_inverts_multiplication(ac, bc):
    a, b = IntPolynomial(ac), IntPolynomial(bc)
    if b.is_zero():
        return
    assert (a * b).exact_divide(b) == a


def test_charpoly_trivial_cases():
    assert charpoly([[0]]) == IntPolynomial([0, 1])            # x
    assert charpoly([[5]]) == IntPolynomial([-5, 1])           # x - 5
    assert charpoly_berkowitz([]) == IntPolynomial.one()


def test_berkowitz_equals_crt_equals_sympy_small():
    rng = random.Random(20240817)
    for _ in range(20):
        n = rng.randint(1, 10)
        m = random_matrix(rng, n)
        ref = sympy_charpoly(m)
        assert charpoly_berkowitz(m) == ref
        assert charpoly_crt(m) == ref


def test_berkowitz_equals_crt_medium():
    # the 50-matrix run up to dim 60 lives in the acceptance suite
    rng = random.Random(5)
    for trial in range(12):
        n = rng.randint(2, 40)
        m = random_matrix(rng, n, -3, 3)
        assert charpoly_berkowitz(m) == charpoly_crt(m), (trial, n)


def test_charpoly_router_consistency():
    rng = random.Random(11)
    m = random_matrix(rng, 70, -2, 2)   # above the Berkowitz cutoff
    assert charpoly(m) == charpoly_berkowitz(m)


def test_crt_spot_check_against_determinant():
    rng = random.Random(99)
    n = 120
    m = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
    p = charpoly_crt(m)
    for x0 in (1, -2):
        a = [[(x0 if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
        assert det_bareiss(a) == p(x0)


def test_det_bareiss():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 8)
        m = random_matrix(rng, n)
        assert det_bareiss(m) == int(sympy.Matrix(m).det())
    assert det_bareiss([[1, 2], [2, 4]]) == 0


def test_series_helpers():
    one = [Fraction(1)] + [Fraction(0)] * 7
    a = poly_to_series(parse_factored("(1-x)*(1-2*x)"), 8)
    inv = series_inverse(a, 8)
    assert series_mul(a, inv, 8) == one
    assert inv == [Fraction(2 ** (k + 1) - 1) for k in range(8)]
    with pytest.raises(ValueError):
        series_inverse([Fraction(0), Fraction(1)], 4)


@settings(max_examples=25)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6))
def test_series_inverse_roundtrip(coeffs):
    if coeffs[0] == 0:
        coeffs[0] = 1
    s = [Fraction(c) for c in coeffs]
    inv = series_inverse(s, 10)
    out = series_mul(s, inv, 10)
    assert out == [Fraction(1)] + [Fraction(0)] * 9
