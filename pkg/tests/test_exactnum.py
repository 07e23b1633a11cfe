from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coxfold.exactnum import (
    ONE,
    TAU,
    ZERO,
    GoldenMatrix,
    GoldenNumber,
    det,
    dot,
    embed_real,
    format_golden,
    galois_conjugate,
    golden,
    inverse,
    parse_golden,
    rank,
    solve,
)
from oracles import golden_float

small = st.fractions(min_value=-50, max_value=50, max_denominator=12)
goldens = st.builds(GoldenNumber, small, small)
nonzero = goldens.filter(bool)


def approx(x, y, rel=1e-9):
    return abs(x - y) <= rel * max(1.0, abs(x), abs(y))


# ------------------------------------------------------------ scalars


def test_tau_squared():
    assert TAU * TAU == TAU + 1
    assert TAU**-1 == TAU - 1


def test_canonical_storage():
    assert GoldenNumber(Fraction(2, 4), 1).components == (1, 2, 2)
    assert GoldenNumber(0, 0).components == (0, 0, 1)
    assert hash(GoldenNumber(Fraction(1, 2))) == hash(GoldenNumber(Fraction(2, 4)))


@given(goldens, goldens, goldens)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert x / x == ONE


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(goldens, goldens)
def test_conjugation_is_automorphism(x, y):
    c = galois_conjugate
    assert c(x + y) == c(x) + c(y)
    assert c(x * y) == c(x) * c(y)
    assert c(c(x)) == x


@given(goldens, goldens)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert golden(x.norm()) == x * x.conjugate()


@given(goldens, goldens)
def test_float_embedding_is_homomorphism(x, y):
    p, q = x.a, x.b
    assert approx(float(x), golden_float(p, q))
    assert approx(float(x * y), float(x) * float(y), 1e-8)


@given(goldens, goldens)
def test_order_matches_reals(x, y):
    if x != y:
        assert (x < y) == (float(x) < float(y))
    assert x.sign() == (0 if not x else (1 if float(x) > 0 else -1))


def test_sign_near_zero():
    # tau^-40 = F41 - F40 tau is about 1.3e-9; catastrophic cancellation in floats
    y = GoldenNumber(165580141, -102334155)
    assert y == TAU**-40
    assert y.sign() == 1 and (-y).sign() == -1
    with mpmath.workdps(50):
        assert mpmath.mpf(165580141) - 102334155 * mpmath.phi > 0


@given(goldens)
def test_parse_format_roundtrip(x):
    assert parse_golden(format_golden(x)) == x


@pytest.mark.parametrize(
    "text,value",
    [("1/2+3/2*t", GoldenNumber(Fraction(1, 2), Fraction(3, 2))), ("-t", -TAU), ("3t", 3 * TAU),
     ("1-t", 1 - TAU), ("7", golden(7)), ("-2/3", golden(Fraction(-2, 3)))],
)
def test_parse_examples(text, value):
    assert parse_golden(text) == value


@pytest.mark.parametrize("bad", ["", "t t", "1+", "abc", "1/0x", "2*t+1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_golden(bad)


def test_embed_real_precision():
    x = TAU**50
    assert isinstance(embed_real(x), float)
    hi = embed_real(x, 40)
    with mpmath.workdps(60):
        assert abs(hi - mpmath.phi**50) < mpmath.mpf(10) ** -30


def test_big_powers_exact():
    # order-30 style growth: tau^300 has integer parts beyond 64 bits
    x = TAU**300
    assert x.b > 2**200
    assert x * TAU**-300 == ONE


# ------------------------------------------------------------ matrices


def _random_matrix(rng, n, m, scale=3):
    return [[GoldenNumber(int(rng.integers(-scale, scale + 1)), int(rng.integers(-scale, scale + 1)))
             for _ in range(m)] for _ in range(n)]


def _naive_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), ZERO) for j in range(len(B[0]))]
            for i in range(len(A))]


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_matmul_matches_naive(seed, n, k, m):
    rng = np.random.default_rng(seed)
    A, B = _random_matrix(rng, n, k), _random_matrix(rng, k, m)
    assert (GoldenMatrix.from_rows(A) @ GoldenMatrix.from_rows(B)).rows() == _naive_mul(A, B)


def test_matmul_object_fallback():
    M = GoldenMatrix.from_rows([[TAU, 1], [1, 0]])
    P = M**200
    assert max(abs(c) for row in P.rows() for x in row for c in x.components) > 2**63
    ref = [[ONE, ZERO], [ZERO, ONE]]
    Mr = M.rows()
    for _ in range(200):
        ref = _naive_mul(ref, Mr)
    assert P.rows() == ref
    assert det(P) == det(M) ** 200


def _sympy_golden(x: GoldenNumber):
    t = (1 + sympy.sqrt(5)) / 2
    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * t


@pytest.mark.parametrize("seed", range(8))
def test_det_against_sympy(seed):
    rng = np.random.default_rng(seed)
    n = 1 + seed % 4
    A = _random_matrix(rng, n, n)
    ref = sympy.Matrix([[_sympy_golden(x) for x in row] for row in A]).det()
    assert sympy.simplify(ref - _sympy_golden(det(A))) == 0


@pytest.mark.parametrize("seed", range(8))
def test_inverse_and_solve(seed):
    rng = np.random.default_rng(100 + seed)
    n = 2 + seed % 3
    A = _random_matrix(rng, n, n)
    if not det(A):
        pytest.skip("singular draw")
    M = GoldenMatrix.from_rows(A)
    Minv = GoldenMatrix.from_rows(inverse(A))
    assert (M @ Minv).is_identity() and (Minv @ M).is_identity()
    b = [GoldenNumber(i, 1 - i) for i in range(n)]
    x = solve(A, b)
    assert M.apply(x) == tuple(b)


def test_rank_and_singular():
    A = [[ONE, TAU], [TAU, TAU + 1]]  # second row = tau * first
    assert det(A) == 0
    assert rank(A) == 1
    with pytest.raises(ZeroDivisionError):
        inverse(A)


def test_scalar_gram_dot():
    G = GoldenMatrix.identity(3) * (TAU + 2).inverse()
    u = (ONE, TAU, ZERO)
    assert dot(u, u, G) == (1 + TAU * TAU) / (TAU + 2)
    assert G.scalar() == (TAU + 2).inverse()
    assert GoldenMatrix.from_rows([[1, 0], [0, 2]]).scalar() is None


def test_matrix_hash_eq():
    A = GoldenMatrix.from_rows([[Fraction(1, 2), TAU]])
    B = GoldenMatrix.from_rows([[Fraction(2, 4), TAU]])
    assert A == B and hash(A) == hash(B)
    assert A.T.shape == (2, 1)
